import json

import numpy as np
import pytest

from mdpkit.formats import (
    FormatError,
    Scenario,
    dump_domain,
    dump_scenario,
    dump_tree,
    load_domain,
    load_scenario,
    load_tree,
    render_svg,
)
from mdpkit.geom import Domain, Point2, Tree
from mdpkit.prongs import prong_cover_domain, segment_prong_cover
from mdpkit.geom import Segment
from mdpkit.spanning import CenterSet


def test_load_unit_square():
    d = load_domain(json.dumps({
        "format": "mdp.domain/1",
        "boundary": [[0, 0], [1, 0], [1, 1], [0, 1]],
    }))
    assert len(d.boundary) == 4
    assert d.holes == ()


def test_ring_autoclose_and_orientation():
    d = load_domain(json.dumps({
        "format": "mdp.domain/1",
        "boundary": [[0, 0], [0, 1], [1, 1], [1, 0], [0, 0]],  # closed, clockwise
        "holes": [[[0.2, 0.2], [0.4, 0.2], [0.4, 0.4], [0.2, 0.4]]],  # ccw
    }))
    assert len(d.boundary) == 4
    from mdpkit.geom import ring_area

    assert ring_area(d.boundary) > 0       # boundary normalized ccw
    assert ring_area(d.holes[0]) < 0       # hole normalized cw


def test_bowtie_reports_crossing_edges():
    with pytest.raises(FormatError, match="self-intersects between edges"):
        load_domain(json.dumps({
            "format": "mdp.domain/1",
            "boundary": [[0, 0], [1, 1], [1, 0], [0, 1]],
        }))


def sweep_oracle_crossings(ring):
    """Independent O(n^2) segment-intersection check via numpy orientation."""
    n = len(ring)
    found = []
    P = np.asarray(ring, dtype=float)

    def orient(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    for i in range(n):
        for j in range(i + 1, n):
            if (i + 1) % n == j or (j + 1) % n == i:
                continue
            a, b = P[i], P[(i + 1) % n]
            c, d = P[j], P[(j + 1) % n]
            if orient(a, b, c) != orient(a, b, d) and orient(c, d, a) != orient(c, d, b):
                found.append((i, j))
    return found


def test_bowtie_matches_sweep_oracle():
    ring = [[0, 0], [1, 1], [1, 0], [0, 1]]
    assert sweep_oracle_crossings(ring)  # the oracle agrees a crossing exists


def test_hole_outside_boundary_positioned_error():
    with pytest.raises(FormatError, match="ring 1"):
        load_domain(json.dumps({
            "format": "mdp.domain/1",
            "boundary": [[0, 0], [1, 0], [1, 1], [0, 1]],
            "holes": [[[2, 2], [3, 2], [3, 3]]],
        }))


def test_too_few_vertices_positioned_error():
    with pytest.raises(FormatError, match="boundary"):
        load_domain(json.dumps({"format": "mdp.domain/1", "boundary": [[0, 0], [1, 0]]}))


def test_domain_roundtrip_fixpoint():
    d = Domain([(0, 0), (2, 0), (2.5, 1.3), (1, 2.1), (-0.2, 1.0)],
               [[(0.9, 0.8), (1.4, 0.9), (1.1, 1.3)]])
    once = dump_domain(d, name="t")
    d2 = load_domain(once)
    twice = dump_domain(d2, name="t")
    assert once == twice


def test_scenario_roundtrip_and_float_fidelity():
    d = Domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    centers = (Point2(0.1, 0.2), Point2(1 / 3, 2 / 7), Point2(0.7000000000000001, 0.3))
    sc = Scenario(domain=d, s=0.123456789012345678, centers=centers, name="rt")
    text = dump_scenario(sc)
    sc2 = load_scenario(text)
    assert sc2.s == sc.s
    assert all((a.x, a.y) == (b.x, b.y) for a, b in zip(sc.centers, sc2.centers))
    assert dump_scenario(sc2) == text


def test_tree_roundtrip():
    t = Tree([(0, 0), (1, 0), (1, 1)], [(0, 1), (1, 2)])
    text = dump_tree(t)
    t2 = load_tree(text)
    assert dump_tree(t2) == text


def test_malformed_json_position():
    with pytest.raises(FormatError, match="line"):
        load_domain("{ not json }")


def test_svg_domain_only():
    d = Domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    svg = render_svg(d)
    assert svg.count("<circle") == 0
    assert svg.count("<path") == 1
    assert "evenodd" in svg


def test_svg_prong_cover_element_counts():
    seg = Segment(Point2(0, 0), Point2(1, 0))
    cover = segment_prong_cover(seg, 0.25, 10)
    dom = prong_cover_domain(seg, 0.25)
    svg = render_svg(dom, cover.centers, cover.connector)
    # one translucent disk per center plus one small dot per center
    assert svg.count("<circle") == 2 * 24
    assert svg.count("<line") == len(cover.connector.edges)


def test_svg_byte_deterministic():
    d = Domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    cs = CenterSet([(0.5, 0.5), (0.25, 0.75)], 0.3)
    a = render_svg(d, cs)
    b = render_svg(d, cs)
    assert a == b
