import math
import time

import pytest
from fastapi.testclient import TestClient

from mdpkit.formats import load_scenario
from mdpkit.service import create_app
from mdpkit.spanning import CenterSet, kruskal_mst

SQUARE = {"boundary": [[0, 0], [1, 0], [1, 1], [0, 1]], "holes": []}
TWO_HOLES = {
    "boundary": [[0, 0], [3, 0], [3, 2], [0, 2]],
    "holes": [
        [[0.6, 0.6], [1.0, 0.6], [1.0, 1.0], [0.6, 1.0]],
        [[1.9, 0.9], [2.3, 0.9], [2.3, 1.3], [1.9, 1.3]],
    ],
}


@pytest.fixture
def client():
    return TestClient(create_app())


def _create(client, domain=SQUARE, **kw):
    r = client.post("/sessions", json={"domain": domain, **kw})
    assert r.status_code == 201
    return r.json()


def test_create_session_defaults():
    c = TestClient(create_app())
    snap = _create(c)
    assert snap["revision"] == 0
    assert snap["centers"] == []
    assert math.isclose(snap["s"], 0.05 * math.sqrt(2.0))
    assert snap["mst"]["length"] == 0.0


def test_create_rejects_bowtie(client):
    r = client.post("/sessions", json={
        "domain": {"boundary": [[0, 0], [1, 1], [1, 0], [0, 1]], "holes": []},
    })
    assert r.status_code == 422
    detail = r.json()["detail"]
    assert detail["code"] == "invalid_domain"


def test_create_two_hole_domain(client):
    snap = _create(client, domain=TWO_HOLES)
    assert len(snap["domain"]["holes"]) == 2


def test_mutate_add_vertices_and_set_radius(client):
    snap = _create(client, s=0.2)
    rev = snap["revision"]
    for p in [(0, 0), (1, 0), (1, 1), (0, 1)]:
        r = client.post(f"/sessions/{snap['id']}/ops",
                        json={"op": "add_vertex", "point": p, "revision": rev})
        assert r.status_code == 200
        rev = r.json()["revision"]
    out = client.post(f"/sessions/{snap['id']}/ops",
                      json={"op": "set_radius", "s": 0.8, "revision": rev}).json()
    assert math.isclose(out["mst"]["length"], 3.0)
    assert out["verdict"]["status"] == "covered"
    # radius mutation leaves the tree alone
    assert out["mst"]["edges"] == client.get(f"/sessions/{snap['id']}").json()["mst"]["edges"]


def test_remove_to_single_vertex_zero_length(client):
    snap = _create(client, s=0.9)
    rev = snap["revision"]
    for p in [(0.2, 0.2), (0.8, 0.8)]:
        rev = client.post(f"/sessions/{snap['id']}/ops",
                          json={"op": "add_vertex", "point": p, "revision": rev}).json()["revision"]
    out = client.post(f"/sessions/{snap['id']}/ops",
                      json={"op": "remove_vertex", "index": 1, "revision": rev}).json()
    assert out["mst"]["length"] == 0.0
    assert len(out["centers"]) == 1


def test_uncovered_with_corner_witness(client):
    snap = _create(client, s=0.5)
    rev = client.post(f"/sessions/{snap['id']}/ops",
                      json={"op": "add_vertex", "point": (0.5, 0.5), "revision": snap["revision"]}
                      ).json()["revision"]
    out = client.post(f"/sessions/{snap['id']}/ops",
                      json={"op": "set_radius", "s": 0.5, "revision": rev}).json()
    v = out["verdict"]
    assert v["status"] == "uncovered"
    wx, wy = v["witness"]
    assert math.hypot(wx - 0.5, wy - 0.5) > 0.5


def test_stale_revision_conflict(client):
    snap = _create(client)
    r1 = client.post(f"/sessions/{snap['id']}/ops",
                     json={"op": "add_vertex", "point": (0.5, 0.5), "revision": 0})
    assert r1.status_code == 200
    r2 = client.post(f"/sessions/{snap['id']}/ops",
                     json={"op": "add_vertex", "point": (0.7, 0.7), "revision": 0})
    assert r2.status_code == 409
    assert r2.json()["detail"]["code"] == "stale_revision"
    assert r2.json()["detail"]["detail"]["revision"] == 1


def test_read_after_write_mst_matches_export(client, tmp_path):
    snap = _create(client, s=0.4)
    rev = snap["revision"]
    for p in [(0.1, 0.1), (0.9, 0.1), (0.5, 0.9)]:
        out = client.post(f"/sessions/{snap['id']}/ops",
                          json={"op": "add_vertex", "point": p, "revision": rev}).json()
        rev = out["revision"]
    exported = client.get(f"/sessions/{snap['id']}/export", params={"kind": "scenario"})
    sc = load_scenario(exported.text)
    assert math.isclose(kruskal_mst(sc.center_set()).length, out["mst"]["length"],
                        rel_tol=1e-15)


def test_export_svg_deterministic(client):
    snap = _create(client, s=0.4)
    client.post(f"/sessions/{snap['id']}/ops",
                json={"op": "add_vertex", "point": (0.5, 0.5), "revision": 0})
    a = client.get(f"/sessions/{snap['id']}/export", params={"kind": "svg"}).text
    b = client.get(f"/sessions/{snap['id']}/export", params={"kind": "svg"}).text
    assert a == b
    assert a.startswith("<svg")


def test_unknown_session_404(client):
    assert client.get("/sessions/nope").status_code == 404


def test_optimize_job_flow(client):
    snap = _create(client, domain={
        "boundary": [[0, 0], [0.3, 0], [0.3, 0.3], [0, 0.3]], "holes": []}, s=0.4)
    r = client.post(f"/sessions/{snap['id']}/optimize",
                    json={"revision": 0, "iterations": 150, "n_max": 4, "seed": 1})
    assert r.status_code == 202
    jid = r.json()["id"]
    for _ in range(200):
        j = client.get(f"/jobs/{jid}").json()
        if j["status"] != "running":
            break
        time.sleep(0.05)
    assert j["status"] == "done"
    assert j["best_objective"] == 0.0  # tiny square fits in one 0.4-ball
    snap2 = client.post(f"/jobs/{jid}/accept").json()
    assert snap2["revision"] == 1
    assert len(snap2["centers"]) == 1
    assert snap2["verdict"]["status"] == "covered"
    # re-certifies offline
    from mdpkit.coverage import certify_cover
    from mdpkit.formats import load_domain
    import json as _json

    dom = load_domain(_json.dumps({"format": "mdp.domain/1", **snap2["domain"]}))
    cs = CenterSet([tuple(p) for p in snap2["centers"]], snap2["s"])
    assert certify_cover(dom, cs, snap2["s"]).status == "covered"


def test_optimize_cancel_leaves_session_unchanged(client):
    snap = _create(client, s=0.3)
    r = client.post(f"/sessions/{snap['id']}/optimize",
                    json={"revision": 0, "iterations": 5000, "n_max": 12, "seed": 2})
    jid = r.json()["id"]
    client.post(f"/jobs/{jid}/cancel")
    for _ in range(100):
        j = client.get(f"/jobs/{jid}").json()
        if j["status"] != "running":
            break
        time.sleep(0.05)
    assert j["status"] == "cancelled"
    cur = client.get(f"/sessions/{snap['id']}").json()
    assert cur["revision"] == 0
    assert cur["centers"] == []
    assert client.post(f"/jobs/{jid}/accept").status_code == 409


def test_health_probe(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"
