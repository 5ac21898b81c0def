"""
Prong covers of a segment neighborhood
======================================

A segment of length L cannot be covered by finitely many balls centered on
itself, but lifting the centers off the segment by delta = (L/(2n))^2 / s
fixes that.  This script builds the lifted configurations for growing n,
certifies each cover, and shows the excess length melting away while the
MST over the centers approaches L from above.
"""

from mdpkit import (
    Point2,
    Segment,
    certify_cover,
    h1_length,
    kruskal_mst,
    segment_prong_cover,
    stadium_polygon,
)
from mdpkit.formats import render_svg

L, s = 1.0, 0.25
seg = Segment(Point2(0, 0), Point2(L, 0))
domain = stadium_polygon(seg, s, 64)

print(f"covering the {s}-neighborhood of a length-{L} segment")
print(f"{'n':>4} {'centers':>8} {'excess':>10} {'mst':>10} {'verdict':>10}")
for n in (3, 10, 30, 100):
    cover = segment_prong_cover(seg, s, n)
    mst = kruskal_mst(cover.centers)
    verdict = certify_cover(domain, cover.centers, s)
    print(f"{n:>4} {len(cover.centers):>8} {cover.excess:>10.5f} "
          f"{mst.length:>10.5f} {verdict.status:>10}")

cover = segment_prong_cover(seg, s, 10)
with open("prong_cover_n10.svg", "w") as fh:
    fh.write(render_svg(domain, cover.centers, cover.connector))
print("wrote prong_cover_n10.svg  (connector length",
      f"{h1_length(cover.connector):.4f})")
