"""
Certified coverage on the bundled two-hole domain
=================================================

Load the demo domain with two holes, keep its vertex set fixed, and sweep
the ball radius: the verdict flips from an uncovered witness to a certified
cover.  The uncovered picture marks the witness point.
"""

from importlib import resources

from mdpkit import CenterSet, certify_cover, kruskal_mst, max_distance
from mdpkit.formats import load_scenario, render_svg

text = resources.files("mdpkit.data").joinpath(
    "two_holes_demo.scenario.mdp.json").read_text()
sc = load_scenario(text)
print(f"domain diameter {sc.domain.diameter:.3f}, {len(sc.centers)} fixed vertices")
print(f"mst length {kruskal_mst(sc.center_set()).length:.4f}")

interval = max_distance(sc.domain, sc.center_set(), tol=1e-4)
print(f"coverage threshold in [{interval.lo:.4f}, {interval.hi:.4f}]")

for s in (0.24, 0.28, 0.32, 0.36, 0.40):
    cs = CenterSet(sc.centers, s)
    v = certify_cover(sc.domain, cs, s, tol=1e-5)
    extra = ""
    if v.witness is not None:
        extra = f" witness ({v.witness.x:.3f}, {v.witness.y:.3f})"
    print(f"s = {s:.2f}: {v.status}{extra}")
    if s in (0.28, 0.36):
        mst = kruskal_mst(cs)
        with open(f"two_holes_s{int(s * 100):03d}.svg", "w") as fh:
            fh.write(render_svg(sc.domain, cs, mst.tree, v.witness))
        print(f"  wrote two_holes_s{int(s * 100):03d}.svg")
