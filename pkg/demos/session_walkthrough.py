"""
Driving the session service
===========================

The interactive loop without a browser: create a session from the bundled
two-hole domain, click in four vertices, drag the radius slider, and read
the recomputed MST plus coverage verdict at every revision.
"""

from importlib import resources

from fastapi.testclient import TestClient

from mdpkit.service import create_app

domain_text = resources.files("mdpkit.data").joinpath("two_holes.mdp.json").read_text()
client = TestClient(create_app(default_domain_text=domain_text))

snap = client.post("/sessions", json={"s": 0.3}).json()
sid, rev = snap["id"], snap["revision"]
print(f"session {sid} on '{snap['name'] or 'two holes'}' at s={snap['s']}")

for p in [(0.3, 0.3), (1.7, 0.3), (1.7, 1.1), (0.3, 1.1)]:
    snap = client.post(f"/sessions/{sid}/ops",
                       json={"op": "add_vertex", "point": p, "revision": rev}).json()
    rev = snap["revision"]
    v = snap["verdict"]["status"] if snap["verdict"] else "-"
    print(f"rev {rev}: {len(snap['centers'])} vertices, "
          f"mst {snap['mst']['length']:.4f}, verdict {v}")

for s in (0.2, 0.5, 0.85):
    snap = client.post(f"/sessions/{sid}/ops",
                       json={"op": "set_radius", "s": s, "revision": rev}).json()
    rev = snap["revision"]
    print(f"rev {rev}: s={s} -> {snap['verdict']['status']}")

svg = client.get(f"/sessions/{sid}/export", params={"kind": "svg"}).text
with open("session_export.svg", "w") as fh:
    fh.write(svg)
print("wrote session_export.svg")
