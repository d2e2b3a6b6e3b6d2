"""The read-only HTTP surface, exercised in process.

Builds a snapshot, mounts it in the service app, and walks the endpoints
with an in-process test client, so no port is bound and nothing has to be
deployed to follow along.
"""

import json

from fastapi.testclient import TestClient

from pitchrank.api import create_app
from pitchrank.events import build_store
from pitchrank.pipeline import PipelineConfig, build_snapshot, run_learning_phase
from pitchrank.synth import SynthConfig, make_corpus

corpus = make_corpus(SynthConfig(seed=11, n_matches=60))
store = build_store(corpus.events, corpus.matches, corpus.players)
bundle = run_learning_phase(store, PipelineConfig(min_matches=3))
snapshot = build_snapshot(store, bundle)

names = {p.player_id: p.name for p in store.players.values()}
client = TestClient(create_app(bundle, snapshot, player_names=names))

print("GET /roles")
roles = client.get("/roles").json()
print(f"  k = {roles['k']}, grid = {roles['grid']}, "
      f"silhouette = {roles['silhouette']:.4f}")
for i, (x, y) in enumerate(roles["centroids"][:3]):
    print(f"  role {i}: centroid ({x:.1f}, {y:.1f})")

print("\nGET /rankings/0?limit=3")
for row in client.get("/rankings/0", params={"limit": 3}).json()["entries"]:
    print(f"  #{row['rank']} {row['name']}  rBar={row['rBar']:.4f}")

pid = client.get("/rankings/0").json()["entries"][0]["playerId"]
print(f"\nGET /players/{pid}")
profile = client.get(f"/players/{pid}").json()
print(f"  {profile['name']}: {profile['matches']} matches, "
      f"form {profile['rBar']:.4f}, versatility {profile['versatility']:.3f}")

print("\nPOST /search (zones 55, 65, 75)")
body = {
    "zones": [55, 65, 75],
    "grid": {"rows": roles["grid"]["rows"], "cols": roles["grid"]["cols"]},
    "top_k": 3,
}
for hit in client.post("/search", json=body).json()["results"]:
    print(f"  {hit['name']}: z={hit['z']:.4f} (s={hit['s']:.4f}, "
          f"rBar={hit['rBar']:.4f})")

print("\nGET /stats")
print(json.dumps(client.get("/stats").json(), indent=2))
