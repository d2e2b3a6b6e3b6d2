"""Discovering roles from where players touch the ball.

Each player-match becomes one center of performance (the mean event
position); clustering those centers with a silhouette-driven k sweep
yields the role set.  Soft assignment then grades every center against
all roles, which is where hybrid players fall out.
"""

import numpy as np

from pitchrank.events import build_store
from pitchrank.roles import RoleConfig, compute_center, fit_roles, soft_assign
from pitchrank.synth import SynthConfig, make_corpus

corpus = make_corpus(SynthConfig(seed=11, n_matches=60))
store = build_store(corpus.events, corpus.matches, corpus.players)

centers = [
    compute_center(evs)
    for _, evs in store.player_match_slices()
    if len(evs) >= 5
]
points = np.array([[c.x, c.y] for c in centers])
print(f"{len(centers)} centers of performance "
      f"(players with at least 5 events in a match)")

model = fit_roles(points, RoleConfig(k_max=12, seed=0))
print(f"\nselected k = {model.k} with silhouette {model.silhouette:.4f}")
print("k sweep:")
for k in sorted(model.k_sweep):
    marker = "  <-- selected" if k == model.k else ""
    print(f"  k={k:<3d} silhouette={model.k_sweep[k]:.4f}{marker}")

print("\ncentroids (x, y), attack running left to right:")
for i, (x, y) in enumerate(model.centroids):
    size = int(model.cluster_sizes()[i])
    print(f"  role {i}: ({x:5.1f}, {y:5.1f})   {size} centers")

# A silhouette ratio near zero means the center sits almost as close to
# that role's members as to its own, so the match counts for both roles.
print("\nsample soft assignments (delta_s = 0.1):")
for c in centers[:5]:
    a = soft_assign(c, model, delta_s=0.1)
    tag = "hybrid " + "/".join(map(str, sorted(a.roles))) if a.is_hybrid else "pure"
    print(f"  player {c.player_id} match {c.match_id}: "
          f"primary role {a.primary} ({tag})")

hybrid = sum(soft_assign(c, model, delta_s=0.1).is_hybrid for c in centers)
print(f"\nhybrid share at delta_s = 0.1: {hybrid / len(centers):.3f}")
