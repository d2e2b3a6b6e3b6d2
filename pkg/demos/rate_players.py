"""From events to ratings, rankings, and the numbers around them.

Runs the full pipeline on a synthetic season, then follows a single player
through it: per-match ratings, the exponentially smoothed form curve, the
role ranking they land in, and how versatile their season was.  Ends with
distribution statistics and the goal-blend sweep.
"""

from pitchrank.events import build_store
from pitchrank.pipeline import (
    PipelineConfig,
    build_snapshot,
    run_learning_phase,
    snapshot_versatility,
)
from pitchrank.ratings import alpha_sweep_correlation
from pitchrank.synth import SynthConfig, make_corpus

corpus = make_corpus(SynthConfig(seed=11, n_matches=60))
store = build_store(corpus.events, corpus.matches, corpus.players)
config = PipelineConfig(min_matches=3)

bundle = run_learning_phase(store, config)
snapshot = build_snapshot(store, bundle)
print(f"learned weights (holdout auc {bundle.training_report.auc:.3f}), "
      f"k = {bundle.role_model.k} roles, "
      f"{len(snapshot.series)} players rated")

# Follow the player with the longest season.
pid = max(snapshot.series, key=lambda p: len(snapshot.series[p].match_ids))
series = snapshot.series[pid]
print(f"\nplayer {pid}, {len(series.match_ids)} matches:")
print("  match      r      r*     form")
running = None
for mid, r, r_star in zip(series.match_ids, series.r_values, series.r_star_values):
    running = r_star if running is None else (
        series.beta * r_star + (1 - series.beta) * running
    )
    print(f"  {mid}  {r:.3f}  {r_star:.3f}  {running:.3f}")
print(f"  final form: {series.ewma_r_star:.3f}")

role = min(snapshot.player_roles[pid])
ranking = snapshot.rankings[role]
position = [p for p, _ in ranking.entries].index(pid) + 1
print(f"\nrole {role} ranking: {position} of {len(ranking.entries)} eligible")

v = snapshot_versatility(snapshot, bundle, pid)
print(f"versatility: {v.value:.3f} over roles "
      f"{[i for i, s in enumerate(v.role_shares) if s > 0]}")

st = snapshot.stats()
print(f"\nall ratings: n={st.n_ratings} mean={st.mean:.3f} std={st.std:.3f}")
print(f"excellent performances (above mean + 2 sd): "
      f"{st.share_excellent:.4f} of all player-matches")

# How much goal weighting it takes before form scores reshuffle.
per_player = {}
for mr in sorted(snapshot.all_ratings(), key=lambda m: (m.player_id, m.match_id)):
    per_player.setdefault(mr.player_id, []).append(
        (mr.r, mr.goals / bundle.max_goals)
    )
sweep = alpha_sweep_correlation(
    per_player, alphas=(0.0, 0.25, 0.5, 1.0), beta=config.beta
)
print("\ncorrelation of goal-blended form against the goal-blind baseline:")
for alpha in sorted(sweep):
    rho = sweep[alpha]
    print(f"  alpha={alpha:.2f}  correlation={'n/a' if rho is None else f'{rho:.4f}'}")
