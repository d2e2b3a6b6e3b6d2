"""A walk through the event corpus: generation, ingestion, and what's inside.

Generates a small synthetic season, ingests it the same way the CLI does,
and prints the headline numbers plus one fully parsed event record.
"""

import json

from pitchrank.events import build_store, corpus_stats, event_to_record
from pitchrank.synth import SynthConfig, make_corpus

corpus = make_corpus(SynthConfig(seed=11, n_matches=30))
print(f"generated {len(corpus.events)} raw event records "
      f"across {len(corpus.matches)} matches")

store = build_store(corpus.events, corpus.matches, corpus.players)
print(f"ingested store: {len(store)} events kept "
      f"({len(store.players)} players, {len(store.matches)} matches)")
for reason, count in sorted(store.warnings.items()):
    print(f"  dropped/{reason}: {count}")

# Every event carries the same ten wire fields; parsing is lossless.
first = store.matches[store.match_ids()[0]].events[0]
print("\none event, round-tripped back to its wire form:")
print(json.dumps(event_to_record(first), indent=2))

# Corpus-level distributions: how busy a match is, how busy a player is,
# and which event types dominate.
st = corpus_stats(store)
print(f"\nevents per match:  min={st.events_per_match.min:.0f}  "
      f"mean={st.events_per_match.mean:.1f}  max={st.events_per_match.max:.0f}")
print(f"events per player-match: mean={st.events_per_player_match.mean:.1f}")
print("event type shares:")
for name, share in sorted(st.event_type_frequencies.items(), key=lambda kv: -kv[1]):
    print(f"  {name:<20s} {share:.4f}")
