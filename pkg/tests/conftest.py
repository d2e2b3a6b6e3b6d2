"""Shared fixtures: small synthetic corpora reused across test modules."""

import pytest

from pitchrank.events import build_store
from pitchrank.pipeline import PipelineConfig, build_snapshot, run_learning_phase
from pitchrank.synth import SynthConfig, make_corpus


@pytest.fixture(scope="session")
def small_corpus():
    return make_corpus(SynthConfig(seed=3, n_matches=40))


@pytest.fixture(scope="session")
def small_store(small_corpus):
    return build_store(
        small_corpus.events, small_corpus.matches, small_corpus.players
    )


@pytest.fixture(scope="session")
def small_config():
    return PipelineConfig(min_matches=3)


@pytest.fixture(scope="session")
def small_bundle(small_store, small_config):
    return run_learning_phase(small_store, small_config)


@pytest.fixture(scope="session")
def small_snapshot(small_store, small_bundle):
    return build_snapshot(small_store, small_bundle)
