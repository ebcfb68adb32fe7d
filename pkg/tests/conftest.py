from __future__ import annotations

import numpy as np
import pytest

from evtag.corpus import generate_synthetic_splits, synthetic_vocabulary
from evtag.embeddings import build_char_vocab, random_vectors
from evtag.network import init_model

from helpers import SMALL_CONFIG


@pytest.fixture(scope="session")
def synthetic_splits():
    return generate_synthetic_splits(seed=7, sizes=(120, 30, 30))


@pytest.fixture(scope="session")
def synthetic_vectors():
    return random_vectors(synthetic_vocabulary(), dim=6, seed=7)


@pytest.fixture(scope="session")
def small_model(synthetic_splits, synthetic_vectors):
    train, _, _ = synthetic_splits
    return init_model(SMALL_CONFIG, synthetic_vectors, build_char_vocab(train), np.random.default_rng(0))
