from __future__ import annotations

import random

import pytest

from sensegraph.store import NeighborRecord, NeighborStore, SliceId, canonical_dist, canonical_sub


def make_slice(ordinal: int = 0, label: str | None = None) -> SliceId:
    return SliceId(ordinal=ordinal, label=label if label is not None else str(1980 + 10 * ordinal))


def make_record(slice_id: SliceId, word: str, dist=(), sub=()) -> NeighborRecord:
    return NeighborRecord(
        slice=slice_id,
        word=word,
        dist=tuple(canonical_dist(list(dist))),
        sub=tuple(canonical_sub(list(sub))),
    )


def make_store(slice_id: SliceId, table: dict[str, tuple[list, list]]) -> NeighborStore:
    """table: word -> (dist pairs, sub pairs)."""
    store = NeighborStore()
    for word, (dist, sub) in table.items():
        store.add(make_record(slice_id, word, dist, sub))
    return store


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)
