"""Deterministic synthetic neighbor tables with planted sense structure,
plus brute-force oracles used to verify the optimized implementations.

The oracles are definitionally transparent and share no code with the
modules they check.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .alignment import AlignmentResult, AlignmentStrategy
from .clustering import SenseCommunity
from .store import NeighborRecord, NeighborStore, SliceId

ORACLE_MAX_NODES = 50
ORACLE_MAX_COMMUNITIES = 6
ORACLE_MAX_SLICES = 5


@dataclass(frozen=True)
class SenseBlock:
    """One planted sense: a clique-ish group of lemmas active over a slice range."""

    name: str
    members: tuple[str, ...]
    active: tuple[int, int]  # inclusive slice range
    density: float = 1.0


@dataclass(frozen=True)
class Scenario:
    target: str
    slices: int
    blocks: tuple[SenseBlock, ...]
    leakage: float = 0.0
    seed: int = 0
    labels: tuple[str, ...] = ()

    def slice_labels(self) -> tuple[str, ...]:
        if self.labels:
            return self.labels
        return tuple(str(i) for i in range(self.slices))

    def validate(self) -> None:
        if self.slices < 1:
            raise ValueError("scenario needs at least one slice")
        if not 0.0 <= self.leakage <= 1.0:
            raise ValueError("leakage must be in [0, 1]")
        if self.labels and len(self.labels) != self.slices:
            raise ValueError("labels must match slice count")
        seen: set[str] = set()
        for block in self.blocks:
            if not 0.0 < block.density <= 1.0:
                raise ValueError(f"block {block.name!r}: density must be in (0, 1]")
            lo, hi = block.active
            if not (0 <= lo <= hi < self.slices):
                raise ValueError(f"block {block.name!r}: active range {block.active} out of bounds")
            overlap = seen & set(block.members)
            if overlap:
                raise ValueError(f"block {block.name!r} overlaps earlier blocks on {sorted(overlap)}")
            if self.target in block.members:
                raise ValueError(f"block {block.name!r} contains the target word")
            seen.update(block.members)


def _active_blocks(scenario: Scenario, t: int) -> list[SenseBlock]:
    active = [b for b in scenario.blocks if b.active[0] <= t <= b.active[1]]
    return sorted(active, key=lambda b: (-len(b.members), b.name))


def _scored(lemmas: list[str], start: float, step: float) -> list[list]:
    return [[lemma, round(start - i * step, 6)] for i, lemma in enumerate(lemmas)]


def _freqs(lemmas: list[str], start: int) -> list[list]:
    return [[lemma, start - i] for i, lemma in enumerate(lemmas)]


def generate(scenario: Scenario) -> dict[str, list[dict]]:
    """Neighbor records per slice label, deterministic under the scenario seed.

    Each block member always lists the block hub (its first member) and its
    ring successor, keeping the block connected in any built graph; further
    same-block neighbors are sampled with the block density, and cross-block
    neighbors with the leakage rate. The target's lists interleave active
    blocks largest-first so first-layer exposure tracks block size.
    """
    scenario.validate()
    rng = random.Random(scenario.seed)
    labels = scenario.slice_labels()
    out: dict[str, list[dict]] = {}
    for t in range(scenario.slices):
        label = labels[t]
        records: list[dict] = []
        active = _active_blocks(scenario, t)

        # Target record: round-robin over active blocks, largest first.
        pool: list[str] = []
        cursors = [0] * len(active)
        while any(cursors[i] < len(active[i].members) for i in range(len(active))):
            for i, block in enumerate(active):
                if cursors[i] < len(block.members):
                    pool.append(block.members[cursors[i]])
                    cursors[i] += 1
        if pool:
            records.append({
                "slice": label,
                "word": scenario.target,
                "dist": _scored(pool, 0.99, 0.01),
                "sub": _freqs(pool, 1000),
            })

        other_members = {
            block.name: [m for b in active if b.name != block.name for m in b.members]
            for block in active
        }
        for block in active:
            members = block.members
            for idx, member in enumerate(members):
                neighbors: list[str] = []
                hub = members[0]
                succ = members[(idx + 1) % len(members)]
                if hub != member:
                    neighbors.append(hub)
                if succ != member and succ not in neighbors:
                    neighbors.append(succ)
                for candidate in members:
                    if candidate == member or candidate in neighbors:
                        continue
                    if rng.random() < block.density:
                        neighbors.append(candidate)
                leak_pool = other_members[block.name]
                if leak_pool and rng.random() < scenario.leakage:
                    leak = leak_pool[rng.randrange(len(leak_pool))]
                    if leak not in neighbors:
                        neighbors.append(leak)
                if not neighbors:
                    continue
                records.append({
                    "slice": label,
                    "word": member,
                    "dist": _scored(neighbors, 0.95, 0.01),
                    "sub": _freqs(neighbors, 500),
                })
        out[label] = records
    return out


def write_scenario(scenario: Scenario, outdir: str | Path) -> list[Path]:
    """Write one neighbor file per slice (`neighbors_<label>.jsonl`)."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for label, records in generate(scenario).items():
        path = outdir / f"neighbors_{label}.jsonl"
        with path.open("w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
        paths.append(path)
    return paths


def scenario_store(scenario: Scenario) -> tuple[NeighborStore, list[SliceId]]:
    """In-memory store for a scenario, with its ordered slice ids."""
    store = NeighborStore()
    slices = [SliceId(ordinal=i, label=label) for i, label in enumerate(scenario.slice_labels())]
    for slice_id, (_, records) in zip(slices, generate(scenario).items()):
        for rec in records:
            store.add(NeighborRecord(
                slice=slice_id,
                word=rec["word"],
                dist=tuple((l, c) for l, c in rec["dist"]),
                sub=tuple((l, f) for l, f in rec["sub"]),
            ))
    return store, slices


# ---------------------------------------------------------------------------
# Brute-force oracles


def oracle_components(nodes: set[str], edges: list[tuple[str, str]]) -> list[frozenset[str]]:
    """Partition by exhaustive reachability closure; test-only reference.

    Returned in the same deterministic order as the optimized implementation:
    size descending, then smallest member lemma.
    """
    if len(nodes) > ORACLE_MAX_NODES:
        raise ValueError(f"oracle limited to {ORACLE_MAX_NODES} nodes")
    adjacency: dict[str, set[str]] = {n: {n} for n in nodes}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    groups: list[frozenset[str]] = []
    assigned: set[str] = set()
    for start in sorted(nodes):
        if start in assigned:
            continue
        # exhaustive reachability closure: keep adding neighbors of the
        # reachable set until nothing changes
        reachable = {start}
        changed = True
        while changed:
            expanded = set(reachable)
            for member in reachable:
                expanded |= adjacency[member]
            changed = expanded != reachable
            reachable = expanded
        assigned |= reachable
        groups.append(frozenset(reachable))
    return sorted(groups, key=lambda g: (-len(g), min(g)))


def oracle_align(
    communities: dict[SliceId, list[SenseCommunity]],
    strategy: AlignmentStrategy,
    target: str = "target",
) -> set[frozenset[tuple[str, str]]]:
    """Exhaustive-enumeration alignment; returns the lineage grouping as a set
    of frozensets of (slice label, community id) pairs.

    Tie rules mirror the production aligner: argmax on overlap, then most
    recent slice, then larger predecessor, then smallest predecessor lemma;
    inheritance conflicts keep the community with larger overlap, then larger
    size, then smallest member lemma.
    """
    slices = sorted(communities)
    if len(slices) > ORACLE_MAX_SLICES:
        raise ValueError(f"oracle limited to {ORACLE_MAX_SLICES} slices")
    if any(len(communities[s]) > ORACLE_MAX_COMMUNITIES for s in slices):
        raise ValueError(f"oracle limited to {ORACLE_MAX_COMMUNITIES} communities per slice")

    # groups: lineage index -> list of (slice, community)
    groups: list[list[tuple[SliceId, SenseCommunity]]] = []
    where: dict[tuple[SliceId, str], int] = {}

    for pos, t in enumerate(slices):
        earlier = slices[:pos] if strategy is AlignmentStrategy.ALL_HISTORY else slices[max(0, pos - 1):pos]
        candidates_per_comm: list[tuple[SenseCommunity, list[tuple[int, int, int, str, SliceId, SenseCommunity]]]] = []
        for comm in communities[t]:
            scored = []
            for k in earlier:
                for pred in communities[k]:
                    overlap = len(set(comm.members) & set(pred.members))
                    if overlap > 0:
                        scored.append((overlap, k.ordinal, len(pred.members), min(pred.members), k, pred))
            candidates_per_comm.append((comm, scored))

        claims: dict[int, list[tuple[int, SenseCommunity]]] = {}
        newcomers: list[SenseCommunity] = []
        for comm, scored in candidates_per_comm:
            if not scored:
                newcomers.append(comm)
                continue
            scored.sort(key=lambda s: (-s[0], -s[1], -s[2], s[3]))
            overlap, _, _, _, k, pred = scored[0]
            claims.setdefault(where[(k, pred.id)], []).append((overlap, comm))
        for lineage_idx in sorted(claims):
            contenders = sorted(claims[lineage_idx], key=lambda c: (-c[0], -len(c[1].members), min(c[1].members)))
            _, winner = contenders[0]
            groups[lineage_idx].append((t, winner))
            where[(t, winner.id)] = lineage_idx
            for _, loser in contenders[1:]:
                groups.append([(t, loser)])
                where[(t, loser.id)] = len(groups) - 1
        for comm in newcomers:
            groups.append([(t, comm)])
            where[(t, comm.id)] = len(groups) - 1

    return {frozenset((s.label, c.id) for s, c in grp) for grp in groups}


def lineage_grouping(result: AlignmentResult) -> set[frozenset[tuple[str, str]]]:
    """Canonical, id-independent view of an alignment: communities grouped by lineage."""
    by_lineage: dict[str, set[tuple[str, str]]] = {}
    for (slice_id, comm_id), lid in result.assignment.items():
        by_lineage.setdefault(lid, set()).add((slice_id.label, comm_id))
    return {frozenset(v) for v in by_lineage.values()}


# ---------------------------------------------------------------------------
# Random inputs for property suites


def random_store(rng: random.Random, slice_id: SliceId, vocab_size: int = 40,
                 max_dist: int = 6, max_sub: int = 6) -> NeighborStore:
    """A random but schema-valid neighbor store over a synthetic vocabulary."""
    vocab = [f"w{i:03d}" for i in range(vocab_size)]
    store = NeighborStore()
    for word in vocab:
        others = [v for v in vocab if v != word]
        n_dist = rng.randint(0, max_dist)
        n_sub = rng.randint(0, max_sub)
        dist_lemmas = rng.sample(others, min(n_dist, len(others)))
        sub_lemmas = rng.sample(others, min(n_sub, len(others)))
        dist = sorted(
            ((l, round(rng.uniform(-1, 1), 6)) for l in dist_lemmas),
            key=lambda p: (-p[1], p[0]),
        )
        sub = sorted(((l, rng.randint(1, 100)) for l in sub_lemmas), key=lambda p: (-p[1], p[0]))
        store.add(NeighborRecord(slice=slice_id, word=word, dist=tuple(dist), sub=tuple(sub)))
    return store


def random_partitions(rng: random.Random, n_slices: int, universe_size: int = 18,
                      max_communities: int = ORACLE_MAX_COMMUNITIES) -> dict[SliceId, list[SenseCommunity]]:
    """Random community partitions per slice over a shared lemma universe."""
    universe = [f"n{i:02d}" for i in range(universe_size)]
    out: dict[SliceId, list[SenseCommunity]] = {}
    for t in range(n_slices):
        slice_id = SliceId(ordinal=t, label=str(t))
        present = [l for l in universe if rng.random() < 0.7]
        rng.shuffle(present)
        n_comm = rng.randint(0, min(max_communities, len(present)))
        groups: list[set[str]] = [set() for _ in range(n_comm)]
        for i, lemma in enumerate(present if n_comm else []):
            groups[i % n_comm].add(lemma)
        groups = [g for g in groups if g]
        ordered = sorted(groups, key=lambda g: (-len(g), min(g)))
        out[slice_id] = [
            SenseCommunity(id=f"{slice_id.label}:c{i}", slice=slice_id, members=frozenset(g))
            for i, g in enumerate(ordered)
        ]
    return out


def random_reemergence_communities(rng: random.Random, n_slices: int = 5,
                                   n_blocks: int = 4) -> dict[SliceId, list[SenseCommunity]]:
    """Disjoint planted blocks with on/off schedules, at least one of which
    disappears for a slice and returns (the re-emergence regime)."""
    blocks = []
    lemma_idx = 0
    for b in range(n_blocks):
        size = rng.randint(2, 4)
        members = frozenset(f"b{b}x{lemma_idx + i}" for i in range(size))
        lemma_idx += size
        blocks.append(members)
    schedules: list[list[bool]] = []
    for b in range(n_blocks):
        if b == 0 and n_slices >= 3:
            # guaranteed re-emergence: on, gap, on again
            gap = rng.randrange(1, n_slices - 1)
            schedule = [t != gap for t in range(n_slices)]
        else:
            schedule = [rng.random() < 0.6 for t in range(n_slices)]
            if not any(schedule):
                schedule[rng.randrange(n_slices)] = True
        schedules.append(schedule)
    out: dict[SliceId, list[SenseCommunity]] = {}
    for t in range(n_slices):
        slice_id = SliceId(ordinal=t, label=str(t))
        active = [blocks[b] for b in range(n_blocks) if schedules[b][t]]
        ordered = sorted(active, key=lambda g: (-len(g), min(g)))
        out[slice_id] = [
            SenseCommunity(id=f"{slice_id.label}:c{i}", slice=slice_id, members=g)
            for i, g in enumerate(ordered)
        ]
    return out


def replacement_scenario() -> Scenario:
    """Two disjoint planted senses with crossing activity: the first fades out
    while the second takes over."""
    return Scenario(
        target="probe",
        slices=4,
        blocks=(
            SenseBlock(name="old", members=("card", "deck", "spade", "suit"), active=(0, 1)),
            SenseBlock(name="new", members=("casino", "tower"), active=(1, 3)),
        ),
        leakage=0.0,
        seed=7,
    )
