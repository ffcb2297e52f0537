"""Threading sense communities across time slices by node overlap.

Two strategies: match against the immediately preceding slice only, or
against every earlier slice (which re-links re-emerging senses). A
refinement pass sweeps lineages that persist in fewer than the threshold
number of slices into a single residual lineage per target.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .clustering import SenseCommunity
from .store import SliceId

RESIDUAL_ID = "residual"


class AlignmentStrategy(Enum):
    PREVIOUS_SLICE = "previous_slice"
    ALL_HISTORY = "all_history"


@dataclass(frozen=True)
class LineageEvent:
    slice: SliceId
    kind: str  # born | matched | merged_into | absorbed_secondary
    detail: str


@dataclass
class SenseLineage:
    """A sense identity threaded across slices."""

    lineage_id: str
    occurrences: dict[SliceId, frozenset[str]] = field(default_factory=dict)
    events: list[LineageEvent] = field(default_factory=list)
    residual: bool = False


@dataclass
class AlignmentResult:
    target: str
    strategy: AlignmentStrategy
    lineages: list[SenseLineage] = field(default_factory=list)
    # (slice, community id) -> lineage id; every community maps to exactly one lineage
    assignment: dict[tuple[SliceId, str], str] = field(default_factory=dict)

    def lineage(self, lineage_id: str) -> SenseLineage:
        for lin in self.lineages:
            if lin.lineage_id == lineage_id:
                return lin
        raise KeyError(lineage_id)

    def slices(self) -> list[SliceId]:
        seen = {s for lin in self.lineages for s in lin.occurrences}
        seen.update(s for (s, _) in self.assignment)
        return sorted(seen)


def align(
    communities: dict[SliceId, list[SenseCommunity]],
    strategy: AlignmentStrategy,
    target: str,
) -> AlignmentResult:
    """Assign every community of every slice to exactly one lineage.

    A community inherits the lineage of the earlier community maximizing set
    intersection; zero overlap means a new sense. Argmax ties prefer the most
    recent slice, then the larger predecessor, then the predecessor with the
    smallest member lemma. When several current communities resolve to the
    same lineage, the one with the larger overlap inherits (tie: larger
    community, then smallest member lemma); the rest become new lineages with
    a merge event recorded toward the inherited lineage.
    """
    result = AlignmentResult(target=target, strategy=strategy)
    counter = 0

    def new_lineage(slice_id: SliceId, community: SenseCommunity, kind: str, detail: str) -> SenseLineage:
        nonlocal counter
        lin = SenseLineage(lineage_id=f"L{counter}")
        counter += 1
        lin.occurrences[slice_id] = community.members
        lin.events.append(LineageEvent(slice=slice_id, kind=kind, detail=detail))
        result.lineages.append(lin)
        result.assignment[(slice_id, community.id)] = lin.lineage_id
        return lin

    slices = sorted(communities)
    for idx, t in enumerate(slices):
        if strategy is AlignmentStrategy.PREVIOUS_SLICE:
            pool = slices[idx - 1 : idx]
        else:
            pool = slices[:idx]

        matched: list[tuple[SenseCommunity, int, SenseCommunity, SliceId]] = []
        unmatched: list[SenseCommunity] = []
        for comm in communities[t]:
            best: tuple[int, int, int, str] | None = None
            best_pred: tuple[SenseCommunity, SliceId] | None = None
            for k in pool:
                for pred in communities[k]:
                    overlap = len(comm.members & pred.members)
                    if overlap == 0:
                        continue
                    # maximize overlap, then recency, then predecessor size;
                    # break remaining ties toward the smallest member lemma
                    key = (-overlap, -k.ordinal, -len(pred.members), min(pred.members))
                    if best is None or key < best:
                        best = key
                        best_pred = (pred, k)
            if best_pred is None:
                unmatched.append(comm)
            else:
                pred, k = best_pred
                matched.append((comm, -best[0], pred, k))

        # Resolve several current communities inheriting the same lineage.
        by_lineage: dict[str, list[tuple[SenseCommunity, int, SenseCommunity, SliceId]]] = {}
        for entry in matched:
            lid = result.assignment[(entry[3], entry[2].id)]
            by_lineage.setdefault(lid, []).append(entry)
        for lid, entries in sorted(by_lineage.items()):
            entries.sort(key=lambda e: (-e[1], -len(e[0].members), min(e[0].members)))
            winner, overlap, pred, k = entries[0]
            lineage = result.lineage(lid)
            lineage.occurrences[t] = winner.members
            lineage.events.append(
                LineageEvent(slice=t, kind="matched", detail=f"overlap={overlap} with {pred.id}")
            )
            result.assignment[(t, winner.id)] = lid
            for loser, _loser_overlap, _loser_pred, _ in entries[1:]:
                lin = new_lineage(t, loser, "merged_into", lid)
                lineage.events.append(
                    LineageEvent(slice=t, kind="absorbed_secondary", detail=lin.lineage_id)
                )
        for comm in unmatched:
            new_lineage(t, comm, "born", "no overlap with earlier slices")

    return result


def refine(result: AlignmentResult, persistence_threshold: int = 2) -> AlignmentResult:
    """Sweep lineages persisting in fewer than `persistence_threshold` slices into the residual.

    Per-slice member mass is conserved: swept members join the residual
    lineage at the slice where they occurred. The residual exists even when
    empty and is the only lineage flagged residual.
    """
    residual = SenseLineage(lineage_id=RESIDUAL_ID, residual=True)
    refined = AlignmentResult(target=result.target, strategy=result.strategy)
    refined.assignment = dict(result.assignment)
    swept_ids: set[str] = set()

    for lin in result.lineages:
        if lin.residual:
            continue
        if len(lin.occurrences) >= persistence_threshold:
            refined.lineages.append(
                SenseLineage(
                    lineage_id=lin.lineage_id,
                    occurrences=dict(lin.occurrences),
                    events=list(lin.events),
                )
            )
        else:
            swept_ids.add(lin.lineage_id)
            for slice_id, members in lin.occurrences.items():
                residual.occurrences[slice_id] = residual.occurrences.get(slice_id, frozenset()) | members
                residual.events.append(
                    LineageEvent(slice=slice_id, kind="absorbed_secondary", detail=lin.lineage_id)
                )
    refined.lineages.append(residual)
    for key, lid in refined.assignment.items():
        if lid in swept_ids:
            refined.assignment[key] = RESIDUAL_ID
    return refined


@dataclass(frozen=True)
class LineageRow:
    lineage_id: str
    first_slice: SliceId | None
    last_slice: SliceId | None
    sizes: tuple[int, ...]
    events: tuple[LineageEvent, ...]


@dataclass(frozen=True)
class LineageReport:
    slices: tuple[SliceId, ...]
    rows: tuple[LineageRow, ...]


def lineage_report(result: AlignmentResult) -> LineageReport:
    """One row per lineage with per-slice sizes (0 where absent) and events."""
    slices = result.slices()
    rows = []
    for lin in result.lineages:
        present = sorted(lin.occurrences)
        rows.append(
            LineageRow(
                lineage_id=lin.lineage_id,
                first_slice=present[0] if present else None,
                last_slice=present[-1] if present else None,
                sizes=tuple(len(lin.occurrences.get(s, ())) for s in slices),
                events=tuple(sorted(lin.events, key=lambda e: (e.slice.ordinal, e.kind, e.detail))),
            )
        )
    return LineageReport(slices=tuple(slices), rows=tuple(rows))
