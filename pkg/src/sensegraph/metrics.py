"""Sense-usage distributions and diachronic graph-size diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field

from .alignment import AlignmentResult
from .graph import WordGraph, graph_stats
from .store import SliceId


@dataclass(frozen=True)
class SenseDistribution:
    """Normalized per-lineage mass at one slice; empty+undefined when no community exists."""

    target: str
    slice: SliceId
    mass: dict[str, float]
    defined: bool

    def check_normalized(self, tol: float = 1e-9) -> None:
        if self.defined and abs(sum(self.mass.values()) - 1.0) > tol:
            raise AssertionError(f"distribution at {self.slice.label} does not sum to 1")


def sense_distribution(result: AlignmentResult, slice_id: SliceId) -> SenseDistribution:
    """mass(lineage) = member count at the slice / total peripheral members at the slice."""
    sizes = {
        lin.lineage_id: len(lin.occurrences[slice_id])
        for lin in result.lineages
        if slice_id in lin.occurrences and len(lin.occurrences[slice_id]) > 0
    }
    total = sum(sizes.values())
    if total == 0:
        return SenseDistribution(target=result.target, slice=slice_id, mass={}, defined=False)
    mass = {lid: n / total for lid, n in sorted(sizes.items())}
    return SenseDistribution(target=result.target, slice=slice_id, mass=mass, defined=True)


def distribution_series(result: AlignmentResult) -> list[SenseDistribution]:
    """One distribution per slice holding any community, in chronological order."""
    out = []
    for slice_id in result.slices():
        dist = sense_distribution(result, slice_id)
        if dist.defined:
            out.append(dist)
    return out


@dataclass(frozen=True)
class GraphTimeSeries:
    target: str
    points: tuple[tuple[SliceId, int, int], ...]  # (slice, nodes, edges)
    peak_slice: SliceId | None = field(default=None)


def size_series(graphs: list[WordGraph]) -> GraphTimeSeries:
    """Per-slice node/edge counts plus the node-count peak (earliest slice wins ties)."""
    targets = {g.target for g in graphs}
    if len(targets) > 1:
        raise ValueError(f"graphs mix targets: {sorted(targets)}")
    ordered = sorted(graphs, key=lambda g: g.slice.ordinal)
    points = []
    peak: SliceId | None = None
    peak_nodes = -1
    for g in ordered:
        stats = graph_stats(g)
        points.append((g.slice, stats.nodes, stats.edges))
        if stats.nodes > peak_nodes:
            peak_nodes = stats.nodes
            peak = g.slice
    return GraphTimeSeries(target=next(iter(targets)) if targets else "", points=tuple(points), peak_slice=peak)
