"""Word-centered semantic neighborhood graphs, sense communities, and
temporal lineage tracking for semantic-shift analysis."""

from .alignment import AlignmentResult, AlignmentStrategy, SenseLineage, align, lineage_report, refine
from .clustering import PeripheralGraph, SenseCommunity, components, peripheral
from .graph import GraphConfig, GraphStats, WordGraph, annotate_weights, build_graph, graph_stats
from .metrics import GraphTimeSeries, SenseDistribution, distribution_series, sense_distribution, size_series
from .store import (
    NeighborRecord,
    NeighborStore,
    PairSimilarity,
    SliceCounts,
    SliceId,
    load_counts,
    load_neighbors,
    load_similarities,
    relative_frequency,
)

__version__ = "0.1.0"
