"""Sense communities as connected components of the peripheral graph."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import GraphEdge, WordGraph
from .store import SliceId


@dataclass
class PeripheralGraph:
    """The word graph with the target node and its incident edges removed."""

    target: str
    slice: SliceId
    nodes: set[str] = field(default_factory=set)
    edges: dict[tuple[str, str], GraphEdge] = field(default_factory=dict)


@dataclass(frozen=True)
class SenseCommunity:
    """One connected component of the peripheral graph."""

    id: str
    slice: SliceId
    members: frozenset[str]


def peripheral(graph: WordGraph) -> PeripheralGraph:
    """Drop the target and every center-incident edge."""
    nodes = {l for l in graph.nodes if l != graph.target}
    edges = {k: e for k, e in graph.edges.items() if graph.target not in k}
    return PeripheralGraph(target=graph.target, slice=graph.slice, nodes=nodes, edges=edges)


class _UnionFind:
    def __init__(self, items: list[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def components(pg: PeripheralGraph) -> list[SenseCommunity]:
    """Exact connected components, ordered by (size desc, smallest lemma asc).

    Community ids are assigned in that order and are stable within the
    (target, slice) pair.
    """
    uf = _UnionFind(sorted(pg.nodes))
    for a, b in pg.edges:
        uf.union(a, b)
    groups: dict[str, set[str]] = {}
    for node in pg.nodes:
        groups.setdefault(uf.find(node), set()).add(node)
    ordered = sorted(groups.values(), key=lambda g: (-len(g), min(g)))
    return [
        SenseCommunity(id=f"{pg.slice.label}:c{i}", slice=pg.slice, members=frozenset(g))
        for i, g in enumerate(ordered)
    ]
