"""Word-centered neighborhood graph construction by layered expansion."""

from __future__ import annotations

from dataclasses import dataclass, field

from .store import NeighborStore, PairSimilarity, SliceId

DISTRIBUTIONAL = "distributional"
SUBSTITUTION = "substitution"


@dataclass(frozen=True)
class GraphConfig:
    """Expansion depth and per-layer fan-outs for the two neighbor sources."""

    depth: int = 2
    k_dist: tuple[int, ...] = (3, 1)
    k_sub: tuple[int, ...] = (6, 2)

    def validate(self) -> None:
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if len(self.k_dist) != self.depth or len(self.k_sub) != self.depth:
            raise ValueError("k_dist and k_sub must have one entry per layer")
        if any(k < 0 for k in self.k_dist) or any(k < 0 for k in self.k_sub):
            raise ValueError("fan-outs must be >= 0")
        if self.k_dist[0] + self.k_sub[0] == 0:
            raise ValueError("layer 1 must have at least one positive fan-out")

    def max_nodes(self) -> int:
        """Worst-case node count: 1 + sum of per-layer maximum widths."""
        total, width = 1, 1
        for l in range(self.depth):
            width *= self.k_dist[l] + self.k_sub[l]
            total += width
        return total


@dataclass
class GraphNode:
    """One graph node; provenance maps relation -> the parent that first linked it."""

    lemma: str
    layer: int
    provenance: dict[str, str] = field(default_factory=dict)


@dataclass
class GraphEdge:
    """Undirected edge; endpoints stored in lexicographic order."""

    a: str
    b: str
    relations: set[str] = field(default_factory=set)
    weight: float | None = None

    @property
    def key(self) -> tuple[str, str]:
        return (self.a, self.b)


def edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass
class WordGraph:
    """The word neighborhood graph for one (target, slice)."""

    target: str
    slice: SliceId
    config: GraphConfig
    nodes: dict[str, GraphNode] = field(default_factory=dict)
    edges: dict[tuple[str, str], GraphEdge] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        """True when the target had no usable neighbor record (center-only graph)."""
        return len(self.nodes) == 1

    def add_edge(self, u: str, v: str, relation: str) -> None:
        key = edge_key(u, v)
        edge = self.edges.get(key)
        if edge is None:
            self.edges[key] = GraphEdge(a=key[0], b=key[1], relations={relation})
        else:
            edge.relations.add(relation)

    def check_invariants(self) -> None:
        if self.target not in self.nodes or self.nodes[self.target].layer != 0:
            raise AssertionError("target must be a layer-0 node")
        bound = self.config.max_nodes()
        if len(self.nodes) > bound:
            raise AssertionError(f"node count {len(self.nodes)} exceeds bound {bound}")
        for (a, b), edge in self.edges.items():
            if a == b:
                raise AssertionError(f"self-loop on {a!r}")
            if a not in self.nodes or b not in self.nodes:
                raise AssertionError(f"edge ({a!r}, {b!r}) references a missing node")
            if not edge.relations:
                raise AssertionError(f"edge ({a!r}, {b!r}) has no relations")


def build_graph(store: NeighborStore, target: str, slice_id: SliceId, config: GraphConfig) -> WordGraph:
    """Layered expansion from the target over the neighbor store.

    Layer 1 is the union of the target's top distributional and substitution
    neighbors. Each node introduced at layer l-1 is then expanded with the
    layer-l fan-outs; candidates already in the graph only gain an edge
    (same-depth and cross-depth connectivity), new candidates join at layer l.
    Fully deterministic: expansion follows introduction order, and within one
    expansion distributional candidates precede substitution candidates, each
    in canonical rank order.
    """
    config.validate()
    graph = WordGraph(target=target, slice=slice_id, config=config)
    graph.nodes[target] = GraphNode(lemma=target, layer=0)

    frontier: list[str] = []
    dist, sub = store.lookup(slice_id, target, config.k_dist[0], config.k_sub[0])
    for relation, candidates in ((DISTRIBUTIONAL, dist), (SUBSTITUTION, sub)):
        for lemma in candidates:
            if lemma == target:
                continue
            node = graph.nodes.get(lemma)
            if node is None:
                node = GraphNode(lemma=lemma, layer=1, provenance={relation: target})
                graph.nodes[lemma] = node
                frontier.append(lemma)
            elif relation not in node.provenance:
                node.provenance[relation] = target
            graph.add_edge(target, lemma, relation)

    for layer in range(2, config.depth + 1):
        next_frontier: list[str] = []
        for u in frontier:
            dist, sub = store.lookup(slice_id, u, config.k_dist[layer - 1], config.k_sub[layer - 1])
            for relation, candidates in ((DISTRIBUTIONAL, dist), (SUBSTITUTION, sub)):
                for v in candidates:
                    if v == u:
                        continue
                    node = graph.nodes.get(v)
                    if node is None:
                        node = GraphNode(lemma=v, layer=layer, provenance={relation: u})
                        graph.nodes[v] = node
                        next_frontier.append(v)
                    elif node.layer > 0 and relation not in node.provenance:
                        node.provenance[relation] = u
                    graph.add_edge(u, v, relation)
        frontier = next_frontier

    graph.check_invariants()
    return graph


def annotate_weights(graph: WordGraph, sims: PairSimilarity) -> WordGraph:
    """Return a copy of the graph with edge weights set from pairwise similarities.

    Topology is unchanged; edges without a similarity entry keep weight None.
    """
    if sims.slice != graph.slice:
        raise ValueError(f"similarities are for slice {sims.slice.label!r}, graph is {graph.slice.label!r}")
    out = WordGraph(
        target=graph.target,
        slice=graph.slice,
        config=graph.config,
        nodes={l: GraphNode(n.lemma, n.layer, dict(n.provenance)) for l, n in graph.nodes.items()},
        edges={},
    )
    for key, edge in graph.edges.items():
        out.edges[key] = GraphEdge(a=edge.a, b=edge.b, relations=set(edge.relations), weight=sims.get(edge.a, edge.b))
    return out


def weight_coverage(graph: WordGraph) -> tuple[int, int]:
    """(edges with a weight, total edges) after annotation."""
    weighted = sum(1 for e in graph.edges.values() if e.weight is not None)
    return weighted, len(graph.edges)


@dataclass(frozen=True)
class GraphStats:
    nodes: int
    edges: int
    layer_sizes: tuple[int, ...]
    local_edges: int
    global_edges: int


def graph_stats(graph: WordGraph) -> GraphStats:
    """Node/edge counts, per-layer sizes, and local vs global edge split.

    Local edges join two nodes at the same layer >= 1; every other edge
    (including center-incident ones) is global.
    """
    max_layer = max(n.layer for n in graph.nodes.values())
    sizes = [0] * (max_layer + 1)
    for node in graph.nodes.values():
        sizes[node.layer] += 1
    local = global_ = 0
    for a, b in graph.edges:
        la, lb = graph.nodes[a].layer, graph.nodes[b].layer
        if la == lb and la >= 1:
            local += 1
        else:
            global_ += 1
    return GraphStats(
        nodes=len(graph.nodes),
        edges=len(graph.edges),
        layer_sizes=tuple(sizes),
        local_edges=local,
        global_edges=global_,
    )
