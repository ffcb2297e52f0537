import json
import random

import pytest

from sensegraph.alignment import AlignmentStrategy, align, refine
from sensegraph.clustering import components, peripheral
from sensegraph.exports import (
    DOT_FORMAT,
    GRAPHML_FORMAT,
    JSON_FORMAT,
    RESIDUAL_COLOR_INDEX,
    ExportError,
    ExportStyle,
    build_cluster_view,
    export_clusters,
    export_graph,
    import_clusters,
    import_graph,
    make_palette,
)
from sensegraph.graph import GraphConfig, PairSimilarity, annotate_weights, build_graph
from sensegraph.store import NeighborStore, SliceId
from sensegraph.synth import random_store

from conftest import make_store

S = SliceId(0, "1980")
SMALL = GraphConfig(depth=2, k_dist=(1, 1), k_sub=(1, 1))


def three_node_graph():
    store = make_store(S, {
        "w": ([("a", 0.9)], [("b", 7)]),
        "a": ([("b", 0.8)], []),
    })
    return build_graph(store, "w", S, SMALL)


def random_graph(rng):
    slice_id = SliceId(rng.randint(0, 5), str(1980 + rng.randint(0, 5)))
    store = random_store(rng, slice_id, vocab_size=rng.randint(10, 40))
    target = f"w{rng.randrange(10):03d}"
    graph = build_graph(store, target, slice_id, GraphConfig())
    if rng.random() < 0.5:
        keys = [k for k in graph.edges if rng.random() < 0.5]
        sims = PairSimilarity(slice=slice_id, pairs={k: round(rng.uniform(-1, 1), 6) for k in keys})
        graph = annotate_weights(graph, sims)
    return graph


def test_center_only_json_round_trip():
    g = build_graph(NeighborStore(), "w", S, SMALL)
    assert import_graph(export_graph(g, format=JSON_FORMAT), JSON_FORMAT) == g


def test_three_node_dot_substitution_precedence():
    dot = export_graph(three_node_graph(), format=DOT_FORMAT).decode()
    # w-b is substitution-sourced: rendered with the substitution color
    line = next(l for l in dot.splitlines() if '"b" -- "w"' in l)
    assert 'color="gold"' in line
    line = next(l for l in dot.splitlines() if '"a" -- "w"' in l)
    assert 'color="blue"' in line


def test_random_graph_round_trips(rng):
    for _ in range(100):
        g = random_graph(rng)
        for fmt in (JSON_FORMAT, GRAPHML_FORMAT):
            assert import_graph(export_graph(g, format=fmt), fmt) == g


def test_export_determinism(rng):
    g = random_graph(rng)
    for fmt in (JSON_FORMAT, GRAPHML_FORMAT, DOT_FORMAT):
        assert export_graph(g, format=fmt) == export_graph(g, format=fmt)


def test_unknown_format_rejected():
    with pytest.raises(ExportError, match="unknown"):
        export_graph(three_node_graph(), format="yaml")
    with pytest.raises(ExportError, match="unknown"):
        import_graph(b"", "dot")


def test_import_rejects_undeclared_edge_endpoint():
    doc = json.loads(export_graph(three_node_graph(), format=JSON_FORMAT))
    doc["edges"].append({"a": "a", "b": "zz", "relations": ["distributional"], "weight": None})
    with pytest.raises(ExportError, match="undeclared"):
        import_graph(json.dumps(doc).encode(), JSON_FORMAT)


def test_handwritten_minimal_json_graph():
    doc = {
        "schema_version": 1,
        "kind": "word_graph",
        "target": "w",
        "slice": {"ordinal": 0, "label": "1980"},
        "config": {"depth": 1, "k_dist": [1], "k_sub": [0]},
        "nodes": [
            {"lemma": "a", "layer": 1, "provenance": {"distributional": "w"}},
            {"lemma": "w", "layer": 0, "provenance": {}},
        ],
        "edges": [{"a": "a", "b": "w", "relations": ["distributional"], "weight": None}],
    }
    g = import_graph(json.dumps(doc).encode(), JSON_FORMAT)
    assert set(g.nodes) == {"w", "a"}
    assert g.nodes["a"].layer == 1
    assert g.edges[("a", "w")].relations == {"distributional"}


def refined_result(graph):
    comms = {graph.slice: components(peripheral(graph))}
    return refine(align(comms, AlignmentStrategy.PREVIOUS_SLICE, graph.target), persistence_threshold=1)


def test_cluster_export_single_community_one_color():
    g = three_node_graph()
    refined = refined_result(g)
    view = build_cluster_view(g, refined, g.slice)
    colors = {n.color for n in view.nodes if n.lineage is not None}
    assert len(colors) == 1


def test_cluster_export_marks_center_edges_removed():
    g = three_node_graph()
    view = build_cluster_view(g, refined_result(g), g.slice)
    removed = {(e.a, e.b) for e in view.edges if e.removed}
    assert removed == {("a", "w"), ("b", "w")}
    kept = {(e.a, e.b) for e in view.edges if not e.removed}
    assert kept == {("a", "b")}


def test_cluster_residual_reserved_color():
    # singleton community fails a 2-slice persistence check -> residual
    store = make_store(S, {"w": ([("a", 0.9)], [("b", 7)])})
    g = build_graph(store, "w", S, SMALL)
    comms = {S: components(peripheral(g))}
    refined = refine(align(comms, AlignmentStrategy.PREVIOUS_SLICE, "w"))
    view = build_cluster_view(g, refined, S)
    for node in view.nodes:
        if node.lineage is not None:
            assert node.lineage == "residual" and node.color == RESIDUAL_COLOR_INDEX


def test_cluster_two_block_colors():
    store = make_store(S, {
        "w": ([("a", 0.9), ("x", 0.8)], []),
        "a": ([("b", 0.9)], []),
        "x": ([("y", 0.9)], []),
    })
    g = build_graph(store, "w", S, GraphConfig(2, (2, 1), (0, 0)))
    refined = refined_result(g)
    view = build_cluster_view(g, refined, g.slice)
    by_lemma = {n.lemma: n for n in view.nodes}
    assert by_lemma["a"].color == by_lemma["b"].color
    assert by_lemma["x"].color == by_lemma["y"].color
    assert by_lemma["a"].color != by_lemma["x"].color


def test_cluster_round_trips(rng):
    for _ in range(30):
        g = random_graph(rng)
        refined = refined_result(g)
        if g.slice not in refined.slices():
            continue
        for fmt in (JSON_FORMAT, GRAPHML_FORMAT):
            data = export_clusters(g, refined, g.slice, None, fmt)
            view = import_clusters(data, fmt)
            assert view == build_cluster_view(g, refined, g.slice)


def test_unknown_slice_rejected():
    g = three_node_graph()
    with pytest.raises(ExportError, match="slice"):
        export_clusters(g, refined_result(g), SliceId(7, "2050"))


def test_palette_residual_pinned_and_injective(rng):
    g = random_graph(rng)
    refined = refined_result(g)
    palette = make_palette(refined)
    assert palette["residual"] == RESIDUAL_COLOR_INDEX
    values = list(palette.values())
    assert len(values) == len(set(values))


def test_weight_shading_darker_for_lower():
    store = make_store(S, {"w": ([("a", 0.9), ("b", 0.8)], [])})
    g = build_graph(store, "w", S, GraphConfig(1, (2,), (0,)))
    sims = PairSimilarity(slice=S, pairs={("a", "w"): 0.2, ("b", "w"): 0.9})
    g = annotate_weights(g, sims)
    dot = export_graph(g, ExportStyle(weight_shading=True), DOT_FORMAT).decode()
    line_a = next(l for l in dot.splitlines() if '"a" -- "w"' in l)
    line_b = next(l for l in dot.splitlines() if '"b" -- "w"' in l)
    shade_a = int(line_a.split("gray")[1].split('"')[0])
    shade_b = int(line_b.split("gray")[1].split('"')[0])
    assert shade_a < shade_b  # lower similarity renders darker
