"""Serialization of graphs, cluster views, lineages, and series.

JSON is the canonical lossless format; GraphML is lossless as well; DOT is
presentation-only. All exporters are deterministic: equal inputs yield
byte-identical output.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .alignment import AlignmentResult, LineageReport, RESIDUAL_ID
from .graph import SUBSTITUTION, GraphConfig, GraphEdge, GraphNode, WordGraph, edge_key
from .metrics import GraphTimeSeries
from .store import SliceId

SCHEMA_VERSION = 1

JSON_FORMAT = "json"
GRAPHML_FORMAT = "graphml"
DOT_FORMAT = "dot"

# Color names for cluster palettes; index 0 is reserved for the residual lineage.
RESIDUAL_COLOR_INDEX = 0
PALETTE_COLORS = (
    "darkblue", "tomato", "gold", "mediumseagreen", "orchid", "steelblue",
    "sienna", "turquoise", "salmon", "olivedrab", "slateblue", "palevioletred",
)


class ExportError(ValueError):
    pass


@dataclass(frozen=True)
class ExportStyle:
    """Presentation rules: substitution edges take color precedence, lower
    similarity renders darker, and lineage colors are pinned per run."""

    weight_shading: bool = False
    cluster_palette: dict[str, int] = field(default_factory=dict)


def make_palette(result: AlignmentResult) -> dict[str, int]:
    """Injective lineage -> color index map, stable for the whole run; residual pinned."""
    palette = {RESIDUAL_ID: RESIDUAL_COLOR_INDEX}
    index = 1
    for lin in result.lineages:
        if lin.residual or lin.lineage_id in palette:
            continue
        palette[lin.lineage_id] = index
        index += 1
    return palette


def _dumps(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Word graphs


def graph_to_dict(graph: WordGraph) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "word_graph",
        "target": graph.target,
        "slice": {"ordinal": graph.slice.ordinal, "label": graph.slice.label},
        "config": {
            "depth": graph.config.depth,
            "k_dist": list(graph.config.k_dist),
            "k_sub": list(graph.config.k_sub),
        },
        "nodes": [
            {"lemma": n.lemma, "layer": n.layer, "provenance": dict(sorted(n.provenance.items()))}
            for n in sorted(graph.nodes.values(), key=lambda n: n.lemma)
        ],
        "edges": [
            {"a": e.a, "b": e.b, "relations": sorted(e.relations), "weight": e.weight}
            for _, e in sorted(graph.edges.items())
        ],
    }


def graph_from_dict(data: dict) -> WordGraph:
    try:
        config = GraphConfig(
            depth=data["config"]["depth"],
            k_dist=tuple(data["config"]["k_dist"]),
            k_sub=tuple(data["config"]["k_sub"]),
        )
        slice_id = SliceId(ordinal=data["slice"]["ordinal"], label=data["slice"]["label"])
        graph = WordGraph(target=data["target"], slice=slice_id, config=config)
        for i, nd in enumerate(data["nodes"]):
            lemma = nd["lemma"]
            if lemma in graph.nodes:
                raise ExportError(f"nodes[{i}]: duplicate node {lemma!r}")
            graph.nodes[lemma] = GraphNode(lemma=lemma, layer=nd["layer"], provenance=dict(nd["provenance"]))
        for i, ed in enumerate(data["edges"]):
            a, b = ed["a"], ed["b"]
            if a not in graph.nodes or b not in graph.nodes:
                raise ExportError(f"edges[{i}]: edge ({a!r}, {b!r}) references an undeclared node")
            graph.edges[edge_key(a, b)] = GraphEdge(
                a=a, b=b, relations=set(ed["relations"]), weight=ed["weight"]
            )
    except (KeyError, TypeError) as exc:
        raise ExportError(f"malformed graph document: {exc}") from exc
    graph.check_invariants()
    return graph


def _edge_color(edge: GraphEdge, style: ExportStyle, bounds: tuple[float, float] | None) -> str:
    if style.weight_shading and edge.weight is not None and bounds is not None:
        lo, hi = bounds
        frac = 1.0 if hi == lo else (edge.weight - lo) / (hi - lo)
        # darker = lower similarity
        return f"gray{20 + round(60 * frac)}"
    return "gold" if SUBSTITUTION in edge.relations else "blue"


def _weight_bounds(edges) -> tuple[float, float] | None:
    weights = [e.weight for e in edges if e.weight is not None]
    if not weights:
        return None
    return min(weights), max(weights)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _graph_to_dot(graph: WordGraph, style: ExportStyle) -> bytes:
    bounds = _weight_bounds(graph.edges.values())
    lines = [f'graph "{_dot_escape(graph.target)}_{_dot_escape(graph.slice.label)}" {{']
    for node in sorted(graph.nodes.values(), key=lambda n: n.lemma):
        lines.append(f'  "{_dot_escape(node.lemma)}" [layer={node.layer}];')
    for _, edge in sorted(graph.edges.items()):
        attrs = [f'relation="{",".join(sorted(edge.relations))}"']
        if edge.weight is not None:
            attrs.append(f"weight={edge.weight:.6f}")
        attrs.append(f'color="{_edge_color(edge, style, bounds)}"')
        lines.append(f'  "{_dot_escape(edge.a)}" -- "{_dot_escape(edge.b)}" [{", ".join(attrs)}];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _graphml_keys(parent: ET.Element, specs: list[tuple[str, str, str, str]]) -> None:
    for key_id, domain, name, type_ in specs:
        ET.SubElement(parent, "key", id=key_id, attrib={"for": domain, "attr.name": name, "attr.type": type_})


def _data(parent: ET.Element, key: str, value: str) -> None:
    el = ET.SubElement(parent, "data", key=key)
    el.text = value


def _graph_to_graphml(graph: WordGraph) -> bytes:
    ET.register_namespace("", _GRAPHML_NS)
    root = ET.Element(f"{{{_GRAPHML_NS}}}graphml")
    _graphml_keys(root, [
        ("d_target", "graph", "target", "string"),
        ("d_ordinal", "graph", "slice_ordinal", "int"),
        ("d_label", "graph", "slice_label", "string"),
        ("d_config", "graph", "config", "string"),
        ("d_layer", "node", "layer", "int"),
        ("d_prov", "node", "provenance", "string"),
        ("d_rel", "edge", "relations", "string"),
        ("d_weight", "edge", "weight", "double"),
    ])
    g = ET.SubElement(root, "graph", id="G", edgedefault="undirected")
    _data(g, "d_target", graph.target)
    _data(g, "d_ordinal", str(graph.slice.ordinal))
    _data(g, "d_label", graph.slice.label)
    _data(g, "d_config", json.dumps({
        "depth": graph.config.depth,
        "k_dist": list(graph.config.k_dist),
        "k_sub": list(graph.config.k_sub),
    }, sort_keys=True))
    for node in sorted(graph.nodes.values(), key=lambda n: n.lemma):
        el = ET.SubElement(g, "node", id=node.lemma)
        _data(el, "d_layer", str(node.layer))
        _data(el, "d_prov", json.dumps(node.provenance, sort_keys=True))
    for _, edge in sorted(graph.edges.items()):
        el = ET.SubElement(g, "edge", source=edge.a, target=edge.b)
        _data(el, "d_rel", ",".join(sorted(edge.relations)))
        if edge.weight is not None:
            _data(el, "d_weight", repr(edge.weight))
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def _graphml_graph_element(data: bytes) -> tuple[ET.Element, dict[str, str]]:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise ExportError(f"malformed GraphML: {exc}") from exc
    ns = {"g": _GRAPHML_NS}
    graph_el = root.find("g:graph", ns)
    if graph_el is None:
        raise ExportError("GraphML document has no <graph> element")
    return graph_el, ns


def _element_data(el: ET.Element, ns: dict[str, str]) -> dict[str, str]:
    return {d.get("key"): (d.text or "") for d in el.findall("g:data", ns)}


def _graph_from_graphml(data: bytes) -> WordGraph:
    graph_el, ns = _graphml_graph_element(data)
    meta = _element_data(graph_el, ns)
    try:
        cfg = json.loads(meta["d_config"])
        config = GraphConfig(depth=cfg["depth"], k_dist=tuple(cfg["k_dist"]), k_sub=tuple(cfg["k_sub"]))
        slice_id = SliceId(ordinal=int(meta["d_ordinal"]), label=meta["d_label"])
        graph = WordGraph(target=meta["d_target"], slice=slice_id, config=config)
    except KeyError as exc:
        raise ExportError(f"GraphML graph element missing {exc}") from exc
    for el in graph_el.findall("g:node", ns):
        lemma = el.get("id")
        d = _element_data(el, ns)
        graph.nodes[lemma] = GraphNode(lemma=lemma, layer=int(d["d_layer"]), provenance=json.loads(d["d_prov"]))
    for el in graph_el.findall("g:edge", ns):
        a, b = el.get("source"), el.get("target")
        if a not in graph.nodes or b not in graph.nodes:
            raise ExportError(f"edge ({a!r}, {b!r}) references an undeclared node")
        d = _element_data(el, ns)
        weight = float(d["d_weight"]) if "d_weight" in d else None
        graph.edges[edge_key(a, b)] = GraphEdge(
            a=a, b=b, relations=set(d["d_rel"].split(",")), weight=weight
        )
    graph.check_invariants()
    return graph


def export_graph(graph: WordGraph, style: ExportStyle | None = None, format: str = JSON_FORMAT) -> bytes:
    style = style or ExportStyle()
    if format == JSON_FORMAT:
        return _dumps(graph_to_dict(graph))
    if format == GRAPHML_FORMAT:
        return _graph_to_graphml(graph)
    if format == DOT_FORMAT:
        return _graph_to_dot(graph, style)
    raise ExportError(f"unknown format {format!r}")


def import_graph(data: bytes, format: str = JSON_FORMAT) -> WordGraph:
    if format == JSON_FORMAT:
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ExportError(f"malformed JSON: {exc}") from exc
        return graph_from_dict(obj)
    if format == GRAPHML_FORMAT:
        return _graph_from_graphml(data)
    raise ExportError(f"unknown or non-importable format {format!r}")


# ---------------------------------------------------------------------------
# Cluster views


@dataclass(frozen=True)
class ClusterNode:
    lemma: str
    lineage: str | None  # None for the target word
    color: int | None


@dataclass(frozen=True)
class ClusterEdge:
    a: str
    b: str
    relations: tuple[str, ...]
    weight: float | None
    removed: bool  # True for edges formerly incident to the target


@dataclass(frozen=True)
class ClusterView:
    """A slice's peripheral communities colored by lineage, with the grayed
    center-incident edges retained for display."""

    target: str
    slice: SliceId
    nodes: tuple[ClusterNode, ...]
    edges: tuple[ClusterEdge, ...]


def build_cluster_view(graph: WordGraph, result: AlignmentResult, slice_id: SliceId,
                       style: ExportStyle | None = None) -> ClusterView:
    if graph.slice != slice_id:
        raise ExportError(f"graph is for slice {graph.slice.label!r}, requested {slice_id.label!r}")
    if slice_id not in result.slices():
        raise ExportError(f"unknown slice {slice_id.label!r} in alignment result")
    palette = (style.cluster_palette if style and style.cluster_palette else make_palette(result))
    member_lineage: dict[str, str] = {}
    for lin in result.lineages:
        for lemma in lin.occurrences.get(slice_id, ()):
            member_lineage[lemma] = lin.lineage_id
    nodes = []
    for node in sorted(graph.nodes.values(), key=lambda n: n.lemma):
        if node.lemma == graph.target:
            nodes.append(ClusterNode(lemma=node.lemma, lineage=None, color=None))
        else:
            lid = member_lineage.get(node.lemma)
            nodes.append(ClusterNode(lemma=node.lemma, lineage=lid,
                                     color=palette.get(lid) if lid is not None else None))
    edges = []
    for _, edge in sorted(graph.edges.items()):
        removed = graph.target in (edge.a, edge.b)
        edges.append(ClusterEdge(a=edge.a, b=edge.b, relations=tuple(sorted(edge.relations)),
                                 weight=edge.weight, removed=removed))
    return ClusterView(target=graph.target, slice=slice_id, nodes=tuple(nodes), edges=tuple(edges))


def cluster_view_to_dict(view: ClusterView) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "cluster_view",
        "target": view.target,
        "slice": {"ordinal": view.slice.ordinal, "label": view.slice.label},
        "nodes": [{"lemma": n.lemma, "lineage": n.lineage, "color": n.color} for n in view.nodes],
        "edges": [
            {"a": e.a, "b": e.b, "relations": list(e.relations), "weight": e.weight, "removed": e.removed}
            for e in view.edges
        ],
    }


def cluster_view_from_dict(data: dict) -> ClusterView:
    try:
        slice_id = SliceId(ordinal=data["slice"]["ordinal"], label=data["slice"]["label"])
        nodes = tuple(ClusterNode(lemma=n["lemma"], lineage=n["lineage"], color=n["color"])
                      for n in data["nodes"])
        declared = {n.lemma for n in nodes}
        edges = []
        for i, e in enumerate(data["edges"]):
            if e["a"] not in declared or e["b"] not in declared:
                raise ExportError(f"edges[{i}]: edge ({e['a']!r}, {e['b']!r}) references an undeclared node")
            edges.append(ClusterEdge(a=e["a"], b=e["b"], relations=tuple(e["relations"]),
                                     weight=e["weight"], removed=e["removed"]))
        return ClusterView(target=data["target"], slice=slice_id, nodes=nodes, edges=tuple(edges))
    except (KeyError, TypeError) as exc:
        raise ExportError(f"malformed cluster document: {exc}") from exc


def _cluster_to_dot(view: ClusterView) -> bytes:
    bounds = _weight_bounds(view.edges)
    lines = [f'graph "{_dot_escape(view.target)}_{_dot_escape(view.slice.label)}_clusters" {{']
    for node in view.nodes:
        attrs = []
        if node.lineage is not None:
            attrs.append(f'lineage="{_dot_escape(node.lineage)}"')
        if node.color is not None:
            attrs.append(f'color="{PALETTE_COLORS[node.color % len(PALETTE_COLORS)]}"')
        lines.append(f'  "{_dot_escape(node.lemma)}" [{", ".join(attrs)}];' if attrs
                     else f'  "{_dot_escape(node.lemma)}";')
    for edge in view.edges:
        attrs = [f'relation="{",".join(edge.relations)}"']
        if edge.weight is not None:
            attrs.append(f"weight={edge.weight:.6f}")
        attrs.append(f"removed={'true' if edge.removed else 'false'}")
        attrs.append('color="gray"' if edge.removed else 'color="black"')
        lines.append(f'  "{_dot_escape(edge.a)}" -- "{_dot_escape(edge.b)}" [{", ".join(attrs)}];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _cluster_to_graphml(view: ClusterView) -> bytes:
    ET.register_namespace("", _GRAPHML_NS)
    root = ET.Element(f"{{{_GRAPHML_NS}}}graphml")
    _graphml_keys(root, [
        ("d_target", "graph", "target", "string"),
        ("d_ordinal", "graph", "slice_ordinal", "int"),
        ("d_label", "graph", "slice_label", "string"),
        ("d_lineage", "node", "lineage", "string"),
        ("d_color", "node", "color", "int"),
        ("d_rel", "edge", "relations", "string"),
        ("d_weight", "edge", "weight", "double"),
        ("d_removed", "edge", "removed", "boolean"),
    ])
    g = ET.SubElement(root, "graph", id="G", edgedefault="undirected")
    _data(g, "d_target", view.target)
    _data(g, "d_ordinal", str(view.slice.ordinal))
    _data(g, "d_label", view.slice.label)
    for node in view.nodes:
        el = ET.SubElement(g, "node", id=node.lemma)
        if node.lineage is not None:
            _data(el, "d_lineage", node.lineage)
        if node.color is not None:
            _data(el, "d_color", str(node.color))
    for edge in view.edges:
        el = ET.SubElement(g, "edge", source=edge.a, target=edge.b)
        _data(el, "d_rel", ",".join(edge.relations))
        if edge.weight is not None:
            _data(el, "d_weight", repr(edge.weight))
        _data(el, "d_removed", "true" if edge.removed else "false")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def _cluster_from_graphml(data: bytes) -> ClusterView:
    graph_el, ns = _graphml_graph_element(data)
    meta = _element_data(graph_el, ns)
    slice_id = SliceId(ordinal=int(meta["d_ordinal"]), label=meta["d_label"])
    nodes = []
    for el in graph_el.findall("g:node", ns):
        d = _element_data(el, ns)
        nodes.append(ClusterNode(
            lemma=el.get("id"),
            lineage=d.get("d_lineage"),
            color=int(d["d_color"]) if "d_color" in d else None,
        ))
    declared = {n.lemma for n in nodes}
    edges = []
    for el in graph_el.findall("g:edge", ns):
        a, b = el.get("source"), el.get("target")
        if a not in declared or b not in declared:
            raise ExportError(f"edge ({a!r}, {b!r}) references an undeclared node")
        d = _element_data(el, ns)
        edges.append(ClusterEdge(
            a=a, b=b, relations=tuple(d["d_rel"].split(",")),
            weight=float(d["d_weight"]) if "d_weight" in d else None,
            removed=d["d_removed"] == "true",
        ))
    return ClusterView(target=meta["d_target"], slice=slice_id, nodes=tuple(nodes), edges=tuple(edges))


def export_clusters(graph: WordGraph, result: AlignmentResult, slice_id: SliceId,
                    style: ExportStyle | None = None, format: str = JSON_FORMAT) -> bytes:
    view = build_cluster_view(graph, result, slice_id, style)
    if format == JSON_FORMAT:
        return _dumps(cluster_view_to_dict(view))
    if format == GRAPHML_FORMAT:
        return _cluster_to_graphml(view)
    if format == DOT_FORMAT:
        return _cluster_to_dot(view)
    raise ExportError(f"unknown format {format!r}")


def import_clusters(data: bytes, format: str = JSON_FORMAT) -> ClusterView:
    if format == JSON_FORMAT:
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ExportError(f"malformed JSON: {exc}") from exc
        return cluster_view_from_dict(obj)
    if format == GRAPHML_FORMAT:
        return _cluster_from_graphml(data)
    raise ExportError(f"unknown or non-importable format {format!r}")


# ---------------------------------------------------------------------------
# Communities and alignment results (pipeline artifacts)


def communities_json(communities: list, slice_id: SliceId, target: str) -> bytes:
    return _dumps({
        "schema_version": SCHEMA_VERSION,
        "kind": "communities",
        "target": target,
        "slice": {"ordinal": slice_id.ordinal, "label": slice_id.label},
        "communities": [
            {"id": c.id, "members": sorted(c.members)} for c in communities
        ],
    })


def communities_from_json(data: bytes):
    from .clustering import SenseCommunity  # local import to avoid cycle

    try:
        obj = json.loads(data)
        slice_id = SliceId(ordinal=obj["slice"]["ordinal"], label=obj["slice"]["label"])
        comms = [
            SenseCommunity(id=c["id"], slice=slice_id, members=frozenset(c["members"]))
            for c in obj["communities"]
        ]
        return obj["target"], slice_id, comms
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ExportError(f"malformed communities document: {exc}") from exc


def alignment_result_json(result: AlignmentResult) -> bytes:
    slices = result.slices()
    return _dumps({
        "schema_version": SCHEMA_VERSION,
        "kind": "alignment_result",
        "target": result.target,
        "strategy": result.strategy.value,
        "slices": [{"ordinal": s.ordinal, "label": s.label} for s in slices],
        "lineages": [
            {
                "lineage_id": lin.lineage_id,
                "residual": lin.residual,
                "occurrences": {s.label: sorted(members) for s, members in sorted(lin.occurrences.items())},
                "events": [{"slice": e.slice.label, "kind": e.kind, "detail": e.detail} for e in lin.events],
            }
            for lin in result.lineages
        ],
        "assignment": [
            {"slice": s.label, "community": cid, "lineage": lid}
            for (s, cid), lid in sorted(result.assignment.items())
        ],
    })


def alignment_result_from_json(data: bytes) -> AlignmentResult:
    from .alignment import AlignmentStrategy, LineageEvent, SenseLineage  # avoid cycle at import time

    try:
        obj = json.loads(data)
        by_label = {s["label"]: SliceId(ordinal=s["ordinal"], label=s["label"]) for s in obj["slices"]}
        result = AlignmentResult(target=obj["target"], strategy=AlignmentStrategy(obj["strategy"]))
        for ld in obj["lineages"]:
            lin = SenseLineage(lineage_id=ld["lineage_id"], residual=ld["residual"])
            for label, members in ld["occurrences"].items():
                lin.occurrences[by_label[label]] = frozenset(members)
            for ev in ld["events"]:
                lin.events.append(LineageEvent(slice=by_label[ev["slice"]], kind=ev["kind"], detail=ev["detail"]))
            result.lineages.append(lin)
        for ad in obj["assignment"]:
            result.assignment[(by_label[ad["slice"]], ad["community"])] = ad["lineage"]
        return result
    except (KeyError, TypeError, ValueError) as exc:
        raise ExportError(f"malformed alignment document: {exc}") from exc


# ---------------------------------------------------------------------------
# Tabular exports


def lineage_report_csv(report: LineageReport) -> bytes:
    header = "lineage_id,first_slice,last_slice," + ",".join(s.label for s in report.slices)
    lines = [header]
    for row in report.rows:
        first = row.first_slice.label if row.first_slice else ""
        last = row.last_slice.label if row.last_slice else ""
        lines.append(f"{row.lineage_id},{first},{last}," + ",".join(str(n) for n in row.sizes))
    return ("\n".join(lines) + "\n").encode("utf-8")


def lineage_report_json(report: LineageReport) -> bytes:
    return _dumps({
        "schema_version": SCHEMA_VERSION,
        "kind": "lineage_report",
        "slices": [{"ordinal": s.ordinal, "label": s.label} for s in report.slices],
        "rows": [
            {
                "lineage_id": r.lineage_id,
                "first_slice": r.first_slice.label if r.first_slice else None,
                "last_slice": r.last_slice.label if r.last_slice else None,
                "sizes": list(r.sizes),
                "events": [
                    {"slice": e.slice.label, "kind": e.kind, "detail": e.detail} for e in r.events
                ],
            }
            for r in report.rows
        ],
    })


def distribution_rows(result: AlignmentResult) -> list[tuple[SliceId, str, int, float]]:
    """(slice, lineage_id, size, mass) rows computed directly from the result."""
    from .metrics import distribution_series  # local import to avoid cycle

    rows = []
    series = distribution_series(result)
    lineage_ids = sorted({lid for dist in series for lid in dist.mass})
    sizes = {
        (s, lin.lineage_id): len(members)
        for lin in result.lineages
        for s, members in lin.occurrences.items()
    }
    for dist in series:
        for lid in lineage_ids:
            rows.append((dist.slice, lid, sizes.get((dist.slice, lid), 0), dist.mass.get(lid, 0.0)))
    return rows


def distribution_rows_csv(result: AlignmentResult) -> bytes:
    lines = ["slice,lineage_id,size,mass"]
    for slice_id, lid, size, mass in distribution_rows(result):
        lines.append(f"{slice_id.label},{lid},{size},{mass:.9f}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def distribution_rows_json(result: AlignmentResult) -> bytes:
    return _dumps({
        "schema_version": SCHEMA_VERSION,
        "kind": "sense_distributions",
        "target": result.target,
        "strategy": result.strategy.value,
        "rows": [
            {"slice": s.label, "lineage_id": lid, "size": size, "mass": mass}
            for s, lid, size, mass in distribution_rows(result)
        ],
    })


def series_csv(series: GraphTimeSeries) -> bytes:
    lines = ["slice,nodes,edges"]
    for slice_id, nodes, edges in series.points:
        lines.append(f"{slice_id.label},{nodes},{edges}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def series_json(series: GraphTimeSeries) -> bytes:
    return _dumps({
        "schema_version": SCHEMA_VERSION,
        "kind": "graph_time_series",
        "target": series.target,
        "peak_slice": series.peak_slice.label if series.peak_slice else None,
        "points": [
            {"slice": s.label, "nodes": n, "edges": e} for s, n, e in series.points
        ],
    })
