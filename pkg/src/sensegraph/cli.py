"""Command-line orchestration of the full pipeline.

All knobs live in a flat INI config; flags and SENSEGRAPH_* environment
variables override it. Every subcommand (re)writes a machine-readable run
manifest, and all artifact writes are atomic (write-then-rename).
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import alignment, clustering, exports, metrics, synth
from .alignment import AlignmentStrategy
from .graph import GraphConfig, annotate_weights, build_graph, graph_stats
from .store import NeighborFileError, NeighborStore, SliceId, load_counts, load_similarities

EXIT_OK = 0
EXIT_CONFIG = 3
EXIT_MISSING_INPUT = 4
EXIT_INVALID_DATA = 5

ENV_PREFIX = "SENSEGRAPH_"

STRATEGY_FLAGS = {
    "previous": [AlignmentStrategy.PREVIOUS_SLICE],
    "history": [AlignmentStrategy.ALL_HISTORY],
    "both": [AlignmentStrategy.PREVIOUS_SLICE, AlignmentStrategy.ALL_HISTORY],
}

STRATEGY_TAGS = {
    AlignmentStrategy.PREVIOUS_SLICE: "previous",
    AlignmentStrategy.ALL_HISTORY: "history",
}


class ConfigError(ValueError):
    pass


class MissingInputError(ValueError):
    pass


@dataclass
class PipelineConfig:
    slices: list[SliceId]
    targets: list[str]
    graph: GraphConfig
    strategies: list[AlignmentStrategy]
    persistence_threshold: int
    neighbors_template: str
    similarities_template: str | None
    counts_path: str | None
    out_dir: Path
    seed: int
    formats: list[str] = field(default_factory=lambda: [exports.JSON_FORMAT])

    def neighbors_path(self, slice_id: SliceId) -> Path:
        return Path(self.neighbors_template.format(slice=slice_id.label))

    def similarities_path(self, slice_id: SliceId) -> Path | None:
        if not self.similarities_template:
            return None
        return Path(self.similarities_template.format(slice=slice_id.label))


def _env(name: str) -> str | None:
    return os.environ.get(ENV_PREFIX + name)


def _csv_ints(raw: str) -> tuple[int, ...]:
    return tuple(int(x.strip()) for x in raw.split(",") if x.strip())


def load_pipeline_config(path: str | Path, args: argparse.Namespace) -> PipelineConfig:
    path = Path(path)
    if not path.exists():
        raise MissingInputError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
        base = path.parent

        labels = [l.strip() for l in parser.get("slices", "labels").split(",") if l.strip()]
        if len(set(labels)) != len(labels):
            raise ConfigError("slice labels must be unique")
        slices = [SliceId(ordinal=i, label=l) for i, l in enumerate(labels)]

        targets_raw = getattr(args, "targets", None) or _env("TARGETS") or parser.get("run", "targets")
        targets = [t.strip() for t in targets_raw.split(",") if t.strip()]
        if not targets:
            raise ConfigError("no targets configured")

        strategy_raw = getattr(args, "strategy", None) or _env("STRATEGY") or parser.get("run", "strategy", fallback="previous")
        if strategy_raw not in STRATEGY_FLAGS:
            raise ConfigError(f"unknown strategy {strategy_raw!r} (expected previous|history|both)")

        graph = GraphConfig(
            depth=parser.getint("graph", "depth", fallback=2),
            k_dist=_csv_ints(parser.get("graph", "k_dist", fallback="3,1")),
            k_sub=_csv_ints(parser.get("graph", "k_sub", fallback="6,2")),
        )
        graph.validate()

        out_raw = getattr(args, "out", None) or _env("OUT") or parser.get("run", "out", fallback="out")
        out_dir = Path(out_raw)
        if not out_dir.is_absolute():
            out_dir = base / out_dir

        seed_raw = getattr(args, "seed", None)
        if seed_raw is None:
            seed_raw = _env("SEED") or parser.get("run", "seed", fallback="0")
        seed = int(seed_raw)

        fmt_raw = getattr(args, "format", None) or _env("FORMAT") or parser.get("run", "format", fallback="json")
        formats = [f.strip() for f in fmt_raw.split(",") if f.strip()]
        known = {exports.JSON_FORMAT, exports.GRAPHML_FORMAT, exports.DOT_FORMAT, "csv"}
        unknown = set(formats) - known
        if unknown:
            raise ConfigError(f"unknown export formats: {sorted(unknown)}")
        if exports.JSON_FORMAT not in formats:
            formats.insert(0, exports.JSON_FORMAT)

        def input_path(raw: str | None) -> str | None:
            if not raw:
                return None
            p = Path(raw)
            return raw if p.is_absolute() else str(base / raw)

        neighbors = input_path(parser.get("inputs", "neighbors"))
        similarities = input_path(parser.get("inputs", "similarities", fallback=None))
        counts = input_path(parser.get("inputs", "counts", fallback=None))

        return PipelineConfig(
            slices=slices,
            targets=targets,
            graph=graph,
            strategies=STRATEGY_FLAGS[strategy_raw],
            persistence_threshold=parser.getint("run", "persistence_threshold", fallback=2),
            neighbors_template=neighbors,
            similarities_template=similarities,
            counts_path=counts,
            out_dir=out_dir,
            seed=seed,
            formats=formats,
        )
    except (configparser.Error, ValueError) as exc:
        if isinstance(exc, (ConfigError, MissingInputError)):
            raise
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Artifact plumbing


def atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class Manifest:
    """Deterministic record of one run: config hash, input digests, artifacts."""

    def __init__(self, out_dir: Path, config_path: Path | None):
        self.out_dir = out_dir
        self.data = {
            "schema_version": exports.SCHEMA_VERSION,
            "config_sha256": _sha256(config_path.read_bytes()) if config_path else None,
            "inputs": {},
            "artifacts": {},
            "graphs": {},
        }

    def add_input(self, path: Path) -> None:
        self.data["inputs"][str(path)] = _sha256(path.read_bytes())

    def add_artifact(self, relpath: str, payload: bytes) -> None:
        atomic_write(self.out_dir / relpath, payload)
        self.data["artifacts"][relpath] = _sha256(payload)

    def note_graph(self, target: str, slice_id: SliceId, nodes: int, edges: int) -> None:
        self.data["graphs"].setdefault(target, {})[slice_id.label] = {"nodes": nodes, "edges": edges}

    def write(self) -> None:
        payload = (json.dumps(self.data, sort_keys=True, indent=2) + "\n").encode("utf-8")
        atomic_write(self.out_dir / "manifest.json", payload)


# ---------------------------------------------------------------------------
# Pipeline stages


def load_store(cfg: PipelineConfig, manifest: Manifest | None = None) -> NeighborStore:
    store = NeighborStore()
    for slice_id in cfg.slices:
        path = cfg.neighbors_path(slice_id)
        if not path.exists():
            raise MissingInputError(f"neighbor file not found: {path}")
        store.load_file(path, slice_id)
        if manifest:
            manifest.add_input(path)
    return store


def stage_build(cfg: PipelineConfig, store: NeighborStore, manifest: Manifest) -> dict[str, dict[str, bytes]]:
    """Build and export graphs; returns {target: {label: json payload}}."""
    payloads: dict[str, dict[str, bytes]] = {}
    for target in cfg.targets:
        payloads[target] = {}
        for slice_id in cfg.slices:
            graph = build_graph(store, target, slice_id, cfg.graph)
            if graph.is_empty:
                print(f"warning: target {target!r} has no neighbors in slice {slice_id.label}", file=sys.stderr)
            sims_path = cfg.similarities_path(slice_id)
            if sims_path is not None and sims_path.exists():
                graph = annotate_weights(graph, load_similarities(sims_path, slice_id))
                manifest.add_input(sims_path)
            stats = graph_stats(graph)
            manifest.note_graph(target, slice_id, stats.nodes, stats.edges)
            for fmt in cfg.formats:
                if fmt == "csv":
                    continue
                payload = exports.export_graph(graph, format=fmt)
                relpath = f"graphs/{target}/{slice_id.label}.{fmt}"
                manifest.add_artifact(relpath, payload)
                if fmt == exports.JSON_FORMAT:
                    payloads[target][slice_id.label] = payload
    return payloads


def _read_graphs(cfg: PipelineConfig, target: str):
    graphs = []
    for slice_id in cfg.slices:
        path = cfg.out_dir / f"graphs/{target}/{slice_id.label}.json"
        if not path.exists():
            raise MissingInputError(f"graph artifact not found (run `build` first): {path}")
        graphs.append(exports.import_graph(path.read_bytes(), exports.JSON_FORMAT))
    return graphs


def stage_cluster(cfg: PipelineConfig, manifest: Manifest) -> None:
    for target in cfg.targets:
        for graph in _read_graphs(cfg, target):
            comms = clustering.components(clustering.peripheral(graph))
            payload = exports.communities_json(comms, graph.slice, target)
            manifest.add_artifact(f"clusters/{target}/{graph.slice.label}.json", payload)


def _read_communities(cfg: PipelineConfig, target: str):
    out = {}
    for slice_id in cfg.slices:
        path = cfg.out_dir / f"clusters/{target}/{slice_id.label}.json"
        if not path.exists():
            raise MissingInputError(f"cluster artifact not found (run `cluster` first): {path}")
        _, parsed_slice, comms = exports.communities_from_json(path.read_bytes())
        out[parsed_slice] = comms
    return out


def stage_align(cfg: PipelineConfig, manifest: Manifest) -> None:
    for target in cfg.targets:
        communities = _read_communities(cfg, target)
        for strategy in cfg.strategies:
            tag = STRATEGY_TAGS[strategy]
            result = alignment.align(communities, strategy, target)
            refined = alignment.refine(result, cfg.persistence_threshold)
            manifest.add_artifact(f"lineages/{target}.{tag}.json", exports.alignment_result_json(refined))
            report = alignment.lineage_report(refined)
            manifest.add_artifact(f"lineages/{target}.{tag}.csv", exports.lineage_report_csv(report))
            manifest.add_artifact(f"lineages/{target}.{tag}.report.json", exports.lineage_report_json(report))


def _read_alignment(cfg: PipelineConfig, target: str, strategy: AlignmentStrategy):
    path = cfg.out_dir / f"lineages/{target}.{STRATEGY_TAGS[strategy]}.json"
    if not path.exists():
        raise MissingInputError(f"lineage artifact not found (run `align` first): {path}")
    return exports.alignment_result_from_json(path.read_bytes())


def stage_distribute(cfg: PipelineConfig, manifest: Manifest) -> None:
    for target in cfg.targets:
        for strategy in cfg.strategies:
            tag = STRATEGY_TAGS[strategy]
            refined = _read_alignment(cfg, target, strategy)
            manifest.add_artifact(f"distributions/{target}.{tag}.csv", exports.distribution_rows_csv(refined))
            manifest.add_artifact(f"distributions/{target}.{tag}.json", exports.distribution_rows_json(refined))


def stage_timeseries(cfg: PipelineConfig, manifest: Manifest) -> None:
    for target in cfg.targets:
        series = metrics.size_series(_read_graphs(cfg, target))
        manifest.add_artifact(f"series/{target}.csv", exports.series_csv(series))
        manifest.add_artifact(f"series/{target}.json", exports.series_json(series))


def stage_export(cfg: PipelineConfig, manifest: Manifest) -> None:
    """Re-emit presentation formats (cluster views per strategy) from prior artifacts."""
    for target in cfg.targets:
        graphs = {g.slice: g for g in _read_graphs(cfg, target)}
        for strategy in cfg.strategies:
            tag = STRATEGY_TAGS[strategy]
            refined = _read_alignment(cfg, target, strategy)
            style = exports.ExportStyle(cluster_palette=exports.make_palette(refined))
            for slice_id in refined.slices():
                graph = graphs.get(slice_id)
                if graph is None:
                    continue
                for fmt in cfg.formats:
                    if fmt == "csv":
                        continue
                    payload = exports.export_clusters(graph, refined, slice_id, style, fmt)
                    manifest.add_artifact(f"exports/{target}.{tag}/{slice_id.label}.{fmt}", payload)


def cmd_validate(cfg: PipelineConfig) -> int:
    store = load_store(cfg)
    n_sims = 0
    for slice_id in cfg.slices:
        sims_path = cfg.similarities_path(slice_id)
        if sims_path is not None:
            if not sims_path.exists():
                raise MissingInputError(f"similarity file not found: {sims_path}")
            n_sims += len(load_similarities(sims_path, slice_id).pairs)
    if cfg.counts_path:
        if not Path(cfg.counts_path).exists():
            raise MissingInputError(f"counts file not found: {cfg.counts_path}")
        load_counts(cfg.counts_path, cfg.slices)
    print(f"ok: {len(store)} neighbor records, {n_sims} similarity pairs, {len(cfg.slices)} slices")
    return EXIT_OK


def run_pipeline(cfg: PipelineConfig, subcommand: str, config_path: Path | None) -> int:
    manifest = Manifest(cfg.out_dir, config_path)
    if subcommand in ("build", "all"):
        store = load_store(cfg, manifest)
        stage_build(cfg, store, manifest)
    else:
        for slice_id in cfg.slices:
            path = cfg.neighbors_path(slice_id)
            if path.exists():
                manifest.add_input(path)
    if subcommand in ("cluster", "all"):
        stage_cluster(cfg, manifest)
    if subcommand in ("align", "all"):
        stage_align(cfg, manifest)
    if subcommand in ("distribute", "all"):
        stage_distribute(cfg, manifest)
    if subcommand in ("timeseries", "all"):
        stage_timeseries(cfg, manifest)
    if subcommand in ("export", "all"):
        stage_export(cfg, manifest)
    manifest.write()
    return EXIT_OK


# ---------------------------------------------------------------------------
# Scenario files (synth subcommand)


def load_scenario(path: str | Path) -> synth.Scenario:
    path = Path(path)
    if not path.exists():
        raise MissingInputError(f"scenario file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
        blocks = []
        for section in parser.sections():
            if not section.startswith("block."):
                continue
            lo, _, hi = parser.get(section, "active").partition("-")
            blocks.append(synth.SenseBlock(
                name=section[len("block."):],
                members=tuple(m.strip() for m in parser.get(section, "members").split(",") if m.strip()),
                active=(int(lo), int(hi or lo)),
                density=parser.getfloat(section, "density", fallback=1.0),
            ))
        labels_raw = parser.get("scenario", "labels", fallback="")
        scenario = synth.Scenario(
            target=parser.get("scenario", "target"),
            slices=parser.getint("scenario", "slices"),
            blocks=tuple(blocks),
            leakage=parser.getfloat("scenario", "leakage", fallback=0.0),
            seed=parser.getint("scenario", "seed", fallback=0),
            labels=tuple(l.strip() for l in labels_raw.split(",") if l.strip()),
        )
        scenario.validate()
        return scenario
    except (configparser.Error, ValueError) as exc:
        if isinstance(exc, MissingInputError):
            raise
        raise ConfigError(str(exc)) from exc


def cmd_synth(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    out = Path(args.out or _env("OUT") or "synth_out")
    paths = synth.write_scenario(scenario, out)
    for p in paths:
        print(p)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensegraph",
                                     description="Word-centered semantic graphs and sense lineage tracking")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="pipeline config file (INI)")
    common.add_argument("--targets", default=None, help="comma-separated target lemmas (overrides config)")
    common.add_argument("--strategy", default=None, choices=["previous", "history", "both"])
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--format", default=None, help="comma-separated export formats (json,csv,dot,graphml)")
    common.add_argument("--seed", default=None, type=int)
    for name in ("validate", "build", "cluster", "align", "distribute", "timeseries", "export", "all"):
        sub.add_parser(name, parents=[common])
    synth_p = sub.add_parser("synth")
    synth_p.add_argument("--scenario", required=True, help="scenario file (INI)")
    synth_p.add_argument("--out", default=None, help="output directory for generated neighbor files")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.subcommand == "synth":
            return cmd_synth(args)
        config_path = args.config or _env("CONFIG")
        if not config_path:
            raise ConfigError("--config is required (or set SENSEGRAPH_CONFIG)")
        cfg = load_pipeline_config(config_path, args)
        if args.subcommand == "validate":
            return cmd_validate(cfg)
        return run_pipeline(cfg, args.subcommand, Path(config_path))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MissingInputError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except (NeighborFileError, exports.ExportError) as exc:
        print(f"invalid data: {exc}", file=sys.stderr)
        return EXIT_INVALID_DATA


if __name__ == "__main__":
    sys.exit(main())
