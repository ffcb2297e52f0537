"""Per-slice neighbor evidence tables: loading, validation, and indexed lookup.

The store is the single source of evidence for graph construction. It is
built once from line-delimited JSON files and immutable afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


class NeighborFileError(ValueError):
    """A neighbor/similarity/counts file violates its schema or an invariant."""

    def __init__(self, message: str, path: str | Path | None = None, line: int | None = None):
        self.path = str(path) if path is not None else None
        self.line = line
        prefix = ""
        if self.path is not None:
            prefix = self.path
            if line is not None:
                prefix += f":{line}"
            prefix += ": "
        super().__init__(prefix + message)


@dataclass(frozen=True, order=True)
class SliceId:
    """Position of a time slice in the chronology, plus its display label."""

    ordinal: int
    label: str


def check_lemma(text: str) -> str:
    """Validate the lemma contract: non-empty, lowercase, no whitespace."""
    if not text:
        raise ValueError("lemma must be non-empty")
    if text != text.lower():
        raise ValueError(f"lemma {text!r} must be lowercase")
    if any(c.isspace() for c in text):
        raise ValueError(f"lemma {text!r} must not contain whitespace")
    return text


def canonical_dist(pairs: list[tuple[str, float]]) -> list[tuple[str, float]]:
    """Canonical order for distributional neighbors: cosine desc, lemma asc."""
    return sorted(pairs, key=lambda p: (-p[1], p[0]))


def canonical_sub(pairs: list[tuple[str, int]]) -> list[tuple[str, int]]:
    """Canonical order for substitution neighbors: frequency desc, lemma asc."""
    return sorted(pairs, key=lambda p: (-p[1], p[0]))


@dataclass(frozen=True)
class NeighborRecord:
    """Ranked neighbor evidence for one (slice, word)."""

    slice: SliceId
    word: str
    dist: tuple[tuple[str, float], ...]
    sub: tuple[tuple[str, int], ...]

    def validate(self) -> None:
        check_lemma(self.word)
        seen: set[str] = set()
        for lemma, cos in self.dist:
            check_lemma(lemma)
            if lemma == self.word:
                raise ValueError(f"word {self.word!r} lists itself as a distributional neighbor")
            if lemma in seen:
                raise ValueError(f"duplicate distributional neighbor {lemma!r} for {self.word!r}")
            seen.add(lemma)
            if not -1.0 <= cos <= 1.0:
                raise ValueError(f"cosine {cos} for neighbor {lemma!r} outside [-1, 1]")
        if list(self.dist) != canonical_dist(list(self.dist)):
            raise ValueError(f"distributional neighbors of {self.word!r} not in canonical order")
        seen = set()
        for lemma, freq in self.sub:
            check_lemma(lemma)
            if lemma == self.word:
                raise ValueError(f"word {self.word!r} lists itself as a substitution neighbor")
            if lemma in seen:
                raise ValueError(f"duplicate substitution neighbor {lemma!r} for {self.word!r}")
            seen.add(lemma)
            if not isinstance(freq, int) or freq < 1:
                raise ValueError(f"substitution frequency {freq!r} for {lemma!r} must be an integer >= 1")
        if list(self.sub) != canonical_sub(list(self.sub)):
            raise ValueError(f"substitution neighbors of {self.word!r} not in canonical order")


@dataclass(frozen=True)
class PairSimilarity:
    """Pairwise contextual cosine similarities for one slice, keyed order-insensitively."""

    slice: SliceId
    pairs: dict[tuple[str, str], float]

    @staticmethod
    def key(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a <= b else (b, a)

    def get(self, a: str, b: str) -> float | None:
        return self.pairs.get(self.key(a, b))


@dataclass(frozen=True)
class SliceCounts:
    """Token totals and per-lemma counts for one slice."""

    slice: SliceId
    token_total: int
    counts: dict[str, int]

    def validate(self) -> None:
        if self.token_total < 0:
            raise ValueError("token_total must be >= 0")
        if self.token_total == 0 and self.counts:
            raise ValueError("token_total is 0 but counts are non-empty")
        for lemma, n in self.counts.items():
            check_lemma(lemma)
            if n < 0 or n > self.token_total:
                raise ValueError(f"count {n} for {lemma!r} outside [0, token_total]")


class NeighborStore:
    """Indexed, immutable-after-load collection of NeighborRecords."""

    def __init__(self) -> None:
        self._records: dict[tuple[SliceId, str], NeighborRecord] = {}

    def __len__(self) -> int:
        return len(self._records)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NeighborStore):
            return NotImplemented
        return self._records == other._records

    def add(self, record: NeighborRecord) -> None:
        record.validate()
        key = (record.slice, record.word)
        if key in self._records:
            raise ValueError(f"duplicate record for word {record.word!r} in slice {record.slice.label!r}")
        self._records[key] = record

    def record(self, slice_id: SliceId, word: str) -> NeighborRecord | None:
        return self._records.get((slice_id, word))

    def words(self, slice_id: SliceId) -> list[str]:
        return sorted(w for (s, w) in self._records if s == slice_id)

    def lookup(self, slice_id: SliceId, word: str, k_dist: int, k_sub: int) -> tuple[list[str], list[str]]:
        """Top-k neighbor lemmas for a word; absence yields two empty lists."""
        if k_dist < 0 or k_sub < 0:
            raise ValueError("k_dist and k_sub must be >= 0")
        rec = self._records.get((slice_id, word))
        if rec is None:
            return [], []
        return [l for l, _ in rec.dist[:k_dist]], [l for l, _ in rec.sub[:k_sub]]

    def load_file(self, path: str | Path, slice_id: SliceId) -> int:
        """Load one line-delimited JSON neighbor file for a slice; returns record count."""
        loaded = 0
        for lineno, obj in _iter_jsonl(path):
            try:
                record = _parse_neighbor_line(obj, slice_id)
                self.add(record)
            except (ValueError, KeyError, TypeError) as exc:
                raise NeighborFileError(str(exc), path=path, line=lineno) from exc
            loaded += 1
        return loaded


def _iter_jsonl(path: str | Path):
    p = Path(path)
    if not p.exists():
        raise NeighborFileError("file not found", path=path)
    with p.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise NeighborFileError(f"malformed JSON: {exc}", path=path, line=lineno) from exc
            if not isinstance(obj, dict):
                raise NeighborFileError("line is not a JSON object", path=path, line=lineno)
            yield lineno, obj


def _parse_neighbor_line(obj: dict, slice_id: SliceId) -> NeighborRecord:
    label = obj["slice"]
    if label != slice_id.label:
        raise ValueError(f"record slice {label!r} does not match expected slice {slice_id.label!r}")
    word = obj["word"]
    dist = tuple((str(l), float(c)) for l, c in obj.get("dist", []))
    sub_raw = obj.get("sub", [])
    sub = []
    for l, f in sub_raw:
        if isinstance(f, bool) or not isinstance(f, int):
            raise ValueError(f"substitution frequency {f!r} for {l!r} must be an integer >= 1")
        sub.append((str(l), f))
    return NeighborRecord(slice=slice_id, word=str(word), dist=dist, sub=tuple(sub))


def load_neighbors(path: str | Path, slice_id: SliceId) -> NeighborStore:
    """Load one neighbor file into a fresh store."""
    store = NeighborStore()
    store.load_file(path, slice_id)
    return store


def load_similarities(path: str | Path, slice_id: SliceId) -> PairSimilarity:
    """Load a pair-similarity file: one {"slice","a","b","cos"} object per line."""
    pairs: dict[tuple[str, str], float] = {}
    for lineno, obj in _iter_jsonl(path):
        try:
            if obj["slice"] != slice_id.label:
                raise ValueError(f"pair slice {obj['slice']!r} does not match {slice_id.label!r}")
            a, b = check_lemma(str(obj["a"])), check_lemma(str(obj["b"]))
            if a == b:
                raise ValueError(f"self-pair ({a!r}, {b!r}) is not allowed")
            cos = float(obj["cos"])
            if not -1.0 <= cos <= 1.0:
                raise ValueError(f"cosine {cos} outside [-1, 1]")
            pairs[PairSimilarity.key(a, b)] = cos
        except (ValueError, KeyError, TypeError) as exc:
            raise NeighborFileError(str(exc), path=path, line=lineno) from exc
    return PairSimilarity(slice=slice_id, pairs=pairs)


def load_counts(path: str | Path, slices: list[SliceId]) -> list[SliceCounts]:
    """Load a counts file; returns SliceCounts ordered like `slices` (missing slices get zeros)."""
    by_label: dict[str, SliceCounts] = {}
    labels = {s.label: s for s in slices}
    for lineno, obj in _iter_jsonl(path):
        try:
            label = str(obj["slice"])
            if label not in labels:
                raise ValueError(f"unknown slice label {label!r}")
            if label in by_label:
                raise ValueError(f"duplicate counts for slice {label!r}")
            counts = {check_lemma(str(k)): int(v) for k, v in obj.get("counts", {}).items()}
            sc = SliceCounts(slice=labels[label], token_total=int(obj["total"]), counts=counts)
            sc.validate()
            by_label[label] = sc
        except (ValueError, KeyError, TypeError) as exc:
            raise NeighborFileError(str(exc), path=path, line=lineno) from exc
    return [by_label.get(s.label, SliceCounts(slice=s, token_total=0, counts={})) for s in slices]


def relative_frequency(counts: list[SliceCounts], word: str) -> list[tuple[SliceId, float]]:
    """Per-slice relative frequency of a word; 0 when absent or the slice is empty."""
    out = []
    for sc in counts:
        if sc.token_total == 0:
            out.append((sc.slice, 0.0))
        else:
            out.append((sc.slice, sc.counts.get(word, 0) / sc.token_total))
    return out
