/**
 * File emission in the three formats the graph pipeline consumes: neighbor
 * JSONL, pair-similarity JSONL, and a counts file. All output is sorted so a
 * rerun with the same models is byte-identical.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";
import type { ScoredNeighbor } from "./sgns.js";
import type { Substitute } from "./mlm.js";

export interface NeighborRecord {
  word: string;
  dist: ScoredNeighbor[];
  sub: Substitute[];
}

export interface PairRecord {
  a: string;
  b: string;
  cos: number;
}

function writeLines(path: string, lines: string[]): void {
  mkdirSync(dirname(path), { recursive: true });
  writeFileSync(path, lines.map((l) => l + "\n").join(""), "utf-8");
}

export function neighborLines(label: string, records: NeighborRecord[]): string[] {
  return [...records]
    .sort((a, b) => a.word.localeCompare(b.word))
    .filter((r) => r.dist.length > 0 || r.sub.length > 0)
    .map((r) =>
      JSON.stringify({
        slice: label,
        word: r.word,
        dist: r.dist.map((n) => [n.lemma, n.cosine]),
        sub: r.sub.map((s) => [s.lemma, s.frequency]),
      }),
    );
}

export function writeNeighbors(path: string, label: string, records: NeighborRecord[]): void {
  writeLines(path, neighborLines(label, records));
}

export function writeSimilarities(path: string, label: string, pairs: PairRecord[]): void {
  const canonical = pairs.map((p) => (p.a < p.b ? p : { a: p.b, b: p.a, cos: p.cos }));
  canonical.sort((x, y) => x.a.localeCompare(y.a) || x.b.localeCompare(y.b));
  writeLines(
    path,
    canonical.map((p) => JSON.stringify({ slice: label, a: p.a, b: p.b, cos: p.cos })),
  );
}

export function writeCounts(
  path: string,
  slices: { label: string; total: number; counts: Map<string, number> }[],
): void {
  writeLines(
    path,
    slices.map((s) =>
      JSON.stringify({
        slice: s.label,
        total: s.total,
        counts: Object.fromEntries([...s.counts.entries()].sort(([a], [b]) => a.localeCompare(b))),
      }),
    ),
  );
}
