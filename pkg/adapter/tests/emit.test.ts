import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterEach, describe, expect, it } from "vitest";
import { neighborLines, writeCounts, writeNeighbors, writeSimilarities } from "../src/emit.js";

let dirs: string[] = [];

function tmp(): string {
  const d = mkdtempSync(join(tmpdir(), "emit-test-"));
  dirs.push(d);
  return d;
}

afterEach(() => {
  for (const d of dirs) rmSync(d, { recursive: true, force: true });
  dirs = [];
});

describe("neighbor emission", () => {
  it("sorts records by word and drops empty ones", () => {
    const lines = neighborLines("1900", [
      { word: "zebra", dist: [{ lemma: "ant", cosine: 0.5 }], sub: [] },
      { word: "ant", dist: [], sub: [{ lemma: "bee", frequency: 2 }] },
      { word: "empty", dist: [], sub: [] },
    ]);
    expect(lines.map((l) => JSON.parse(l).word)).toEqual(["ant", "zebra"]);
    expect(JSON.parse(lines[0]!)).toEqual({
      slice: "1900",
      word: "ant",
      dist: [],
      sub: [["bee", 2]],
    });
  });

  it("writes byte-identical files across runs", () => {
    const records = [
      { word: "aa", dist: [{ lemma: "bb", cosine: 0.25 }], sub: [{ lemma: "cc", frequency: 1 }] },
    ];
    const d1 = tmp();
    const d2 = tmp();
    writeNeighbors(join(d1, "n.jsonl"), "t", records);
    writeNeighbors(join(d2, "n.jsonl"), "t", records);
    expect(readFileSync(join(d1, "n.jsonl"))).toEqual(readFileSync(join(d2, "n.jsonl")));
  });
});

describe("similarity emission", () => {
  it("canonicalizes pair order and sorts lines", () => {
    const dir = tmp();
    const path = join(dir, "s.jsonl");
    writeSimilarities(path, "t", [
      { a: "zz", b: "aa", cos: 0.5 },
      { a: "bb", b: "cc", cos: -0.25 },
    ]);
    const rows = readFileSync(path, "utf-8").trim().split("\n").map((l) => JSON.parse(l));
    expect(rows).toEqual([
      { slice: "t", a: "aa", b: "zz", cos: 0.5 },
      { slice: "t", a: "bb", b: "cc", cos: -0.25 },
    ]);
  });
});

describe("counts emission", () => {
  it("writes one row per slice with sorted lemma keys", () => {
    const dir = tmp();
    const path = join(dir, "counts.jsonl");
    writeCounts(path, [
      { label: "t", total: 3, counts: new Map([["zebra", 1], ["ant", 2]]) },
    ]);
    const row = JSON.parse(readFileSync(path, "utf-8").trim());
    expect(row).toEqual({ slice: "t", total: 3, counts: { ant: 2, zebra: 1 } });
    expect(Object.keys(row.counts)).toEqual(["ant", "zebra"]);
  });
});
