/**
 * Skip-gram with negative sampling, trained per slice on the preprocessed
 * token streams. Small and CPU-only; desk-scale dimensions finish in
 * milliseconds, the paper-scale profile is the same loop run longer.
 */

import { Rng } from "./rng.js";
import type { SliceTokens } from "./preprocess.js";
import { tokenCounts } from "./preprocess.js";

export interface SgnsOptions {
  window: number;
  dimension: number;
  minFrequency: number;
  epochs: number;
  learningRate: number;
  negatives: number;
}

export interface ScoredNeighbor {
  lemma: string;
  cosine: number;
}

function sigmoid(x: number): number {
  return 1 / (1 + Math.exp(-x));
}

export class SgnsModel {
  readonly vocab: string[];
  private readonly index: Map<string, number>;
  private readonly input: Float64Array;
  private readonly output: Float64Array;
  private readonly dim: number;
  private readonly negativeTable: Int32Array;

  constructor(slice: SliceTokens, options: SgnsOptions, rng: Rng) {
    const counts = tokenCounts(slice);
    this.vocab = [...counts.keys()]
      .filter((w) => (counts.get(w) ?? 0) >= options.minFrequency)
      .sort();
    this.index = new Map(this.vocab.map((w, i) => [w, i]));
    this.dim = options.dimension;
    const size = this.vocab.length * this.dim;
    this.input = new Float64Array(size);
    this.output = new Float64Array(size);
    for (let i = 0; i < size; i++) {
      this.input[i] = (rng.next() - 0.5) / this.dim;
    }

    // unigram^0.75 table for negative sampling
    const weights = this.vocab.map((w) => Math.pow(counts.get(w) ?? 0, 0.75));
    const total = weights.reduce((a, b) => a + b, 0);
    const tableSize = Math.max(1000, this.vocab.length * 50);
    this.negativeTable = new Int32Array(tableSize);
    if (this.vocab.length > 0) {
      let cursor = 0;
      let acc = 0;
      for (let v = 0; v < this.vocab.length; v++) {
        acc += (weights[v] ?? 0) / total;
        while (cursor < tableSize && cursor / tableSize < acc) {
          this.negativeTable[cursor++] = v;
        }
      }
      while (cursor < tableSize) this.negativeTable[cursor++] = this.vocab.length - 1;
    }

    this.train(slice, options, rng);
  }

  private train(slice: SliceTokens, options: SgnsOptions, rng: Rng): void {
    if (this.vocab.length < 2) return;
    for (let epoch = 0; epoch < options.epochs; epoch++) {
      for (const doc of slice.documents) {
        const ids = doc
          .map((t) => this.index.get(t))
          .filter((i): i is number => i !== undefined);
        for (let pos = 0; pos < ids.length; pos++) {
          const center = ids[pos]!;
          const lo = Math.max(0, pos - options.window);
          const hi = Math.min(ids.length - 1, pos + options.window);
          for (let ctx = lo; ctx <= hi; ctx++) {
            if (ctx === pos) continue;
            this.step(center, ids[ctx]!, options, rng);
          }
        }
      }
    }
  }

  private step(center: number, context: number, options: SgnsOptions, rng: Rng): void {
    const lr = options.learningRate;
    const grad = new Float64Array(this.dim);
    const ci = center * this.dim;
    for (let n = 0; n <= options.negatives; n++) {
      const target = n === 0 ? context : this.negativeTable[rng.int(this.negativeTable.length)]!;
      if (n > 0 && target === context) continue;
      const label = n === 0 ? 1 : 0;
      const ti = target * this.dim;
      let dot = 0;
      for (let d = 0; d < this.dim; d++) dot += this.input[ci + d]! * this.output[ti + d]!;
      const g = (label - sigmoid(dot)) * lr;
      for (let d = 0; d < this.dim; d++) {
        grad[d]! += g * this.output[ti + d]!;
        this.output[ti + d]! += g * this.input[ci + d]!;
      }
    }
    for (let d = 0; d < this.dim; d++) this.input[ci + d]! += grad[d]!;
  }

  has(word: string): boolean {
    return this.index.has(word);
  }

  private cosine(a: number, b: number): number {
    let dot = 0;
    let na = 0;
    let nb = 0;
    for (let d = 0; d < this.dim; d++) {
      const x = this.input[a * this.dim + d]!;
      const y = this.input[b * this.dim + d]!;
      dot += x * y;
      na += x * x;
      nb += y * y;
    }
    if (na === 0 || nb === 0) return 0;
    return dot / Math.sqrt(na * nb);
  }

  /** Top-k distributional neighbors, cosine desc then lemma asc, rounded to 6 places. */
  neighbors(word: string, k: number): ScoredNeighbor[] {
    const wi = this.index.get(word);
    if (wi === undefined) return [];
    const scored: ScoredNeighbor[] = [];
    for (let v = 0; v < this.vocab.length; v++) {
      if (v === wi) continue;
      const raw = this.cosine(wi, v);
      const cosine = Math.max(-1, Math.min(1, Math.round(raw * 1e6) / 1e6));
      scored.push({ lemma: this.vocab[v]!, cosine });
    }
    scored.sort((a, b) => b.cosine - a.cosine || a.lemma.localeCompare(b.lemma));
    return scored.slice(0, k);
  }
}
