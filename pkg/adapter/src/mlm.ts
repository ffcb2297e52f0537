/**
 * A tiny log-linear masked language model: the masked position is predicted
 * from the average embedding of its context window through a softmax layer.
 * It stands in for a transformer MLM at desk scale while exposing the same
 * contract: a vocabulary of its own, ranked substitute predictions per masked
 * occurrence, and contextual vectors for pair similarities.
 */

import { Rng } from "./rng.js";
import type { SliceTokens } from "./preprocess.js";
import { tokenCounts } from "./preprocess.js";

export interface MlmOptions {
  epochs: number;
  batchSize: number;
  learningRate: number;
  maskProbability: number;
  minFrequency: number;
  dimension: number;
  window: number;
  substitutePooling: "top1" | "topn";
  topN: number;
}

export interface Substitute {
  lemma: string;
  frequency: number;
}

interface Occurrence {
  doc: number;
  pos: number;
}

export class MlmModel {
  readonly vocab: string[];
  private readonly index: Map<string, number>;
  private readonly embed: Float64Array;
  private readonly out: Float64Array;
  private readonly bias: Float64Array;
  private readonly dim: number;
  private readonly docs: number[][];
  private readonly occurrences: Map<string, Occurrence[]>;

  constructor(slice: SliceTokens, private readonly options: MlmOptions, rng: Rng) {
    const counts = tokenCounts(slice);
    this.vocab = [...counts.keys()]
      .filter((w) => (counts.get(w) ?? 0) >= options.minFrequency)
      .sort();
    this.index = new Map(this.vocab.map((w, i) => [w, i]));
    this.dim = options.dimension;
    const size = this.vocab.length * this.dim;
    this.embed = new Float64Array(size);
    this.out = new Float64Array(size);
    this.bias = new Float64Array(this.vocab.length);
    for (let i = 0; i < size; i++) {
      this.embed[i] = (rng.next() - 0.5) / this.dim;
      this.out[i] = (rng.next() - 0.5) / this.dim;
    }

    // in-vocabulary token streams plus an occurrence index per word
    this.docs = slice.documents.map((doc) =>
      doc.map((t) => this.index.get(t)).filter((i): i is number => i !== undefined),
    );
    this.occurrences = new Map();
    this.docs.forEach((doc, d) => {
      doc.forEach((id, p) => {
        const word = this.vocab[id]!;
        let list = this.occurrences.get(word);
        if (list === undefined) {
          list = [];
          this.occurrences.set(word, list);
        }
        list.push({ doc: d, pos: p });
      });
    });

    this.train(rng);
  }

  /** Context vector: mean embedding of the window around `pos`, skipping it. */
  private context(doc: number[], pos: number): Float64Array {
    const h = new Float64Array(this.dim);
    const lo = Math.max(0, pos - this.options.window);
    const hi = Math.min(doc.length - 1, pos + this.options.window);
    let n = 0;
    for (let i = lo; i <= hi; i++) {
      if (i === pos) continue;
      const base = doc[i]! * this.dim;
      for (let d = 0; d < this.dim; d++) h[d]! += this.embed[base + d]!;
      n++;
    }
    if (n > 0) for (let d = 0; d < this.dim; d++) h[d]! /= n;
    return h;
  }

  private logits(h: Float64Array): Float64Array {
    const z = new Float64Array(this.vocab.length);
    for (let v = 0; v < this.vocab.length; v++) {
      let dot = this.bias[v]!;
      const base = v * this.dim;
      for (let d = 0; d < this.dim; d++) dot += this.out[base + d]! * h[d]!;
      z[v] = dot;
    }
    return z;
  }

  private softmax(z: Float64Array): Float64Array {
    let max = -Infinity;
    for (const x of z) if (x > max) max = x;
    const p = new Float64Array(z.length);
    let sum = 0;
    for (let v = 0; v < z.length; v++) {
      p[v] = Math.exp(z[v]! - max);
      sum += p[v]!;
    }
    for (let v = 0; v < z.length; v++) p[v]! /= sum;
    return p;
  }

  private train(rng: Rng): void {
    if (this.vocab.length < 2) return;
    const { epochs, batchSize, learningRate, maskProbability } = this.options;
    // batch size enters as a learning-rate scale; updates stay per-sample
    const lr = learningRate / Math.max(1, batchSize / 8);
    for (let epoch = 0; epoch < epochs; epoch++) {
      for (const doc of this.docs) {
        for (let pos = 0; pos < doc.length; pos++) {
          if (rng.next() >= maskProbability) continue;
          this.step(doc, pos, lr);
        }
      }
    }
  }

  private step(doc: number[], pos: number, lr: number): void {
    const target = doc[pos]!;
    const h = this.context(doc, pos);
    const p = this.softmax(this.logits(h));
    const gradH = new Float64Array(this.dim);
    for (let v = 0; v < this.vocab.length; v++) {
      const err = (v === target ? 1 : 0) - p[v]!;
      const base = v * this.dim;
      this.bias[v]! += lr * err;
      for (let d = 0; d < this.dim; d++) {
        gradH[d]! += err * this.out[base + d]!;
        this.out[base + d]! += lr * err * h[d]!;
      }
    }
    // distribute the context gradient back onto the window embeddings
    const lo = Math.max(0, pos - this.options.window);
    const hi = Math.min(doc.length - 1, pos + this.options.window);
    let n = 0;
    for (let i = lo; i <= hi; i++) if (i !== pos) n++;
    if (n === 0) return;
    for (let i = lo; i <= hi; i++) {
      if (i === pos) continue;
      const base = doc[i]! * this.dim;
      for (let d = 0; d < this.dim; d++) this.embed[base + d]! += (lr / n) * gradH[d]!;
    }
  }

  has(word: string): boolean {
    return this.index.has(word);
  }

  occurrenceCount(word: string): number {
    return this.occurrences.get(word)?.length ?? 0;
  }

  /** Ranked predictions for one masked occurrence, the word itself excluded. */
  private predictions(word: string, occ: Occurrence): string[] {
    const doc = this.docs[occ.doc]!;
    const p = this.softmax(this.logits(this.context(doc, occ.pos)));
    const order = [...this.vocab.keys()].sort(
      (a, b) => p[b]! - p[a]! || this.vocab[a]!.localeCompare(this.vocab[b]!),
    );
    return order.map((v) => this.vocab[v]!).filter((l) => l !== word);
  }

  /**
   * Aggregate masked-prediction votes over every occurrence of `word` and
   * return the top-k substitutes, frequency desc then lemma asc. Words absent
   * from the MLM vocabulary get no substitutes at all.
   */
  substitutes(word: string, k: number): Substitute[] {
    const occs = this.occurrences.get(word);
    if (!occs || !this.index.has(word)) return [];
    const votes = new Map<string, number>();
    const take = this.options.substitutePooling === "top1" ? 1 : this.options.topN;
    for (const occ of occs) {
      for (const lemma of this.predictions(word, occ).slice(0, take)) {
        votes.set(lemma, (votes.get(lemma) ?? 0) + 1);
      }
    }
    return [...votes.entries()]
      .map(([lemma, frequency]) => ({ lemma, frequency }))
      .sort((a, b) => b.frequency - a.frequency || a.lemma.localeCompare(b.lemma))
      .slice(0, k);
  }

  /** Mean-pooled contextual vector over all of a lemma's occurrences. */
  contextualVector(word: string): Float64Array | null {
    const occs = this.occurrences.get(word);
    if (!occs || occs.length === 0) return null;
    const mean = new Float64Array(this.dim);
    for (const occ of occs) {
      const h = this.context(this.docs[occ.doc]!, occ.pos);
      for (let d = 0; d < this.dim; d++) mean[d]! += h[d]!;
    }
    for (let d = 0; d < this.dim; d++) mean[d]! /= occs.length;
    return mean;
  }

  /** Cosine between the contextual vectors of two distinct lemmas. */
  pairCosine(a: string, b: string): number | null {
    if (a === b) throw new Error(`self-pair (${a}, ${b}) is not allowed`);
    const va = this.contextualVector(a);
    const vb = this.contextualVector(b);
    if (va === null || vb === null) return null;
    let dot = 0;
    let na = 0;
    let nb = 0;
    for (let d = 0; d < this.dim; d++) {
      dot += va[d]! * vb[d]!;
      na += va[d]! * va[d]!;
      nb += vb[d]! * vb[d]!;
    }
    if (na === 0 || nb === 0) return 0;
    const cos = dot / Math.sqrt(na * nb);
    return Math.max(-1, Math.min(1, Math.round(cos * 1e6) / 1e6));
  }
}
