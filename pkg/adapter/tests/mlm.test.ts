import { describe, expect, it } from "vitest";
import { Rng } from "../src/rng.js";
import { MlmModel, type MlmOptions } from "../src/mlm.js";
import type { SliceTokens } from "../src/preprocess.js";

const OPTIONS: MlmOptions = {
  epochs: 10,
  batchSize: 8,
  learningRate: 0.05,
  maskProbability: 0.3,
  minFrequency: 2,
  dimension: 12,
  window: 2,
  substitutePooling: "top1",
  topN: 3,
};

function frozenCorpus(): SliceTokens {
  const documents: string[][] = [];
  for (let i = 0; i < 15; i++) {
    documents.push(["open", "aa", "close"]);
    documents.push(["open", "bb", "close"]);
  }
  return { label: "t", documents };
}

describe("MlmModel", () => {
  it("gives no substitutes for words without occurrences", () => {
    const model = new MlmModel(frozenCorpus(), OPTIONS, new Rng(1));
    expect(model.substitutes("ghost", 5)).toEqual([]);
  });

  it("excludes words below its own frequency threshold", () => {
    const documents = [["aa", "bb", "aa", "bb", "rare"]];
    const model = new MlmModel({ label: "t", documents }, OPTIONS, new Rng(2));
    expect(model.has("rare")).toBe(false);
    expect(model.substitutes("rare", 5)).toEqual([]);
  });

  it("emits strictly positive integer frequencies in canonical order", () => {
    const model = new MlmModel(frozenCorpus(), OPTIONS, new Rng(3));
    for (const word of model.vocab) {
      const subs = model.substitutes(word, 5);
      for (const s of subs) {
        expect(Number.isInteger(s.frequency)).toBe(true);
        expect(s.frequency).toBeGreaterThan(0);
        expect(s.lemma).not.toBe(word);
      }
      for (let i = 1; i < subs.length; i++) {
        const prev = subs[i - 1]!;
        const cur = subs[i]!;
        expect(
          prev.frequency > cur.frequency ||
            (prev.frequency === cur.frequency && prev.lemma < cur.lemma),
        ).toBe(true);
      }
    }
  });

  it("is deterministic across two identical runs", () => {
    const a = new MlmModel(frozenCorpus(), OPTIONS, new Rng(9));
    const b = new MlmModel(frozenCorpus(), OPTIONS, new Rng(9));
    for (const word of a.vocab) {
      expect(a.substitutes(word, 5)).toEqual(b.substitutes(word, 5));
    }
  });

  it("caps the vote total at the occurrence count under top1 pooling", () => {
    const model = new MlmModel(frozenCorpus(), OPTIONS, new Rng(4));
    const total = model
      .substitutes("aa", 50)
      .reduce((n, s) => n + s.frequency, 0);
    expect(total).toBeLessThanOrEqual(model.occurrenceCount("aa"));
  });

  it("rejects self-pairs", () => {
    const model = new MlmModel(frozenCorpus(), OPTIONS, new Rng(5));
    expect(() => model.pairCosine("aa", "aa")).toThrow("self-pair");
  });

  it("gives cosine 1.0 for lemmas with identical occurrence contexts", () => {
    const model = new MlmModel(frozenCorpus(), OPTIONS, new Rng(6));
    // aa and bb only ever occur inside the same frozen frame
    const cos = model.pairCosine("aa", "bb");
    expect(cos).not.toBeNull();
    expect(Math.abs(cos! - 1.0)).toBeLessThanOrEqual(1e-6);
  });

  it("returns null for pairs with an out-of-vocabulary member", () => {
    const model = new MlmModel(frozenCorpus(), OPTIONS, new Rng(7));
    expect(model.pairCosine("aa", "ghost")).toBeNull();
  });
});
