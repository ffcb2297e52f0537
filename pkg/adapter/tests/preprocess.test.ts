import { describe, expect, it } from "vitest";
import { lemmatize, preprocessSlice, tokenCounts, tokenize, totalTokens } from "../src/preprocess.js";

describe("tokenize", () => {
  it("handles the possessive-and-numeral example", () => {
    expect(tokenize("The cat's 9 lives!")).toEqual(["cat", "life"]);
  });

  it("returns nothing for an empty document", () => {
    expect(tokenize("")).toEqual([]);
  });

  it("returns nothing for a numerals-only document", () => {
    expect(tokenize("12 34 5,678 9.0")).toEqual([]);
  });

  it("drops punctuation, stop words, and single letters", () => {
    expect(tokenize("A wolf, the crane; and I!")).toEqual(["wolf", "crane"]);
  });

  it("lowercases before everything else", () => {
    expect(tokenize("WOLVES howled")).toEqual(["wolf", "howled"]);
  });
});

describe("lemmatize", () => {
  it("applies irregular exceptions", () => {
    expect(lemmatize("lives")).toBe("life");
    expect(lemmatize("children")).toBe("child");
    expect(lemmatize("geese")).toBe("goose");
  });

  it("applies suffix rules", () => {
    expect(lemmatize("stories")).toBe("story");
    expect(lemmatize("foxes")).toBe("fox");
    expect(lemmatize("branches")).toBe("branch");
    expect(lemmatize("grapes")).toBe("grape");
  });

  it("leaves -ss, -us, -is words alone", () => {
    expect(lemmatize("glass")).toBe("glass");
    expect(lemmatize("virus")).toBe("virus");
    expect(lemmatize("basis")).toBe("basis");
  });
});

describe("slice preprocessing", () => {
  it("keeps one stream per document and counts totals", () => {
    const slice = preprocessSlice("1900", ["the fox ran", "", "foxes ran far"]);
    expect(slice.documents).toEqual([["fox", "ran"], [], ["fox", "ran", "far"]]);
    expect(totalTokens(slice)).toBe(5);
    expect(tokenCounts(slice).get("fox")).toBe(2);
  });
});
