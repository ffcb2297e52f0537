/**
 * Corpus preprocessing: lowercasing, punctuation and numeral removal, stop
 * word filtering, and rule-based lemmatization. The output token streams feed
 * both the static-embedding trainer and the masked LM.
 */

const STOPWORDS = new Set([
  "a", "about", "above", "after", "again", "against", "all", "am", "an",
  "and", "any", "are", "as", "at", "be", "because", "been", "before",
  "being", "below", "between", "both", "but", "by", "could", "did", "do",
  "does", "doing", "down", "during", "each", "few", "for", "from",
  "further", "had", "has", "have", "having", "he", "her", "here", "hers",
  "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is",
  "it", "its", "itself", "just", "me", "more", "most", "my", "myself",
  "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or",
  "other", "our", "ours", "ourselves", "out", "over", "own", "same",
  "she", "should", "so", "some", "such", "than", "that", "the", "their",
  "theirs", "them", "themselves", "then", "there", "these", "they",
  "this", "those", "through", "to", "too", "under", "until", "up",
  "very", "was", "we", "were", "what", "when", "where", "which", "while",
  "who", "whom", "why", "will", "with", "would", "you", "your", "yours",
  "yourself", "yourselves",
]);

/** Irregular forms the suffix rules would get wrong. */
const LEMMA_EXCEPTIONS: ReadonlyMap<string, string> = new Map([
  ["lives", "life"],
  ["wives", "wife"],
  ["knives", "knife"],
  ["leaves", "leaf"],
  ["loaves", "loaf"],
  ["wolves", "wolf"],
  ["shelves", "shelf"],
  ["children", "child"],
  ["men", "man"],
  ["women", "woman"],
  ["mice", "mouse"],
  ["geese", "goose"],
  ["feet", "foot"],
  ["teeth", "tooth"],
  ["people", "person"],
  ["oxen", "ox"],
]);

export function lemmatize(word: string): string {
  const exception = LEMMA_EXCEPTIONS.get(word);
  if (exception !== undefined) return exception;
  if (word.endsWith("ies") && word.length > 4) return word.slice(0, -3) + "y";
  if (word.endsWith("sses")) return word.slice(0, -2);
  if (/(ches|shes|xes|zes)$/.test(word)) return word.slice(0, -2);
  if (word.endsWith("s") && !/(ss|us|is)$/.test(word) && word.length > 3) {
    return word.slice(0, -1);
  }
  return word;
}

/**
 * One document to a clean lemma stream. Punctuation and numerals are dropped
 * by only keeping alphabetic runs; single letters (including possessive "s"
 * fragments) and stop words are removed before lemmatization.
 */
export function tokenize(text: string): string[] {
  const raw = text.toLowerCase().match(/[a-z]+/g) ?? [];
  const out: string[] = [];
  for (const token of raw) {
    if (token.length < 2 || STOPWORDS.has(token)) continue;
    const lemma = lemmatize(token);
    if (lemma.length < 2 || STOPWORDS.has(lemma)) continue;
    out.push(lemma);
  }
  return out;
}

export interface SliceTokens {
  label: string;
  /** One token stream per document; empty documents yield empty streams. */
  documents: string[][];
}

export function preprocessSlice(label: string, documents: string[]): SliceTokens {
  return { label, documents: documents.map(tokenize) };
}

export function tokenCounts(slice: SliceTokens): Map<string, number> {
  const counts = new Map<string, number>();
  for (const doc of slice.documents) {
    for (const token of doc) {
      counts.set(token, (counts.get(token) ?? 0) + 1);
    }
  }
  return counts;
}

export function totalTokens(slice: SliceTokens): number {
  return slice.documents.reduce((n, doc) => n + doc.length, 0);
}
