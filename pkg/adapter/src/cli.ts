#!/usr/bin/env node
/** Command line entry: `sensegraph-adapter --config adapter.json --out dir`. */

import { parseArgs } from "node:util";
import { loadConfig } from "./config.js";
import { runAdapter } from "./pipeline.js";

export function main(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      config: { type: "string" },
      out: { type: "string", default: "adapter_out" },
    },
  });
  if (!values.config) {
    console.error("error: --config is required");
    return 2;
  }
  try {
    const summary = runAdapter(loadConfig(values.config), values.out!);
    for (const slice of summary.slices) {
      const status = slice.skipped
        ? "skipped (empty)"
        : `${slice.tokens} tokens, ${slice.records} records, ` +
          `${slice.pairs} pairs (${slice.pairsOmitted} omitted)`;
      console.log(`slice ${slice.label}: ${status}`);
    }
    for (const file of summary.files) console.log(file);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
