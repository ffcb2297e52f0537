/** Adapter configuration: corpus manifest plus all training hyperparameters. */

import { readFileSync } from "node:fs";
import { dirname, isAbsolute, resolve } from "node:path";
import { z } from "zod";

const sliceSchema = z.object({
  label: z.string().min(1),
  /** UTF-8 plain text files, relative paths resolved against the config file. */
  documents: z.array(z.string()).min(1),
});

const embeddingSchema = z.object({
  window: z.number().int().min(1).default(4),
  dimension: z.number().int().min(2).default(300),
  minFrequency: z.number().int().min(1).default(50),
  epochs: z.number().int().min(1).default(5),
  learningRate: z.number().positive().default(0.025),
  negatives: z.number().int().min(1).default(5),
});

const mlmSchema = z.object({
  epochs: z.number().int().min(1).default(30),
  batchSize: z.number().int().min(1).default(32),
  learningRate: z.number().positive().default(6e-4),
  maskProbability: z.number().min(0).max(1).default(0.15),
  /** Separate vocabulary threshold; words between the embedding and MLM
   *  thresholds exercise the dist-only vocabulary-mismatch path. */
  minFrequency: z.number().int().min(1).default(1),
  dimension: z.number().int().min(2).default(32),
  window: z.number().int().min(1).default(4),
  /** top1: one vote per masked occurrence; topn: pool the n best predictions. */
  substitutePooling: z.enum(["top1", "topn"]).default("top1"),
  topN: z.number().int().min(1).default(3),
});

const emitSchema = z.object({
  kDist: z.number().int().min(1).default(10),
  kSub: z.number().int().min(1).default(10),
  /** Largest per-layer fan-outs the downstream graph builder will request. */
  coreMaxKDist: z.number().int().min(1).default(3),
  coreMaxKSub: z.number().int().min(1).default(6),
});

export const adapterConfigSchema = z
  .object({
    targets: z.array(z.string().min(1)).min(1),
    slices: z.array(sliceSchema).min(1),
    sampleSize: z.number().int().min(1).optional(),
    embedding: embeddingSchema.prefault({}),
    mlm: mlmSchema.prefault({}),
    emit: emitSchema.prefault({}),
    seed: z.number().int().default(0),
  })
  .superRefine((cfg, ctx) => {
    if (cfg.emit.kDist < cfg.emit.coreMaxKDist) {
      ctx.addIssue({
        code: "custom",
        message: `emit.kDist (${cfg.emit.kDist}) must cover the core's largest distributional fan-out (${cfg.emit.coreMaxKDist})`,
      });
    }
    if (cfg.emit.kSub < cfg.emit.coreMaxKSub) {
      ctx.addIssue({
        code: "custom",
        message: `emit.kSub (${cfg.emit.kSub}) must cover the core's largest substitution fan-out (${cfg.emit.coreMaxKSub})`,
      });
    }
    const labels = new Set(cfg.slices.map((s) => s.label));
    if (labels.size !== cfg.slices.length) {
      ctx.addIssue({ code: "custom", message: "slice labels must be unique" });
    }
  });

export type AdapterConfig = z.infer<typeof adapterConfigSchema>;

export function loadConfig(path: string): AdapterConfig {
  const parsed = adapterConfigSchema.parse(JSON.parse(readFileSync(path, "utf-8")));
  const base = dirname(resolve(path));
  return {
    ...parsed,
    slices: parsed.slices.map((s) => ({
      label: s.label,
      documents: s.documents.map((d) => (isAbsolute(d) ? d : resolve(base, d))),
    })),
  };
}
