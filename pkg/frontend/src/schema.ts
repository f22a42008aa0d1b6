/**
 * Contracts of the legspheres CLI export files.
 *
 * JSON: { meta: { n, eps, seed, version }, records: [...] }
 * plot records:  { t, q_n1, slope }
 * front records: { t: number|null, x_params: number[], q: number[], z, cusp }
 * CSV: one header row naming the fields, list fields rendered as
 * "[a b ...]" (space separated, so rows split safely on commas).
 */

import { readFileSync } from "node:fs";
import { z } from "zod";

export const metaSchema = z.object({
  n: z.number().int().min(1).max(4),
  eps: z.number().gt(0).lt(0.5),
  seed: z.number().int(),
  version: z.string(),
});

export const plotRecordSchema = z.object({
  t: z.number(),
  q_n1: z.number(),
  slope: z.number(),
});

export const frontRecordSchema = z.object({
  t: z.number().nullable(),
  x_params: z.array(z.number()),
  q: z.array(z.number()).nonempty(),
  z: z.number(),
  cusp: z.boolean(),
});

export type Meta = z.infer<typeof metaSchema>;
export type PlotRecord = z.infer<typeof plotRecordSchema>;
export type FrontRecord = z.infer<typeof frontRecordSchema>;

export interface PlotData {
  meta: Meta | null;
  records: PlotRecord[];
}

export interface FrontData {
  meta: Meta | null;
  records: FrontRecord[];
}

export class SchemaViolation extends Error {}

function parseCsvValue(raw: string): number | boolean | number[] | null {
  const text = raw.trim();
  if (text === "true") return true;
  if (text === "false") return false;
  if (text === "None" || text === "") return null;
  if (text.startsWith("[")) {
    const body = text.slice(1, -1).trim();
    if (body.length === 0) return [];
    return body.split(/\s+/).map(Number);
  }
  const num = Number(text);
  if (Number.isNaN(num)) {
    throw new SchemaViolation(`unparseable CSV value: ${raw}`);
  }
  return num;
}

function parseCsv(text: string): Record<string, unknown>[] {
  const lines = text
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length < 1) throw new SchemaViolation("empty CSV file");
  const header = lines[0].split(",");
  return lines.slice(1).map((line) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaViolation(
        `CSV row has ${cells.length} cells, expected ${header.length}`,
      );
    }
    const row: Record<string, unknown> = {};
    header.forEach((name, i) => {
      row[name] = parseCsvValue(cells[i]);
    });
    return row;
  });
}

function loadRaw(path: string): {
  meta: unknown;
  records: unknown[];
} {
  const text = readFileSync(path, "utf-8");
  if (path.endsWith(".json")) {
    const data = JSON.parse(text) as { meta?: unknown; records?: unknown };
    if (!Array.isArray(data.records)) {
      throw new SchemaViolation("JSON export must carry a records array");
    }
    return { meta: data.meta ?? null, records: data.records };
  }
  return { meta: null, records: parseCsv(text) };
}

function validateAll<T>(records: unknown[], schema: z.ZodType<T>): T[] {
  return records.map((rec, i) => {
    const result = schema.safeParse(rec);
    if (!result.success) {
      throw new SchemaViolation(
        `record ${i} violates the schema: ${result.error.issues
          .map((iss) => `${iss.path.join(".")}: ${iss.message}`)
          .join("; ")}`,
      );
    }
    return result.data;
  });
}

function validateMeta(meta: unknown): Meta | null {
  if (meta === null || meta === undefined) return null;
  const result = metaSchema.safeParse(meta);
  if (!result.success) {
    throw new SchemaViolation(`meta violates the schema: ${result.error.message}`);
  }
  return result.data;
}

export function loadPlotData(path: string): PlotData {
  const { meta, records } = loadRaw(path);
  return { meta: validateMeta(meta), records: validateAll(records, plotRecordSchema) };
}

export function loadFrontData(path: string): FrontData {
  const { meta, records } = loadRaw(path);
  return { meta: validateMeta(meta), records: validateAll(records, frontRecordSchema) };
}
