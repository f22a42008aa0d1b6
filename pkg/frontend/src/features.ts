/** Data-level feature extraction shared by the renderers and the tests. */

import { FrontRecord, PlotRecord } from "./schema.js";

export function anchorValue(
  records: PlotRecord[],
  t: number,
  tol = 1e-9,
): PlotRecord {
  const hit = records.find((r) => Math.abs(r.t - t) < tol);
  if (!hit) throw new Error(`no plot record at t = ${t}`);
  return hit;
}

export function cuspCount(records: FrontRecord[]): number {
  return records.filter((r) => r.cusp).length;
}

/** Distance in (q, z) between the first and last record of a polyline. */
export function closureGap(records: FrontRecord[]): number {
  const a = records[0];
  const b = records[records.length - 1];
  const dq = Math.hypot(...a.q.map((v, i) => v - b.q[i]));
  return Math.hypot(dq, a.z - b.z);
}

/** Sign changes of the first front coordinate increment around the loop;
 * a closed one-dimensional front folds exactly at these reversals. */
export function foldCount(records: FrontRecord[]): number {
  const xs = records.map((r) => r.q[0]);
  const d: number[] = [];
  for (let i = 0; i < xs.length; i++) {
    const step = xs[(i + 1) % xs.length] - xs[i];
    if (Math.abs(step) > 1e-12) d.push(Math.sign(step));
  }
  let flips = 0;
  for (let i = 0; i < d.length; i++) {
    if (d[i] !== d[(i + 1) % d.length]) flips += 1;
  }
  return flips;
}

export function distinctSlices(records: FrontRecord[]): number[] {
  const ts = new Set<number>();
  for (const r of records) if (r.t !== null) ts.add(r.t);
  return [...ts].sort((a, b) => a - b);
}
