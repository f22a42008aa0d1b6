/** Figure renderers over the CLI export contracts.
 *
 * Acceptance is feature-based, not pixel-based: the boundary-coordinate
 * curve must pass through (+-1, -/+eps) and (0, 0), the slope curve through
 * (+-1, 0) and (0, 1), and the n=1 round-front export must draw a closed
 * two-cusp loop. Rendering is read-only over its inputs and deterministic.
 */

import { writeFileSync } from "node:fs";

import { anchorValue, closureGap, cuspCount, distinctSlices, foldCount } from "./features.js";
import { FrontData, PlotData, loadFrontData, loadPlotData } from "./schema.js";
import { axes, circles, document as svgDocument, frameFor, polyline } from "./svg.js";

export type FigureKind =
  | "q-n1-curve"
  | "slope-curve"
  | "front-2d"
  | "front-3d"
  | "isotopy-filmstrip";

export interface PlotJob {
  input: string;
  kind: FigureKind;
  out: string;
  stroke?: string;
}

export interface RenderResult {
  out: string;
  svg: string;
  features: Record<string, number>;
}

function renderCurve(
  data: PlotData,
  field: "q_n1" | "slope",
  stroke: string,
  title: string,
): { svg: string; features: Record<string, number> } {
  const records = [...data.records].sort((a, b) => a.t - b.t);
  const ts = records.map((r) => r.t);
  const ys = records.map((r) => r[field]);
  const frame = frameFor(ts, ys);
  const body =
    axes(frame, "t", field) +
    polyline(frame, records.map((r) => [r.t, r[field]]), stroke) +
    circles(
      frame,
      [-1, 0, 1].map((t) => {
        const rec = anchorValue(records, t);
        return [rec.t, rec[field]] as [number, number];
      }),
    );
  const features: Record<string, number> = {
    at_minus_one: anchorValue(records, -1)[field],
    at_zero: anchorValue(records, 0)[field],
    at_plus_one: anchorValue(records, 1)[field],
  };
  return { svg: svgDocument(frame, body, title), features };
}

function renderFront2d(
  data: FrontData,
  stroke: string,
): { svg: string; features: Record<string, number> } {
  const records = data.records;
  const xs = records.map((r) => r.q[0]);
  const zs = records.map((r) => r.z);
  const frame = frameFor(xs, zs);
  const cusps = records.filter((r) => r.cusp);
  const body =
    axes(frame, "q", "z") +
    polyline(frame, records.map((r) => [r.q[0], r.z]), stroke) +
    circles(frame, cusps.map((r) => [r.q[0], r.z]));
  const features = {
    cusps: cuspCount(records),
    closure_gap: closureGap(records),
    folds: foldCount(records),
  };
  return { svg: svgDocument(frame, body, "front projection"), features };
}

function renderFront3d(
  data: FrontData,
  stroke: string,
): { svg: string; features: Record<string, number> } {
  // oblique projection (x1 + 0.4 x2, z + 0.25 x2) of the front coordinates
  const records = data.records;
  const px = records.map((r) => r.q[0] + 0.4 * (r.q[1] ?? 0));
  const pz = records.map((r) => r.z + 0.25 * (r.q[1] ?? 0));
  const frame = frameFor(px, pz);
  const pts: Array<[number, number]> = records.map((r, i) => [px[i], pz[i]]);
  const body =
    axes(frame, "q (oblique)", "z") + circles(frame, pts, 1.2, stroke);
  return {
    svg: svgDocument(frame, body, "front projection (oblique)"),
    features: { cusps: cuspCount(records) },
  };
}

function renderFilmstrip(
  data: FrontData,
  stroke: string,
): { svg: string; features: Record<string, number> } {
  const slices = distinctSlices(data.records);
  if (slices.length === 0) throw new Error("filmstrip needs slice parameters");
  const panelW = 240;
  const height = 260;
  const margin = 30;
  const width = panelW * slices.length;
  const bodies: string[] = [];
  slices.forEach((t, k) => {
    const recs = data.records.filter((r) => r.t === t);
    const qs = recs.map((r) => r.q[r.q.length - 1]);
    const zs = recs.map((r) => r.z);
    const frame = {
      width: panelW,
      height,
      margin,
      box: {
        xMin: Math.min(...qs, -1.05),
        xMax: Math.max(...qs, 1.05),
        yMin: Math.min(...zs, -2.2),
        yMax: Math.max(...zs, 2.2),
      },
    };
    const shift = `<g transform="translate(${k * panelW} 0)">`;
    bodies.push(
      shift +
        axes(frame, `t = ${t}`, k === 0 ? "z" : "") +
        circles(frame, recs.map((r) => [r.q[r.q.length - 1], r.z]), 1.5, stroke) +
        "</g>",
    );
  });
  const svg =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">` +
    `<title>slice filmstrip</title><rect width="100%" height="100%" fill="white"/>` +
    bodies.join("") +
    `</svg>\n`;
  return { svg, features: { panels: slices.length } };
}

export function render(job: PlotJob): RenderResult {
  const stroke = job.stroke ?? "#1f6fb2";
  let out: { svg: string; features: Record<string, number> };
  if (job.kind === "q-n1-curve" || job.kind === "slope-curve") {
    const data = loadPlotData(job.input);
    out =
      job.kind === "q-n1-curve"
        ? renderCurve(data, "q_n1", stroke, "boundary coordinate vs t")
        : renderCurve(data, "slope", stroke, "normalized slope vs t");
  } else {
    const data = loadFrontData(job.input);
    if (job.kind === "front-2d") out = renderFront2d(data, stroke);
    else if (job.kind === "front-3d") out = renderFront3d(data, stroke);
    else if (job.kind === "isotopy-filmstrip") out = renderFilmstrip(data, stroke);
    else throw new Error(`unknown figure kind ${job.kind as string}`);
  }
  writeFileSync(job.out, out.svg, "utf-8");
  return { out: job.out, svg: out.svg, features: out.features };
}
