/** Minimal deterministic SVG assembly: no timestamps, no randomness, so an
 * identical input renders to a byte-identical file. */

export interface Box {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export interface Frame {
  width: number;
  height: number;
  margin: number;
  box: Box;
}

export function frameFor(
  xs: number[],
  ys: number[],
  width = 640,
  height = 480,
  margin = 48,
  pad = 0.08,
): Frame {
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const dx = Math.max(xMax - xMin, 1e-9) * pad;
  const dy = Math.max(yMax - yMin, 1e-9) * pad;
  return {
    width,
    height,
    margin,
    box: { xMin: xMin - dx, xMax: xMax + dx, yMin: yMin - dy, yMax: yMax + dy },
  };
}

export function toPixel(frame: Frame, x: number, y: number): [number, number] {
  const { width, height, margin, box } = frame;
  const px =
    margin + ((x - box.xMin) / (box.xMax - box.xMin)) * (width - 2 * margin);
  const py =
    height -
    margin -
    ((y - box.yMin) / (box.yMax - box.yMin)) * (height - 2 * margin);
  return [round(px), round(py)];
}

function round(v: number): number {
  return Math.round(v * 100) / 100;
}

export function polyline(
  frame: Frame,
  points: Array<[number, number]>,
  stroke = "#1f6fb2",
  strokeWidth = 1.5,
): string {
  const pts = points
    .map(([x, y]) => toPixel(frame, x, y).join(","))
    .join(" ");
  return `<polyline fill="none" stroke="${stroke}" stroke-width="${strokeWidth}" points="${pts}"/>`;
}

export function circles(
  frame: Frame,
  points: Array<[number, number]>,
  r = 3,
  fill = "#c23b22",
): string {
  return points
    .map(([x, y]) => {
      const [px, py] = toPixel(frame, x, y);
      return `<circle cx="${px}" cy="${py}" r="${r}" fill="${fill}"/>`;
    })
    .join("");
}

export function axes(frame: Frame, xLabel: string, yLabel: string): string {
  const { width, height, margin, box } = frame;
  const pieces: string[] = [];
  pieces.push(
    `<rect x="${margin}" y="${margin}" width="${width - 2 * margin}" height="${
      height - 2 * margin
    }" fill="none" stroke="#444" stroke-width="1"/>`,
  );
  if (box.yMin < 0 && box.yMax > 0) {
    const [, py] = toPixel(frame, box.xMin, 0);
    pieces.push(
      `<line x1="${margin}" y1="${py}" x2="${width - margin}" y2="${py}" stroke="#bbb" stroke-width="0.8"/>`,
    );
  }
  if (box.xMin < 0 && box.xMax > 0) {
    const [px] = toPixel(frame, 0, box.yMin);
    pieces.push(
      `<line x1="${px}" y1="${margin}" x2="${px}" y2="${height - margin}" stroke="#bbb" stroke-width="0.8"/>`,
    );
  }
  pieces.push(
    `<text x="${width / 2}" y="${height - 12}" text-anchor="middle" font-size="13" font-family="sans-serif">${xLabel}</text>`,
  );
  pieces.push(
    `<text x="16" y="${height / 2}" text-anchor="middle" font-size="13" font-family="sans-serif" transform="rotate(-90 16 ${height / 2})">${yLabel}</text>`,
  );
  return pieces.join("");
}

export function document(frame: Frame, body: string, title: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}">` +
    `<title>${title}</title><rect width="100%" height="100%" fill="white"/>` +
    body +
    `</svg>\n`
  );
}
