// Stats view: unpredictability against word length with error bars,
// drawn as plain SVG straight from the analysis snapshot. Every plotted
// number is taken verbatim from the JSON; nothing is recomputed here.

import { AnalysisSnapshot } from "./api.js";

const WIDTH = 640;
const HEIGHT = 360;
const MARGIN = { left: 50, right: 16, top: 16, bottom: 44 };

export function renderChart(snapshot: AnalysisSnapshot, mount: HTMLElement): void {
  mount.innerHTML = "";
  const points = snapshot.buckets.filter((b) => b.U_bits !== null);
  if (points.length === 0) {
    const empty = document.createElement("p");
    empty.dataset.testid = "empty-state";
    empty.textContent = "no data yet: play some trials first";
    mount.append(empty);
    return;
  }

  const xs = points.map((b) => b.length);
  const ys = points.flatMap((b) => [
    b.U_bits as number,
    b.U_low ?? (b.U_bits as number),
    b.U_high ?? (b.U_bits as number),
  ]);
  const xMin = Math.min(...xs) - 1;
  const xMax = Math.max(...xs) + 1;
  const yMin = Math.min(0, ...ys);
  const yMax = Math.max(...ys) * 1.1 || 1;

  const sx = (x: number) =>
    MARGIN.left + ((x - xMin) / (xMax - xMin)) * (WIDTH - MARGIN.left - MARGIN.right);
  const sy = (y: number) =>
    HEIGHT - MARGIN.bottom - ((y - yMin) / (yMax - yMin)) * (HEIGHT - MARGIN.top - MARGIN.bottom);

  const svgNs = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(svgNs, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("width", String(WIDTH));
  svg.dataset.testid = "chart";

  const line = (x1: number, y1: number, x2: number, y2: number, cls: string) => {
    const node = document.createElementNS(svgNs, "line");
    node.setAttribute("x1", String(x1));
    node.setAttribute("y1", String(y1));
    node.setAttribute("x2", String(x2));
    node.setAttribute("y2", String(y2));
    node.setAttribute("class", cls);
    svg.append(node);
  };

  line(MARGIN.left, sy(yMin), WIDTH - MARGIN.right, sy(yMin), "axis");
  line(MARGIN.left, MARGIN.top, MARGIN.left, HEIGHT - MARGIN.bottom, "axis");

  for (const x of xs) {
    const label = document.createElementNS(svgNs, "text");
    label.setAttribute("x", String(sx(x)));
    label.setAttribute("y", String(HEIGHT - MARGIN.bottom + 18));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "tick");
    label.textContent = String(x);
    svg.append(label);
  }
  for (let y = 0; y <= yMax; y += Math.max(1, Math.round(yMax / 6))) {
    const label = document.createElementNS(svgNs, "text");
    label.setAttribute("x", String(MARGIN.left - 8));
    label.setAttribute("y", String(sy(y) + 4));
    label.setAttribute("text-anchor", "end");
    label.setAttribute("class", "tick");
    label.textContent = String(y);
    svg.append(label);
  }

  for (const bucket of points) {
    const x = sx(bucket.length);
    const u = bucket.U_bits as number;
    if (bucket.U_low !== null && bucket.U_high !== null) {
      line(x, sy(bucket.U_low), x, sy(bucket.U_high), "errorbar");
      line(x - 4, sy(bucket.U_low), x + 4, sy(bucket.U_low), "errorbar");
      line(x - 4, sy(bucket.U_high), x + 4, sy(bucket.U_high), "errorbar");
    }
    const dot = document.createElementNS(svgNs, "circle");
    dot.setAttribute("cx", String(x));
    dot.setAttribute("cy", String(sy(u)));
    dot.setAttribute("r", "4");
    dot.setAttribute("class", "point");
    dot.dataset.testid = "chart-point";
    dot.dataset.length = String(bucket.length);
    dot.dataset.uBits = String(u);
    svg.append(dot);
  }

  const xLabel = document.createElementNS(svgNs, "text");
  xLabel.setAttribute("x", String(WIDTH / 2));
  xLabel.setAttribute("y", String(HEIGHT - 6));
  xLabel.setAttribute("text-anchor", "middle");
  xLabel.textContent = `word length in ${snapshot.unit}`;
  svg.append(xLabel);

  const yLabel = document.createElementNS(svgNs, "text");
  yLabel.setAttribute("x", "14");
  yLabel.setAttribute("y", String(HEIGHT / 2));
  yLabel.setAttribute(
    "transform",
    `rotate(-90 14 ${HEIGHT / 2})`,
  );
  yLabel.setAttribute("text-anchor", "middle");
  yLabel.textContent = "unpredictability, bits";
  svg.append(yLabel);

  mount.append(svg);
}
