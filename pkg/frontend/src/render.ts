/**
 * SVG and HTML fragment builders for the console views.
 *
 * Everything here is a pure string producer so the views can be checked
 * without a browser. One front member always becomes exactly one marker
 * per panel; the knee and the selected member are drawn as extra rings
 * on top rather than replacing the marker.
 */

import { FeedbackAck } from "./protocol.js";
import { IndicatorPoint, formatWeights } from "./viewModel.js";

const PANEL_W = 360;
const PANEL_H = 300;
const MARGIN = 36;

export interface FrontViewOptions {
  knee?: number | null;
  selected?: number | null;
  reference?: number[][] | null;
  labels?: string[];
}

interface Scale {
  lo: number;
  hi: number;
}

function axisScale(values: number[]): Scale {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (!(hi > lo)) {
    // degenerate axis: pad around the single value
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = 0.05 * (hi - lo);
  return { lo: lo - pad, hi: hi + pad };
}

function toX(v: number, s: Scale): string {
  return (MARGIN + ((v - s.lo) / (s.hi - s.lo)) * (PANEL_W - 2 * MARGIN)).toFixed(2);
}

function toY(v: number, s: Scale): string {
  // SVG y grows downward
  return (PANEL_H - MARGIN - ((v - s.lo) / (s.hi - s.lo)) * (PANEL_H - 2 * MARGIN)).toFixed(2);
}

function panel(
  front: number[][],
  xi: number,
  yi: number,
  opts: FrontViewOptions,
  labels: string[],
): string {
  const xs = front.map((row) => row[xi]);
  const ys = front.map((row) => row[yi]);
  const reference = opts.reference ?? null;
  if (reference) {
    for (const row of reference) {
      xs.push(row[xi]);
      ys.push(row[yi]);
    }
  }
  const sx = axisScale(xs);
  const sy = axisScale(ys);

  const parts: string[] = [];
  parts.push(`<rect class="frame" x="${MARGIN}" y="${MARGIN}" width="${PANEL_W - 2 * MARGIN}" height="${PANEL_H - 2 * MARGIN}" fill="none" stroke="#ccc"/>`);
  parts.push(`<text class="axis" x="${PANEL_W / 2}" y="${PANEL_H - 8}" text-anchor="middle">${labels[xi]}</text>`);
  parts.push(`<text class="axis" x="12" y="${PANEL_H / 2}" text-anchor="middle" transform="rotate(-90 12 ${PANEL_H / 2})">${labels[yi]}</text>`);

  if (reference) {
    const sorted = reference
      .map((row) => [row[xi], row[yi]])
      .sort((a, b) => a[0] - b[0]);
    const pts = sorted.map(([x, y]) => `${toX(x, sx)},${toY(y, sy)}`).join(" ");
    parts.push(`<polyline class="ref" points="${pts}" fill="none" stroke="#999" stroke-dasharray="4 3"/>`);
  }

  for (let i = 0; i < front.length; i++) {
    const cx = toX(front[i][xi], sx);
    const cy = toY(front[i][yi], sy);
    parts.push(`<circle class="pt" data-i="${i}" cx="${cx}" cy="${cy}" r="3" fill="#0877bd"/>`);
  }
  if (opts.knee !== null && opts.knee !== undefined && opts.knee < front.length) {
    const cx = toX(front[opts.knee][xi], sx);
    const cy = toY(front[opts.knee][yi], sy);
    parts.push(`<circle class="knee" cx="${cx}" cy="${cy}" r="7" fill="none" stroke="#d43f00" stroke-width="2"/>`);
  }
  if (opts.selected !== null && opts.selected !== undefined && opts.selected < front.length) {
    const cx = toX(front[opts.selected][xi], sx);
    const cy = toY(front[opts.selected][yi], sy);
    parts.push(`<circle class="sel" cx="${cx}" cy="${cy}" r="9" fill="none" stroke="#222" stroke-width="1"/>`);
  }
  return parts.join("\n");
}

/**
 * Scatter view of an objective front: one panel for two objectives,
 * three pairwise panels for three. An empty front renders an
 * empty-state notice instead of axes.
 */
export function renderFront(front: number[][], opts: FrontViewOptions = {}): string {
  if (front.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" width="${PANEL_W}" height="${PANEL_H}" viewBox="0 0 ${PANEL_W} ${PANEL_H}">` +
      `<text class="empty" x="${PANEL_W / 2}" y="${PANEL_H / 2}" text-anchor="middle">archive is empty</text></svg>`;
  }
  const m = front[0].length;
  const labels = opts.labels ?? Array.from({ length: m }, (_, j) => `f${j + 1}`);
  const pairs: Array<[number, number]> =
    m === 2 ? [[0, 1]] : [[0, 1], [0, 2], [1, 2]];
  if (m !== 2 && m !== 3) {
    throw new Error(`front view supports 2 or 3 objectives, got ${m}`);
  }
  const width = PANEL_W * pairs.length;
  const panels = pairs.map(
    ([xi, yi], k) =>
      `<g class="panel" transform="translate(${k * PANEL_W} 0)">\n${panel(front, xi, yi, opts, labels)}\n</g>`,
  );
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${PANEL_H}" viewBox="0 0 ${width} ${PANEL_H}">\n${panels.join("\n")}\n</svg>`;
}

/** Polyline chart of the indicator history, one series per label. */
export function renderTimeline(history: IndicatorPoint[], labels: string[]): string {
  const head = `<svg xmlns="http://www.w3.org/2000/svg" width="${PANEL_W}" height="${PANEL_H}" viewBox="0 0 ${PANEL_W} ${PANEL_H}">`;
  if (history.length === 0) {
    return `${head}<text class="empty" x="${PANEL_W / 2}" y="${PANEL_H / 2}" text-anchor="middle">no samples yet</text></svg>`;
  }
  const sx = axisScale(history.map((p) => p.iteration));
  const colors = ["#0877bd", "#d43f00", "#2d8a33"];
  const parts: string[] = [];
  for (let j = 0; j < labels.length; j++) {
    // each series is scaled on its own axis; the chart shows shape, not units
    const sy = axisScale(history.map((p) => p.values[j]));
    const pts = history
      .map((p) => `${toX(p.iteration, sx)},${toY(p.values[j], sy)}`)
      .join(" ");
    const color = colors[j % colors.length];
    parts.push(`<polyline class="series series-${j}" points="${pts}" fill="none" stroke="${color}"/>`);
    parts.push(`<text class="legend" x="${MARGIN + 4}" y="${16 + 14 * j}" fill="${color}">${labels[j]}</text>`);
  }
  return `${head}\n${parts.join("\n")}\n</svg>`;
}

/**
 * Readout of the requested and the active weight vectors at full wire
 * precision, plus the pending ack note when one is outstanding.
 */
export function renderWeightsReadout(
  requested: number[] | null,
  active: number[] | null,
  ack: FeedbackAck | null,
): string {
  const lines: string[] = [];
  lines.push(
    `<div class="weights-requested">requested: <span class="requested">${
      requested ? formatWeights(requested) : "(none)"
    }</span></div>`,
  );
  lines.push(
    `<div class="weights-active">active: <span class="active">${
      active ? formatWeights(active) : "(none)"
    }</span></div>`,
  );
  if (ack) {
    const note = ack.no_effect
      ? "accepted, but the run ends before the next window"
      : ack.applies_at !== null
        ? `applies at iteration ${ack.applies_at}`
        : "no effect";
    lines.push(`<div class="ack-note">${note}</div>`);
  }
  return lines.join("\n");
}
