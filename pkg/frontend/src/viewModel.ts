/**
 * Client-side state for one steering session.
 *
 * The model keeps the latest complete snapshot (swapped in whole, so a
 * render never sees a half-applied update), the slider values, both the
 * requested and the active weight vectors, indicator history, and the
 * queue of submissions made while the server was unreachable.
 */

import {
  CreatedReply,
  FeedbackAck,
  FeedbackEvent,
  ProblemInfo,
  StateSnapshot,
} from "./protocol.js";

/** Simplex-normalize raw slider positions; null when nothing to normalize. */
export function normalizeSliders(values: number[]): number[] | null {
  if (values.length === 0 || values.some((v) => v < 0 || !Number.isFinite(v))) {
    return null;
  }
  const total = values.reduce((acc, v) => acc + v, 0);
  if (total <= 0) {
    return null;
  }
  return values.map((v) => v / total);
}

/**
 * Blend the active weights toward an expert vector with gain gamma and
 * renormalize. Mirrors the server's update rule so the console can verify
 * the ack trail end to end.
 */
export function blendWeights(
  current: number[],
  expert: number[],
  gamma: number,
): number[] {
  const blended = current.map((w, i) => (1 - gamma) * w + gamma * expert[i]);
  const total = blended.reduce((acc, v) => acc + v, 0);
  return blended.map((v) => v / total);
}

/** Min-max rescale each objective column to [0, 1]; constant columns map to 0. */
export function normalizeFront(front: number[][]): number[][] {
  const m = front[0].length;
  const lo = new Array<number>(m).fill(Infinity);
  const hi = new Array<number>(m).fill(-Infinity);
  for (const row of front) {
    for (let j = 0; j < m; j++) {
      if (row[j] < lo[j]) lo[j] = row[j];
      if (row[j] > hi[j]) hi[j] = row[j];
    }
  }
  return front.map((row) =>
    row.map((v, j) => (hi[j] - lo[j] > 0 ? (v - lo[j]) / (hi[j] - lo[j]) : 0)),
  );
}

/**
 * Index of the front member minimizing the weighted Chebyshev value
 * max_j w_j * f~_j over the normalized front. Ties break by lowest
 * weighted sum, then lowest index.
 */
export function kneeIndex(front: number[][], weights: number[]): number {
  if (front.length === 0) {
    throw new Error("knee of an empty front");
  }
  if (weights.length !== front[0].length) {
    throw new Error("weight length must equal objective count");
  }
  const normalized = normalizeFront(front);
  let bestIdx = 0;
  let bestCheb = Infinity;
  let bestSum = Infinity;
  for (let i = 0; i < normalized.length; i++) {
    let cheb = -Infinity;
    let sum = 0;
    for (let j = 0; j < weights.length; j++) {
      const v = weights[j] * normalized[i][j];
      if (v > cheb) cheb = v;
      sum += v;
    }
    if (cheb < bestCheb || (cheb === bestCheb && sum < bestSum)) {
      bestIdx = i;
      bestCheb = cheb;
      bestSum = sum;
    }
  }
  return bestIdx;
}

/** Render a weight vector at full float precision, matching wire values. */
export function formatWeights(weights: number[]): string {
  return weights.map((v) => String(v)).join(", ");
}

/** Display names for a problem's objectives. */
export function objectiveLabels(problem: ProblemInfo): string[] {
  if (problem.id === "adas8") {
    return ["SI", "EEM", "CPS"];
  }
  return Array.from({ length: problem.objectives }, (_, j) => `f${j + 1}`);
}

export interface PendingSubmission {
  weights: number[];
  gamma?: number;
}

export interface IndicatorPoint {
  iteration: number;
  values: number[];
}

export class ConsoleModel {
  problem: ProblemInfo | null = null;
  referenceFront: number[][] | null = null;
  snapshot: StateSnapshot | null = null;

  sliders: number[] = [];
  /** Last weights acknowledged (or queued) for submission. */
  requestedWeights: number[] | null = null;
  lastAck: FeedbackAck | null = null;
  validationMessage: string | null = null;

  playing = false;
  selectedIndex: number | null = null;

  /** Submissions made while disconnected, flushed in order on reconnect. */
  pending: PendingSubmission[] = [];
  offline = false;

  /** One point per observed iteration: IGD/HV, or knee objectives. */
  indicatorHistory: IndicatorPoint[] = [];
  indicatorLabels: string[] = [];

  ingestCreated(reply: CreatedReply): void {
    this.problem = reply.problem;
    this.referenceFront = reply.reference_front;
    this.sliders = new Array<number>(reply.problem.objectives).fill(1);
    this.indicatorHistory = [];
    this.indicatorLabels = reply.problem.has_reference_front
      ? ["igd", "hv"]
      : objectiveLabels(reply.problem).map((name) => `knee ${name}`);
  }

  ingestSnapshot(snap: StateSnapshot): void {
    this.snapshot = snap;
    this.offline = false;
    this.recordIndicators(snap);
    if (this.selectedIndex !== null && this.selectedIndex >= snap.front.length) {
      this.selectedIndex = null;
    }
  }

  private recordIndicators(snap: StateSnapshot): void {
    const last = this.indicatorHistory[this.indicatorHistory.length - 1];
    if (last && last.iteration === snap.iteration) {
      return;
    }
    let values: number[];
    if (snap.trace_tail !== null) {
      const tail = snap.trace_tail;
      if (tail.igd.length === 0) return;
      values = [tail.igd[tail.igd.length - 1], tail.hv[tail.hv.length - 1]];
    } else {
      if (snap.front.length === 0) return;
      values = snap.front[kneeIndex(snap.front, snap.weights)].slice();
    }
    this.indicatorHistory.push({ iteration: snap.iteration, values });
  }

  /** Weights the engine is currently steering with. */
  get activeWeights(): number[] | null {
    return this.snapshot ? this.snapshot.weights : null;
  }

  get lastFeedback(): FeedbackEvent | null {
    return this.snapshot ? this.snapshot.last_feedback : null;
  }

  get finished(): boolean {
    return this.snapshot !== null && this.snapshot.status === "finished";
  }

  /** Knee member index under the active weights, or null for an empty front. */
  get knee(): number | null {
    const snap = this.snapshot;
    if (!snap || snap.front.length === 0) {
      return null;
    }
    return kneeIndex(snap.front, snap.weights);
  }

  markOffline(submission: PendingSubmission): void {
    this.pending.push(submission);
    this.offline = true;
  }

  takePending(): PendingSubmission[] {
    const queued = this.pending;
    this.pending = [];
    return queued;
  }
}
