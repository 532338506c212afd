/**
 * Run pacing and weight submission on top of the session client.
 *
 * Control traffic is serialized: while one advance is in flight the play
 * timer skips its tick instead of stacking requests. Submissions made
 * while the server is unreachable are queued on the model and flushed in
 * order by the next successful poll.
 */

import { FeedbackAck, ProtocolError, RecordReply, StateSnapshot } from "./protocol.js";
import { ConsoleModel, normalizeSliders } from "./viewModel.js";

/** The slice of the session client the controller drives. */
export interface ControlApi {
  advance(n: number): Promise<StateSnapshot>;
  snapshot(): Promise<StateSnapshot>;
  feedback(weights: number[], gamma?: number): Promise<FeedbackAck>;
  record(): Promise<RecordReply>;
}

export interface TimerApi {
  set(fn: () => void, ms: number): unknown;
  clear(handle: unknown): void;
}

const defaultTimers: TimerApi = {
  set: (fn, ms) => setInterval(fn, ms),
  clear: (handle) => clearInterval(handle as Parameters<typeof clearInterval>[0]),
};

export interface ControllerOptions {
  /** Feedback window length; step() advances exactly this many iterations. */
  tau?: number;
  /** Iterations per play tick. */
  playChunk?: number;
  playIntervalMs?: number;
  timers?: TimerApi;
}

export class RunController {
  readonly tau: number;

  private client: ControlApi;
  private model: ConsoleModel;
  private playChunk: number;
  private playIntervalMs: number;
  private timers: TimerApi;
  private playHandle: unknown = null;
  private advancing = false;
  private polling = false;

  constructor(client: ControlApi, model: ConsoleModel, opts: ControllerOptions = {}) {
    this.client = client;
    this.model = model;
    this.tau = opts.tau ?? 25;
    this.playChunk = opts.playChunk ?? 1;
    this.playIntervalMs = opts.playIntervalMs ?? 250;
    this.timers = opts.timers ?? defaultTimers;
  }

  private async advance(n: number): Promise<StateSnapshot | null> {
    if (this.advancing || this.model.finished) {
      return null;
    }
    this.advancing = true;
    try {
      const snap = await this.client.advance(n);
      this.model.ingestSnapshot(snap);
      if (this.model.finished) {
        this.pause();
      }
      return snap;
    } catch (err) {
      if (!(err instanceof ProtocolError)) {
        this.model.offline = true;
      }
      throw err;
    } finally {
      this.advancing = false;
    }
  }

  /** Advance exactly one feedback window. */
  async step(): Promise<StateSnapshot | null> {
    return this.advance(this.tau);
  }

  play(): void {
    if (this.playHandle !== null || this.model.finished) {
      return;
    }
    this.model.playing = true;
    this.playHandle = this.timers.set(() => {
      void this.advance(this.playChunk).catch(() => undefined);
    }, this.playIntervalMs);
  }

  pause(): void {
    if (this.playHandle !== null) {
      this.timers.clear(this.playHandle);
      this.playHandle = null;
    }
    this.model.playing = false;
  }

  /**
   * Normalize the sliders and submit them as feedback. All-zero sliders
   * are rejected inline; a transport failure queues the submission with
   * the offline warning set.
   */
  async submitWeights(gamma?: number): Promise<FeedbackAck | null> {
    const weights = normalizeSliders(this.model.sliders);
    if (weights === null) {
      this.model.validationMessage = "sliders must be non-negative with a positive sum";
      return null;
    }
    this.model.validationMessage = null;
    this.model.requestedWeights = weights;
    try {
      const ack = await this.client.feedback(weights, gamma);
      this.model.lastAck = ack;
      this.model.requestedWeights = ack.weights;
      return ack;
    } catch (err) {
      if (err instanceof ProtocolError) {
        this.model.validationMessage = err.detail;
        return null;
      }
      this.model.markOffline({ weights, gamma });
      return null;
    }
  }

  /** Re-send submissions queued while offline, oldest first. */
  async flushPending(): Promise<void> {
    if (this.model.pending.length === 0) {
      return;
    }
    const queued = this.model.takePending();
    for (let i = 0; i < queued.length; i++) {
      try {
        const ack = await this.client.feedback(queued[i].weights, queued[i].gamma);
        this.model.lastAck = ack;
        this.model.requestedWeights = ack.weights;
      } catch (err) {
        if (err instanceof ProtocolError) {
          this.model.validationMessage = err.detail;
          continue;
        }
        // still unreachable: put the rest back and give up for now
        this.model.pending = queued.slice(i).concat(this.model.pending);
        this.model.offline = true;
        return;
      }
    }
  }

  /** One snapshot poll; on success also flushes the offline queue. */
  async poll(): Promise<StateSnapshot | null> {
    if (this.polling) {
      return null;
    }
    this.polling = true;
    try {
      const snap = await this.client.snapshot();
      this.model.ingestSnapshot(snap);
      await this.flushPending();
      return snap;
    } catch (err) {
      if (!(err instanceof ProtocolError)) {
        this.model.offline = true;
      }
      return null;
    } finally {
      this.polling = false;
    }
  }

  /** Pause, fetch the full run record, and hand it over for download. */
  async stop(): Promise<{ filename: string; text: string }> {
    this.pause();
    const reply = await this.client.record();
    return {
      filename: `run-${reply.session}.json`,
      text: JSON.stringify(reply.record, null, 2),
    };
  }
}
