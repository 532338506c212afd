import { describe, expect, it } from "vitest";

import { ControlApi, RunController, TimerApi } from "../src/controls.js";
import { FeedbackAck, ProtocolError, StateSnapshot } from "../src/protocol.js";
import { ConsoleModel } from "../src/viewModel.js";

function snapshotAt(iteration: number, status: StateSnapshot["status"]): StateSnapshot {
  return {
    type: "state",
    session: "s",
    iteration,
    max_iterations: 100,
    c1: 1.0,
    front: [[0, 1], [1, 0]],
    decisions: [[0], [1]],
    weights: [0.5, 0.5],
    last_feedback: null,
    trace_tail: null,
    status,
  };
}

/** Scripted client: records calls, plays back queued results or faults. */
class FakeClient implements ControlApi {
  advances: number[] = [];
  feedbacks: Array<{ weights: number[]; gamma?: number }> = [];
  snapshots = 0;
  iteration = 0;
  feedbackResults: Array<FeedbackAck | Error> = [];
  holdAdvance: ((snap: StateSnapshot) => void) | null = null;
  failSnapshots = false;

  advance(n: number): Promise<StateSnapshot> {
    this.advances.push(n);
    this.iteration += n;
    const snap = snapshotAt(this.iteration, this.iteration >= 100 ? "finished" : "paused");
    if (this.holdAdvance) {
      return new Promise((resolve) => {
        this.holdAdvance = resolve as (snap: StateSnapshot) => void;
      });
    }
    return Promise.resolve(snap);
  }

  snapshot(): Promise<StateSnapshot> {
    this.snapshots += 1;
    if (this.failSnapshots) {
      return Promise.reject(new TypeError("fetch failed"));
    }
    return Promise.resolve(snapshotAt(this.iteration, "paused"));
  }

  feedback(weights: number[], gamma?: number): Promise<FeedbackAck> {
    this.feedbacks.push({ weights, gamma });
    const next = this.feedbackResults.shift();
    if (next instanceof Error) {
      return Promise.reject(next);
    }
    return Promise.resolve(next ?? { type: "ack", applies_at: 25, weights });
  }

  record() {
    return Promise.resolve({
      type: "record" as const,
      session: "s",
      record: { seed: 1, metrics: { igd: 0.01 } },
    });
  }
}

/** Manual timer: ticks only when the test says so. */
function manualTimer(): TimerApi & { tick(): void; active(): boolean } {
  let fn: (() => void) | null = null;
  return {
    set(callback) {
      fn = callback;
      return 1;
    },
    clear() {
      fn = null;
    },
    tick() {
      fn?.();
    },
    active() {
      return fn !== null;
    },
  };
}

function setup(opts: { tau?: number } = {}) {
  const client = new FakeClient();
  const model = new ConsoleModel();
  const timers = manualTimer();
  const controller = new RunController(client, model, {
    tau: opts.tau ?? 25,
    playChunk: 1,
    timers,
  });
  return { client, model, timers, controller };
}

describe("stepping and playing", () => {
  it("step advances exactly one feedback window", async () => {
    const { client, controller } = setup({ tau: 25 });
    const snap = await controller.step();
    expect(client.advances).toEqual([25]);
    expect(snap?.iteration).toBe(25);
  });

  it("play ticks issue chunked advances until pause", async () => {
    const { client, model, timers, controller } = setup();
    controller.play();
    expect(model.playing).toBe(true);
    timers.tick();
    await Promise.resolve();
    timers.tick();
    await Promise.resolve();
    expect(client.advances).toEqual([1, 1]);
    controller.pause();
    expect(model.playing).toBe(false);
    timers.tick();
    expect(client.advances).toEqual([1, 1]);
  });

  it("skips a tick while the previous advance is still in flight", async () => {
    const { client, timers, controller } = setup();
    client.holdAdvance = () => undefined;
    controller.play();
    timers.tick();
    timers.tick();
    timers.tick();
    expect(client.advances).toEqual([1]);
  });

  it("stops the timer and refuses controls once the run finishes", async () => {
    const { client, model, timers, controller } = setup();
    client.iteration = 99;
    controller.play();
    timers.tick();
    await Promise.resolve();
    await Promise.resolve();
    expect(model.finished).toBe(true);
    expect(model.playing).toBe(false);
    expect(timers.active()).toBe(false);

    expect(await controller.step()).toBeNull();
    controller.play();
    expect(timers.active()).toBe(false);
    expect(client.advances).toEqual([1]);
  });
});

describe("weight submission", () => {
  it("submits normalized sliders and keeps the ack echo as the requested vector", async () => {
    const { client, model, controller } = setup();
    model.sliders = [60, 20, 20];
    const ack = await controller.submitWeights();
    expect(client.feedbacks).toEqual([{ weights: [0.6, 0.2, 0.2], gamma: undefined }]);
    expect(ack?.applies_at).toBe(25);
    expect(model.requestedWeights).toEqual([0.6, 0.2, 0.2]);
    expect(model.lastAck).toBe(ack);
    expect(model.validationMessage).toBeNull();
  });

  it("blocks an all-zero slider block inline without touching the network", async () => {
    const { client, model, controller } = setup();
    model.sliders = [0, 0, 0];
    const ack = await controller.submitWeights();
    expect(ack).toBeNull();
    expect(client.feedbacks).toEqual([]);
    expect(model.validationMessage).toContain("positive sum");
    expect(model.pending).toEqual([]);
  });

  it("shows server rejections inline instead of queueing them", async () => {
    const { client, model, controller } = setup();
    model.sliders = [1, 1];
    client.feedbackResults = [new ProtocolError("bad_weights", "expected 3 weights, got 2")];
    const ack = await controller.submitWeights();
    expect(ack).toBeNull();
    expect(model.validationMessage).toContain("expected 3");
    expect(model.pending).toEqual([]);
    expect(model.offline).toBe(false);
  });

  it("queues transport failures with a visible warning and flushes them in order", async () => {
    const { client, model, controller } = setup();
    model.sliders = [3, 1];
    client.feedbackResults = [new TypeError("fetch failed"), new TypeError("fetch failed")];
    await controller.submitWeights();
    model.sliders = [1, 3];
    await controller.submitWeights();
    expect(model.offline).toBe(true);
    expect(model.pending.map((p) => p.weights)).toEqual([
      [0.75, 0.25],
      [0.25, 0.75],
    ]);

    // server reachable again: next poll flushes both submissions in order
    const flushed = await controller.poll();
    expect(flushed).not.toBeNull();
    expect(model.offline).toBe(false);
    expect(model.pending).toEqual([]);
    expect(client.feedbacks.slice(2).map((f) => f.weights)).toEqual([
      [0.75, 0.25],
      [0.25, 0.75],
    ]);
    expect(model.requestedWeights).toEqual([0.25, 0.75]);
  });

  it("requeues the remainder when the flush itself dies mid-way", async () => {
    const { client, model, controller } = setup();
    model.pending = [{ weights: [1, 0] }, { weights: [0, 1] }];
    client.feedbackResults = [
      { type: "ack", applies_at: 25, weights: [1, 0] },
      new TypeError("fetch failed"),
    ];
    await controller.flushPending();
    expect(model.pending.map((p) => p.weights)).toEqual([[0, 1]]);
    expect(model.offline).toBe(true);
  });
});

describe("polling and stopping", () => {
  it("ignores overlapping polls and marks the model offline on faults", async () => {
    const { client, model, controller } = setup();
    const first = controller.poll();
    const second = controller.poll();
    expect(await second).toBeNull();
    expect(await first).not.toBeNull();
    expect(client.snapshots).toBe(1);

    client.failSnapshots = true;
    expect(await controller.poll()).toBeNull();
    expect(model.offline).toBe(true);
  });

  it("stop pauses playback and hands over the record for download", async () => {
    const { model, timers, controller } = setup();
    controller.play();
    const { filename, text } = await controller.stop();
    expect(model.playing).toBe(false);
    expect(timers.active()).toBe(false);
    expect(filename).toBe("run-s.json");
    expect(JSON.parse(text)).toEqual({ seed: 1, metrics: { igd: 0.01 } });
  });
});
