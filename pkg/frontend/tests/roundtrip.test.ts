/**
 * End-to-end checks against the real backend over HTTP.
 *
 * A server process is spawned once for the file; every assertion here
 * goes through the same client/model/controller path the page uses, so
 * what these tests verify is exactly what the console displays.
 */

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { RunController } from "../src/controls.js";
import { ProtocolError, SessionClient } from "../src/protocol.js";
import { renderFront, renderWeightsReadout } from "../src/render.js";
import {
  ConsoleModel,
  blendWeights,
  formatWeights,
  normalizeSliders,
} from "../src/viewModel.js";

const PORT = 8460 + (process.pid % 400);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let serverLog = "";

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 45_000;
  while (Date.now() < deadline) {
    if (server && server.exitCode !== null) {
      break;
    }
    try {
      const resp = await fetch(`${BASE}/healthz`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error(`backend did not come up on ${BASE}\n${serverLog}`);
}

beforeAll(async () => {
  server = spawn("qihsi", ["serve", "--host", "127.0.0.1", "--port", String(PORT)], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  server.stdout?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  server.stderr?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  await waitForServer();
}, 60_000);

afterAll(() => {
  server?.kill();
});

function span(html: string, cls: string): string {
  const match = html.match(new RegExp(`<span class="${cls}">([^<]*)</span>`));
  if (!match) {
    throw new Error(`no <span class="${cls}"> in:\n${html}`);
  }
  return match[1];
}

describe("console round trip", () => {
  it(
    "slider submission becomes the blended active weights after one window",
    async () => {
      const client = new SessionClient(BASE);
      const model = new ConsoleModel();
      const controller = new RunController(client, model, { tau: 25 });

      const created = await client.create({
        problem: "adas8",
        pop: 20,
        iters: 100,
        archive: 100,
        seed: 3,
        dmil: { enabled: true, tau: 25, gamma: 0.3 },
      });
      model.ingestCreated(created);
      expect(created.problem.objectives).toBe(3);

      await controller.poll();
      const before = model.activeWeights!.slice();

      // move the sliders to (60, 20, 20) and submit
      model.sliders = [60, 20, 20];
      const ack = await controller.submitWeights();
      expect(ack).not.toBeNull();
      expect(ack!.weights).toEqual(normalizeSliders([60, 20, 20]));
      expect(ack!.applies_at).toBe(25);
      expect(ack!.no_effect).toBeUndefined();

      // the requested readout renders the ack payload verbatim
      let html = renderWeightsReadout(model.requestedWeights, model.activeWeights, model.lastAck);
      expect(span(html, "requested")).toBe(formatWeights(ack!.weights));
      expect(html).toContain("applies at iteration 25");

      // step exactly one feedback window
      const snap = await controller.step();
      expect(snap).not.toBeNull();
      expect(snap!.iteration).toBe(25);

      const event = snap!.last_feedback!;
      expect(event.skipped).toBe(false);
      expect(event.iteration).toBe(25);
      expect(event.expert).toEqual(ack!.weights);

      // displayed active weights == the event-log blend, bit for bit,
      // and the local recomputation from the ack payload agrees
      expect(model.activeWeights).toEqual(event.weights);
      expect(blendWeights(before, ack!.weights, 0.3)).toEqual(event.weights);

      html = renderWeightsReadout(model.requestedWeights, model.activeWeights, model.lastAck);
      expect(span(html, "active")).toBe(formatWeights(event.weights));
      expect(span(html, "requested")).toBe(formatWeights(ack!.weights));

      // the blend sticks for the rest of the window
      const later = await client.advance(10);
      expect(later.weights).toEqual(event.weights);
    },
    60_000,
  );

  it(
    "renders a full 100-point snapshot without dropping markers",
    async () => {
      const client = new SessionClient(BASE);
      const model = new ConsoleModel();
      const created = await client.create({
        problem: "zdt1",
        pop: 100,
        iters: 60,
        archive: 100,
        seed: 3,
      });
      model.ingestCreated(created);
      expect(created.reference_front).not.toBeNull();

      const snap = await client.advance(40);
      model.ingestSnapshot(snap);
      expect(snap.front.length).toBe(100);

      const svg = renderFront(snap.front, {
        knee: model.knee,
        reference: model.referenceFront,
      });
      expect((svg.match(/class="pt"/g) ?? []).length).toBe(100);
      expect(svg).toContain('class="ref"');
      expect(svg).toContain('class="knee"');
      expect(svg).not.toContain("NaN");

      // the trace tail feeds the indicator history on reference problems
      expect(model.indicatorLabels).toEqual(["igd", "hv"]);
      expect(model.indicatorHistory.length).toBeGreaterThan(0);
    },
    60_000,
  );

  it(
    "surfaces backend rejections with their protocol codes",
    async () => {
      const client = new SessionClient(BASE);
      expect(await client.healthy()).toBe(true);
      await client.create({
        problem: "adas8",
        pop: 8,
        iters: 10,
        archive: 10,
        seed: 1,
        dmil: { enabled: true, tau: 5 },
      });

      const arity = await client.feedback([1, 0]).catch((err) => err);
      expect(arity).toBeInstanceOf(ProtocolError);
      expect(arity.code).toBe("bad_weights");

      const ghost = new SessionClient(BASE);
      ghost.session = "nope";
      const missing = await ghost.snapshot().catch((err) => err);
      expect(missing).toBeInstanceOf(ProtocolError);
      expect(missing.code).toBe("no_such_session");

      const config = await new SessionClient(BASE)
        .create({ problem: "zdt999" })
        .catch((err) => err);
      expect(config).toBeInstanceOf(ProtocolError);
      expect(config.code).toBe("bad_config");
    },
    60_000,
  );
});
