/**
 * DOM wiring for the steering console page.
 *
 * All state lives in ConsoleModel and all traffic goes through
 * RunController; this file only moves values between the DOM and those
 * two, and repaints on a 4 Hz snapshot poll.
 */

import { RunController } from "./controls.js";
import { SessionClient } from "./protocol.js";
import { renderFront, renderTimeline, renderWeightsReadout } from "./render.js";
import { ConsoleModel, objectiveLabels } from "./viewModel.js";

const POLL_MS = 250;

let client: SessionClient;
let model: ConsoleModel;
let controller: RunController | null = null;
let pollHandle: number | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function sliderInputs(): HTMLInputElement[] {
  return Array.from(
    el<HTMLDivElement>("sliders").querySelectorAll<HTMLInputElement>("input[type=range]"),
  );
}

function buildSliders(count: number): void {
  const box = el<HTMLDivElement>("sliders");
  box.innerHTML = "";
  const labels = model.problem ? objectiveLabels(model.problem) : [];
  for (let j = 0; j < count; j++) {
    const row = document.createElement("label");
    row.className = "slider-row";
    const name = labels[j] ?? `w${j + 1}`;
    row.innerHTML = `${name} <input type="range" min="0" max="100" step="1" value="50"> <span class="raw">50</span>`;
    box.appendChild(row);
  }
  for (const input of sliderInputs()) {
    input.addEventListener("input", onSliderMoved);
  }
  onSliderMoved();
}

function onSliderMoved(): void {
  const inputs = sliderInputs();
  model.sliders = inputs.map((input) => Number(input.value));
  for (const input of inputs) {
    const raw = input.parentElement?.querySelector(".raw");
    if (raw) raw.textContent = input.value;
  }
}

function setControlsEnabled(): void {
  const finished = model.finished;
  el<HTMLButtonElement>("play").disabled = finished || model.playing;
  el<HTMLButtonElement>("pause").disabled = finished || !model.playing;
  el<HTMLButtonElement>("step").disabled = finished;
  el<HTMLButtonElement>("submit").disabled = finished;
  el<HTMLButtonElement>("stop").disabled = controller === null;
}

function repaint(): void {
  const snap = model.snapshot;
  const labels = model.problem ? objectiveLabels(model.problem) : undefined;
  el<HTMLDivElement>("front").innerHTML = snap
    ? renderFront(snap.front, {
        knee: model.knee,
        selected: model.selectedIndex,
        reference: model.referenceFront,
        labels,
      })
    : "";
  el<HTMLDivElement>("timeline").innerHTML = renderTimeline(
    model.indicatorHistory,
    model.indicatorLabels,
  );
  el<HTMLDivElement>("weights").innerHTML = renderWeightsReadout(
    model.requestedWeights,
    model.activeWeights,
    model.lastAck,
  );

  const status = snap
    ? `${snap.status} t=${snap.iteration}/${snap.max_iterations} c1=${snap.c1.toFixed(4)}`
    : "no session";
  el<HTMLSpanElement>("status").textContent = status;
  el<HTMLSpanElement>("offline").textContent = model.offline
    ? `server unreachable, ${model.pending.length} submission(s) queued`
    : "";
  el<HTMLSpanElement>("validation").textContent = model.validationMessage ?? "";
  setControlsEnabled();
}

async function createSession(): Promise<void> {
  const base = el<HTMLInputElement>("base-url").value;
  const problem = el<HTMLInputElement>("problem").value;
  const iters = Number(el<HTMLInputElement>("iters").value);
  const tau = Number(el<HTMLInputElement>("tau").value);
  const seed = Number(el<HTMLInputElement>("seed").value);

  client = new SessionClient(base);
  model = new ConsoleModel();
  const created = await client.create({
    problem,
    pop: 100,
    iters,
    archive: 100,
    seed,
    dmil: { enabled: true, tau },
  });
  model.ingestCreated(created);
  controller = new RunController(client, model, { tau });
  buildSliders(created.problem.objectives);
  el<HTMLSpanElement>("session-id").textContent = created.session;

  if (pollHandle !== null) {
    window.clearInterval(pollHandle);
  }
  pollHandle = window.setInterval(() => {
    void controller?.poll().then(() => repaint());
  }, POLL_MS);
  await controller.poll();
  repaint();
}

function download(filename: string, text: string): void {
  const blob = new Blob([text], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

function init(): void {
  el<HTMLButtonElement>("create").addEventListener("click", () => {
    void createSession().catch((err) => {
      el<HTMLSpanElement>("validation").textContent = String(err);
    });
  });
  el<HTMLButtonElement>("play").addEventListener("click", () => {
    controller?.play();
    repaint();
  });
  el<HTMLButtonElement>("pause").addEventListener("click", () => {
    controller?.pause();
    repaint();
  });
  el<HTMLButtonElement>("step").addEventListener("click", () => {
    void controller?.step().then(() => repaint());
  });
  el<HTMLButtonElement>("submit").addEventListener("click", () => {
    void controller?.submitWeights().then(() => repaint());
  });
  el<HTMLButtonElement>("stop").addEventListener("click", () => {
    void controller?.stop().then(({ filename, text }) => {
      download(filename, text);
      repaint();
    });
  });
  el<HTMLDivElement>("front").addEventListener("click", (event) => {
    const target = event.target as Element | null;
    const marker = target?.closest<SVGCircleElement>("circle.pt");
    if (marker && marker.dataset.i !== undefined) {
      model.selectedIndex = Number(marker.dataset.i);
      repaint();
    }
  });
}

if (typeof document !== "undefined") {
  init();
}
