import { describe, expect, it } from "vitest";

import { renderFront, renderTimeline, renderWeightsReadout } from "../src/render.js";
import { formatWeights } from "../src/viewModel.js";

function count(haystack: string, needle: RegExp): number {
  return (haystack.match(needle) ?? []).length;
}

const MARKER = /class="pt"/g;

function zdtLikeFront(n: number): number[][] {
  return Array.from({ length: n }, (_, i) => {
    const x = i / (n - 1);
    return [x, 1 - Math.sqrt(x)];
  });
}

describe("renderFront, two objectives", () => {
  it("renders one marker per member for a 100-point snapshot", () => {
    const svg = renderFront(zdtLikeFront(100));
    expect(count(svg, MARKER)).toBe(100);
    expect(count(svg, /<g class="panel"/g)).toBe(1);
  });

  it("overlays the reference curve when one is available", () => {
    const svg = renderFront(zdtLikeFront(40), { reference: zdtLikeFront(200) });
    expect(count(svg, MARKER)).toBe(40);
    expect(count(svg, /class="ref"/g)).toBe(1);
    expect(svg).toContain("polyline");
  });

  it("rings the knee at the same spot as its marker", () => {
    const front = zdtLikeFront(10);
    const svg = renderFront(front, { knee: 4 });
    expect(count(svg, /class="knee"/g)).toBe(1);
    const marker = svg.match(/<circle class="pt" data-i="4" cx="([\d.]+)" cy="([\d.]+)"/);
    const knee = svg.match(/<circle class="knee" cx="([\d.]+)" cy="([\d.]+)"/);
    expect(marker).not.toBeNull();
    expect(knee).not.toBeNull();
    expect(knee![1]).toBe(marker![1]);
    expect(knee![2]).toBe(marker![2]);
  });

  it("marks the selected member with its own ring", () => {
    const svg = renderFront(zdtLikeFront(10), { selected: 2 });
    expect(count(svg, /class="sel"/g)).toBe(1);
  });

  it("renders an empty-state notice for an empty archive", () => {
    const svg = renderFront([]);
    expect(svg).toContain('class="empty"');
    expect(count(svg, MARKER)).toBe(0);
    expect(svg).not.toContain("circle");
  });

  it("keeps a degenerate single-point front free of NaN coordinates", () => {
    const svg = renderFront([[0.5, 0.5]], { knee: 0 });
    expect(svg).not.toContain("NaN");
    expect(count(svg, MARKER)).toBe(1);
  });
});

describe("renderFront, three objectives", () => {
  const front = [
    [0.1, 0.8, 0.3],
    [0.5, 0.2, 0.6],
    [0.9, 0.4, 0.1],
  ];

  it("lays out three pairwise panels with one marker per member each", () => {
    const svg = renderFront(front, { labels: ["SI", "EEM", "CPS"] });
    expect(count(svg, /<g class="panel"/g)).toBe(3);
    expect(count(svg, MARKER)).toBe(3 * front.length);
    // panel order: SI-EEM, SI-CPS, EEM-CPS
    const axes = [...svg.matchAll(/<text class="axis"[^>]*>([A-Z]+)<\/text>/g)].map(
      (m) => m[1],
    );
    expect(axes).toEqual(["SI", "EEM", "SI", "CPS", "EEM", "CPS"]);
  });

  it("repeats the knee ring in every panel", () => {
    const svg = renderFront(front, { knee: 1 });
    expect(count(svg, /class="knee"/g)).toBe(3);
  });

  it("rejects objective counts it cannot lay out", () => {
    expect(() => renderFront([[1, 2, 3, 4]])).toThrow();
  });
});

describe("renderTimeline", () => {
  it("draws one series per label with a legend", () => {
    const history = [
      { iteration: 10, values: [0.5, 0.1] },
      { iteration: 20, values: [0.4, 0.2] },
      { iteration: 30, values: [0.3, 0.25] },
    ];
    const svg = renderTimeline(history, ["igd", "hv"]);
    expect(count(svg, /<polyline class="series/g)).toBe(2);
    expect(svg).toContain(">igd<");
    expect(svg).toContain(">hv<");
    expect(svg).not.toContain("NaN");
  });

  it("shows an empty notice before any samples arrive", () => {
    const svg = renderTimeline([], ["igd", "hv"]);
    expect(svg).toContain('class="empty"');
  });

  it("survives a single sample and a flat series", () => {
    const one = renderTimeline([{ iteration: 5, values: [1.0] }], ["igd"]);
    expect(one).not.toContain("NaN");
    const flat = renderTimeline(
      [
        { iteration: 5, values: [1.0] },
        { iteration: 10, values: [1.0] },
      ],
      ["igd"],
    );
    expect(flat).not.toContain("NaN");
  });
});

describe("renderWeightsReadout", () => {
  it("prints requested and active vectors at full wire precision", () => {
    const requested = [0.6, 0.2, 0.2];
    const active = [0.586666, 0.206666, 0.206666];
    const html = renderWeightsReadout(requested, active, null);
    const req = html.match(/<span class="requested">([^<]*)<\/span>/);
    const act = html.match(/<span class="active">([^<]*)<\/span>/);
    expect(req![1]).toBe(formatWeights(requested));
    expect(act![1]).toBe(formatWeights(active));
  });

  it("describes the pending ack", () => {
    const html = renderWeightsReadout([1, 0], [0.5, 0.5], {
      type: "ack",
      applies_at: 25,
      weights: [1, 0],
    });
    expect(html).toContain("applies at iteration 25");
    const spent = renderWeightsReadout([1, 0], [0.5, 0.5], {
      type: "ack",
      applies_at: null,
      weights: [1, 0],
      no_effect: true,
    });
    expect(spent).toContain("run ends");
  });

  it("shows placeholders before any session exists", () => {
    const html = renderWeightsReadout(null, null, null);
    expect(count(html, /\(none\)/g)).toBe(2);
  });
});
