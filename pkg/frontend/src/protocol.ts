/**
 * Wire types and the request/response client for the session protocol.
 *
 * The console is a pure client: every action it triggers is one JSON
 * message on POST /session, so any behavior seen here can be reproduced
 * by scripting the same message sequence.
 */

export interface ProblemInfo {
  id: string;
  dimension: number;
  objectives: number;
  lower: number[];
  upper: number[];
  has_reference_front: boolean;
}

export interface CreatedReply {
  type: "created";
  session: string;
  problem: ProblemInfo;
  reference_front: number[][] | null;
}

export interface FeedbackEvent {
  iteration: number;
  event: number;
  expert: number[] | null;
  weights: number[];
  gamma?: number;
  skipped: boolean;
}

export interface TraceTail {
  igd: number[];
  hv: number[];
}

export interface StateSnapshot {
  type: "state";
  session: string;
  iteration: number;
  max_iterations: number;
  c1: number;
  front: number[][];
  decisions: number[][];
  weights: number[];
  last_feedback: FeedbackEvent | null;
  trace_tail: TraceTail | null;
  status: "paused" | "running" | "finished";
}

export interface FeedbackAck {
  type: "ack";
  applies_at: number | null;
  weights: number[];
  no_effect?: boolean;
}

export interface RecordReply {
  type: "record";
  session: string;
  record: Record<string, unknown>;
}

export interface ErrorReply {
  type: "error";
  code: string;
  detail: string;
}

export type Reply =
  | CreatedReply
  | StateSnapshot
  | FeedbackAck
  | RecordReply
  | ErrorReply;

/** An error reply from the server, as opposed to a transport failure. */
export class ProtocolError extends Error {
  code: string;
  detail: string;

  constructor(code: string, detail: string) {
    super(`${code}: ${detail}`);
    this.name = "ProtocolError";
    this.code = code;
    this.detail = detail;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class SessionClient {
  session: string | null = null;

  private baseUrl: string;
  private fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    // trailing slash would double up in the URLs below
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async post(message: object): Promise<Reply> {
    const resp = await this.fetchFn(`${this.baseUrl}/session`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(message),
    });
    const reply = (await resp.json()) as Reply;
    if (reply.type === "error") {
      throw new ProtocolError(reply.code, reply.detail);
    }
    return reply;
  }

  async create(config: object): Promise<CreatedReply> {
    const reply = (await this.post({ type: "create", config })) as CreatedReply;
    this.session = reply.session;
    return reply;
  }

  async advance(n: number): Promise<StateSnapshot> {
    return (await this.post({
      type: "advance",
      session: this.session,
      n,
    })) as StateSnapshot;
  }

  async snapshot(): Promise<StateSnapshot> {
    return (await this.post({
      type: "snapshot",
      session: this.session,
    })) as StateSnapshot;
  }

  async feedback(weights: number[], gamma?: number): Promise<FeedbackAck> {
    const message: Record<string, unknown> = {
      type: "feedback",
      session: this.session,
      weights,
    };
    if (gamma !== undefined) {
      message.gamma = gamma;
    }
    return (await this.post(message)) as FeedbackAck;
  }

  async record(): Promise<RecordReply> {
    return (await this.post({
      type: "record",
      session: this.session,
    })) as RecordReply;
  }

  async healthy(): Promise<boolean> {
    try {
      const resp = await this.fetchFn(`${this.baseUrl}/healthz`);
      return resp.ok;
    } catch {
      return false;
    }
  }
}
