// Endpoint FSM loaded from the toolchain's JSON export, plus a dynamic
// conformance monitor. The browser has no typestate checking, so every
// frame in either direction is validated against the machine instead.

export type StateKind = "output" | "input" | "terminal";
export type ActionKind = "send" | "receive" | "connect" | "disconnect";
export type Direction = "out" | "in";

export interface EfsmTransition {
  from: number;
  to: number;
  action: ActionKind;
  peer: string;
  label: string;
  payloads: string[];
}

export interface EfsmJson {
  protocol: string;
  role: string;
  initial: number;
  terminal: number | null;
  states: { id: number; kind: StateKind }[];
  transitions: EfsmTransition[];
}

export interface FusedEdge {
  direction: Direction;
  peer: string;
  label: string;
  payloads: string[];
  target: number;
}

export class MonitorViolation extends Error {
  constructor(
    message: string,
    readonly state: number,
  ) {
    super(message);
  }
}

export function parseEfsm(doc: unknown): EfsmJson {
  const efsm = doc as EfsmJson;
  if (
    typeof efsm?.protocol !== "string" ||
    typeof efsm?.role !== "string" ||
    !Array.isArray(efsm?.states) ||
    !Array.isArray(efsm?.transitions)
  ) {
    throw new Error("not an EFSM JSON document");
  }
  return efsm;
}

function directionOf(t: EfsmTransition, kind: StateKind): Direction {
  if (t.action === "send") return "out";
  if (t.action === "receive") return "in";
  return kind === "input" ? "in" : "out";
}

/**
 * The machine with label-split intermediates fused away: one edge per
 * wire event, so stepping the monitor is one call per frame. Exports
 * that were not label-split fuse to themselves.
 */
export function fusedEdges(efsm: EfsmJson): Map<number, FusedEdge[]> {
  const kinds = new Map(efsm.states.map((s) => [s.id, s.kind]));
  const outgoing = new Map<number, EfsmTransition[]>();
  for (const t of efsm.transitions) {
    const list = outgoing.get(t.from) ?? [];
    list.push(t);
    outgoing.set(t.from, list);
  }
  const intermediates = new Set<number>();
  for (const [, list] of outgoing) {
    if (list.length >= 2) {
      for (const t of list) intermediates.add(t.to);
    }
  }
  const table = new Map<number, FusedEdge[]>();
  for (const state of efsm.states) {
    if (intermediates.has(state.id)) continue;
    const list = outgoing.get(state.id) ?? [];
    const edges: FusedEdge[] = [];
    if (list.length >= 2) {
      for (const labelEdge of list) {
        const follow = outgoing.get(labelEdge.to) ?? [];
        const payloadEdge = follow[0];
        if (follow.length !== 1 || payloadEdge === undefined) {
          throw new Error(`state ${labelEdge.to} is not a split intermediate`);
        }
        edges.push({
          direction: directionOf(payloadEdge, state.kind),
          peer: payloadEdge.peer,
          label: payloadEdge.label,
          payloads: payloadEdge.payloads,
          target: payloadEdge.to,
        });
      }
    } else {
      for (const t of list) {
        edges.push({
          direction: directionOf(t, state.kind),
          peer: t.peer,
          label: t.label,
          payloads: t.payloads,
          target: t.to,
        });
      }
    }
    table.set(state.id, edges);
  }
  return table;
}

/** Steps one fused edge per wire event; throws on anything off-protocol. */
export class EfsmMonitor {
  state: number;
  private readonly table: Map<number, FusedEdge[]>;
  private readonly terminal: number | null;

  constructor(readonly efsm: EfsmJson) {
    this.state = efsm.initial;
    this.table = fusedEdges(efsm);
    this.terminal = efsm.terminal;
  }

  get finished(): boolean {
    return this.terminal !== null && this.state === this.terminal;
  }

  enabled(): FusedEdge[] {
    return this.table.get(this.state) ?? [];
  }

  step(direction: Direction, peer: string, label: string): FusedEdge {
    for (const edge of this.enabled()) {
      if (
        edge.direction === direction &&
        edge.peer === peer &&
        edge.label === label
      ) {
        this.state = edge.target;
        return edge;
      }
    }
    const options = this.enabled()
      .map((e) => `${e.direction} ${e.label} (${e.peer})`)
      .join(", ");
    throw new MonitorViolation(
      `${this.efsm.role}@S${this.state}: ${direction} '${label}' with ${peer} ` +
        `is not enabled; expected one of [${options || "end of session"}]`,
      this.state,
    );
  }
}
