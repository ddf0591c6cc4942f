// Wire protocol: one JSON text frame per message, {"label", "payload"},
// byte-compatible with the server's encoder (label first, compact).

export type JsonValue =
  | null
  | boolean
  | number
  | string
  | JsonValue[]
  | { [key: string]: JsonValue };

export interface WireMessage {
  label: string;
  payload: JsonValue[];
}

export const CONNECT_LABEL = "__connect";
export const ACCEPT_LABEL = "__accept";
export const DISCONNECT_LABEL = "__disconnect";

export class MalformedFrame extends Error {}

export function encodeFrame(msg: WireMessage): string {
  return JSON.stringify({ label: msg.label, payload: msg.payload });
}

export function decodeFrame(text: string): WireMessage {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new MalformedFrame(`frame is not JSON: ${err}`);
  }
  if (
    typeof doc !== "object" ||
    doc === null ||
    Array.isArray(doc) ||
    Object.keys(doc).sort().join(",") !== "label,payload"
  ) {
    throw new MalformedFrame('frame must be {"label": ..., "payload": [...]}');
  }
  const { label, payload } = doc as { label: unknown; payload: unknown };
  if (typeof label !== "string" || label.length === 0) {
    throw new MalformedFrame("frame label must be a nonempty string");
  }
  if (!Array.isArray(payload)) {
    throw new MalformedFrame("frame payload must be a list");
  }
  return { label, payload: payload as JsonValue[] };
}

export function connectFrame(protocol: string, role: string): WireMessage {
  return { label: CONNECT_LABEL, payload: [{ protocol, role }] };
}
