"""The single on-the-wire unit: a labelled JSON payload list.

One UTF-8 text frame per message, ``{"label": str, "payload": [...]}``,
label first. The label doubles as the branch selector; ``__``-prefixed
labels are reserved for the session handshake and teardown.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

JsonValue = Any

CONNECT_LABEL = "__connect"
ACCEPT_LABEL = "__accept"
DISCONNECT_LABEL = "__disconnect"


class MalformedMessage(Exception):
    """A frame that is not a valid wire message for its expected shape."""


@dataclass(frozen=True)
class WireMessage:
    label: str
    payload: list[JsonValue] = field(default_factory=list)

    def encode(self) -> str:
        return json.dumps(
            {"label": self.label, "payload": self.payload},
            ensure_ascii=False,
            separators=(",", ":"),
        )


def decode_frame(text: str) -> WireMessage:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedMessage(f"frame is not JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"label", "payload"}:
        raise MalformedMessage('frame must be {"label": ..., "payload": [...]}')
    label = doc["label"]
    payload = doc["payload"]
    if not isinstance(label, str) or not label:
        raise MalformedMessage("frame label must be a nonempty string")
    if not isinstance(payload, list):
        raise MalformedMessage("frame payload must be a list")
    return WireMessage(label, payload)


def expect_message(msg: WireMessage, label: str, arity: int) -> list[JsonValue]:
    """Validate label and payload arity, returning the payload list."""
    if msg.label != label:
        raise MalformedMessage(f"expected label {label!r}, got {msg.label!r}")
    if len(msg.payload) != arity:
        raise MalformedMessage(
            f"{label} carries {arity} payload item(s), frame has {len(msg.payload)}"
        )
    return msg.payload


def connect_frame(protocol: str, role: str) -> WireMessage:
    return WireMessage(CONNECT_LABEL, [{"protocol": protocol, "role": role}])


def parse_connect_frame(msg: WireMessage) -> tuple[str, str]:
    payload = expect_message(msg, CONNECT_LABEL, 1)
    head = payload[0]
    if (
        not isinstance(head, dict)
        or not isinstance(head.get("protocol"), str)
        or not isinstance(head.get("role"), str)
    ):
        raise MalformedMessage("handshake payload must carry protocol and role names")
    return head["protocol"], head["role"]


def accept_frame() -> WireMessage:
    return WireMessage(ACCEPT_LABEL, [])


def disconnect_frame() -> WireMessage:
    return WireMessage(DISCONNECT_LABEL, [])


# -- identity codecs for builtin payload targets -------------------------------

_BUILTIN_CODECS = {
    "builtins.int": int,
    "builtins.str": str,
    "builtins.float": float,
    "builtins.bool": bool,
}


def is_builtin_target(path: str) -> bool:
    return path in _BUILTIN_CODECS


def decode_builtin(path: str, value: JsonValue) -> JsonValue:
    expected = _BUILTIN_CODECS[path]
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if expected is int and isinstance(value, bool):
        raise MalformedMessage("expected an integer, got a boolean")
    if not isinstance(value, expected):
        raise MalformedMessage(
            f"expected {expected.__name__}, got {type(value).__name__}"
        )
    return value
