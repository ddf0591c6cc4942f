"""Endpoint finite state machines: construction, label splitting, export.

States are numbered densely in deterministic traversal order, so two
runs over the same input produce identical machines. Structurally equal
local-type continuations (under the same recursion environment) share a
state, which is what makes all branches of a choice converge on a
common successor and keeps the terminal state unique.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable

from .localtype import (
    Branch,
    ConnectTo,
    DisconnectFrom,
    End,
    LocalType,
    Rec,
    RecvMsg,
    RecVar,
    Select,
    SendMsg,
    free_rec_vars,
)

CONNECT_LABEL = "__connect"
DISCONNECT_LABEL = "__disconnect"

OUTPUT = "output"
INPUT = "input"
TERMINAL = "terminal"


@dataclass(frozen=True, order=True)
class Transition:
    source: int
    target: int
    action: str  # "send" | "receive" | "connect" | "disconnect"
    peer: str
    label: str
    payloads: tuple[str, ...]


@dataclass(frozen=True)
class Efsm:
    protocol: str
    role: str
    initial: int
    terminal: int | None
    kinds: tuple[tuple[int, str], ...]  # (state id, kind), ascending by id
    transitions: tuple[Transition, ...]  # canonically sorted

    def kind_of(self, state: int) -> str:
        return dict(self.kinds)[state]

    def states(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.kinds)

    def outgoing(self, state: int) -> tuple[Transition, ...]:
        return tuple(t for t in self.transitions if t.source == state)

    def incoming(self, state: int) -> tuple[Transition, ...]:
        return tuple(t for t in self.transitions if t.target == state)


def make_efsm(
    protocol: str,
    role: str,
    initial: int,
    terminal: int | None,
    kinds: dict[int, str],
    transitions: Iterable[Transition],
) -> Efsm:
    return Efsm(
        protocol,
        role,
        initial,
        terminal,
        tuple(sorted(kinds.items())),
        tuple(sorted(transitions)),
    )


# -- construction from a local type ----------------------------------------


def to_efsm(lt: LocalType, protocol: str, role: str) -> Efsm:
    builder = _Builder()
    initial = builder.state_of(lt, {})
    return make_efsm(
        protocol, role, initial, builder.terminal, builder.kinds, builder.transitions
    )


class _Builder:
    def __init__(self) -> None:
        self.kinds: dict[int, str] = {}
        self.transitions: list[Transition] = []
        self.terminal: int | None = None
        self._memo: dict[tuple[LocalType, tuple[tuple[str, int], ...]], int] = {}
        self._next = 0

    def _alloc(self) -> int:
        sid = self._next
        self._next += 1
        return sid

    @staticmethod
    def _restrict(lt: LocalType, env: dict[str, int]) -> tuple[tuple[str, int], ...]:
        free = free_rec_vars(lt)
        return tuple(sorted((v, s) for v, s in env.items() if v in free))

    def state_of(self, lt: LocalType, env: dict[str, int]) -> int:
        if isinstance(lt, RecVar):
            return env[lt.var]
        key = (lt, self._restrict(lt, env))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        sid = self._alloc()
        self._memo[key] = sid
        self._emit(lt, env, sid)
        return sid

    def _emit(self, lt: LocalType, env: dict[str, int], sid: int) -> None:
        if isinstance(lt, End):
            self.kinds[sid] = TERMINAL
            self.terminal = sid
            return
        if isinstance(lt, Rec):
            inner = dict(env)
            inner[lt.var] = sid
            self._memo[(lt.body, self._restrict(lt.body, inner))] = sid
            self._emit(lt.body, inner, sid)
            return
        if isinstance(lt, SendMsg):
            self.kinds[sid] = OUTPUT
            self._edge(sid, "send", lt.to, lt.label, lt.payloads, lt.cont, env)
            return
        if isinstance(lt, RecvMsg):
            self.kinds[sid] = INPUT
            self._edge(sid, "receive", lt.from_role, lt.label, lt.payloads, lt.cont, env)
            return
        if isinstance(lt, Select):
            self.kinds[sid] = OUTPUT
            for label, body in lt.branches:
                self._edge(sid, "send", lt.to, label, body.payloads, body.cont, env)
            return
        if isinstance(lt, Branch):
            self.kinds[sid] = INPUT
            for label, body in lt.branches:
                self._edge(
                    sid, "receive", lt.from_role, label, body.payloads, body.cont, env
                )
            return
        if isinstance(lt, ConnectTo):
            self.kinds[sid] = INPUT if lt.accepting else OUTPUT
            self._edge(sid, "connect", lt.peer, CONNECT_LABEL, (), lt.cont, env)
            return
        if isinstance(lt, DisconnectFrom):
            self.kinds[sid] = INPUT if lt.accepting else OUTPUT
            self._edge(sid, "disconnect", lt.peer, DISCONNECT_LABEL, (), lt.cont, env)
            return
        raise AssertionError(f"cannot build a state from {lt!r}")

    def _edge(
        self,
        sid: int,
        action: str,
        peer: str,
        label: str,
        payloads: tuple[str, ...],
        cont: LocalType,
        env: dict[str, int],
    ) -> None:
        target = self.state_of(cont, env)
        self.transitions.append(Transition(sid, target, action, peer, label, payloads))


# -- label splitting ---------------------------------------------------------


def split_labels(efsm: Efsm) -> Efsm:
    """Split every multi-transition state into label edges plus one
    payload action through a fresh intermediate state per label.

    States with out-degree <= 1 are untouched, and machines that are
    already in split form come back unchanged (the pass is idempotent).
    """
    by_source: dict[int, list[Transition]] = {}
    for t in efsm.transitions:
        by_source.setdefault(t.source, []).append(t)
    out_degree = {s: len(ts) for s, ts in by_source.items()}
    in_degree: dict[int, int] = {}
    for t in efsm.transitions:
        in_degree[t.target] = in_degree.get(t.target, 0) + 1

    def already_split(trs: list[Transition]) -> bool:
        for t in trs:
            if t.payloads:
                return False
            succ = by_source.get(t.target, [])
            if len(succ) != 1 or in_degree.get(t.target, 0) != 1:
                return False
            follow = succ[0]
            if (follow.action, follow.peer, follow.label) != (
                t.action,
                t.peer,
                t.label,
            ):
                return False
        return True

    kinds = dict(efsm.kinds)
    transitions: list[Transition] = []
    next_id = max(kinds) + 1 if kinds else 0

    for state in sorted(kinds):
        trs = sorted(by_source.get(state, []))
        if len(trs) < 2 or already_split(trs):
            transitions.extend(trs)
            continue
        for t in trs:
            mid = next_id
            next_id += 1
            kinds[mid] = kinds[state]
            transitions.append(
                Transition(state, mid, t.action, t.peer, t.label, ())
            )
            transitions.append(
                Transition(mid, t.target, t.action, t.peer, t.label, t.payloads)
            )
    return make_efsm(
        efsm.protocol, efsm.role, efsm.initial, efsm.terminal, kinds, transitions
    )


# -- invariants ---------------------------------------------------------------


def check_invariants(efsm: Efsm) -> list[str]:
    """The five structural invariants; an empty list means all hold."""
    problems: list[str] = []
    kinds = dict(efsm.kinds)

    if efsm.initial not in kinds:
        problems.append(f"initial state {efsm.initial} does not exist")
    terminals = [s for s, k in efsm.kinds if k == TERMINAL]
    if len(terminals) > 1:
        problems.append(f"multiple terminal states: {terminals}")
    if efsm.terminal is not None and kinds.get(efsm.terminal) != TERMINAL:
        problems.append(f"declared terminal {efsm.terminal} is not a terminal state")
    if efsm.terminal is None and terminals:
        problems.append("terminal state exists but is not declared")

    by_source: dict[int, list[Transition]] = {}
    for t in efsm.transitions:
        by_source.setdefault(t.source, []).append(t)

    for state, kind in efsm.kinds:
        trs = by_source.get(state, [])
        if kind == TERMINAL:
            if trs:
                problems.append(f"terminal state {state} has outgoing transitions")
            continue
        if not trs:
            problems.append(f"non-terminal state {state} has no outgoing transitions")
            continue
        direction = {"send": OUTPUT, "receive": INPUT}.get(trs[0].action, kind)
        expected = OUTPUT if kind == OUTPUT else INPUT
        for t in trs:
            d = {"send": OUTPUT, "receive": INPUT}.get(t.action, kind)
            if d != expected or d != direction:
                problems.append(
                    f"state {state} mixes input and output transitions"
                )
                break
        peers = {t.peer for t in trs}
        if len(peers) > 1:
            problems.append(f"state {state} talks to several peers: {sorted(peers)}")
        labels = [t.label for t in trs]
        if len(set(labels)) != len(labels):
            problems.append(f"state {state} has duplicate transition labels")

    reachable = {efsm.initial}
    frontier = [efsm.initial]
    while frontier:
        s = frontier.pop()
        for t in by_source.get(s, []):
            if t.target not in reachable:
                reachable.add(t.target)
                frontier.append(t.target)
    unreachable = sorted(set(kinds) - reachable)
    if unreachable:
        problems.append(f"unreachable states: {unreachable}")
    missing = sorted(reachable - set(kinds))
    if missing:
        problems.append(f"transitions target unknown states: {missing}")
    return problems


# -- canonical renumbering / isomorphism --------------------------------------


def canonical(efsm: Efsm) -> Efsm:
    """Renumber states in BFS order from the initial state.

    Determinism of transition labels makes this a canonical form:
    two machines are isomorphic iff their canonical forms are equal.
    """
    order: dict[int, int] = {efsm.initial: 0}
    queue = [efsm.initial]
    by_source: dict[int, list[Transition]] = {}
    for t in sorted(efsm.transitions):
        by_source.setdefault(t.source, []).append(t)
    while queue:
        s = queue.pop(0)
        for t in sorted(by_source.get(s, []), key=lambda t: (t.action, t.peer, t.label)):
            if t.target not in order:
                order[t.target] = len(order)
                queue.append(t.target)
    kinds = {order[s]: k for s, k in efsm.kinds if s in order}
    transitions = [
        replace(t, source=order[t.source], target=order[t.target])
        for t in efsm.transitions
        if t.source in order and t.target in order
    ]
    terminal = (
        order[efsm.terminal]
        if efsm.terminal is not None and efsm.terminal in order
        else None
    )
    return make_efsm(efsm.protocol, efsm.role, 0, terminal, kinds, transitions)


def isomorphic(a: Efsm, b: Efsm) -> bool:
    ca, cb = canonical(a), canonical(b)
    return (
        ca.kinds == cb.kinds
        and ca.transitions == cb.transitions
        and ca.initial == cb.initial
        and ca.terminal == cb.terminal
    )


# -- JSON export / import ------------------------------------------------------

EFSM_JSON_SCHEMA: dict = {
    "type": "object",
    "required": ["protocol", "role", "initial", "terminal", "states", "transitions"],
    "additionalProperties": False,
    "properties": {
        "protocol": {"type": "string"},
        "role": {"type": "string"},
        "initial": {"type": "integer"},
        "terminal": {"type": ["integer", "null"]},
        "states": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "kind"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer"},
                    "kind": {"enum": ["output", "input", "terminal"]},
                },
            },
        },
        "transitions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "action", "peer", "label", "payloads"],
                "additionalProperties": False,
                "properties": {
                    "from": {"type": "integer"},
                    "to": {"type": "integer"},
                    "action": {"enum": ["send", "receive", "connect", "disconnect"]},
                    "peer": {"type": "string"},
                    "label": {"type": "string"},
                    "payloads": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
}


def export_efsm_json(efsm: Efsm) -> str:
    doc = {
        "protocol": efsm.protocol,
        "role": efsm.role,
        "initial": efsm.initial,
        "terminal": efsm.terminal,
        "states": [{"id": s, "kind": k} for s, k in efsm.kinds],
        "transitions": [
            {
                "from": t.source,
                "to": t.target,
                "action": t.action,
                "peer": t.peer,
                "label": t.label,
                "payloads": list(t.payloads),
            }
            for t in efsm.transitions
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def import_efsm_json(text: str) -> Efsm:
    doc = json.loads(text)
    kinds = {s["id"]: s["kind"] for s in doc["states"]}
    transitions = [
        Transition(
            t["from"], t["to"], t["action"], t["peer"], t["label"], tuple(t["payloads"])
        )
        for t in doc["transitions"]
    ]
    return make_efsm(
        doc["protocol"], doc["role"], doc["initial"], doc["terminal"], kinds, transitions
    )


# -- Graphviz ------------------------------------------------------------------


def export_dot(efsm: Efsm) -> str:
    def edge_label(t: Transition) -> str:
        if t.action in ("connect", "disconnect"):
            return f"{t.action} {t.peer}"
        return f"{t.action} {t.peer}: {t.label}({', '.join(t.payloads)})"

    lines = [f'digraph "{efsm.protocol}_{efsm.role}" {{', "  rankdir=LR;"]
    lines.append('  __start [shape=point, label=""];')
    for state, kind in efsm.kinds:
        shape = "doublecircle" if kind == TERMINAL else "circle"
        lines.append(f'  S{state} [shape={shape}, label="S{state}"];')
    lines.append(f"  __start -> S{efsm.initial};")
    for t in efsm.transitions:
        label = edge_label(t).replace('"', '\\"')
        lines.append(f'  S{t.source} -> S{t.target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
