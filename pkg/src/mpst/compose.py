"""Bounded product composition of all role EFSMs.

Explores every interleaving of the roles' machines communicating over
per-ordered-pair FIFO buffers of a fixed bound, looking for deadlocks,
orphan messages, and unspecified receptions. Bound 0 selects
synchronous rendezvous semantics (a send fires together with the
matching receive).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .ast import ScribbleModule
from .efsm import INPUT, TERMINAL, Efsm, Transition, to_efsm
from .projector import project

DEFAULT_STATE_CAP = 10**6


class ExplosionLimit(Exception):
    """The exploration exceeded its state cap."""


@dataclass(frozen=True)
class TraceEvent:
    kind: str  # "send" | "receive" | "sync"
    actor: str
    peer: str
    label: str

    def as_triple(self) -> tuple[str, str, str]:
        if self.kind == "receive":
            return (self.peer, self.actor, self.label)
        return (self.actor, self.peer, self.label)


@dataclass(frozen=True)
class ComposedReport:
    result: str  # "ok" | "deadlock" | "orphan" | "unspecified_reception"
    explored_states: int
    trace: tuple[TraceEvent, ...] = ()
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.result == "ok"


# A global configuration: per-role state ids plus per-ordered-pair buffers.
_Config = tuple[tuple[int, ...], tuple[tuple[str, ...], ...]]


def compose_check(
    module: ScribbleModule,
    protocol: str,
    buffer_bound: int = 1,
    state_cap: int = DEFAULT_STATE_CAP,
) -> ComposedReport:
    decl = module.protocol(protocol)
    roles = list(decl.role_params)
    machines = [
        to_efsm(project(module, protocol, role), protocol, role) for role in roles
    ]
    return compose_efsms(roles, machines, buffer_bound, state_cap)


def compose_efsms(
    roles: list[str],
    machines: list[Efsm],
    buffer_bound: int,
    state_cap: int = DEFAULT_STATE_CAP,
) -> ComposedReport:
    index = {r: i for i, r in enumerate(roles)}
    outgoing: list[dict[int, list[Transition]]] = []
    for m in machines:
        table: dict[int, list[Transition]] = {}
        for t in m.transitions:
            table.setdefault(t.source, []).append(t)
        outgoing.append(table)
    kinds = [dict(m.kinds) for m in machines]

    pairs = [(a, b) for a in roles for b in roles if a != b]
    pair_index = {p: i for i, p in enumerate(pairs)}

    def is_sendish(role_idx: int, t: Transition) -> bool:
        if t.action == "send":
            return True
        if t.action == "receive":
            return False
        return kinds[role_idx][t.source] != INPUT

    initial: _Config = (
        tuple(m.initial for m in machines),
        tuple(() for _ in pairs),
    )
    parents: dict[_Config, tuple[_Config, TraceEvent] | None] = {initial: None}
    queue: deque[_Config] = deque([initial])

    def trace_to(cfg: _Config) -> tuple[TraceEvent, ...]:
        events: list[TraceEvent] = []
        cur = cfg
        while True:
            prev = parents[cur]
            if prev is None:
                break
            cur, event = prev
            events.append(event)
        return tuple(reversed(events))

    def defect(result: str, cfg: _Config, event: TraceEvent | None, msg: str) -> ComposedReport:
        trace = trace_to(cfg) + ((event,) if event else ())
        return ComposedReport(result, len(parents), trace, msg)

    while queue:
        states, buffers = queue.popleft()
        cfg = (states, buffers)

        # A role parked in an input state whose pending buffer head matches
        # none of its transitions can never proceed again.
        for i, role in enumerate(roles):
            trs = outgoing[i].get(states[i], [])
            if not trs or not all(not is_sendish(i, t) for t in trs):
                continue
            peer = trs[0].peer
            buf = buffers[pair_index[(peer, role)]]
            if buf and buf[0] not in {t.label for t in trs}:
                return defect(
                    "unspecified_reception",
                    cfg,
                    None,
                    f"{role} cannot receive {buf[0]!r} from {peer} "
                    f"(expects one of {sorted(t.label for t in trs)})",
                )

        successors: list[tuple[TraceEvent, _Config]] = []
        for i, role in enumerate(roles):
            for t in outgoing[i].get(states[i], []):
                if is_sendish(i, t):
                    if buffer_bound == 0:
                        j = index[t.peer]
                        for rt in outgoing[j].get(states[j], []):
                            if (
                                not is_sendish(j, rt)
                                and rt.peer == role
                                and rt.label == t.label
                            ):
                                new_states = list(states)
                                new_states[i] = t.target
                                new_states[j] = rt.target
                                successors.append(
                                    (
                                        TraceEvent("sync", role, t.peer, t.label),
                                        (tuple(new_states), buffers),
                                    )
                                )
                    else:
                        slot = pair_index[(role, t.peer)]
                        if len(buffers[slot]) >= buffer_bound:
                            continue
                        new_states = list(states)
                        new_states[i] = t.target
                        new_buffers = list(buffers)
                        new_buffers[slot] = buffers[slot] + (t.label,)
                        successors.append(
                            (
                                TraceEvent("send", role, t.peer, t.label),
                                (tuple(new_states), tuple(new_buffers)),
                            )
                        )
                else:
                    slot = pair_index[(t.peer, role)]
                    buf = buffers[slot]
                    if buf and buf[0] == t.label:
                        new_states = list(states)
                        new_states[i] = t.target
                        new_buffers = list(buffers)
                        new_buffers[slot] = buf[1:]
                        successors.append(
                            (
                                TraceEvent("receive", role, t.peer, t.label),
                                (tuple(new_states), tuple(new_buffers)),
                            )
                        )

        if not successors:
            all_done = all(
                kinds[i].get(states[i]) == TERMINAL or not outgoing[i].get(states[i])
                for i in range(len(roles))
            )
            leftovers = [
                (pairs[k], buffers[k]) for k in range(len(pairs)) if buffers[k]
            ]
            if all_done and leftovers:
                (sender, receiver), labels = leftovers[0]
                return defect(
                    "orphan",
                    cfg,
                    None,
                    f"message(s) {list(labels)} from {sender} to {receiver} "
                    f"were never received",
                )
            if not all_done:
                stuck = [roles[i] for i in range(len(roles))
                         if kinds[i].get(states[i]) != TERMINAL]
                return defect(
                    "deadlock", cfg, None,
                    f"no action is enabled but {', '.join(stuck)} have not finished",
                )
            continue

        for event, nxt in successors:
            if nxt not in parents:
                if len(parents) >= state_cap:
                    raise ExplosionLimit(
                        f"exploration exceeded {state_cap} global states"
                    )
                parents[nxt] = (cfg, event)
                queue.append(nxt)

    return ComposedReport("ok", len(parents))
