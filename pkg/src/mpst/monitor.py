"""Dynamic conformance monitoring of wire traffic against an EFSM.

The monitor consumes one event per wire frame (plus connection
events) and steps an unsplit EFSM. It is used by the test harnesses to
assert that everything the runtime puts on the wire is a trace of the
sender's machine, and mirrors the dynamic check the browser client
performs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .efsm import INPUT, TERMINAL, Efsm, Transition

OUTBOUND = "out"
INBOUND = "in"


class MonitorViolation(Exception):
    def __init__(self, message: str, state: int):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class MonitorEvent:
    direction: str  # "out" | "in"
    peer: str
    label: str


class EfsmMonitor:
    """Replays events against an EFSM, rejecting anything off-protocol."""

    def __init__(self, efsm: Efsm):
        self.efsm = efsm
        self.state = efsm.initial
        self._kinds = dict(efsm.kinds)
        self._outgoing: dict[int, list[Transition]] = {}
        for t in efsm.transitions:
            self._outgoing.setdefault(t.source, []).append(t)
        self.events: list[MonitorEvent] = []

    @property
    def finished(self) -> bool:
        return self._kinds.get(self.state) == TERMINAL

    def _direction(self, t: Transition) -> str:
        if t.action == "send":
            return OUTBOUND
        if t.action == "receive":
            return INBOUND
        return INBOUND if self._kinds[t.source] == INPUT else OUTBOUND

    def feed(self, direction: str, peer: str, label: str) -> None:
        event = MonitorEvent(direction, peer, label)
        self.events.append(event)
        for t in self._outgoing.get(self.state, []):
            if (
                t.peer == peer
                and t.label == label
                and self._direction(t) == direction
            ):
                self.state = t.target
                return
        enabled = [
            f"{self._direction(t)} {t.label} ({t.peer})"
            for t in self._outgoing.get(self.state, [])
        ]
        raise MonitorViolation(
            f"{self.efsm.role}@S{self.state}: {direction} {label!r} with {peer} "
            f"is not enabled; expected one of {enabled or ['<end of session>']}",
            self.state,
        )

    def feed_frame(self, direction: str, peer: str, label: str) -> None:
        """Alias for :meth:`feed`; reserved labels step connect/disconnect."""
        self.feed(direction, peer, label)


def hook_for(monitor: EfsmMonitor):
    """Adapt a monitor to the runtime's on-event callback signature."""

    def hook(direction: str, peer: str, label: str) -> None:
        monitor.feed(direction, peer, label)

    return hook
