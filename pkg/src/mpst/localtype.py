"""Per-role local types: the result of projecting a global protocol.

Branch/Select maps are stored as ordered (label, body) tuples; every
Branch body starts with the RecvMsg of its own label (and every Select
body with the matching SendMsg), mirroring how a received frame first
selects the branch and is then consumed by the opening receive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

LocalType = Union[
    "SendMsg",
    "RecvMsg",
    "Select",
    "Branch",
    "ConnectTo",
    "DisconnectFrom",
    "Rec",
    "RecVar",
    "End",
]


@dataclass(frozen=True)
class End:
    pass


@dataclass(frozen=True)
class SendMsg:
    to: str
    label: str
    payloads: tuple[str, ...]
    cont: LocalType


@dataclass(frozen=True)
class RecvMsg:
    from_role: str
    label: str
    payloads: tuple[str, ...]
    cont: LocalType


@dataclass(frozen=True)
class Select:
    to: str
    branches: tuple[tuple[str, SendMsg], ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.branches)


@dataclass(frozen=True)
class Branch:
    from_role: str
    branches: tuple[tuple[str, RecvMsg], ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.branches)


@dataclass(frozen=True)
class ConnectTo:
    peer: str
    accepting: bool
    cont: LocalType


@dataclass(frozen=True)
class DisconnectFrom:
    peer: str
    accepting: bool
    cont: LocalType


@dataclass(frozen=True)
class Rec:
    var: str
    body: LocalType


@dataclass(frozen=True)
class RecVar:
    var: str


@lru_cache(maxsize=None)
def free_rec_vars(lt: LocalType) -> frozenset[str]:
    """Recursion variables referenced by ``lt`` but bound outside it."""
    if isinstance(lt, End):
        return frozenset()
    if isinstance(lt, RecVar):
        return frozenset({lt.var})
    if isinstance(lt, Rec):
        return free_rec_vars(lt.body) - {lt.var}
    if isinstance(lt, (SendMsg, RecvMsg, ConnectTo, DisconnectFrom)):
        return free_rec_vars(lt.cont)
    out: frozenset[str] = frozenset()
    for _, body in lt.branches:
        out |= free_rec_vars(body)
    return out


def mentions_var(lt: LocalType, var: str) -> bool:
    return var in free_rec_vars(lt)
