"""Typestate API for role P1 of protocol BattleShips.

Generated by mpst; do not edit by hand. Each protocol state is an
uninstantiable marker type; each transition is a capability
returning a Session indexed by source and successor state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generic, NoReturn, TypeVar, final

from mpst import runtime as _rt
from mpst.runtime import Session, SessionConfig
from .messages import Attack, Hit, HitLocation, Init, Loser, Miss, MissLocation, Sunk, Winner

PROTOCOL = "BattleShips"
ROLE = "P1"
PEERS = ('GameServer',)

A = TypeVar("A")
U = TypeVar("U")

@final
class S0:
    """Output state: connect GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S1:
    """Output state: send Init(Config) to GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S2:
    """Output state: send Attack(Location) to GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S3:
    """Input state: receive hit() from GameServer | receive sunk() from GameServer | receive miss() from GameServer | receive winner() from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S4:
    """Input state: receive miss() from GameServer | receive hit() from GameServer | receive loser() from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S5:
    """Terminal state: the session is complete."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S6:
    """Input state: receive hit() from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S7:
    """Input state: receive sunk() from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S8:
    """Input state: receive miss() from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S9:
    """Input state: receive winner() from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S10:
    """Input state: receive miss(Location) from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S11:
    """Input state: receive hit(Location) from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S12:
    """Input state: receive loser(Location) from GameServer."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

def connect_s0(address: str) -> Session[S0, S1, None]:
    """connect GameServer (dial and handshake)"""
    return _rt.op_connect("GameServer", address)

def send_s1(value: Init) -> Session[S1, S2, None]:
    """send Init(Config) to GameServer"""
    return _rt.op_send("GameServer", value)

def send_s2(value: Attack) -> Session[S2, S3, None]:
    """send Attack(Location) to GameServer"""
    return _rt.op_send("GameServer", value)

@dataclass(frozen=True)
class BranchS3(Generic[U, A]):
    """One continuation per branch label offered by GameServer at state S3; each starts at the matching receive and all end at a common state."""

    hit: Callable[[], Session[S6, U, A]]
    sunk: Callable[[], Session[S7, U, A]]
    miss: Callable[[], Session[S8, U, A]]
    winner: Callable[[], Session[S9, U, A]]


def branch_s3(handlers: BranchS3[U, A]) -> Session[S3, U, A]:
    """Dispatch on the label of the next message from GameServer."""
    return _rt.op_branch("GameServer", {"hit": handlers.hit, "sunk": handlers.sunk, "miss": handlers.miss, "winner": handlers.winner})

@dataclass(frozen=True)
class BranchS4(Generic[U, A]):
    """One continuation per branch label offered by GameServer at state S4; each starts at the matching receive and all end at a common state."""

    miss: Callable[[], Session[S10, U, A]]
    hit: Callable[[], Session[S11, U, A]]
    loser: Callable[[], Session[S12, U, A]]


def branch_s4(handlers: BranchS4[U, A]) -> Session[S4, U, A]:
    """Dispatch on the label of the next message from GameServer."""
    return _rt.op_branch("GameServer", {"miss": handlers.miss, "hit": handlers.hit, "loser": handlers.loser})

def receive_s6() -> Session[S6, S2, Hit]:
    """receive hit() from GameServer"""
    return _rt.op_receive("GameServer", "hit", Hit.from_wire)

def receive_s7() -> Session[S7, S2, Sunk]:
    """receive sunk() from GameServer"""
    return _rt.op_receive("GameServer", "sunk", Sunk.from_wire)

def receive_s8() -> Session[S8, S4, Miss]:
    """receive miss() from GameServer"""
    return _rt.op_receive("GameServer", "miss", Miss.from_wire)

def receive_s9() -> Session[S9, S5, Winner]:
    """receive winner() from GameServer"""
    return _rt.op_receive("GameServer", "winner", Winner.from_wire)

def receive_s10() -> Session[S10, S2, MissLocation]:
    """receive miss(Location) from GameServer"""
    return _rt.op_receive("GameServer", "miss", MissLocation.from_wire)

def receive_s11() -> Session[S11, S4, HitLocation]:
    """receive hit(Location) from GameServer"""
    return _rt.op_receive("GameServer", "hit", HitLocation.from_wire)

def receive_s12() -> Session[S12, S5, Loser]:
    """receive loser(Location) from GameServer"""
    return _rt.op_receive("GameServer", "loser", Loser.from_wire)


Initial = S0
Terminal = S5


async def run(config: SessionConfig, program: Session[S0, S5, A]) -> A:
    """Run a complete BattleShips session as P1."""
    return await _rt.execute(PROTOCOL, ROLE, config, program)
