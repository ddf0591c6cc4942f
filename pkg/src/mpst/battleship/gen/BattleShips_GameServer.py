"""Typestate API for role GameServer of protocol BattleShips.

Generated by mpst; do not edit by hand. Each protocol state is an
uninstantiable marker type; each transition is a capability
returning a Session indexed by source and successor state.
"""

from __future__ import annotations

from typing import Any, NoReturn, TypeVar, final, overload

from mpst import runtime as _rt
from mpst.runtime import Session, SessionConfig
from .messages import Attack, Hit, HitLocation, Init, Loser, Miss, MissLocation, Sunk, Winner

PROTOCOL = "BattleShips"
ROLE = "GameServer"
PEERS = ('P1', 'P2')

A = TypeVar("A")

@final
class S0:
    """Input state: accept connection from P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S1:
    """Input state: accept connection from P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S2:
    """Input state: receive Init(Config) from P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S3:
    """Input state: receive Init(Config) from P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S4:
    """Input state: receive Attack(Location) from P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S5:
    """Output state: send hit() to P1 | send sunk() to P1 | send miss() to P1 | send winner() to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S6:
    """Output state: send hit(Location) to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S7:
    """Output state: send miss(Location) to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S8:
    """Input state: receive Attack(Location) from P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S9:
    """Output state: send hit() to P2 | send sunk() to P2 | send miss() to P2 | send winner() to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S10:
    """Output state: send hit(Location) to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S11:
    """Output state: send miss(Location) to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S12:
    """Output state: send loser(Location) to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S13:
    """Terminal state: the session is complete."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S14:
    """Output state: send loser(Location) to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S15:
    """Output state: send hit() to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S16:
    """Output state: send sunk() to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S17:
    """Output state: send miss() to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S18:
    """Output state: send winner() to P1."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S19:
    """Output state: send hit() to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S20:
    """Output state: send sunk() to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S21:
    """Output state: send miss() to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

@final
class S22:
    """Output state: send winner() to P2."""

    __slots__ = ()

    def __new__(cls) -> NoReturn:
        raise TypeError("protocol state markers are not values")

def accept_s0() -> Session[S0, S1, None]:
    """accept the connection from P1"""
    return _rt.op_accept("P1")

def accept_s1() -> Session[S1, S2, None]:
    """accept the connection from P2"""
    return _rt.op_accept("P2")

def receive_s2() -> Session[S2, S3, Init]:
    """receive Init(Config) from P1"""
    return _rt.op_receive("P1", "Init", Init.from_wire)

def receive_s3() -> Session[S3, S4, Init]:
    """receive Init(Config) from P2"""
    return _rt.op_receive("P2", "Init", Init.from_wire)

def receive_s4() -> Session[S4, S5, Attack]:
    """receive Attack(Location) from P1"""
    return _rt.op_receive("P1", "Attack", Attack.from_wire)

@overload
def send_s5(value: Hit) -> Session[S5, S6, None]: ...

@overload
def send_s5(value: Sunk) -> Session[S5, S6, None]: ...

@overload
def send_s5(value: Miss) -> Session[S5, S7, None]: ...

@overload
def send_s5(value: Winner) -> Session[S5, S14, None]: ...

def send_s5(value: Hit | Sunk | Miss | Winner) -> Session[Any, Any, None]:
    """Select a branch towards P1: the value's label picks the continuation."""
    return _rt.op_send("P1", value)

def send_s6(value: HitLocation) -> Session[S6, S4, None]:
    """send hit(Location) to P2"""
    return _rt.op_send("P2", value)

def send_s7(value: MissLocation) -> Session[S7, S8, None]:
    """send miss(Location) to P2"""
    return _rt.op_send("P2", value)

def receive_s8() -> Session[S8, S9, Attack]:
    """receive Attack(Location) from P2"""
    return _rt.op_receive("P2", "Attack", Attack.from_wire)

@overload
def send_s9(value: Hit) -> Session[S9, S10, None]: ...

@overload
def send_s9(value: Sunk) -> Session[S9, S10, None]: ...

@overload
def send_s9(value: Miss) -> Session[S9, S11, None]: ...

@overload
def send_s9(value: Winner) -> Session[S9, S12, None]: ...

def send_s9(value: Hit | Sunk | Miss | Winner) -> Session[Any, Any, None]:
    """Select a branch towards P2: the value's label picks the continuation."""
    return _rt.op_send("P2", value)

def send_s10(value: HitLocation) -> Session[S10, S8, None]:
    """send hit(Location) to P1"""
    return _rt.op_send("P1", value)

def send_s11(value: MissLocation) -> Session[S11, S4, None]:
    """send miss(Location) to P1"""
    return _rt.op_send("P1", value)

def send_s12(value: Loser) -> Session[S12, S13, None]:
    """send loser(Location) to P1"""
    return _rt.op_send("P1", value)

def send_s14(value: Loser) -> Session[S14, S13, None]:
    """send loser(Location) to P2"""
    return _rt.op_send("P2", value)


Initial = S0
Terminal = S13


async def run(config: SessionConfig, program: Session[S0, S13, A]) -> A:
    """Run a complete BattleShips session as GameServer."""
    return await _rt.execute(PROTOCOL, ROLE, config, program)
