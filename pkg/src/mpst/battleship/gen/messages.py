"""Message records and JSON codecs for module battleship.

Generated by mpst; do not edit by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

from mpst.wire import WireMessage, expect_message
from mpst.battleship.game import Config, Location


@dataclass(frozen=True)
class Init:
    """``Init(Config)``"""

    value: Config
    LABEL: ClassVar[str] = "Init"

    def to_wire(self) -> WireMessage:
        return WireMessage("Init", [self.value.to_json()])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> Init:
        payload = expect_message(msg, "Init", 1)
        return cls(value=Config.from_json(payload[0]))

@dataclass(frozen=True)
class Attack:
    """``Attack(Location)``"""

    value: Location
    LABEL: ClassVar[str] = "Attack"

    def to_wire(self) -> WireMessage:
        return WireMessage("Attack", [self.value.to_json()])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> Attack:
        payload = expect_message(msg, "Attack", 1)
        return cls(value=Location.from_json(payload[0]))

@dataclass(frozen=True)
class Hit:
    """``hit()``"""

    LABEL: ClassVar[str] = "hit"

    def to_wire(self) -> WireMessage:
        return WireMessage("hit", [])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> Hit:
        payload = expect_message(msg, "hit", 0)
        del payload
        return cls()

@dataclass(frozen=True)
class HitLocation:
    """``hit(Location)``"""

    value: Location
    LABEL: ClassVar[str] = "hit"

    def to_wire(self) -> WireMessage:
        return WireMessage("hit", [self.value.to_json()])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> HitLocation:
        payload = expect_message(msg, "hit", 1)
        return cls(value=Location.from_json(payload[0]))

@dataclass(frozen=True)
class Miss:
    """``miss()``"""

    LABEL: ClassVar[str] = "miss"

    def to_wire(self) -> WireMessage:
        return WireMessage("miss", [])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> Miss:
        payload = expect_message(msg, "miss", 0)
        del payload
        return cls()

@dataclass(frozen=True)
class MissLocation:
    """``miss(Location)``"""

    value: Location
    LABEL: ClassVar[str] = "miss"

    def to_wire(self) -> WireMessage:
        return WireMessage("miss", [self.value.to_json()])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> MissLocation:
        payload = expect_message(msg, "miss", 1)
        return cls(value=Location.from_json(payload[0]))

@dataclass(frozen=True)
class Sunk:
    """``sunk()``"""

    LABEL: ClassVar[str] = "sunk"

    def to_wire(self) -> WireMessage:
        return WireMessage("sunk", [])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> Sunk:
        payload = expect_message(msg, "sunk", 0)
        del payload
        return cls()

@dataclass(frozen=True)
class Winner:
    """``winner()``"""

    LABEL: ClassVar[str] = "winner"

    def to_wire(self) -> WireMessage:
        return WireMessage("winner", [])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> Winner:
        payload = expect_message(msg, "winner", 0)
        del payload
        return cls()

@dataclass(frozen=True)
class Loser:
    """``loser(Location)``"""

    value: Location
    LABEL: ClassVar[str] = "loser"

    def to_wire(self) -> WireMessage:
        return WireMessage("loser", [self.value.to_json()])

    @classmethod
    def from_wire(cls, msg: WireMessage) -> Loser:
        payload = expect_message(msg, "loser", 1)
        return cls(value=Location.from_json(payload[0]))
