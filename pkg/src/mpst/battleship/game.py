"""Battleship game rules: boards, fleet validation, attack judging.

Pure logic only — no protocol or transport concerns. The grid is
GRID_SIZE x GRID_SIZE and the default fleet is one ship each of length
5 and 4, two of length 3, and one of length 2.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import AbstractSet, Any, Iterable

logger = logging.getLogger(__name__)

GRID_SIZE = 10
FLEET = (5, 4, 3, 3, 2)


@dataclass(frozen=True, order=True)
class Location:
    """A grid cell; 0 <= x, y < GRID_SIZE."""

    x: int
    y: int

    def to_json(self) -> dict[str, int]:
        return {"x": self.x, "y": self.y}

    @classmethod
    def from_json(cls, value: Any) -> "Location":
        from mpst.wire import MalformedMessage

        if (
            not isinstance(value, dict)
            or not isinstance(value.get("x"), int)
            or not isinstance(value.get("y"), int)
            or isinstance(value.get("x"), bool)
            or isinstance(value.get("y"), bool)
        ):
            raise MalformedMessage(f"not a grid location: {value!r}")
        return cls(value["x"], value["y"])


@dataclass(frozen=True)
class Config:
    """A fleet placement: each ship is the tuple of cells it occupies."""

    ships: tuple[tuple[Location, ...], ...]

    def cells(self) -> frozenset[Location]:
        return frozenset(cell for ship in self.ships for cell in ship)

    def to_json(self) -> list[list[dict[str, int]]]:
        return [[cell.to_json() for cell in ship] for ship in self.ships]

    @classmethod
    def from_json(cls, value: Any) -> "Config":
        from mpst.wire import MalformedMessage

        if not isinstance(value, list):
            raise MalformedMessage(f"not a fleet configuration: {value!r}")
        ships = []
        for ship in value:
            if not isinstance(ship, list):
                raise MalformedMessage(f"not a ship: {ship!r}")
            ships.append(tuple(Location.from_json(cell) for cell in ship))
        return cls(tuple(ships))


class AttackOutcome(Enum):
    MISS = "miss"
    HIT = "hit"
    SUNK = "sunk"
    WIN = "win"


class RepeatAttack(Exception):
    """The attacked cell was already judged a hit."""


def validate_config(
    config: Config,
    grid_size: int = GRID_SIZE,
    fleet: tuple[int, ...] = FLEET,
) -> list[str]:
    """Violations of bounds, straightness, contiguity, disjointness and
    fleet composition; an empty list means the placement is legal."""
    violations: list[str] = []
    for ship in config.ships:
        for cell in ship:
            if not (0 <= cell.x < grid_size and 0 <= cell.y < grid_size):
                violations.append(f"OUT_OF_BOUNDS: {cell.to_json()}")
        if len(set(ship)) != len(ship):
            violations.append("OVERLAP: a ship occupies a cell twice")
        if len(ship) >= 2:
            xs = {c.x for c in ship}
            ys = {c.y for c in ship}
            if len(xs) != 1 and len(ys) != 1:
                violations.append(f"NOT_STRAIGHT: ship of length {len(ship)}")
            else:
                axis = sorted(c.y for c in ship) if len(xs) == 1 else sorted(
                    c.x for c in ship
                )
                if axis != list(range(axis[0], axis[0] + len(axis))):
                    violations.append(f"NOT_CONTIGUOUS: ship of length {len(ship)}")
    seen: set[Location] = set()
    for ship in config.ships:
        for cell in ship:
            if cell in seen:
                violations.append(f"OVERLAP: two ships share {cell.to_json()}")
            seen.add(cell)
    if sorted(len(ship) for ship in config.ships) != sorted(fleet):
        violations.append(
            f"WRONG_FLEET: lengths {sorted(len(s) for s in config.ships)}, "
            f"expected {sorted(fleet)}"
        )
    return violations


def judge_attack(
    defender: Config, prior_hits: AbstractSet[Location], loc: Location
) -> AttackOutcome:
    """Outcome of attacking ``loc`` against ``defender``'s fleet.

    ``prior_hits`` is the set of defender cells already hit. Raises
    :class:`RepeatAttack` when ``loc`` is among them.
    """
    if loc in prior_hits:
        raise RepeatAttack(f"{loc.to_json()} was already hit")
    hit_ship: tuple[Location, ...] | None = None
    for ship in defender.ships:
        if loc in ship:
            hit_ship = ship
            break
    if hit_ship is None:
        return AttackOutcome.MISS
    hits_after = set(prior_hits) | {loc}
    if not all(cell in hits_after for cell in hit_ship):
        return AttackOutcome.HIT
    if all(cell in hits_after for ship in defender.ships for cell in ship):
        return AttackOutcome.WIN
    return AttackOutcome.SUNK


def random_config(
    rng: random.Random,
    grid_size: int = GRID_SIZE,
    fleet: tuple[int, ...] = FLEET,
) -> Config:
    """A uniformly scattered legal placement, deterministic in ``rng``."""
    taken: set[Location] = set()
    ships: list[tuple[Location, ...]] = []
    for length in fleet:
        while True:
            horizontal = rng.random() < 0.5
            if horizontal:
                x = rng.randrange(grid_size - length + 1)
                y = rng.randrange(grid_size)
                ship = tuple(Location(x + i, y) for i in range(length))
            else:
                x = rng.randrange(grid_size)
                y = rng.randrange(grid_size - length + 1)
                ship = tuple(Location(x, y + i) for i in range(length))
            if not any(cell in taken for cell in ship):
                taken.update(ship)
                ships.append(ship)
                break
    return Config(tuple(ships))


@dataclass
class PlayerBoard:
    """One player's fleet as the server tracks it during a match."""

    config: Config
    hits: set[Location]
    judged: set[Location]

    @classmethod
    def fresh(cls, config: Config) -> "PlayerBoard":
        return cls(config, set(), set())

    def all_sunk(self) -> bool:
        return self.config.cells() <= self.hits


@dataclass
class MatchState:
    """Server-side state of a running match between two named players."""

    boards: dict[str, PlayerBoard]
    attacker: str

    @classmethod
    def start(cls, first: str, configs: dict[str, Config]) -> "MatchState":
        return cls({name: PlayerBoard.fresh(cfg) for name, cfg in configs.items()}, first)

    def defender_of(self, attacker: str) -> str:
        names = [n for n in self.boards if n != attacker]
        assert len(names) == 1
        return names[0]

    def judge(self, loc: Location) -> AttackOutcome:
        """Judge the current attacker's shot, tracking hits and repeats.

        A repeat of an already-judged cell is a MISS (the protocol cannot
        express "fresh coordinate", so repeats stay conformant).
        """
        board = self.boards[self.defender_of(self.attacker)]
        if loc in board.judged:
            # The wire protocol answers misses with a role swap, so the
            # repeat must swap too or the server desyncs from the EFSM.
            logger.warning(
                "%s repeats attack %s; judged as a miss", self.attacker, loc.to_json()
            )
            self.attacker = self.defender_of(self.attacker)
            return AttackOutcome.MISS
        board.judged.add(loc)
        outcome = judge_attack(board.config, board.hits, loc)
        if outcome is not AttackOutcome.MISS:
            board.hits.add(loc)
        else:
            self.attacker = self.defender_of(self.attacker)
        return outcome


# -- terminal rendering ---------------------------------------------------------


def render_boards(
    own: Config,
    hits_on_own: AbstractSet[Location],
    shots: AbstractSet[Location],
    hits_made: AbstractSet[Location],
    grid_size: int = GRID_SIZE,
) -> str:
    """ASCII side-by-side view: your fleet and your shots so far.

    ``#`` intact ship cell, ``X`` hit, ``o`` miss / empty water shot.
    """
    own_cells = own.cells()
    header = "   " + " ".join(str(i) for i in range(grid_size))
    left = ["your fleet".center(2 * grid_size + 2)]
    right = ["your shots".center(2 * grid_size + 2)]
    for y in range(grid_size):
        row_own = []
        row_opp = []
        for x in range(grid_size):
            cell = Location(x, y)
            if cell in hits_on_own:
                row_own.append("X")
            elif cell in own_cells:
                row_own.append("#")
            else:
                row_own.append(".")
            if cell in hits_made:
                row_opp.append("X")
            elif cell in shots:
                row_opp.append("o")
            else:
                row_opp.append(".")
        left.append(f"{y:2d} " + " ".join(row_own))
        right.append(f"{y:2d} " + " ".join(row_opp))
    lines = [header + "      " + header]
    for l, r in zip(left[1:], right[1:]):
        lines.append(l + "      " + r)
    return left[0] + "      " + right[0] + "\n" + "\n".join(lines)


def parse_attack_input(text: str, grid_size: int = GRID_SIZE) -> Location | None:
    """Parse ``"x y"`` (optionally prefixed with ``attack``)."""
    parts = text.strip().split()
    if parts and parts[0].lower() == "attack":
        parts = parts[1:]
    if len(parts) != 2:
        return None
    try:
        x, y = int(parts[0]), int(parts[1])
    except ValueError:
        return None
    if not (0 <= x < grid_size and 0 <= y < grid_size):
        return None
    return Location(x, y)


def classic_config() -> Config:
    """The fleet placed row by row from the top-left corner."""
    ships: list[tuple[Location, ...]] = []
    for row, length in enumerate(FLEET):
        ships.append(tuple(Location(x, row) for x in range(length)))
    return Config(tuple(ships))


def iter_cells(grid_size: int = GRID_SIZE) -> Iterable[Location]:
    for y in range(grid_size):
        for x in range(grid_size):
            yield Location(x, y)
