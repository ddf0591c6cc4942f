"""A deterministic scripted player.

The bot places its fleet and picks attack coordinates from a seeded
RNG, never repeating a shot, so a match between two bots always
terminates. P1 and P2 play mirrored programs over their own generated
APIs (the same logic twice with different state types — a known cost
of the per-state encoding).
"""

from __future__ import annotations

import logging
import random

from mpst.runtime import Session, SessionConfig, pure

from .game import GRID_SIZE, Config, Location, random_config
from .gen import BattleShips_P1 as p1
from .gen import BattleShips_P2 as p2
from .gen.messages import Attack, Init

logger = logging.getLogger(__name__)


class BotBrain:
    """Seeded fleet placement and shot selection."""

    def __init__(self, seed: int, grid_size: int = GRID_SIZE):
        self.rng = random.Random(seed)
        self.config: Config = random_config(self.rng, grid_size)
        self._untried = [
            Location(x, y) for y in range(grid_size) for x in range(grid_size)
        ]

    def next_attack(self) -> Location:
        index = self.rng.randrange(len(self._untried))
        return self._untried.pop(index)


# -- Player 1: attacks first --------------------------------------------------


def p1_program(url: str, brain: BotBrain) -> Session[p1.S0, p1.S5, str]:
    return (
        p1.connect_s0(url)
        .then(lambda _: p1.send_s1(Init(brain.config)))
        .then(lambda _: p1_attack(brain))
    )


def p1_attack(brain: BotBrain) -> Session[p1.S2, p1.S5, str]:
    return p1.send_s2(Attack(brain.next_attack())).then(
        lambda _: p1.branch_s3(
            p1.BranchS3(
                hit=lambda: p1.receive_s6().then(lambda _m: p1_attack(brain)),
                sunk=lambda: p1.receive_s7().then(lambda _m: p1_attack(brain)),
                miss=lambda: p1.receive_s8().then(lambda _m: p1_defend(brain)),
                winner=lambda: p1.receive_s9().then(lambda _m: pure("won")),
            )
        )
    )


def p1_defend(brain: BotBrain) -> Session[p1.S4, p1.S5, str]:
    return p1.branch_s4(
        p1.BranchS4(
            miss=lambda: p1.receive_s10().then(lambda _m: p1_attack(brain)),
            hit=lambda: p1.receive_s11().then(lambda _m: p1_defend(brain)),
            loser=lambda: p1.receive_s12().then(lambda _m: pure("lost")),
        )
    )


# -- Player 2: defends first ---------------------------------------------------


def p2_program(url: str, brain: BotBrain) -> Session[p2.S0, p2.S5, str]:
    return (
        p2.connect_s0(url)
        .then(lambda _: p2.send_s1(Init(brain.config)))
        .then(lambda _: p2_defend(brain))
    )


def p2_defend(brain: BotBrain) -> Session[p2.S2, p2.S5, str]:
    return p2.branch_s2(
        p2.BranchS2(
            hit=lambda: p2.receive_s6().then(lambda _m: p2_defend(brain)),
            miss=lambda: p2.receive_s7().then(lambda _m: p2_attack(brain)),
            loser=lambda: p2.receive_s8().then(lambda _m: pure("lost")),
        )
    )


def p2_attack(brain: BotBrain) -> Session[p2.S3, p2.S5, str]:
    return p2.send_s3(Attack(brain.next_attack())).then(
        lambda _: p2.branch_s4(
            p2.BranchS4(
                miss=lambda: p2.receive_s9().then(lambda _m: p2_defend(brain)),
                hit=lambda: p2.receive_s10().then(lambda _m: p2_attack(brain)),
                sunk=lambda: p2.receive_s11().then(lambda _m: p2_attack(brain)),
                winner=lambda: p2.receive_s12().then(lambda _m: pure("won")),
            )
        )
    )


async def bot_main(
    url: str,
    role: str = "P1",
    seed: int = 0,
    config: SessionConfig | None = None,
) -> str:
    """Play one match as ``role`` against ``url``; returns "won" or "lost"."""
    brain = BotBrain(seed)
    session_config = config or SessionConfig()
    if role == "P1":
        result = await p1.run(session_config, p1_program(url, brain))
    elif role == "P2":
        result = await p2.run(session_config, p2_program(url, brain))
    else:
        raise ValueError(f"unknown player role {role!r}")
    logger.info("bot %s (seed %d): %s", role, seed, result)
    return result
