"""The GameServer endpoint.

One session per match: accept both players, collect and validate their
fleet configurations, then drive the game loop — judging each attack
and selecting hit/miss/sunk replies until a winner is declared. The
attacker/defender swap in the protocol shows up as two mirrored round
functions over distinct state regions; the types are different even
though the logic is identical, so the code is written twice.
"""

from __future__ import annotations

import logging

from mpst.runtime import RoleAcceptor, Session, SessionConfig, acceptor_for, pure

from .game import AttackOutcome, Config, Location, MatchState, validate_config
from .gen.BattleShips_GameServer import (
    PROTOCOL,
    S0,
    S4,
    S5,
    S8,
    S9,
    S13,
    accept_s0,
    accept_s1,
    receive_s2,
    receive_s3,
    receive_s4,
    receive_s8,
    run as run_game_server,
    send_s5,
    send_s6,
    send_s7,
    send_s9,
    send_s10,
    send_s11,
    send_s12,
    send_s14,
)
from .gen.messages import Hit, HitLocation, Loser, Miss, MissLocation, Sunk, Winner

logger = logging.getLogger(__name__)


class InvalidConfig(Exception):
    """A player submitted an illegal fleet placement."""


def server_session() -> Session[S0, S13, str]:
    """The complete GameServer session program for one match.

    Yields the winner's role name ("P1" or "P2").
    """

    def start(c1: Config, c2: Config) -> Session[S4, S13, str]:
        for name, cfg in (("P1", c1), ("P2", c2)):
            violations = validate_config(cfg)
            if violations:
                logger.error("rejecting %s's fleet: %s", name, violations)
                raise InvalidConfig(f"{name}: {violations}")
        match = MatchState.start("P1", {"P1": c1, "P2": c2})
        return round_p1(match)

    return (
        accept_s0()
        .then(lambda _: accept_s1())
        .then(lambda _: receive_s2())
        .then(
            lambda init1: receive_s3().then(
                lambda init2: start(init1.value, init2.value)
            )
        )
    )


def round_p1(match: MatchState) -> Session[S4, S13, str]:
    return receive_s4().then(lambda attack: judge_p1(match, attack.value))


def judge_p1(match: MatchState, loc: Location) -> Session[S5, S13, str]:
    outcome = match.judge(loc)
    logger.debug("P1 attacks %s: %s", loc.to_json(), outcome.value)
    if outcome is AttackOutcome.MISS:
        return (
            send_s5(Miss())
            .then(lambda _: send_s7(MissLocation(loc)))
            .then(lambda _: round_p2(match))
        )
    if outcome is AttackOutcome.WIN:
        return (
            send_s5(Winner())
            .then(lambda _: send_s14(Loser(loc)))
            .then(lambda _: pure("P1"))
        )
    if outcome is AttackOutcome.SUNK:
        return (
            send_s5(Sunk())
            .then(lambda _: send_s6(HitLocation(loc)))
            .then(lambda _: round_p1(match))
        )
    return (
        send_s5(Hit())
        .then(lambda _: send_s6(HitLocation(loc)))
        .then(lambda _: round_p1(match))
    )


def round_p2(match: MatchState) -> Session[S8, S13, str]:
    return receive_s8().then(lambda attack: judge_p2(match, attack.value))


def judge_p2(match: MatchState, loc: Location) -> Session[S9, S13, str]:
    outcome = match.judge(loc)
    logger.debug("P2 attacks %s: %s", loc.to_json(), outcome.value)
    if outcome is AttackOutcome.MISS:
        return (
            send_s9(Miss())
            .then(lambda _: send_s11(MissLocation(loc)))
            .then(lambda _: round_p1(match))
        )
    if outcome is AttackOutcome.WIN:
        return (
            send_s9(Winner())
            .then(lambda _: send_s12(Loser(loc)))
            .then(lambda _: pure("P2"))
        )
    if outcome is AttackOutcome.SUNK:
        return (
            send_s9(Sunk())
            .then(lambda _: send_s10(HitLocation(loc)))
            .then(lambda _: round_p2(match))
        )
    return (
        send_s9(Hit())
        .then(lambda _: send_s10(HitLocation(loc)))
        .then(lambda _: round_p2(match))
    )


async def serve_match(
    acceptor: RoleAcceptor, config: SessionConfig | None = None
) -> str:
    """Accept two players on ``acceptor`` and play one match."""
    session_config = config or SessionConfig()
    session_config.acceptor = acceptor
    winner = await run_game_server(session_config, server_session())
    logger.info("match finished, %s wins", winner)
    return winner


async def server_main(bind: str, matches: int | None = None) -> list[str]:
    """Listen on ``bind`` and serve matches (forever if ``matches`` is None)."""
    acceptor = await acceptor_for(bind, PROTOCOL)
    logger.info("battleship server listening on %s", bind)
    winners: list[str] = []
    try:
        while matches is None or len(winners) < matches:
            try:
                winners.append(await serve_match(acceptor))
            except InvalidConfig:
                logger.warning("match aborted before the game loop")
    finally:
        await acceptor.close()
    return winners
