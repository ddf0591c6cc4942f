"""Interactive terminal player.

Prompts for attack coordinates on stdin ("attack x y" or just "x y"),
renders both boards as ASCII grids between steps, and otherwise plays
exactly the bot's protocol. User interaction is lifted into the
session between communication steps, so prompting never breaks
conformance. I/O is injectable for tests.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass, field
from typing import Awaitable, Callable

from mpst.runtime import Session, SessionConfig, lift, pure

from .game import (
    Config,
    Location,
    classic_config,
    parse_attack_input,
    render_boards,
)
from .gen import BattleShips_P1 as p1
from .gen import BattleShips_P2 as p2
from .gen.messages import Attack, Init

PromptFn = Callable[[str], Awaitable[str]]
PrintFn = Callable[[str], None]


async def _stdin_prompt(prompt: str) -> str:
    return await asyncio.to_thread(input, prompt)


@dataclass
class TerminalUi:
    """Rendering state plus the I/O hooks."""

    config: Config
    prompt: PromptFn = _stdin_prompt
    show: PrintFn = print
    hits_on_own: set[Location] = field(default_factory=set)
    shots: set[Location] = field(default_factory=set)
    hits_made: set[Location] = field(default_factory=set)

    def render(self) -> None:
        self.show(
            render_boards(self.config, self.hits_on_own, self.shots, self.hits_made)
        )

    async def ask_attack(self) -> Location:
        while True:
            text = await self.prompt("attack x y> ")
            loc = parse_attack_input(text)
            if loc is not None and loc not in self.shots:
                self.shots.add(loc)
                return loc
            self.show("enter two in-range coordinates you have not tried, e.g. 'attack 3 5'")

    def note(self, text: str) -> None:
        self.show(text)


def p1_terminal_program(url: str, ui: TerminalUi) -> Session[p1.S0, p1.S5, str]:
    return (
        p1.connect_s0(url)
        .then(lambda _: p1.send_s1(Init(ui.config)))
        .then(lambda _: p1_attack(ui))
    )


def p1_attack(ui: TerminalUi) -> Session[p1.S2, p1.S5, str]:
    def fire(loc: Location) -> Session[p1.S2, p1.S5, str]:
        return p1.send_s2(Attack(loc)).then(
            lambda _: p1.branch_s3(
                p1.BranchS3(
                    hit=lambda: p1.receive_s6().then(lambda _m: note_and(ui, loc, "hit!", p1_attack)),
                    sunk=lambda: p1.receive_s7().then(lambda _m: note_and(ui, loc, "sunk a ship!", p1_attack)),
                    miss=lambda: p1.receive_s8().then(lambda _m: note_miss_and_defend(ui, loc)),
                    winner=lambda: p1.receive_s9().then(lambda _m: finish(ui, "you won!")),
                )
            )
        )

    return lift(ui.render).then(lambda _: lift(ui.ask_attack)).then(fire)


def note_and(
    ui: TerminalUi,
    loc: Location,
    text: str,
    again: Callable[[TerminalUi], Session[p1.S2, p1.S5, str]],
) -> Session[p1.S2, p1.S5, str]:
    ui.hits_made.add(loc)
    ui.note(text)
    return again(ui)


def note_miss_and_defend(ui: TerminalUi, loc: Location) -> Session[p1.S4, p1.S5, str]:
    ui.note("splash. opponent's turn...")
    return p1_defend(ui)


def finish(ui: TerminalUi, text: str) -> Session[p1.S5, p1.S5, str]:
    ui.render()
    ui.note(text)
    return pure("won" if "won" in text else "lost")


def p1_defend(ui: TerminalUi) -> Session[p1.S4, p1.S5, str]:
    def incoming_hit(loc: Location) -> Session[p1.S4, p1.S5, str]:
        ui.hits_on_own.add(loc)
        ui.note(f"incoming hit at {loc.x} {loc.y}")
        return p1_defend(ui)

    def incoming_miss(loc: Location) -> Session[p1.S2, p1.S5, str]:
        ui.note(f"opponent missed at {loc.x} {loc.y}; your turn")
        return p1_attack(ui)

    def lost(loc: Location) -> Session[p1.S5, p1.S5, str]:
        ui.hits_on_own.add(loc)
        return finish(ui, "your fleet is gone, you lost.")

    return p1.branch_s4(
        p1.BranchS4(
            miss=lambda: p1.receive_s10().then(lambda m: incoming_miss(m.value)),
            hit=lambda: p1.receive_s11().then(lambda m: incoming_hit(m.value)),
            loser=lambda: p1.receive_s12().then(lambda m: lost(m.value)),
        )
    )


async def terminal_main(
    url: str,
    config: Config | None = None,
    prompt: PromptFn = _stdin_prompt,
    show: PrintFn = print,
) -> str:
    """Play one interactive match as P1 against ``url``."""
    ui = TerminalUi(config or classic_config(), prompt, show)
    return await p1.run(SessionConfig(), p1_terminal_program(url, ui))
