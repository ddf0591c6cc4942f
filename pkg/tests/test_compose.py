"""The product-composition oracle: corpus soundness and seeded defects."""

from __future__ import annotations

import pytest

from mpst.ast import Choice, Transfer
from mpst.compose import ExplosionLimit, compose_check, compose_efsms
from mpst.efsm import Efsm, export_efsm_json, import_efsm_json, to_efsm
from mpst.parser import parse_module
from mpst.projector import ProjectError, project
from mpst.validate import check_well_formed, has_errors

from helpers import CORPUS, load_corpus_module


@pytest.mark.parametrize("name,proto", CORPUS)
def test_corpus_composes_cleanly_with_bound_one(name, proto):
    report = compose_check(load_corpus_module(name), proto, 1)
    assert report.ok, report
    assert report.explored_states < 10**5


def test_bound_two_also_clean_on_battleship():
    report = compose_check(load_corpus_module("battleship.scr"), "BattleShips", 2)
    assert report.ok


def test_unspecified_reception_on_mutated_receiver():
    # Two roles, A sends M; B's machine is mutated to expect N.
    module = parse_module(
        'module m; global protocol P(role A, role B) { M() from A to B; }'
    )
    a = to_efsm(project(module, "P", "A"), "P", "A")
    b = to_efsm(project(module, "P", "B"), "P", "B")
    mutated = import_efsm_json(export_efsm_json(b).replace('"label": "M"', '"label": "N"'))
    report = compose_efsms(["A", "B"], [a, mutated], 1)
    assert report.result == "unspecified_reception"
    assert "cannot receive 'M'" in report.message
    assert report.trace[-1].as_triple() == ("A", "B", "M")


def test_mutual_opening_sends_deadlock_synchronously():
    # Both roles start with a send; under rendezvous semantics neither
    # can fire. The two-state product is enumerable by hand: only the
    # initial configuration exists.
    module = parse_module(
        """
module m;
global protocol P(role A, role B) {
    M() from A to B;
    N() from B to A;
}
"""
    )
    a = to_efsm(project(module, "P", "A"), "P", "A")
    # B mutated to also send first: swap its receive/send order by
    # composing two copies of A's machine under swapped peer names.
    b_sendfirst = import_efsm_json(
        export_efsm_json(a).replace('"peer": "B"', '"peer": "A"').replace(
            '"role": "A"', '"role": "B"'
        ).replace('"label": "M"', '"label": "X"')
    )
    report = compose_efsms(["A", "B"], [a, b_sendfirst], 0)
    assert report.result == "deadlock"
    assert report.explored_states == 1
    # With a buffer the sends can cross, but the labels mismatch.
    buffered = compose_efsms(["A", "B"], [a, b_sendfirst], 1)
    assert buffered.result == "unspecified_reception"


def test_orphan_message_detected():
    # A sends M and stops; B is a terminal-only machine that never
    # receives anything, leaving M stranded in the buffer.
    module = parse_module(
        'module m; global protocol P(role A, role B) { M() from A to B; }'
    )
    a = to_efsm(project(module, "P", "A"), "P", "A")
    no_receive = Efsm("P", "B", 0, 0, ((0, "terminal"),), ())
    report = compose_efsms(["A", "B"], [a, no_receive], 1)
    assert report.result == "orphan"
    assert "never received" in report.message


def test_wrong_sender_choice_cannot_slip_through():
    # Mutating Battleship's choice so a branch is opened by the wrong
    # role must be caught: either projection fails or the composition
    # reports a defect.
    module = load_corpus_module("battleship.scr")
    game = module.protocol("Game")
    choice = game.body[1]
    assert isinstance(choice, Choice)
    first = choice.branches[0][0]
    assert isinstance(first, Transfer)
    flipped = Transfer(first.label, first.payloads, first.to_role, first.from_role)
    new_branch = (flipped,) + choice.branches[0][1:]
    new_choice = Choice(choice.at, (new_branch,) + choice.branches[1:])
    new_game = type(game)(game.name, game.role_params, (game.body[0], new_choice))
    mutated = type(module)(
        module.name, module.type_decls, (module.protocols[0], new_game)
    )

    diags = check_well_formed(mutated)
    caught = has_errors(diags)
    if not caught:
        try:
            report = compose_check(mutated, "Game", 1)
            caught = not report.ok
        except ProjectError:
            caught = True
    assert caught


def test_explosion_limit_raises():
    module = load_corpus_module("battleship.scr")
    with pytest.raises(ExplosionLimit):
        compose_check(module, "BattleShips", 1, state_cap=10)


def test_traces_replay_to_the_defect():
    module = parse_module(
        'module m; global protocol P(role A, role B) { M() from A to B; }'
    )
    a = to_efsm(project(module, "P", "A"), "P", "A")
    b = to_efsm(project(module, "P", "B"), "P", "B")
    mutated = compose_efsms(
        ["A", "B"],
        [a, import_efsm_json(export_efsm_json(b).replace('"label": "M"', '"label": "N"'))],
        1,
    )
    # The trace is replayable: a single send of M by A.
    assert [e.kind for e in mutated.trace] == ["send"]


def test_determinism_of_reports():
    module = load_corpus_module("battleship.scr")
    r1 = compose_check(module, "BattleShips", 1)
    r2 = compose_check(module, "BattleShips", 1)
    assert (r1.result, r1.explored_states, r1.trace) == (
        r2.result,
        r2.explored_states,
        r2.trace,
    )
