"""EFSM monitor: accepts conformant traces, rejects everything else."""

from __future__ import annotations

import pytest

from mpst.efsm import to_efsm
from mpst.monitor import EfsmMonitor, MonitorViolation
from mpst.projector import project

from helpers import load_corpus_module


def p2_monitor() -> EfsmMonitor:
    module = load_corpus_module("battleship.scr")
    return EfsmMonitor(
        to_efsm(project(module, "BattleShips", "P2"), "BattleShips", "P2")
    )


def test_accepts_a_complete_session():
    monitor = p2_monitor()
    for event in [
        ("out", "GameServer", "__connect"),
        ("out", "GameServer", "Init"),
        ("in", "GameServer", "hit"),
        ("in", "GameServer", "miss"),
        ("out", "GameServer", "Attack"),
        ("in", "GameServer", "winner"),
    ]:
        monitor.feed(*event)
    assert monitor.finished


def test_rejects_wrong_label():
    monitor = p2_monitor()
    monitor.feed("out", "GameServer", "__connect")
    with pytest.raises(MonitorViolation):
        monitor.feed("out", "GameServer", "Attack")


def test_rejects_wrong_direction():
    monitor = p2_monitor()
    monitor.feed("out", "GameServer", "__connect")
    with pytest.raises(MonitorViolation):
        monitor.feed("in", "GameServer", "Init")


def test_rejects_traffic_after_terminal():
    monitor = p2_monitor()
    for event in [
        ("out", "GameServer", "__connect"),
        ("out", "GameServer", "Init"),
        ("in", "GameServer", "loser"),
    ]:
        monitor.feed(*event)
    assert monitor.finished
    with pytest.raises(MonitorViolation):
        monitor.feed("in", "GameServer", "hit")


def test_violation_remembers_state_and_events():
    monitor = p2_monitor()
    monitor.feed("out", "GameServer", "__connect")
    try:
        monitor.feed("out", "GameServer", "Attack")
    except MonitorViolation as exc:
        assert exc.state == monitor.state
    assert len(monitor.events) == 2
