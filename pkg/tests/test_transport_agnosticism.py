"""Trace-diff harness: the same seeded match produces byte-identical
frame sequences over the in-memory and WebSocket transports."""

from __future__ import annotations

import asyncio
import itertools

import pytest

from mpst import transport as transport_mod
from mpst.battleship.bot import bot_main
from mpst.battleship.server import serve_match
from mpst.runtime import SessionConfig, acceptor_for

_ids = itertools.count()


class _TappedConnection:
    """Wraps a connection, recording every frame with its direction."""

    def __init__(self, inner, log: list[tuple[str, str]]):
        self._inner = inner
        self._log = log

    async def send_frame(self, text: str) -> None:
        self._log.append(("out", text))
        await self._inner.send_frame(text)

    async def recv_frame(self) -> str:
        text = await self._inner.recv_frame()
        self._log.append(("in", text))
        return text

    async def close(self) -> None:
        await self._inner.close()


async def _run_tapped_match(address: str, monkeypatch) -> list[list[tuple[str, str]]]:
    """One seeded match; returns the per-dial frame logs in dial order."""
    logs: list[list[tuple[str, str]]] = []
    real_dial = transport_mod.dial

    async def tapped_dial(addr: str):
        conn = await real_dial(addr)
        log: list[tuple[str, str]] = []
        logs.append(log)
        return _TappedConnection(conn, log)

    monkeypatch.setattr(transport_mod, "dial", tapped_dial)
    acceptor = await acceptor_for(address, "BattleShips")
    try:
        # Sequence the dials so "first log = P1, second log = P2" holds
        # on every transport.
        server = asyncio.create_task(serve_match(acceptor))
        p1 = asyncio.create_task(bot_main(address, "P1", seed=41))
        await asyncio.sleep(0.05)
        p2 = asyncio.create_task(bot_main(address, "P2", seed=42))
        await asyncio.wait_for(asyncio.gather(server, p1, p2), 30)
    finally:
        monkeypatch.setattr(transport_mod, "dial", real_dial)
        await acceptor.close()
    return logs


def test_mem_and_websocket_traces_are_byte_identical(monkeypatch):
    mem_logs = asyncio.run(
        _run_tapped_match(f"mem:tracediff-{next(_ids)}", monkeypatch)
    )
    ws_logs = asyncio.run(
        _run_tapped_match("ws://127.0.0.1:19500/tracediff", monkeypatch)
    )
    assert len(mem_logs) == len(ws_logs) == 2
    for mem_log, ws_log in zip(mem_logs, ws_logs):
        assert mem_log == ws_log
    # Sanity: the logs really carry the whole match.
    labels = [frame for _, frame in mem_logs[0]]
    assert any('"Init"' in f for f in labels)
    assert any('"Attack"' in f for f in labels)
