"""In-memory transport: linked endpoint pairs over crossed FIFO queues.

Addresses look like ``mem:<pair-id>``; a listener registers the id in a
process-local registry and dialling the same id yields the peer side.
"""

from __future__ import annotations

import asyncio
from typing import Optional

from . import TransportClosed, TransportRefused

_CLOSE = object()


class MemConnection:
    def __init__(self, inbox: asyncio.Queue, outbox: asyncio.Queue):
        self._inbox = inbox
        self._outbox = outbox
        self._closed = False
        self._drained = False

    async def send_frame(self, text: str) -> None:
        if self._closed:
            raise TransportClosed("connection is closed")
        await self._outbox.put(text)

    async def recv_frame(self) -> str:
        if self._drained:
            raise TransportClosed("connection is closed")
        item = await self._inbox.get()
        if item is _CLOSE:
            self._drained = True
            raise TransportClosed("peer closed the connection")
        assert isinstance(item, str)
        return item

    async def close(self) -> None:
        if not self._closed:
            self._closed = True
            await self._outbox.put(_CLOSE)


def pair() -> tuple[MemConnection, MemConnection]:
    """A fresh linked pair; frames sent on one side arrive on the other."""
    a_to_b: asyncio.Queue = asyncio.Queue()
    b_to_a: asyncio.Queue = asyncio.Queue()
    return MemConnection(b_to_a, a_to_b), MemConnection(a_to_b, b_to_a)


class MemListener:
    def __init__(self, address: str):
        self.address = address
        self._pending: asyncio.Queue = asyncio.Queue()
        self._feeders: list[asyncio.Task] = []
        self._closed = False

    async def accept(self) -> tuple[MemConnection, str]:
        item = await self._pending.get()
        if item is _CLOSE:
            raise TransportClosed(f"listener {self.address} closed")
        conn, first = item
        return conn, first

    async def close(self) -> None:
        if not self._closed:
            self._closed = True
            _REGISTRY.pop(self.address, None)
            for task in self._feeders:
                task.cancel()
            await self._pending.put(_CLOSE)


_REGISTRY: dict[str, MemListener] = {}


async def listen(address: str) -> MemListener:
    if address in _REGISTRY:
        raise TransportRefused(f"{address} already has a listener")
    listener = MemListener(address)
    _REGISTRY[address] = listener
    return listener


async def dial(address: str) -> MemConnection:
    listener: Optional[MemListener] = _REGISTRY.get(address)
    if listener is None:
        raise TransportRefused(f"nothing is listening on {address}")
    ours, theirs = pair()

    # The listener contract hands over each connection together with its
    # first frame (the session handshake), so stage that read here.
    async def feed() -> None:
        try:
            first = await theirs.recv_frame()
        except TransportClosed:
            return
        await listener._pending.put((theirs, first))

    task = asyncio.get_running_loop().create_task(feed())
    listener._feeders.append(task)
    return ours
