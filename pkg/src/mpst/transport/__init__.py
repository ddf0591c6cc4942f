"""Pluggable frame transports.

A transport moves whole UTF-8 text frames over a reliable,
order-preserving, duplex connection. ``dial``/``listen`` pick the
implementation from the address scheme: ``ws://host:port/path`` for
WebSocket, ``mem:<pair-id>`` for process-local in-memory pairs.
"""

from __future__ import annotations

from typing import AsyncIterator, Protocol, runtime_checkable


class TransportError(Exception):
    """Base class for transport failures."""


class TransportClosed(TransportError):
    """The peer closed the connection (end of stream)."""


class TransportRefused(TransportError):
    """No listener at the dialled address."""


class HandshakeFailed(TransportError):
    """The session handshake was rejected or malformed."""


class AlreadyConnected(TransportError):
    """A second connection was attempted for an already-bound peer."""


@runtime_checkable
class Connection(Protocol):
    async def send_frame(self, text: str) -> None: ...

    async def recv_frame(self) -> str: ...

    async def close(self) -> None: ...


@runtime_checkable
class Listener(Protocol):
    async def accept(self) -> tuple[Connection, str]:
        """Next inbound connection with its first frame already read."""
        ...

    async def close(self) -> None: ...


async def dial(address: str) -> Connection:
    if address.startswith("mem:"):
        from . import memory

        return await memory.dial(address)
    if address.startswith(("ws://", "wss://")):
        from . import websocket

        return await websocket.dial(address)
    raise TransportError(f"unsupported transport address {address!r}")


async def listen(address: str) -> Listener:
    if address.startswith("mem:"):
        from . import memory

        return await memory.listen(address)
    if address.startswith(("ws://", "wss://")):
        from . import websocket

        return await websocket.listen(address)
    raise TransportError(f"unsupported transport address {address!r}")


async def connections_of(listener: Listener) -> AsyncIterator[tuple[Connection, str]]:
    """Iterate accepted connections until the listener closes."""
    while True:
        try:
            yield await listener.accept()
        except TransportClosed:
            return
