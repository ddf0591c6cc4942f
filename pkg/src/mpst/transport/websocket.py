"""WebSocket transport (RFC 6455) on top of the ``websockets`` library.

Text frames only; a binary frame from a peer is a protocol violation.
Listener addresses look like ``ws://host:port/path``; connections on a
different path are rejected during the HTTP upgrade.
"""

from __future__ import annotations

import asyncio
from urllib.parse import urlparse

import websockets
from websockets.asyncio.client import connect as ws_connect
from websockets.asyncio.server import serve as ws_serve

from . import HandshakeFailed, TransportClosed, TransportError, TransportRefused

_CLOSE = object()


class WsConnection:
    def __init__(self, ws, done: asyncio.Future | None = None) -> None:
        self._ws = ws
        self._done = done

    async def send_frame(self, text: str) -> None:
        try:
            await self._ws.send(text)
        except websockets.exceptions.ConnectionClosed as exc:
            raise TransportClosed(str(exc)) from None

    async def recv_frame(self) -> str:
        try:
            frame = await self._ws.recv()
        except websockets.exceptions.ConnectionClosed as exc:
            raise TransportClosed(str(exc)) from None
        if isinstance(frame, bytes):
            await self._ws.close(code=1003)
            raise TransportError("binary frames are not part of the wire protocol")
        return frame

    async def close(self) -> None:
        await self._ws.close()
        if self._done is not None and not self._done.done():
            self._done.set_result(None)


class WsListener:
    def __init__(self, address: str):
        self.address = address
        self._pending: asyncio.Queue = asyncio.Queue()
        self._server = None
        self._closed = False

    async def _handler(self, ws) -> None:
        done: asyncio.Future = asyncio.get_running_loop().create_future()
        conn = WsConnection(ws, done)
        try:
            first = await conn.recv_frame()
        except (TransportClosed, TransportError):
            return
        await self._pending.put((conn, first))
        # Keep the connection open until the session side is finished
        # with it (or the peer goes away); the websockets handler closes
        # the socket on return.
        closed = asyncio.ensure_future(ws.wait_closed())
        try:
            await asyncio.wait({done, closed}, return_when=asyncio.FIRST_COMPLETED)
        except asyncio.CancelledError:
            pass
        finally:
            closed.cancel()

    async def start(self) -> None:
        url = urlparse(self.address)
        if url.hostname is None or url.port is None:
            raise TransportError(f"listener address needs host and port: {self.address}")
        path = url.path or "/"

        def select(connection, request):
            if request.path != path:
                return connection.respond(404, "unknown path\n")
            return None

        self._server = await ws_serve(
            self._handler, url.hostname, url.port, process_request=select
        )

    async def accept(self) -> tuple[WsConnection, str]:
        item = await self._pending.get()
        if item is _CLOSE:
            raise TransportClosed(f"listener {self.address} closed")
        conn, first = item
        return conn, first

    async def close(self) -> None:
        if self._closed:
            return
        self._closed = True
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()
        await self._pending.put(_CLOSE)


async def dial(address: str) -> WsConnection:
    try:
        ws = await ws_connect(address, open_timeout=10)
    except (OSError, asyncio.TimeoutError) as exc:
        raise TransportRefused(f"cannot reach {address}: {exc}") from None
    except websockets.exceptions.InvalidStatus as exc:
        raise HandshakeFailed(f"{address} rejected the upgrade: {exc}") from None
    except websockets.exceptions.WebSocketException as exc:
        raise HandshakeFailed(str(exc)) from None
    return WsConnection(ws)


async def listen(address: str) -> WsListener:
    listener = WsListener(address)
    try:
        await listener.start()
    except OSError as exc:
        raise TransportRefused(f"cannot bind {address}: {exc}") from None
    return listener
