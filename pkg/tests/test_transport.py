"""Transport contract: reliability, ordering, close semantics."""

from __future__ import annotations

import asyncio
import itertools

import pytest

from mpst.transport import TransportClosed, TransportRefused, dial, listen
from mpst.transport.memory import pair

_ids = itertools.count()


def _mem_addr() -> str:
    return f"mem:test-{next(_ids)}"


_ws_ports = itertools.count(18750)


def _ws_addr() -> str:
    return f"ws://127.0.0.1:{next(_ws_ports)}/t"


def run(coro):
    return asyncio.run(asyncio.wait_for(coro, 30))


@pytest.mark.parametrize("make_addr", [_mem_addr, _ws_addr], ids=["mem", "ws"])
def test_echo_smoke(make_addr):
    async def main():
        addr = make_addr()
        listener = await listen(addr)
        try:
            client = await dial(addr)
            await client.send_frame("x")
            server, first = await listener.accept()
            assert first == "x"
            await server.send_frame("x")
            assert await client.recv_frame() == "x"
            await client.close()
            await server.close()
        finally:
            await listener.close()

    run(main())


@pytest.mark.parametrize("make_addr", [_mem_addr, _ws_addr], ids=["mem", "ws"])
def test_1000_frames_arrive_in_order(make_addr):
    async def main():
        addr = make_addr()
        listener = await listen(addr)
        try:
            client = await dial(addr)
            await client.send_frame("seq:start")
            server, first = await listener.accept()
            assert first == "seq:start"

            async def send_all():
                for i in range(1000):
                    await client.send_frame(f"seq:{i}")

            async def recv_all():
                got = []
                for _ in range(1000):
                    got.append(await server.recv_frame())
                return got

            _, got = await asyncio.gather(send_all(), recv_all())
            assert got == [f"seq:{i}" for i in range(1000)]
            await client.close()
            await server.close()
        finally:
            await listener.close()

    run(main())


@pytest.mark.parametrize("make_addr", [_mem_addr, _ws_addr], ids=["mem", "ws"])
def test_peer_close_yields_closed(make_addr):
    async def main():
        addr = make_addr()
        listener = await listen(addr)
        try:
            client = await dial(addr)
            await client.send_frame("hello")
            server, _ = await listener.accept()
            await server.close()
            with pytest.raises(TransportClosed):
                await client.recv_frame()
        finally:
            await listener.close()

    run(main())


@pytest.mark.parametrize("scheme_addr", ["mem:nobody-home", "ws://127.0.0.1:9/none"])
def test_dial_without_listener_is_refused(scheme_addr):
    async def main():
        with pytest.raises(TransportRefused):
            await dial(scheme_addr)

    run(main())


def test_mem_pair_ping_pong_and_bidirectional_order():
    async def main():
        a, b = pair()
        await a.send_frame("ping")
        assert await b.recv_frame() == "ping"
        await b.send_frame("pong")
        assert await a.recv_frame() == "pong"

        # Interleaved traffic keeps per-direction order.
        for i in range(100):
            await a.send_frame(f"a{i}")
            await b.send_frame(f"b{i}")
        assert [await b.recv_frame() for _ in range(100)] == [
            f"a{i}" for i in range(100)
        ]
        assert [await a.recv_frame() for _ in range(100)] == [
            f"b{i}" for i in range(100)
        ]
        await a.close()
        with pytest.raises(TransportClosed):
            await b.recv_frame()

    run(main())


def test_ws_rejects_wrong_path():
    async def main():
        addr = _ws_addr()
        listener = await listen(addr)
        try:
            from mpst.transport import HandshakeFailed

            with pytest.raises(HandshakeFailed):
                await dial(addr.rsplit("/", 1)[0] + "/other")
        finally:
            await listener.close()

    run(main())


def test_ws_rejects_binary_frames():
    async def main():
        addr = _ws_addr()
        listener = await listen(addr)
        try:
            import websockets

            raw = await websockets.connect(addr)
            await raw.send("first")
            server, _ = await listener.accept()
            await raw.send(b"\x00\x01")
            from mpst.transport import TransportError

            with pytest.raises(TransportError):
                await server.recv_frame()
            await raw.close()
        finally:
            await listener.close()

    run(main())
