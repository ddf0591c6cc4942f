"""Session runtime: combinators, wire errors, branching, linear flows."""

from __future__ import annotations

import asyncio
import itertools
import random
import sys

import pytest

from mpst import corpus_text
from mpst.codegen import generate_package
from mpst.parser import parse_module
from mpst.runtime import (
    Malformed,
    SessionConfig,
    UnexpectedLabel,
    UnknownBranchLabel,
    acceptor_for,
    execute,
    lift,
    op_branch,
    op_receive,
    op_send,
    pure,
)
from mpst.wire import WireMessage, decode_frame
from mpst.battleship.gen.messages import Attack, Hit, HitLocation, Init, MissLocation
from mpst.battleship.game import Config, Location, classic_config

_ids = itertools.count()


def addr() -> str:
    return f"mem:runtime-{next(_ids)}"


def run(coro):
    return asyncio.run(asyncio.wait_for(coro, 30))


async def run_pair(left_program, right_program, protocol="T", address=None):
    """Drive two sessions against each other over one transport link."""
    if address is None:
        address = addr()
    acceptor = await acceptor_for(address, protocol)
    try:
        left = execute(
            protocol,
            "L",
            SessionConfig(acceptor=acceptor, accept_peers=("R",)),
            left_program,
        )
        right = execute(
            protocol, "R", SessionConfig(dial_peers={"L": address}), right_program
        )
        return await asyncio.gather(left, right)
    finally:
        await acceptor.close()


def test_pure_program_runs_without_io():
    # A protocol whose initial state is terminal: no connections, no frames.
    result = run(execute("T", "L", SessionConfig(), pure(41).map(lambda v: v + 1)))
    assert result == 42


def test_send_receive_round_trip_all_message_shapes():
    # Codec oracle: decoding the raw frame text directly must agree
    # with what the receiving combinator produces.
    messages = [
        Init(classic_config()),
        Attack(Location(3, 5)),
        Hit(),
        HitLocation(Location(9, 9)),
        MissLocation(Location(0, 7)),
    ]

    for msg in messages:
        frame_text = msg.to_wire().encode()
        oracle = type(msg).from_wire(decode_frame(frame_text))
        assert oracle == msg

        left = op_send("R", msg).then(lambda _: pure("sent"))
        right = op_receive("L", msg.LABEL, type(msg).from_wire)
        _, received = run(run_pair(left, right))
        assert received == msg


def test_wire_frames_are_exact():
    assert Attack(Location(0, 0)).to_wire().encode() == (
        '{"label":"Attack","payload":[{"x":0,"y":0}]}'
    )
    assert Hit().to_wire().encode() == '{"label":"hit","payload":[]}'
    init = Init(Config(((Location(1, 2),),)))
    assert init.to_wire().encode() == (
        '{"label":"Init","payload":[[[{"x":1,"y":2}]]]}'
    )


def test_unexpected_label_is_rejected():
    left = op_send("R", Hit())
    right = op_receive("L", "Attack", Attack.from_wire)
    with pytest.raises(UnexpectedLabel) as exc_info:
        run(run_pair(left, right))
    assert (exc_info.value.got, exc_info.value.expected) == ("hit", "Attack")


def test_malformed_payload_is_rejected():
    # The label matches but the payload does not decode as a Location.
    left = op_send("R", Hit()).map(lambda _: None)  # hit carries no payload
    right = op_receive("L", "hit", HitLocation.from_wire)
    with pytest.raises(Malformed):
        run(run_pair(left, right))


def test_branch_dispatches_and_reenqueues():
    # One wire message, two logical steps: the branch consumes the frame
    # to choose, then the opening receive sees the same frame. The
    # observable result equals decoding the frame once (direct oracle).
    sent = HitLocation(Location(4, 2))
    left = op_send("R", sent)
    right = op_branch(
        "L",
        {
            "hit": lambda: op_receive("L", "hit", HitLocation.from_wire),
            "miss": lambda: op_receive("L", "miss", MissLocation.from_wire),
        },
    )
    _, got = run(run_pair(left, right))
    assert got == HitLocation.from_wire(decode_frame(sent.to_wire().encode()))


def test_unknown_branch_label():
    left = op_send("R", Attack(Location(1, 1)))
    right = op_branch(
        "L", {"hit": lambda: op_receive("L", "hit", HitLocation.from_wire)}
    )
    with pytest.raises(UnknownBranchLabel):
        run(run_pair(left, right))


def test_lift_commutes_with_receive():
    msg = Attack(Location(2, 2))
    lifted_first = lift(lambda: "effect").then(
        lambda _: op_receive("L", "Attack", Attack.from_wire)
    )
    receive_first = op_receive("L", "Attack", Attack.from_wire).then(
        lambda m: lift(lambda: "effect").map(lambda _: m)
    )
    for right in (lifted_first, receive_first):
        _, got = run(run_pair(op_send("R", msg), right))
        assert got == msg


def test_lift_accepts_async_thunks():
    async def eff():
        await asyncio.sleep(0)
        return 7

    assert run(execute("T", "L", SessionConfig(), lift(eff))) == 7


def test_receive_timeout():
    async def main():
        address = addr()
        acceptor = await acceptor_for(address, "T")
        try:
            left = execute(
                "T",
                "L",
                SessionConfig(acceptor=acceptor, accept_peers=("R",), timeout=0.05),
                op_receive("R", "never", Attack.from_wire),
            )
            right = execute(
                "T",
                "R",
                SessionConfig(dial_peers={"L": address}),
                lift(lambda: asyncio.sleep(0.5)),
            )
            with pytest.raises(asyncio.TimeoutError):
                await asyncio.gather(left, right)
        finally:
            await acceptor.close()

    run(main())


@pytest.mark.parametrize(
    "address",
    [None, "ws://127.0.0.1:19600/order"],
    ids=["mem", "ws"],
)
def test_order_preserved_across_1000_messages(address):
    n = 1000
    locations = [Location(i % 10, (i // 10) % 10) for i in range(n)]

    def send_all(i: int):
        if i == n:
            return pure(None)
        return op_send("R", Attack(locations[i])).then(lambda _: send_all(i + 1))

    def recv_all(i: int, seen: list):
        if i == n:
            return pure(seen)
        return op_receive("L", "Attack", Attack.from_wire).then(
            lambda m: recv_all(i + 1, seen + [m.value])
        )

    _, got = run(run_pair(send_all(0), recv_all(0, []), address=address))
    assert got == locations


# -- generated connect/disconnect flow (Fetch protocol) --------------------------


def _materialize(tmp_path, module_name: str, protocol: str, scr: str):
    artifact = generate_package(
        parse_module(corpus_text(scr)), protocol, module_name=module_name
    )
    for rel, text in artifact.files.items():
        path = tmp_path / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    sys.path.insert(0, str(tmp_path))


def test_fetch_protocol_with_connect_and_disconnect(tmp_path):
    _materialize(tmp_path, "fetch_gen", "Fetch", "connect_demo.scr")
    try:
        from fetch_gen import Fetch_Client as client
        from fetch_gen import Fetch_Server as server
        from fetch_gen.messages import Reply, Request

        async def main():
            address = addr()
            acceptor = await acceptor_for(address, "Fetch")
            try:
                client_prog = (
                    client.connect_s0(address)
                    .then(lambda _: client.send_s1(Request("cats")))
                    .then(lambda _: client.receive_s2())
                    .then(
                        lambda reply: client.disconnect_s3().map(lambda _: reply.value)
                    )
                )
                server_prog = (
                    server.accept_s0()
                    .then(lambda _: server.receive_s1())
                    .then(lambda req: server.send_s2(Reply(f"{req.value}!")))
                    .then(lambda _: server.await_disconnect_s3())
                    .map(lambda _: "served")
                )
                return await asyncio.gather(
                    client.run(SessionConfig(), client_prog),
                    server.run(SessionConfig(acceptor=acceptor), server_prog),
                )
            finally:
                await acceptor.close()

        got, served = run(main())
        assert got == "cats!"
        assert served == "served"
    finally:
        sys.path.remove(str(tmp_path))


def test_adder_protocol_runtime_select(tmp_path):
    # Exercises select-by-send overloads and recursion at runtime.
    _materialize(tmp_path, "adder_gen", "Adder", "rec_adder.scr")
    try:
        from adder_gen import Adder_Client as client
        from adder_gen import Adder_Server as server
        from adder_gen.messages import Add, Quit, Sum, Total

        def client_adds(values, total_seen):
            if not values:
                return client.send_s0(Quit()).then(lambda _: client.receive_s2()).map(
                    lambda t: t.value
                )
            head, *rest = values
            return (
                client.send_s0(Add(head))
                .then(lambda _: client.receive_s1())
                .then(lambda s: client_adds(rest, s.value))
            )

        def server_loop(total):
            return server.branch_s0(
                server.BranchS0(
                    add=lambda: server.receive_s4().then(
                        lambda m: server.send_s1(Sum(total + m.value)).then(
                            lambda _: server_loop(total + m.value)
                        )
                    ),
                    quit=lambda: server.receive_s5().then(
                        lambda _: server.send_s2(Total(total)).map(lambda _: total)
                    ),
                )
            )

        async def main():
            address = addr()
            acceptor = await acceptor_for(address, "Adder")
            try:
                return await asyncio.gather(
                    client.run(
                        SessionConfig(dial_peers={"Server": address}),
                        client_adds([1, 2, 3, 4], 0),
                    ),
                    server.run(
                        SessionConfig(acceptor=acceptor, accept_peers=("Client",)),
                        server_loop(0),
                    ),
                )
            finally:
                await acceptor.close()

        client_total, server_total = run(main())
        assert client_total == 10
        assert server_total == 10
    finally:
        sys.path.remove(str(tmp_path))
