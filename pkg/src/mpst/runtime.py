"""Linear session execution over pluggable transports.

A :class:`Session` is a deferred computation from a channel in one
protocol state to a channel in another, carrying a result. User code
never touches the channel: sessions are built exclusively from the
generated per-role capability functions (plus :func:`lift` and
:func:`pure`) and composed with :meth:`Session.then`, so a channel
state can neither be reused nor abandoned without the program failing
to type check. The state parameters are erased at runtime; the only
dynamic checks are on inbound traffic.

Execution: ``await execute(protocol, role, config, program)`` — or the
``run`` wrapper each generated role module exports, which pins the
program's initial and terminal state types.
"""

from __future__ import annotations

import asyncio
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Awaitable, Callable, Generic, Mapping, TypeVar, Union

from . import transport as transport_mod
from .transport import (
    AlreadyConnected,
    Connection,
    HandshakeFailed,
    Listener,
    TransportClosed,
    TransportError,
)
from .wire import (
    ACCEPT_LABEL,
    CONNECT_LABEL,
    DISCONNECT_LABEL,
    MalformedMessage,
    WireMessage,
    accept_frame,
    connect_frame,
    decode_frame,
    disconnect_frame,
    parse_connect_frame,
)

logger = logging.getLogger(__name__)

S = TypeVar("S")
T = TypeVar("T")
U = TypeVar("U")
A = TypeVar("A")
B = TypeVar("B")


class SessionError(Exception):
    """Base class for session-level failures."""


class ProtocolError(SessionError):
    """Inbound traffic that does not fit the expected protocol state."""


class UnexpectedLabel(ProtocolError):
    def __init__(self, got: str, expected: str):
        super().__init__(f"expected message {expected!r}, received {got!r}")
        self.got = got
        self.expected = expected


class UnknownBranchLabel(ProtocolError):
    def __init__(self, got: str, known: tuple[str, ...]):
        super().__init__(
            f"received branch label {got!r}, expected one of {sorted(known)}"
        )
        self.got = got
        self.known = known


class Malformed(ProtocolError):
    """A frame whose payload failed decoding."""


#: Callback invoked after every wire event: (direction "out"|"in", peer, label).
MonitorHook = Callable[[str, str, str], None]


@dataclass
class SessionConfig:
    """Per-session execution settings.

    ``acceptor`` supplies inbound connections for roles that are
    connected *to* (servers); dial-only endpoints leave it None.
    ``timeout`` bounds each receive in seconds (None waits forever;
    games wait on humans). ``monitor`` observes every wire event.

    Protocols with explicit connect actions establish connections as
    session steps. For protocols without them, ``dial_peers`` maps peer
    roles to addresses dialled before the program starts, and
    ``accept_peers`` lists peers whose inbound connections are taken
    from the acceptor up front.
    """

    acceptor: "RoleAcceptor | None" = None
    timeout: float | None = None
    monitor: MonitorHook | None = None
    dial_peers: dict[str, str] | None = None
    accept_peers: tuple[str, ...] = ()


class RoleAcceptor:
    """Binds inbound connections to peer roles via the opening handshake.

    Connections whose handshake names a different protocol are rejected
    and closed; connections for not-yet-requested roles are stashed, so
    dial order does not matter.
    """

    def __init__(self, listener: Listener, protocol: str):
        self.listener = listener
        self.protocol = protocol
        self._stash: dict[str, deque[Connection]] = {}
        self._lock = asyncio.Lock()

    async def take(self, role: str) -> Connection:
        async with self._lock:
            stashed = self._stash.get(role)
            if stashed:
                return stashed.popleft()
            while True:
                conn, first = await self.listener.accept()
                try:
                    protocol, peer_role = parse_connect_frame(decode_frame(first))
                except MalformedMessage as exc:
                    logger.warning("rejecting connection with bad handshake: %s", exc)
                    await conn.close()
                    continue
                if protocol != self.protocol:
                    logger.warning(
                        "rejecting connection for foreign protocol %r", protocol
                    )
                    await conn.close()
                    continue
                await conn.send_frame(accept_frame().encode())
                if peer_role == role:
                    return conn
                self._stash.setdefault(peer_role, deque()).append(conn)

    async def close(self) -> None:
        await self.listener.close()


async def acceptor_for(address: str, protocol: str) -> RoleAcceptor:
    """Listen on ``address`` and hand out handshake-validated connections."""
    listener = await transport_mod.listen(address)
    return RoleAcceptor(listener, protocol)


class _Channel:
    """Runtime state of one session: per-peer connections and queues.

    The protocol-state index of the public API is erased here; safety
    comes from the typed capability layer above.
    """

    def __init__(self, protocol: str, role: str, config: SessionConfig):
        self.protocol = protocol
        self.role = role
        self.config = config
        self.conns: dict[str, Connection] = {}
        self.queues: dict[str, deque[WireMessage]] = {}

    def connection(self, peer: str) -> Connection:
        try:
            return self.conns[peer]
        except KeyError:
            raise SessionError(
                f"{self.role} has no connection to {peer}; transports desynced"
            ) from None

    def _note(self, direction: str, peer: str, label: str) -> None:
        if self.config.monitor is not None:
            self.config.monitor(direction, peer, label)

    async def send(self, peer: str, msg: WireMessage) -> None:
        await self.connection(peer).send_frame(msg.encode())
        self._note("out", peer, msg.label)

    async def pull(self, peer: str) -> WireMessage:
        """Next frame from ``peer``, in arrival order.

        Frames pushed back by branch dispatch are served first and do
        not re-fire the monitor (one monitor event per wire frame).
        """
        queue = self.queues.setdefault(peer, deque())
        if queue:
            return queue.popleft()
        recv = self.connection(peer).recv_frame()
        if self.config.timeout is not None:
            text = await asyncio.wait_for(recv, self.config.timeout)
        else:
            text = await recv
        msg = decode_frame(text)
        self._note("in", peer, msg.label)
        return msg

    def push_back(self, peer: str, msg: WireMessage) -> None:
        self.queues.setdefault(peer, deque()).appendleft(msg)

    async def close_all(self) -> None:
        for conn in self.conns.values():
            try:
                await conn.close()
            except TransportError:
                pass
        self.conns.clear()


class _Splice:
    """Internal: a primitive's request to continue as another session."""

    __slots__ = ("session",)

    def __init__(self, session: "Session[Any, Any, Any]"):
        self.session = session


class Session(Generic[S, T, A]):
    """A protocol fragment from state ``S`` to state ``T`` yielding ``A``.

    Construct values only through the generated capability functions,
    :func:`lift` and :func:`pure`; compose with :meth:`then` / :meth:`map`.

    Execution is trampolined: composition and branch dispatch consume
    no Python stack, so unboundedly recursive protocols (games that
    loop for hundreds of rounds) run in constant stack space.
    """

    __slots__ = ("_prim", "_steps")

    def __init__(self, prim: Callable[[_Channel], Awaitable[Any]]):
        self._prim = prim
        self._steps: tuple[tuple[str, Callable[[Any], Any]], ...] = ()

    @staticmethod
    def _compose(
        base: "Session[Any, Any, Any]", step: tuple[str, Callable[[Any], Any]]
    ) -> "Session[Any, Any, Any]":
        out = Session(base._prim)
        out._steps = base._steps + (step,)
        return out

    def then(self, step: Callable[[A], "Session[T, U, B]"]) -> "Session[S, U, B]":
        """Sequential composition; ``step`` sees this session's result."""
        return self._compose(self, ("bind", step))

    def map(self, fn: Callable[[A], B]) -> "Session[S, T, B]":
        return self._compose(self, ("map", fn))

    async def _run(self, chan: _Channel) -> A:
        queue = list(self._steps)
        pending: list[list[tuple[str, Callable[[Any], Any]]]] = []
        value: Any = await self._prim(chan)
        while True:
            if isinstance(value, _Splice):
                nxt = value.session
                if queue:
                    pending.append(queue)
                queue = list(nxt._steps)
                value = await nxt._prim(chan)
                continue
            if not queue:
                if not pending:
                    return value
                queue = pending.pop()
                continue
            kind, fn = queue.pop(0)
            if kind == "map":
                value = fn(value)
            else:
                value = _Splice(fn(value))


def pure(value: A) -> Session[S, S, A]:
    """A session that performs no communication and yields ``value``."""

    async def run(chan: _Channel) -> A:
        return value

    return Session(run)


def lift(
    effect: Union[Callable[[], Awaitable[A]], Callable[[], A]]
) -> Session[S, S, A]:
    """Run an effect (async or plain thunk) without changing state."""

    async def run(chan: _Channel) -> A:
        result = effect()
        if asyncio.iscoroutine(result) or isinstance(result, Awaitable):
            return await result  # type: ignore[no-any-return]
        return result  # type: ignore[return-value]

    return Session(run)


# -- capability constructors (called by generated code) ------------------------


def op_send(peer: str, value: Any) -> Session[Any, Any, None]:
    async def run(chan: _Channel) -> None:
        await chan.send(peer, value.to_wire())

    return Session(run)


def op_receive(
    peer: str, label: str, decoder: Callable[[WireMessage], A]
) -> Session[Any, Any, A]:
    async def run(chan: _Channel) -> A:
        msg = await chan.pull(peer)
        if msg.label != label:
            raise UnexpectedLabel(msg.label, label)
        try:
            return decoder(msg)
        except MalformedMessage as exc:
            raise Malformed(f"bad payload for {label!r}: {exc}") from None

    return Session(run)


def op_branch(
    peer: str, handlers: Mapping[str, Callable[[], Session[Any, Any, A]]]
) -> Session[Any, Any, A]:
    async def run(chan: _Channel) -> _Splice:
        msg = await chan.pull(peer)
        handler = handlers.get(msg.label)
        if handler is None:
            raise UnknownBranchLabel(msg.label, tuple(handlers))
        # One wire message, two logical steps: the handler's opening
        # receive consumes the very frame that selected it.
        chan.push_back(peer, msg)
        return _Splice(handler())

    return Session(run)


def op_connect(peer: str, address: str) -> Session[Any, Any, None]:
    async def run(chan: _Channel) -> None:
        if peer in chan.conns:
            raise AlreadyConnected(f"{chan.role} is already connected to {peer}")
        await _dial_peer(chan, peer, address)
        chan._note("out", peer, CONNECT_LABEL)

    return Session(run)


def op_accept(peer: str) -> Session[Any, Any, None]:
    async def run(chan: _Channel) -> None:
        acceptor = chan.config.acceptor
        if acceptor is None:
            raise SessionError(
                f"{chan.role} must accept a connection from {peer} but the "
                f"session has no acceptor configured"
            )
        if peer in chan.conns:
            raise AlreadyConnected(f"{chan.role} is already connected to {peer}")
        chan.conns[peer] = await acceptor.take(peer)
        chan._note("in", peer, CONNECT_LABEL)

    return Session(run)


def op_disconnect(peer: str) -> Session[Any, Any, None]:
    async def run(chan: _Channel) -> None:
        conn = chan.conns.pop(peer, None)
        if conn is None:
            raise SessionError(f"DisconnectUnknownPeer: {peer} is not connected")
        await conn.send_frame(disconnect_frame().encode())
        chan._note("out", peer, DISCONNECT_LABEL)
        await conn.close()

    return Session(run)


def op_await_disconnect(peer: str) -> Session[Any, Any, None]:
    async def run(chan: _Channel) -> None:
        msg = await chan.pull(peer)
        if msg.label != DISCONNECT_LABEL:
            raise UnexpectedLabel(msg.label, DISCONNECT_LABEL)
        conn = chan.conns.pop(peer, None)
        if conn is not None:
            await conn.close()

    return Session(run)


async def _dial_peer(chan: _Channel, peer: str, address: str) -> None:
    conn = await transport_mod.dial(address)
    await conn.send_frame(connect_frame(chan.protocol, chan.role).encode())
    reply = decode_frame(await conn.recv_frame())
    if reply.label != ACCEPT_LABEL:
        await conn.close()
        raise HandshakeFailed(
            f"{peer} at {address} replied {reply.label!r} to the handshake"
        )
    chan.conns[peer] = conn


async def execute(
    protocol: str, role: str, config: SessionConfig, program: Session[Any, Any, A]
) -> A:
    """Open a fresh channel, drive ``program`` to completion, close up."""
    chan = _Channel(protocol, role, config)
    try:
        for peer in config.accept_peers:
            if config.acceptor is None:
                raise SessionError("accept_peers given but no acceptor configured")
            chan.conns[peer] = await config.acceptor.take(peer)
        for peer in sorted(config.dial_peers or {}):
            await _dial_peer(chan, peer, (config.dial_peers or {})[peer])
        return await program._run(chan)
    finally:
        await chan.close_all()
