"""Projection of global protocols onto individual roles.

Projection elides interactions that do not involve the target role.
Choices become Select for the deciding role, Branch for roles that
learn the outcome by receiving, and are merged for everyone else:
two projections merge when they are identical, or when both are
receives from the same peer — in which case their label tables are
unioned, merging recursively where labels collide.

``do`` calls are expanded with the call-site role binding; a repeated
(protocol, bound roles) key becomes a recursion back-reference, which
is what ties the Battleship attacker/defender swap into a loop.
"""

from __future__ import annotations

import math

from .ast import (
    Choice,
    Connect,
    Disconnect,
    Do,
    GlobalProtocolDecl,
    GlobalStatement,
    ScribbleModule,
    SourceSpan,
    Transfer,
)
from .localtype import (
    Branch,
    ConnectTo,
    DisconnectFrom,
    End,
    LocalType,
    Rec,
    RecvMsg,
    RecVar,
    Select,
    SendMsg,
    mentions_var,
)


class ProjectError(Exception):
    """Projection failure; ``span`` points at the offending statement."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.message = message
        self.span = span


class Unmergeable(ProjectError):
    """Sibling choice branches demand different behavior from an uninformed role."""


class UnboundedRec(ProjectError):
    """The (protocol, role binding) expansion exceeded its finite bound."""


def project(module: ScribbleModule, protocol: str, role: str) -> LocalType:
    """Project ``protocol`` (declared in ``module``) onto ``role``.

    Expects the module to have passed the validator's syntactic checks;
    raises :class:`Unmergeable` / :class:`UnboundedRec` otherwise.
    """
    try:
        decl = module.protocol(protocol)
    except KeyError as exc:
        raise ProjectError(str(exc), module.span) from None
    if role not in decl.role_params:
        raise ProjectError(
            f"role {role!r} is not declared by protocol {protocol}", decl.span
        )
    # The entry is the first call site: seeding it as an active key makes
    # direct self-calls tie back to the root instead of unrolling once.
    binding = {r: r for r in decl.role_params}
    key = (protocol, tuple(decl.role_params))
    var = f"{protocol}<{','.join(decl.role_params)}>"
    proj = _Projector(module, role)
    proj._keys_seen.add(key)
    body = proj.sequence(decl.body, binding, {key: var})
    if not mentions_var(body, var):
        return body
    if _unguarded(body, var):
        raise ProjectError(
            f"recursion through {protocol} performs no action for role {role} "
            f"before repeating",
            decl.span,
        )
    return Rec(var, body)


class _Projector:
    def __init__(self, module: ScribbleModule, role: str):
        self.module = module
        self.role = role
        # Bindings range over permutations of concretely bound roles, so the
        # number of distinct expansion keys is finite.
        self._key_bound = sum(
            math.factorial(len(p.role_params)) for p in module.protocols
        )
        self._keys_seen: set[tuple[str, tuple[str, ...]]] = set()

    def sequence(
        self,
        stmts: tuple[GlobalStatement, ...],
        binding: dict[str, str],
        active: dict[tuple[str, tuple[str, ...]], str],
    ) -> LocalType:
        if not stmts:
            return End()
        stmt, rest = stmts[0], stmts[1:]

        if isinstance(stmt, Transfer):
            src = binding[stmt.from_role]
            dst = binding[stmt.to_role]
            cont = self.sequence(rest, binding, active)
            if self.role == src:
                return SendMsg(dst, stmt.label, stmt.payloads, cont)
            if self.role == dst:
                return RecvMsg(src, stmt.label, stmt.payloads, cont)
            return cont

        if isinstance(stmt, Connect):
            src = binding[stmt.from_role]
            dst = binding[stmt.to_role]
            cont = self.sequence(rest, binding, active)
            if self.role == src:
                return ConnectTo(dst, False, cont)
            if self.role == dst:
                return ConnectTo(src, True, cont)
            return cont

        if isinstance(stmt, Disconnect):
            src = binding[stmt.from_role]
            dst = binding[stmt.to_role]
            cont = self.sequence(rest, binding, active)
            if self.role == src:
                return DisconnectFrom(dst, False, cont)
            if self.role == dst:
                return DisconnectFrom(src, True, cont)
            return cont

        if isinstance(stmt, Do):
            if rest:
                raise ProjectError(
                    "do must be the final statement of its block", stmt.span
                )
            return self.expand(stmt, binding, active)

        if isinstance(stmt, Choice):
            chooser = binding[stmt.at]
            parts = [
                self.sequence(branch + rest, binding, active)
                for branch in stmt.branches
            ]
            if self.role == chooser:
                return self._build_select(parts, stmt.span)
            merged = parts[0]
            for part in parts[1:]:
                merged = merge(merged, part, stmt.span)
            return merged

        raise ProjectError(f"unsupported statement {stmt!r}", stmt.span)  # pragma: no cover

    def expand(
        self,
        stmt: Do,
        binding: dict[str, str],
        active: dict[tuple[str, tuple[str, ...]], str],
    ) -> LocalType:
        try:
            target = self.module.protocol(stmt.protocol)
        except KeyError:
            raise ProjectError(
                f"do target {stmt.protocol!r} is not declared", stmt.span
            ) from None
        if len(stmt.role_args) != len(target.role_params):
            raise ProjectError(
                f"do {stmt.protocol} passes {len(stmt.role_args)} roles, "
                f"expected {len(target.role_params)}",
                stmt.span,
            )
        args = tuple(binding[a] for a in stmt.role_args)
        key = (stmt.protocol, args)
        if key in active:
            return RecVar(active[key])
        self._keys_seen.add(key)
        if len(self._keys_seen) > self._key_bound:
            raise UnboundedRec(
                f"recursion through {stmt.protocol} does not close over a "
                f"finite set of role bindings",
                stmt.span,
            )
        var = f"{stmt.protocol}<{','.join(args)}>"
        inner_binding = dict(zip(target.role_params, args))
        inner_active = dict(active)
        inner_active[key] = var
        body = self.sequence(target.body, inner_binding, inner_active)
        if not mentions_var(body, var):
            return body
        if _unguarded(body, var):
            raise ProjectError(
                f"recursion through {stmt.protocol} performs no action for "
                f"role {self.role} before repeating",
                stmt.span,
            )
        return Rec(var, body)

    def _build_select(self, parts: list[LocalType], span: SourceSpan) -> LocalType:
        entries: dict[str, SendMsg] = {}
        peer: str | None = None
        for part in parts:
            if isinstance(part, SendMsg):
                items: tuple[tuple[str, SendMsg], ...] = ((part.label, part),)
                part_peer = part.to
            elif isinstance(part, Select):
                items = part.branches
                part_peer = part.to
            else:
                raise Unmergeable(
                    f"a choice branch does not start with a message sent by "
                    f"the deciding role (projected to {type(part).__name__})",
                    span,
                )
            if peer is None:
                peer = part_peer
            elif peer != part_peer:
                raise Unmergeable(
                    f"choice branches start with sends to different peers "
                    f"({peer} vs {part_peer}), which no single state can offer",
                    span,
                )
            for label, body in items:
                if label in entries:
                    if entries[label] != body:
                        raise Unmergeable(
                            f"label {label!r} selects conflicting continuations",
                            span,
                        )
                else:
                    entries[label] = body
        assert peer is not None
        if len(entries) == 1:
            return next(iter(entries.values()))
        return Select(peer, tuple(entries.items()))


def _unguarded(body: LocalType, var: str) -> bool:
    while isinstance(body, Rec):
        body = body.body
    return isinstance(body, RecVar)


def merge(a: LocalType, b: LocalType, span: SourceSpan) -> LocalType:
    """Merge two projections of sibling branches for an uninformed role."""
    if a == b:
        return a
    a_entries = _receive_entries(a)
    b_entries = _receive_entries(b)
    if a_entries is None or b_entries is None:
        raise Unmergeable(
            f"branches require different behavior from an uninformed role: "
            f"{_describe(a)} vs {_describe(b)}",
            span,
        )
    peer_a, items_a = a_entries
    peer_b, items_b = b_entries
    if peer_a != peer_b:
        raise Unmergeable(
            f"branches expect messages from different peers ({peer_a} vs {peer_b})",
            span,
        )
    merged = dict(items_a)
    for label, body in items_b.items():
        if label in merged:
            merged[label] = _merge_recv(merged[label], body, span)
        else:
            merged[label] = body
    if len(merged) == 1:
        return next(iter(merged.values()))
    return Branch(peer_a, tuple(merged.items()))


def _merge_recv(a: RecvMsg, b: RecvMsg, span: SourceSpan) -> RecvMsg:
    if a.payloads != b.payloads:
        raise Unmergeable(
            f"label {a.label!r} carries {list(a.payloads)} in one branch "
            f"and {list(b.payloads)} in another",
            span,
        )
    return RecvMsg(a.from_role, a.label, a.payloads, merge(a.cont, b.cont, span))


def _receive_entries(
    lt: LocalType,
) -> tuple[str, dict[str, RecvMsg]] | None:
    if isinstance(lt, RecvMsg):
        return lt.from_role, {lt.label: lt}
    if isinstance(lt, Branch):
        return lt.from_role, dict(lt.branches)
    return None


def _describe(lt: LocalType) -> str:
    if isinstance(lt, SendMsg):
        return f"send {lt.label} to {lt.to}"
    if isinstance(lt, RecvMsg):
        return f"receive {lt.label} from {lt.from_role}"
    if isinstance(lt, Select):
        return f"select towards {lt.to}"
    if isinstance(lt, Branch):
        return f"branch on {'/'.join(lt.labels())} from {lt.from_role}"
    if isinstance(lt, ConnectTo):
        return ("accept " if lt.accepting else "connect to ") + lt.peer
    if isinstance(lt, DisconnectFrom):
        return f"disconnect {lt.peer}"
    if isinstance(lt, Rec):
        return _describe(lt.body)
    if isinstance(lt, RecVar):
        return "repeat from an earlier point"
    return "end the session"
