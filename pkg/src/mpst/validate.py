"""Well-formedness checking for parsed Scribble modules.

Diagnostics are collected (never raised) in deterministic source order,
capped at :data:`MAX_DIAGNOSTICS`. Choice consistency for roles that do
not witness the deciding message is checked by attempting projection of
every (protocol, role) pair, so a module with zero errors is guaranteed
to project cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass

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
from . import projector

MAX_DIAGNOSTICS = 100

RESERVED_LABEL_PREFIX = "__"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str
    span: SourceSpan

    def render(self, filename: str = "<input>") -> str:
        return (
            f"{self.severity}[{self.code}] {filename}:{self.span.line + 1}:"
            f"{self.span.col + 1} {self.message}"
        )


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diags)


def check_well_formed(module: ScribbleModule) -> list[Diagnostic]:
    checker = _Checker(module)
    checker.run()
    return checker.diags[:MAX_DIAGNOSTICS]


# One "first interaction" of a choice branch: what the wire would carry
# first if this branch is taken.
@dataclass(frozen=True)
class _First:
    kind: str  # "message" | "connect" | "disconnect"
    sender: str
    receiver: str
    label: str
    span: SourceSpan


class _Checker:
    def __init__(self, module: ScribbleModule):
        self.module = module
        self.diags: list[Diagnostic] = []

    def error(self, code: str, message: str, span: SourceSpan) -> None:
        self.diags.append(Diagnostic("error", code, message, span))

    def warning(self, code: str, message: str, span: SourceSpan) -> None:
        self.diags.append(Diagnostic("warning", code, message, span))

    def run(self) -> None:
        self.check_module_header()
        for proto in self.module.protocols:
            self.check_protocol(proto)
        for proto in self.module.protocols:
            self.check_connectivity(proto)
        if not has_errors(self.diags):
            self.check_projectability()

    # -- module-level uniqueness ----------------------------------------

    def check_module_header(self) -> None:
        seen: set[str] = set()
        for decl in self.module.type_decls:
            if decl.alias in seen:
                self.error(
                    "DUP_TYPE", f"payload type {decl.alias!r} declared twice", decl.span
                )
            seen.add(decl.alias)
        names: set[str] = set()
        for proto in self.module.protocols:
            if proto.name in names:
                self.error(
                    "DUP_PROTOCOL", f"protocol {proto.name!r} declared twice", proto.span
                )
            names.add(proto.name)

    # -- per-protocol structural checks ----------------------------------

    def check_protocol(self, proto: GlobalProtocolDecl) -> None:
        if len(proto.role_params) < 2:
            self.error(
                "ROLE_COUNT",
                f"protocol {proto.name} declares {len(proto.role_params)} role(s); "
                f"at least 2 are required",
                proto.span,
            )
        seen: set[str] = set()
        for r in proto.role_params:
            if r in seen:
                self.error("DUP_ROLE", f"role {r!r} declared twice", proto.span)
            seen.add(r)
        self.check_block(proto, proto.body)

    def check_block(
        self, proto: GlobalProtocolDecl, stmts: tuple[GlobalStatement, ...]
    ) -> None:
        for i, stmt in enumerate(stmts):
            if isinstance(stmt, Transfer):
                self.check_transfer(proto, stmt)
            elif isinstance(stmt, (Connect, Disconnect)):
                self.check_link(proto, stmt)
            elif isinstance(stmt, Do):
                self.check_do(proto, stmt)
                if i != len(stmts) - 1:
                    self.error(
                        "DO_TAIL",
                        f"do {stmt.protocol} must be the final statement of its block",
                        stmt.span,
                    )
            elif isinstance(stmt, Choice):
                self.check_choice(proto, stmt)

    def check_role(self, proto: GlobalProtocolDecl, role: str, span: SourceSpan) -> None:
        if role not in proto.role_params:
            self.error(
                "UNKNOWN_ROLE",
                f"role {role!r} is not a parameter of protocol {proto.name}",
                span,
            )

    def check_transfer(self, proto: GlobalProtocolDecl, stmt: Transfer) -> None:
        self.check_role(proto, stmt.from_role, stmt.span)
        self.check_role(proto, stmt.to_role, stmt.span)
        if stmt.from_role == stmt.to_role:
            self.error(
                "SELF_MESSAGE",
                f"{stmt.label} is sent from {stmt.from_role} to itself",
                stmt.span,
            )
        if stmt.label.startswith(RESERVED_LABEL_PREFIX):
            self.error(
                "RESERVED_LABEL",
                f"label {stmt.label!r} uses the reserved '__' prefix",
                stmt.span,
            )
        declared = self.module.declared_aliases()
        for alias in stmt.payloads:
            if alias not in declared:
                self.error(
                    "UNKNOWN_ALIAS",
                    f"payload type {alias!r} is not declared (type {alias} as ...)",
                    stmt.span,
                )

    def check_link(
        self, proto: GlobalProtocolDecl, stmt: Connect | Disconnect
    ) -> None:
        self.check_role(proto, stmt.from_role, stmt.span)
        self.check_role(proto, stmt.to_role, stmt.span)
        if stmt.from_role == stmt.to_role:
            verb = "connect" if isinstance(stmt, Connect) else "disconnect"
            self.error(
                "SELF_MESSAGE", f"{verb} of {stmt.from_role} with itself", stmt.span
            )

    def check_do(self, proto: GlobalProtocolDecl, stmt: Do) -> None:
        for arg in stmt.role_args:
            self.check_role(proto, arg, stmt.span)
        if len(set(stmt.role_args)) != len(stmt.role_args):
            self.error(
                "DO_ROLES",
                f"do {stmt.protocol} binds the same role to two parameters",
                stmt.span,
            )
        try:
            target = self.module.protocol(stmt.protocol)
        except KeyError:
            self.error(
                "DO_UNKNOWN", f"do target {stmt.protocol!r} is not declared", stmt.span
            )
            return
        if len(stmt.role_args) != len(target.role_params):
            self.error(
                "DO_ARITY",
                f"do {stmt.protocol} passes {len(stmt.role_args)} role(s) but the "
                f"protocol declares {len(target.role_params)}",
                stmt.span,
            )

    # -- choice checks ----------------------------------------------------

    def check_choice(self, proto: GlobalProtocolDecl, stmt: Choice) -> None:
        self.check_role(proto, stmt.at, stmt.span)
        frontiers: list[list[_First]] = []
        for branch in stmt.branches:
            self.check_block(proto, branch)
            firsts = self.first_interactions(branch, stmt.span, set())
            if not firsts:
                self.error(
                    "CHOICE_SENDER",
                    f"a branch of choice at {stmt.at} performs no interaction",
                    stmt.span,
                )
            frontiers.append(firsts)
            for first in firsts:
                if first.sender != stmt.at:
                    self.error(
                        "CHOICE_SENDER",
                        f"the first interaction of this branch is performed by "
                        f"{first.sender}, not by the deciding role {stmt.at}",
                        first.span,
                    )
        seen: dict[tuple[str, str], SourceSpan] = {}
        for firsts in frontiers:
            for first in firsts:
                key = (first.receiver, first.label)
                if key in seen:
                    self.error(
                        "DUP_LABEL",
                        f"two branches of choice at {stmt.at} both open with "
                        f"{first.label!r} towards {first.receiver}; the receiver "
                        f"could not tell them apart",
                        first.span,
                    )
                else:
                    seen[key] = first.span

    def first_interactions(
        self,
        stmts: tuple[GlobalStatement, ...],
        span: SourceSpan,
        visiting: set[tuple[str, tuple[str, ...]]],
    ) -> list[_First]:
        """The set of possible first wire events of a statement block."""
        if not stmts:
            return []
        stmt = stmts[0]
        if isinstance(stmt, Transfer):
            return [_First("message", stmt.from_role, stmt.to_role, stmt.label, stmt.span)]
        if isinstance(stmt, Connect):
            return [
                _First("connect", stmt.from_role, stmt.to_role, "__connect", stmt.span)
            ]
        if isinstance(stmt, Disconnect):
            return [
                _First(
                    "disconnect", stmt.from_role, stmt.to_role, "__disconnect", stmt.span
                )
            ]
        if isinstance(stmt, Choice):
            out: list[_First] = []
            for branch in stmt.branches:
                out.extend(self.first_interactions(branch, stmt.span, visiting))
            return out
        if isinstance(stmt, Do):
            try:
                target = self.module.protocol(stmt.protocol)
            except KeyError:
                return []
            if len(stmt.role_args) != len(target.role_params):
                return []
            key = (stmt.protocol, stmt.role_args)
            if key in visiting:
                return []
            mapping = dict(zip(target.role_params, stmt.role_args))
            inner = self.first_interactions(
                target.body, stmt.span, visiting | {key}
            )
            return [
                _First(
                    f.kind,
                    mapping.get(f.sender, f.sender),
                    mapping.get(f.receiver, f.receiver),
                    f.label,
                    stmt.span,
                )
                for f in inner
            ]
        return []

    # -- connect-before-send ordering --------------------------------------

    def uses_connect(
        self, proto: GlobalProtocolDecl, visiting: frozenset[str]
    ) -> bool:
        def block_uses(stmts: tuple[GlobalStatement, ...]) -> bool:
            for stmt in stmts:
                if isinstance(stmt, (Connect, Disconnect)):
                    return True
                if isinstance(stmt, Choice) and any(
                    block_uses(b) for b in stmt.branches
                ):
                    return True
                if isinstance(stmt, Do) and stmt.protocol not in visiting:
                    try:
                        target = self.module.protocol(stmt.protocol)
                    except KeyError:
                        continue
                    if self.uses_connect(target, visiting | {stmt.protocol}):
                        return True
            return False

        return block_uses(proto.body)

    def check_connectivity(self, proto: GlobalProtocolDecl) -> None:
        if not self.uses_connect(proto, frozenset({proto.name})):
            return

        Pair = frozenset
        memo: set[tuple[str, tuple[str, ...], frozenset[frozenset[str]]]] = set()

        def walk(
            stmts: tuple[GlobalStatement, ...],
            binding: dict[str, str],
            connected: set[frozenset[str]],
        ) -> set[frozenset[str]]:
            for stmt in stmts:
                if isinstance(stmt, Transfer):
                    pair = Pair({binding.get(stmt.from_role, stmt.from_role),
                                 binding.get(stmt.to_role, stmt.to_role)})
                    if len(pair) == 2 and pair not in connected:
                        self.error(
                            "CONNECT_ORDER",
                            f"{stmt.label} is exchanged between "
                            f"{'/'.join(sorted(pair))} before they are connected",
                            stmt.span,
                        )
                elif isinstance(stmt, Connect):
                    pair = Pair({binding.get(stmt.from_role, stmt.from_role),
                                 binding.get(stmt.to_role, stmt.to_role)})
                    if pair in connected:
                        self.error(
                            "CONNECT_ORDER",
                            f"{'/'.join(sorted(pair))} are connected twice",
                            stmt.span,
                        )
                    connected = connected | {pair}
                elif isinstance(stmt, Disconnect):
                    pair = Pair({binding.get(stmt.from_role, stmt.from_role),
                                 binding.get(stmt.to_role, stmt.to_role)})
                    if pair not in connected:
                        self.error(
                            "CONNECT_ORDER",
                            f"{'/'.join(sorted(pair))} disconnect without being "
                            f"connected",
                            stmt.span,
                        )
                    connected = connected - {pair}
                elif isinstance(stmt, Choice):
                    exits = [walk(b, binding, set(connected)) for b in stmt.branches]
                    connected = set.intersection(*exits) if exits else connected
                elif isinstance(stmt, Do):
                    try:
                        target = self.module.protocol(stmt.protocol)
                    except KeyError:
                        continue
                    if len(stmt.role_args) != len(target.role_params):
                        continue
                    args = tuple(binding.get(a, a) for a in stmt.role_args)
                    key = (stmt.protocol, args, frozenset(connected))
                    if key in memo:
                        continue
                    memo.add(key)
                    inner = dict(zip(target.role_params, args))
                    connected = walk(target.body, inner, connected)
            return connected

        identity = {r: r for r in proto.role_params}
        walk(proto.body, identity, set())

    # -- merge-based consistency (delegated to projection) ------------------

    def check_projectability(self) -> None:
        for proto in self.module.protocols:
            for role in proto.role_params:
                try:
                    projector.project(self.module, proto.name, role)
                except projector.Unmergeable as exc:
                    self.error("UNMERGEABLE", f"{role}: {exc.message}", exc.span)
                except projector.ProjectError as exc:
                    self.error("PROJECTION", f"{role}: {exc.message}", exc.span)
