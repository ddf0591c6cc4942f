"""Generation of per-role typestate APIs and message types.

Each EFSM state becomes an uninstantiable marker class; each
transition becomes exactly one capability function named after its
source state, so a second capability for the same (state, kind) would
collide. Programs built from these capabilities carry their protocol
position in the ``Session[S, T, A]`` indices: skipping a step, reusing
a consumed step, sending the wrong payload, selecting an unknown label
or stopping before the terminal state all fail the host type checker.

Output is deterministic: regeneration is byte-identical.
"""

from __future__ import annotations

import keyword
from dataclasses import dataclass, field

from .ast import Choice, GlobalStatement, ScribbleModule, Transfer
from .efsm import INPUT, OUTPUT, TERMINAL, Efsm, Transition
from .wire import is_builtin_target


class CodegenError(Exception):
    pass


class UnknownAlias(CodegenError):
    def __init__(self, alias: str):
        super().__init__(
            f"payload alias {alias!r} has no import-map entry"
        )
        self.alias = alias


@dataclass
class GeneratedArtifact:
    """Generated sources keyed by path relative to the output directory."""

    files: dict[str, str] = field(default_factory=dict)
    state_names: tuple[str, ...] = ()
    role_names: tuple[str, ...] = ()
    message_names: tuple[str, ...] = ()

    def merge(self, other: "GeneratedArtifact") -> "GeneratedArtifact":
        files = dict(self.files)
        for path, text in other.files.items():
            if path in files and files[path] != text:
                raise CodegenError(f"conflicting generated content for {path}")
            files[path] = text
        return GeneratedArtifact(
            files,
            tuple(dict.fromkeys(self.state_names + other.state_names)),
            tuple(dict.fromkeys(self.role_names + other.role_names)),
            tuple(dict.fromkeys(self.message_names + other.message_names)),
        )


# -- message signatures ---------------------------------------------------------


@dataclass(frozen=True)
class MessageSig:
    label: str
    payloads: tuple[str, ...]


def _camel(name: str) -> str:
    return name[0].upper() + name[1:] if name else name


def collect_signatures(module: ScribbleModule) -> list[MessageSig]:
    """All (label, payload) shapes used anywhere in the module, in
    first-occurrence order."""
    seen: dict[MessageSig, None] = {}

    def walk(stmts: tuple[GlobalStatement, ...]) -> None:
        for stmt in stmts:
            if isinstance(stmt, Transfer):
                seen.setdefault(MessageSig(stmt.label, stmt.payloads))
            elif isinstance(stmt, Choice):
                for branch in stmt.branches:
                    walk(branch)

    for proto in module.protocols:
        walk(proto.body)
    return list(seen)


def message_names(module: ScribbleModule) -> dict[MessageSig, str]:
    """Deterministic record-type name per signature.

    A label used with a single payload shape keeps its plain
    capitalized name; a label with several shapes gets each variant
    suffixed with its payload aliases.
    """
    sigs = collect_signatures(module)
    per_label: dict[str, list[MessageSig]] = {}
    for sig in sigs:
        per_label.setdefault(sig.label, []).append(sig)
    names: dict[MessageSig, str] = {}
    taken: dict[str, MessageSig] = {}
    for sig in sigs:
        base = _camel(sig.label)
        if len(per_label[sig.label]) > 1:
            name = base + "".join(_camel(alias) for alias in sig.payloads)
        else:
            name = base
        if name in taken:
            raise CodegenError(
                f"message type name {name!r} is generated for both "
                f"{taken[name]} and {sig}"
            )
        taken[name] = sig
        names[sig] = name
    return names


def _resolve_alias(
    module: ScribbleModule, alias: str, import_map: dict[str, str] | None
) -> str:
    if import_map is not None:
        try:
            return import_map[alias]
        except KeyError:
            raise UnknownAlias(alias) from None
    declared = module.declared_aliases()
    try:
        return declared[alias]
    except KeyError:
        raise UnknownAlias(alias) from None


def _python_name(label: str) -> str:
    return label + "_" if keyword.iskeyword(label) else label


# -- messages module --------------------------------------------------------------


def generate_message_types(
    module: ScribbleModule,
    module_name: str = "gen",
    import_map: dict[str, str] | None = None,
) -> GeneratedArtifact:
    """Emit one frozen record per message shape with its JSON codec."""
    names = message_names(module)
    used_aliases: dict[str, None] = {}
    for sig in names:
        for alias in sig.payloads:
            used_aliases.setdefault(alias)
    targets = {
        alias: _resolve_alias(module, alias, import_map) for alias in used_aliases
    }

    class_imports: dict[str, list[str]] = {}
    symbol_owner: dict[str, str] = {}
    any_builtin = False
    for alias in sorted(targets):
        target = targets[alias]
        if is_builtin_target(target):
            any_builtin = True
            continue
        if "." not in target:
            raise CodegenError(
                f"alias {alias!r} target {target!r} is not a dotted path"
            )
        mod, symbol = target.rsplit(".", 1)
        if symbol in symbol_owner and symbol_owner[symbol] != mod:
            raise CodegenError(
                f"two payload targets both import the name {symbol!r}"
            )
        symbol_owner[symbol] = mod
        class_imports.setdefault(mod, []).append(symbol)

    def annotation(alias: str) -> str:
        target = targets[alias]
        if is_builtin_target(target):
            return target.rsplit(".", 1)[1]
        return target.rsplit(".", 1)[1]

    def encode_expr(alias: str, var: str) -> str:
        target = targets[alias]
        if is_builtin_target(target):
            return var
        return f"{var}.to_json()"

    def decode_expr(alias: str, var: str) -> str:
        target = targets[alias]
        if is_builtin_target(target):
            return f'decode_builtin("{target}", {var})'
        return f"{annotation(alias)}.from_json({var})"

    lines: list[str] = []
    lines.append(f'"""Message records and JSON codecs for module {module.name}.')
    lines.append("")
    lines.append("Generated by mpst; do not edit by hand.")
    lines.append('"""')
    lines.append("")
    lines.append("from __future__ import annotations")
    lines.append("")
    lines.append("from dataclasses import dataclass")
    lines.append("from typing import ClassVar")
    lines.append("")
    wire_imports = ["WireMessage", "expect_message"]
    if any_builtin:
        wire_imports.append("decode_builtin")
    lines.append(f"from mpst.wire import {', '.join(sorted(wire_imports))}")
    for mod in sorted(class_imports):
        symbols = ", ".join(sorted(set(class_imports[mod])))
        lines.append(f"from {mod} import {symbols}")
    lines.append("")

    for sig in names:
        name = names[sig]
        fields = (
            ["value"]
            if len(sig.payloads) == 1
            else [f"value{i + 1}" for i in range(len(sig.payloads))]
        )
        shown = f"{sig.label}({', '.join(sig.payloads)})"
        lines.append("")
        lines.append("@dataclass(frozen=True)")
        lines.append(f"class {name}:")
        lines.append(f'    """``{shown}``"""')
        lines.append("")
        for fname, alias in zip(fields, sig.payloads):
            lines.append(f"    {fname}: {annotation(alias)}")
        lines.append(f'    LABEL: ClassVar[str] = "{sig.label}"')
        lines.append("")
        lines.append("    def to_wire(self) -> WireMessage:")
        items = ", ".join(
            encode_expr(alias, f"self.{fname}")
            for fname, alias in zip(fields, sig.payloads)
        )
        lines.append(f'        return WireMessage("{sig.label}", [{items}])')
        lines.append("")
        lines.append("    @classmethod")
        lines.append(f"    def from_wire(cls, msg: WireMessage) -> {name}:")
        lines.append(
            f'        payload = expect_message(msg, "{sig.label}", {len(sig.payloads)})'
        )
        args = ", ".join(
            f"{fname}={decode_expr(alias, f'payload[{i}]')}"
            for i, (fname, alias) in enumerate(zip(fields, sig.payloads))
        )
        if sig.payloads:
            lines.append(f"        return cls({args})")
        else:
            lines.append("        del payload")
            lines.append("        return cls()")

    text = "\n".join(lines) + "\n"
    return GeneratedArtifact(
        files={f"{module_name}/messages.py": text},
        message_names=tuple(names.values()),
    )


# -- role API module ---------------------------------------------------------------


def generate_api(
    efsm: Efsm,
    module: ScribbleModule,
    module_name: str = "gen",
) -> GeneratedArtifact:
    """Emit the typestate API for one role from its label-split EFSM."""
    return _ApiWriter(efsm, module, module_name).generate()


class _ApiWriter:
    def __init__(self, efsm: Efsm, module: ScribbleModule, module_name: str):
        self.efsm = efsm
        self.module = module
        self.module_name = module_name
        self.names = message_names(module)
        self.kinds = dict(efsm.kinds)
        self.outgoing: dict[int, list[Transition]] = {}
        for t in efsm.transitions:
            self.outgoing.setdefault(t.source, []).append(t)
        for trs in self.outgoing.values():
            trs.sort()

    # -- helpers ---------------------------------------------------------

    def msg_type(self, label: str, payloads: tuple[str, ...]) -> str:
        sig = MessageSig(label, payloads)
        try:
            return self.names[sig]
        except KeyError:
            raise CodegenError(
                f"EFSM mentions message {label}({', '.join(payloads)}) which the "
                f"module never declares"
            ) from None

    def fused_target(self, t: Transition) -> tuple[int, tuple[str, ...]]:
        """For a label edge out of a branch/select state: the state after
        the payload action, and the payload aliases carried by the frame."""
        follow = self.outgoing.get(t.target, [])
        if (
            t.payloads
            or len(follow) != 1
            or follow[0].label != t.label
            or follow[0].peer != t.peer
            or follow[0].action != t.action
        ):
            raise CodegenError(
                f"state {t.source} has several transitions but is not "
                f"label-split; run split_labels first"
            )
        return follow[0].target, follow[0].payloads

    def state_doc(self, state: int) -> str:
        kind = self.kinds[state]
        trs = self.outgoing.get(state, [])
        if kind == TERMINAL:
            return "Terminal state: the session is complete."
        what = {
            "send": "send",
            "receive": "receive",
            "connect": "connect" if kind == OUTPUT else "accept connection from",
            "disconnect": "disconnect" if kind == OUTPUT else "await disconnect of",
        }
        parts = []
        for t in trs:
            if t.action in ("connect", "disconnect"):
                parts.append(f"{what[t.action]} {t.peer}")
            else:
                parts.append(f"{what[t.action]} {t.label}({', '.join(t.payloads)}) "
                             f"{'to' if t.action == 'send' else 'from'} {t.peer}")
        return f"{kind.capitalize()} state: " + " | ".join(parts) + "."

    # -- generation --------------------------------------------------------

    def generate(self) -> GeneratedArtifact:
        efsm = self.efsm
        body: list[str] = []
        typing_needs = {"TypeVar", "final", "NoReturn"}
        message_types: dict[str, None] = {}
        needs_dataclass = False
        has_select = False

        select_mids: set[int] = set()
        for state, kind in efsm.kinds:
            trs = self.outgoing.get(state, [])
            if kind == OUTPUT and len(trs) >= 2:
                for t in trs:
                    select_mids.add(t.target)

        # State markers.
        for state, _kind in efsm.kinds:
            body.append("")
            body.append("@final")
            body.append(f"class S{state}:")
            body.append(f'    """{self.state_doc(state)}"""')
            body.append("")
            body.append("    __slots__ = ()")
            body.append("")
            body.append("    def __new__(cls) -> NoReturn:")
            body.append('        raise TypeError("protocol state markers are not values")')

        # Capabilities.
        for state, kind in efsm.kinds:
            if kind == TERMINAL or state in select_mids:
                continue
            trs = self.outgoing.get(state, [])
            if not trs:
                continue
            if len(trs) == 1:
                chunk, used = self.single_capability(state, trs[0])
            elif kind == OUTPUT:
                has_select = True
                typing_needs.update({"Any", "overload"})
                chunk, used = self.select_capability(state, trs)
            else:
                needs_dataclass = True
                typing_needs.update({"Callable", "Generic"})
                chunk, used = self.branch_capability(state, trs)
            body.extend(chunk)
            for name in used:
                message_types.setdefault(name)

        # Entry points.
        body.append("")
        body.append("")
        body.append(f"Initial = S{efsm.initial}")
        if efsm.terminal is not None:
            body.append(f"Terminal = S{efsm.terminal}")
            body.append("")
            body.append("")
            body.append(
                f"async def run(config: SessionConfig, "
                f"program: Session[S{efsm.initial}, S{efsm.terminal}, A]) -> A:"
            )
            body.append(
                f'    """Run a complete {efsm.protocol} session as {efsm.role}."""'
            )
            body.append("    return await _rt.execute(PROTOCOL, ROLE, config, program)")

        peers = tuple(sorted({t.peer for t in efsm.transitions}))
        head: list[str] = []
        head.append(f'"""Typestate API for role {efsm.role} of protocol {efsm.protocol}.')
        head.append("")
        head.append("Generated by mpst; do not edit by hand. Each protocol state is an")
        head.append("uninstantiable marker type; each transition is a capability")
        head.append("returning a Session indexed by source and successor state.")
        head.append('"""')
        head.append("")
        head.append("from __future__ import annotations")
        head.append("")
        if needs_dataclass:
            head.append("from dataclasses import dataclass")
        head.append(f"from typing import {', '.join(sorted(typing_needs))}")
        head.append("")
        head.append("from mpst import runtime as _rt")
        runtime_names = ["Session"]
        if efsm.terminal is not None:
            runtime_names.append("SessionConfig")
        head.append(f"from mpst.runtime import {', '.join(sorted(runtime_names))}")
        if message_types:
            head.append(f"from .messages import {', '.join(sorted(message_types))}")
        head.append("")
        head.append(f'PROTOCOL = "{efsm.protocol}"')
        head.append(f'ROLE = "{efsm.role}"')
        head.append(f"PEERS = {peers!r}")
        head.append("")
        head.append('A = TypeVar("A")')
        if needs_dataclass:
            head.append('U = TypeVar("U")')

        text = "\n".join(head + body) + "\n"
        path = f"{self.module_name}/{efsm.protocol}_{efsm.role}.py"
        return GeneratedArtifact(
            files={path: text},
            state_names=tuple(f"S{s}" for s, _ in efsm.kinds),
            role_names=(efsm.role,) + peers,
            message_names=tuple(message_types),
        )

    def single_capability(
        self, state: int, t: Transition
    ) -> tuple[list[str], list[str]]:
        lines: list[str] = [""]
        used: list[str] = []
        if t.action == "send":
            name = self.msg_type(t.label, t.payloads)
            used.append(name)
            lines.append(
                f"def send_s{state}(value: {name}) -> Session[S{state}, S{t.target}, None]:"
            )
            lines.append(
                f'    """send {t.label}({", ".join(t.payloads)}) to {t.peer}"""'
            )
            lines.append(f'    return _rt.op_send("{t.peer}", value)')
        elif t.action == "receive":
            name = self.msg_type(t.label, t.payloads)
            used.append(name)
            lines.append(
                f"def receive_s{state}() -> Session[S{state}, S{t.target}, {name}]:"
            )
            lines.append(
                f'    """receive {t.label}({", ".join(t.payloads)}) from {t.peer}"""'
            )
            lines.append(
                f'    return _rt.op_receive("{t.peer}", "{t.label}", {name}.from_wire)'
            )
        elif t.action == "connect":
            if self.kinds[state] == OUTPUT:
                lines.append(
                    f"def connect_s{state}(address: str) -> "
                    f"Session[S{state}, S{t.target}, None]:"
                )
                lines.append(f'    """connect {t.peer} (dial and handshake)"""')
                lines.append(f'    return _rt.op_connect("{t.peer}", address)')
            else:
                lines.append(
                    f"def accept_s{state}() -> Session[S{state}, S{t.target}, None]:"
                )
                lines.append(f'    """accept the connection from {t.peer}"""')
                lines.append(f'    return _rt.op_accept("{t.peer}")')
        elif t.action == "disconnect":
            if self.kinds[state] == OUTPUT:
                lines.append(
                    f"def disconnect_s{state}() -> Session[S{state}, S{t.target}, None]:"
                )
                lines.append(f'    """disconnect {t.peer}"""')
                lines.append(f'    return _rt.op_disconnect("{t.peer}")')
            else:
                lines.append(
                    f"def await_disconnect_s{state}() -> "
                    f"Session[S{state}, S{t.target}, None]:"
                )
                lines.append(f'    """observe the disconnect initiated by {t.peer}"""')
                lines.append(f'    return _rt.op_await_disconnect("{t.peer}")')
        else:  # pragma: no cover - no other actions exist
            raise CodegenError(f"unknown action {t.action}")
        return lines, used

    def select_capability(
        self, state: int, trs: list[Transition]
    ) -> tuple[list[str], list[str]]:
        lines: list[str] = []
        used: list[str] = []
        entries: list[tuple[str, str, int]] = []  # (label, type name, successor)
        labels = [t.label for t in trs]
        if len(set(labels)) != len(labels):
            raise CodegenError(f"state {state} has duplicate select labels")
        for t in trs:
            target, payloads = self.fused_target(t)
            name = self.msg_type(t.label, payloads)
            entries.append((t.label, name, target))
            used.append(name)
        peer = trs[0].peer
        for _label, name, target in entries:
            lines.append("")
            lines.append("@overload")
            lines.append(
                f"def send_s{state}(value: {name}) -> Session[S{state}, S{target}, None]: ..."
            )
        union = " | ".join(name for _l, name, _t in entries)
        lines.append("")
        lines.append(f"def send_s{state}(value: {union}) -> Session[Any, Any, None]:")
        lines.append(
            f'    """Select a branch towards {peer}: the value\'s label picks '
            f'the continuation."""'
        )
        lines.append(f'    return _rt.op_send("{peer}", value)')
        return lines, used

    def branch_capability(
        self, state: int, trs: list[Transition]
    ) -> tuple[list[str], list[str]]:
        lines: list[str] = []
        used: list[str] = []
        peer = trs[0].peer
        labels = [t.label for t in trs]
        if len(set(labels)) != len(labels):
            raise CodegenError(f"state {state} has duplicate branch labels")
        for t in trs:
            self.fused_target(t)  # verifies the machine is label-split
        cls = f"BranchS{state}"
        lines.append("")
        lines.append("@dataclass(frozen=True)")
        lines.append(f"class {cls}(Generic[U, A]):")
        lines.append(
            f'    """One continuation per branch label offered by {peer} at state '
            f'S{state}; each starts at the matching receive and all end at a '
            f'common state."""'
        )
        lines.append("")
        for t in trs:
            attr = _python_name(t.label)
            lines.append(
                f"    {attr}: Callable[[], Session[S{t.target}, U, A]]"
            )
        lines.append("")
        lines.append("")
        lines.append(
            f"def branch_s{state}(handlers: {cls}[U, A]) -> Session[S{state}, U, A]:"
        )
        lines.append(
            f'    """Dispatch on the label of the next message from {peer}."""'
        )
        table = ", ".join(
            f'"{t.label}": handlers.{_python_name(t.label)}' for t in trs
        )
        lines.append(f'    return _rt.op_branch("{peer}", {{{table}}})')
        return lines, used


# -- compile-fail corpus ----------------------------------------------------------


@dataclass(frozen=True)
class CompileFailCase:
    """One deliberately ill-typed endpoint program.

    ``expected_rule`` is the host-checker diagnostic class (a pyright
    rule name) and ``expected_pattern`` a fragment its message must
    contain. ``expected_rule`` of None marks a positive control that
    must produce no diagnostics at all.
    """

    name: str
    source: str
    expected_rule: str | None
    expected_pattern: str = ""


_CORPUS_PRELUDE = '''\
from __future__ import annotations

from mpst.battleship.gen.BattleShips_P2 import (
    S0, S2, S3, S5, BranchS2, BranchS4, branch_s2, branch_s4, connect_s0,
    receive_s6, receive_s7, receive_s8, receive_s9, receive_s10, receive_s11,
    receive_s12, run, send_s1, send_s3,
)
from mpst.battleship.gen.messages import Attack, Init
from mpst.battleship.game import Config, Location
from mpst.runtime import Session, SessionConfig, pure
'''


def compile_fail_corpus() -> list[CompileFailCase]:
    """Endpoint programs that must fail host type checking, plus a
    conformant positive control that must pass.

    Each negative exercises one guarantee of the typestate encoding:
    skipping a protocol step, sending the wrong payload, selecting a
    label outside the branch table, reusing a consumed session
    fragment, abandoning the session before its terminal state,
    omitting a branch handler, and connecting twice.
    """
    cases = [
        CompileFailCase(
            "skipped_send",
            _CORPUS_PRELUDE
            + '''

def handlers() -> BranchS2[S5, str]:
    return BranchS2(
        hit=lambda: receive_s6().then(lambda m: pure("again")),
        miss=lambda: receive_s7().then(lambda m: pure("swap")),
        loser=lambda: receive_s8().then(lambda m: pure("lost")),
    )


# The Init send is skipped: after connect the channel is at S1, but
# branch_s2 consumes S2.
bad = connect_s0("ws://server").then(lambda _: branch_s2(handlers()))
''',
            "reportArgumentType",
            "Session[S2",
        ),
        CompileFailCase(
            "wrong_payload_type",
            _CORPUS_PRELUDE
            + '''

# Init carries a fleet Config, not a single grid Location.
bad = send_s1(Init(Location(0, 0)))
''',
            "reportArgumentType",
            '"Location"',
        ),
        CompileFailCase(
            "undefined_select_label",
            _CORPUS_PRELUDE
            + '''
from mpst.battleship.gen.BattleShips_GameServer import send_s5

# Attack is not one of the labels the server may select at S5.
bad = send_s5(Attack(Location(0, 0)))
''',
            "reportCallIssue",
            "No overloads",
        ),
        CompileFailCase(
            "fragment_used_twice",
            _CORPUS_PRELUDE
            + '''

# frag consumes state S1 exactly once; a second use cannot type.
frag = send_s1(Init(Config(())))
bad = frag.then(lambda _: frag)
''',
            "reportArgumentType",
            "Session[S1",
        ),
        CompileFailCase(
            "stops_before_terminal",
            _CORPUS_PRELUDE
            + '''

async def bad() -> None:
    # Ends at S2: the session was never driven to the terminal state S5.
    prog = connect_s0("ws://server").then(lambda _: send_s1(Init(Config(()))))
    await run(SessionConfig(), prog)
''',
            "reportArgumentType",
            "Session[S0, S5",
        ),
        CompileFailCase(
            "missing_branch_handler",
            _CORPUS_PRELUDE
            + '''

# The miss continuation is omitted, so the branch is not exhaustive.
bad = branch_s2(BranchS2(
    hit=lambda: receive_s6().then(lambda m: pure(0)),
    loser=lambda: receive_s8().then(lambda m: pure(0)),
))
''',
            "reportCallIssue",
            'missing for parameter "miss"',
        ),
        CompileFailCase(
            "connect_twice",
            _CORPUS_PRELUDE
            + '''

# The protocol declares a single connection to the server.
bad = connect_s0("ws://server").then(lambda _: connect_s0("ws://server"))
''',
            "reportArgumentType",
            "Session[S0",
        ),
        CompileFailCase(
            "positive_control",
            _CORPUS_PRELUDE
            + '''


def defend() -> Session[S2, S5, str]:
    return branch_s2(BranchS2(
        hit=lambda: receive_s6().then(lambda m: defend()),
        miss=lambda: receive_s7().then(lambda m: attack()),
        loser=lambda: receive_s8().then(lambda m: pure("lost")),
    ))


def attack() -> Session[S3, S5, str]:
    return send_s3(Attack(Location(0, 0))).then(lambda _: branch_s4(BranchS4(
        miss=lambda: receive_s9().then(lambda m: defend()),
        hit=lambda: receive_s10().then(lambda m: attack()),
        sunk=lambda: receive_s11().then(lambda m: attack()),
        winner=lambda: receive_s12().then(lambda m: pure("won")),
    )))


async def play(url: str) -> str:
    program = connect_s0(url).then(
        lambda _: send_s1(Init(Config(())))
    ).then(lambda _: defend())
    return await run(SessionConfig(), program)
''',
            None,
        ),
    ]
    return cases


# -- whole-package generation ---------------------------------------------------


def generate_package(
    module: ScribbleModule,
    protocol: str,
    module_name: str = "gen",
    roles: tuple[str, ...] | None = None,
    import_map: dict[str, str] | None = None,
) -> GeneratedArtifact:
    """Message types plus role APIs for ``protocol``, as one artifact."""
    from .efsm import split_labels, to_efsm
    from .projector import project

    decl = module.protocol(protocol)
    chosen = roles if roles is not None else decl.role_params
    artifact = generate_message_types(module, module_name, import_map)
    for role in chosen:
        machine = split_labels(to_efsm(project(module, protocol, role), protocol, role))
        artifact = artifact.merge(generate_api(machine, module, module_name))
    init_lines = [
        f'"""Generated session package for protocol {protocol} '
        f"(module {module.name}).",
        '"""',
        "",
    ]
    artifact.files[f"{module_name}/__init__.py"] = "\n".join(init_lines) + "\n"
    return artifact
