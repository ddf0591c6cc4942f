"""Abstract syntax for the Scribble protocol subset.

All nodes are immutable dataclasses. Source spans are carried for
diagnostics but excluded from equality and hashing, so two parses of
equivalent text compare equal regardless of layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class SourceSpan:
    """Half-open byte range [start, end) with the 0-based line/column of start."""

    line: int
    col: int
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"span start {self.start} exceeds end {self.end}")


#: Span used for synthesized nodes (tests, programmatic construction).
NO_SPAN = SourceSpan(0, 0, 0, 0)


def _span_field() -> SourceSpan:
    return NO_SPAN


@dataclass(frozen=True)
class Transfer:
    """``Label(payloads) from A to B;`` — one point-to-point message."""

    label: str
    payloads: tuple[str, ...]
    from_role: str
    to_role: str
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)


@dataclass(frozen=True)
class Choice:
    """``choice at R { ... } or { ... }`` — alternatives decided by one role."""

    at: str
    branches: tuple[tuple["GlobalStatement", ...], ...]
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)


@dataclass(frozen=True)
class Do:
    """``do Name(R1, ..., Rn);`` — (possibly recursive) protocol call."""

    protocol: str
    role_args: tuple[str, ...]
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)


@dataclass(frozen=True)
class Connect:
    """``connect A to B;`` — A dials, B accepts."""

    from_role: str
    to_role: str
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)


@dataclass(frozen=True)
class Disconnect:
    """``disconnect A and B;`` — A initiates teardown, B observes it."""

    from_role: str
    to_role: str
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)


GlobalStatement = Union[Transfer, Choice, Do, Connect, Disconnect]


@dataclass(frozen=True)
class PayloadTypeDecl:
    """``type Alias as "host.path.Name";``"""

    alias: str
    target_path: str
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)


@dataclass(frozen=True)
class GlobalProtocolDecl:
    """``global protocol Name(role R1, ..., role Rn) { ... }``"""

    name: str
    role_params: tuple[str, ...]
    body: tuple[GlobalStatement, ...]
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)


@dataclass(frozen=True)
class ScribbleModule:
    """A parsed ``.scr`` module: type declarations plus global protocols."""

    name: str
    type_decls: tuple[PayloadTypeDecl, ...]
    protocols: tuple[GlobalProtocolDecl, ...]
    span: SourceSpan = field(default_factory=_span_field, compare=False, repr=False)

    def protocol(self, name: str) -> GlobalProtocolDecl:
        for decl in self.protocols:
            if decl.name == name:
                return decl
        raise KeyError(f"protocol {name!r} is not declared in module {self.name}")

    def declared_aliases(self) -> dict[str, str]:
        return {d.alias: d.target_path for d in self.type_decls}
