"""Canonical pretty-printer for Scribble modules.

``parse_module(render_module(m)) == m`` for any well-formed module
(AST equality already ignores spans).
"""

from __future__ import annotations

from .ast import (
    Choice,
    Connect,
    Disconnect,
    Do,
    GlobalStatement,
    ScribbleModule,
)

_INDENT = "    "


def render_module(module: ScribbleModule) -> str:
    lines: list[str] = [f"module {module.name};"]
    if module.type_decls:
        lines.append("")
        for decl in module.type_decls:
            path = decl.target_path.replace('"', '\\"')
            lines.append(f'type {decl.alias} as "{path}";')
    for proto in module.protocols:
        lines.append("")
        roles = ", ".join(f"role {r}" for r in proto.role_params)
        lines.append(f"global protocol {proto.name}({roles}) {{")
        _render_block(proto.body, 1, lines)
        lines.append("}")
    return "\n".join(lines) + "\n"


def _render_block(stmts: tuple[GlobalStatement, ...], depth: int, out: list[str]) -> None:
    pad = _INDENT * depth
    for stmt in stmts:
        if isinstance(stmt, Choice):
            out.append(f"{pad}choice at {stmt.at} {{")
            for i, branch in enumerate(stmt.branches):
                if i > 0:
                    out.append(f"{pad}}} or {{")
                _render_block(branch, depth + 1, out)
            out.append(f"{pad}}}")
        else:
            out.append(pad + render_statement(stmt))


def render_statement(stmt: GlobalStatement) -> str:
    """Render one non-choice statement without indentation or newline."""
    if isinstance(stmt, Do):
        return f"do {stmt.protocol}({', '.join(stmt.role_args)});"
    if isinstance(stmt, Connect):
        return f"connect {stmt.from_role} to {stmt.to_role};"
    if isinstance(stmt, Disconnect):
        return f"disconnect {stmt.from_role} and {stmt.to_role};"
    if isinstance(stmt, Choice):
        raise ValueError("choice statements need block rendering")
    payloads = ", ".join(stmt.payloads)
    return f"{stmt.label}({payloads}) from {stmt.from_role} to {stmt.to_role};"
