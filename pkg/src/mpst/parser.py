"""Recursive-descent parser for the Scribble subset.

Grammar (``//`` line comments are skipped by the tokenizer):

    module        := "module" dotted ";" type_decl* protocol* EOF
    type_decl     := "type" IDENT "as" STRING ";"
    protocol      := "global" "protocol" IDENT "(" roles ")" block
    roles         := "role" IDENT ("," "role" IDENT)*
    block         := "{" statement* "}"
    statement     := transfer | choice | do | connect | disconnect
    transfer      := IDENT payloads? "from" IDENT "to" IDENT ";"
    payloads      := "(" (IDENT ("," IDENT)*)? ")"
    choice        := "choice" "at" IDENT block ("or" block)*
    do            := "do" IDENT "(" IDENT ("," IDENT)* ")" ";"
    connect       := "connect" IDENT "to" IDENT ";"
    disconnect    := "disconnect" IDENT "and" IDENT ";"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    Choice,
    Connect,
    Disconnect,
    Do,
    GlobalProtocolDecl,
    GlobalStatement,
    PayloadTypeDecl,
    ScribbleModule,
    SourceSpan,
    Transfer,
)

KEYWORDS = frozenset(
    {
        "module",
        "type",
        "as",
        "global",
        "protocol",
        "role",
        "from",
        "to",
        "choice",
        "at",
        "or",
        "do",
        "connect",
        "disconnect",
        "and",
    }
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[(){};,.])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    """Malformed input, with the offending span and the expected-token set."""

    def __init__(self, message: str, span: SourceSpan, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = expected


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "keyword" | "string" | one of "(){};,." | "eof"
    text: str
    span: SourceSpan


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 0
    col = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            span = SourceSpan(line, col, pos, pos + 1)
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        lexeme = m.group(0)
        start_line, start_col = line, col
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n") - 1
        else:
            col += len(lexeme)
        kind = m.lastgroup
        end = m.end()
        if kind not in ("ws", "comment"):
            span = SourceSpan(start_line, start_col, pos, end)
            if kind == "ident":
                tok_kind = "keyword" if lexeme in KEYWORDS else "ident"
                tokens.append(Token(tok_kind, lexeme, span))
            elif kind == "string":
                tokens.append(Token("string", lexeme, span))
            else:
                tokens.append(Token(lexeme, lexeme, span))
        pos = end
    tokens.append(Token("eof", "", SourceSpan(line, col, pos, pos)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token plumbing ------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, expected: tuple[str, ...]) -> ParseError:
        tok = self.peek()
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        want = " or ".join(expected)
        return ParseError(f"expected {want}, found {got}", tok.span, expected)

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            raise self.error((text if text is not None else kind,))
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "keyword" and tok.text == word

    def expect_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            raise self.error((word,))
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error((what,))
        return self.advance()

    @staticmethod
    def span_between(first: SourceSpan, last: SourceSpan) -> SourceSpan:
        return SourceSpan(first.line, first.col, first.start, last.end)

    # -- grammar productions -------------------------------------------

    def module(self) -> ScribbleModule:
        head = self.expect_keyword("module")
        name = self.dotted_name()
        self.expect(";")
        decls: list[PayloadTypeDecl] = []
        while self.at_keyword("type"):
            decls.append(self.type_decl())
        protocols: list[GlobalProtocolDecl] = []
        while self.at_keyword("global"):
            protocols.append(self.protocol_decl())
        tok = self.peek()
        if tok.kind != "eof":
            raise self.error(("global protocol", "end of input"))
        span = self.span_between(head.span, tok.span)
        return ScribbleModule(name, tuple(decls), tuple(protocols), span)

    def dotted_name(self) -> str:
        parts = [self.expect_ident("module name").text]
        while self.peek().kind == ".":
            self.advance()
            parts.append(self.expect_ident().text)
        return ".".join(parts)

    def type_decl(self) -> PayloadTypeDecl:
        head = self.expect_keyword("type")
        alias = self.expect_ident("payload type alias").text
        self.expect_keyword("as")
        target = self.expect("string")
        tail = self.expect(";")
        path = target.text[1:-1].replace('\\"', '"')
        if not path:
            raise ParseError("payload type target path is empty", target.span)
        return PayloadTypeDecl(alias, path, self.span_between(head.span, tail.span))

    def protocol_decl(self) -> GlobalProtocolDecl:
        head = self.expect_keyword("global")
        self.expect_keyword("protocol")
        name = self.expect_ident("protocol name").text
        self.expect("(")
        roles = [self.role_param()]
        while self.peek().kind == ",":
            self.advance()
            roles.append(self.role_param())
        self.expect(")")
        body, close = self.block()
        return GlobalProtocolDecl(
            name, tuple(roles), body, self.span_between(head.span, close)
        )

    def role_param(self) -> str:
        self.expect_keyword("role")
        return self.expect_ident("role name").text

    def block(self) -> tuple[tuple[GlobalStatement, ...], SourceSpan]:
        self.expect("{")
        stmts: list[GlobalStatement] = []
        while self.peek().kind != "}":
            stmts.append(self.statement())
        close = self.expect("}")
        return tuple(stmts), close.span

    def statement(self) -> GlobalStatement:
        tok = self.peek()
        if tok.kind == "keyword":
            if tok.text == "choice":
                return self.choice()
            if tok.text == "do":
                return self.do_call()
            if tok.text == "connect":
                return self.connect()
            if tok.text == "disconnect":
                return self.disconnect()
            raise self.error(("message label", "choice", "do", "connect", "disconnect"))
        if tok.kind == "ident":
            return self.transfer()
        raise self.error(("message label", "choice", "do", "connect", "disconnect"))

    def transfer(self) -> Transfer:
        label = self.expect_ident("message label")
        payloads: list[str] = []
        if self.peek().kind == "(":
            self.advance()
            if self.peek().kind != ")":
                payloads.append(self.expect_ident("payload type").text)
                while self.peek().kind == ",":
                    self.advance()
                    payloads.append(self.expect_ident("payload type").text)
            self.expect(")")
        self.expect_keyword("from")
        src = self.expect_ident("role name").text
        self.expect_keyword("to")
        dst = self.expect_ident("role name").text
        tail = self.expect(";")
        return Transfer(
            label.text,
            tuple(payloads),
            src,
            dst,
            self.span_between(label.span, tail.span),
        )

    def choice(self) -> Choice:
        head = self.expect_keyword("choice")
        self.expect_keyword("at")
        at = self.expect_ident("role name").text
        branches: list[tuple[GlobalStatement, ...]] = []
        body, close = self.block()
        branches.append(body)
        while self.at_keyword("or"):
            self.advance()
            body, close = self.block()
            branches.append(body)
        return Choice(at, tuple(branches), self.span_between(head.span, close))

    def do_call(self) -> Do:
        head = self.expect_keyword("do")
        name = self.expect_ident("protocol name").text
        self.expect("(")
        args = [self.expect_ident("role name").text]
        while self.peek().kind == ",":
            self.advance()
            args.append(self.expect_ident("role name").text)
        self.expect(")")
        tail = self.expect(";")
        return Do(name, tuple(args), self.span_between(head.span, tail.span))

    def connect(self) -> Connect:
        head = self.expect_keyword("connect")
        src = self.expect_ident("role name").text
        self.expect_keyword("to")
        dst = self.expect_ident("role name").text
        tail = self.expect(";")
        return Connect(src, dst, self.span_between(head.span, tail.span))

    def disconnect(self) -> Disconnect:
        head = self.expect_keyword("disconnect")
        src = self.expect_ident("role name").text
        self.expect_keyword("and")
        dst = self.expect_ident("role name").text
        tail = self.expect(";")
        return Disconnect(src, dst, self.span_between(head.span, tail.span))


def parse_module(text: str) -> ScribbleModule:
    """Parse Scribble source text into a :class:`ScribbleModule`.

    Raises :class:`ParseError` (never anything else) on malformed input.
    """
    try:
        tokens = tokenize(text)
        return _Parser(tokens).module()
    except ParseError:
        raise
    except RecursionError:
        raise ParseError("input too deeply nested", SourceSpan(0, 0, 0, 0)) from None
