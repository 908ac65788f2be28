"""Tokenizer and recursive-descent parser for the command language.

Expressions::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := postfix ["^" exponent]
    exponent:= INT | "-" INT | "(" ["-"] INT ["/" INT] ")"
    postfix := primary ("patch" "{" INT ":" rational ("," ...)* "}")*
    primary := INT | NAME | NAME "(" args ")" | "(" expr ")"
             | "class" "mod" INT "{" expr (";" expr)* "}"
             | "wave" "{" "breaks" "=" list ";" "coeffs" "=" list "}"
             | "op" "{" "grid" "=" list ";" "matrix" "=" "[" list ("," list)* "]" "}"
             | "patch" "{" ... "}"

A digit run glued to a letter (``3i``, ``2n``) is an implicit product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError

__all__ = [
    "Token", "tokenize", "parse", "parse_expr",
    "Num", "Sym", "Pow", "BinOp", "Neg", "Call", "ClassLit", "Patch", "WaveLit", "OpLit",
    "Let", "Show", "Classify", "Cmp", "Heisenberg", "Wintner", "Fuzz", "EvalAt", "Command",
]


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_PUNCT = set("+-*/^(){}[];,:=")


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(Token("INT", m.group(1), m.start(1)))
            nxt = m.end()
            if nxt < len(src) and (src[nxt].isalpha() or src[nxt] == "_"):
                tokens.append(Token("OP", "*", nxt))
        elif m.group(2) is not None:
            tokens.append(Token("NAME", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in _PUNCT:
                raise ParseError(m.start(3), ["a number, name or operator"], ch)
            tokens.append(Token("OP", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("END", "", len(src)))
    return tokens


# -- expression AST -----------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: Fraction


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple
    pos: int = 0


@dataclass(frozen=True)
class ClassLit:
    modulus: int
    parts: tuple


@dataclass(frozen=True)
class Patch:
    operand: "Expr"
    patches: tuple  # ((index, Fraction), ...)


@dataclass(frozen=True)
class WaveLit:
    breaks: tuple
    coeffs: tuple


@dataclass(frozen=True)
class OpLit:
    grid: tuple
    matrix: tuple


Expr = Union[Num, Sym, Pow, BinOp, Neg, Call, ClassLit, Patch, WaveLit, OpLit]

# -- commands -----------------------------------------------------------------


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr


@dataclass(frozen=True)
class Show:
    expr: Expr


@dataclass(frozen=True)
class Classify:
    expr: Expr


@dataclass(frozen=True)
class Cmp:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Heisenberg:
    a: Expr
    b: Expr
    psi: Expr


@dataclass(frozen=True)
class Wintner:
    a: Expr
    b: Expr
    c: Expr


@dataclass(frozen=True)
class Fuzz:
    suite: str
    cases: int | None
    seed: int | None


@dataclass(frozen=True)
class EvalAt:
    expr: Expr
    index: int


Command = Union[Let, Show, Classify, Cmp, Heisenberg, Wintner, Fuzz, EvalAt]

KEYWORDS = {"class", "mod", "patch", "wave", "op", "let", "show", "classify", "cmp",
            "heisenberg", "wintner", "fuzz", "evalat"}


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _fail(self, expected) -> ParseError:
        t = self.tok
        return ParseError(t.pos, expected, t.text if t.kind != "END" else None)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("OP", "NAME") and t.text == text

    def eat(self, text: str) -> Token:
        if not self.at(text):
            raise self._fail([repr(text)])
        t = self.tok
        self.i += 1
        return t

    def int_(self) -> int:
        if self.tok.kind != "INT":
            raise self._fail(["an integer"])
        v = int(self.tok.text)
        self.i += 1
        return v

    def name(self) -> str:
        t = self.tok
        if t.kind != "NAME" or t.text in KEYWORDS:
            raise self._fail(["a name"])
        self.i += 1
        return t.text

    def end(self) -> None:
        if self.tok.kind != "END":
            raise self._fail(["end of input", "an operator"])

    # rational literal: ["-"] INT ["/" INT]
    def rational(self) -> Fraction:
        sign = -1 if self.at("-") else 1
        if sign < 0:
            self.i += 1
        num = self.int_()
        den = 1
        if self.at("/"):
            self.i += 1
            den = self.int_()
            if den == 0:
                raise ParseError(self.toks[self.i - 1].pos, ["a nonzero denominator"], "0")
        return Fraction(sign * num, den)

    # -- expressions ---------------------------------------------------------

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.at("-"):
            self.i += 1
            return Neg(self.unary())
        if self.at("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.postfix()
        if self.at("^"):
            self.i += 1
            if self.at("("):
                self.i += 1
                e = self.rational()
                self.eat(")")
            elif self.at("-"):
                self.i += 1
                e = -Fraction(self.int_())
            elif self.tok.kind == "INT":
                e = Fraction(self.int_())
            else:
                raise self._fail(["an integer", "'('", "'-'"])
            return Pow(base, e)
        return base

    def postfix(self) -> Expr:
        node = self.primary()
        while self.at("patch"):
            self.i += 1
            node = Patch(node, self.patch_body())
        return node

    def patch_body(self) -> tuple:
        self.eat("{")
        items = []
        while True:
            k = self.int_()
            self.eat(":")
            items.append((k, self.rational()))
            if self.at(","):
                self.i += 1
                continue
            break
        self.eat("}")
        return tuple(items)

    def expr_list(self) -> tuple:
        self.eat("[")
        items = [self.expr()]
        while self.at(","):
            self.i += 1
            items.append(self.expr())
        self.eat("]")
        return tuple(items)

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            self.i += 1
            return Num(Fraction(int(t.text)))
        if self.at("("):
            self.i += 1
            node = self.expr()
            self.eat(")")
            return node
        if t.kind == "NAME":
            if t.text == "class":
                self.i += 1
                self.eat("mod")
                m = self.int_()
                if m < 1:
                    raise ParseError(self.toks[self.i - 1].pos, ["a positive modulus"], str(m))
                self.eat("{")
                parts = [self.expr()]
                while self.at(";"):
                    self.i += 1
                    parts.append(self.expr())
                if len(parts) != m:
                    raise self._fail([f"{m} class expressions separated by ';'"])
                self.eat("}")
                return ClassLit(m, tuple(parts))
            if t.text == "patch":
                self.i += 1
                return Patch(Num(Fraction(0)), self.patch_body())
            if t.text == "wave":
                self.i += 1
                self.eat("{")
                self.eat("breaks"); self.eat("=")
                breaks = self.expr_list()
                self.eat(";")
                self.eat("coeffs"); self.eat("=")
                coeffs = self.expr_list()
                if self.at(";"):
                    self.i += 1
                self.eat("}")
                return WaveLit(breaks, coeffs)
            if t.text == "op":
                self.i += 1
                self.eat("{")
                self.eat("grid"); self.eat("=")
                grid = self.expr_list()
                self.eat(";")
                self.eat("matrix"); self.eat("=")
                self.eat("[")
                rows = [self.expr_list()]
                while self.at(","):
                    self.i += 1
                    rows.append(self.expr_list())
                self.eat("]")
                if self.at(";"):
                    self.i += 1
                self.eat("}")
                return OpLit(grid, tuple(rows))
            if t.text in KEYWORDS:
                raise self._fail(["an expression"])
            self.i += 1
            if self.at("("):
                self.i += 1
                args = [self.expr()]
                while self.at(","):
                    self.i += 1
                    args.append(self.expr())
                self.eat(")")
                return Call(t.text, tuple(args), t.pos)
            return Sym(t.text, t.pos)
        raise self._fail(["a number", "a name", "'('"])

    # -- commands ------------------------------------------------------------

    def command(self) -> Command:
        t = self.tok
        word = t.text if t.kind == "NAME" else None
        if word == "let":
            self.i += 1
            name = self.name()
            self.eat("=")
            cmd: Command = Let(name, self.expr())
        elif word == "show":
            self.i += 1
            cmd = Show(self.expr())
        elif word == "classify":
            self.i += 1
            cmd = Classify(self.expr())
        elif word == "cmp":
            self.i += 1
            cmd = Cmp(self.expr(), self.expr())
        elif word == "heisenberg":
            self.i += 1
            cmd = Heisenberg(self.expr(), self.expr(), self.expr())
        elif word == "wintner":
            self.i += 1
            cmd = Wintner(self.expr(), self.expr(), self.expr())
        elif word == "fuzz":
            self.i += 1
            suite = self.tok.text if self.tok.kind == "NAME" else None
            if suite is None:
                raise self._fail(["a suite name"])
            self.i += 1
            cases = self.int_() if self.tok.kind == "INT" else None
            seed = self.int_() if self.tok.kind == "INT" else None
            cmd = Fuzz(suite, cases, seed)
        elif word == "evalat":
            self.i += 1
            e = self.expr()
            cmd = EvalAt(e, self.int_())
        else:
            cmd = Show(self.expr())
        self.end()
        return cmd


def parse(line: str) -> Command:
    """Parse one command line."""
    return _Parser(line).command()


def parse_expr(src: str) -> Expr:
    p = _Parser(src)
    e = p.expr()
    p.end()
    return e
