"""Session language: tokenizer, parser, semantic checks and pretty-printer.

::

    session   := stmt* ; statements end at a newline or ';', '#' starts a comment
    ringdef   := "ring" NAME "=" field "[" names "]" "/" "(" polys ")"
    field     := "QQ" | "GF(" INT ")"
    moduledef := "module" NAME "=" ( "coker" matrix | "k" | "R" | "syz" INT NAME
                                   | "dual" NAME | NAME "++" NAME )
    command   := "resolve" NAME INT | "betti" NAME | "ext" NAME NAME INT INT
               | "gdim" NAME | "abdim" NAME | "arc" NAME | "period" NAME INT
               | "socle" | "gorenstein" | "example" "js" flag*
    flag      := "--" NAME value

Integers inside polynomials are field elements via the natural map.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

__all__ = [
    "ParseError",
    "SemanticError",
    "SessionAst",
    "RingDef",
    "ModuleDef",
    "Command",
    "parse_session",
    "print_session",
]


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message, self.line, self.col, self.expected = message, line, col, tuple(expected)
        text = f"{line}:{col}: {message}"
        if expected:
            text += f" (expected {', '.join(expected)})"
        super().__init__(text)


class SemanticError(Exception):
    def __init__(self, message: str, statement: int):
        self.message, self.statement = message, statement
        super().__init__(f"statement {statement}: {message}")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Paren:
    inner: "Expr"


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, expr) with sign "+" or "-"


Expr = Union[Num, Var, Paren, Power, Product, Sum]


@dataclass(frozen=True)
class FieldSpec:
    prime: int | None  # None for QQ


@dataclass(frozen=True)
class RingDef:
    name: str
    field: FieldSpec
    variables: tuple[str, ...]
    relations: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Coker:
    rows: tuple


@dataclass(frozen=True)
class Residue:
    pass


@dataclass(frozen=True)
class FreeRank1:
    pass


@dataclass(frozen=True)
class Syz:
    n: int
    name: str


@dataclass(frozen=True)
class Dual:
    name: str


@dataclass(frozen=True)
class DirectSum:
    left: str
    right: str


@dataclass(frozen=True)
class ModuleDef:
    name: str
    construction: object
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple = ()
    flags: tuple = ()  # (name, value) pairs, "example" only
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SessionAst:
    statements: tuple


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<flag>--[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>\+\+|[=\[\](),/+\-*^;])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # name, int, sym, flag, end (statement end), eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        col = i - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("end", "\\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "sym" and m.group() == ";":
            tokens.append(Token("end", ";", line, col))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        i = m.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# parser

COMMANDS = {
    "resolve": ("name", "int"),
    "betti": ("name",),
    "ext": ("name", "name", "int", "int"),
    "gdim": ("name",),
    "abdim": ("name",),
    "arc": ("name",),
    "period": ("name", "int"),
    "socle": (),
    "gorenstein": (),
}
EXAMPLE_FLAGS = ("field", "alpha", "bound", "seed", "max_period", "window")
# a module with one of these names could not appear on the left of "++"
RESERVED_MODULE_NAMES = ("coker", "k", "R", "syz", "dual")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, expected: tuple[str, ...], message: str | None = None):
        t = self.tok
        shown = {"end": "end of statement", "eof": "end of input"}.get(t.kind, repr(t.text))
        raise ParseError(message or f"unexpected {shown}", t.line, t.col, expected)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept_sym(self, s: str) -> bool:
        if self.tok.kind == "sym" and self.tok.text == s:
            self.i += 1
            return True
        return False

    def expect_sym(self, s: str) -> Token:
        if self.tok.kind == "sym" and self.tok.text == s:
            return self.advance()
        self.error((repr(s),))

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind == kind:
            return self.advance()
        self.error((what,))

    def expect_word(self, word: str) -> Token:
        if self.tok.kind == "name" and self.tok.text == word:
            return self.advance()
        self.error((repr(word),))

    def session(self) -> SessionAst:
        stmts = []
        while True:
            while self.tok.kind == "end":
                self.advance()
            if self.tok.kind == "eof":
                break
            stmts.append(self.statement())
            if self.tok.kind not in ("end", "eof"):
                self.error(("end of statement",))
        return SessionAst(tuple(stmts))

    def statement(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind != "name":
            self.error(("'ring'", "'module'", "command"))
        word = t.text
        if word == "ring":
            return self.ringdef(pos)
        if word == "module":
            return self.moduledef(pos)
        if word == "example":
            self.advance()
            self.expect_word("js")
            flags = []
            while self.tok.kind == "flag":
                name = self.advance().text[2:]
                flags.append((name, self.flag_value()))
            return Command("example", ("js",), tuple(flags), pos)
        if word in COMMANDS:
            self.advance()
            args = []
            for kind in COMMANDS[word]:
                tok = self.expect_kind(kind, "name" if kind == "name" else "integer")
                args.append(int(tok.text) if kind == "int" else tok.text)
            return Command(word, tuple(args), (), pos)
        self.error(("'ring'", "'module'", "command"), f"unknown statement {word!r}")

    def flag_value(self) -> str:
        neg = self.accept_sym("-")
        t = self.tok
        if t.kind not in ("name", "int"):
            self.error(("flag value",))
        self.advance()
        text = ("-" if neg else "") + t.text
        if t.kind == "int" and self.accept_sym("/"):
            den = self.expect_kind("int", "integer")
            text += "/" + den.text
        return text

    def ringdef(self, pos) -> RingDef:
        self.expect_word("ring")
        name = self.expect_kind("name", "ring name").text
        self.expect_sym("=")
        t = self.tok
        if t.kind == "name" and t.text == "QQ":
            self.advance()
            fs = FieldSpec(None)
        elif t.kind == "name" and t.text == "GF":
            self.advance()
            self.expect_sym("(")
            fs = FieldSpec(int(self.expect_kind("int", "integer").text))
            self.expect_sym(")")
        else:
            self.error(("'QQ'", "'GF('"))
        self.expect_sym("[")
        names = [self.expect_kind("name", "variable name").text]
        while self.accept_sym(","):
            names.append(self.expect_kind("name", "variable name").text)
        self.expect_sym("]")
        self.expect_sym("/")
        self.expect_sym("(")
        polys = [self.expr()]
        while self.accept_sym(","):
            polys.append(self.expr())
        self.expect_sym(")")
        return RingDef(name, fs, tuple(names), tuple(polys), pos)

    def moduledef(self, pos) -> ModuleDef:
        self.expect_word("module")
        name = self.expect_kind("name", "module name").text
        self.expect_sym("=")
        t = self.tok
        if t.kind != "name":
            self.error(("'coker'", "'k'", "'R'", "'syz'", "'dual'", "module name"))
        word = t.text
        self.advance()
        if word == "coker":
            cons = Coker(self.matrix())
        elif word == "k":
            cons = Residue()
        elif word == "R":
            cons = FreeRank1()
        elif word == "syz":
            n = int(self.expect_kind("int", "integer").text)
            cons = Syz(n, self.expect_kind("name", "module name").text)
        elif word == "dual":
            cons = Dual(self.expect_kind("name", "module name").text)
        else:
            self.expect_sym("++")
            cons = DirectSum(word, self.expect_kind("name", "module name").text)
        return ModuleDef(name, cons, pos)

    def matrix(self) -> tuple:
        self.expect_sym("[")
        rows = [self.matrix_row()]
        while self.accept_sym(","):
            rows.append(self.matrix_row())
        self.expect_sym("]")
        return tuple(rows)

    def matrix_row(self) -> tuple:
        self.expect_sym("[")
        entries = [self.expr()]
        while self.accept_sym(","):
            entries.append(self.expr())
        self.expect_sym("]")
        return tuple(entries)

    def expr(self) -> Expr:
        terms = []
        sign = "-" if self.accept_sym("-") else "+"
        terms.append((sign, self.term()))
        while self.tok.kind == "sym" and self.tok.text in "+-" and self.tok.text != "++":
            sign = self.advance().text
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == "+":
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.accept_sym("*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        base = self.atom()
        if self.accept_sym("^"):
            return Power(base, int(self.expect_kind("int", "integer exponent").text))
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Num(int(t.text))
        if t.kind == "name":
            self.advance()
            return Var(t.text)
        if self.accept_sym("("):
            inner = self.expr()
            self.expect_sym(")")
            return Paren(inner)
        self.error(("integer", "variable", "'('"))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _expr_vars(e) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Paren):
        return _expr_vars(e.inner)
    if isinstance(e, Power):
        return _expr_vars(e.base)
    if isinstance(e, Product):
        return set().union(*(_expr_vars(f) for f in e.factors))
    if isinstance(e, Sum):
        return set().union(*(_expr_vars(t) for _, t in e.terms))
    return set()


def check_semantics(ast: SessionAst) -> None:
    ring: RingDef | None = None
    modules: set[str] = set()
    for idx, st in enumerate(ast.statements):
        if isinstance(st, RingDef):
            if ring is not None:
                raise SemanticError("only one ring per session", idx)
            if st.field.prime is not None and not _is_prime(st.field.prime):
                raise SemanticError(f"GF({st.field.prime}): modulus is not prime", idx)
            if len(set(st.variables)) != len(st.variables):
                raise SemanticError("repeated variable name", idx)
            for rel in st.relations:
                unknown = _expr_vars(rel) - set(st.variables)
                if unknown:
                    raise SemanticError(f"undefined variable {sorted(unknown)[0]!r}", idx)
            ring = st
        elif isinstance(st, ModuleDef):
            if ring is None:
                raise SemanticError("module defined before any ring", idx)
            if st.name in RESERVED_MODULE_NAMES:
                raise SemanticError(f"{st.name!r} is reserved and cannot name a module", idx)
            c = st.construction
            if isinstance(c, Coker):
                width = len(c.rows[0])
                for row in c.rows:
                    if len(row) != width:
                        raise SemanticError("matrix rows have different lengths", idx)
                    for e in row:
                        unknown = _expr_vars(e) - set(ring.variables)
                        if unknown:
                            raise SemanticError(f"undefined variable {sorted(unknown)[0]!r}", idx)
            for ref in _module_refs(c):
                if ref not in modules:
                    raise SemanticError(f"undefined module {ref!r}", idx)
            modules.add(st.name)
        else:
            if st.name == "example":
                for name, _ in st.flags:
                    if name not in EXAMPLE_FLAGS:
                        raise SemanticError(f"unknown flag --{name}", idx)
                continue
            if ring is None:
                raise SemanticError(f"{st.name!r} needs a ring", idx)
            for kind, arg in zip(COMMANDS[st.name], st.args):
                if kind == "name" and arg not in modules:
                    raise SemanticError(f"undefined module {arg!r}", idx)
            if st.name == "ext" and st.args[2] > st.args[3]:
                raise SemanticError("ext range needs lo <= hi", idx)
            if st.name == "period" and st.args[1] < 1:
                raise SemanticError("period bound must be at least 1", idx)


def _module_refs(c) -> list[str]:
    if isinstance(c, Syz):
        return [c.name]
    if isinstance(c, Dual):
        return [c.name]
    if isinstance(c, DirectSum):
        return [c.left, c.right]
    return []


def parse_session(text: str, check: bool = True) -> SessionAst:
    """Parse and (by default) semantically check a session.

    Raises :class:`ParseError` or :class:`SemanticError`; nothing else.
    """
    try:
        ast = _Parser(text).session()
    except RecursionError:
        raise ParseError("expression nested too deeply", 0, 0) from None
    if check:
        check_semantics(ast)
    return ast


# ---------------------------------------------------------------------------
# printer


def print_expr(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Paren):
        return f"({print_expr(e.inner)})"
    if isinstance(e, Power):
        return f"{print_expr(e.base)}^{e.exponent}"
    if isinstance(e, Product):
        return "*".join(print_expr(f) for f in e.factors)
    if isinstance(e, Sum):
        out = []
        for k, (sign, t) in enumerate(e.terms):
            body = print_expr(t)
            if k == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)
    raise TypeError(f"not an expression: {e!r}")


def print_statement(st) -> str:
    if isinstance(st, RingDef):
        fld = "QQ" if st.field.prime is None else f"GF({st.field.prime})"
        rels = ", ".join(print_expr(r) for r in st.relations)
        return f"ring {st.name} = {fld}[{', '.join(st.variables)}] / ({rels})"
    if isinstance(st, ModuleDef):
        c = st.construction
        if isinstance(c, Coker):
            rows = ", ".join("[" + ", ".join(print_expr(e) for e in row) + "]" for row in c.rows)
            body = f"coker [{rows}]"
        elif isinstance(c, Residue):
            body = "k"
        elif isinstance(c, FreeRank1):
            body = "R"
        elif isinstance(c, Syz):
            body = f"syz {c.n} {c.name}"
        elif isinstance(c, Dual):
            body = f"dual {c.name}"
        else:
            body = f"{c.left} ++ {c.right}"
        return f"module {st.name} = {body}"
    if st.name == "example":
        flags = "".join(f" --{n} {v}" for n, v in st.flags)
        return f"example js{flags}"
    return " ".join([st.name, *map(str, st.args)])


def print_session(ast: SessionAst) -> str:
    return "".join(print_statement(st) + "\n" for st in ast.statements)
