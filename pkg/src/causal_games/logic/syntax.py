"""First-order expressions and quantifier-only formulas, locally nameless.

Propositions and terms share one expression type: the unary coercion of a
term into a proposition is the identity, so ``x ∧ y`` can serve both as a
witness term and as an atomic proposition.  Bound occurrences are de Bruijn
indices (:class:`BVar`), free ones are names (:class:`Var`), which makes
formulas equal exactly when they are equal up to renaming bound variables.

Concrete syntax is s-expressions::

    expr    ::= var | NUMERAL | top | bot | (f expr ...)
    formula ::= (forall x formula) | (exists x formula) | expr

A bare identifier is a variable except ``top`` and ``bot``; numerals are
constants and ``(c)`` is the nullary application of ``c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BVar:
    index: int


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple = ()


Expr = Var | BVar | Fn

TOP = Fn("top")
BOT = Fn("bot")
CONSTANTS = {"top": TOP, "bot": BOT}


def and_(a: Expr, b: Expr) -> Fn:
    return Fn("and", (a, b))


def or_(a: Expr, b: Expr) -> Fn:
    return Fn("or", (a, b))


@dataclass(frozen=True)
class Atomic:
    expr: Expr


@dataclass(frozen=True)
class Forall:
    hint: str = field(compare=False)
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    hint: str = field(compare=False)
    body: "Formula"


Formula = Atomic | Forall | Exists


def expr_fv(e: Expr) -> frozenset[str]:
    match e:
        case Var(name):
            return frozenset({name})
        case BVar():
            return frozenset()
        case Fn(_, args):
            return frozenset().union(*map(expr_fv, args)) if args else frozenset()
    raise TypeError(e)


def fv(f: Formula | Expr) -> frozenset[str]:
    match f:
        case Atomic(e):
            return expr_fv(e)
        case Forall(_, body) | Exists(_, body):
            return fv(body)
    return expr_fv(f)


def _subst_expr(e: Expr, fn) -> Expr:
    match e:
        case Fn(name, args):
            return Fn(name, tuple(_subst_expr(a, fn) for a in args))
    return fn(e)


def _map_formula(f: Formula, fn, depth: int = 0) -> Formula:
    match f:
        case Atomic(e):
            return Atomic(_subst_expr(e, lambda v: fn(v, depth)))
        case Forall(h, body):
            return Forall(h, _map_formula(body, fn, depth + 1))
        case Exists(h, body):
            return Exists(h, _map_formula(body, fn, depth + 1))
    raise TypeError(f)


def instantiate(binder: Forall | Exists, t: Expr) -> Formula:
    """The body of a quantifier with its bound variable replaced by ``t``."""
    if any(isinstance(x, BVar) for x in _leaves(t)):
        raise ValueError("witness terms must be locally closed")
    return _map_formula(binder.body, lambda v, d: t if v == BVar(d) else v)


def abstract(x: str, f: Formula) -> Formula:
    """Turn the free variable ``x`` into the bound variable of a new binder."""
    return _map_formula(f, lambda v, d: BVar(d) if v == Var(x) else v)


def substitute(f: Formula, x: str, t: Expr) -> Formula:
    """``f[t/x]``; capture cannot happen since bound variables are indices."""
    return _map_formula(f, lambda v, d: t if v == Var(x) else v)


def _leaves(e: Expr):
    if isinstance(e, Fn):
        for a in e.args:
            yield from _leaves(a)
    else:
        yield e


def forall(x: str, body: Formula | Expr) -> Forall:
    return Forall(x, abstract(x, as_formula(body)))


def exists(x: str, body: Formula | Expr) -> Exists:
    return Exists(x, abstract(x, as_formula(body)))


def as_formula(f: Formula | Expr) -> Formula:
    return f if isinstance(f, (Atomic, Forall, Exists)) else Atomic(f)


def spine(f: Formula) -> list[str]:
    """Quantifier kinds from the outside in, as ``"forall"``/``"exists"``."""
    out = []
    while not isinstance(f, Atomic):
        out.append("forall" if isinstance(f, Forall) else "exists")
        f = f.body
    return out


# -- s-expressions -------------------------------------------------------------

_TOKEN = re.compile(r"\s+|;[^\n]*|#[^\n]*|(?P<tok>\(|\)|,|\|-|[^\s(),|]+)")


class LogicSyntaxError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise LogicSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        if m.group("tok"):
            out.append(m.group("tok"))
        pos = m.end()
    return out


def read_sexp(tokens: list[str], i: int = 0):
    """One s-expression from ``tokens[i:]``: nested lists of strings, and the next index."""
    if i >= len(tokens):
        raise LogicSyntaxError("unexpected end of input")
    tok = tokens[i]
    if tok == "(":
        items = []
        i += 1
        while i < len(tokens) and tokens[i] != ")":
            item, i = read_sexp(tokens, i)
            items.append(item)
        if i >= len(tokens):
            raise LogicSyntaxError("missing closing parenthesis")
        return items, i + 1
    if tok == ")":
        raise LogicSyntaxError("unexpected ')'")
    return tok, i + 1


def parse_sexp(text: str):
    tokens = tokenize(text)
    sexp, i = read_sexp(tokens)
    if i != len(tokens):
        raise LogicSyntaxError(f"trailing input {' '.join(tokens[i:])!r}")
    return sexp


def sexp_to_expr(s) -> Expr:
    if isinstance(s, str):
        if s in CONSTANTS:
            return CONSTANTS[s]
        if s[0].isdigit():
            return Fn(s)
        if not re.fullmatch(r"[A-Za-z_][\w']*", s):
            raise LogicSyntaxError(f"bad identifier {s!r}")
        return Var(s)
    if not s or not isinstance(s[0], str):
        raise LogicSyntaxError("an application starts with a function symbol")
    if s[0] in ("forall", "exists"):
        raise LogicSyntaxError("quantifiers are not terms")
    return Fn(s[0], tuple(sexp_to_expr(a) for a in s[1:]))


def sexp_to_formula(s) -> Formula:
    if isinstance(s, list) and s and s[0] in ("forall", "exists"):
        if len(s) != 3 or not isinstance(s[1], str):
            raise LogicSyntaxError(f"malformed quantifier {s!r}")
        body = sexp_to_formula(s[2])
        return forall(s[1], body) if s[0] == "forall" else exists(s[1], body)
    return Atomic(sexp_to_expr(s))


def parse_expr(text: str) -> Expr:
    return sexp_to_expr(parse_sexp(text))


def parse_formula(text: str) -> Formula:
    return sexp_to_formula(parse_sexp(text))


def show_expr(e: Expr, names: tuple[str, ...] = ()) -> str:
    match e:
        case Var(name):
            return name
        case BVar(i):
            return names[len(names) - 1 - i]
        case Fn(name, ()):
            return name if name in CONSTANTS or name[0].isdigit() else f"({name})"
        case Fn(name, args):
            return "(" + " ".join([name] + [show_expr(a, names) for a in args]) + ")"
    raise TypeError(e)


def show_formula(f: Formula | Expr, names: tuple[str, ...] = ()) -> str:
    match as_formula(f):
        case Atomic(e):
            return show_expr(e, names)
        case Forall(h, body) | Exists(h, body):
            kind = "forall" if isinstance(f, Forall) else "exists"
            taken = set(names) | fv(body)
            name = h
            k = 0
            while name in taken:
                k += 1
                name = f"{h}{k}"
            return f"({kind} {name} {show_formula(body, names + (name,))})"
    raise TypeError(f)
