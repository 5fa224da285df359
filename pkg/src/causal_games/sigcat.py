"""Signatures, typed morphism terms of the free monoidal category, and the term DSL.

Terms are plain immutable trees::

    Identity(word) | Generator(name) | Tensor(left, right) | Compose(first, then)

``Compose(f, g)`` is *g after f*: the DSL writes it ``f ; g``.  Tensor is
written ``f * g`` and binds tighter than ``;``.  ``id(3)`` is the identity on
three wires of a one-object signature and ``id(OPO)`` spells the word out
letter by letter when there are several object generators.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[str, ...]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class TermTypeError(TypeError):
    """Raised when composition interfaces of a term do not match."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    src: Word
    tgt: Word


@dataclass(frozen=True)
class Signature:
    objects: tuple[str, ...]
    generators: tuple[GeneratorSpec, ...]

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object generator")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate morphism generator")
        known = set(self.objects)
        for g in self.generators:
            for letter in g.src + g.tgt:
                if letter not in known:
                    raise ValueError(f"generator {g.name!r} uses undeclared object {letter!r}")

    @classmethod
    def build(cls, objects: Iterable[str], generators: Iterable[tuple[str, Sequence[str], Sequence[str]]]):
        return cls(tuple(objects), tuple(GeneratorSpec(n, tuple(s), tuple(t)) for n, s, t in generators))

    @property
    def single_object(self) -> str | None:
        return self.objects[0] if len(self.objects) == 1 else None

    def generator(self, name: str) -> GeneratorSpec:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(f"unknown generator {name!r}")

    def has_generator(self, name: str) -> bool:
        return any(g.name == name for g in self.generators)

    def width(self, n: int) -> Word:
        """The word of ``n`` copies of the unique object generator."""
        if self.single_object is None:
            raise ValueError("numeric widths need a one-object signature")
        return (self.single_object,) * n

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "generators": [
                {"name": g.name, "src": "".join(g.src), "tgt": "".join(g.tgt)}
                for g in self.generators
            ],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> "Signature":
        if isinstance(doc, str):
            doc = json.loads(doc)
        objects = tuple(doc["objects"])
        gens = []
        for g in doc["generators"]:
            gens.append((g["name"], _split_letters(g["src"], objects), _split_letters(g["tgt"], objects)))
        return cls.build(objects, gens)


def _split_letters(text: str, objects: Sequence[str]) -> Word:
    if any(len(o) != 1 for o in objects):
        raise ValueError("object words can only be spelled with single-character object names")
    for ch in text:
        if ch not in objects:
            raise ValueError(f"unknown object letter {ch!r}")
    return tuple(text)


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    word: Word


@dataclass(frozen=True)
class Generator:
    name: str


@dataclass(frozen=True)
class Tensor:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Compose:
    first: "Term"
    then: "Term"


Term = Identity | Generator | Tensor | Compose


def compose_all(terms: Iterable[Term]) -> Term:
    """Left-nested composite of ``terms`` in diagrammatic order, dropping identities."""
    terms = list(terms)
    kept = [t for t in terms if not isinstance(t, Identity)]
    if not kept:
        if not terms:
            raise ValueError("empty composite has no type")
        return terms[0]
    out = kept[0]
    for t in kept[1:]:
        out = Compose(out, t)
    return out


def tensor_all(terms: Iterable[Term]) -> Term:
    """Left-nested tensor of ``terms``, dropping identities on the empty word."""
    kept = [t for t in terms if t != Identity(())]
    if not kept:
        return Identity(())
    out = kept[0]
    for t in kept[1:]:
        out = Tensor(out, t)
    return out


def whisker(left: Word, name: str, right: Word) -> Term:
    return tensor_all([Identity(tuple(left)), Generator(name), Identity(tuple(right))])


# -- typing ------------------------------------------------------------------


def typecheck(t: Term, sig: Signature) -> tuple[Word, Word]:
    match t:
        case Identity(word):
            for letter in word:
                if letter not in sig.objects:
                    raise TermTypeError(f"unknown object {letter!r} in {print_term(t, sig)}")
            return word, word
        case Generator(name):
            try:
                g = sig.generator(name)
            except KeyError:
                raise TermTypeError(f"unknown generator {name!r}") from None
            return g.src, g.tgt
        case Tensor(left, right):
            s1, t1 = typecheck(left, sig)
            s2, t2 = typecheck(right, sig)
            return s1 + s2, t1 + t2
        case Compose(first, then):
            s1, t1 = typecheck(first, sig)
            s2, t2 = typecheck(then, sig)
            if t1 != s2:
                raise TermTypeError(
                    f"cannot compose: target {_show_word(t1, sig)} of "
                    f"{print_term(first, sig)} does not match source "
                    f"{_show_word(s2, sig)} of {print_term(then, sig)}"
                )
            return s1, t2
    raise TypeError(f"not a term: {t!r}")


def _show_word(word: Word, sig: Signature | None) -> str:
    if sig is not None and sig.single_object is not None:
        return str(len(word))
    return "".join(word) or "I"


def size(t: Term) -> int:
    match t:
        case Identity():
            return 0
        case Generator():
            return 1
        case Tensor(left, right):
            return size(left) + size(right)
        case Compose(first, then):
            return size(first) + size(then)
    raise TypeError(f"not a term: {t!r}")


@dataclass(frozen=True)
class Slice:
    """``left ⊗ generator ⊗ right`` with whisker widths counted in object letters."""

    left: int
    generator: str
    right: int


def slices(t: Term, sig: Signature) -> list[Slice]:
    """Sequentialize ``t`` into whiskered generators, first-applied first.

    Tensor factors are swept left (top) factor first, so the result is
    deterministic; any interleaving would be equal modulo the exchange law.
    """
    out, _, _ = _slices(t, sig)
    return out


def _slices(t: Term, sig: Signature) -> tuple[list[Slice], Word, Word]:
    match t:
        case Identity(word):
            return [], word, word
        case Generator(name):
            g = sig.generator(name)
            return [Slice(0, name, 0)], g.src, g.tgt
        case Tensor(left, right):
            ls, s1, t1 = _slices(left, sig)
            rs, s2, t2 = _slices(right, sig)
            out = [Slice(s.left, s.generator, s.right + len(s2)) for s in ls]
            out += [Slice(s.left + len(t1), s.generator, s.right) for s in rs]
            return out, s1 + s2, t1 + t2
        case Compose(first, then):
            fs, s1, t1 = _slices(first, sig)
            gs, s2, t2 = _slices(then, sig)
            if t1 != s2:
                typecheck(t, sig)
            return fs + gs, s1, t2
    raise TypeError(f"not a term: {t!r}")


def slices_to_term(seq: Sequence[Slice], sig: Signature, source: Word) -> Term:
    """Rebuild the composite of whiskered generators starting from ``source``."""
    current = tuple(source)
    pieces: list[Term] = []
    for s in seq:
        g = sig.generator(s.generator)
        end = s.left + len(g.src)
        if current[s.left:end] != g.src or len(current) != end + s.right:
            raise TermTypeError(f"slice {s} does not fit the word {_show_word(current, sig)}")
        pieces.append(whisker(current[: s.left], s.generator, current[end:]))
        current = current[: s.left] + g.tgt + current[end:]
    if not pieces:
        return Identity(current)
    return compose_all(pieces)


# -- DSL ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<sym>[();*])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Term:
        t = self.tens()
        while self.peek()[:2] == ("sym", ";"):
            self.i += 1
            t = Compose(t, self.tens())
        return t

    def tens(self) -> Term:
        t = self.atom()
        while self.peek()[:2] == ("sym", "*"):
            self.i += 1
            t = Tensor(t, self.atom())
        return t

    def atom(self) -> Term:
        kind, value, pos = self.peek()
        if (kind, value) == ("sym", "("):
            self.i += 1
            t = self.expr()
            self.take("sym", ")")
            return t
        if kind == "ident" and value == "id":
            self.i += 1
            self.take("sym", "(")
            word = self.word_arg()
            self.take("sym", ")")
            return Identity(word)
        if kind == "ident":
            self.i += 1
            if not self.sig.has_generator(value):
                raise ParseError(f"unknown generator {value!r}", pos)
            return Generator(value)
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos)

    def word_arg(self) -> Word:
        kind, value, pos = self.peek()
        if kind == "num":
            self.i += 1
            if self.sig.single_object is None:
                raise ParseError("numeric identity width needs a one-object signature", pos)
            return self.sig.width(int(value))
        if kind == "ident":
            self.i += 1
            try:
                return _split_letters(value, self.sig.objects)
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        return ()


def parse_term(text: str, sig: Signature) -> Term:
    p = _Parser(text, sig)
    t = p.expr()
    kind, value, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", pos)
    return t


def print_term(t: Term, sig: Signature | None = None) -> str:
    return _fmt(t, sig, "top")


def _fmt(t: Term, sig: Signature | None, ctx: str) -> str:
    match t:
        case Identity(word):
            if word and all(letter.isdigit() for letter in word):
                return f"id({len(word)})"
            if not word and sig is not None and sig.single_object is not None:
                return "id(0)"
            return f"id({''.join(word)})"
        case Generator(name):
            return name
        case Tensor(left, right):
            s = f"{_fmt(left, sig, 'tl')} * {_fmt(right, sig, 'tr')}"
            return f"({s})" if ctx == "tr" else s
        case Compose(first, then):
            s = f"{_fmt(first, sig, 'cl')} ; {_fmt(then, sig, 'cr')}"
            return s if ctx in ("top", "cl") else f"({s})"
    raise TypeError(f"not a term: {t!r}")


# -- random terms --------------------------------------------------------------


def random_word(rng: random.Random, sig: Signature, max_len: int) -> Word:
    return tuple(rng.choice(sig.objects) for _ in range(rng.randint(0, max_len)))


def random_term(rng: random.Random, sig: Signature, size_: int, source: Word | None = None) -> Term:
    """A random well-typed term of exactly ``size_`` generators from ``source``.

    The signature must have a generator with empty source so that every
    size is reachable from every source word.
    """
    if source is None:
        source = random_word(rng, sig, 3)
    return _random(rng, sig, size_, tuple(source))


def _random(rng: random.Random, sig: Signature, k: int, source: Word) -> Term:
    if k == 0:
        return Identity(source)
    choices = ["compose", "tensor"] if k > 1 else ["gen", "gen", "tensor"]
    how = rng.choice(choices)
    if how == "gen":
        spots = [
            (i, g)
            for g in sig.generators
            for i in range(len(source) - len(g.src) + 1)
            if source[i : i + len(g.src)] == g.src
        ]
        if spots:
            i, g = rng.choice(spots)
            return whisker(source[:i], g.name, source[i + len(g.src) :])
        how = "tensor"
    if how == "tensor":
        cut = rng.randint(0, len(source))
        k1 = rng.randint(0, k)
        left = _random(rng, sig, k1, source[:cut])
        right = _random(rng, sig, k - k1, source[cut:])
        return Tensor(left, right)
    k1 = rng.randint(1, k - 1)
    first = _random(rng, sig, k1, source)
    _, mid = typecheck(first, sig)
    return Compose(first, _random(rng, sig, k - k1, mid))


# -- models ------------------------------------------------------------------


def evaluate(t: Term, model) -> object:
    """Interpret ``t`` in ``model``, the unique strict monoidal functor fixing generators.

    ``model`` provides ``identity(word)``, ``generator(name)``, ``tensor(a, b)``
    and ``compose(first, then)``.
    """
    match t:
        case Identity(word):
            return model.identity(word)
        case Generator(name):
            return model.generator(name)
        case Tensor(left, right):
            return model.tensor(evaluate(left, model), evaluate(right, model))
        case Compose(first, then):
            return model.compose(evaluate(first, model), evaluate(then, model))
    raise TypeError(f"not a term: {t!r}")
