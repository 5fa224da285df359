"""Indexed-letter words, schema rewrite rules, termination measures and a
bounded local-confluence checker.

Words are tuples of :class:`Letter`.  The leftmost letter is the outermost
constructor of a precanonical form, so ``W0 E H Z`` reads as
``W_0(E(H(Z)))``.
"""

from __future__ import annotations

import itertools
import operator
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

KINDS = "ZHEWAB"


@dataclass(frozen=True)
class Letter:
    kind: str
    pol: str | None = None
    index: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown letter kind {self.kind!r}")
        indexed = self.kind in "WAB"
        if indexed != (self.index is not None):
            raise ValueError(f"letter {self.kind} {'needs' if indexed else 'takes no'} index")
        if self.index is not None and self.index < 0:
            raise ValueError("letter index must be non-negative")
        if self.pol is not None and (self.pol not in "OP" or self.kind not in "HE"):
            raise ValueError(f"bad polarity {self.pol!r} on {self.kind}")

    def __str__(self):
        return self.kind + (self.pol or "") + ("" if self.index is None else str(self.index))


Word = tuple[Letter, ...]

Z = Letter("Z")
H = Letter("H")
E = Letter("E")


def W(i: int) -> Letter:
    return Letter("W", None, i)


def A(i: int) -> Letter:
    return Letter("A", None, i)


def B(i: int) -> Letter:
    return Letter("B", None, i)


def HX(x: str) -> Letter:
    return Letter("H", x)


def EX(x: str) -> Letter:
    return Letter("E", x)


_LETTER = re.compile(r"([ZHEWAB])([OP]?)(\d*)$")


def parse_letter(text: str) -> Letter:
    m = _LETTER.match(text)
    if m is None:
        raise ValueError(f"bad letter {text!r}")
    kind, pol, idx = m.groups()
    return Letter(kind, pol or None, int(idx) if idx else None)


def parse_word(text: str) -> Word:
    return tuple(parse_letter(tok) for tok in text.split())


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(str(x) for x in word)


class WordTypeError(ValueError):
    pass


def word_type(word: Sequence[Letter]) -> tuple[tuple[str | None, ...], tuple[str | None, ...]]:
    """Domain and codomain of a precanonical word, as tuples of polarities.

    For the one-object theories the polarities are all ``None`` and only the
    lengths matter.  Checks the grammar (a single trailing ``Z``) and that
    every indexed letter points inside the interface of its argument.
    """
    if not word or word[-1] != Z or Z in word[:-1]:
        raise WordTypeError("a precanonical word ends with exactly one Z")
    dom: list[str | None] = []
    cod: list[str | None] = []
    for pos in range(len(word) - 2, -1, -1):
        x = word[pos]
        if x.kind == "H":
            cod.insert(0, x.pol)
        elif x.kind == "E":
            dom.insert(0, x.pol)
        elif x.kind == "W":
            if not dom or x.index >= len(cod):
                raise WordTypeError(f"{x} at position {pos} is out of range")
        elif x.kind == "A":
            if x.index < 1 or x.index >= len(dom):
                raise WordTypeError(f"{x} at position {pos} is out of range")
        elif x.kind == "B":
            if x.index < 1 or x.index >= len(cod):
                raise WordTypeError(f"{x} at position {pos} is out of range")
    return tuple(dom), tuple(cod)


# -- schemas -----------------------------------------------------------------

_SCHEMA_LETTER = re.compile(r"([ZHEWAB])(?:\^(\w+))?(?:_\{?([^}\s]+)\}?)?$")
_INDEX = re.compile(r"(?:(\d+)|([a-z]\w*)(?:([+-])(\d+))?)$")
_CMP = {"<": operator.lt, "<=": operator.le, ">": operator.gt, ">=": operator.ge,
        "=": operator.eq, "==": operator.eq, "!=": operator.ne}


@dataclass(frozen=True)
class _Pat:
    kind: str
    pol: str | None          # literal "O"/"P", a variable name, or None
    pol_is_var: bool
    var: str | None          # index variable
    offset: int              # index = var + offset, or literal when var is None

    def index(self, env: dict) -> int | None:
        if self.kind not in "WAB":
            return None
        return self.offset if self.var is None else env[self.var] + self.offset


def _parse_schema(text: str) -> tuple[_Pat, ...]:
    pats = []
    for tok in text.split():
        m = _SCHEMA_LETTER.match(tok)
        if m is None:
            raise ValueError(f"bad schema letter {tok!r}")
        kind, pol, idx = m.groups()
        var, offset = None, 0
        if kind in "WAB":
            if idx is None:
                raise ValueError(f"{tok!r} needs an index")
            im = _INDEX.match(idx)
            if im is None:
                raise ValueError(f"bad index expression {idx!r}")
            lit, var, sign, off = im.groups()
            if lit is not None:
                offset = int(lit)
            elif off is not None:
                offset = int(off) if sign == "+" else -int(off)
        elif idx is not None:
            raise ValueError(f"{tok!r} takes no index")
        pats.append(_Pat(kind, pol, pol is not None and pol not in ("O", "P"), var, offset))
    return tuple(pats)


def _parse_condition(text: str) -> list[tuple[str, Callable, str]]:
    conds = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = re.match(r"(\w+)\s*(<=|>=|==|!=|<|>|=)\s*(\w+)$", part)
        if m is None:
            raise ValueError(f"bad side condition {part!r}")
        conds.append((m.group(1), _CMP[m.group(2)], m.group(3)))
    return conds


@dataclass(frozen=True)
class RewriteRule:
    """A word rule given by schemas, e.g. ``RewriteRule("W_i W_j", "W_j W_i", "i<j")``."""

    lhs: str
    rhs: str
    condition: str = ""
    name: str = ""
    _l: tuple = field(init=False, repr=False, compare=False)
    _r: tuple = field(init=False, repr=False, compare=False)
    _c: list = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        l, r = _parse_schema(self.lhs), _parse_schema(self.rhs)
        for p in l:
            if p.kind in "WAB" and p.var is None:
                raise ValueError("left-hand side indices must be variables")
        bound = {p.var for p in l if p.var} | {p.pol for p in l if p.pol_is_var}
        needed = {p.var for p in r if p.var} | {p.pol for p in r if p.pol_is_var}
        if not needed <= bound:
            raise ValueError(f"unbound variables {needed - bound} in {self.rhs!r}")
        # E and H letters carry the typing; a rule must not change them
        if sorted((p.kind, p.pol) for p in l if p.kind in "EHZ") != sorted(
            (p.kind, p.pol) for p in r if p.kind in "EHZ"
        ):
            raise ValueError(f"rule {self.lhs} => {self.rhs} changes the typing")
        object.__setattr__(self, "_l", l)
        object.__setattr__(self, "_r", r)
        object.__setattr__(self, "_c", _parse_condition(self.condition))

    def __str__(self):
        s = f"{self.lhs} => {self.rhs}"
        return f"{s} when {self.condition}" if self.condition else s

    @property
    def width(self) -> int:
        return len(self._l)

    def match(self, word: Sequence[Letter], pos: int) -> dict | None:
        if pos + len(self._l) > len(word):
            return None
        env: dict = {}
        for p, x in zip(self._l, word[pos:], strict=False):
            if p.kind != x.kind:
                return None
            if p.pol_is_var:
                if x.pol is None or env.setdefault(p.pol, x.pol) != x.pol:
                    return None
            elif p.pol != x.pol:
                return None
            if p.var is not None and env.setdefault(p.var, x.index) != x.index:
                return None
        for a, op, b in self._c:
            if not op(env[a], env[b]):
                return None
        return env

    def apply_at(self, word: Sequence[Letter], pos: int) -> Word | None:
        env = self.match(word, pos)
        if env is None:
            return None
        out = []
        for p in self._r:
            pol = env[p.pol] if p.pol_is_var else p.pol
            out.append(Letter(p.kind, pol, p.index(env)))
        return tuple(word[:pos]) + tuple(out) + tuple(word[pos + len(self._l):])


Measure = tuple[int, ...]


def _aggregate(word: Sequence[Letter], weight: Callable[[Letter], Measure]) -> Measure:
    # letter at position p (0 = leftmost, the outermost constructor) counts 2^p times
    total = None
    for pos, x in enumerate(word):
        w = weight(x)
        if total is None:
            total = [0] * len(w)
        for k, v in enumerate(w):
            total[k] += v << pos
    return tuple(total or (0, 0))


def _bialgebra_weight(x: Letter) -> Measure:
    if x.kind == "E":
        return (1, 0)
    if x.kind in "WAB":
        return (1, x.index)
    return (0, 0)


def termination_measure(word: Sequence[Letter]) -> Measure:
    """The lexicographic pair for the bialgebra systems: Z, H ↦ (0,0), E ↦ (1,0),
    W_i ↦ (1,i), and a composite G∘F ↦ G + 2F."""
    return _aggregate(word, _bialgebra_weight)


_FAMILY = {"W": 2, "A": 1, "E": 1}


def _games_weight(x: Letter) -> Measure:
    count = 0 if x.kind == "H" else 1
    return (count, _FAMILY.get(x.kind, 0), x.index or 0)


def games_measure(word: Sequence[Letter]) -> Measure:
    """Triple for the games system, aggregated like :func:`termination_measure`.

    The first component drops whenever an H moves right or a letter is
    erased, the second when a B (or an A) moves right past a heavier
    letter, and the third orders swaps inside one family.
    """
    return _aggregate(word, _games_weight)


@dataclass(frozen=True)
class RewriteSystem:
    name: str
    rules: tuple[RewriteRule, ...]
    measure: Callable[[Sequence[Letter]], Measure] = termination_measure

    @property
    def width(self) -> int:
        return max((r.width for r in self.rules), default=1)

    def step(self, word: Sequence[Letter], start: int = 0) -> tuple[int, Word] | None:
        """Leftmost redex at or after ``start``, contracted."""
        for pos in range(start, len(word)):
            for r in self.rules:
                out = r.apply_at(word, pos)
                if out is not None:
                    return pos, out
        return None

    def redexes(self, word: Sequence[Letter]) -> list[tuple[int, RewriteRule, Word]]:
        out = []
        for pos in range(len(word)):
            for r in self.rules:
                res = r.apply_at(word, pos)
                if res is not None:
                    out.append((pos, r, res))
        return out

    def is_normal(self, word: Sequence[Letter]) -> bool:
        return self.step(word) is None

    def normalize(self, word: Sequence[Letter]) -> Word:
        word = tuple(word)
        start = 0
        while True:
            hit = self.step(word, start)
            if hit is None:
                return word
            pos, word = hit
            # everything strictly left of the touched window was already normal
            start = max(0, pos - self.width + 1)


def rewrite_to_normal(word: Sequence[Letter], rules: RewriteSystem | Sequence[RewriteRule]) -> Word:
    if not isinstance(rules, RewriteSystem):
        rules = RewriteSystem("adhoc", tuple(rules))
    return rules.normalize(word)


# -- the registered systems ----------------------------------------------------

BIALGEBRA_RULES = (
    RewriteRule("H W_i", "W_{i+1} H", name="H-W"),
    RewriteRule("H E", "E H", name="H-E"),
    RewriteRule("W_i W_j", "W_j W_i", "i<j", name="W-W"),
)
QUALITATIVE_RULES = BIALGEBRA_RULES + (RewriteRule("W_i W_i", "W_i", name="W-idem"),)

# The displayed rule "E^X B_i => E^X" would erase a dependency, which is not
# sound for the letter semantics; B letters are instead pushed right past E.
GAMES_RULES = (
    RewriteRule("H^X W_i", "W_{i+1} H^X", name="H-W"),
    RewriteRule("H^X E^Y", "E^Y H^X", name="H-E"),
    RewriteRule("W_i W_j", "W_j W_i", "i<j", name="W-W"),
    RewriteRule("W_i W_i", "W_i", name="W-idem"),
    RewriteRule("H^X A_i", "A_i H^X", name="H-A"),
    RewriteRule("A_i W_j", "W_j A_i", name="A-W"),
    RewriteRule("A_i A_j", "A_j A_i", "i<j", name="A-A"),
    RewriteRule("A_i A_i", "A_i", name="A-idem"),
    RewriteRule("B_i E^X", "E^X B_i", name="B-E"),
    RewriteRule("B_i W_j", "W_j B_i", name="B-W"),
    RewriteRule("B_i B_j", "B_j B_i", "i<j", name="B-B"),
    RewriteRule("B_i B_i", "B_i", name="B-idem"),
    RewriteRule("B_i A_j", "A_j B_i", name="B-A"),
)

BIALGEBRA_SYSTEM = RewriteSystem("B", BIALGEBRA_RULES, termination_measure)
QUALITATIVE_SYSTEM = RewriteSystem("R", QUALITATIVE_RULES, termination_measure)
GAMES_SYSTEM = RewriteSystem("G", GAMES_RULES, games_measure)

SYSTEMS = {"B": BIALGEBRA_SYSTEM, "R": QUALITATIVE_SYSTEM, "G": GAMES_SYSTEM}


def alphabet(system: RewriteSystem, index_bound: int) -> list[Letter]:
    """Letters occurring in the rule schemas, with indices below ``index_bound``."""
    kinds: dict[str, bool] = {}
    for r in system.rules:
        for p in r._l + r._r:
            kinds[p.kind] = kinds.get(p.kind, False) or p.pol_is_var or p.pol is not None
    out = []
    for kind in KINDS:
        if kind not in kinds:
            continue
        if kind in "WAB":
            lo = 0 if kind == "W" else 1
            out += [Letter(kind, None, i) for i in range(lo, index_bound)]
        elif kinds[kind]:
            out += [Letter(kind, "O"), Letter(kind, "P")]
        else:
            out.append(Letter(kind))
    return out


@dataclass(frozen=True)
class Peak:
    word: Word
    left: Word
    right: Word
    left_normal: Word
    right_normal: Word

    def __str__(self):
        return (f"{format_word(self.word)}: {format_word(self.left_normal)} "
                f"!= {format_word(self.right_normal)}")


def check_local_confluence(
    rules: RewriteSystem | Sequence[RewriteRule],
    max_word_length: int,
    index_bound: int | None = None,
) -> list[Peak]:
    """Unjoinable one-step peaks among words of length at most ``max_word_length``.

    Two redexes that do not overlap commute, so only words where redexes
    overlap can fail; such a word contains its overlap window of length at
    most ``2*width - 1`` and rewriting is closed under context.  Enumerating
    every window up to that length (capped by ``max_word_length``) therefore
    covers every word within the bound.
    """
    if not isinstance(rules, RewriteSystem):
        rules = RewriteSystem("adhoc", tuple(rules))
    if not rules.rules:
        return []
    if index_bound is None:
        index_bound = max_word_length
    letters = alphabet(rules, index_bound)
    longest = min(max_word_length, 2 * rules.width - 1)
    bad = []
    for n in range(2, longest + 1):
        for word in itertools.product(letters, repeat=n):
            reducts = {res for _, _, res in rules.redexes(word)}
            if len(reducts) < 2:
                continue
            reducts = sorted(reducts, key=format_word)
            first = rules.normalize(reducts[0])
            for other in reducts[1:]:
                nf = rules.normalize(other)
                if nf != first:
                    bad.append(Peak(word, reducts[0], other, first, nf))
    return bad
