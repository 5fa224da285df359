"""Games, strategies and their composition.

Moves of a game are the integers ``0..n-1``.  Polarity is ``-1`` for Opponent
and ``+1`` for Proponent.  A strategy ``A -> B`` lives on the arrow game
``A* ⊗ B`` whose moves are numbered domain first, so codomain move ``k`` is
``len(A) + k``.  Only the strict dependency pairs are stored: polarity rules
out chains of length two, so the pairs are the whole relation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

from causal_games import kernels

O, P = -1, +1
_POL = {"O": O, "P": P}
_LETTER = {O: "O", P: "P"}


class StrategyError(ValueError):
    pass


@dataclass(frozen=True)
class Game:
    polarities: tuple[int, ...]
    order: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        n = len(self.polarities)
        if any(p not in (O, P) for p in self.polarities):
            raise ValueError("polarities are -1 or +1")
        order = frozenset(self.order)
        for a, b in order:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad order pair {(a, b)}")
        closed = frozenset(kernels.closure_restrict(n, sorted(order), range(n)))
        if any(a == b for a, b in closed):
            raise ValueError("causality order has a cycle")
        object.__setattr__(self, "order", closed)

    def __len__(self):
        return len(self.polarities)

    @property
    def is_filiform(self) -> bool:
        n = len(self)
        return all((a, b) in self.order or (b, a) in self.order
                   for a in range(n) for b in range(a + 1, n))

    @property
    def word(self) -> str:
        """Polarity word, read top to bottom; only for filiform games."""
        if not self.is_filiform:
            raise ValueError("game is not filiform")
        rank = sorted(range(len(self)), key=lambda a: sum((b, a) in self.order for b in range(len(self))))
        return "".join(_LETTER[self.polarities[a]] for a in rank)

    def leq(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.order

    def to_json(self) -> dict | str:
        if self.is_filiform and all((a, b) in self.order for a in range(len(self)) for b in range(a + 1, len(self))):
            return self.word
        return {
            "moves": list(range(len(self))),
            "polarities": list(self.polarities),
            "order_pairs": sorted(map(list, self.order)),
        }

    @classmethod
    def from_json(cls, doc) -> "Game":
        if isinstance(doc, str):
            return filiform(doc)
        if "polarity_word" in doc:
            return filiform(doc["polarity_word"])
        n = len(doc["polarities"])
        if "moves" in doc and list(doc["moves"]) != list(range(n)):
            raise ValueError("moves must be numbered 0..n-1")
        return cls(tuple(doc["polarities"]), frozenset(tuple(p) for p in doc.get("order_pairs", [])))


@lru_cache(maxsize=4096)
def filiform(word: str) -> Game:
    """The game whose moves are totally ordered as in ``word`` (letters O and P)."""
    try:
        pols = tuple(_POL[c] for c in word)
    except KeyError as exc:
        raise ValueError(f"bad polarity letter {exc.args[0]!r}") from None
    n = len(pols)
    return Game(pols, frozenset((a, b) for a in range(n) for b in range(a + 1, n)))


EMPTY = Game(())


@lru_cache(maxsize=4096)
def dual(a: Game) -> Game:
    return Game(tuple(-p for p in a.polarities), a.order)


def _shift(pairs: Iterable[tuple[int, int]], k: int) -> set[tuple[int, int]]:
    return {(x + k, y + k) for x, y in pairs}


@lru_cache(maxsize=4096)
def tensor_game(a: Game, b: Game) -> Game:
    return Game(a.polarities + b.polarities, frozenset(a.order | _shift(b.order, len(a))))


@lru_cache(maxsize=4096)
def arrow(a: Game, b: Game) -> Game:
    return tensor_game(dual(a), b)


@lru_cache(maxsize=4096)
def before(a: Game, b: Game) -> Game:
    """``a ◁ b``: every move of ``a`` precedes every move of ``b``."""
    n = len(a)
    serial = {(x, n + y) for x in range(n) for y in range(len(b))}
    return Game(a.polarities + b.polarities, frozenset(a.order | _shift(b.order, n) | serial))


class CyclicStrategy:
    """A polarity-respecting dependency relation on ``dom ⊸ cod``."""

    __slots__ = ("dom", "cod", "pairs", "_arrow")

    def __init__(self, dom: Game, cod: Game, pairs: Iterable[tuple[int, int]]):
        self.dom = dom
        self.cod = cod
        self.pairs = frozenset((int(x), int(y)) for x, y in pairs)
        self._arrow = None
        pols = self.arrow_game.polarities
        for x, y in self.pairs:
            if not (0 <= x < len(pols) and 0 <= y < len(pols)):
                raise StrategyError(f"pair {(x, y)} is outside the arrow game")
            if pols[x] != O or pols[y] != P:
                raise StrategyError(f"pair {(x, y)} does not go from an Opponent to a Proponent move")

    @property
    def arrow_game(self) -> Game:
        if self._arrow is None:
            self._arrow = arrow(self.dom, self.cod)
        return self._arrow

    def _key(self):
        return (self.dom, self.cod, self.pairs)

    def __eq__(self, other):
        if not isinstance(other, CyclicStrategy):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}({self.dom.to_json()!r} -> {self.cod.to_json()!r}, {sorted(self.pairs)})"

    def side(self, x: int) -> tuple[str, int]:
        a = len(self.dom)
        return ("dom", x) if x < a else ("cod", x - a)

    def to_json(self) -> dict:
        return {
            "domain": self.dom.to_json(),
            "codomain": self.cod.to_json(),
            "pairs": [[list(self.side(x)), list(self.side(y))] for x, y in sorted(self.pairs)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, doc) -> "CyclicStrategy":
        if isinstance(doc, str):
            doc = json.loads(doc)
        dom, cod = Game.from_json(doc["domain"]), Game.from_json(doc["codomain"])
        a = len(dom)

        def glob(ref):
            side, k = ref
            if side not in ("dom", "cod"):
                raise ValueError(f"bad side {side!r}")
            return k if side == "dom" else a + k

        return cls(dom, cod, [(glob(x), glob(y)) for x, y in doc["pairs"]])


class Strategy(CyclicStrategy):
    """A cyclic strategy whose union with the game order is acyclic."""

    __slots__ = ()

    def __init__(self, dom: Game, cod: Game, pairs: Iterable[tuple[int, int]]):
        super().__init__(dom, cod, pairs)
        if not is_strategy(self):
            raise StrategyError("dependencies and game order form a cycle")


def is_strategy(c: CyclicStrategy) -> bool:
    g = c.arrow_game
    return not kernels.has_cycle(len(g), sorted(c.pairs | g.order))


def as_strategy(c: CyclicStrategy) -> Strategy:
    return c if isinstance(c, Strategy) else Strategy(c.dom, c.cod, c.pairs)


@lru_cache(maxsize=1024)
def id_strategy(a: Game) -> Strategy:
    n = len(a)
    return Strategy(a, a, [(k, n + k) if a.polarities[k] == P else (n + k, k) for k in range(n)])


def compose_strategies(sigma: CyclicStrategy, tau: CyclicStrategy) -> CyclicStrategy:
    """Transitive closure of both dependency relations, restricted to the outer games."""
    if sigma.cod != tau.dom:
        raise StrategyError("middle games differ")
    a, b, c = len(sigma.dom), len(sigma.cod), len(tau.cod)
    edges = sorted(sigma.pairs | _shift(tau.pairs, a))
    keep = list(range(a)) + list(range(a + b, a + b + c))
    pairs = [
        (x if x < a else x - b, y if y < a else y - b)
        for x, y in kernels.closure_restrict(a + b + c, edges, keep)
    ]
    return CyclicStrategy(sigma.dom, tau.cod, pairs)


def before_strategies(sigma: CyclicStrategy, tau: CyclicStrategy) -> CyclicStrategy:
    """``σ ◁ τ : A◁C → B◁D``, the disjoint union of the dependencies."""
    a, b, c = len(sigma.dom), len(sigma.cod), len(tau.dom)

    def left(x):
        return x if x < a else x + c

    def right(y):
        return a + y if y < c else a + b + y

    pairs = [(left(x), left(y)) for x, y in sigma.pairs] + [(right(x), right(y)) for x, y in tau.pairs]
    cls = Strategy if isinstance(sigma, Strategy) and isinstance(tau, Strategy) else CyclicStrategy
    return cls(before(sigma.dom, tau.dom), before(sigma.cod, tau.cod), pairs)


# -- the thirteen generators ---------------------------------------------------------

# (domain word, codomain word, dependencies as (side, index) pairs)
GENERATOR_TABLE: dict[str, tuple[str, str, tuple]] = {
    "muP": ("PP", "P", ((("dom", 0), ("cod", 0)), (("dom", 1), ("cod", 0)))),
    "muO": ("OO", "O", ((("cod", 0), ("dom", 0)), (("cod", 0), ("dom", 1)))),
    "etaP": ("", "P", ()),
    "etaO": ("", "O", ()),
    "deltaP": ("P", "PP", ((("dom", 0), ("cod", 0)), (("dom", 0), ("cod", 1)))),
    "deltaO": ("O", "OO", ((("cod", 0), ("dom", 0)), (("cod", 1), ("dom", 0)))),
    "epsP": ("P", "", ()),
    "epsO": ("O", "", ()),
    "gammaP": ("PP", "PP", ((("dom", 0), ("cod", 1)), (("dom", 1), ("cod", 0)))),
    "gammaO": ("OO", "OO", ((("cod", 1), ("dom", 0)), (("cod", 0), ("dom", 1)))),
    "etaOP": ("", "OP", ((("cod", 0), ("cod", 1)),)),
    "epsOP": ("PO", "", ((("dom", 0), ("dom", 1)),)),
    "gammaOP": ("PO", "OP", ((("dom", 0), ("cod", 1)), (("cod", 0), ("dom", 1)))),
}


def strategy_from_refs(dom: str, cod: str, refs: Iterable) -> Strategy:
    a = len(dom)
    glob = {"dom": 0, "cod": a}
    return Strategy(filiform(dom), filiform(cod), [(glob[s] + i, glob[t] + j) for (s, i), (t, j) in refs])


@lru_cache(maxsize=None)
def generator_strategy(name: str) -> Strategy:
    try:
        dom, cod, refs = GENERATOR_TABLE[name]
    except KeyError:
        raise KeyError(f"unknown generator {name!r}") from None
    return strategy_from_refs(dom, cod, refs)


class GamesModel:
    """Filiform games with ◁ as tensor, as a model of the games signature."""

    def check_signature(self, sig):
        from causal_games.theories import ModelTypeError

        for g in sig.generators:
            s = self.generator(g.name)
            if (s.dom, s.cod) != (filiform("".join(g.src)), filiform("".join(g.tgt))):
                raise ModelTypeError(f"{g.name} is interpreted with the wrong games")

    def identity(self, word):
        return id_strategy(filiform("".join(word)))

    def generator(self, name):
        return generator_strategy(name)

    def tensor(self, a, b):
        return before_strategies(a, b)

    def compose(self, a, b):
        return compose_strategies(a, b)

    def equal(self, a, b):
        return a == b


# -- sampling ------------------------------------------------------------------------


def legal_pairs(dom: Game, cod: Game) -> list[tuple[int, int]]:
    g = arrow(dom, cod)
    n = len(g)
    return [(x, y) for x in range(n) for y in range(n)
            if g.polarities[x] == O and g.polarities[y] == P and (y, x) not in g.order]


def random_strategy(rng: random.Random, dom: Game, cod: Game, density: float | None = None) -> Strategy:
    """Add legal pairs in random order, each with probability ``density``,
    skipping any that would close a cycle."""
    if density is None:
        density = rng.random()
    g = arrow(dom, cod)
    pairs: list[tuple[int, int]] = []
    candidates = legal_pairs(dom, cod)
    rng.shuffle(candidates)
    base = sorted(g.order)
    for pair in candidates:
        if rng.random() < density and not kernels.has_cycle(len(g), base + pairs + [pair]):
            pairs.append(pair)
    return Strategy(dom, cod, pairs)


def random_word(rng: random.Random, max_len: int, min_len: int = 0) -> str:
    return "".join(rng.choice("OP") for _ in range(rng.randint(min_len, max_len)))


def all_strategies(dom: Game, cod: Game) -> list[Strategy]:
    g = arrow(dom, cod)
    cands = legal_pairs(dom, cod)
    out = []
    base = sorted(g.order)
    for mask in product((0, 1), repeat=len(cands)):
        pairs = [p for p, bit in zip(cands, mask, strict=False) if bit]
        if not kernels.has_cycle(len(g), base + pairs):
            out.append(Strategy(dom, cod, pairs))
    return out


def counterexample() -> tuple[CyclicStrategy, CyclicStrategy]:
    """Two strategies on non-filiform games whose composite is cyclic.

    ``A`` has an Opponent move m1 and a Proponent move m2, unordered; ``B``
    has a Proponent move n1 below an Opponent move n2.  σ: I → A makes m2
    depend on m1, τ: A → B makes m1 depend on n2 and n1 on m2.
    """
    a = Game((O, P))
    b = Game((P, O), frozenset({(0, 1)}))
    sigma = Strategy(EMPTY, a, [(0, 1)])
    tau = Strategy(a, b, [(3, 0), (1, 2)])
    return sigma, tau
