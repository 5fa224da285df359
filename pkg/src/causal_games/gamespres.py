"""Canonical words for the games theory: their strategy semantics, extraction
from strategies, expansion into terms, and the normalizer.

Letter semantics, reading a word from the outside in:

* ``Z`` is the empty strategy ``I -> I``;
* ``H^X`` / ``E^X`` prepend an isolated codomain / domain move of polarity X;
* ``W_i`` links the first domain move to codomain move ``i``;
* ``A_i`` links the first domain move (a P) to domain move ``i`` (an O);
* ``B_i`` links the first codomain move (an O) to codomain move ``i`` (a P).

Indices count from the head of the argument's interface, so ``W0 EP HP Z``
is the identity on ``P``.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from causal_games.games import (
    O,
    P,
    GamesModel,
    Strategy,
    StrategyError,
    as_strategy,
    filiform,
    is_strategy,
    CyclicStrategy,
)
from causal_games.rewriting import (
    GAMES_SYSTEM,
    Letter,
    Word,
    WordTypeError,
    Z,
    word_type,
)
from causal_games.sigcat import Slice, Term, evaluate, slices_to_term, typecheck
from causal_games.theories import G_SIGNATURE

_POL = {"O": O, "P": P}


def games_rules():
    return GAMES_SYSTEM.rules


def _typed(word: Sequence[Letter]) -> tuple[str, str]:
    dom, cod = word_type(word)
    if None in dom or None in cod:
        raise WordTypeError("games words need polarized E and H letters")
    return "".join(dom), "".join(cod)


def word_links(word: Sequence[Letter]) -> tuple[str, str, list[tuple[int, int]]]:
    """Domain, codomain and arrow-game dependency pairs of a precanonical word."""
    dom, cod = _typed(word)
    a = len(dom)
    pairs = []
    es = hs = 0
    for pos, x in enumerate(word):
        if x.kind == "E":
            es += 1
        elif x.kind == "H":
            hs += 1
        elif x.kind == "W":
            d, c = es, hs + x.index
            if dom[d] != cod[c]:
                raise StrategyError(f"{x} at position {pos} links moves of different polarities")
            pairs.append((d, a + c) if dom[d] == "P" else (a + c, d))
        elif x.kind == "A":
            d, e = es, es + x.index
            if (dom[d], dom[e]) != ("P", "O"):
                raise StrategyError(f"{x} at position {pos} needs a P head and an O target")
            pairs.append((d, e))
        elif x.kind == "B":
            c, e = hs, hs + x.index
            if (cod[c], cod[e]) != ("O", "P"):
                raise StrategyError(f"{x} at position {pos} needs an O head and a P target")
            pairs.append((a + c, a + e))
    return dom, cod, pairs


def canon_to_strategy(word: Sequence[Letter]) -> Strategy:
    dom, cod, pairs = word_links(word)
    return Strategy(filiform(dom), filiform(cod), pairs)


def _extract(dom: list[str], cod: list[str], links: set[tuple[int, int]]) -> list[Letter]:
    # moves are ("d", k) / ("c", k); links are unordered pairs of moves stored sorted
    out: list[Letter] = []

    def drop(side: str):
        nonlocal links
        links = {tuple(sorted(_dec(m, side) for m in pair)) for pair in links}

    while dom or cod:
        if dom:
            head = ("d", 0)
            mates = sorted(m for pair in links if head in pair for m in pair if m != head)
            inner = [m for m in mates if m[0] == "d"]
            if inner:
                out.append(Letter("A", None, inner[0][1]))
                links.discard(tuple(sorted((head, inner[0]))))
            elif mates:
                out.append(Letter("W", None, mates[0][1]))
                links.discard(tuple(sorted((head, mates[0]))))
            else:
                out.append(Letter("E", dom.pop(0)))
                drop("d")
        else:
            head = ("c", 0)
            mates = sorted(m for pair in links if head in pair for m in pair if m != head)
            if mates:
                out.append(Letter("B", None, mates[0][1]))
                links.discard(tuple(sorted((head, mates[0]))))
            else:
                out.append(Letter("H", cod.pop(0)))
                drop("c")
    return out + [Z]


def _dec(m: tuple[str, int], side: str) -> tuple[str, int]:
    return (m[0], m[1] - 1) if m[0] == side else m


def strategy_to_canon(sigma: CyclicStrategy) -> Word:
    """The canonical word of a strategy between filiform games.

    Follows the extraction case table (peel the first domain move, preferring
    its A links, then its W links, then the first codomain move), and puts
    the result in normal form.
    """
    if not (sigma.dom.is_filiform and sigma.cod.is_filiform):
        raise StrategyError("extraction needs filiform games")
    dom, cod = list(sigma.dom.word), list(sigma.cod.word)
    # filiform games built by filiform() number moves in order; others are renumbered
    rank_d = _ranks(sigma.dom)
    rank_c = _ranks(sigma.cod)
    a = len(dom)

    def move(x):
        return ("d", rank_d[x]) if x < a else ("c", rank_c[x - a])

    links = {tuple(sorted((move(x), move(y)))) for x, y in sigma.pairs}
    return GAMES_SYSTEM.normalize(_extract(dom, cod, links))


def _ranks(g) -> list[int]:
    n = len(g)
    return [sum((b, a) in g.order for b in range(n)) for a in range(n)]


def normalize_G(t: Term) -> Word:
    typecheck(t, G_SIGNATURE)
    return strategy_to_canon(as_strategy(evaluate(t, GamesModel())))


def validate_canon_G(word: Sequence[Letter]) -> bool:
    """Typed, polarity-legal, normal, and of the block shape ``(W* A* E)* (B* H)* Z``
    with strictly decreasing indices inside every run of one letter family."""
    try:
        word_links(word)
    except (WordTypeError, StrategyError):
        return False
    if not GAMES_SYSTEM.is_normal(word):
        return False
    phase = 0      # 0: domain blocks, 1: codomain blocks
    rank = {"W": 0, "A": 1, "E": 2, "B": 0, "H": 1}
    last = None
    for x in word[:-1]:
        if x.kind in "WAE" and phase == 1:
            return False
        if x.kind in "BH":
            phase = 1
        if last is not None and last.kind != "E" and last.kind != "H":
            if rank[x.kind] < rank[last.kind]:
                return False
            if x.kind == last.kind and x.index >= last.index:
                return False
        last = x
    return True


# -- expansion into terms ---------------------------------------------------------

_CROSS = {("O", "O"): "gammaO", ("P", "P"): "gammaP", ("P", "O"): "gammaOP"}


class _Wires:
    """A row of tagged wires; every operation records a whiskered generator."""

    def __init__(self, word: str):
        self.pols = list(word)
        self.tags: list = [("dom", k) for k in range(len(word))]
        self.log: list[Slice] = []

    def _emit(self, pos: int, name: str, width: int):
        self.log.append(Slice(pos, name, len(self.pols) - pos - width))

    def split(self, pos: int, tag_left, tag_right):
        x = self.pols[pos]
        self._emit(pos, "delta" + x, 1)
        self.pols[pos:pos + 1] = [x, x]
        self.tags[pos:pos + 1] = [tag_left, tag_right]

    def erase(self, pos: int):
        self._emit(pos, "eps" + self.pols[pos], 1)
        del self.pols[pos], self.tags[pos]

    def swap(self, pos: int):
        pair = (self.pols[pos], self.pols[pos + 1])
        if pair not in _CROSS:
            raise AssertionError("an O wire cannot cross over a P wire")
        self._emit(pos, _CROSS[pair], 2)
        self.pols[pos], self.pols[pos + 1] = self.pols[pos + 1], self.pols[pos]
        self.tags[pos], self.tags[pos + 1] = self.tags[pos + 1], self.tags[pos]

    def cap(self, pos: int):
        assert self.pols[pos:pos + 2] == ["P", "O"]
        self._emit(pos, "epsOP", 2)
        del self.pols[pos:pos + 2], self.tags[pos:pos + 2]

    def cup(self, pos: int, tag_o, tag_p):
        self._emit(pos, "etaOP", 0)
        self.pols[pos:pos] = ["O", "P"]
        self.tags[pos:pos] = [tag_o, tag_p]

    def merge(self, pos: int, tag):
        x = self.pols[pos]
        self._emit(pos, "mu" + x, 2)
        self.pols[pos:pos + 2] = [x]
        self.tags[pos:pos + 2] = [tag]

    def unit(self, pos: int, x: str, tag):
        self._emit(pos, "eta" + x, 0)
        self.pols.insert(pos, x)
        self.tags.insert(pos, tag)


def strategy_to_term(sigma: Strategy) -> Term:
    """A games term for a strategy between filiform games, by routing wires.

    Each domain move is copied once per link (or erased), A links are closed
    with the counit of the duality after carrying the P copy rightwards,
    the remaining copies are sorted by codomain target, every B link opens a
    unit of the duality, and each codomain group is merged (or created).
    Acyclicity guarantees that no O wire ever has to cross a P wire to its
    right, the one crossing missing from the signature.
    """
    dom, cod = sigma.dom.word, sigma.cod.word
    a = len(dom)
    wires = _Wires(dom)
    w_links: dict[int, list[int]] = {k: [] for k in range(a)}
    a_links: list[tuple[int, int]] = []
    b_links: list[tuple[int, int]] = []
    for x, y in sigma.pairs:
        if x < a and y < a:
            a_links.append((x, y))
        elif x >= a and y >= a:
            b_links.append((x - a, y - a))
        else:
            d, c = (x, y - a) if x < a else (y, x - a)
            w_links[d].append(c)
    a_links.sort()
    b_links.sort()

    for k in range(a):
        copies = [("AO", l, j) for l, j in a_links if j == k] + [("AP", l, j) for l, j in a_links if l == k]
        copies += [("W", c) for c in sorted(w_links[k])]
        pos = wires.tags.index(("dom", k))
        if not copies:
            wires.erase(pos)
            continue
        wires.tags[pos] = copies[0]
        for n, tag in enumerate(copies[1:], start=1):
            wires.split(pos + n - 1, wires.tags[pos + n - 1], tag)

    for l, j in a_links:
        p = wires.tags.index(("AP", l, j))
        q = wires.tags.index(("AO", l, j))
        while p + 1 < q:
            wires.swap(p)
            p += 1
        wires.cap(p)

    def group(tag):
        return tag[1]

    changed = True
    while changed:
        changed = False
        for i in range(len(wires.tags) - 1):
            if group(wires.tags[i]) > group(wires.tags[i + 1]):
                wires.swap(i)
                changed = True

    for k, l in b_links:
        pos = sum(1 for t in wires.tags if group(t) <= k)
        wires.cup(pos, ("B", k), ("B", l))
        p = pos + 1
        while p + 1 < len(wires.tags) and group(wires.tags[p + 1]) <= l:
            wires.swap(p)
            p += 1

    for c, x in enumerate(cod):
        pos = c
        size = sum(1 for t in wires.tags if group(t) == c)
        if size == 0:
            wires.unit(pos, x, ("cod", c))
        for _ in range(size - 1):
            wires.merge(pos, ("W", c))
        wires.tags[pos] = ("cod", c)

    assert "".join(wires.pols) == cod
    return slices_to_term(wires.log, G_SIGNATURE, tuple(dom))


def canon_to_term_G(word: Sequence[Letter]) -> Term:
    return strategy_to_term(canon_to_strategy(word))


# -- enumeration ---------------------------------------------------------------------


def _prepend_options(dom: str, cod: str, index_bound: int) -> Iterator[tuple[Letter, str, str]]:
    for x in "OP":
        yield Letter("E", x), x + dom, cod
        yield Letter("H", x), dom, x + cod
    if dom:
        for i in range(min(len(cod), index_bound)):
            if cod[i] == dom[0]:
                yield Letter("W", None, i), dom, cod
        if dom[0] == "P":
            for i in range(1, min(len(dom), index_bound)):
                if dom[i] == "O":
                    yield Letter("A", None, i), dom, cod
    if cod and cod[0] == "O":
        for i in range(1, min(len(cod), index_bound)):
            if cod[i] == "P":
                yield Letter("B", None, i), dom, cod


def enumerate_canonical(max_length: int, index_bound: int | None = None) -> Iterator[Word]:
    """Every canonical word with at most ``max_length`` letters (Z included)
    whose semantics is acyclic.

    Words grow by prepending letters; a word is normal exactly when no two
    adjacent letters form a redex, and a cyclic suffix stays cyclic.
    """
    if index_bound is None:
        index_bound = max_length
    rules = GAMES_SYSTEM

    def grow(word: Word, dom: str, cod: str):
        yield word
        if len(word) >= max_length:
            return
        for x, d2, c2 in _prepend_options(dom, cod, index_bound):
            w2 = (x,) + word
            if rules.step(w2[:2]) is not None:
                continue
            dd, cc, pairs = word_links(w2)
            if not is_strategy(CyclicStrategy(filiform(dd), filiform(cc), pairs)):
                continue
            yield from grow(w2, d2, c2)

    yield from grow((Z,), "", "")
