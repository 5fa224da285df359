"""Axiom sets: decidable membership on pairs of atomic propositions."""

from __future__ import annotations

from functools import lru_cache

from causal_games.logic.syntax import BOT, TOP, Expr, Fn, parse_sexp, sexp_to_expr


class AxiomSet:
    """Base class; subclasses decide ``member(p, q)``."""

    name = "custom"

    def member(self, p: Expr, q: Expr) -> bool:
        raise NotImplementedError

    def __contains__(self, pair) -> bool:
        return self.member(*pair)


class LatticeAxioms(AxiomSet):
    """The least reflexive, transitive set containing (P, ⊤) and (⊥, P) and
    closed under the four introduction rules for formal ∧ and ∨.

    Membership is the order of the free bounded lattice on the remaining
    expressions, decided by Whitman's syntax-directed procedure; transitivity
    is admissible there, so no search over intermediate propositions is
    needed.  Results are memoized in a thread-safe cache.
    """

    name = "default"

    def member(self, p: Expr, q: Expr) -> bool:
        return _leq(p, q)


def _is(e: Expr, name: str) -> bool:
    return isinstance(e, Fn) and e.name == name and len(e.args) == 2


@lru_cache(maxsize=65536)
def _leq(p: Expr, q: Expr) -> bool:
    if p == q or q == TOP or p == BOT:
        return True
    if _is(q, "and") and _leq(p, q.args[0]) and _leq(p, q.args[1]):
        return True
    if _is(p, "or") and _leq(p.args[0], q) and _leq(p.args[1], q):
        return True
    if _is(q, "or") and (_leq(p, q.args[0]) or _leq(p, q.args[1])):
        return True
    if _is(p, "and") and (_leq(p.args[0], q) or _leq(p.args[1], q)):
        return True
    return False


class EqualityAxioms(AxiomSet):
    """Reflexivity, (P, ⊤), (⊤, t = t) and symmetry of equality, for the
    cut-elimination example."""

    name = "equality"

    def member(self, p: Expr, q: Expr) -> bool:
        if p == q or q == TOP:
            return True
        if isinstance(q, Fn) and q.name == "=" and len(q.args) == 2:
            if p == TOP and q.args[0] == q.args[1]:
                return True
            if isinstance(p, Fn) and p.name == "=" and p.args == q.args[::-1]:
                return True
        return False


class AllAxioms(AxiomSet):
    """Every pair; incoherent but handy for shape-only examples."""

    name = "all"

    def member(self, p, q):
        return True


def default_axiom_set() -> AxiomSet:
    return LatticeAxioms()


AXIOM_SETS = {"default": LatticeAxioms, "equality": EqualityAxioms, "all": AllAxioms}


def parse_pair(text: str) -> tuple[Expr, Expr]:
    """``(P, Q)`` or ``(P Q)`` with s-expression propositions."""
    s = parse_sexp(text)
    if not isinstance(s, list):
        raise ValueError("expected a parenthesized pair")
    items = [x for x in s if x != ","]
    if len(items) != 2:
        raise ValueError("expected exactly two propositions")
    return sexp_to_expr(items[0]), sexp_to_expr(items[1])
