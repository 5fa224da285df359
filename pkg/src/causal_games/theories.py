"""The catalog of monoidal equational theories and a generic model checker.

Theories are data: a :class:`~causal_games.sigcat.Signature` plus relations
written in the term DSL.  The one-object theories use the object ``1`` so
that ``id(n)`` means n wires.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

from causal_games.sigcat import (
    Signature,
    Term,
    TermTypeError,
    evaluate,
    parse_term,
    print_term,
    typecheck,
)


@dataclass(frozen=True)
class Relation:
    id: str
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class EquationalTheory:
    name: str
    signature: Signature
    relations: tuple[Relation, ...]

    def __post_init__(self):
        for r in self.relations:
            tl = typecheck(r.lhs, self.signature)
            tr = typecheck(r.rhs, self.signature)
            if tl != tr:
                raise TermTypeError(f"relation {r.id}: sides have types {tl} and {tr}")

    def relation(self, rid: str) -> Relation:
        for r in self.relations:
            if r.id == rid:
                return r
        raise KeyError(rid)

    def to_json(self) -> dict:
        sig = self.signature
        return {
            "name": self.name,
            "signature": sig.to_json(),
            "relations": [
                {"id": r.id, "lhs": print_term(r.lhs, sig), "rhs": print_term(r.rhs, sig)}
                for r in self.relations
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _theory(name: str, sig: Signature, rels: Iterable[tuple[str, str, str]]) -> EquationalTheory:
    return EquationalTheory(
        name, sig, tuple(Relation(rid, parse_term(l, sig), parse_term(r, sig)) for rid, l, r in rels)
    )


# -- signatures ----------------------------------------------------------------

M_SIGNATURE = Signature.build(["1"], [("mu", "11", "1"), ("eta", "", "1")])

B_SIGNATURE = Signature.build(
    ["1"],
    [
        ("mu", "11", "1"),
        ("eta", "", "1"),
        ("delta", "1", "11"),
        ("eps", "1", ""),
        ("gamma", "11", "11"),
    ],
)

D_SIGNATURE = Signature.build(["L", "R"], [("eta", "", "RL"), ("eps", "LR", "")])

G_SIGNATURE = Signature.build(
    ["O", "P"],
    [
        ("muO", "OO", "O"),
        ("muP", "PP", "P"),
        ("etaO", "", "O"),
        ("etaP", "", "P"),
        ("deltaO", "O", "OO"),
        ("deltaP", "P", "PP"),
        ("epsO", "O", ""),
        ("epsP", "P", ""),
        ("gammaO", "OO", "OO"),
        ("gammaP", "PP", "PP"),
        ("etaOP", "", "OP"),
        ("epsOP", "PO", ""),
        ("gammaOP", "PO", "OP"),
    ],
)


# -- relation templates --------------------------------------------------------

MONOID = [
    ("assoc", "(mu * id(1)) ; mu", "(id(1) * mu) ; mu"),
    ("unit-left", "(eta * id(1)) ; mu", "id(1)"),
    ("unit-right", "(id(1) * eta) ; mu", "id(1)"),
]

SYMMETRY = [
    ("yang-baxter",
     "(gamma * id(1)) ; (id(1) * gamma) ; (gamma * id(1))",
     "(id(1) * gamma) ; (gamma * id(1)) ; (id(1) * gamma)"),
    ("involutive", "gamma ; gamma", "id(2)"),
]

COMMUTATIVE_MONOID = MONOID + [
    ("mu-natural-left", "(id(1) * gamma) ; (gamma * id(1)) ; (id(1) * mu)", "(mu * id(1)) ; gamma"),
    ("mu-natural-right", "(gamma * id(1)) ; (id(1) * gamma) ; (mu * id(1))", "(id(1) * mu) ; gamma"),
    ("eta-natural-left", "(eta * id(1)) ; gamma", "id(1) * eta"),
    ("eta-natural-right", "(id(1) * eta) ; gamma", "eta * id(1)"),
    ("commutative", "gamma ; mu", "mu"),
]

COCOMMUTATIVE_COMONOID = [
    ("coassoc", "delta ; (delta * id(1))", "delta ; (id(1) * delta)"),
    ("counit-left", "delta ; (eps * id(1))", "id(1)"),
    ("counit-right", "delta ; (id(1) * eps)", "id(1)"),
    ("delta-natural-left", "gamma ; (delta * id(1))", "(id(1) * delta) ; (gamma * id(1)) ; (id(1) * gamma)"),
    ("delta-natural-right", "gamma ; (id(1) * delta)", "(delta * id(1)) ; (id(1) * gamma) ; (gamma * id(1))"),
    ("eps-natural-left", "gamma ; (eps * id(1))", "id(1) * eps"),
    ("eps-natural-right", "gamma ; (id(1) * eps)", "eps * id(1)"),
    ("cocommutative", "delta ; gamma", "delta"),
]

BIALGEBRA = [
    ("mu-delta", "mu ; delta", "(delta * delta) ; (id(1) * gamma * id(1)) ; (mu * mu)"),
    ("mu-eps", "mu ; eps", "eps * eps"),
    ("eta-delta", "eta ; delta", "eta * eta"),
    ("eta-eps", "eta ; eps", "id(0)"),
]

QUALITATIVE = [("qualitative", "delta ; mu", "id(1)")]

B_RELATIONS = SYMMETRY + COMMUTATIVE_MONOID + COCOMMUTATIVE_COMONOID + BIALGEBRA
R_RELATIONS = B_RELATIONS + QUALITATIVE


def polarize(text: str, x: str) -> str:
    """Instantiate a one-object template at the object ``x`` of the games signature."""
    text = re.sub(r"\bid\((\d+)\)", lambda m: f"id({x * int(m.group(1))})", text)
    return re.sub(r"\b(mu|eta|delta|eps|gamma)\b", lambda m: m.group(1) + x, text)


def _cups(a: int) -> str:
    # nested units I -> O^a P^a
    out = "etaOP" if a else "id()"
    for k in range(1, a):
        out = f"({out}) ; (id({'O' * k}) * etaOP * id({'P' * k}))"
    return out


def _caps(b: int) -> str:
    # nested counits P^b O^b -> I
    out = "epsOP" if b else "id()"
    for k in range(1, b):
        out = f"(id({'P' * k}) * epsOP * id({'O' * k})) ; ({out})"
    return out


def mate(f: str, a: int, b: int) -> str:
    """The mate P^b -> P^a of a morphism f: O^a -> O^b."""
    pb, pa = "P" * b, "P" * a
    return (f"(id({pb}) * ({_cups(a)})) ; (id({pb}) * {f} * id({pa})) ; "
            f"(({_caps(b)}) * id({pa}))")


ZIGZAGS_G = [
    ("zigzag-P", "(id(P) * etaOP) ; (epsOP * id(P))", "id(P)"),
    ("zigzag-O", "(etaOP * id(O)) ; (id(O) * epsOP)", "id(O)"),
]

DUALITY_G = [
    ("dual-mu", "muP", mate("deltaO", 1, 2)),
    ("dual-delta", "deltaP", mate("muO", 2, 1)),
    ("dual-eta", "etaP", "etaOP ; (epsO * id(P))"),
    ("dual-eps", "epsP", "(id(P) * etaO) ; epsOP"),
    ("dual-gamma", "gammaP", mate("gammaO", 2, 2)),
    ("dual-gamma-OP", "gammaOP", "(id(PO) * etaOP) ; (id(P) * gammaO * id(P)) ; (epsOP * id(OP))"),
]


def _g_relations() -> list[tuple[str, str, str]]:
    rels = [(f"O-{rid}", polarize(l, "O"), polarize(r, "O")) for rid, l, r in R_RELATIONS]
    return rels + ZIGZAGS_G + DUALITY_G


_CROSS = {("O", "O"): "gammaO", ("P", "P"): "gammaP", ("P", "O"): "gammaOP"}


def _yang_baxter(x: str, y: str, z: str) -> tuple[str, str, str]:
    c = _CROSS
    lhs = f"({c[x, y]} * id({z})) ; (id({y}) * {c[x, z]}) ; ({c[y, z]} * id({x}))"
    rhs = f"(id({x}) * {c[y, z]}) ; ({c[x, z]} * id({y})) ; (id({z}) * {c[x, y]})"
    return f"yang-baxter-{x}{y}{z}", lhs, rhs


def derived_g_relations() -> list[tuple[str, str, str]]:
    """Consequences of the games axioms, kept as regression checks rather than axioms."""
    rels = [(f"P-{rid}", polarize(l, "P"), polarize(r, "P")) for rid, l, r in R_RELATIONS]
    rels += [_yang_baxter(*w) for w in ("OOO", "POO", "PPO", "PPP")]
    rels += [
        ("muP-natural", "(muP * id(O)) ; gammaOP", "(id(P) * gammaOP) ; (gammaOP * id(P)) ; (id(O) * muP)"),
        ("muO-natural", "(id(P) * muO) ; gammaOP", "(gammaOP * id(O)) ; (id(O) * gammaOP) ; (muO * id(P))"),
        ("deltaP-natural", "(deltaP * id(O)) ; (id(P) * gammaOP) ; (gammaOP * id(P))", "gammaOP ; (id(O) * deltaP)"),
        ("deltaO-natural", "(id(P) * deltaO) ; (gammaOP * id(O)) ; (id(O) * gammaOP)", "gammaOP ; (deltaO * id(P))"),
        ("etaP-natural", "(etaP * id(O)) ; gammaOP", "id(O) * etaP"),
        ("etaO-natural", "(id(P) * etaO) ; gammaOP", "etaO * id(P)"),
        ("epsP-natural", "gammaOP ; (id(O) * epsP)", "epsP * id(O)"),
        ("epsO-natural", "gammaOP ; (epsO * id(P))", "id(P) * epsO"),
        ("slide-cap-O", "epsOP * id(O)", "(id(P) * gammaO) ; (gammaOP * id(O)) ; (id(O) * epsOP)"),
        ("slide-cap-P", "id(P) * epsOP", "(gammaP * id(O)) ; (id(P) * gammaOP) ; (epsOP * id(P))"),
        ("slide-cup-O", "id(O) * etaOP", "(etaOP * id(O)) ; (id(O) * gammaOP) ; (gammaO * id(P))"),
        ("slide-cup-P", "etaOP * id(P)", "(id(P) * etaOP) ; (gammaOP * id(P)) ; (id(O) * gammaP)"),
    ]
    return rels


THEORY_NAMES = ("M", "B", "R", "D", "G")


def builtin_theory(name: str) -> EquationalTheory:
    if name == "M":
        return _theory("M", M_SIGNATURE, MONOID)
    if name == "B":
        return _theory("B", B_SIGNATURE, B_RELATIONS)
    if name == "R":
        return _theory("R", B_SIGNATURE, R_RELATIONS)
    if name == "D":
        return _theory("D", D_SIGNATURE, [
            ("zigzag-L", "(id(L) * eta) ; (eps * id(L))", "id(L)"),
            ("zigzag-R", "(eta * id(R)) ; (id(R) * eps)", "id(R)"),
        ])
    if name == "G":
        return _theory("G", G_SIGNATURE, _g_relations())
    raise KeyError(f"unknown theory {name!r}; expected one of {', '.join(THEORY_NAMES)}")


def derived_g_theory() -> EquationalTheory:
    return _theory("G-derived", G_SIGNATURE, derived_g_relations())


# -- model checking --------------------------------------------------------------


class ModelTypeError(TypeError):
    pass


@dataclass
class ModelReport:
    theory: str
    results: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def failures(self) -> list[str]:
        return [rid for rid, ok in self.results if not ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        lines = [f"{rid}: {'pass' if ok else 'FAIL'}" for rid, ok in self.results]
        lines.append(f"{self.theory}: {len(self.results) - len(self.failures)}/{len(self.results)} relations hold")
        return "\n".join(lines)


def check_model(th: EquationalTheory, model) -> ModelReport:
    """Evaluate both sides of every relation of ``th`` in ``model``.

    ``model`` follows the protocol of :func:`~causal_games.sigcat.evaluate`
    plus ``equal(a, b)``; when it also has ``check_signature`` that is
    called first and should raise on a generator of the wrong type.
    """
    checker = getattr(model, "check_signature", None)
    if checker is not None:
        checker(th.signature)
    report = ModelReport(th.name)
    for r in th.relations:
        report.results.append((r.id, bool(model.equal(evaluate(r.lhs, model), evaluate(r.rhs, model)))))
    return report


class Renamed:
    """View a model under renamed objects and generators."""

    def __init__(self, model, objects: dict[str, str], generators: dict[str, str]):
        self.model = model
        self.objects = objects
        self.generators = generators

    def identity(self, word):
        return self.model.identity(tuple(self.objects.get(x, x) for x in word))

    def generator(self, name):
        return self.model.generator(self.generators.get(name, name))

    def tensor(self, a, b):
        return self.model.tensor(a, b)

    def compose(self, a, b):
        return self.model.compose(a, b)

    def equal(self, a, b):
        return self.model.equal(a, b)


# -- the simplicial category: monotone maps between finite ordinals ---------------


@dataclass(frozen=True)
class Monotone:
    dom: int
    cod: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.dom or any(not 0 <= v < self.cod for v in self.image):
            raise ValueError("not a map between the given ordinals")
        if any(a > b for a, b in zip(self.image, self.image[1:], strict=False)):
            raise ValueError("map is not monotone")


class SimplexModel:
    """Δ with ordinal sum; the monoid is the unique maps 2 → 1 and 0 → 1."""

    GENERATORS = {"mu": Monotone(2, 1, (0, 0)), "eta": Monotone(0, 1, ())}

    def check_signature(self, sig: Signature):
        for g in sig.generators:
            v = self.generator(g.name)
            if (v.dom, v.cod) != (len(g.src), len(g.tgt)):
                raise ModelTypeError(f"{g.name} is interpreted with the wrong type")

    def identity(self, word):
        return Monotone(len(word), len(word), tuple(range(len(word))))

    def generator(self, name):
        try:
            return self.GENERATORS[name]
        except KeyError:
            raise ModelTypeError(f"no interpretation for {name!r}") from None

    def tensor(self, f, g):
        return Monotone(f.dom + g.dom, f.cod + g.cod, f.image + tuple(v + f.cod for v in g.image))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise ModelTypeError("ordinal mismatch")
        return Monotone(f.dom, g.cod, tuple(g.image[v] for v in f.image))

    def equal(self, f, g):
        return f == g
