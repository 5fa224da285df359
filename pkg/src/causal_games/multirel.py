"""Multirelations (ℕ-matrices) and relations (boolean matrices) between finite
ordinals, the interpretation of bialgebra terms, and both directions of the
presentation: canonicalization of terms and extraction from matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from causal_games import kernels
from causal_games.rewriting import (
    BIALGEBRA_SYSTEM,
    QUALITATIVE_SYSTEM,
    E,
    H,
    Letter,
    W,
    Word,
    Z,
    word_type,
)
from causal_games.sigcat import (
    Generator,
    Identity,
    Signature,
    Term,
    Tensor,
    compose_all,
    evaluate,
    slices,
    tensor_all,
    typecheck,
)
from causal_games.theories import B_SIGNATURE, ModelTypeError


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class MultiRel:
    """An m×n matrix of naturals; entry (a, b) counts the witnesses relating a to b."""

    m: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.m or any(len(row) != self.n for row in self.entries):
            raise DimensionError(f"entries do not form a {self.m}x{self.n} matrix")
        if any(v < 0 for row in self.entries for v in row):
            raise ValueError("multirelation entries are naturals")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int | None = None) -> "MultiRel":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if n is None:
            n = len(rows[0]) if rows else 0
        return cls(len(rows), n, rows)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "MultiRel":
        m, n = arr.shape
        return cls(m, n, tuple(tuple(int(v) for v in row) for row in arr))

    @classmethod
    def from_flat(cls, m: int, n: int, flat: Sequence[int]) -> "MultiRel":
        return cls(m, n, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(m)))

    @classmethod
    def identity(cls, n: int) -> "MultiRel":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int) -> "MultiRel":
        return cls(m, n, tuple((0,) * n for _ in range(m)))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.m, self.n)

    def flat(self) -> list[int]:
        return [v for row in self.entries for v in row]

    @property
    def cardinality(self) -> int:
        return sum(self.flat())

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "MultiRel":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls.from_rows(doc["entries"], doc["n"]) if doc["m"] else cls.zeros(0, doc["n"])


@dataclass(frozen=True)
class BoolRel:
    m: int
    n: int
    entries: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.m or any(len(row) != self.n for row in self.entries):
            raise DimensionError(f"entries do not form a {self.m}x{self.n} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[bool]], n: int | None = None) -> "BoolRel":
        rows = tuple(tuple(bool(v) for v in r) for r in rows)
        if n is None:
            n = len(rows[0]) if rows else 0
        return cls(len(rows), n, rows)

    @classmethod
    def identity(cls, n: int) -> "BoolRel":
        return cls(n, n, tuple(tuple(i == j for j in range(n)) for i in range(n)))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=bool).reshape(self.m, self.n)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "entries": [list(r) for r in self.entries]}


def _check_compose(r1, r2):
    if r1.n != r2.m:
        raise DimensionError(f"cannot compose {r1.m}x{r1.n} with {r2.m}x{r2.n}")


def compose(r1: MultiRel, r2: MultiRel) -> MultiRel:
    """``r2 ∘ r1``: entry (a, c) is the sum over b of r1(a, b)·r2(b, c)."""
    _check_compose(r1, r2)
    return MultiRel.from_array(r1.array() @ r2.array()) if r1.m and r2.n else MultiRel.zeros(r1.m, r2.n)


def tensor(r1: MultiRel, r2: MultiRel) -> MultiRel:
    """Block-diagonal sum."""
    out = np.zeros((r1.m + r2.m, r1.n + r2.n), dtype=np.int64)
    out[: r1.m, : r1.n] = r1.array()
    out[r1.m:, r1.n:] = r2.array()
    return MultiRel.from_array(out)


def compose_rel(r1: BoolRel, r2: BoolRel) -> BoolRel:
    _check_compose(r1, r2)
    if not (r1.m and r2.n):
        return BoolRel(r1.m, r2.n, tuple((False,) * r2.n for _ in range(r1.m)))
    prod = r1.array().astype(np.int64) @ r2.array().astype(np.int64)
    return BoolRel.from_rows(prod > 0, r2.n)


def tensor_rel(r1: BoolRel, r2: BoolRel) -> BoolRel:
    out = np.zeros((r1.m + r2.m, r1.n + r2.n), dtype=bool)
    out[: r1.m, : r1.n] = r1.array()
    out[r1.m:, r1.n:] = r2.array()
    return BoolRel.from_rows(out, r1.n + r2.n)


def quotient_to_rel(r: MultiRel) -> BoolRel:
    return BoolRel(r.m, r.n, tuple(tuple(v > 0 for v in row) for row in r.entries))


R_MU = MultiRel.from_rows([[1], [1]])
R_ETA = MultiRel.zeros(0, 1)
R_DELTA = MultiRel.from_rows([[1, 1]])
R_EPS = MultiRel.zeros(1, 0)
R_GAMMA = MultiRel.from_rows([[0, 1], [1, 0]])

GENERATOR_MATRICES = {"mu": R_MU, "eta": R_ETA, "delta": R_DELTA, "eps": R_EPS, "gamma": R_GAMMA}


class MRelModel:
    """Multirelations as a model of the bialgebra signature."""

    def check_signature(self, sig: Signature):
        for g in sig.generators:
            r = self.generator(g.name)
            if (r.m, r.n) != (len(g.src), len(g.tgt)):
                raise ModelTypeError(f"{g.name} is interpreted as a {r.m}x{r.n} matrix")

    def identity(self, word):
        return MultiRel.identity(len(word))

    def generator(self, name):
        try:
            return GENERATOR_MATRICES[name]
        except KeyError:
            raise ModelTypeError(f"no multirelation for {name!r}") from None

    def tensor(self, a, b):
        return tensor(a, b)

    def compose(self, a, b):
        return compose(a, b)

    def equal(self, a, b):
        return a == b


class RelModel(MRelModel):
    """Relations, the qualitative quotient."""

    def identity(self, word):
        return BoolRel.identity(len(word))

    def generator(self, name):
        return quotient_to_rel(super().generator(name))

    def tensor(self, a, b):
        return tensor_rel(a, b)

    def compose(self, a, b):
        return compose_rel(a, b)


class _ArrayModel:
    """MRel on bare integer arrays; skips per-step validation inside :func:`interp_B`."""

    GENERATORS = {name: r.array() for name, r in GENERATOR_MATRICES.items()}

    def identity(self, word):
        if any(x != "1" for x in word):
            raise ValueError(f"unknown object in {word!r}")
        return _eye(len(word))

    def generator(self, name):
        return self.GENERATORS[name]

    def tensor(self, a, b):
        out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
        out[: a.shape[0], : a.shape[1]] = a
        out[a.shape[0]:, a.shape[1]:] = b
        return out

    def compose(self, a, b):
        return a @ b


@lru_cache(maxsize=64)
def _eye(n: int) -> np.ndarray:
    e = np.eye(n, dtype=np.int64)
    e.setflags(write=False)
    return e


_ARRAYS = _ArrayModel()


def interp_B(t: Term) -> MultiRel:
    # array shapes already enforce the one-object typing; the typechecker only
    # runs on failure, to turn a numpy error into a readable TermTypeError
    try:
        return MultiRel.from_array(evaluate(t, _ARRAYS))
    except (ValueError, KeyError):
        typecheck(t, B_SIGNATURE)
        raise


def interp_R(t: Term) -> BoolRel:
    typecheck(t, B_SIGNATURE)
    return evaluate(t, RelModel())


# -- canonical words ---------------------------------------------------------------

_CODE_LETTER = {kernels.CODE_H: H, kernels.CODE_E: E, kernels.CODE_Z: Z}


@lru_cache(maxsize=None)
def _letter(code: int) -> Letter:
    return _CODE_LETTER[code] if code < 0 else W(code)


def letter_code(x: Letter) -> int:
    if x.kind == "W":
        return x.index
    return {"H": kernels.CODE_H, "E": kernels.CODE_E, "Z": kernels.CODE_Z}[x.kind]


def matrix_to_canon(r: MultiRel) -> Word:
    """Rows in order; inside a row, R(i, j) copies of W_j for j descending, then E;
    finally one H per column and Z."""
    return tuple(_letter(c) for c in kernels.mrel_encode(r.flat(), r.m, r.n))


def word_to_matrix(word: Sequence[Letter]) -> MultiRel:
    """Letter semantics: E adds a row, H a column, W_i one witness in the current
    row at column i of the argument."""
    word_type(word)
    m, n, flat = kernels.mrel_decode([letter_code(x) for x in word])
    return MultiRel.from_flat(m, n, flat)


def word_to_rel(word: Sequence[Letter]) -> BoolRel:
    return quotient_to_rel(word_to_matrix(word))


def is_canonical_B(word: Sequence[Letter]) -> bool:
    try:
        word_type(word)
    except ValueError:
        return False
    return BIALGEBRA_SYSTEM.is_normal(word)


def is_canonical_R(word: Sequence[Letter]) -> bool:
    try:
        word_type(word)
    except ValueError:
        return False
    return QUALITATIVE_SYSTEM.is_normal(word)


def _id(n: int) -> Term:
    return Identity(("1",) * n)


@lru_cache(maxsize=None)
def stairs(i: int) -> Term:
    """γ_i : i+1 → i+1, carrying the first wire to position i."""
    if i == 0:
        return _id(1)
    return compose_all([tensor_all([Generator("gamma"), _id(i - 1)]), Tensor(_id(1), stairs(i - 1))])


def canon_to_term_B(word: Sequence[Letter]) -> Term:
    """Expand a precanonical word into a bialgebra term, innermost letter first."""
    word_type(word)
    return _suffix_term(tuple(word[:-1]))[0]


@lru_cache(maxsize=1 << 16)
def _suffix_term(word: Word) -> tuple[Term, int, int]:
    # words share long suffixes, and the term of a word extends the term of its tail
    if not word:
        return _id(0), 0, 0
    phi, m, n = _suffix_term(word[1:])
    x = word[0]
    if x.kind == "H":
        return tensor_all([Generator("eta"), phi]), m, n + 1
    if x.kind == "E":
        return tensor_all([Generator("eps"), phi]), m + 1, n
    i = x.index
    return compose_all([
        tensor_all([Generator("delta"), _id(m - 1)]),
        tensor_all([_id(1), phi]),
        tensor_all([stairs(i), _id(n - i)]),
        tensor_all([_id(i), Generator("mu"), _id(n - 1 - i)]),
    ]), m, n


_ARITY = {"mu": (2, 1), "eta": (0, 1), "delta": (1, 2), "eps": (1, 0), "gamma": (2, 2)}


def apply_generator(gen: str, m1: int, psi: Sequence[Letter]) -> Word:
    """A precanonical word for ``(m1 ⊗ gen ⊗ m2) ∘ psi``.

    Walks ``psi`` from the outside in, renumbering W letters across the
    window ``[m1, m1 + s)`` touched by the generator; at the H letter that
    owns the first wire of the window the unit, counit and symmetry laws
    absorb the generator.
    """
    out: list[Letter] = []
    k = 0
    while True:
        x = psi[k]
        s, t = _ARITY[gen]
        if x.kind == "H":
            if m1 > 0:
                out.append(x)
                m1 -= 1
            elif gen in ("mu", "eps"):
                return tuple(out) + tuple(psi[k + 1:])
            elif gen in ("eta", "delta"):
                return tuple(out) + (H, H) + tuple(psi[k + 1:])
            else:
                # the fresh unit wire is swapped one step down
                gen, m1 = "eta", 1
        elif x.kind == "E":
            out.append(x)
        elif x.kind == "W":
            i = x.index
            if i < m1:
                out.append(x)
            elif i >= m1 + s:
                out.append(W(i - s + t))
            elif gen == "mu":
                out.append(W(m1))
            elif gen == "delta":
                out += [W(m1), W(m1 + 1)]
            elif gen == "gamma":
                out.append(W(2 * m1 + 1 - i))
            # eps erases the witness
        else:
            if gen != "eta" or m1 != 0:
                raise ValueError(f"{gen} does not fit the codomain")
            return tuple(out) + (H, Z)
        k += 1


def identity_word(m: int) -> Word:
    return (W(0), E, H) * m + (Z,)


def precanonical_B(t: Term) -> Word:
    """A precanonical word equivalent to ``t``, by peeling slices."""
    src, _ = typecheck(t, B_SIGNATURE)
    psi = identity_word(len(src))
    for sl in slices(t, B_SIGNATURE):
        psi = apply_generator(sl.generator, sl.left, psi)
    return psi


def canonicalize_B(t: Term) -> Word:
    return BIALGEBRA_SYSTEM.normalize(precanonical_B(t))


def canonicalize_R(t: Term) -> Word:
    return QUALITATIVE_SYSTEM.normalize(canonicalize_B(t))


def rel_to_canon(r: BoolRel) -> Word:
    return matrix_to_canon(MultiRel(r.m, r.n, tuple(tuple(int(v) for v in row) for row in r.entries)))

