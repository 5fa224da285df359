import itertools
import random
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from oracles import mrel_compose, mrel_tensor  # noqa: E402

from causal_games.multirel import (  # noqa: E402
    BoolRel,
    DimensionError,
    MultiRel,
    apply_generator,
    canon_to_term_B,
    canonicalize_B,
    canonicalize_R,
    compose,
    identity_word,
    interp_B,
    interp_R,
    is_canonical_B,
    is_canonical_R,
    matrix_to_canon,
    precanonical_B,
    quotient_to_rel,
    rel_to_canon,
    stairs,
    tensor,
    word_to_matrix,
    word_to_rel,
)
from causal_games.rewriting import format_word, word_type  # noqa: E402
from causal_games.sigcat import Compose, Generator, TermTypeError, parse_term, random_term  # noqa: E402
from causal_games.theories import B_SIGNATURE  # noqa: E402

matrices = st.integers(0, 3).flatmap(
    lambda m: st.integers(0, 3).flatmap(
        lambda n: st.lists(st.integers(0, 3), min_size=m * n, max_size=m * n).map(
            lambda flat: MultiRel.from_flat(m, n, flat)
        )
    )
)


def term(text):
    return parse_term(text, B_SIGNATURE)


def test_generator_matrices():
    assert interp_B(term("mu")).entries == ((1,), (1,))
    assert interp_B(term("delta")).entries == ((1, 1),)
    assert interp_B(term("gamma")).entries == ((0, 1), (1, 0))
    assert (interp_B(term("eta")).m, interp_B(term("eta")).n) == (0, 1)


def test_worked_example():
    t = term("((delta * eps) ; (id(1) * delta) ; (mu * eta * id(1))) * id(1)")
    assert [list(r) for r in interp_B(t).entries] == [[2, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]]
    assert format_word(canonicalize_B(t)) == "W2 W0 W0 E E W3 E H H H H Z"


def test_dimension_errors():
    with pytest.raises(DimensionError):
        compose(MultiRel.identity(2), MultiRel.identity(3))
    with pytest.raises(DimensionError):
        MultiRel(2, 2, ((1, 0),))
    with pytest.raises(ValueError):
        MultiRel.from_rows([[-1]])


def test_interp_reports_type_errors():
    with pytest.raises(TermTypeError):
        interp_B(Compose(Generator("delta"), Generator("delta")))


def test_json_round_trip():
    r = MultiRel.from_rows([[2, 0, 1], [0, 0, 4]])
    assert MultiRel.from_json(r.to_json()) == r
    assert MultiRel.from_json(MultiRel.zeros(0, 3).to_json()) == MultiRel.zeros(0, 3)


@settings(max_examples=300, deadline=None)
@given(a=matrices, b=matrices)
def test_tensor_matches_oracle(a, b):
    assert tensor(a, b).array().tolist() == mrel_tensor(a.array(), b.array()).tolist()


@settings(max_examples=300, deadline=None)
@given(a=matrices, data=st.data())
def test_compose_matches_oracle(a, data):
    n = data.draw(st.integers(0, 3))
    flat = data.draw(st.lists(st.integers(0, 3), min_size=a.n * n, max_size=a.n * n))
    b = MultiRel.from_flat(a.n, n, flat)
    assert compose(a, b).array().tolist() == mrel_compose(a.array(), b.array()).tolist()


@settings(max_examples=300, deadline=None)
@given(r=matrices)
def test_canonical_word_round_trip(r):
    w = matrix_to_canon(r)
    assert is_canonical_B(w)
    assert word_to_matrix(w) == r
    assert interp_B(canon_to_term_B(w)) == r


def test_cardinality_equals_number_of_W():
    r = MultiRel.from_rows([[2, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
    w = matrix_to_canon(r)
    assert sum(x.kind == "W" for x in w) == r.cardinality == 4


def test_identity_word():
    assert format_word(identity_word(2)) == "W0 E H W0 E H Z"
    assert word_to_matrix(identity_word(3)) == MultiRel.identity(3)


def test_stairs_is_a_cyclic_shift():
    r = interp_B(stairs(2))
    # the first wire is carried to position 2
    assert r.array().tolist() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


@pytest.mark.parametrize("gen", ["mu", "eta", "delta", "eps", "gamma"])
def test_apply_generator_case_table(gen):
    rng = random.Random(gen)
    arity = {"mu": 2, "eta": 0, "delta": 1, "eps": 1, "gamma": 2}[gen]
    for _ in range(40):
        m = rng.randint(0, 3)
        n = rng.randint(arity, 4)
        psi = MultiRel.from_flat(m, n, [rng.randint(0, 2) for _ in range(m * n)])
        m1 = rng.randint(0, n - arity)
        out = apply_generator(gen, m1, matrix_to_canon(psi))
        word_type(out)
        g = interp_B(term(gen))
        whisker = tensor(tensor(MultiRel.identity(m1), g), MultiRel.identity(n - arity - m1))
        assert word_to_matrix(out) == compose(psi, whisker)


@settings(max_examples=300, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(0, 9))
def test_canonicalize_agrees_with_interpretation(seed, k):
    t = random_term(random.Random(seed), B_SIGNATURE, k)
    r = interp_B(t)
    pre = precanonical_B(t)
    assert word_to_matrix(pre) == r
    assert canonicalize_B(t) == matrix_to_canon(r)
    assert canonicalize_R(t) == rel_to_canon(quotient_to_rel(r))
    assert interp_R(t) == quotient_to_rel(r)


def test_relations_presented_by_qualitative_words():
    for flat in itertools.product([False, True], repeat=4):
        rel = BoolRel.from_rows([flat[:2], flat[2:]])
        w = rel_to_canon(rel)
        assert is_canonical_R(w)
        assert word_to_rel(w) == rel


def test_qualitative_collapses_parallel_witnesses():
    assert format_word(canonicalize_B(term("delta ; mu"))) == "W0 W0 E H Z"
    assert format_word(canonicalize_R(term("delta ; mu"))) == "W0 E H Z"


def test_canonical_words_are_distinct_per_shape():
    words = {matrix_to_canon(MultiRel.from_flat(2, 2, list(f))) for f in itertools.product(range(3), repeat=4)}
    assert len(words) == 81


def test_word_to_matrix_is_numpy_consistent():
    r = MultiRel.from_rows([[1, 2], [0, 3]])
    assert np.array_equal(word_to_matrix(matrix_to_canon(r)).array(), r.array())
