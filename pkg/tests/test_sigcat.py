import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causal_games.sigcat import (
    Compose,
    Generator,
    Identity,
    ParseError,
    Signature,
    Slice,
    Tensor,
    TermTypeError,
    parse_term,
    print_term,
    random_term,
    size,
    slices,
    slices_to_term,
    typecheck,
)
from causal_games.theories import B_SIGNATURE, G_SIGNATURE

ONE = ("1",)


def test_signature_rejects_undeclared_objects():
    with pytest.raises(ValueError, match="undeclared"):
        Signature.build(["1"], [("f", "2", "1")])


def test_signature_rejects_duplicates():
    with pytest.raises(ValueError):
        Signature.build(["1", "1"], [])
    with pytest.raises(ValueError):
        Signature.build(["1"], [("f", "1", "1"), ("f", "11", "1")])


def test_signature_json_round_trip():
    assert Signature.from_json(G_SIGNATURE.to_json()) == G_SIGNATURE
    assert Signature.from_json(B_SIGNATURE.to_json()) == B_SIGNATURE


def test_typecheck_generators_and_identity():
    assert typecheck(Generator("mu"), B_SIGNATURE) == (ONE * 2, ONE)
    assert typecheck(Identity(ONE * 3), B_SIGNATURE) == (ONE * 3, ONE * 3)
    assert typecheck(Tensor(Generator("eta"), Generator("eps")), B_SIGNATURE) == (ONE, ONE)


def test_typecheck_reports_mismatch():
    with pytest.raises(TermTypeError, match="mu"):
        typecheck(Compose(Generator("mu"), Generator("mu")), B_SIGNATURE)


def test_parse_precedence_and_comments():
    t = parse_term("mu * eta ; delta  # trailing comment", B_SIGNATURE)
    assert t == Compose(Tensor(Generator("mu"), Generator("eta")), Generator("delta"))


def test_parse_identity_forms():
    assert parse_term("id(2)", B_SIGNATURE) == Identity(ONE * 2)
    assert parse_term("id(OPO)", G_SIGNATURE) == Identity(("O", "P", "O"))


@pytest.mark.parametrize("text", ["mu ;", "(mu", "mu mu", "nope", "mu $ eta"])
def test_parse_errors_have_offsets(text):
    with pytest.raises(ParseError, match="offset"):
        parse_term(text, B_SIGNATURE)


def test_size_counts_generators():
    t = parse_term("((delta * eps) ; (id(1) * delta) ; (mu * eta * id(1))) * id(1)", B_SIGNATURE)
    assert size(t) == 5
    assert typecheck(t, B_SIGNATURE) == (ONE * 3, ONE * 4)


def test_slices_of_tensor_sweep_left_factor_first():
    t = Tensor(Generator("mu"), Generator("delta"))
    assert slices(t, B_SIGNATURE) == [Slice(0, "mu", 1), Slice(1, "delta", 0)]


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(0, 8))
def test_print_parse_round_trip(seed, k):
    t = random_term(random.Random(seed), B_SIGNATURE, k)
    back = parse_term(print_term(t, B_SIGNATURE), B_SIGNATURE)
    assert typecheck(back, B_SIGNATURE) == typecheck(t, B_SIGNATURE)
    assert print_term(back, B_SIGNATURE) == print_term(t, B_SIGNATURE)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(0, 8))
def test_random_terms_have_requested_size_and_slices_rebuild(seed, k):
    t = random_term(random.Random(seed), G_SIGNATURE, k)
    src, tgt = typecheck(t, G_SIGNATURE)
    assert size(t) == k
    seq = slices(t, G_SIGNATURE)
    assert len(seq) == k
    rebuilt = slices_to_term(seq, G_SIGNATURE, src)
    assert typecheck(rebuilt, G_SIGNATURE) == (src, tgt)
    assert slices(rebuilt, G_SIGNATURE) == seq


def test_slices_to_term_rejects_bad_fit():
    with pytest.raises(TermTypeError):
        slices_to_term([Slice(0, "mu", 0)], B_SIGNATURE, ONE)
