import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causal_games.games import (
    GENERATOR_TABLE,
    GamesModel,
    all_strategies,
    compose_strategies,
    filiform,
    generator_strategy,
    random_strategy,
)
from causal_games.gamespres import (
    canon_to_strategy,
    canon_to_term_G,
    enumerate_canonical,
    normalize_G,
    strategy_to_canon,
    strategy_to_term,
    validate_canon_G,
    word_links,
)
from causal_games.rewriting import GAMES_SYSTEM, WordTypeError, format_word, parse_word
from causal_games.sigcat import Compose, Generator, evaluate, parse_term, typecheck
from causal_games.theories import G_SIGNATURE

CANON = {
    "muP": "W0 EP W0 EP HP Z",
    "muO": "W0 EO W0 EO HO Z",
    "etaP": "HP Z",
    "deltaP": "W1 W0 EP HP HP Z",
    "epsP": "EP Z",
    "gammaP": "W1 EP W0 EP HP HP Z",
    "etaOP": "B1 HO HP Z",
    "epsOP": "A1 EP EO Z",
    "gammaOP": "W1 EP W0 EO HO HP Z",
}

words = st.text(alphabet="OP", max_size=4)


@pytest.mark.parametrize("name", sorted(CANON))
def test_generator_canonical_words(name):
    assert format_word(strategy_to_canon(generator_strategy(name))) == CANON[name]
    assert canon_to_strategy(parse_word(CANON[name])) == generator_strategy(name)


@pytest.mark.parametrize("name", sorted(GENERATOR_TABLE))
def test_generator_terms_normalize_to_their_strategy(name):
    assert canon_to_strategy(normalize_G(Generator(name))) == generator_strategy(name)


def test_word_links_of_a_cup():
    dom, cod, links = word_links(parse_word("B1 HO HP Z"))
    assert (dom, cod) == ("", "OP")
    assert links == [(0, 1)]


def test_canonical_words_validate():
    assert validate_canon_G(parse_word("W1 EP W0 EO HO HP Z"))
    # not normal: H before E
    assert not validate_canon_G(parse_word("W0 HP EP Z"))


def test_ill_typed_word_rejected():
    with pytest.raises(WordTypeError):
        canon_to_strategy(parse_word("W3 EP HP Z"))


def test_zigzag_normalizes_to_identity():
    t = parse_term("(id(P) * etaOP) ; (epsOP * id(P))", G_SIGNATURE)
    assert format_word(normalize_G(t)) == "W0 EP HP Z"


def test_all_canonical_words_up_to_length_six_round_trip():
    seen = set()
    for w in enumerate_canonical(6):
        s = canon_to_strategy(w)
        assert strategy_to_canon(s) == w
        assert GAMES_SYSTEM.is_normal(w)
        seen.add(s)
    assert len(seen) == sum(1 for _ in enumerate_canonical(6))


@pytest.mark.parametrize("dom,cod", [("", "OP"), ("PO", ""), ("OP", "PO"), ("PP", "P"), ("OPO", "P")])
def test_every_strategy_on_small_games_round_trips(dom, cod):
    for s in all_strategies(filiform(dom), filiform(cod)):
        w = strategy_to_canon(s)
        assert validate_canon_G(w)
        assert canon_to_strategy(w) == s


@settings(max_examples=300, deadline=None)
@given(a=words, b=words, seed=st.integers(0, 2**32 - 1))
def test_term_of_a_strategy_evaluates_back(a, b, seed):
    s = random_strategy(random.Random(seed), filiform(a), filiform(b))
    t = strategy_to_term(s)
    assert typecheck(t, G_SIGNATURE) == (tuple(a), tuple(b))
    assert evaluate(t, GamesModel()) == s
    assert evaluate(canon_to_term_G(strategy_to_canon(s)), GamesModel()) == s


@settings(max_examples=200, deadline=None)
@given(a=words, b=words, c=words, seed=st.integers(0, 2**32 - 1))
def test_presentation_route_agrees_with_composition(a, b, c, seed):
    rng = random.Random(seed)
    s = random_strategy(rng, filiform(a), filiform(b))
    t = random_strategy(rng, filiform(b), filiform(c))
    term = Compose(strategy_to_term(s), strategy_to_term(t))
    assert canon_to_strategy(normalize_G(term)) == compose_strategies(s, t)
