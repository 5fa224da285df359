import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causal_games.rewriting import (
    BIALGEBRA_SYSTEM,
    GAMES_SYSTEM,
    QUALITATIVE_SYSTEM,
    SYSTEMS,
    RewriteRule,
    WordTypeError,
    alphabet,
    check_local_confluence,
    format_word,
    games_measure,
    parse_word,
    rewrite_to_normal,
    termination_measure,
    word_type,
)


def w(text):
    return parse_word(text)


def test_parse_format_round_trip():
    for text in ["Z", "W2 W0 W0 E E W3 E H H H H Z", "A2 W0 EP HO Z", "B1 HO HP Z"]:
        assert format_word(w(text)) == text


def test_word_type_counts_interfaces():
    # the worked example: 3 inputs (E) and 4 outputs (H)
    dom, cod = word_type(w("W2 W0 W0 E E W3 E H H H H Z"))
    assert (len(dom), len(cod)) == (3, 4)


def test_word_type_polarities():
    assert word_type(w("W1 EP W0 EO HO HP Z")) == (("P", "O"), ("O", "P"))


@pytest.mark.parametrize("text", ["W0 Z", "W1 E H Z", "H", "Z Z", "B1 HP Z", "A1 EP Z"])
def test_word_type_rejects_out_of_range(text):
    with pytest.raises(WordTypeError):
        word_type(w(text))


def test_rule_schema_application():
    rule = RewriteRule("H W_i", "W_{i+1} H", name="H-W")
    assert rule.apply_at(w("H W0 Z"), 0) == w("W1 H Z")
    assert rule.apply_at(w("H E Z"), 0) is None


def test_rule_condition():
    rule = RewriteRule("W_i W_j", "W_j W_i", "i<j")
    assert rule.apply_at(w("W0 W2"), 0) == w("W2 W0")
    assert rule.apply_at(w("W2 W0"), 0) is None


def test_rules_must_preserve_typing_letters():
    with pytest.raises(ValueError, match="typing"):
        RewriteRule("H E", "E")


def test_idempotency_only_in_qualitative_system():
    word = w("W0 W0 E H Z")
    assert BIALGEBRA_SYSTEM.is_normal(word)
    assert QUALITATIVE_SYSTEM.normalize(word) == w("W0 E H Z")


def test_bialgebra_normal_form_sorts_W_descending():
    assert BIALGEBRA_SYSTEM.normalize(w("W0 W1 E H H Z")) == w("W1 W0 E H H Z")
    assert rewrite_to_normal(w("H E W0 E H Z"), BIALGEBRA_SYSTEM.rules) == w("E W1 E H H Z")


def test_measures_on_known_steps():
    before, after = w("H W0 E H Z"), w("W1 H E H Z")
    assert termination_measure(after) < termination_measure(before)
    assert games_measure(w("HP EP Z")) > games_measure(w("EP HP Z"))


@pytest.mark.parametrize("name", ["B", "R", "G"])
@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_every_step_decreases_measure(name, seed):
    system = SYSTEMS[name]
    rng = random.Random(seed)
    letters = alphabet(system, 4)
    word = tuple(rng.choice(letters) for _ in range(rng.randint(1, 10)))
    for _, _, res in system.redexes(word):
        assert system.measure(res) < system.measure(word)


@pytest.mark.parametrize("name", ["B", "R", "G"])
@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_normal_forms_are_normal_and_unique(name, seed):
    # normalize with the leftmost strategy and with random redex choices
    system = SYSTEMS[name]
    rng = random.Random(seed)
    letters = alphabet(system, 3)
    word = tuple(rng.choice(letters) for _ in range(rng.randint(1, 9)))
    nf = system.normalize(word)
    assert system.is_normal(nf)
    cur = word
    while True:
        options = system.redexes(cur)
        if not options:
            break
        cur = rng.choice(options)[2]
    assert cur == nf


def test_normalization_preserves_typing():
    word = w("H E W0 W0 E H Z")
    nf = BIALGEBRA_SYSTEM.normalize(word)
    assert word_type(nf) == word_type(word)


@pytest.mark.parametrize("name", ["B", "R"])
def test_local_confluence_bialgebra_systems(name):
    assert check_local_confluence(SYSTEMS[name], 6) == []


def test_local_confluence_games_system():
    assert check_local_confluence(GAMES_SYSTEM, 6) == []


def test_confluence_checker_finds_a_broken_system():
    broken = [RewriteRule("W_i W_j", "W_j W_i", "i<j"), RewriteRule("W_i W_j", "W_i", "i<j")]
    assert check_local_confluence(broken, 3, 3)
