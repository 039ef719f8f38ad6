"""Words, forbidden-factor languages, and the follower automaton."""

import itertools
import random

import pytest

from moebius_systems.errors import BudgetExceeded
from moebius_systems.subshift import Alphabet, Subshift


def three_parabolic_shift():
    alph = Alphabet(("a", "b", "c"))
    return Subshift.from_words(alph, ["ac", "ba", "cb"])


def cf_shift():
    alph = Alphabet(("1-", "0", "1"))
    return Subshift.from_words(alph, ["00", "11-", "1-1", "101", "1-01-"])


def test_alphabet_tokenizes_multichar_names():
    alph = Alphabet(("1-", "0", "1"))
    assert alph.word("1-01") == (0, 1, 2)
    assert alph.word("11-") == (2, 0)
    assert alph.format((0, 1, 2)) == "1-01"
    assert alph.format((0,), unicode_bars=True) == "1̄"
    with pytest.raises(ValueError):
        alph.word("2")


def test_in_language_examples():
    cf = cf_shift()
    assert not cf.in_language(cf.alphabet.word("00"))
    assert cf.in_language(())
    p3 = three_parabolic_shift()
    assert p3.in_language(p3.alphabet.word("ab"))
    assert not p3.in_language(p3.alphabet.word("ac"))
    assert not p3.in_language(p3.alphabet.word("bacb"))  # factor "ac"


def test_language_counts():
    p3 = three_parabolic_shift()
    assert [p3.alphabet.format(w) for w in p3.language(1)] == ["a", "b", "c"]
    assert len(p3.language(2)) == 6  # nine pairs minus three forbidden
    assert p3.language(0) == [()]


def test_language_matches_brute_force():
    p3 = three_parabolic_shift()
    for n in range(0, 6):
        brute = [w for w in itertools.product(range(3), repeat=n) if p3.in_language(w)]
        assert p3.language(n) == brute


def test_language_budget():
    full = Subshift(Alphabet(("0", "1")), ())
    with pytest.raises(BudgetExceeded):
        full.language(20, budget=100)


def test_factoriality():
    rng = random.Random(42)
    cf = cf_shift()
    words = cf.language(7)
    for _ in range(200):
        w = rng.choice(words)
        i = rng.randint(0, len(w))
        j = rng.randint(i, len(w))
        assert cf.in_language(w[i:j])


def test_language_submultiplicative():
    cf = cf_shift()
    sizes = {n: len(cf.language(n)) for n in range(0, 11)}
    for n in range(1, 6):
        for m in range(1, 6):
            assert sizes[n + m] <= sizes[n] * sizes[m]


def test_golden_mean_automaton():
    golden = Subshift.from_words(Alphabet(("0", "1")), ["11"])
    auto = golden.follower_automaton()
    assert auto.n_states == 2
    assert auto.accepts((0, 1, 0, 1, 0))
    assert not auto.accepts((1, 1))


def test_free_shift_automaton():
    free = Subshift(Alphabet(("x", "y")), ())
    auto = free.follower_automaton()
    assert auto.n_states == 1
    assert auto.accepts((0, 1, 1, 0, 1))


def test_three_parabolic_automaton_size():
    auto = three_parabolic_shift().follower_automaton()
    assert auto.n_states <= 4


@pytest.mark.parametrize("shift", [three_parabolic_shift(), cf_shift()])
def test_automaton_agrees_with_in_language(shift):
    auto = shift.follower_automaton()
    k = shift.alphabet.size
    for n in range(0, 7):
        for w in itertools.product(range(k), repeat=n):
            assert auto.accepts(w) == shift.in_language(w)


def test_forbidden_validation():
    alph = Alphabet(("a", "b"))
    with pytest.raises(ValueError):
        Subshift(alph, ((),))
    with pytest.raises(ValueError):
        Subshift(alph, ((5,),))
