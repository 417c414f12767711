import random

import pytest
from hypothesis import given, settings, strategies as st

from artin_shortlex import Presentation, parse_word
from artin_shortlex.oracle import elementary_neighbors
from artin_shortlex.reducer import (
    apply_factorization, find_leftward_lex_reducing, find_rightward_length_reducing, in_W,
    is_critically_reduced, maximal_2gen_suffix, rho, rho_step, rho_trace,
)
from artin_shortlex.words import Cmp, free_reduce, inverse, shortlex_cmp

DA3 = Presentation.dihedral(3)
G333 = Presentation.triangle(3, 3, 3)
G345 = Presentation.triangle(3, 4, 5)

WORKED_INPUT = "c a a c a B C b b c A B B a"
WORKED_WORDS = [
    "c a a c a B C b b c b A A B",
    "c a a c a c b c c B C A A B",
    "a c a c c a b c c B C A A B",
]


def w(text, pres=DA3):
    return parse_word(text, pres)


def test_maximal_2gen_suffix(g333):
    assert maximal_2gen_suffix(w("c a b a b", g333)) == (w("c", g333), w("a b a b", g333), (0, 1))
    assert maximal_2gen_suffix(w("a a a")) == ((), w("a a a"), (0,))
    assert maximal_2gen_suffix(()) == ((), (), None)


def test_rightward_two_generator_instance():
    f = find_rightward_length_reducing(w("a b b A"), w("B")[0], DA3)
    assert f.k == 1
    assert f.factors == (w("a b b A"),) and f.beta == w("B") and f.pairs == ((0, 1),)
    tr = apply_factorization(f, DA3)
    assert tr.final_word == w("B a a")
    assert find_rightward_length_reducing(w("a b"), 0, DA3) is None
    with pytest.raises(ValueError):
        find_rightward_length_reducing(w("a b"), 3, DA3)


def test_leftward_two_generator_instance():
    f = find_leftward_lex_reducing(w("b a"), 2, DA3)
    assert f.k == 1
    assert apply_factorization(f, DA3).final_word == w("a b a")
    assert find_leftward_lex_reducing(w("a b"), 0, DA3) is None


def test_rightward_chain_of_length_two():
    word, g = w("a c a c b a", G345), w("B", G345)[0]
    f = find_rightward_length_reducing(word, g, G345)
    assert f.k == 2
    tr = apply_factorization(f, G345)
    assert tr.replay() == tr.final_word
    assert len(tr.final_word) == len(word) - 1
    assert rho(tr.final_word, G345) == rho(word + (g,), G345)


def test_worked_leftward_sequence_three_steps():
    x = w(WORKED_INPUT, G345)
    f = find_leftward_lex_reducing(x[:-1], x[-1], G345)
    assert f.k == 3
    tr = apply_factorization(f, G345)
    cur, seen = x, []
    for st_ in tr.steps:
        cur = cur[:st_.position] + st_.after + cur[st_.position + len(st_.before):]
        seen.append(G345.format_word(cur))
    assert seen == WORKED_WORDS
    assert tr.final_word == w(WORKED_WORDS[-1], G345)
    assert rho(x, G345) == w(WORKED_WORDS[-1], G345)


def test_rho_step_cases():
    assert rho_step(w("a b b A"), 3, DA3) == w("B a a")
    assert rho_step(w("b a"), 2, DA3) == w("a b a")
    assert rho_step(w("a b"), 0, DA3) == w("a b a")


def test_rho_and_membership():
    assert rho(w("b a b"), DA3) == w("a b a")
    assert rho((), DA3) == ()
    assert in_W(w("a b a"), DA3) and not in_W(w("b a b"), DA3)
    assert not in_W(w("a A"), DA3)


def test_trace_replay_reproduces_rho(g345):
    x = w(WORKED_INPUT, g345)
    tr = rho_trace(x, g345)
    assert tr.replay() == rho(x, g345) == tr.final_word
    assert '"final"' in tr.dumps(g345)


# -- properties -----------------------------------------------------------------

def words(k, max_size):
    return st.lists(st.integers(0, k - 1), max_size=max_size).map(tuple)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([G333, G345]), words(6, 10), st.integers(0, 2 ** 32 - 1))
def test_rho_invariant_under_elementary_moves(pres, u, seed):
    rng = random.Random(seed)
    cur = u
    target = rho(u, pres)
    for _ in range(6):
        cur = rng.choice(sorted(elementary_neighbors(cur, pres, len(cur) + 2, inverse_halves=False)))
        assert rho(cur, pres) == target


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([DA3, G333, G345]), words(6, 12))
def test_rho_is_reduced_shortlex_minimal_candidate(pres, u):
    u = tuple(c % (2 * pres.n) for c in u)
    r = rho(u, pres)
    assert rho(r, pres) == r
    assert len(r) <= len(free_reduce(u))
    assert shortlex_cmp(r, free_reduce(u), pres.order) is not Cmp.GT
    assert rho(u + inverse(u), pres) == ()
    assert in_W(r, pres) and is_critically_reduced(r, pres)
    assert rho_trace(u, pres).replay() == r


@settings(max_examples=150, deadline=None)
@given(words(6, 8), st.integers(0, 5))
def test_cancelling_a_letter_returns_the_prefix(u, g):
    r = rho(u, G345)
    assert rho(r + (g, g ^ 1), G345) == r
    assert rho(r + (g ^ 1, g), G345) == r


def test_membership_by_definition_matches_rho(g333):
    from artin_shortlex.words import words_up_to
    for u in words_up_to(range(6), 4, reduced=True):
        assert in_W(u, g333) == is_critically_reduced(u, g333)
