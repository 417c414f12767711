import pytest
from hypothesis import given, settings, strategies as st

from artin_shortlex import Presentation, parse_word
from artin_shortlex.geodesic import (
    DIHEDRAL, FREE_REDUCTION, equal_in_G, fellow_travel_distance, fftp_witness, geodesic_length,
    is_geodesic, minimal_nongeodesic_prefix, retarget, tau_search,
)
from artin_shortlex.reducer import rho
from artin_shortlex.sweeps import geodesics_up_to

DA3 = Presentation.dihedral(3)
G333 = Presentation.triangle(3, 3, 3)
G345 = Presentation.triangle(3, 4, 5)


def w(text, pres=DA3):
    return parse_word(text, pres)


def test_geodesic_length_and_tests():
    assert geodesic_length((), DA3) == 0
    assert geodesic_length(w("a b b A B"), DA3) == 3
    assert geodesic_length(w("a b a"), DA3) == 3
    assert is_geodesic(w("b a b"), DA3)
    assert not is_geodesic(w("a b b A B"), DA3)


def test_equality():
    assert equal_in_G(w("a b a"), w("b a b"), DA3)
    assert equal_in_G(w("a b b A"), w("B a a b"), DA3)
    p = Presentation(("a", "b", "c"), ((1, 3, 3), (3, 1, None), (3, None, 1)))
    assert not equal_in_G(w("b c", p), w("c b", p), p)
    assert not equal_in_G(w("b", p), w("c", p), p)


def test_fellow_travel_distance():
    assert fellow_travel_distance(w("a b a"), w("a b a"), DA3) == 0
    # frozen by direct computation; the bound is 2m = 6
    assert fellow_travel_distance(w("a b b A"), w("B a a b"), DA3) == 2


def test_minimal_nongeodesic_prefix():
    assert minimal_nongeodesic_prefix(w("a b b A B a"), DA3) == 5
    assert minimal_nongeodesic_prefix(w("a b a"), DA3) is None


def test_fftp_witness_examples():
    wit = fftp_witness(w("a b b A B"), DA3)
    assert wit.word == w("B a a")
    assert wit.distance == 2 and wit.method == DIHEDRAL and wit.prefix_length == 5
    assert not wit.is_fallback
    assert wit.to_json(DA3)["word"] == "B a a"
    assert fftp_witness(w("a b a"), DA3) is None
    wit = fftp_witness(w("a b B"), DA3)
    assert wit.word == w("a") and wit.method == FREE_REDUCTION and wit.distance <= 1


def test_retarget_and_tau_search():
    assert w("b a b") in retarget(w("a b a"), 2, DA3)
    assert retarget(w("a b"), 0, DA3) == []
    found = tau_search(w("a b b A"), 2, DA3)
    assert w("B a a b") in found


def geodesic_words(pres, L):
    return st.sampled_from(sorted(g for g in geodesics_up_to(pres, L) if g))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_fftp_witness_properties(data):
    pres = data.draw(st.sampled_from([G333, G345]))
    v = data.draw(geodesic_words(pres, 4))
    g = data.draw(st.integers(0, 2 * pres.n - 1))
    tail = data.draw(st.lists(st.integers(0, 2 * pres.n - 1), max_size=2).map(tuple))
    u = v + (g,) + tail
    wit = fftp_witness(u, pres)
    if wit is None:
        assert is_geodesic(u, pres)
        return
    assert len(wit.word) < len(u)
    assert rho(wit.word, pres) == rho(u, pres)
    assert wit.distance == fellow_travel_distance(u, wit.word, pres) <= pres.M
    assert not wit.is_fallback


@pytest.mark.parametrize("pres", [G333, G345], ids=["333", "345"])
def test_generator_and_inverse_not_both_shorten(pres):
    for v in geodesics_up_to(pres, 4):
        for g in range(0, 2 * pres.n, 2):
            if v and (v[-1] in (g, g ^ 1)):
                continue
            assert is_geodesic(v + (g,), pres) or is_geodesic(v + (g ^ 1,), pres)
