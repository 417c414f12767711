import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artin_shortlex import kernels
from artin_shortlex.automata import build_shortlex_acceptor, all_words_array
from artin_shortlex.oracle import relator_halves

needs_numba = pytest.mark.skipif(not kernels.USE_NUMBA, reason="numba route unavailable")


@given(st.integers(2, 6), st.data())
def test_encode_decode_roundtrip(k, data):
    R = 4
    off = kernels.length_offsets(k, R)
    w = tuple(data.draw(st.lists(st.integers(0, k - 1), max_size=R)))
    idx = kernels.encode_word(w, k, off)
    assert kernels.decode_word(idx, k, off) == w
    assert 0 <= idx < off[R + 1]


def test_words_array_order():
    W = kernels.words_array(3, 2)
    assert W.shape == (9, 2)
    assert W[0].tolist() == [0, 0] and W[-1].tolist() == [2, 2]


@needs_numba
def test_component_routes_agree(g333):
    halves = relator_halves(g333, True)
    a = kernels.ball_components(6, 5, halves, jit=True)
    b = kernels.ball_components(6, 5, halves, jit=False)
    assert np.array_equal(a, b)


@needs_numba
def test_dfa_routes_agree(g333):
    d = build_shortlex_acceptor(g333, verify_depth=4)
    words, lens, _ = all_words_array(6, 5)
    a = kernels.dfa_accepts(d.trans, d.accepting, d.start, words, lens, jit=True)
    b = kernels.dfa_accepts(d.trans, d.accepting, d.start, words, lens, jit=False)
    assert np.array_equal(a, b)
    ca = kernels.dfa_count_by_length(d.trans, d.accepting, d.start, 10, jit=True)
    cb = kernels.dfa_count_by_length(d.trans, d.accepting, d.start, 10, jit=False)
    assert np.array_equal(ca, cb)


@pytest.mark.parametrize("var", ["ARTIN_SHORTLEX_DISABLE_JIT", "NUMBA_DISABLE_JIT"])
def test_env_flag_selects_numpy_route(var):
    env = dict(os.environ, **{var: "1"})
    out = subprocess.run([sys.executable, "-c",
                          "from artin_shortlex import kernels; print(kernels.USE_NUMBA)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
