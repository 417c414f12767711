"""Batch numeric kernels with a numba route and a pure numpy/scipy route.

The numba route is used when numba imports and neither
``ARTIN_SHORTLEX_DISABLE_JIT`` nor ``NUMBA_DISABLE_JIT`` is set to a truthy
value.  Both routes return identical results; ``benchmarks/bench_kernels.py``
times them against each other.

Words of length ``<= R`` over ``k`` letters are indexed densely:
``index(w) = offset[len(w)] + sum(w[i] * k**(len(w)-1-i))``.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

__all__ = [
    "USE_NUMBA", "ball_components", "dfa_accepts", "dfa_count_by_length",
    "decode_word", "encode_word", "length_offsets", "words_array",
]


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


try:
    if _env_flag("ARTIN_SHORTLEX_DISABLE_JIT") or _env_flag("NUMBA_DISABLE_JIT"):
        raise ImportError("jit disabled by environment")
    from numba import njit

    USE_NUMBA = True
except ImportError:
    USE_NUMBA = False


# -- indexing ----------------------------------------------------------------

def length_offsets(k: int, R: int) -> np.ndarray:
    off = np.zeros(R + 2, dtype=np.int64)
    for L in range(R + 1):
        off[L + 1] = off[L] + k ** L
    return off


def encode_word(w: Sequence[int], k: int, off: np.ndarray) -> int:
    idx = 0
    for c in w:
        idx = idx * k + c
    return int(off[len(w)]) + idx


def decode_word(index: int, k: int, off: np.ndarray) -> tuple:
    L = int(np.searchsorted(off, index, side="right")) - 1
    r = index - int(off[L])
    out = [0] * L
    for i in range(L - 1, -1, -1):
        r, out[i] = divmod(r, k)
    return tuple(out)


def words_array(k: int, L: int) -> np.ndarray:
    """All ``k**L`` words of length ``L`` as rows, in index order."""
    if L == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(k ** L, dtype=np.int64)
    cols = [(idx // k ** (L - 1 - i)) % k for i in range(L)]
    return np.stack(cols, axis=1)


def _halves_array(halves: Sequence[tuple]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pack relator halves ``[(left, right), ...]`` into padded arrays."""
    H = len(halves)
    mmax = max((len(a) for a, _ in halves), default=1)
    left = np.full((max(H, 1), mmax), -1, dtype=np.int64)
    right = np.full((max(H, 1), mmax), -1, dtype=np.int64)
    lens = np.zeros(max(H, 1), dtype=np.int64)
    for h, (a, b) in enumerate(halves):
        left[h, :len(a)] = a
        right[h, :len(b)] = b
        lens[h] = len(a)
    return left, right, lens


# -- ball components -----------------------------------------------------------

def _ball_components_loop(k, R, off, left, right, lens, H):
    N = off[R + 1]
    parent = np.arange(N)
    buf = np.zeros(R + 1, dtype=np.int64)
    pw = np.ones(R + 1, dtype=np.int64)
    for i in range(1, R + 1):
        pw[i] = pw[i - 1] * k

    for L in range(1, R + 1):
        base = off[L]
        for r in range(k ** L):
            idx = base + r
            rr = r
            for i in range(L - 1, -1, -1):
                buf[i] = rr % k
                rr //= k
            # deletions of an adjacent inverse pair
            for i in range(L - 1):
                if buf[i] ^ 1 == buf[i + 1]:
                    hi = r // pw[L - i]
                    lo = r % pw[L - i - 2]
                    tgt = off[L - 2] + hi * pw[L - i - 2] + lo
                    a = idx
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    b = tgt
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
            # relator-half swaps left -> right
            for h in range(H):
                m = lens[h]
                for p in range(L - m + 1):
                    ok = True
                    for j in range(m):
                        if buf[p + j] != left[h, j]:
                            ok = False
                            break
                    if not ok:
                        continue
                    delta = 0
                    for j in range(m):
                        delta += (right[h, j] - left[h, j]) * pw[L - 1 - p - j]
                    tgt = idx + delta
                    a = idx
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    b = tgt
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
    for i in range(N):
        a = i
        while parent[a] != a:
            a = parent[a]
        parent[i] = a
    return parent


def _ball_components_numpy(k, R, off, left, right, lens, H):
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    N = int(off[R + 1])
    src_parts = []
    dst_parts = []
    for L in range(1, R + 1):
        W = words_array(k, L)
        idx = np.arange(k ** L, dtype=np.int64) + off[L]
        r = idx - off[L]
        for i in range(L - 1):
            mask = (W[:, i] ^ 1) == W[:, i + 1]
            if not mask.any():
                continue
            hi = r[mask] // k ** (L - i)
            lo = r[mask] % k ** (L - i - 2)
            src_parts.append(idx[mask])
            dst_parts.append(off[L - 2] + hi * k ** (L - i - 2) + lo)
        for h in range(H):
            m = int(lens[h])
            if m > L:
                continue
            weights = k ** np.arange(L - 1, -1, -1, dtype=np.int64)
            for p in range(L - m + 1):
                mask = np.all(W[:, p:p + m] == left[h, :m], axis=1)
                if not mask.any():
                    continue
                delta = int(np.sum((right[h, :m] - left[h, :m]) * weights[p:p + m]))
                src_parts.append(idx[mask])
                dst_parts.append(idx[mask] + delta)
    if src_parts:
        src = np.concatenate(src_parts)
        dst = np.concatenate(dst_parts)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    _, labels = connected_components(g, directed=False)
    # canonical label: smallest index in the component
    first = np.full(labels.max() + 1, N, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(N, dtype=np.int64))
    return first[labels]


if USE_NUMBA:
    _ball_components_jit = njit(cache=True)(_ball_components_loop)


def ball_components(k: int, R: int, halves: Sequence[tuple], *, jit: bool | None = None) -> np.ndarray:
    """Connected components of all words of length ``<= R`` under elementary moves.

    Moves are deletion/insertion of ``g g^-1`` and the swaps in ``halves``
    (each a pair of equal-length letter tuples, applied in both directions),
    never leaving length ``R``.  Returns, for every word index, the smallest
    index in its component.
    """
    off = length_offsets(k, R)
    left, right, lens = _halves_array(halves)
    H = len(halves)
    use = USE_NUMBA if jit is None else (jit and USE_NUMBA)
    if use:
        return _ball_components_jit(k, R, off, left, right, lens, H)
    return _ball_components_numpy(k, R, off, left, right, lens, H)


# -- dfa kernels -------------------------------------------------------------

def _dfa_accepts_loop(trans, accepting, start, words, lengths):
    n = words.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        s = start
        for j in range(lengths[i]):
            s = trans[s, words[i, j]]
            if s < 0:
                break
        out[i] = s >= 0 and accepting[s]
    return out


def _dfa_accepts_numpy(trans, accepting, start, words, lengths):
    n = words.shape[0]
    states = np.full(n, start, dtype=np.int64)
    for j in range(words.shape[1] if words.ndim == 2 else 0):
        live = (lengths > j) & (states >= 0)
        states[live] = trans[states[live], words[live, j]]
    ok = states >= 0
    out = np.zeros(n, dtype=np.bool_)
    out[ok] = accepting[states[ok]]
    return out


def _dfa_count_loop(trans, accepting, start, upto):
    S, A = trans.shape
    counts = np.zeros(upto + 1, dtype=np.int64)
    cur = np.zeros(S, dtype=np.int64)
    cur[start] = 1
    for L in range(upto + 1):
        tot = 0
        for s in range(S):
            if accepting[s]:
                tot += cur[s]
        counts[L] = tot
        nxt = np.zeros(S, dtype=np.int64)
        for s in range(S):
            if cur[s] == 0:
                continue
            for a in range(A):
                t = trans[s, a]
                if t >= 0:
                    nxt[t] += cur[s]
        cur = nxt
    return counts


def _dfa_count_numpy(trans, accepting, start, upto):
    S, A = trans.shape
    adj = np.zeros((S, S), dtype=np.int64)
    src, letters = np.nonzero(trans >= 0)
    np.add.at(adj, (src, trans[src, letters]), 1)
    cur = np.zeros(S, dtype=np.int64)
    cur[start] = 1
    counts = np.zeros(upto + 1, dtype=np.int64)
    for L in range(upto + 1):
        counts[L] = cur[accepting].sum()
        cur = cur @ adj
    return counts


if USE_NUMBA:
    _dfa_accepts_jit = njit(cache=True)(_dfa_accepts_loop)
    _dfa_count_jit = njit(cache=True)(_dfa_count_loop)


def dfa_accepts(trans: np.ndarray, accepting: np.ndarray, start: int,
                words: np.ndarray, lengths: np.ndarray, *, jit: bool | None = None) -> np.ndarray:
    """Run a DFA (``trans[state, letter]``, ``-1`` = dead) over a batch of padded words."""
    trans = np.ascontiguousarray(trans, dtype=np.int64)
    accepting = np.ascontiguousarray(accepting, dtype=np.bool_)
    words = np.ascontiguousarray(words, dtype=np.int64)
    lengths = np.ascontiguousarray(lengths, dtype=np.int64)
    use = USE_NUMBA if jit is None else (jit and USE_NUMBA)
    if use:
        return _dfa_accepts_jit(trans, accepting, int(start), words, lengths)
    return _dfa_accepts_numpy(trans, accepting, int(start), words, lengths)


def dfa_count_by_length(trans: np.ndarray, accepting: np.ndarray, start: int, upto: int,
                        *, jit: bool | None = None) -> np.ndarray:
    trans = np.ascontiguousarray(trans, dtype=np.int64)
    accepting = np.ascontiguousarray(accepting, dtype=np.bool_)
    use = USE_NUMBA if jit is None else (jit and USE_NUMBA)
    if use:
        return _dfa_count_jit(trans, accepting, int(start), int(upto))
    return _dfa_count_numpy(trans, accepting, int(start), int(upto))
