"""Word differences and finite-state acceptors for normal forms and geodesics.

An acceptor reads a word ``w`` while tracking every competitor ``w'`` that
could still turn out to be equal to ``w`` and smaller.  A competitor is
summarized by the difference ``w(i)^-1 w'(i)`` (as a normal form drawn from
a finite difference set) and by how ``w'`` compares to ``w`` so far:

* ``LT``/``EQ``/``GT``: same length, ``w'`` lexicographically below, equal or above;
* ``SHORT``: ``w'`` has already ended (it is shorter).

A prefix is rejected as soon as some competitor reaches difference ``ε``
while being shorter, or (shortlex acceptor only) lexicographically smaller.
Both languages are prefix-closed, so rejection is a dead state and every live
state accepts.  Correctness is certified by exhaustive comparison to a depth.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .geodesic import fftp_witness, is_geodesic, minimal_nongeodesic_prefix
from .reducer import in_W, rho
from .words import LetterOrder, Presentation, Word, inverse

SHORTLEX = "shortlex"
GEODESIC = "geodesic"

LT, EQ, GT, SHORT = 0, 1, 2, 3
_SAME = EQ  # the geodesic acceptor ignores lexicographic order


class StateBudgetExceeded(RuntimeError):
    """Subset construction produced more states than allowed."""


class AcceptorMismatch(AssertionError):
    """The acceptor disagrees with the membership oracle on some word."""

    def __init__(self, words: list):
        super().__init__(f"{len(words)} disagreement(s), first: {words[0]!r}")
        self.words = words


@dataclass(frozen=True)
class Dfa:
    """Partial DFA over letters ``0 .. alphabet-1``; ``trans[s, a] == -1`` means no edge."""

    trans: np.ndarray
    start: int
    accepting: np.ndarray

    @property
    def n_states(self) -> int:
        return int(self.trans.shape[0])

    @property
    def alphabet(self) -> int:
        return int(self.trans.shape[1])

    def accepts(self, w: Sequence[int]) -> bool:
        s = self.start
        for c in w:
            s = int(self.trans[s, c])
            if s < 0:
                return False
        return bool(self.accepting[s])

    def accepts_batch(self, words: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        return kernels.dfa_accepts(self.trans, self.accepting, self.start, words, lengths)

    def to_json(self, pres: Presentation) -> dict:
        edges = [[s, pres.format_letter(a), int(t)]
                 for s in range(self.n_states) for a in range(self.alphabet)
                 if (t := self.trans[s, a]) >= 0]
        return {"states": self.n_states, "start": int(self.start),
                "accepting": [int(s) for s in np.flatnonzero(self.accepting)],
                "edges": edges}

    @classmethod
    def from_json(cls, data: dict, pres: Presentation) -> "Dfa":
        trans = np.full((data["states"], 2 * pres.n), -1, dtype=np.int64)
        for s, text, t in data["edges"]:
            (a,) = pres.parse_word(text)
            trans[s, a] = t
        acc = np.zeros(data["states"], dtype=bool)
        acc[list(data["accepting"])] = True
        return cls(trans, int(data["start"]), acc)

    def to_dot(self, pres: Presentation, name: str = "acceptor") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
        for s in range(self.n_states):
            shape = "doublecircle" if self.accepting[s] else "circle"
            lines.append(f"  {s} [shape={shape}];")
        lines.append(f"  __start -> {self.start};")
        for s in range(self.n_states):
            by_target: dict = {}
            for a in range(self.alphabet):
                t = int(self.trans[s, a])
                if t >= 0:
                    by_target.setdefault(t, []).append(pres.format_letter(a))
            for t, labels in by_target.items():
                lines.append(f'  {s} -> {t} [label="{",".join(labels)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dfa_count_by_length(d: Dfa, up_to: int) -> list[int]:
    """Number of accepted words of each length ``0 .. up_to``."""
    if d.alphabet ** up_to < 2 ** 62:
        return [int(c) for c in kernels.dfa_count_by_length(d.trans, d.accepting, d.start, up_to)]
    # int64 could overflow: exact path counting with Python integers
    cur = {d.start: 1}
    counts = []
    for _ in range(up_to + 1):
        counts.append(sum(c for s, c in cur.items() if d.accepting[s]))
        nxt: dict = {}
        for s, c in cur.items():
            for t in d.trans[s].tolist():
                if t >= 0:
                    nxt[t] = nxt.get(t, 0) + c
        cur = nxt
    return counts


# -- word differences ---------------------------------------------------------

def _pres(pres: Presentation, order: Optional[LetterOrder]) -> Presentation:
    return pres if order is None or order == pres.order else pres.with_order(order)


def _close(diffs: set, pres: Presentation) -> frozenset:
    diffs = set(diffs) | {()} | {(c,) for c in range(2 * pres.n)}
    diffs |= {rho(inverse(d), pres) for d in diffs}
    return frozenset(diffs)


def _pair_differences(u: Word, v: Word, pres: Presentation) -> Iterable[Word]:
    for i in range(1, max(len(u), len(v)) + 1):
        yield rho(inverse(u[:i]) + v[:i], pres)


def normal_forms_up_to(pres: Presentation, depth: int) -> list[Word]:
    """All words of W with length ``<= depth``, grown letter by letter (W is prefix-closed)."""
    out = [()]
    level = [()]
    for _ in range(depth):
        nxt = []
        for w in level:
            for g in range(2 * pres.n):
                if w and w[-1] == g ^ 1:
                    continue
                x = w + (g,)
                if rho(x, pres) == x:
                    nxt.append(x)
        out.extend(nxt)
        level = nxt
    return out


def collect_word_differences(pres: Presentation, order: Optional[LetterOrder] = None,
                             depth: int = 4) -> frozenset:
    """Differences ``rho(w(i)^-1 w'(i))`` for ``w`` in W, ``|w| <= depth``, ``w' = rho(w g)``.

    Always contains ``ε`` and every single letter, and is closed under inversion.
    """
    p = _pres(pres, order)
    if depth <= 0:
        return frozenset({()})
    diffs = set()
    for w in normal_forms_up_to(p, depth):
        for g in range(2 * p.n):
            diffs.update(_pair_differences(w, rho(w + (g,), p), p))
    return _close(diffs, p)


def collect_geodesic_differences(pres: Presentation, order: Optional[LetterOrder] = None,
                                 depth: int = 4) -> frozenset:
    """Differences between each minimal non-geodesic word of length ``<= depth + 1``
    and its FFTP witness."""
    p = _pres(pres, order)
    diffs = set()
    level = [()]
    for _ in range(depth + 1):
        nxt = []
        for v in level:
            for g in range(2 * p.n):
                x = v + (g,)
                if minimal_nongeodesic_prefix(x, p) is None:
                    nxt.append(x)
                    continue
                wit = fftp_witness(x, p)
                diffs.update(_pair_differences(x, wit.word, p))
        level = nxt
    return _close(diffs, p)


# -- subset construction -------------------------------------------------------

class _Tables:
    def __init__(self, pres: Presentation, diffs: frozenset):
        self.pres = pres
        self.diffs = sorted(diffs, key=lambda d: (len(d), d))
        index = {d: i for i, d in enumerate(self.diffs)}
        self.eps = index[()]
        k = 2 * pres.n
        D = len(self.diffs)
        # move[d, g, h] = rho(g^-1 d h); pad[d, g] = rho(g^-1 d); -1 outside the set
        self.move = np.full((D, k, k), -1, dtype=np.int64)
        self.pad = np.full((D, k), -1, dtype=np.int64)
        for i, d in enumerate(self.diffs):
            for g in range(k):
                left = (g ^ 1,) + d
                self.pad[i, g] = index.get(rho(left, pres), -1)
                for h in range(k):
                    self.move[i, g, h] = index.get(rho(left + (h,), pres), -1)


def _subset_dfa(pres: Presentation, diffs: frozenset, lex: bool, max_states: int) -> Dfa:
    tab = _Tables(pres, diffs)
    k = 2 * pres.n
    rank = pres.rank
    eps = tab.eps
    move, pad = tab.move.tolist(), tab.pad.tolist()

    def rel(h: int, g: int) -> int:
        if not lex:
            return _SAME
        return LT if rank[h] < rank[g] else (EQ if h == g else GT)

    rel_table = [[rel(h, g) for h in range(k)] for g in range(k)]
    start = frozenset({(eps, EQ)})
    ids = {start: 0}
    order = [start]
    edges: list = []
    queue = deque([start])
    while queue:
        state = queue.popleft()
        row = [-1] * k
        for g in range(k):
            new = set()
            dead = False
            for d, kind in state:
                p = pad[d][g]
                if p >= 0:
                    if p == eps:
                        dead = True
                        break
                    new.add((p, SHORT))
                if kind == SHORT:
                    continue
                mv = move[d][g]
                rg = rel_table[g]
                for h in range(k):
                    t = mv[h]
                    if t < 0:
                        continue
                    nk = rg[h] if kind == EQ else kind
                    if t == eps and nk == LT:
                        dead = True
                        break
                    new.add((t, nk))
                if dead:
                    break
            if dead:
                continue
            key = frozenset(new)
            sid = ids.get(key)
            if sid is None:
                if len(ids) >= max_states:
                    raise StateBudgetExceeded(
                        f"subset construction exceeded {max_states} states")
                sid = ids[key] = len(order)
                order.append(key)
                queue.append(key)
            row[g] = sid
        edges.append(row)
    trans = np.array(edges, dtype=np.int64).reshape(len(order), k)
    return Dfa(trans, 0, np.ones(len(order), dtype=bool))


# -- minimization ----------------------------------------------------------------

def minimize(d: Dfa) -> Dfa:
    """Hopcroft minimization; the result is trimmed to live reachable states."""
    S, A = d.trans.shape
    sink = S
    full = np.full((S + 1, A), sink, dtype=np.int64)
    full[:S] = np.where(d.trans >= 0, d.trans, sink)
    acc = np.zeros(S + 1, dtype=bool)
    acc[:S] = d.accepting
    inv_edges = [[[] for _ in range(S + 1)] for _ in range(A)]
    for s in range(S + 1):
        for a in range(A):
            inv_edges[a][full[s, a]].append(s)

    F = frozenset(np.flatnonzero(acc).tolist())
    NF = frozenset(range(S + 1)) - F
    partition = [blk for blk in (F, NF) if blk]
    work = [min(partition, key=len)] if len(partition) == 2 else list(partition)
    block_of = {}
    for i, blk in enumerate(partition):
        for s in blk:
            block_of[s] = i
    while work:
        splitter = work.pop()
        for a in range(A):
            X = set()
            for t in splitter:
                X.update(inv_edges[a][t])
            if not X:
                continue
            touched: dict = {}
            for s in X:
                touched.setdefault(block_of[s], set()).add(s)
            for bi, inter in touched.items():
                Y = partition[bi]
                if len(inter) == len(Y):
                    continue
                diff = Y - inter
                inter = frozenset(inter)
                partition[bi] = inter
                partition.append(diff)
                nb = len(partition) - 1
                for s in diff:
                    block_of[s] = nb
                if Y in work:
                    work.remove(Y)
                    work.extend([inter, diff])
                else:
                    work.append(inter if len(inter) <= len(diff) else diff)

    # renumber reachable live blocks in BFS order from the start
    sink_block = block_of[sink]
    live = {block_of[s] for s in range(S + 1) if acc[s]}
    # blocks that can reach an accepting block
    rev: dict = {}
    for s in range(S + 1):
        for a in range(A):
            rev.setdefault(block_of[int(full[s, a])], set()).add(block_of[s])
    coreach = set(live)
    stack = list(live)
    while stack:
        b = stack.pop()
        for p in rev.get(b, ()):
            if p not in coreach:
                coreach.add(p)
                stack.append(p)
    rep = {}
    for s in range(S + 1):
        rep.setdefault(block_of[s], s)
    start_b = block_of[d.start]
    if start_b not in coreach:
        return Dfa(np.full((1, A), -1, dtype=np.int64), 0, np.zeros(1, dtype=bool))
    new_id = {start_b: 0}
    queue = deque([start_b])
    rows = []
    accepting = []
    while queue:
        b = queue.popleft()
        s = rep[b]
        row = []
        for a in range(A):
            tb = block_of[int(full[s, a])]
            if tb == sink_block and not acc[sink] or tb not in coreach:
                row.append(-1)
                continue
            if tb not in new_id:
                new_id[tb] = len(new_id)
                queue.append(tb)
            row.append(new_id[tb])
        rows.append(row)
        accepting.append(bool(acc[s]))
    return Dfa(np.array(rows, dtype=np.int64).reshape(len(rows), A), 0, np.array(accepting))


# -- verification ----------------------------------------------------------------

def all_words_array(k: int, depth: int) -> tuple[np.ndarray, np.ndarray, list]:
    """Every word of length ``<= depth`` as a padded array, with lengths and tuples."""
    rows, lens, tuples = [], [], []
    for L in range(depth + 1):
        W = kernels.words_array(k, L)
        pad = np.zeros((W.shape[0], depth), dtype=np.int64)
        pad[:, :L] = W
        rows.append(pad)
        lens.append(np.full(W.shape[0], L, dtype=np.int64))
        tuples.extend(map(tuple, W.tolist()))
    return np.concatenate(rows), np.concatenate(lens), tuples


def verify_acceptor(d: Dfa, pres: Presentation, kind: str, depth: int) -> list:
    """Words of length ``<= depth`` on which ``d`` and the membership oracle disagree."""
    oracle = in_W if kind == SHORTLEX else is_geodesic
    words, lens, tuples = all_words_array(2 * pres.n, depth)
    got = d.accepts_batch(words, lens)
    return [w for w, a in zip(tuples, got.tolist()) if a != oracle(w, pres)]


def build_acceptor(pres: Presentation, kind: str = SHORTLEX, order: Optional[LetterOrder] = None,
                   max_states: int = 100_000, verify_depth: int = 6,
                   diff_depth: Optional[int] = None) -> Dfa:
    """Build, minimize and verify an acceptor.

    Raises :class:`StateBudgetExceeded` if the construction grows past
    ``max_states`` and :class:`AcceptorMismatch` if verification to
    ``verify_depth`` finds a disagreement.
    """
    if kind not in (SHORTLEX, GEODESIC):
        raise ValueError(f"unknown acceptor kind {kind!r}")
    p = _pres(pres, order)
    depth = verify_depth if diff_depth is None else diff_depth
    if kind == SHORTLEX:
        diffs = collect_word_differences(p, depth=depth)
    else:
        diffs = collect_geodesic_differences(p, depth=depth)
    dfa = minimize(_subset_dfa(p, diffs, kind == SHORTLEX, max_states))
    if verify_depth > 0:
        bad = verify_acceptor(dfa, p, kind, verify_depth)
        if bad:
            raise AcceptorMismatch(bad)
    return dfa


def build_shortlex_acceptor(pres: Presentation, order: Optional[LetterOrder] = None,
                            max_states: int = 100_000, verify_depth: int = 6) -> Dfa:
    return build_acceptor(pres, SHORTLEX, order, max_states, verify_depth)


def build_geodesic_acceptor(pres: Presentation, order: Optional[LetterOrder] = None,
                            max_states: int = 100_000, verify_depth: int = 6) -> Dfa:
    return build_acceptor(pres, GEODESIC, order, max_states, verify_depth)


def dumps(d: Dfa, pres: Presentation) -> str:
    return json.dumps(d.to_json(pres), ensure_ascii=False)


__all__ = [
    "AcceptorMismatch", "Dfa", "GEODESIC", "SHORTLEX", "StateBudgetExceeded",
    "build_acceptor", "build_geodesic_acceptor", "build_shortlex_acceptor",
    "collect_geodesic_differences", "collect_word_differences", "dfa_count_by_length",
    "dumps", "minimize", "normal_forms_up_to", "verify_acceptor",
]
