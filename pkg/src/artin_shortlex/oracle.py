"""Independent equality oracle built only from elementary moves.

Nothing here calls the normal-form reducer except the cross-checking
harnesses (:func:`enumerate_ball`, :func:`certify_ball`), which compare the
reducer against oracle verdicts.  The search itself never consults it.
"""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .words import LetterOrder, Presentation, Word, alternating, words_up_to

log = logging.getLogger(__name__)

DEFAULT_SLACK = 4
DEFAULT_NODE_CAP = 10 ** 6


class BudgetExceeded(RuntimeError):
    """An oracle search or harness ran out of its node or length budget."""


@dataclass(frozen=True)
class Equal:
    """Certificate that two words represent the same element."""

    path_length: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Unknown:
    """Inconclusive search; never a claim of inequality."""

    expanded: int

    def __bool__(self) -> bool:
        return False


OracleResult = Union[Equal, Unknown]


def relator_halves(pres: Presentation, inverse_halves: bool = False) -> list[tuple[Word, Word]]:
    """Ordered pairs ``(left, right)`` of relator halves, both directions.

    With ``inverse_halves`` the swaps of the inverted halves are included too;
    these are products of the plain moves (conjugating by insertions), so the
    equivalence classes are unchanged.
    """
    out = []
    for i, j in pres.finite_pairs():
        m = pres.m(i, j)
        signs = (0, 1) if inverse_halves else (0,)
        for s in signs:
            a, b = 2 * i + s, 2 * j + s
            u, v = alternating(a, b, m), alternating(b, a, m)
            out.append((u, v))
            out.append((v, u))
    return out


def _neighbors(w: Word, letters: Sequence[int], halves, max_len: int) -> set:
    out = set()
    L = len(w)
    for i in range(L - 1):
        if w[i] ^ 1 == w[i + 1]:
            out.add(w[:i] + w[i + 2:])
    if L + 2 <= max_len:
        for i in range(L + 1):
            head, tail = w[:i], w[i:]
            for g in letters:
                out.add(head + (g, g ^ 1) + tail)
    for left, right in halves:
        m = len(left)
        first = left[0]
        for p in range(L - m + 1):
            if w[p] == first and w[p:p + m] == left:
                out.add(w[:p] + right + w[p + m:])
    return out


def elementary_neighbors(w: Sequence[int], pres: Presentation, max_len: int,
                         inverse_halves: bool = False) -> set:
    """Words one elementary move away from ``w`` with length ``<= max_len``.

    Moves: insert ``g g^-1`` anywhere, delete an adjacent inverse pair, or
    swap an occurrence of a relator half for the other half.
    """
    w = tuple(w)
    if max_len < len(w):
        raise ValueError("max_len must be at least len(w)")
    letters = list(range(2 * pres.n))
    return _neighbors(w, letters, relator_halves(pres, inverse_halves), max_len)


def oracle_equal(u: Sequence[int], v: Sequence[int], pres: Presentation,
                 max_len: Optional[int] = None, node_cap: int = DEFAULT_NODE_CAP,
                 inverse_halves: bool = True) -> OracleResult:
    """Bidirectional BFS over elementary moves.

    Returns :class:`Equal` with the length of a shortest move path found, or
    :class:`Unknown` when the frontier dies out or ``node_cap`` expansions are
    spent.  Intermediate words never exceed ``max_len`` (default: the longer
    input plus four).
    """
    u, v = tuple(u), tuple(v)
    if u == v:
        return Equal(0)
    if max_len is None:
        max_len = max(len(u), len(v)) + DEFAULT_SLACK
    letters = list(range(2 * pres.n))
    halves = relator_halves(pres, inverse_halves)
    dist = ({u: 0}, {v: 0})
    frontier = ([u], [v])
    expanded = 0
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, theirs = dist[side], dist[1 - side]
        nxt = []
        best = None
        for w in frontier[side]:
            if expanded >= node_cap:
                return Unknown(expanded)
            expanded += 1
            d = mine[w] + 1
            for x in _neighbors(w, letters, halves, max_len):
                if x in mine:
                    continue
                mine[x] = d
                other = theirs.get(x)
                if other is not None:
                    total = d + other
                    if best is None or total < best:
                        best = total
                nxt.append(x)
        if best is not None:
            return Equal(best)
        frontier = (nxt, frontier[1]) if side == 0 else (frontier[0], nxt)
    return Unknown(expanded)


# -- ball harnesses ------------------------------------------------------------

def ball_labels(pres: Presentation, radius: int, inverse_halves: bool = True,
                jit: Optional[bool] = None) -> np.ndarray:
    """Component label of every word of length ``<= radius`` under elementary moves
    confined to that ball.  Indexing follows :mod:`artin_shortlex.kernels`."""
    return kernels.ball_components(2 * pres.n, radius, relator_halves(pres, inverse_halves), jit=jit)


def enumerate_ball(pres: Presentation, radius: int, order: Optional[LetterOrder] = None,
                   *, cross_check: bool = True, sample: int = 2, seed: int = 0,
                   node_cap: int = DEFAULT_NODE_CAP) -> dict:
    """Group all words of length ``<= radius`` by normal form.

    Returns ``{normal_form: class_size}``.  With ``cross_check`` up to
    ``sample`` members of each class are certified equal to the class's normal
    form by :func:`oracle_equal`; an Unknown is retried with a larger budget and
    logged, and raises :class:`BudgetExceeded` if it persists.
    """
    from .reducer import rho

    if order is not None:
        pres = pres.with_order(order)
    classes: dict = defaultdict(list)
    for w in words_up_to(list(range(2 * pres.n)), radius):
        classes[rho(w, pres)].append(w)
    if cross_check:
        rng = random.Random(seed)
        for nf, members in classes.items():
            picks = members if len(members) <= sample else rng.sample(members, sample)
            for w in picks:
                res = oracle_equal(w, nf, pres, node_cap=node_cap)
                if isinstance(res, Unknown):
                    log.warning("oracle Unknown for %s ~ %s; retrying with a larger budget",
                                pres.format_word(w), pres.format_word(nf))
                    res = oracle_equal(w, nf, pres, max_len=max(len(w), len(nf)) + 2 * DEFAULT_SLACK,
                                       node_cap=10 * node_cap)
                    if isinstance(res, Unknown):
                        raise BudgetExceeded(
                            f"could not certify {pres.format_word(w)} = {pres.format_word(nf)}")
    return {nf: len(members) for nf, members in classes.items()}


@dataclass
class CertificationReport:
    """Outcome of comparing normal-form classes with elementary-move components."""

    radius: int
    slack: int
    words: int = 0
    classes: int = 0
    merged: list = field(default_factory=list)      # same component, different normal form
    split: list = field(default_factory=list)       # same normal form, different component
    resolved: list = field(default_factory=list)    # split pairs later certified by oracle_equal
    not_reduced: list = field(default_factory=list)  # rho(w) longer than w, or not idempotent
    not_decreasing: list = field(default_factory=list)

    @property
    def unknowns(self) -> list:
        return [p for p in self.split if p not in self.resolved]

    @property
    def ok(self) -> bool:
        return not (self.merged or self.unknowns or self.not_reduced or self.not_decreasing)

    def to_json(self, pres: Presentation) -> dict:
        fmt = pres.format_word
        return {
            "radius": self.radius, "slack": self.slack, "words": self.words,
            "classes": self.classes, "ok": self.ok,
            "merged": [[fmt(a), fmt(b)] for a, b in self.merged],
            "unknown": [[fmt(a), fmt(b)] for a, b in self.unknowns],
            "retried": [[fmt(a), fmt(b)] for a, b in self.resolved],
            "not_reduced": [fmt(w) for w in self.not_reduced],
            "not_decreasing": [fmt(w) for w in self.not_decreasing],
        }


def certify_ball(pres: Presentation, radius: int, order: Optional[LetterOrder] = None,
                 slack: int = DEFAULT_SLACK, jit: Optional[bool] = None,
                 retry_node_cap: int = 5 * DEFAULT_NODE_CAP) -> CertificationReport:
    """Check that normal-form equality coincides with oracle equality.

    For each ``L <= radius`` the words of length ``<= L`` are partitioned by
    components of the elementary-move graph on the ball of radius
    ``L + slack``; this is exactly ``oracle_equal`` with
    ``max_len = max(|u|, |v|) + slack`` and no node cap.  Pairs with equal
    normal forms but different components are retried with
    :func:`oracle_equal` at a larger budget and logged.  Also checks that
    ``rho`` is idempotent, never lengthens and is shortlex non-increasing.
    """
    from .reducer import rho
    from .words import Cmp, shortlex_cmp

    if order is not None:
        pres = pres.with_order(order)
    k = 2 * pres.n
    rep = CertificationReport(radius, slack)
    words = list(words_up_to(list(range(k)), radius))
    nf = {}
    for w in words:
        r = rho(w, pres)
        nf[w] = r
        if len(r) > len(w) or rho(r, pres) != r:
            rep.not_reduced.append(w)
        if shortlex_cmp(r, w, pres.order) is Cmp.GT:
            rep.not_decreasing.append(w)
    rep.words = len(words)
    rep.classes = len(set(nf.values()))

    seen_split = set()
    for L in range(radius + 1):
        R = L + slack
        labels = kernels.ball_components(k, R, relator_halves(pres, True), jit=jit)
        off = kernels.length_offsets(k, R)
        by_comp: dict = {}
        by_nf: dict = {}
        for w in words:
            if len(w) > L:
                continue
            c = int(labels[kernels.encode_word(w, k, off)])
            r = nf[w]
            prev = by_comp.setdefault(c, w)
            if nf[prev] != r:
                rep.merged.append((prev, w))
            first = by_nf.setdefault(r, w)
            if first is not w:
                c0 = int(labels[kernels.encode_word(first, k, off)])
                if c0 != c and (first, w) not in seen_split:
                    seen_split.add((first, w))
                    rep.split.append((first, w))
        del labels
    for a, b in rep.split:
        log.warning("elementary-move components split %s ~ %s at slack %d; retrying",
                    pres.format_word(a), pres.format_word(b), slack)
        res = oracle_equal(a, b, pres, max_len=max(len(a), len(b)) + 2 * slack,
                           node_cap=retry_node_cap)
        if isinstance(res, Equal):
            rep.resolved.append((a, b))
        else:
            log.warning("still Unknown after budget raise: %s ~ %s",
                        pres.format_word(a), pres.format_word(b))
    return rep
