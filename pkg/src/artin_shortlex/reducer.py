"""Shortlex reduction for Artin groups of large type.

The reduction map ``rho`` is built one letter at a time: appending a letter
``g`` to a word ``w`` that is already critically reduced either cancels
freely, triggers one rightward length-reducing chain of tau-moves (followed
by a free cancellation with ``g``), triggers one leftward lex-reducing chain,
or leaves ``wg`` reduced.

A chain is described by a :class:`Factorization`: the factors are maximal
pieces of the word over successive generator pairs, each pair sharing exactly
one generator with the next.  Chains are searched exhaustively from the
``g`` end of the word, so the optimal one (rightmost start for rightward
chains, leftmost end for leftward ones) is found directly.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .dihedral import _classify, _tau
from .words import LetterOrder, Presentation, Word, is_freely_reduced, names

log = logging.getLogger(__name__)

RIGHTWARD = "rightward"
LEFTWARD = "leftward"


class ChainError(RuntimeError):
    """A chain word that should be critical is not: an internal invariant broke."""


@dataclass(frozen=True)
class Factorization:
    """``alpha . factors . beta`` with factors stored in word order.

    For a rightward chain the first term is ``factors[0]``; for a leftward
    chain it is ``factors[-1]``.
    """

    direction: str
    alpha: Word
    factors: tuple
    beta: Word
    pairs: tuple

    @property
    def k(self) -> int:
        return len(self.factors)

    def word(self) -> Word:
        out = self.alpha
        for f in self.factors:
            out += f
        return out + self.beta

    def chain(self) -> list[tuple[int, Word, tuple]]:
        """(start position, factor, pair) in chain order, first term first."""
        pos = len(self.alpha)
        items = []
        for f, pr in zip(self.factors, self.pairs):
            items.append((pos, f, pr))
            pos += len(f)
        return items if self.direction == RIGHTWARD else items[::-1]


@dataclass(frozen=True)
class TraceStep:
    position: int
    before: Word
    after: Word


@dataclass(frozen=True)
class ReductionTrace:
    source: Word
    steps: tuple
    final_word: Word

    def replay(self) -> Word:
        w = self.source
        for st in self.steps:
            if w[st.position:st.position + len(st.before)] != st.before:
                raise ChainError(f"trace step does not match at position {st.position}")
            w = w[:st.position] + st.after + w[st.position + len(st.before):]
        return w

    def to_json(self, pres: Presentation) -> list[dict]:
        return [{"position": s.position,
                 "before": pres.format_word(s.before),
                 "after": pres.format_word(s.after)} for s in self.steps]

    def dumps(self, pres: Presentation) -> str:
        return json.dumps({"source": pres.format_word(self.source),
                           "steps": self.to_json(pres),
                           "final": pres.format_word(self.final_word)}, ensure_ascii=False)


def maximal_2gen_suffix(w: Sequence[int]) -> tuple[Word, Word, Optional[tuple]]:
    """Split ``w`` as ``prefix . suffix`` with ``suffix`` the longest suffix on at most two generators."""
    w = tuple(w)
    seen: list[int] = []
    s = len(w)
    while s > 0:
        nm = w[s - 1] >> 1
        if nm not in seen:
            if len(seen) == 2:
                break
            seen.append(nm)
        s -= 1
    pair = tuple(sorted(seen)) if len(seen) == 2 else (tuple(seen) if seen else None)
    return w[:s], w[s:], pair


def _pair(a: int, b: int) -> tuple:
    return (a, b) if a < b else (b, a)


# -- chain search ------------------------------------------------------------

def _rightward_chains(w: Word, g: int, pres: Presentation) -> Iterator[list]:
    """All rightward length-reducing chains for ``w g`` with tail ``g``.

    Each chain is a list of ``(start, end, pair)`` for the factors, first term
    first.  Factor ``l > 1`` is ``w[start:end]``; its chain word is the last
    letter of the previous tau-image followed by that factor.
    """
    matrix = pres.matrix
    n = pres.n

    def level(end: int, target: int, nxt: Optional[tuple], nxt_first: int) -> Iterator[list]:
        if end <= 0:
            return
        tn = target >> 1
        last_name = w[end - 1] >> 1
        if nxt is None:
            if last_name != tn:
                cands = [_pair(tn, last_name)]
            else:
                cands = [_pair(tn, o) for o in range(n) if o != tn]
        else:
            if last_name == tn or last_name in nxt:
                return
            P = _pair(tn, last_name)
            if nxt_first in P:
                return
            cands = [P]
        for P in cands:
            m = matrix[P[0]][P[1]]
            if m is None:
                continue
            s = end - 1
            while s >= 0 and (w[s] >> 1) in P:
                seg = w[s:end]
                if end - s >= 2:
                    t = _tau(seg, m)
                    if t is not None and t[-1] == target:
                        yield [(s, end, P)]
                fn = w[s] >> 1
                hn = P[0] if fn == P[1] else P[1]
                if s > 0:
                    for h in (2 * hn, 2 * hn + 1):
                        t = _tau((h,) + seg, m)
                        if t is not None and t[-1] == target:
                            for sub in level(s, h, P, fn):
                                yield sub + [(s, end, P)]
                s -= 1

    yield from level(len(w), g ^ 1, None, -1)


def _leftward_chains(x: Word, pres: Presentation, rank: Sequence[int]) -> Iterator[list]:
    """All leftward lex-reducing chains whose first term is a suffix of ``x``.

    Chains are lists of ``(start, end, pair)``, first term (rightmost) first.
    """
    matrix = pres.matrix
    L = len(x)

    def extend(chain: list, end: int, h: int, prev: tuple, prev_first: int) -> Iterator[list]:
        if end <= 0:
            return
        hn = h >> 1
        last_name = x[end - 1] >> 1
        if last_name == hn or last_name in prev:
            return
        P = _pair(hn, last_name)
        if prev_first in P:
            return
        m = matrix[P[0]][P[1]]
        if m is None:
            return
        s = end - 1
        while s >= 0 and (x[s] >> 1) in P:
            t = _tau(x[s:end] + (h,), m)
            if t is not None:
                c2 = chain + [(s, end, P)]
                if rank[t[0]] < rank[x[s]]:
                    yield c2
                yield from extend(c2, s, t[0], P, x[s] >> 1)
            s -= 1

    seen: set = set()
    s = L - 1
    while s >= 0:
        seen.add(x[s] >> 1)
        if len(seen) > 2:
            break
        if len(seen) == 2:
            P = tuple(sorted(seen))
            m = matrix[P[0]][P[1]]
            if m is not None:
                t = _tau(x[s:], m)
                if t is not None:
                    chain = [(s, L, P)]
                    if rank[t[0]] < rank[x[s]]:
                        yield chain
                    yield from extend(chain, s, t[0], P, x[s] >> 1)
        s -= 1


def _to_factorization(direction: str, x: Word, chain: list, beta: Word) -> Factorization:
    ordered = chain if direction == RIGHTWARD else chain[::-1]
    start = ordered[0][0]
    end = ordered[-1][1]
    return Factorization(direction, x[:start],
                         tuple(x[s:e] for s, e, _ in ordered), x[end:end] + beta,
                         tuple(P for _, _, P in ordered))


def rightward_factorizations(w: Sequence[int], g: int, pres: Presentation) -> list[Factorization]:
    """Every rightward length-reducing factorization of ``w g`` (tail ``g``)."""
    w = tuple(w)
    return [_to_factorization(RIGHTWARD, w, c, (g,)) for c in _rightward_chains(w, g, pres)]


def leftward_factorizations(w: Sequence[int], g: int, pres: Presentation,
                            order: Optional[LetterOrder] = None) -> list[Factorization]:
    """Every leftward lex-reducing factorization of ``w g`` whose first term ends at ``g``."""
    x = tuple(w) + (g,)
    rank = (order or pres.order).rank
    return [_to_factorization(LEFTWARD, x, c, ()) for c in _leftward_chains(x, pres, rank)]


def find_rightward_length_reducing(w: Sequence[int], g: int,
                                   pres: Presentation) -> Optional[Factorization]:
    """The optimal rightward length-reducing factorization of ``w g``, or None.

    Optimal means the first term starts as far right as possible.
    """
    w = tuple(w)
    if w and w[-1] == g ^ 1:
        raise ValueError("w g is not freely reduced")
    best = None
    for c in _rightward_chains(w, g, pres):
        if best is None or c[0][0] > best[0][0]:
            best = c
    return None if best is None else _to_factorization(RIGHTWARD, w, best, (g,))


def find_leftward_lex_reducing(w: Sequence[int], g: int, pres: Presentation,
                               order: Optional[LetterOrder] = None) -> Optional[Factorization]:
    """The optimal leftward lex-reducing factorization of ``w g``, or None.

    Optimal means the last factor reaches as far left as possible.
    """
    x = tuple(w) + (g,)
    if len(x) >= 2 and x[-2] == g ^ 1:
        raise ValueError("w g is not freely reduced")
    rank = (order or pres.order).rank
    best = None
    for c in _leftward_chains(x, pres, rank):
        if best is None or c[-1][0] < best[-1][0]:
            best = c
    return None if best is None else _to_factorization(LEFTWARD, x, best, ())


def apply_factorization(f: Factorization, pres: Presentation) -> ReductionTrace:
    """Run the chain of tau-moves described by ``f``.

    A rightward chain whose last tau-image ends in the inverse of the first
    letter of ``beta`` is followed by that free cancellation.
    """
    src = f.word()
    steps = []
    h = None
    if f.direction == RIGHTWARD:
        out = list(f.alpha)
        for idx, (pos, fac, P) in enumerate(f.chain()):
            u = fac if idx == 0 else (h,) + fac
            t = _tau(u, pres.matrix[P[0]][P[1]])
            if t is None:
                raise ChainError(f"rightward chain word {u} is not critical")
            steps.append(TraceStep(pos if idx == 0 else pos - 1, u, t))
            h = t[-1]
            out.extend(t[:-1])
        out.append(h)
        tail = f.beta
        if tail and tail[0] == h ^ 1:
            steps.append(TraceStep(len(out) - 1, (h, tail[0]), ()))
            out.pop()
            tail = tail[1:]
        out.extend(tail)
    else:
        suffix: list = []
        chain = f.chain()
        for idx, (pos, fac, P) in enumerate(chain):
            u = fac if idx == 0 else fac + (h,)
            t = _tau(u, pres.matrix[P[0]][P[1]])
            if t is None:
                raise ChainError(f"leftward chain word {u} is not critical")
            steps.append(TraceStep(pos, u, t))
            h = t[0]
            if idx < len(chain) - 1:
                suffix = list(t[1:]) + suffix
            else:
                suffix = list(t) + suffix
        out = list(f.alpha) + suffix + list(f.beta)
    trace = ReductionTrace(src, tuple(steps), tuple(out))
    return trace


# -- rho -----------------------------------------------------------------------

def rho_step_trace(w: Sequence[int], g: int, pres: Presentation,
                   order: Optional[LetterOrder] = None) -> tuple[Word, Optional[ReductionTrace]]:
    w = tuple(w)
    if w and w[-1] == g ^ 1:
        return w[:-1], ReductionTrace(w + (g,), (TraceStep(len(w) - 1, (w[-1], g), ()),), w[:-1])
    f = find_rightward_length_reducing(w, g, pres)
    if f is None:
        f = find_leftward_lex_reducing(w, g, pres, order)
    if f is None:
        return w + (g,), None
    tr = apply_factorization(f, pres)
    return tr.final_word, tr


def rho_step(w: Sequence[int], g: int, pres: Presentation,
             order: Optional[LetterOrder] = None) -> Word:
    """Reduce ``w g`` for ``w`` already reduced."""
    if order is not None and order != pres.order:
        pres = pres.with_order(order)
    return _reducer(pres).step(tuple(w), g)


class _Reducer:
    """Memoizing driver for one presentation (and letter order)."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.cache: dict = {(): ()}
        self.step_cache: dict = {}

    def step(self, w: Word, g: int) -> Word:
        key = (w, g)
        r = self.step_cache.get(key)
        if r is None:
            r = rho_step_trace(w, g, self.pres)[0]
            self.step_cache[key] = r
        return r

    def rho(self, w: Word) -> Word:
        cache = self.cache
        r = cache.get(w)
        if r is not None:
            return r
        # walk back to the longest cached prefix
        i = len(w) - 1
        while i > 0 and w[:i] not in cache:
            i -= 1
        r = cache[w[:i]]
        for j in range(i, len(w)):
            r = self.step(r, w[j])
            cache[w[:j + 1]] = r
        return r


@lru_cache(maxsize=64)
def _reducer(pres: Presentation) -> _Reducer:
    return _Reducer(pres)


def clear_caches() -> None:
    """Drop memoized reductions and tau-images (for cold timings and memory)."""
    _reducer.cache_clear()
    _tau.cache_clear()
    _classify.cache_clear()


def rho(w: Sequence[int], pres: Presentation, order: Optional[LetterOrder] = None) -> Word:
    """Shortlex normal form of ``w``."""
    if order is not None and order != pres.order:
        pres = pres.with_order(order)
    return _reducer(pres).rho(tuple(w))


def rho_trace(w: Sequence[int], pres: Presentation,
              order: Optional[LetterOrder] = None) -> ReductionTrace:
    """``rho`` with every tau-move and cancellation recorded.

    Step positions index the working word ``reduced_prefix + unread_letters``,
    so :meth:`ReductionTrace.replay` on ``w`` reproduces ``rho(w)``.
    """
    if order is not None and order != pres.order:
        pres = pres.with_order(order)
    w = tuple(w)
    cur: Word = ()
    steps: list[TraceStep] = []
    for g in w:
        cur, tr = rho_step_trace(cur, g, pres)
        if tr is not None:
            steps.extend(tr.steps)
    return ReductionTrace(w, tuple(steps), cur)


def in_W(w: Sequence[int], pres: Presentation, order: Optional[LetterOrder] = None) -> bool:
    w = tuple(w)
    return is_freely_reduced(w) and rho(w, pres, order) == w


def is_critically_reduced(w: Sequence[int], pres: Presentation,
                          order: Optional[LetterOrder] = None) -> bool:
    """Membership in W straight from its definition, without running ``rho``.

    ``w`` must be freely reduced and no split ``w[:i] . w[i] ...`` may admit a
    rightward length-reducing chain with tail ``w[i]`` or a leftward
    lex-reducing chain whose first term ends at ``w[i]``.
    """
    w = tuple(w)
    if not is_freely_reduced(w):
        return False
    rank = (order or pres.order).rank
    for i in range(1, len(w)):
        if next(_rightward_chains(w[:i], w[i], pres), None) is not None:
            return False
    for i in range(1, len(w) + 1):
        if next(_leftward_chains(w[:i], pres, rank), None) is not None:
            return False
    return True


__all__ = [
    "ChainError", "Factorization", "LEFTWARD", "RIGHTWARD", "ReductionTrace", "TraceStep",
    "apply_factorization", "find_leftward_lex_reducing", "find_rightward_length_reducing",
    "in_W", "is_critically_reduced", "leftward_factorizations", "maximal_2gen_suffix", "names",
    "rho", "rho_step", "rho_trace", "rightward_factorizations",
]
