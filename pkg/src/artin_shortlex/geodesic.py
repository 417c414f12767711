"""Geodesic lengths, equality, fellow travelling and FFTP witnesses."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .dihedral import _tau, tau_moves
from .reducer import maximal_2gen_suffix, rho
from .words import LetterOrder, Presentation, Word, inverse

log = logging.getLogger(__name__)

# methods reported by fftp_witness, in order of preference
FREE_REDUCTION = "free-reduction"
DIHEDRAL = "dihedral"
RECURSIVE = "recursive"
TAU_SEARCH = "tau-search"
NORMAL_FORM = "normal-form"
FALLBACK_METHODS = (TAU_SEARCH, NORMAL_FORM)


def _pres(pres: Presentation, order: Optional[LetterOrder]) -> Presentation:
    return pres if order is None or order == pres.order else pres.with_order(order)


def geodesic_length(w: Sequence[int], pres: Presentation, order: Optional[LetterOrder] = None) -> int:
    return len(rho(w, _pres(pres, order)))


def is_geodesic(w: Sequence[int], pres: Presentation, order: Optional[LetterOrder] = None) -> bool:
    return len(w) == geodesic_length(w, pres, order)


def equal_in_G(u: Sequence[int], v: Sequence[int], pres: Presentation,
               order: Optional[LetterOrder] = None) -> bool:
    p = _pres(pres, order)
    return rho(u, p) == rho(v, p)


def fellow_travel_distance(u: Sequence[int], v: Sequence[int], pres: Presentation,
                           order: Optional[LetterOrder] = None) -> int:
    """Largest ``|u(i)^-1 v(i)|_G`` over all ``i``; prefixes saturate at the full word."""
    p = _pres(pres, order)
    u, v = tuple(u), tuple(v)
    best = 0
    for i in range(1, max(len(u), len(v)) + 1):
        d = len(rho(inverse(u[:i]) + v[:i], p))
        if d > best:
            best = d
    return best


def minimal_nongeodesic_prefix(w: Sequence[int], pres: Presentation,
                               order: Optional[LetterOrder] = None) -> Optional[int]:
    """Length of the shortest non-geodesic prefix of ``w``, or None if ``w`` is geodesic."""
    p = _pres(pres, order)
    w = tuple(w)
    for i in range(1, len(w) + 1):
        if len(rho(w[:i], p)) < i:
            return i
    return None


# -- retargeting -------------------------------------------------------------

def _dihedral_retarget(u: Word, t: int, m: int) -> list[Word]:
    """Every single tau-move on a suffix of the 2-generator word ``u`` ending in ``t``."""
    out = []
    for s in range(len(u) - 2, -1, -1):
        r = _tau(u[s:], m)
        if r is not None and r[-1] == t:
            out.append(u[:s] + r)
    return out


def _suffix_pair(v: Word, t: int) -> Optional[tuple]:
    _, u, pair = maximal_2gen_suffix(v)
    if pair is None:
        return None
    if len(pair) == 1:
        a, b = pair[0], t >> 1
        return None if a == b else (min(a, b), max(a, b))
    return pair


def _retarget(v: Word, t: int, pres: Presentation, depth: int) -> tuple[list, bool]:
    if not v:
        return [], False
    if v[-1] == t:
        return [v], False
    pair = _suffix_pair(v, t)
    if pair is None or (t >> 1) not in pair:
        return [], False
    m = pres.m(*pair)
    if m is None:
        return [], False
    alpha, u, _ = maximal_2gen_suffix(v)
    out = [alpha + r for r in _dihedral_retarget(u, t, m)]
    if out or not alpha or depth <= 0:
        return out, False
    # lengthen the 2-generator suffix by retargeting the prefix into the pair
    for y in range(2 * pres.n):
        if (y >> 1) not in pair or u[0] == y ^ 1:
            continue
        for a2 in _retarget(alpha, y, pres, depth - 1)[0]:
            a1, u1, p1 = maximal_2gen_suffix(a2 + u)
            if p1 == pair:
                out.extend(a1 + r for r in _dihedral_retarget(u1, t, m))
        if out:
            break
    return out, True


def retarget(v: Sequence[int], t: int, pres: Presentation, depth: int = 8) -> list[Word]:
    """Geodesics equal to geodesic ``v``, of the same length, ending in letter ``t``.

    Built from tau-moves: a move on a critical suffix of the maximal
    2-generator suffix, or, failing that, a recursive retargeting of the
    prefix to lengthen that suffix first.  Returns every candidate found
    (possibly none).
    """
    return _retarget(tuple(v), t, pres, depth)[0]


def _tau_neighbors(w: Word, pres: Presentation):
    """Words one tau-move away from ``w`` (any finite pair, any 2-generator subword)."""
    for i, j in pres.finite_pairs():
        m = pres.m(i, j)
        ok = {i, j}
        s = 0
        L = len(w)
        while s < L:
            if (w[s] >> 1) not in ok:
                s += 1
                continue
            e = s
            while e < L and (w[e] >> 1) in ok:
                e += 1
            seg = w[s:e]
            for _, _, r in tau_moves(seg, m):
                yield w[:s] + r + w[e:]
            s = e


def tau_search(v: Sequence[int], t: int, pres: Presentation, node_cap: int = 20000) -> list[Word]:
    """Bounded BFS over tau-moves from ``v`` for words ending in ``t``."""
    v = tuple(v)
    seen = {v}
    queue = deque([v])
    found = []
    while queue and len(seen) < node_cap:
        w = queue.popleft()
        if w[-1] == t:
            found.append(w)
            continue
        for x in _tau_neighbors(w, pres):
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return found


@dataclass(frozen=True)
class FftpWitness:
    """A strictly shorter word equal to the input, with its fellow-travel distance."""

    word: Word
    distance: int
    method: str
    prefix_length: int

    @property
    def is_fallback(self) -> bool:
        return self.method in FALLBACK_METHODS

    def to_json(self, pres: Presentation) -> dict:
        return {"word": pres.format_word(self.word), "length": len(self.word),
                "distance": self.distance, "method": self.method,
                "prefix_length": self.prefix_length}


def fftp_witness(w: Sequence[int], pres: Presentation,
                 order: Optional[LetterOrder] = None) -> Optional[FftpWitness]:
    """Shorter word equal to ``w`` that fellow travels it, or None if ``w`` is geodesic.

    With ``v g`` the shortest non-geodesic prefix, ``v`` is rewritten by
    length-preserving tau-moves into a geodesic ending in ``g^-1``; dropping
    that letter against ``g`` gives the witness.
    """
    p = _pres(pres, order)
    w = tuple(w)
    k = minimal_nongeodesic_prefix(w, p)
    if k is None:
        return None
    v, g, rest = w[:k - 1], w[k - 1], w[k:]
    if v and v[-1] == g ^ 1:
        out = v[:-1] + rest
        return FftpWitness(out, fellow_travel_distance(w, out, p), FREE_REDUCTION, k)

    t = g ^ 1
    cands, recursed = _retarget(v, t, p, 8)
    method = RECURSIVE if recursed else DIHEDRAL
    if not cands:
        method = TAU_SEARCH
        cands = tau_search(v, t, p)
    if not cands:
        method = NORMAL_FORM
        cands = [rho(v + (g,), p) + (t,)]
    if method in FALLBACK_METHODS:
        log.info("fftp fallback %s for %s", method, p.format_word(w))
    best = None
    for c in cands:
        out = c[:-1] + rest
        d = fellow_travel_distance(w, out, p)
        if best is None or d < best.distance:
            best = FftpWitness(out, d, method, k)
    return best


__all__ = [
    "FftpWitness", "equal_in_G", "fellow_travel_distance", "fftp_witness",
    "geodesic_length", "is_geodesic", "minimal_nongeodesic_prefix",
    "retarget", "tau_search",
]
