"""Two-generator (dihedral) Artin groups: geodesics, critical words and tau.

Words here are over a single pair of generators.  The public functions take a
:class:`DihedralCtx`; the underscore helpers take the bare ``m`` and are what
the multi-generator reducer calls in its inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .words import (
    LetterOrder,
    Presentation,
    Word,
    free_reduce,
    inverse,
    is_freely_reduced,
)


@dataclass(frozen=True)
class DihedralCtx:
    x: int
    y: int
    m: Optional[int]

    def __post_init__(self):
        if self.x == self.y:
            raise ValueError("a dihedral context needs two distinct generators")
        if self.m is not None and self.m < 2:
            raise ValueError("m must be at least 2")

    @classmethod
    def of(cls, pres: Presentation, x: int = 0, y: int = 1) -> "DihedralCtx":
        return cls(x, y, pres.m(x, y))

    def check(self, w: Sequence[int]) -> None:
        for c in w:
            if c >> 1 not in (self.x, self.y):
                raise ValueError(f"letter {c} is outside the generator pair ({self.x}, {self.y})")


class Kind(Enum):
    UNSIGNED_POS_NEG = "unsigned+-"
    UNSIGNED_NEG_POS = "unsigned-+"
    POSITIVE_LEFT = "positive-left"
    POSITIVE_RIGHT = "positive-right"
    NEGATIVE_LEFT = "negative-left"
    NEGATIVE_RIGHT = "negative-right"


@dataclass(frozen=True)
class CriticalDecomposition:
    """A critical word split into its alternating ends and interior ``xi``.

    ``x, y`` name the generators of the leading alternating part (``x`` first)
    and ``z, t`` those of the trailing part (``t`` last).  For signed words only
    one end is alternating; the other pair is ``None``.
    """

    kind: Kind
    x: Optional[int]
    y: Optional[int]
    z: Optional[int]
    t: Optional[int]
    p: int
    n: int
    xi: Word
    word: Word

    @property
    def signed(self) -> bool:
        return self.kind not in (Kind.UNSIGNED_POS_NEG, Kind.UNSIGNED_NEG_POS)


# alternating products on generator names with a sign bit:
# _sub(a, b, r) = a b a b ... (r letters),  _paren(a, b, r) = ... a b (ends in b)
def _sub(a: int, b: int, r: int) -> Word:
    return tuple(a if i % 2 == 0 else b for i in range(r))


def _paren(a: int, b: int, r: int) -> Word:
    return tuple(b if (r - 1 - i) % 2 == 0 else a for i in range(r))


def runs(w: Sequence[int]) -> tuple[int, int]:
    """Uncapped lengths of the longest positive and negative alternating runs."""
    p = n = run = 0
    prev = -1
    for c in w:
        if prev >= 0 and (c ^ prev) & 1 == 0 and c >> 1 != prev >> 1:
            run += 1
        else:
            run = 1
        if c & 1:
            if run > n:
                n = run
        elif run > p:
            p = run
        prev = c
    return p, n


def _stats(w: Sequence[int], m: Optional[int]) -> tuple[int, int]:
    p, n = runs(w)
    if m is None:
        return p, n
    return min(p, m), min(n, m)


def p_stat(w: Sequence[int], ctx: DihedralCtx) -> int:
    ctx.check(w)
    return _stats(w, ctx.m)[0]


def n_stat(w: Sequence[int], ctx: DihedralCtx) -> int:
    ctx.check(w)
    return _stats(w, ctx.m)[1]


def _is_2geodesic(w: Sequence[int], m: Optional[int]) -> bool:
    if not is_freely_reduced(w):
        return False
    if m is None:
        return True
    p, n = _stats(w, m)
    return p + n <= m


def is_2geodesic(w: Sequence[int], ctx: DihedralCtx) -> bool:
    ctx.check(w)
    return _is_2geodesic(w, ctx.m)


def _delta(w: Sequence[int], m: int, a: int, b: int) -> Word:
    if m % 2 == 0:
        return tuple(w)
    # swap the names a <-> b, keep signs
    sa, sb = 2 * a, 2 * b
    return tuple((sb | (c & 1)) if c >> 1 == a else (sa | (c & 1)) for c in w)


def delta_map(w: Sequence[int], ctx: DihedralCtx) -> Word:
    if ctx.m is None:
        raise ValueError("delta is undefined for m = infinity")
    ctx.check(w)
    return _delta(w, ctx.m, ctx.x, ctx.y)


def _alt_run(w: Sequence[int], lo: int, hi: int, neg: int) -> bool:
    """True if w[lo:hi] is an alternating run whose letters all have sign bit ``neg``."""
    prev = -1
    for i in range(lo, hi):
        c = w[i]
        if c & 1 != neg:
            return False
        if prev >= 0 and c >> 1 == prev >> 1:
            return False
        prev = c
    return True


def _count_alt_windows(w: Sequence[int], m: int, neg: int) -> list[int]:
    return [i for i in range(len(w) - m + 1) if _alt_run(w, i, i + m, neg)]


@lru_cache(maxsize=1 << 20)
def _classify(w: Word, m: int) -> Optional[CriticalDecomposition]:
    L = len(w)
    if L < 2 or not is_freely_reduced(w):
        return None
    gens = {c >> 1 for c in w}
    if len(gens) != 2:
        return None
    p, n = _stats(w, m)
    if p + n != m:
        return None
    a, b = sorted(gens)

    def other(g: int) -> int:
        return b if g == a else a

    first, last = w[0], w[-1]
    if p and n:
        x, t = first >> 1, last >> 1
        if not first & 1:
            if _alt_run(w, 0, p, 0) and _alt_run(w, L - n, L, 1):
                return CriticalDecomposition(Kind.UNSIGNED_POS_NEG, x, other(x), other(t), t,
                                             p, n, w[p:L - n], w)
        else:
            if _alt_run(w, 0, n, 1) and _alt_run(w, L - p, L, 0):
                return CriticalDecomposition(Kind.UNSIGNED_NEG_POS, x, other(x), other(t), t,
                                             p, n, w[n:L - p], w)
        return None
    neg = 1 if n else 0
    starts = _count_alt_windows(w, m, neg)
    if len(starts) != 1:
        return None
    s = starts[0]
    if s == 0:
        x = first >> 1
        xi = w[m:]
        z = t = None
        if xi:
            z = xi[-1] >> 1
            t = other(z)
        kind = Kind.NEGATIVE_LEFT if neg else Kind.POSITIVE_LEFT
        return CriticalDecomposition(kind, x, other(x), z, t, m if not neg else 0,
                                     m if neg else 0, xi, w)
    if s == L - m:
        xi = w[:L - m]
        y = last >> 1
        z = xi[0] >> 1
        kind = Kind.NEGATIVE_RIGHT if neg else Kind.POSITIVE_RIGHT
        return CriticalDecomposition(kind, other(y), y, z, other(z), m if not neg else 0,
                                     m if neg else 0, xi, w)
    return None


def _tau_of(d: CriticalDecomposition, m: int) -> Word:
    a, b = sorted({c >> 1 for c in d.word})
    dxi = _delta(d.xi, m, a, b)
    x, y, z, t = d.x, d.y, d.z, d.t
    k = d.kind
    if k is Kind.UNSIGNED_POS_NEG:
        return _sub(2 * y + 1, 2 * x + 1, d.n) + dxi + _paren(2 * t, 2 * z, d.p)
    if k is Kind.UNSIGNED_NEG_POS:
        return _sub(2 * y, 2 * x, d.p) + dxi + _paren(2 * t + 1, 2 * z + 1, d.n)
    s = 1 if k in (Kind.NEGATIVE_LEFT, Kind.NEGATIVE_RIGHT) else 0
    if k in (Kind.POSITIVE_LEFT, Kind.NEGATIVE_LEFT):
        if not d.xi:
            return _sub(2 * y + s, 2 * x + s, m)
        return dxi + _paren(2 * z + s, 2 * t + s, m)
    return _sub(2 * t + s, 2 * z + s, m) + dxi


@lru_cache(maxsize=1 << 20)
def _tau(w: Word, m: int) -> Optional[Word]:
    """tau(w) if ``w`` is critical for the dihedral group of type ``m``, else None."""
    d = _classify(w, m)
    if d is None:
        return None
    return _tau_of(d, m)


def classify_critical(w: Sequence[int], ctx: DihedralCtx) -> Optional[CriticalDecomposition]:
    ctx.check(w)
    if ctx.m is None:
        return None
    return _classify(tuple(w), ctx.m)


def tau(w: Sequence[int], ctx: DihedralCtx) -> Word:
    ctx.check(w)
    t = None if ctx.m is None else _tau(tuple(w), ctx.m)
    if t is None:
        raise ValueError("tau is only defined on critical words")
    return t


def tau_moves(w: Sequence[int], m: Optional[int]) -> Iterator[tuple[int, int, Word]]:
    """Every single tau-move on a 2-generator word: ``(start, end, result)``."""
    if m is None:
        return
    w = tuple(w)
    L = len(w)
    for i in range(L):
        for k in range(i + 2, L + 1):
            t = _tau(w[i:k], m)
            if t is not None:
                yield i, k, w[:i] + t + w[k:]


def _critical_suffix_for(w: Word, target_last: int, m: int) -> Optional[Word]:
    """Shortest critical suffix ``v`` of ``w`` with ``tau(v)`` ending in ``target_last``."""
    for s in range(len(w) - 2, -1, -1):
        t = _tau(w[s:], m)
        if t is not None and t[-1] == target_last:
            return w[s:]
    return None


def _critical_prefix_for(w: Word, target_first: int, m: int) -> Optional[Word]:
    for e in range(2, len(w) + 1):
        t = _tau(w[:e], m)
        if t is not None and t[0] == target_first:
            return w[:e]
    return None


def critical_suffix_for_letter(w: Sequence[int], g: int, ctx: DihedralCtx) -> Optional[Word]:
    """Critical suffix ``v`` of geodesic ``w`` whose tau-image ends in ``g^-1``.

    Returns None exactly when ``wg`` is geodesic.  The shortest such suffix is
    returned.
    """
    w = tuple(w)
    ctx.check(w + (g,))
    if w and w[-1] == g ^ 1:
        raise ValueError("w g is not freely reduced")
    if _is_2geodesic(w + (g,), ctx.m):
        return None
    v = _critical_suffix_for(w, g ^ 1, ctx.m)
    if v is None:
        raise RuntimeError("non-geodesic w g without a matching critical suffix")
    return v


def critical_prefix_for_letter(g: int, w: Sequence[int], ctx: DihedralCtx) -> Optional[Word]:
    """Mirror of :func:`critical_suffix_for_letter` for ``g w``."""
    w = tuple(w)
    ctx.check((g,) + w)
    if w and w[0] == g ^ 1:
        raise ValueError("g w is not freely reduced")
    if _is_2geodesic((g,) + w, ctx.m):
        return None
    v = _critical_prefix_for(w, g ^ 1, ctx.m)
    if v is None:
        raise RuntimeError("non-geodesic g w without a matching critical prefix")
    return v


def _step2(w: Word, g: int, m: int, rank: Sequence[int]) -> Word:
    """Append ``g`` to a 2-generator normal form and renormalize."""
    if w and w[-1] == g ^ 1:
        return w[:-1]
    v = _critical_suffix_for(w, g ^ 1, m)
    if v is not None:
        t = _tau(v, m)
        return w[:len(w) - len(v)] + t[:-1]
    wg = w + (g,)
    # leftward lex reduction: the longest critical suffix whose tau starts lower
    for s in range(len(wg) - 1):
        t = _tau(wg[s:], m)
        if t is not None and rank[t[0]] < rank[wg[s]]:
            return wg[:s] + t
    return wg


def reduce_2gen(w: Sequence[int], ctx: DihedralCtx, order: LetterOrder) -> Word:
    """Shortlex-minimal representative of ``w`` in the dihedral Artin group."""
    ctx.check(w)
    if ctx.m is None:
        return free_reduce(w)
    out: Word = ()
    for g in w:
        out = _step2(out, g, ctx.m, order.rank)
    return out


def _retarget(w: Word, target_last: int, m: int) -> Optional[Word]:
    for s in range(len(w) - 2, -1, -1):
        t = _tau(w[s:], m)
        if t is not None and t[-1] == target_last:
            return w[:s] + t
    return None


def retarget_last_letter(w: Sequence[int], target_name: int, ctx: DihedralCtx) -> Word:
    """One tau-move on a critical suffix of geodesic ``w`` so the result ends in ``target_name``."""
    w = tuple(w)
    ctx.check(w)
    if not w or w[-1] >> 1 == target_name:
        raise ValueError("target name must differ from the name of the last letter")
    if ctx.m is not None:
        for s in range(len(w) - 2, -1, -1):
            t = _tau(w[s:], ctx.m)
            if t is not None and t[-1] >> 1 == target_name:
                return w[:s] + t
    raise ValueError("no geodesic equal to w ends with the requested generator")


def strip_power_tau(g: int, j: int, u: Sequence[int], ctx: DihedralCtx,
                    target: Optional[int] = None) -> Word:
    """Transfer a tau-move on ``g^j u`` to a tau-move on ``g u`` with the same last letter.

    Among the tau-moves on ``g^j u`` (restricted to those ending in ``target``
    when given) the first one for which ``g u`` has a matching move is used.
    """
    if j < 1:
        raise ValueError("j must be at least 1")
    u = tuple(u)
    word = (g,) * j + u
    ctx.check(word)
    if ctx.m is None:
        raise ValueError("no tau-move applies when m is infinite")
    moves = [v for _, _, v in tau_moves(word, ctx.m) if target is None or v[-1] == target]
    if not moves:
        raise ValueError("no tau-move applies to g^j u")
    short = (g,) + u
    for v in moves:
        for _, _, v2 in tau_moves(short, ctx.m):
            if v2[-1] == v[-1]:
                return v2
    raise RuntimeError("no tau-move on g u matches the last letter of a tau-move on g^j u")


def is_2gen_word(w: Sequence[int]) -> bool:
    return len({c >> 1 for c in w}) <= 2


__all__ = [
    "CriticalDecomposition", "DihedralCtx", "Kind", "classify_critical",
    "critical_prefix_for_letter", "critical_suffix_for_letter", "delta_map",
    "inverse", "is_2geodesic", "n_stat", "p_stat", "reduce_2gen",
    "retarget_last_letter", "runs", "strip_power_tau", "tau", "tau_moves",
]
