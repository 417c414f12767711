"""Letters, words, free reduction, shortlex order and the Artin presentation.

A letter is a small non-negative integer: generator ``i`` is encoded as ``2*i``
and its inverse as ``2*i + 1``.  A word is a tuple of letters.  Keeping both as
plain ints and tuples makes words hashable, immutable and cheap to slice, which
is what the exhaustive sweeps need.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Sequence

Word = tuple  # tuple[int, ...]
EMPTY: Word = ()


class PresentationError(ValueError):
    pass


class WordParseError(ValueError):
    pass


def letter(gen: int, sign: int = 1) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return 2 * gen + (sign < 0)


def inv(c: int) -> int:
    return c ^ 1


def name(c: int) -> int:
    return c >> 1


def sign(c: int) -> int:
    return -1 if c & 1 else 1


def is_positive(c: int) -> bool:
    return not c & 1


def inverse(w: Sequence[int]) -> Word:
    return tuple(c ^ 1 for c in reversed(w))


def names(w: Iterable[int]) -> frozenset:
    return frozenset(c >> 1 for c in w)


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for c in w:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def is_freely_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != w[i + 1] ^ 1 for i in range(len(w) - 1))


class Anchor(Enum):
    STARTS_WITH_X = "start"
    ENDS_WITH_X = "end"


def alternating(x: int, y: int, r: int, anchor: Anchor = Anchor.STARTS_WITH_X) -> Word:
    """Alternating word of length ``r`` in the letters ``x`` and ``y``.

    ``STARTS_WITH_X`` gives xyxy...; ``ENDS_WITH_X`` gives ...yxyx.
    """
    if x >> 1 == y >> 1:
        raise ValueError("alternating() needs letters with distinct names")
    if r < 0:
        raise ValueError("length must be non-negative")
    if anchor is Anchor.STARTS_WITH_X:
        return tuple(x if i % 2 == 0 else y for i in range(r))
    return tuple(x if (r - 1 - i) % 2 == 0 else y for i in range(r))


def starts_with(x: int, y: int, r: int) -> Word:
    return alternating(x, y, r, Anchor.STARTS_WITH_X)


def ends_with(x: int, y: int, r: int) -> Word:
    return alternating(x, y, r, Anchor.ENDS_WITH_X)


@dataclass(frozen=True)
class LetterOrder:
    """Total order on the ``2n`` letters, stored as ``rank[letter]``."""

    rank: tuple

    def __post_init__(self):
        if sorted(self.rank) != list(range(len(self.rank))):
            raise PresentationError("letter order must be a permutation of the letters")

    @classmethod
    def default(cls, n: int) -> "LetterOrder":
        # a1 < a1^-1 < a2 < a2^-1 < ...
        return cls(tuple(range(2 * n)))

    @classmethod
    def from_letters(cls, letters: Sequence[int]) -> "LetterOrder":
        rank = [0] * len(letters)
        for r, c in enumerate(letters):
            rank[c] = r
        return cls(tuple(rank))

    def letters(self) -> list[int]:
        return sorted(range(len(self.rank)), key=self.rank.__getitem__)

    def key(self, w: Sequence[int]) -> tuple:
        rank = self.rank
        return (len(w), tuple(rank[c] for c in w))


def lex_less(u: Sequence[int], v: Sequence[int], rank: Sequence[int]) -> bool:
    """Lexicographic comparison of equal-length words under ``rank``."""
    for a, b in zip(u, v):
        if a != b:
            return rank[a] < rank[b]
    return False


class Cmp(Enum):
    LT = -1
    EQ = 0
    GT = 1


def shortlex_cmp(u: Sequence[int], v: Sequence[int], order: LetterOrder) -> Cmp:
    if len(u) != len(v):
        return Cmp.LT if len(u) < len(v) else Cmp.GT
    rank = order.rank
    for a, b in zip(u, v):
        if a != b:
            return Cmp.LT if rank[a] < rank[b] else Cmp.GT
    return Cmp.EQ


def words_of_length(letters: Sequence[int], length: int, reduced: bool = False) -> Iterator[Word]:
    """All words of the given length, in lexicographic order of ``letters``.

    With ``reduced=True`` only freely reduced words are produced.
    """
    if length == 0:
        yield ()
        return
    if not reduced:
        import itertools

        yield from itertools.product(letters, repeat=length)
        return

    def extend(prefix: Word) -> Iterator[Word]:
        if len(prefix) == length:
            yield prefix
            return
        for c in letters:
            if prefix and prefix[-1] == c ^ 1:
                continue
            yield from extend(prefix + (c,))

    yield from extend(())


def words_up_to(letters: Sequence[int], max_length: int, reduced: bool = False) -> Iterator[Word]:
    for length in range(max_length + 1):
        yield from words_of_length(letters, length, reduced)


def _parse_matrix_entry(v) -> int | None:
    if v is None or v == 0 or v == "inf" or (isinstance(v, float) and math.isinf(v)):
        return None
    if not isinstance(v, int) or isinstance(v, bool):
        raise PresentationError(f"matrix entries must be integers, got {v!r}")
    return v


@dataclass(frozen=True)
class Presentation:
    """An Artin group presentation over a Coxeter matrix.

    ``matrix[i][j]`` is ``None`` for an infinite entry.  Two-generator
    presentations may use any ``m >= 2``; presentations on three or more
    generators must be of large type (every finite entry at least 3).
    """

    generators: tuple
    matrix: tuple
    order: LetterOrder = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        n = len(gens)
        if n < 2:
            raise PresentationError("a presentation needs at least two generators")
        if len(set(gens)) != n:
            raise PresentationError("duplicate generator names")
        for g in gens:
            if not isinstance(g, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
                raise PresentationError(f"invalid generator name {g!r}")
        matrix = tuple(tuple(_parse_matrix_entry(v) if i != j else v
                             for j, v in enumerate(row))
                       for i, row in enumerate(self.matrix))
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise PresentationError("matrix must be n x n")
        for i in range(n):
            if matrix[i][i] != 1:
                raise PresentationError("diagonal entries must be 1")
            for j in range(n):
                if i == j:
                    continue
                if matrix[i][j] != matrix[j][i]:
                    raise PresentationError("matrix must be symmetric")
                m = matrix[i][j]
                if m is not None:
                    if m < 2:
                        raise PresentationError(f"off-diagonal entries must be >= 2, got {m}")
                    if n > 2 and m < 3:
                        raise PresentationError(
                            f"m({gens[i]},{gens[j]}) = {m}: presentations on 3 or more "
                            "generators must be of large type (all m >= 3)")
        if all(matrix[i][j] is None for i in range(n) for j in range(n) if i != j):
            raise PresentationError("at least one off-diagonal entry must be finite")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "matrix", matrix)
        order = self.order if self.order is not None else LetterOrder.default(n)
        if len(order.rank) != 2 * n:
            raise PresentationError("letter order has the wrong size")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(gens)})

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def rank(self) -> tuple:
        return self.order.rank

    @property
    def letters(self) -> list[int]:
        """All 2n letters in the presentation's letter order."""
        return self.order.letters()

    @property
    def is_large_type(self) -> bool:
        return all(m is None or m >= 3 for row in self.matrix for m in row if m != 1)

    def m(self, i: int, j: int) -> int | None:
        return self.matrix[i][j]

    @property
    def M(self) -> int:
        """Fellow-traveller constant: twice the largest finite ``m_ij``."""
        return 2 * max(m for i, row in enumerate(self.matrix)
                       for j, m in enumerate(row) if i != j and m is not None)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    def finite_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in self.pairs() if self.matrix[i][j] is not None]

    def gen_index(self, gen: str) -> int:
        try:
            return self._index[gen]
        except KeyError:
            raise WordParseError(f"unknown generator {gen!r}") from None

    def with_order(self, order: LetterOrder) -> "Presentation":
        return Presentation(self.generators, self.matrix, order)

    # -- text ----------------------------------------------------------------

    def format_letter(self, c: int) -> str:
        g = self.generators[c >> 1]
        if not c & 1:
            return g
        if len(g) == 1 and g.islower() and g.upper() not in self._index:
            return g.upper()
        return g + "^-1"

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self)

    def format_word(self, w: Sequence[int]) -> str:
        return format_word(w, self)

    # -- json ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "matrix": [[0 if m is None else m for m in row] for row in self.matrix],
            "order": [self.format_letter(c) for c in self.letters],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        try:
            gens = data["generators"]
            matrix = data["matrix"]
        except (KeyError, TypeError):
            raise PresentationError("presentation JSON needs 'generators' and 'matrix'") from None
        pres = cls(tuple(gens), tuple(tuple(row) for row in matrix))
        if data.get("order") is not None:
            order_letters = []
            for tok in data["order"]:
                try:
                    w = parse_word(tok, pres)
                except WordParseError as exc:
                    raise PresentationError(f"bad letter {tok!r} in order: {exc}") from None
                if len(w) != 1:
                    raise PresentationError(f"order entry {tok!r} is not a single letter")
                order_letters.append(w[0])
            if sorted(order_letters) != list(range(2 * pres.n)):
                raise PresentationError("order must list every letter exactly once")
            pres = pres.with_order(LetterOrder.from_letters(order_letters))
        return pres

    @classmethod
    def load(cls, path: str | Path) -> "Presentation":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise PresentationError(f"cannot read presentation {path}: {exc}") from None
        return cls.from_json(data)

    @classmethod
    def dihedral(cls, m: int | None, gens: Sequence[str] = ("a", "b")) -> "Presentation":
        return cls(tuple(gens), ((1, m), (m, 1)))

    @classmethod
    def triangle(cls, m_ab: int | None, m_ac: int | None, m_bc: int | None,
                 gens: Sequence[str] = ("a", "b", "c")) -> "Presentation":
        return cls(tuple(gens), ((1, m_ab, m_ac), (m_ab, 1, m_bc), (m_ac, m_bc, 1)))


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(text: str, pres: Presentation) -> Word:
    """Parse whitespace-separated letter tokens such as ``"a b^-1 B c^3"``."""
    text = text.strip()
    if text in ("", "ε"):
        return ()
    out: list[int] = []
    for tok in text.split():
        mt = _TOKEN.match(tok)
        if mt is None:
            raise WordParseError(f"malformed token {tok!r}")
        gname, exp = mt.group(1), mt.group(2)
        if gname in pres._index:
            c = 2 * pres._index[gname]
        elif (len(gname) == 1 and gname.isupper() and gname.lower() in pres._index):
            c = 2 * pres._index[gname.lower()] + 1
        else:
            raise WordParseError(f"unknown generator {gname!r}")
        k = 1
        if exp is not None:
            k = int(exp)
            if k == 0:
                raise WordParseError(f"malformed exponent in {tok!r}")
        if k < 0:
            c ^= 1
        out.extend([c] * abs(k))
    return tuple(out)


def format_word(w: Sequence[int], pres: Presentation) -> str:
    if not w:
        return "ε"
    return " ".join(pres.format_letter(c) for c in w)
