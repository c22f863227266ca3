"""Exact rational linear algebra: Pfaffians, sub-Pfaffians, determinants.

All indices are 0-based.  The sign conventions that depend on index values
(``sign_of_set`` and ``tilde``) only depend on index parities and on even
set sizes, so they agree with the usual 1-based formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceeded

Rational = Fraction

EXPONENTIAL_CAP = 20


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class SkewMatrix:
    """Immutable n x n skew-symmetric matrix with Fraction entries."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_rational(x) for x in row) for row in rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("matrix is not square")
            if row[i] != 0:
                raise ValueError(f"nonzero diagonal entry at {i}")
            for j in range(i + 1, n):
                if row[j] != -rows[j][i]:
                    raise ValueError(f"not skew-symmetric at ({i}, {j})")
        self._rows = rows

    @classmethod
    def _trusted(cls, rows):
        obj = cls.__new__(cls)
        obj._rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def zeros(cls, n: int) -> "SkewMatrix":
        zero = Fraction(0)
        return cls._trusted([[zero] * n for _ in range(n)])

    @classmethod
    def from_upper(cls, n: int, entries) -> "SkewMatrix":
        """Build from a mapping ``{(i, j): value}`` with ``i < j``."""
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in dict(entries).items():
            if not 0 <= i < j < n:
                raise ValueError(f"upper-triangular index expected, got ({i}, {j})")
            v = as_rational(v)
            rows[i][j] = v
            rows[j][i] = -v
        return cls._trusted(rows)

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"SkewMatrix({[[str(x) for x in r] for r in self._rows]})"

    def __add__(self, other: "SkewMatrix") -> "SkewMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return SkewMatrix._trusted(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        )

    def __neg__(self) -> "SkewMatrix":
        return SkewMatrix._trusted([[-a for a in r] for r in self._rows])

    def scale(self, c) -> "SkewMatrix":
        c = as_rational(c)
        return SkewMatrix._trusted([[c * a for a in r] for r in self._rows])

    def submatrix(self, index_set: Sequence[int]) -> "SkewMatrix":
        idx = check_index_set(index_set, self.n)
        return SkewMatrix._trusted([[self._rows[i][j] for j in idx] for i in idx])

    def to_text(self) -> str:
        """Row-major, tab-separated, one row per line."""
        return "\n".join("\t".join(format_rational(x) for x in r) for r in self._rows)


def block_diagonal(blocks: Sequence[SkewMatrix]) -> SkewMatrix:
    n = sum(b.n for b in blocks)
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b[i, j]
        off += b.n
    return SkewMatrix._trusted(rows)


def check_index_set(index_set: Iterable[int], n: int) -> tuple:
    """Validate and return a strictly increasing tuple of indices in ``range(n)``."""
    idx = tuple(sorted(index_set))
    for a, b in zip(idx, idx[1:]):
        if a == b:
            raise ValueError(f"duplicate index {a}")
    if idx and (idx[0] < 0 or idx[-1] >= n):
        raise IndexError(f"index set {idx} out of range for dimension {n}")
    return idx


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``range(n)``; ``images[i]`` is the image of ``i``."""

    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``: apply ``other`` first."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return sequence_sign(self.images)

    def restricted_sign(self, subset: Iterable[int]) -> int:
        """Sign of the order-pattern that ``self`` induces on ``subset``."""
        return sequence_sign([self.images[i] for i in sorted(subset)])


def sequence_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting ``seq`` (distinct comparable items)."""
    seq = list(seq)
    order = sorted(range(len(seq)), key=seq.__getitem__)
    seen = [False] * len(seq)
    sign = 1
    for start in range(len(seq)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def pfaffian(z: SkewMatrix) -> Fraction:
    """Pfaffian by skew-symmetric (Parlett-Reid) elimination, O(n^3)."""
    n = z.n
    if n % 2:
        return Fraction(0)
    a = [list(r) for r in z.rows]
    result = Fraction(1)
    for k in range(0, n - 1, 2):
        pivot = next((p for p in range(k + 1, n) if a[k][p] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k + 1:
            _swap(a, k + 1, pivot)
            result = -result
        piv = a[k][k + 1]
        result *= piv
        rest = range(k + 2, n)
        mult = {i: a[k][i] / piv for i in rest if a[k][i] != 0}
        if not mult:
            continue
        row1 = a[k + 1]
        for i in rest:
            mi = mult.get(i)
            ai = a[i]
            for j in range(i + 1, n):
                mj = mult.get(j)
                delta = 0
                if mi is not None:
                    delta -= mi * row1[j]
                if mj is not None:
                    delta += mj * row1[i]
                if delta:
                    ai[j] += delta
                    a[j][i] = -ai[j]
    return result


def _swap(a, p, q):
    a[p], a[q] = a[q], a[p]
    for row in a:
        row[p], row[q] = row[q], row[p]


def sub_pfaffian(z: SkewMatrix, index_set: Iterable[int]) -> Fraction:
    idx = check_index_set(index_set, z.n)
    if len(idx) % 2:
        return Fraction(0)
    if not idx:
        return Fraction(1)
    return pfaffian(z.submatrix(idx))


def subsets_by_size(n: int) -> list:
    """All subsets of ``range(n)``: by size, then lexicographic within a size."""
    out = []
    for k in range(n + 1):
        out.extend(combinations(range(n), k))
    return out


def spf_vector(z: SkewMatrix, cap: int = EXPONENTIAL_CAP) -> list:
    """Sub-Pfaffian vector, slots in ``subsets_by_size(z.n)`` order."""
    if z.n > cap:
        raise CapExceeded("spf_vector", z.n, cap)
    return [sub_pfaffian(z, s) for s in subsets_by_size(z.n)]


def tilde(z: SkewMatrix) -> SkewMatrix:
    """Negate entries (i, j) with i + j even (off the diagonal)."""
    return SkewMatrix._trusted(
        [[x if (i + j) % 2 else -x for j, x in enumerate(r)] for i, r in enumerate(z.rows)]
    )


def sign_of_set(index_set: Iterable[int]) -> int:
    """(-1)^(sum(I) + |I|/2) for an even-size index set."""
    idx = tuple(index_set)
    if len(idx) % 2:
        raise ValueError("sign_of_set needs an even-size index set")
    return -1 if (sum(idx) + len(idx) // 2) % 2 else 1


def conjugate_by_permutation(z: SkewMatrix, p: Permutation) -> SkewMatrix:
    """Matrix whose entry (p(i), p(j)) is z[i, j]."""
    if p.n != z.n:
        raise ValueError("permutation size does not match matrix")
    rows = [[None] * z.n for _ in range(z.n)]
    for i in range(z.n):
        pi = p.images[i]
        for j in range(z.n):
            rows[pi][p.images[j]] = z[i, j]
    return SkewMatrix._trusted(rows)


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = [[as_rational(x) for x in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = akk
    return sign * a[n - 1][n - 1]


def pfaffian_sum_expansion(z: SkewMatrix, y: SkewMatrix, cap: int = EXPONENTIAL_CAP) -> Fraction:
    """sum over even I of sign_of_set(I) * Pf_I(z) * Pf_{I^C}(y).

    Exponential; exists as an oracle for Pf(z + y).
    """
    if z.n != y.n:
        raise ValueError("dimension mismatch")
    n = z.n
    if n > cap:
        raise CapExceeded("pfaffian_sum_expansion", n, cap)
    everything = set(range(n))
    total = Fraction(0)
    for k in range(0, n + 1, 2):
        for idx in combinations(range(n), k):
            rest = sorted(everything.difference(idx))
            if len(rest) % 2:
                continue
            term = sub_pfaffian(z, idx)
            if term:
                term *= sub_pfaffian(y, rest)
            if term:
                total += sign_of_set(idx) * term
    return total
