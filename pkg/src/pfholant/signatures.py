"""Generator/recognizer signatures, basis changes and sub-Pfaffian realization.

A signature of arity ``d`` is a vector of ``2**d`` coefficients.  The
coefficient index is the bitstring ``eps`` read as a binary number with the
first local edge as the most significant bit, so for ``d = 3`` index 3 is
``011`` (edges 2 and 3 set).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import NotRealizable
from .exact_algebra import SkewMatrix, as_rational, determinant, sub_pfaffian, subsets_by_size

ARITY_CAP = 16


def support(eps: int, d: int) -> tuple:
    """Local edge positions set in ``eps`` (position 0 is the most significant bit)."""
    return tuple(k for k in range(d) if eps >> (d - 1 - k) & 1)


def index_of(positions, d: int) -> int:
    eps = 0
    for k in positions:
        eps |= 1 << (d - 1 - k)
    return eps


@dataclass(frozen=True)
class Signature:
    arity: int
    coefficients: tuple

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be at least 1")
        if self.arity > ARITY_CAP:
            raise ValueError(f"arity {self.arity} exceeds cap {ARITY_CAP}")
        coeffs = tuple(as_rational(c) for c in self.coefficients)
        if len(coeffs) != 1 << self.arity:
            raise ValueError(f"expected {1 << self.arity} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coefficients", coeffs)

    def __getitem__(self, eps: int) -> Fraction:
        return self.coefficients[eps]

    def at(self, bits: Sequence[int]) -> Fraction:
        """Coefficient at an explicit 0/1 tuple, first edge first."""
        eps = 0
        for b in bits:
            eps = (eps << 1) | (1 if b else 0)
        return self.coefficients[eps]

    def scaled(self, factor) -> "Signature":
        factor = as_rational(factor)
        return Signature(self.arity, tuple(factor * c for c in self.coefficients))

    def permuted(self, order: Sequence[int]) -> "Signature":
        """Relabel the tensor factors: new position ``k`` is old position ``order[k]``."""
        d = self.arity
        if sorted(order) != list(range(d)):
            raise ValueError("order must be a permutation of the local positions")
        new = [Fraction(0)] * (1 << d)
        for eps in range(1 << d):
            bits = [(eps >> (d - 1 - order[k])) & 1 for k in range(d)]
            new_eps = 0
            for b in bits:
                new_eps = (new_eps << 1) | b
            new[new_eps] = self.coefficients[eps]
        return Signature(d, tuple(new))

    def flipped(self, mask: int) -> "Signature":
        """Signature of ``eps -> self[eps ^ mask]`` (swap 0/1 on the masked edges)."""
        return Signature(self.arity, tuple(self.coefficients[e ^ mask] for e in range(1 << self.arity)))

    def is_symmetric(self) -> bool:
        """True when the coefficient only depends on the Hamming weight."""
        by_weight = {}
        for eps, c in enumerate(self.coefficients):
            w = bin(eps).count("1")
            if by_weight.setdefault(w, c) != c:
                return False
        return True

    def by_size(self) -> tuple:
        """Coefficients listed over supports by size, then lexicographically."""
        d = self.arity
        return tuple(self.coefficients[index_of(s, d)] for s in subsets_by_size(d))

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coefficients)


def builtin_equality(d: int) -> Signature:
    coeffs = [0] * (1 << d)
    coeffs[0] = coeffs[-1] = 1
    return Signature(d, tuple(coeffs))


def builtin_nae(d: int) -> Signature:
    if d < 2:
        raise ValueError("NAE needs arity at least 2")
    coeffs = [1] * (1 << d)
    coeffs[0] = coeffs[-1] = 0
    return Signature(d, tuple(coeffs))


class BasisChange:
    """Invertible 2x2 rational matrix; columns are the images of ``a_0`` and ``a_1``."""

    def __init__(self, matrix):
        (a, b), (c, d) = matrix
        self.matrix = ((as_rational(a), as_rational(b)), (as_rational(c), as_rational(d)))
        det = determinant(self.matrix)
        if det == 0:
            raise ValueError("basis change must be invertible")
        self.det = det

    @classmethod
    def from_columns(cls, a, b, c, d) -> "BasisChange":
        """Column-major entries: ``a_0 -> a*a_0 + b*a_1``, ``a_1 -> c*a_0 + d*a_1``."""
        return cls(((a, c), (b, d)))

    @classmethod
    def identity(cls) -> "BasisChange":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def b2(cls) -> "BasisChange":
        return cls.from_columns(1, 1, 1, -1)

    def dual(self) -> tuple:
        """Inverse transpose, acting on recognizer (dual) coefficients."""
        (a, b), (c, d) = self.matrix
        det = self.det
        # inverse is [[d, -b], [-c, a]] / det; transpose it
        return ((d / det, -c / det), (-b / det, a / det))

    def __eq__(self, other):
        return isinstance(other, BasisChange) and self.matrix == other.matrix

    def __repr__(self):
        return f"BasisChange({self.matrix})"


def _apply_tensor_power(matrix, sig: Signature) -> Signature:
    """Apply ``matrix`` to every tensor factor of ``sig`` (one factor per edge)."""
    d = sig.arity
    coeffs = list(sig.coefficients)
    for k in range(d):
        bit = 1 << (d - 1 - k)
        for eps in range(1 << d):
            if eps & bit:
                continue
            c0, c1 = coeffs[eps], coeffs[eps | bit]
            coeffs[eps] = matrix[0][0] * c0 + matrix[0][1] * c1
            coeffs[eps | bit] = matrix[1][0] * c0 + matrix[1][1] * c1
    return Signature(d, tuple(coeffs))


def transform_generator(sig: Signature, basis: BasisChange) -> Signature:
    return _apply_tensor_power(basis.matrix, sig)


def transform_recognizer(sig: Signature, basis: BasisChange) -> Signature:
    return _apply_tensor_power(basis.dual(), sig)


def parity(sig: Signature) -> str:
    """``"even"``, ``"odd"`` or ``"mixed"`` according to the weights in the support."""
    weights = {bin(eps).count("1") % 2 for eps, c in enumerate(sig.coefficients) if c != 0}
    if weights == {1}:
        return "odd"
    if len(weights) == 2:
        return "mixed"
    return "even"


@dataclass(frozen=True)
class LocalRealization:
    matrix: SkewMatrix
    scale: Fraction
    reversed: bool = False

    def signature(self) -> Signature:
        """Rebuild the signature this realization stands for."""
        d = self.matrix.n
        coeffs = []
        for eps in range(1 << d):
            key = (1 << d) - 1 - eps if self.reversed else eps
            coeffs.append(self.scale * sub_pfaffian(self.matrix, support(key, d)))
        return Signature(d, tuple(coeffs))


def realize(sig: Signature, vertex=None) -> LocalRealization:
    """Write ``sig`` as ``scale * sPf(m)``, retrying with all indices complemented.

    Raises NotRealizable when neither identification works.
    """
    first = sig.coefficients[0]
    last = sig.coefficients[-1]
    if first != 0:
        return LocalRealization(*_realize_plain(sig, vertex), reversed=False)
    if last != 0:
        rev = sig.flipped((1 << sig.arity) - 1)
        return LocalRealization(*_realize_plain(rev, vertex), reversed=True)
    raise NotRealizable("both extreme coefficients vanish", vertex)


def _realize_plain(sig: Signature, vertex):
    d = sig.arity
    c0 = sig.coefficients[0]
    entries = {}
    for k, l in combinations(range(d), 2):
        entries[(k, l)] = sig.coefficients[index_of((k, l), d)] / c0
    m = SkewMatrix.from_upper(d, entries)
    for eps in range(1 << d):
        want = sig.coefficients[eps] / c0
        supp = support(eps, d)
        if len(supp) % 2:
            if want != 0:
                raise NotRealizable(f"nonzero coefficient at odd-weight index {eps:0{d}b}", vertex)
            continue
        if len(supp) <= 2:
            continue
        got = sub_pfaffian(m, supp)
        if got != want:
            raise NotRealizable(
                f"coefficient at {eps:0{d}b} is {want}, sub-Pfaffian is {got}", vertex
            )
    return m, c0
