"""Rooted spanning forests through the minor pairing det(Id + z^T y)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod

from .errors import CapExceeded, InstanceError
from .exact_algebra import as_rational, determinant

FOREST_CAP = 20


@dataclass(frozen=True)
class SimpleGraph:
    """Multigraph without loops; each edge ``(u, v)`` is oriented from u to v."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise InstanceError("duplicate vertex")
        known = set(self.vertices)
        for u, v in self.edges:
            if u not in known or v not in known:
                raise InstanceError(f"edge ({u}, {v}) uses an undeclared vertex")
            if u == v:
                raise InstanceError(f"self-loop at {u!r}")


def incidence_matrix(g: SimpleGraph) -> list:
    """|V| x |E| matrix: +1 at the initial vertex, -1 at the terminal vertex."""
    index = {v: i for i, v in enumerate(g.vertices)}
    b = [[0] * len(g.edges) for _ in g.vertices]
    for k, (u, v) in enumerate(g.edges):
        if u == v:
            raise InstanceError(f"self-loop at {u!r}")
        b[index[u]][k] = 1
        b[index[v]][k] = -1
    return b


def _transpose(m, ncols):
    return [[row[j] for row in m] for j in range(ncols)]


def _gram_plus_identity(a, b, inner):
    """Id + a^T b for matrices stored row-wise, with ``inner`` = shared row count."""
    cols = len(a[0]) if a else 0
    out = [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    for r in range(inner):
        ra, rb = a[r], b[r]
        for i in range(cols):
            if ra[i]:
                for j in range(cols):
                    if rb[j]:
                        out[i][j] += ra[i] * rb[j]
    return out


def minor_pairing(z, y) -> Fraction:
    """det(Id + z^T y) for two k x l rational matrices."""
    z = [[as_rational(x) for x in row] for row in z]
    y = [[as_rational(x) for x in row] for row in y]
    if len(z) != len(y) or any(len(r) != len(s) for r, s in zip(z, y)):
        raise ValueError("minor_pairing needs matrices of equal shape")
    if not z:
        return Fraction(1)
    return determinant(_gram_plus_identity(z, y, len(z)))


def minor_pairing_brute_force(z, y) -> Fraction:
    """Sum over equal-size row/column subsets of the products of matching minors."""
    z = [[as_rational(x) for x in row] for row in z]
    y = [[as_rational(x) for x in row] for row in y]
    k = len(z)
    l = len(z[0]) if z else 0
    total = Fraction(0)
    for size in range(min(k, l) + 1):
        for rows in combinations(range(k), size):
            for cols in combinations(range(l), size):
                dz = determinant([[z[r][c] for c in cols] for r in rows])
                if dz:
                    total += dz * determinant([[y[r][c] for c in cols] for r in rows])
    return total


def forest_determinants(g: SimpleGraph) -> tuple:
    """(det(Id_E + B^T B), det(Id_V + B B^T))."""
    b = incidence_matrix(g)
    nv, ne = len(g.vertices), len(g.edges)
    edge_form = determinant(_gram_plus_identity(b, b, nv)) if ne else Fraction(1)
    bt = _transpose(b, ne)
    vertex_form = determinant(_gram_plus_identity(bt, bt, ne)) if nv else Fraction(1)
    return edge_form, vertex_form


def count_rooted_spanning_forests(g: SimpleGraph) -> int:
    """Number of rooted spanning forests, via the smaller of the two determinant forms.

    Both forms are computed when they are cheap enough, and must agree.
    """
    b = incidence_matrix(g)
    nv, ne = len(g.vertices), len(g.edges)
    if ne <= nv:
        value = determinant(_gram_plus_identity(b, b, nv)) if ne else Fraction(1)
    else:
        bt = _transpose(b, ne)
        value = determinant(_gram_plus_identity(bt, bt, ne))
    if value.denominator != 1:
        raise ArithmeticError("forest determinant is not an integer")
    return int(value)


def brute_force_forests(g: SimpleGraph, cap: int = FOREST_CAP) -> int:
    """Enumerate acyclic edge subsets; each counts prod(component sizes) root choices."""
    if len(g.edges) > cap:
        raise CapExceeded("brute_force_forests", len(g.edges), cap)
    index = {v: i for i, v in enumerate(g.vertices)}
    ends = [(index[u], index[v]) for u, v in g.edges]
    n = len(g.vertices)
    total = 0
    for mask in range(1 << len(ends)):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for k, (u, v) in enumerate(ends):
            if mask >> k & 1:
                ru, rv = find(u), find(v)
                if ru == rv:
                    acyclic = False
                    break
                parent[ru] = rv
        if not acyclic:
            continue
        sizes = {}
        for x in range(n):
            r = find(x)
            sizes[r] = sizes.get(r, 0) + 1
        total += prod(sizes.values())
    return total
