"""Exact Newton polytopes of small effective dimension.

Points are integer exponent vectors. The affine hull is found exactly and the
points are re-expressed in affine coordinates; facets are enumerated by brute
force over point subsets, which is fine for the tens of points involved here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import UnsupportedError
from .linalg import QMatrix, _rref, nullspace

MAX_DIM = 3


class Polytope:
    """Convex hull of finitely many rational points, of affine dimension <= 3."""

    def __init__(self, points: Sequence[Sequence]):
        pts = sorted({tuple(Fraction(v) for v in p) for p in points})
        if not pts:
            raise ValueError("need at least one point")
        self.points = pts
        self.origin = pts[0]
        diffs = [[a - b for a, b in zip(p, self.origin)] for p in pts[1:]]
        red, piv = _rref(diffs, len(self.origin)) if diffs else ([], [])
        self.directions = [tuple(r) for r in red]
        self.dim = len(self.directions)
        if self.dim > MAX_DIM:
            raise UnsupportedError(f"effective dimension {self.dim} exceeds {MAX_DIM}")
        self._pivots = piv
        self._local = [self._coords(p) for p in pts]
        self._facets = self._compute_facets()

    def _coords(self, p) -> tuple[Fraction, ...] | None:
        """Affine coordinates w.r.t. origin + span(directions), or None if off the hull."""
        diff = [a - b for a, b in zip(p, self.origin)]
        # rref rows have a leading 1 in each pivot column
        coeffs = tuple(diff[c] for c in self._pivots)
        recon = [sum((coeffs[k] * self.directions[k][j] for k in range(self.dim)), Fraction(0))
                 for j in range(len(diff))]
        return coeffs if recon == diff else None

    def _compute_facets(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        """Half-spaces a.z <= b (in local coordinates) supporting a facet."""
        k = self.dim
        if k == 0:
            return []
        facets = set()
        for subset in combinations(self._local, k):
            base = subset[0]
            rows = [[a - b for a, b in zip(s, base)] for s in subset[1:]]
            normal_space = nullspace(QMatrix(rows)) if rows else QMatrix.identity(k)
            if normal_space.cols != 1:
                continue
            a = normal_space.column(0)
            b = sum((x * y for x, y in zip(a, base)), Fraction(0))
            vals = [sum((x * y for x, y in zip(a, p)), Fraction(0)) for p in self._local]
            if all(v <= b for v in vals):
                facets.add(_normalize(a, b))
            if all(v >= b for v in vals):
                facets.add(_normalize(tuple(-x for x in a), -b))
        return sorted(facets)

    def contains(self, point: Sequence) -> bool:
        local = self._coords(tuple(Fraction(v) for v in point))
        if local is None:
            return False
        if self.dim == 0:
            return True
        return all(sum((x * y for x, y in zip(a, local)), Fraction(0)) <= b for a, b in self._facets)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Points of the input set that are extreme in the hull."""
        if len(self.points) == 1:
            return list(self.points)
        out = []
        for p in self.points:
            others = [q for q in self.points if q != p]
            if not Polytope(others).contains(p):
                out.append(p)
        return out


def _normalize(a, b):
    scale = next(abs(x) for x in a if x)
    return tuple(x / scale for x in a), b / scale


def newton_polytope(exponents: Sequence[Sequence[int]]) -> Polytope:
    return Polytope(exponents)


def compositions(total: int, parts: int):
    """All nonnegative integer vectors of length ``parts`` summing to ``total``, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def half_polytope_points(exponents: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Integer alpha with 2 alpha in the Newton polytope (homogeneous support of even degree)."""
    poly = newton_polytope(exponents)
    degrees = {sum(e) for e in exponents}
    if len(degrees) != 1:
        raise ValueError("support must be homogeneous")
    deg = degrees.pop()
    if deg % 2:
        raise ValueError("degree must be even")
    n = len(exponents[0])
    return [a for a in compositions(deg // 2, n) if poly.contains(tuple(2 * v for v in a))]
