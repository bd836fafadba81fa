"""Exact real-root counting and isolation for rational univariate polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ContractError
from .poly import UvPoly, as_fraction

__all__ = [
    "RootInterval",
    "RootIsolation",
    "sturm_chain",
    "sturm_count",
    "square_free_part",
    "square_free_decomposition",
    "all_roots_real",
    "isolate_roots",
    "cauchy_bound",
    "refine_root",
]

NEG_INF = "-inf"
POS_INF = "+inf"


def _require_nonzero(a: UvPoly):
    if a.is_zero:
        raise ContractError("the zero polynomial has no finite root set")


def sturm_chain(a: UvPoly) -> list[UvPoly]:
    """Sturm sequence of the square-free part of ``a``, primitive-normalized."""
    _require_nonzero(a)
    f = square_free_part(a).primitive()
    chain = [f, f.derivative().primitive()]
    while not chain[-1].is_zero:
        chain.append((-(chain[-2] % chain[-1])).primitive())
    return chain[:-1]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_at(p: UvPoly, x) -> int:
    if x == NEG_INF:
        s = _sign(p.lead)
        return s if p.degree % 2 == 0 else -s
    if x == POS_INF:
        return _sign(p.lead)
    return _sign(p.eval(x))


def _variations(chain: Sequence[UvPoly], x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(a: UvPoly, lo=NEG_INF, hi=POS_INF, chain=None) -> int:
    """Number of distinct real roots of ``a`` in the half-open interval (lo, hi].

    ``lo`` may be ``"-inf"`` and ``hi`` may be ``"+inf"`` (or None for either).
    """
    _require_nonzero(a)
    lo = NEG_INF if lo is None else lo
    hi = POS_INF if hi is None else hi
    if lo != NEG_INF:
        lo = as_fraction(lo)
    if hi != POS_INF:
        hi = as_fraction(hi)
    if lo != NEG_INF and hi != POS_INF and lo >= hi:
        return 0
    if chain is None:
        chain = sturm_chain(a)
    return _variations(chain, lo) - _variations(chain, hi)


def square_free_part(a: UvPoly) -> UvPoly:
    _require_nonzero(a)
    if a.degree <= 0:
        return UvPoly([1])
    g = a.gcd(a.derivative())
    return (a // g).monic()


def square_free_decomposition(a: UvPoly) -> list[tuple[UvPoly, int]]:
    """Yun's algorithm: monic coprime square-free factors f_i with a = c * prod f_i**i.

    Factors of degree 0 are omitted.
    """
    _require_nonzero(a)
    out = []
    if a.degree <= 0:
        return out
    f = a.monic()
    fp = f.derivative()
    g = f.gcd(fp)
    w = f // g
    y = fp // g
    z = y - w.derivative()
    i = 1
    while w.degree > 0:
        h = w.gcd(z)
        w = w // h
        y = z // h
        z = y - w.derivative()
        if h.degree > 0:
            out.append((h.monic(), i))
        i += 1
    return out


def all_roots_real(a: UvPoly) -> bool:
    """True iff ``a`` has deg(a) real roots counted with multiplicity."""
    _require_nonzero(a)
    for factor, _ in square_free_decomposition(a):
        if sturm_count(factor) != factor.degree:
            return False
    return True


def cauchy_bound(a: UvPoly) -> Fraction:
    """1 + max |c_i / c_deg|; every complex root has modulus below it."""
    _require_nonzero(a)
    lead = a.lead
    if a.degree == 0:
        return Fraction(1)
    return 1 + max(abs(c / lead) for c in a.coeffs[:-1])


@dataclass(frozen=True)
class RootInterval:
    """(lo, hi] holding exactly one distinct real root; lo == hi means an exact root."""

    lo: Fraction
    hi: Fraction
    multiplicity: int

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint isolating intervals in increasing order."""

    intervals: tuple[RootInterval, ...]

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.intervals)

    def midpoints(self) -> list[Fraction]:
        return [r.mid for r in self.intervals]

    def expanded(self, descending: bool = False) -> list[RootInterval]:
        """One entry per root counted with multiplicity."""
        out = [r for r in self.intervals for _ in range(r.multiplicity)]
        return out[::-1] if descending else out

    def to_json(self) -> list[dict]:
        return [
            {"lo": str(r.lo), "hi": str(r.hi), "multiplicity": r.multiplicity}
            for r in self.intervals
        ]


def _bisect_isolate(f: UvPoly, chain, lo: Fraction, hi: Fraction, width: Fraction, out: list):
    # invariant: f has sturm_count(lo, hi) > 0 roots in (lo, hi]
    stack = [(lo, hi, sturm_count(f, lo, hi, chain))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if f.eval(mid) == 0:
            out.append((mid, mid))
            left = sturm_count(f, lo, mid, chain) - 1
            right = n - 1 - left
            # keep the exact root out of both halves
            eps = min(width, (hi - lo) / 4)
            if left:
                stack.append((lo, _shrink_below(f, chain, lo, mid, eps), left))
            if right:
                stack.append((mid, hi, right))
            continue
        left = sturm_count(f, lo, mid, chain)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))


def _shrink_below(f, chain, lo, root, eps):
    # largest b < root with no root of f in (b, root)
    b = root - eps
    while b > lo and sturm_count(f, b, root, chain) > 1:
        eps /= 2
        b = root - eps
    return max(b, lo)


def isolate_roots(a: UvPoly, width) -> RootIsolation:
    """Isolate every distinct real root of ``a`` into an interval of length <= width.

    Multiplicities come from the square-free decomposition.
    """
    _require_nonzero(a)
    width = as_fraction(width)
    if width <= 0:
        raise ContractError("width must be positive")
    if a.degree <= 0:
        return RootIsolation(())
    f = square_free_part(a)
    chain = sturm_chain(f)
    bound = cauchy_bound(f)
    raw: list[tuple[Fraction, Fraction]] = []
    _bisect_isolate(f, chain, -bound, bound, width, raw)
    raw.sort()
    factors = square_free_decomposition(a)
    intervals = []
    for lo, hi in raw:
        if lo == hi:
            mult = next(m for g, m in factors if g.eval(lo) == 0)
        else:
            mult = next(m for g, m in factors if sturm_count(g, lo, hi) == 1)
        intervals.append(RootInterval(lo, hi, mult))
    return RootIsolation(tuple(intervals))


def refine_root(f: UvPoly, iv: RootInterval, width) -> RootInterval:
    """Shrink an isolating interval of a square-free ``f`` by sign-change bisection."""
    width = as_fraction(width)
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    if f.eval(hi) == 0:
        return RootInterval(hi, hi, iv.multiplicity)
    s_hi = _sign(f.eval(hi))
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = f.eval(mid)
        if v == 0:
            return RootInterval(mid, mid, iv.multiplicity)
        if _sign(v) == s_hi:
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi, iv.multiplicity)
