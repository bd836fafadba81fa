"""Exact polynomial arithmetic over the rationals.

`MvPoly` is a sparse multivariate polynomial (exponent tuple -> Fraction).
`UvPoly` is a dense univariate polynomial in ``t`` with ascending coefficients.
Both are immutable once constructed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError

__all__ = [
    "MvPoly",
    "UvPoly",
    "Homogeneity",
    "as_fraction",
    "as_vector",
    "is_homogeneous",
    "poly_arith",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings like ``"-3/7"`` to Fraction.

    Floats are rejected: every value in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def _grlex_key(exp):
    return (sum(exp), exp)


class MvPoly:
    """Sparse polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        if nvars < 0:
            raise DimensionError("nvars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coeff in items:
            exp = tuple(int(a) for a in exp)
            if len(exp) != nvars:
                raise DimensionError(f"exponent {exp} does not have length {nvars}")
            if any(a < 0 for a in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = clean.get(exp, Fraction(0)) + as_fraction(coeff)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MvPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MvPoly":
        c = as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MvPoly":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> list["MvPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MvPoly":
        """The linear form sum_i coeffs[i] * x_i."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(n, terms)

    # -- basic queries ----------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def coeff(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def constant_value(self) -> Fraction | None:
        """The value if the polynomial is constant, else None."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1:
            (exp, c), = self._terms.items()
            if not any(exp):
                return c
        return None

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MvPoly":
        if isinstance(other, MvPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return MvPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        res = dict(self._terms)
        for exp, c in other._terms.items():
            v = res.get(exp, 0) + c
            if v:
                res[exp] = v
            else:
                del res[exp]
        return MvPoly._raw(self.nvars, res)

    __radd__ = __add__

    def __neg__(self):
        return MvPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MvPoly":
        c = as_fraction(c)
        if not c:
            return MvPoly.zero(self.nvars)
        return MvPoly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, MvPoly):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        res: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                res[exp] = res.get(exp, 0) + c1 * c2
        return MvPoly._raw(self.nvars, {e: c for e, c in res.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(Fraction(1) / as_fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MvPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MvPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction, Rational)):
            return self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- calculus and evaluation -------------------------------------------
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.eval(point)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError(f"point has length {len(point)}, expected {self.nvars}")
        pt = as_vector(point)
        total = Fraction(0)
        for exp, c in self._terms.items():
            v = c
            for xi, a in zip(pt, exp):
                if a:
                    v *= xi**a
            total += v
        return total

    def partial(self, i: int) -> "MvPoly":
        res = {}
        for exp, c in self._terms.items():
            a = exp[i]
            if a:
                e = list(exp)
                e[i] = a - 1
                res[tuple(e)] = c * a
        return MvPoly._raw(self.nvars, res)

    def directional_derivative(self, u: Sequence) -> "MvPoly":
        """D_u p = sum_i u_i dp/dx_i."""
        if len(u) != self.nvars:
            raise DimensionError(f"direction has length {len(u)}, expected {self.nvars}")
        out = MvPoly.zero(self.nvars)
        for i, ui in enumerate(as_vector(u)):
            if ui:
                out = out + self.partial(i).scale(ui)
        return out

    def taylor_coefficients(self, e: Sequence) -> list["MvPoly"]:
        """Coefficients c_k(x) with p(x + t e) = sum_k c_k(x) t^k.

        c_k = D_e^k p / k!, so the list has length deg(p) + 1.
        """
        out = []
        cur = self
        for k in range(self.degree() + 1):
            out.append(cur.scale(Fraction(1, math.factorial(k))))
            cur = cur.directional_derivative(e)
        return out

    def restrict_line(self, x: Sequence, e: Sequence) -> "UvPoly":
        """The univariate polynomial t -> p(x + t e)."""
        if len(x) != self.nvars or len(e) != self.nvars:
            raise DimensionError("line data must match nvars")
        xv, ev = as_vector(x), as_vector(e)
        deg = self.degree()
        acc = [Fraction(0)] * (deg + 1)
        # powers of (x_i + e_i t) cached per (i, power)
        cache: dict[tuple[int, int], list[Fraction]] = {}

        def power(i, a):
            key = (i, a)
            if key not in cache:
                if a == 1:
                    cache[key] = [xv[i], ev[i]]
                else:
                    cache[key] = _dense_mul(power(i, a - 1), [xv[i], ev[i]])
            return cache[key]

        for exp, c in self._terms.items():
            cur = [c]
            for i, a in enumerate(exp):
                if a:
                    cur = _dense_mul(cur, power(i, a))
            for k, v in enumerate(cur):
                acc[k] += v
        return UvPoly(acc)

    def compose(self, subs: Sequence["MvPoly"]) -> "MvPoly":
        """p(subs[0], ..., subs[n-1]); all substitutes share one nvars."""
        if len(subs) != self.nvars:
            raise DimensionError(f"need {self.nvars} substitutes, got {len(subs)}")
        if not subs:
            return self
        m = subs[0].nvars
        if any(s.nvars != m for s in subs):
            raise DimensionError("substitutes have mixed nvars")
        cache: dict[tuple[int, int], MvPoly] = {}

        def power(i, a):
            key = (i, a)
            if key not in cache:
                cache[key] = subs[i] if a == 1 else power(i, a - 1) * subs[i]
            return cache[key]

        out = MvPoly.zero(m)
        for exp, c in self._terms.items():
            cur = MvPoly.constant(m, c)
            for i, a in enumerate(exp):
                if a:
                    cur = cur * power(i, a)
            out = out + cur
        return out

    def shift(self, v: Sequence) -> "MvPoly":
        """x -> p(x + v)."""
        xs = MvPoly.variables(self.nvars)
        return self.compose([xi + as_fraction(vi) for xi, vi in zip(xs, v)])

    def substitute(self, assignment: Mapping[int, object]) -> "MvPoly":
        """Fix some variables to rational values; nvars is unchanged."""
        vals = {int(i): as_fraction(v) for i, v in assignment.items()}
        res: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self._terms.items():
            e = list(exp)
            for i, v in vals.items():
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if c:
                key = tuple(e)
                res[key] = res.get(key, 0) + c
        return MvPoly._raw(self.nvars, {e: c for e, c in res.items() if c})

    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> "MvPoly":
        """Re-index into a larger variable set; variable i goes to positions[i]."""
        if positions is None:
            positions = list(range(self.nvars))
        if len(positions) != self.nvars:
            raise DimensionError("positions must have one entry per variable")
        res = {}
        for exp, c in self._terms.items():
            e = [0] * nvars
            for i, a in enumerate(exp):
                e[positions[i]] += a
            res[tuple(e)] = c
        return MvPoly._raw(nvars, res)

    # -- formatting and serialization ---------------------------------------
    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(names, exp) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MvPoly({self.nvars}, {self.format()})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
                for exp, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MvPoly":
        n = int(data["nvars"])
        terms = []
        for t in data["terms"]:
            terms.append((t["exp"], Fraction(int(t["num"]), int(t.get("den", "1")))))
        return cls(n, terms)


@dataclass(frozen=True)
class Homogeneity:
    """Outcome of a homogeneity check.

    Truthy iff homogeneous; ``witness`` holds two exponents of different total
    degree otherwise.
    """

    homogeneous: bool
    degree: int | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.homogeneous


def is_homogeneous(p: MvPoly) -> Homogeneity:
    exps = [e for e, _ in p.items()]
    if not exps:
        return Homogeneity(True, 0)
    d = sum(exps[0])
    for e in exps[1:]:
        if sum(e) != d:
            return Homogeneity(False, None, (exps[0], e))
    return Homogeneity(True, d)


def poly_arith(a: MvPoly, b: MvPoly | None, op: str, c=None) -> MvPoly:
    """Dispatch form of the arithmetic operators (``add``, ``sub``, ``mul``, ``scale``)."""
    if op == "scale":
        return a.scale(c)
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if a.nvars != b.nvars:
        raise DimensionError(f"nvars mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# -- univariate -------------------------------------------------------------

def _dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class UvPoly:
    """Dense polynomial in t; ``coeffs[i]`` multiplies t**i.

    ``degree`` is -1 for the zero polynomial.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: tuple[Fraction, ...] = tuple(_trim(as_fraction(c) for c in coeffs))

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj.coeffs = tuple(_trim(coeffs))
        return obj

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UvPoly":
        out = UvPoly([lead])
        for r in roots:
            out = out * UvPoly([-as_fraction(r), 1])
        return out

    @classmethod
    def monomial(cls, k: int, c=1) -> "UvPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UvPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UvPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UvPoly(0)"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(f"{c}" if k == 0 else (f"{c}*t" if k == 1 else f"{c}*t^{k}"))
        return "UvPoly(" + " + ".join(terms) + ")"

    def _coerce(self, other):
        if isinstance(other, UvPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UvPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UvPoly._raw(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UvPoly._raw(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UvPoly._raw(_dense_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UvPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "UvPoly":
        c = as_fraction(c)
        return UvPoly._raw(x * c for x in self.coeffs)

    def __call__(self, t):
        return self.eval(t)

    def eval(self, t) -> Fraction:
        t = as_fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_float(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def derivative(self) -> "UvPoly":
        return UvPoly._raw(c * k for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: "UvPoly") -> tuple["UvPoly", "UvPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c / lead
            quot[k - dd] = q
            for j in range(dd + 1):
                rem[k - dd + j] -= q * other.coeffs[j]
        return UvPoly._raw(quot), UvPoly._raw(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UvPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.lead)

    def primitive(self) -> "UvPoly":
        """Positive rational multiple with coprime integer coefficients.

        Sign is preserved, so sign evaluations are unchanged.
        """
        if self.is_zero:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return UvPoly._raw(Fraction(v // g) for v in ints)

    def gcd(self, other: "UvPoly") -> "UvPoly":
        """Monic gcd (zero if both are zero)."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, (a % b).primitive()
        return a.monic()

    def shift(self, t0) -> "UvPoly":
        """t -> a(t + t0) (Taylor shift)."""
        t0 = as_fraction(t0)
        out = UvPoly()
        lin = UvPoly([t0, 1])
        for c in reversed(self.coeffs):
            out = out * lin + UvPoly([c])
        return out

    def reverse_scale(self, k: int) -> "UvPoly":
        """t**k * a(t)."""
        return UvPoly._raw([Fraction(0)] * k + list(self.coeffs))
