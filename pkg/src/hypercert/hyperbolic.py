"""Hyperbolic polynomials through their parameterized Bezoutian and Hermite matrices.

Throughout, ``p`` is homogeneous of degree ``d`` with ``p(e) > 0``,
``p_x(t) = p(x + t e)``, and the hyperbolic eigenvalues of ``x`` are the roots of
``t -> p(t e - x)``. Everything symbolic is exact; only the canonical functionals
involve root approximations, and those carry an explicit precision.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .bezout import bezout_entries, congruence_entries, hankel_entries, hankel_matrix
from .errors import ContractError, DimensionError, NotHyperbolicError, PrecisionError
from .linalg import QMatrix, ldl_psd_check, mat_mul, mat_transpose
from .poly import MvPoly, UvPoly, as_fraction, as_vector, is_homogeneous
from .roots import (
    RootInterval,
    RootIsolation,
    all_roots_real,
    isolate_roots,
    refine_root,
    square_free_decomposition,
    square_free_part,
    sturm_count,
)
from .sampling import rng_for, random_vector, sample_point

__all__ = [
    "HyperbolicContext",
    "PolyMatrix",
    "CanonicalFunctionals",
    "LineCheck",
    "TrialRecord",
    "HyperbolicityReport",
    "Membership",
    "DualCheckReport",
    "InterlaceReport",
    "DualWitness",
    "parameterized_bezoutian",
    "parameterized_hermite",
    "parameterized_congruence",
    "hermite_at",
    "bezoutian_at",
    "hyperbolic_eigenvalues",
    "check_hyperbolic_on_line",
    "hyperbolicity_test",
    "cone_membership",
    "canonical_functionals",
    "phi_eval",
    "phi_functional",
    "q_poly",
    "dual_cone_sample_check",
    "det_dual_oracle",
    "linear_forms_dual_oracle",
    "pencil_dual_oracle",
    "lagrange_witness",
    "check_interlaces",
]


def _unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == j)) for j in range(n))


@dataclass(frozen=True)
class HyperbolicContext:
    """A homogeneous ``p`` together with a direction ``e`` where ``p(e) > 0``.

    Hyperbolicity itself is not checked here; that is what the tests decide.
    """

    p: MvPoly
    e: tuple[Fraction, ...]
    d: int

    @classmethod
    def create(cls, p: MvPoly, e: Sequence) -> "HyperbolicContext":
        e = as_vector(e)
        if len(e) != p.nvars:
            raise DimensionError(f"e has length {len(e)}, polynomial has {p.nvars} variables")
        hom = is_homogeneous(p)
        if not hom:
            raise ContractError(f"polynomial is not homogeneous (terms {hom.witness})")
        if p.is_zero:
            raise ContractError("the zero polynomial is not hyperbolic")
        if p.eval(e) <= 0:
            raise ContractError(f"need p(e) > 0, got {p.eval(e)}")
        return cls(p, e, hom.degree)

    @property
    def nvars(self) -> int:
        return self.p.nvars

    @cached_property
    def pe(self) -> Fraction:
        return self.p.eval(self.e)

    @cached_property
    def partials(self) -> tuple[MvPoly, ...]:
        return tuple(self.p.partial(i) for i in range(self.nvars))

    @cached_property
    def taylor(self) -> tuple[MvPoly, ...]:
        """Coefficients of p_x(t) as polynomials in x; the last one is p(e)."""
        return tuple(self.p.taylor_coefficients(self.e))

    def derivative(self, u: Sequence) -> MvPoly:
        u = self._vec(u)
        out = MvPoly.zero(self.nvars)
        for ui, dp in zip(u, self.partials):
            if ui:
                out = out + dp.scale(ui)
        return out

    def _vec(self, v: Sequence) -> tuple[Fraction, ...]:
        v = as_vector(v)
        if len(v) != self.nvars:
            raise DimensionError(f"vector has length {len(v)}, expected {self.nvars}")
        return v

    def line(self, x: Sequence) -> UvPoly:
        """p_x(t) = p(x + t e), read off the Taylor coefficients along e."""
        x = self._vec(x)
        return UvPoly([c.eval(x) for c in self.taylor])

    def derivative_line(self, x: Sequence, u: Sequence) -> UvPoly:
        """(D_u p)(x + t e)."""
        return self.derivative(u).restrict_line(self._vec(x), self.e)

    def eigen_poly(self, x: Sequence) -> UvPoly:
        """t -> p(t e - x); its roots are the hyperbolic eigenvalues of x."""
        x = self._vec(x)
        return self.line(tuple(-v for v in x))

    def to_json(self) -> dict:
        return {"poly": self.p.to_json(), "e": [str(v) for v in self.e], "degree": self.d}


# -- polynomial matrices ----------------------------------------------------------

class PolyMatrix:
    """Square matrix of `MvPoly` entries sharing one variable set."""

    __slots__ = ("nvars", "entries")

    def __init__(self, nvars: int, entries: Iterable[Iterable]):
        rows = []
        for row in entries:
            rows.append(tuple(
                v if isinstance(v, MvPoly) else MvPoly.constant(nvars, v) for v in row
            ))
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("PolyMatrix must be square")
        for r in rows:
            for v in r:
                if v.nvars != nvars:
                    raise DimensionError("entries have mismatched nvars")
        self.nvars = nvars
        self.entries = tuple(rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx) -> MvPoly:
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.entries == other.entries

    def __hash__(self):
        return hash((self.nvars, self.entries))

    def __repr__(self):
        return f"PolyMatrix({self.dim}x{self.dim}, nvars={self.nvars})"

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scale(self, c) -> "PolyMatrix":
        c = as_fraction(c)
        return PolyMatrix(self.nvars, [[v.scale(c) for v in r] for r in self.entries])

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.nvars, mat_transpose(self.entries))

    def __matmul__(self, other) -> "PolyMatrix":
        if isinstance(other, QMatrix):
            other = other.data
        elif isinstance(other, PolyMatrix):
            other = other.entries
        return PolyMatrix(self.nvars, mat_mul(self.entries, other))

    def __rmatmul__(self, other) -> "PolyMatrix":
        if isinstance(other, QMatrix):
            other = other.data
        return PolyMatrix(self.nvars, mat_mul(other, self.entries))

    def congruence(self, m) -> "PolyMatrix":
        """m @ self @ m^T for a rational or polynomial matrix m."""
        data = m.data if isinstance(m, QMatrix) else (m.entries if isinstance(m, PolyMatrix) else m)
        return PolyMatrix(self.nvars, mat_mul(mat_mul(data, self.entries), mat_transpose(data)))

    def evaluate(self, point: Sequence) -> QMatrix:
        return QMatrix([[v.eval(point) for v in r] for r in self.entries])

    def substitute(self, assignment) -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[v.substitute(assignment) for v in r] for r in self.entries])

    def quad_form(self, y: Sequence) -> MvPoly:
        y = as_vector(y)
        out = MvPoly.zero(self.nvars)
        for i, yi in enumerate(y):
            for j, yj in enumerate(y):
                if yi and yj:
                    out = out + self.entries[i][j].scale(yi * yj)
        return out

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "dim": self.dim,
            "entries": [[v.to_json() for v in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data) -> "PolyMatrix":
        n = int(data["nvars"])
        return cls(n, [[MvPoly.from_json(v) for v in r] for r in data["entries"]])


def parameterized_bezoutian(ctx: HyperbolicContext, u: Sequence) -> PolyMatrix:
    """B_{p,e}(x)[u] = B_d(p_x, D_u p_x) with x symbolic."""
    du = ctx.derivative(u).taylor_coefficients(ctx.e)
    return PolyMatrix(ctx.nvars, bezout_entries(list(ctx.taylor), du, ctx.d))


def parameterized_hermite(ctx: HyperbolicContext, u: Sequence) -> PolyMatrix:
    """H_{p,e}(x)[u] = H_d(D_u p_x / p_x); polynomial in x because the lead of p_x is p(e)."""
    du = ctx.derivative(u).taylor_coefficients(ctx.e)
    return PolyMatrix(ctx.nvars, hankel_entries(du, list(ctx.taylor), ctx.d))


def parameterized_congruence(ctx: HyperbolicContext) -> PolyMatrix:
    """M_{p,e}(x) = p(e) * M_d(p_x / p(e)), so that B = M H M^T."""
    inv = 1 / ctx.pe
    mono = [c.scale(inv) for c in ctx.taylor]
    return PolyMatrix(ctx.nvars, congruence_entries(mono, ctx.d)).scale(ctx.pe)


def bezoutian_at(ctx: HyperbolicContext, x: Sequence, u: Sequence) -> QMatrix:
    px = ctx.line(x)
    du = ctx.derivative_line(x, u)
    return QMatrix(bezout_entries(px.coeffs, du.coeffs, ctx.d))


def hermite_at(ctx: HyperbolicContext, x: Sequence, u: Sequence) -> QMatrix:
    """H_{p,e}(x)[u] at a concrete rational x, without building the symbolic matrix."""
    return hankel_matrix(ctx.derivative_line(x, u), ctx.line(x), ctx.d)


# -- eigenvalues and line checks -------------------------------------------------

def hyperbolic_eigenvalues(ctx: HyperbolicContext, x: Sequence, width=Fraction(1, 10**9)) -> RootIsolation:
    f = ctx.eigen_poly(x)
    if not all_roots_real(f):
        raise NotHyperbolicError("p(te - x) has non-real roots", witness=tuple(as_vector(x)))
    return isolate_roots(f, width)


@dataclass(frozen=True)
class LineCheck:
    real_rooted: bool
    x: tuple[Fraction, ...]

    def __bool__(self):
        return self.real_rooted


def check_hyperbolic_on_line(ctx: HyperbolicContext, x: Sequence) -> LineCheck:
    x = ctx._vec(x)
    return LineCheck(all_roots_real(ctx.eigen_poly(x)), x)


@dataclass(frozen=True)
class TrialRecord:
    index: int
    x: tuple[Fraction, ...]
    verdict: str  # "ok" | "non_real_roots" | "hermite_not_psd"
    witness: tuple[Fraction, ...] | None = None  # y with y^T H y < 0

    def to_json(self) -> dict:
        return {
            "trial": self.index,
            "x": [str(v) for v in self.x],
            "verdict": self.verdict,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
        }


@dataclass
class HyperbolicityReport:
    verdict: str  # "passed" | "falsified"
    trials: int
    seed: int
    witness: tuple[Fraction, ...] | None = None
    reason: str | None = None
    records: list[TrialRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "passed"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "trials": self.trials,
            "seed": self.seed,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "reason": self.reason,
        }

    def json_lines(self) -> str:
        return "\n".join(json.dumps(r.to_json()) for r in self.records)


def _trial(ctx: HyperbolicContext, x: tuple[Fraction, ...], index: int) -> TrialRecord:
    # p(te - x) = (-1)^d p_x(-t), so p_x is real-rooted exactly when the eigen polynomial is
    px = ctx.line(x)
    if not all_roots_real(px):
        return TrialRecord(index, x, "non_real_roots")
    # D_e p_x is the t-derivative of p_x
    cert = ldl_psd_check(hankel_matrix(px.derivative(), px, ctx.d))
    if not cert.is_psd:
        return TrialRecord(index, x, "hermite_not_psd", cert.witness)
    return TrialRecord(index, x, "ok")


def _trial_batch(args):
    ctx, items = args
    return [_trial(ctx, x, i) for i, x in items]


def hyperbolicity_test(
    ctx: HyperbolicContext,
    trials: int = 200,
    seed: int = 0,
    complement: bool = False,
    jobs: int = 1,
    points: Sequence[Sequence] = (),
    stop_early: bool = True,
) -> HyperbolicityReport:
    """Randomized search for a line through ``e`` with non-real roots.

    Each trial checks real-rootedness of p(te - x) and PSD-ness of H_{p,e}(x)[e]
    exactly. ``points`` are tried first; the remaining samples are indexed by
    ``(seed, i)`` so the sequence does not depend on ``jobs``. With
    ``complement=True`` samples are projected onto a hyperplane missing ``e``,
    which loses nothing because p(te - x) only changes by a shift along e.
    """
    if trials < 1:
        raise ContractError("trials must be at least 1")
    items = [(i, ctx._vec(pt)) for i, pt in enumerate(points)]
    base = len(items)
    for i in range(trials):
        items.append((base + i, sample_point(seed, i, ctx.e, complement)))
    if jobs > 1 and len(items) > 1:
        chunks = [items[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = [r for batch in pool.map(_trial_batch, [(ctx, c) for c in chunks]) for r in batch]
        records.sort(key=lambda r: r.index)
        if stop_early:
            first = next((k for k, r in enumerate(records) if r.verdict != "ok"), None)
            if first is not None:
                records = records[: first + 1]
    else:
        records = []
        for i, x in items:
            rec = _trial(ctx, x, i)
            records.append(rec)
            if stop_early and rec.verdict != "ok":
                break
    bad = next((r for r in records if r.verdict != "ok"), None)
    if bad is not None:
        return HyperbolicityReport("falsified", len(records), seed, bad.x, bad.verdict, records)
    return HyperbolicityReport("passed", len(records), seed, None, None, records)


# -- cone membership --------------------------------------------------------------

@dataclass(frozen=True)
class Membership:
    status: str  # "inside" | "boundary" | "outside"
    zero_multiplicity: int
    witness: RootInterval | None = None  # encloses a negative eigenvalue

    @property
    def in_cone(self) -> bool:
        return self.status != "outside"

    def to_json(self) -> dict:
        out = {"status": self.status, "zero_multiplicity": self.zero_multiplicity}
        if self.witness is not None:
            out["witness"] = {"lo": str(self.witness.lo), "hi": str(self.witness.hi)}
        return out


def cone_membership(ctx: HyperbolicContext, u: Sequence) -> Membership:
    """Classify u against the closed cone {all hyperbolic eigenvalues >= 0}."""
    u = ctx._vec(u)
    f = ctx.eigen_poly(u)
    if not all_roots_real(f):
        raise NotHyperbolicError("p(te - u) has non-real roots; context is not hyperbolic", witness=u)
    zero_mult = 0
    g = f
    while g.coeff(0) == 0 and not g.is_zero:
        zero_mult += 1
        g = UvPoly(g.coeffs[1:])
    negatives = sturm_count(g, "-inf", 0)
    if negatives:
        iso = isolate_roots(g, Fraction(1, 2**20))
        return Membership("outside", zero_mult, iso[0])
    return Membership("inside" if zero_mult == 0 else "boundary", zero_mult)


# -- canonical functionals --------------------------------------------------------

@dataclass(frozen=True)
class CanonicalFunctionals:
    """Residue functionals at a concrete point, one row per distinct eigenvalue.

    Rows are ordered by decreasing eigenvalue; ``functionals[i][j]`` is
    lambda_i'(x)[e_j]. Values are rational approximations accurate to roughly
    ``precision``.
    """

    x: tuple[Fraction, ...]
    eigenvalues: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]
    functionals: tuple[tuple[Fraction, ...], ...]
    precision: Fraction
    intervals: tuple[RootInterval, ...] = ()

    def apply(self, i: int, u: Sequence) -> Fraction:
        return sum((a * as_fraction(b) for a, b in zip(self.functionals[i], u)), Fraction(0))

    def to_json(self) -> dict:
        return {
            "x": [str(v) for v in self.x],
            "eigenvalues": [str(v) for v in self.eigenvalues],
            "multiplicities": list(self.multiplicities),
            "functionals": [[str(v) for v in row] for row in self.functionals],
            "precision": str(self.precision),
        }


def _residue_numerators(ctx, x, q):
    out = []
    for dp in ctx.partials:
        line = dp.restrict_line(x, ctx.e)
        num, rem = line.divmod(q)
        if not rem.is_zero:
            # D_u p_x / p_x must have simple poles when p is hyperbolic along this line
            raise NotHyperbolicError("derivative is not divisible by the repeated part of p_x", witness=x)
        out.append(num)
    return out


def canonical_functionals(ctx: HyperbolicContext, x: Sequence, width=Fraction(1, 10**9),
                          max_retries: int = 8) -> CanonicalFunctionals:
    """Residues of D_u p_x / p_x at its poles t = -lambda_i, for u = e_1..e_n.

    Multiplicities are exact. Each residue N(r)/S'(r) is evaluated at the two ends
    of an isolating interval for r; if they differ by more than ``width`` the
    interval is refined further, up to ``max_retries`` times.
    """
    x = ctx._vec(x)
    width = as_fraction(width)
    px = ctx.line(x)
    if not all_roots_real(px):
        raise NotHyperbolicError("p_x has non-real roots", witness=x)
    sf = square_free_part(px)
    q = px // sf
    sfp = sf.derivative()
    nums = _residue_numerators(ctx, x, q)

    f = ctx.eigen_poly(x)
    f_sf = square_free_part(f)
    iso = isolate_roots(f, width)
    order = list(reversed(iso.intervals))

    eigs, mults, rows, ivs = [], [], [], []
    for iv in order:
        fine = iv
        w = width / 2**10
        for attempt in range(max_retries + 1):
            fine = refine_root(f_sf, fine, w)
            lo_vals = [n.eval(-fine.hi) / sfp.eval(-fine.hi) for n in nums]
            hi_vals = [n.eval(-fine.lo) / sfp.eval(-fine.lo) for n in nums]
            if all(abs(a - b) <= width for a, b in zip(lo_vals, hi_vals)):
                break
            w /= 2**16
        else:
            raise PrecisionError(f"residues near eigenvalue {float(iv.mid)} did not stabilize")
        r = -fine.mid
        rows.append(tuple(n.eval(r) / sfp.eval(r) for n in nums))
        eigs.append(fine.mid)
        mults.append(iv.multiplicity)
        ivs.append(fine)
    return CanonicalFunctionals(x, tuple(eigs), tuple(mults), tuple(rows), width, tuple(ivs))


# -- the certificate map phi -----------------------------------------------------

def q_poly(y: Sequence) -> UvPoly:
    """q_y(t) = y_1 + y_2 t + ... + y_d t^(d-1)."""
    return UvPoly(as_vector(y))


def phi_eval(ctx: HyperbolicContext, x: Sequence, y: Sequence, u: Sequence) -> Fraction:
    """y^T H_{p,e}(x)[u] y, exactly."""
    y = as_vector(y)
    if len(y) != ctx.d:
        raise DimensionError(f"y has length {len(y)}, expected {ctx.d}")
    return hermite_at(ctx, x, u).quad_form(y)


def phi_functional(ctx: HyperbolicContext, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    """The linear functional u -> phi(x, y)[u] as its coefficient vector."""
    return tuple(phi_eval(ctx, x, y, _unit(ctx.nvars, j)) for j in range(ctx.nvars))


@dataclass
class DualCheckReport:
    samples: int
    seed: int
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"samples": self.samples, "seed": self.seed, "ok": self.ok, "violations": self.violations}


DualOracle = Callable[[Sequence[Fraction], Sequence[Fraction], Sequence[Fraction]], bool]


def dual_cone_sample_check(ctx: HyperbolicContext, samples: int, dual_oracle: DualOracle,
                           seed: int = 0) -> DualCheckReport:
    """Check that every sampled phi(x, y)[.] lies in the dual cone, per an exact oracle.

    The oracle receives ``(xi, x, y)`` and returns True for dual membership.
    """
    rep = DualCheckReport(samples, seed)
    for i in range(samples):
        x = sample_point(seed, i, ctx.e)
        y = random_vector(rng_for(seed, i, "y"), ctx.d)
        xi = phi_functional(ctx, x, y)
        if not dual_oracle(xi, x, y):
            rep.violations.append({
                "index": i,
                "x": [str(v) for v in x],
                "y": [str(v) for v in y],
                "functional": [str(v) for v in xi],
            })
    return rep


def det_dual_oracle(size: int) -> DualOracle:
    """Dual membership for det on symmetric matrices in x_ij (i <= j, row-major) coordinates.

    A functional xi acts as U -> tr(Z U) with Z_ii = xi_ii, Z_ij = xi_ij / 2, and the
    PSD cone is self-dual.
    """
    idx = [(i, j) for i in range(size) for j in range(i, size)]

    def oracle(xi, x=None, y=None) -> bool:
        z = [[Fraction(0)] * size for _ in range(size)]
        for (i, j), v in zip(idx, as_vector(xi)):
            if i == j:
                z[i][i] = v
            else:
                z[i][j] = z[j][i] = v / 2
        return ldl_psd_check(QMatrix(z)).is_psd

    return oracle


def linear_forms_dual_oracle(forms: Sequence[Sequence]) -> DualOracle:
    """Dual cone of a product of linear forms is the cone they generate.

    Decided exactly: by Caratheodory, xi is in the cone iff it is a nonnegative
    combination of some linearly independent subset of the forms.
    """
    from itertools import combinations
    from .linalg import _rref, rank as _rank

    forms = [as_vector(a) for a in forms]
    n = len(forms[0])
    r = _rank(QMatrix(forms))

    def solve(subset, xi):
        # columns are the chosen forms; augmented system A c = xi
        rows = [[forms[k][i] for k in subset] + [xi[i]] for i in range(n)]
        red, piv = _rref(rows, len(subset) + 1)
        if len(subset) in piv:
            return None
        c = [Fraction(0)] * len(subset)
        for row, col in zip(red, piv):
            c[col] = row[-1]
        return c

    def oracle(xi, x=None, y=None) -> bool:
        xi = as_vector(xi)
        if not any(xi):
            return True
        for size in range(1, r + 1):
            for subset in combinations(range(len(forms)), size):
                c = solve(subset, xi)
                if c is not None and all(v >= 0 for v in c):
                    return True
        return False

    return oracle


def pencil_dual_oracle(pencil: Sequence[QMatrix]) -> DualOracle:
    """Dual membership for det(sum x_i A_i) with A(e) = I, via the explicit certificate.

    phi(x, y)[u] = tr(Z A(u)) with Z = q_y(-A(x))^2, so xi is certified dual when
    Z is PSD and A*(Z) = xi exactly.
    """
    pencil = [m if isinstance(m, QMatrix) else QMatrix(m) for m in pencil]
    size = pencil[0].rows

    def oracle(xi, x, y) -> bool:
        ax = QMatrix.zeros(size)
        for xi_, a in zip(as_vector(x), pencil):
            ax = ax + a.scale(xi_)
        neg = -ax
        qm = QMatrix.zeros(size)
        power = QMatrix.identity(size)
        for c in as_vector(y):
            qm = qm + power.scale(c)
            power = power @ neg
        z = qm @ qm
        adj = tuple((z @ a).trace() for a in pencil)
        return adj == tuple(as_vector(xi)) and ldl_psd_check(z).is_psd

    return oracle


@dataclass(frozen=True)
class DualWitness:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    value: Fraction
    attempts: int


def _lagrange(nodes: Sequence[Fraction], target: int, d: int) -> tuple[Fraction, ...]:
    poly = UvPoly([1])
    for k, r in enumerate(nodes):
        if k != target:
            poly = poly * UvPoly([-r, 1]).scale(1 / (nodes[target] - r))
    coeffs = list(poly.coeffs) + [Fraction(0)] * (d - len(poly.coeffs))
    return tuple(coeffs[:d])


def lagrange_witness(ctx: HyperbolicContext, u: Sequence, attempts: int = 50, seed: int = 0,
                     width=Fraction(1, 10**12)) -> DualWitness | None:
    """For u outside the cone, find (x, y) with phi(x, y)[u] < 0.

    Take x near u and a negative eigenvalue lambda_i(x); let q_y be the Lagrange
    polynomial that is 1 at -lambda_i and 0 at the other -lambda_j. Then
    phi(x, y)[u] is approximately lambda_i'(x)[u], which is m_i lambda_i(u) < 0 at x = u.
    The value returned is computed exactly.
    """
    u = ctx._vec(u)
    for a in range(attempts):
        if a == 0:
            x = u
        else:
            rng = rng_for(seed, a, "lagrange")
            x = tuple(ui + v / (1000 * a) for ui, v in zip(u, random_vector(rng, ctx.nvars)))
        try:
            iso = hyperbolic_eigenvalues(ctx, x, width)
        except NotHyperbolicError:
            continue
        nodes = [-iv.mid for iv in iso]
        for i, iv in enumerate(iso):
            if iv.mid >= 0:
                continue
            y = _lagrange(nodes, i, ctx.d)
            val = phi_eval(ctx, x, y, u)
            if val < 0:
                return DualWitness(x, y, val, a + 1)
    return None


# -- interlacing ----------------------------------------------------------------

@dataclass
class InterlaceReport:
    consistent: bool
    samples: int
    violation: tuple[Fraction, ...] | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "verdict": "consistent" if self.consistent else "violation",
            "samples": self.samples,
            "x": None if self.violation is None else [str(v) for v in self.violation],
            "reason": self.reason,
        }


def _interlace_at(ctx, q, x, width) -> str | None:
    fq = q.restrict_line(tuple(-v for v in x), ctx.e)
    if fq.degree != ctx.d - 1:
        return "degree_drop"
    if not all_roots_real(fq):
        return "non_real_roots"
    fp = ctx.eigen_poly(x)
    if not all_roots_real(fp):
        return "p_not_real_rooted"
    lp = isolate_roots(fp, width).expanded(descending=True)
    lq = isolate_roots(fq, width).expanded(descending=True)
    # lambda_1^p >= lambda_1^q >= lambda_2^p >= ... ; overlapping intervals pass
    for k, iq in enumerate(lq):
        if lp[k].hi < iq.lo or iq.hi < lp[k + 1].lo:
            return "order"
    return None


def check_interlaces(ctx: HyperbolicContext, q: MvPoly, samples: int = 100,
                     width=Fraction(1, 10**9), seed: int = 0) -> InterlaceReport:
    """Sampled check that the eigenvalues of q weave between those of p."""
    width = as_fraction(width)
    if q.nvars != ctx.nvars:
        raise DimensionError("q and p must share variables")
    hom = is_homogeneous(q)
    if not hom or (not q.is_zero and hom.degree != ctx.d - 1):
        raise ContractError(f"q must be homogeneous of degree {ctx.d - 1}")
    for i in range(samples):
        x = sample_point(seed, i, ctx.e)
        reason = _interlace_at(ctx, q, x, width)
        if reason is not None:
            return InterlaceReport(False, i + 1, x, reason)
    return InterlaceReport(True, samples)
