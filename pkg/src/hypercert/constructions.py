"""Concrete hyperbolic polynomials and the lifts that preserve (non-)SOS-hyperbolicity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Sequence

from .errors import ContractError, DimensionError, UnsupportedError
from .graphs import Graph, clique_number, maximum_cliques
from .hyperbolic import HyperbolicContext
from .linalg import QMatrix
from .poly import MvPoly, as_fraction, as_vector, is_homogeneous

__all__ = [
    "LabeledCubic",
    "NesterovPoint",
    "SpecialPoly",
    "vamos_specialized",
    "VAMOS_E",
    "VAMOS_U",
    "graph_cubic",
    "graph_q",
    "std_cubic",
    "normalization_coefficient",
    "nesterov_maximizer",
    "degree_lift",
    "variable_lift",
    "vamos_family",
    "pencil_det",
    "det_symmetric",
    "linear_forms",
    "singular_cubic",
]

VAMOS_E = (Fraction(0), Fraction(0), Fraction(1), Fraction(1))
VAMOS_U = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))


def vamos_specialized() -> MvPoly:
    """x3^2 x4^2 + 4 (x1x2x3 + x1x2x4 + x1x3x4 + x2x3x4)(x1 + x2 + x3 + x4)."""
    x1, x2, x3, x4 = MvPoly.variables(4)
    e3 = x1 * x2 * x3 + x1 * x2 * x4 + x1 * x3 * x4 + x2 * x3 * x4
    return x3**2 * x4**2 + 4 * e3 * (x1 + x2 + x3 + x4)


# -- graph cubics ------------------------------------------------------------------

def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def normalization_coefficient(k) -> Fraction:
    """2 / (sqrt(2/27) sqrt(1 - 1/k)) when it is rational (it is 9 for k = 3)."""
    k = as_fraction(k)
    if k <= 1:
        raise ContractError("k must exceed 1")
    c = _rational_sqrt(54 * k / (k - 1))
    if c is None:
        raise UnsupportedError(f"the normalized graph cubic has an irrational coefficient for k = {k}")
    return c


@dataclass(frozen=True)
class LabeledCubic:
    """A graph cubic with its variable layout: x0, then one x per vertex, then one y per edge."""

    poly: MvPoly
    graph: Graph
    k: Fraction
    normalized: bool
    names: tuple[str, ...]

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def e(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(i == 0)) for i in range(self.nvars))

    def vertex_index(self, v: int) -> int:
        return 1 + v

    def edge_index(self, u: int, v: int) -> int:
        edge = (min(u, v), max(u, v))
        return 1 + self.graph.nverts + self.graph.edge_list().index(edge)

    def context(self) -> HyperbolicContext:
        return HyperbolicContext.create(self.poly, self.e)

    def variable_map(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}


def _cubic_names(g: Graph) -> tuple[str, ...]:
    return ("x0",) + tuple(f"x{v + 1}" for v in range(g.nverts)) + tuple(
        f"y{u + 1}_{v + 1}" for u, v in g.edge_list()
    )


def graph_q(g: Graph, offset: int = 1, nvars: int | None = None) -> MvPoly:
    """q_G = sum over edges of x_i x_j y_ij, laid out as in `LabeledCubic`."""
    nv = g.nverts
    n = nvars if nvars is not None else offset + nv + len(g.edges)
    terms = []
    for idx, (u, v) in enumerate(g.edge_list()):
        exp = [0] * n
        exp[offset + u] += 1
        exp[offset + v] += 1
        exp[offset + nv + idx] += 1
        terms.append((tuple(exp), 1))
    return MvPoly(n, terms)


def graph_cubic(g: Graph, k, normalized: bool = False) -> LabeledCubic:
    """(2k/(k-1)) x0^3 - x0 (|x|^2 + |y|^2) + q_G, hyperbolic along e0 iff omega(G) <= k.

    With ``normalized`` the form is x0^3 - 3 x0 (|x|^2 + |y|^2) + c q_G with
    c = `normalization_coefficient(k)`, available only when c is rational.
    """
    k = as_fraction(k)
    if k == 1:
        raise ContractError("k = 1 makes 2k/(k-1) undefined")
    n = 1 + g.nverts + len(g.edges)
    xs = MvPoly.variables(n)
    x0 = xs[0]
    sq = MvPoly.zero(n)
    for v in xs[1:]:
        sq = sq + v * v
    q = graph_q(g)
    if normalized:
        c = normalization_coefficient(k)
        poly = x0**3 - 3 * x0 * sq + q.scale(c)
    else:
        poly = (x0**3).scale(2 * k / (k - 1)) - x0 * sq + q
    return LabeledCubic(poly, g, k, normalized, _cubic_names(g))


def std_cubic(q: MvPoly) -> MvPoly:
    """x0^3 - 3 x0 |x|^2 + 2 q(x) in the variables (x0, x1, ..., xn)."""
    hom = is_homogeneous(q)
    if not q.is_zero and (not hom or hom.degree != 3):
        raise ContractError("q must be a homogeneous cubic")
    n = q.nvars + 1
    xs = MvPoly.variables(n)
    sq = MvPoly.zero(n)
    for v in xs[1:]:
        sq = sq + v * v
    return xs[0] ** 3 - 3 * xs[0] * sq + q.embed(n, list(range(1, n))).scale(2)


@dataclass(frozen=True)
class NesterovPoint:
    """The maximizer of q_G on the unit sphere, described through squared coordinates.

    Coordinates in the (x, y) block are sqrt(squares[i]) with every sign +1, which
    satisfies sign(y_ij) = sign(x_i) sign(x_j).
    """

    graph: Graph
    omega: int
    clique: tuple[int, ...]
    squares: tuple[Fraction, ...]  # one per x then y variable
    value_squared: Fraction  # (2/27)(1 - 1/omega)

    def q_squared(self) -> Fraction:
        """q_G(point)^2 computed exactly from the squared coordinates."""
        nv = self.graph.nverts
        radicands = []
        for idx, (u, v) in enumerate(self.graph.edge_list()):
            s = self.squares[u] * self.squares[v] * self.squares[nv + idx]
            if s:
                radicands.append(s)
        if not radicands:
            return Fraction(0)
        base = radicands[0]
        total = Fraction(0)
        for s in radicands:
            ratio = _rational_sqrt(s / base)
            if ratio is None:
                raise UnsupportedError("terms do not share a common radicand")
            total += ratio
        return base * total * total

    def norm_squared(self) -> Fraction:
        return sum(self.squares, Fraction(0))

    def approximate(self, digits: int = 12) -> tuple[Fraction, ...]:
        """Rational point with each coordinate within 10^-digits of sqrt(square)."""
        scale = 10**digits
        out = []
        for s in self.squares:
            num = isqrt(s.numerator * scale * scale // s.denominator)
            out.append(Fraction(num, scale))
        return tuple(out)

    def line_point(self, digits: int = 12) -> tuple[Fraction, ...]:
        """(0, approximate point): the x0 coordinate prepended for a graph cubic."""
        return (Fraction(0),) + self.approximate(digits)


def nesterov_maximizer(g: Graph) -> NesterovPoint:
    res = clique_number(g)
    w = res.omega
    if w < 2:
        raise ContractError("the graph needs at least one edge")
    clique = set(res.clique)
    xs = [Fraction(2, 3 * w) if v in clique else Fraction(0) for v in range(g.nverts)]
    ys = [
        Fraction(1, 3 * comb(w, 2)) if (u in clique and v in clique) else Fraction(0)
        for u, v in g.edge_list()
    ]
    return NesterovPoint(g, w, res.clique, tuple(xs + ys), Fraction(2, 27) * (1 - Fraction(1, w)))


# -- lifts ------------------------------------------------------------------------

def degree_lift(ctx: HyperbolicContext, u: Sequence, ell: MvPoly, k: int) -> MvPoly:
    """ell^k p, which keeps u in the cone when ell(e) > 0 and ell(u) = 0."""
    u = as_vector(u)
    if ell.nvars != ctx.nvars:
        raise DimensionError("ell must use the same variables as p")
    hom = is_homogeneous(ell)
    if ell.is_zero or not hom or hom.degree != 1:
        raise ContractError("ell must be a nonzero linear form")
    if ell.eval(ctx.e) <= 0:
        raise ContractError("need ell(e) > 0")
    if ell.eval(u) != 0:
        raise ContractError("need ell(u) = 0")
    if k < 0:
        raise ContractError("k must be nonnegative")
    return ell**k * ctx.p


def variable_lift(ctx: HyperbolicContext, q_linear: MvPoly, e_prime: Sequence) -> MvPoly:
    """q(e') p(x) + q(x') D_e p(x) in the variables (x, x')."""
    e_prime = as_vector(e_prime)
    hom = is_homogeneous(q_linear)
    if q_linear.is_zero or not hom or hom.degree != 1:
        raise ContractError("q must be a nonzero linear form")
    if len(e_prime) != q_linear.nvars:
        raise DimensionError("e' must match the variables of q")
    qe = q_linear.eval(e_prime)
    if qe <= 0:
        raise ContractError("need q(e') > 0")
    n, m = ctx.nvars, q_linear.nvars
    total = n + m
    p_up = ctx.p.embed(total)
    dep = ctx.derivative(ctx.e).embed(total)
    q_up = q_linear.embed(total, list(range(n, total)))
    return p_up.scale(qe) + q_up * dep


def vamos_family(n: int, d: int) -> HyperbolicContext:
    """x3^(d-4) (p + (x5 + ... + xn) D_e p) for the specialized Vamos p, e = (0,0,1,1,0,...)."""
    if n < 4 or d < 4:
        raise ContractError("need n >= 4 and d >= 4")
    base = HyperbolicContext.create(vamos_specialized(), VAMOS_E)
    if n > 4:
        m = n - 4
        q = MvPoly.linear([1] * m)
        poly = variable_lift(base, q, [Fraction(1, m)] * m)
    else:
        poly = base.p
    e = VAMOS_E + (Fraction(0),) * (n - 4)
    ctx = HyperbolicContext.create(poly, e)
    if d > 4:
        u = VAMOS_U + (Fraction(0),) * (n - 4)
        poly = degree_lift(ctx, u, MvPoly.var(n, 2), d - 4)
        ctx = HyperbolicContext.create(poly, e)
    return ctx


# -- determinantal and other special polynomials ------------------------------------

@dataclass(frozen=True)
class SpecialPoly:
    """A context plus, where one exists, the symmetric pencil A with p = det A(x)."""

    kind: str
    ctx: HyperbolicContext
    pencil: tuple[QMatrix, ...] | None = None
    forms: tuple[tuple[Fraction, ...], ...] | None = None
    names: tuple[str, ...] = field(default=())


def pencil_det(pencil: Sequence[QMatrix]) -> MvPoly:
    """det(sum_i x_i A_i) by Laplace expansion along rows with memoized minors."""
    n = len(pencil)
    size = pencil[0].rows
    xs = MvPoly.variables(n)
    entries = [[MvPoly.zero(n) for _ in range(size)] for _ in range(size)]
    for xi, a in zip(xs, pencil):
        for i in range(size):
            for j in range(size):
                if a[i, j]:
                    entries[i][j] = entries[i][j] + xi.scale(a[i, j])
    return _laplace(entries, n)


def _laplace(entries, nvars) -> MvPoly:
    size = len(entries)
    memo: dict[tuple[int, ...], MvPoly] = {}

    def minor(row: int, cols: tuple[int, ...]) -> MvPoly:
        if row == size:
            return MvPoly.constant(nvars, 1)
        if cols in memo:
            return memo[cols]
        out = MvPoly.zero(nvars)
        for k, c in enumerate(cols):
            a = entries[row][c]
            if a.is_zero:
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = a * sub
            out = out + term if k % 2 == 0 else out - term
        memo[cols] = out
        return out

    return minor(0, tuple(range(size)))


def det_symmetric(d: int) -> SpecialPoly:
    """det of the generic symmetric d x d matrix in variables x_ij, i <= j, row-major."""
    idx = [(i, j) for i in range(d) for j in range(i, d)]
    pencil = []
    for i, j in idx:
        m = [[0] * d for _ in range(d)]
        m[i][j] = m[j][i] = 1
        pencil.append(QMatrix(m))
    p = pencil_det(pencil)
    e = tuple(Fraction(int(i == j)) for i, j in idx)
    names = tuple(f"x{i + 1}{j + 1}" for i, j in idx)
    return SpecialPoly("det", HyperbolicContext.create(p, e), tuple(pencil), None, names)


def symmetric_coordinates(m: QMatrix) -> tuple[Fraction, ...]:
    """A symmetric matrix as a point in the x_ij (i <= j) coordinates of `det_symmetric`."""
    d = m.rows
    return tuple(m[i, j] for i in range(d) for j in range(i, d))


def linear_forms(forms: Sequence[Sequence], e: Sequence) -> SpecialPoly:
    forms = tuple(as_vector(a) for a in forms)
    e = as_vector(e)
    n = len(e)
    p = MvPoly.constant(n, 1)
    for a in forms:
        if len(a) != n:
            raise DimensionError("every form must have one coefficient per variable")
        if sum(ai * ei for ai, ei in zip(a, e)) <= 0:
            raise ContractError(f"form {a} is not positive at e")
        p = p * MvPoly.linear(a)
    return SpecialPoly("linear_forms", HyperbolicContext.create(p, e), None, forms)


def singular_cubic() -> SpecialPoly:
    """det [[x3, 0, x1], [0, x1 + x3, x2], [x1, x2, x3]] with e = (0, 0, 1)."""
    a1 = QMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    a2 = QMatrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])
    a3 = QMatrix.identity(3)
    pencil = (a1, a2, a3)
    ctx = HyperbolicContext.create(pencil_det(pencil), (0, 0, 1))
    return SpecialPoly("singular_cubic", ctx, pencil)
