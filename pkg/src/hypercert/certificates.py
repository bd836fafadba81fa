"""Exact verification of sum-of-squares certificates and of non-SOS obstructions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Mapping, Sequence

from .constructions import VAMOS_E, VAMOS_U, graph_q, std_cubic, vamos_specialized
from .errors import CertificateError, ContractError, DimensionError, UnsupportedError
from .graphs import Graph, icosahedral_graph, maximum_cliques
from .hyperbolic import HyperbolicContext, parameterized_bezoutian
from .linalg import PsdCertificate, QMatrix, ldl_psd_check, mat_mul, nullspace, rank
from .newton import compositions, half_polytope_points, newton_polytope
from .poly import MvPoly, UvPoly, as_fraction, as_vector, is_homogeneous
from .roots import isolate_roots, refine_root, square_free_part, sturm_count

__all__ = [
    "GramCertificate",
    "GramVerdict",
    "verify_gram",
    "AdmissibleBasis",
    "admissible_square_basis",
    "SeparationCertificate",
    "SeparationVerdict",
    "verify_separation",
    "VamosReport",
    "vamos_certificate",
    "vamos_sextic",
    "ObstructionReport",
    "icosahedral_obstruction",
    "clique_vectors",
    "sos_recovery_check",
    "RecoveryVerdict",
    "monomial_vector",
    "std_cubic_sos_necessity",
    "gram_exists",
    "load_data",
]


def load_data(name: str) -> dict:
    with resources.files("hypercert.data").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


def _sym_form(basis: Sequence[MvPoly], gram: QMatrix) -> MvPoly:
    n = basis[0].nvars
    out = MvPoly.zero(n)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            g = gram[i, j]
            if g:
                out = out + (bi * bj).scale(g)
    return out


def _first_mismatch(a: MvPoly, b: MvPoly):
    diff = a - b
    if diff.is_zero:
        return None
    return diff.items()[0]


# -- Gram certificates -------------------------------------------------------------

@dataclass(frozen=True)
class GramCertificate:
    target: MvPoly
    basis: tuple[MvPoly, ...]
    gram: QMatrix

    def __post_init__(self):
        if len(self.basis) != self.gram.rows or self.gram.rows != self.gram.cols:
            raise DimensionError("gram size must equal the basis length")

    def to_json(self) -> dict:
        return {
            "format": "hypercert-gram",
            "version": 1,
            "target": self.target.to_json(),
            "basis": [b.to_json() for b in self.basis],
            "gram": [[str(v) for v in row] for row in self.gram.data],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GramCertificate":
        try:
            target = MvPoly.from_json(data["target"])
            basis = tuple(MvPoly.from_json(b) for b in data["basis"])
            gram = QMatrix([[as_fraction(v) for v in row] for row in data["gram"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed gram certificate: {exc}") from exc
        return cls(target, basis, gram)


@dataclass(frozen=True)
class GramVerdict:
    status: str  # "valid_sos" | "identity_fail" | "gram_not_psd"
    monomial: tuple[int, ...] | None = None
    residual: Fraction | None = None
    psd: PsdCertificate | None = None

    @property
    def ok(self) -> bool:
        return self.status == "valid_sos"

    def to_json(self) -> dict:
        out = {"verdict": self.status}
        if self.monomial is not None:
            out["monomial"] = list(self.monomial)
            out["residual"] = str(self.residual)
        if self.psd is not None and not self.psd.is_psd:
            out["witness"] = [str(v) for v in self.psd.witness]
        return out


def verify_gram(cert: GramCertificate) -> GramVerdict:
    """Check basis^T G basis == target exactly, then G >= 0 by exact LDL."""
    if not cert.gram.is_symmetric():
        raise ContractError("gram matrix must be symmetric")
    mism = _first_mismatch(_sym_form(cert.basis, cert.gram), cert.target)
    if mism is not None:
        return GramVerdict("identity_fail", mism[0], mism[1])
    psd = ldl_psd_check(cert.gram)
    if not psd.is_psd:
        return GramVerdict("gram_not_psd", psd=psd)
    return GramVerdict("valid_sos", psd=psd)


# -- admissible square bases -------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleBasis:
    extreme_points: tuple[tuple[int, ...], ...]
    monomials: tuple[tuple[int, ...], ...]
    basis: tuple[MvPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def spans(self, polys: Sequence[MvPoly]) -> bool:
        """True iff ``polys`` span exactly the same space as the basis."""
        mine = _coeff_rows(self.basis, self.monomials)
        theirs = _coeff_rows(polys, self.monomials)
        if theirs is None:
            return False
        r = rank(QMatrix(mine))
        return rank(QMatrix(theirs)) == r and rank(QMatrix(mine + theirs)) == r


def _coeff_rows(polys, monomials):
    idx = {m: k for k, m in enumerate(monomials)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(monomials)
        for exp, c in p.terms.items():
            if exp not in idx:
                return None
            row[idx[exp]] = c
        rows.append(row)
    return rows


def _monomial(nvars: int, exp) -> MvPoly:
    return MvPoly(nvars, [(tuple(exp), 1)])


def admissible_square_basis(target: MvPoly, vanish_points: Sequence[Sequence] = ()) -> AdmissibleBasis:
    """Span of the polynomials that can appear as squares in an SOS decomposition of target.

    Monomials come from half the Newton polytope; each vanish point where the
    target is zero forces every square to vanish there too.
    """
    hom = is_homogeneous(target)
    if target.is_zero or not hom or hom.degree % 2:
        raise ContractError("target must be a nonzero homogeneous form of even degree")
    exps = [e for e, _ in target.items()]
    try:
        poly = newton_polytope(exps)
    except UnsupportedError:
        raise
    monos = half_polytope_points(exps)
    n = target.nvars
    for pt in vanish_points:
        if target.eval(pt) != 0:
            raise ContractError(f"target does not vanish at {list(pt)}")
    rows = [[_monomial(n, m).eval(pt) for m in monos] for pt in vanish_points]
    if rows:
        ns = nullspace(QMatrix(rows))
        coeffs = ns.columns()
    else:
        coeffs = [tuple(Fraction(int(i == j)) for j in range(len(monos))) for i in range(len(monos))]
    basis = []
    for vec in coeffs:
        basis.append(MvPoly(n, [(m, c) for m, c in zip(monos, vec) if c]))
    verts = tuple(tuple(int(v) for v in p) for p in poly.vertices())
    return AdmissibleBasis(verts, tuple(monos), tuple(basis))


# -- separating functionals --------------------------------------------------------

@dataclass(frozen=True)
class SeparationCertificate:
    target: MvPoly
    functional: Mapping[tuple[int, ...], Fraction]
    admissible_basis: tuple[MvPoly, ...]

    @property
    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.functional, reverse=True)

    def to_json(self) -> dict:
        return {
            "format": "hypercert-separation",
            "version": 1,
            "target": self.target.to_json(),
            "support": [
                {"exp": list(e), "c": str(self.target.coeff(e)), "ell": str(self.functional[e])}
                for e in self.support
            ],
            "admissible_basis": [b.to_json() for b in self.admissible_basis],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SeparationCertificate":
        try:
            target = MvPoly.from_json(data["target"])
            functional = {tuple(int(v) for v in s["exp"]): as_fraction(s["ell"]) for s in data["support"]}
            basis = tuple(MvPoly.from_json(b) for b in data["admissible_basis"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed separation certificate: {exc}") from exc
        return cls(target, functional, basis)


@dataclass(frozen=True)
class SeparationVerdict:
    status: str  # "not_sos" | "inconclusive"
    value: Fraction
    moment_matrix: QMatrix
    psd: PsdCertificate
    reason: str | None = None

    @property
    def margin(self) -> Fraction:
        return -self.value

    def to_json(self) -> dict:
        out = {"verdict": self.status, "value": str(self.value)}
        if self.status == "not_sos":
            out["margin"] = str(self.margin)
        else:
            out["reason"] = self.reason
        out["moment_matrix"] = [[str(v) for v in r] for r in self.moment_matrix.data]
        out["moment_psd"] = self.psd.is_psd
        return out


def _apply(functional: Mapping, poly: MvPoly, what: str) -> Fraction:
    total = Fraction(0)
    for exp, c in poly.terms.items():
        if exp not in functional:
            raise CertificateError(f"{what}: monomial {list(exp)} has no functional value")
        total += c * functional[exp]
    return total


def verify_separation(cert: SeparationCertificate) -> SeparationVerdict:
    """not_sos iff the moment matrix [l(b_i b_j)] is PSD and l(target) < 0.

    If target = sum G_ij b_i b_j with G >= 0 then l(target) = tr(G M) >= 0, so the
    two conditions together rule out every Gram matrix over the basis.
    """
    functional = {tuple(k): as_fraction(v) for k, v in cert.functional.items()}
    value = _apply(functional, cert.target, "target")
    b = cert.admissible_basis
    m = QMatrix([[_apply(functional, bi * bj, "basis product") for bj in b] for bi in b])
    psd = ldl_psd_check(m)
    if not psd.is_psd:
        return SeparationVerdict("inconclusive", value, m, psd, "psd_fail")
    if value >= 0:
        return SeparationVerdict("inconclusive", value, m, psd, "nonnegative_value")
    return SeparationVerdict("not_sos", value, m, psd)


def vamos_sextic() -> MvPoly:
    """e1^T B(x)[u] e1 for the specialized Vamos quartic, restricted to x4 = -x1 - x2 - x3."""
    ctx = HyperbolicContext.create(vamos_specialized(), VAMOS_E)
    entry = parameterized_bezoutian(ctx, VAMOS_U)[0, 0]
    x1, x2, x3 = MvPoly.variables(3)
    return entry.compose([x1, x2, x3, -(x1 + x2 + x3)])


@dataclass
class VamosReport:
    certificate: SeparationCertificate
    verdict: SeparationVerdict
    sextic: MvPoly
    admissible: AdmissibleBasis
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict.status == "not_sos" and all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "certificate": "vamos-not-sos",
            **self.verdict.to_json(),
            "checks": self.checks,
        }


def vamos_certificate(data: Mapping | None = None) -> VamosReport:
    """Rebuild the sextic from scratch, match it to the shipped data, and verify."""
    data = load_data("vamos_not_sos.json") if data is None else data
    cert = SeparationCertificate.from_json(data)
    sextic = vamos_sextic()
    if sextic != cert.target:
        diff = _first_mismatch(sextic, cert.target)
        raise CertificateError(f"recomputed sextic differs from the shipped target at {diff}")
    vanish = [as_vector(p) for p in data.get("vanish_points", [])]
    adm = admissible_square_basis(sextic, vanish)
    verdict = verify_separation(cert)
    checks = {
        "target_matches_recomputed": True,
        "basis_spans_admissible_subspace": adm.spans(cert.admissible_basis),
        "vanishes_at_points": all(sextic.eval(p) == 0 for p in vanish),
    }
    exp = data.get("expected", {})
    if "value" in exp:
        checks["value_matches_expected"] = verdict.value == as_fraction(exp["value"])
    if "moment_matrix" in exp:
        expected = QMatrix([[as_fraction(v) for v in r] for r in exp["moment_matrix"]])
        checks["moment_matrix_matches_expected"] = verdict.moment_matrix == expected
    return VamosReport(cert, verdict, sextic, adm, checks)


# -- the icosahedral obstruction ----------------------------------------------------

def clique_vectors(g: Graph, cliques: Sequence[Sequence[int]], omega: int) -> QMatrix:
    """Rows (x_C, y_C): 2/(3 omega) on clique vertices, 1/(3 C(omega,2)) on clique edges."""
    edges = g.edge_list()
    xv, yv = Fraction(2, 3 * omega), Fraction(1, 3 * comb(omega, 2))
    rows = []
    for c in cliques:
        cs = set(c)
        row = [xv if v in cs else Fraction(0) for v in range(g.nverts)]
        row += [yv if (a in cs and b in cs) else Fraction(0) for a, b in edges]
        rows.append(row)
    return QMatrix(rows)


@dataclass
class ObstructionReport:
    clique_vectors: QMatrix
    complement_basis: QMatrix
    weight_matrix: QMatrix
    restricted: QMatrix
    psd: PsdCertificate
    trace_value: Fraction
    stages: dict[str, bool] = field(default_factory=dict)
    failed_stage: str | None = None

    @property
    def complement_dim(self) -> int:
        return self.complement_basis.cols

    @property
    def ok(self) -> bool:
        return self.failed_stage is None

    def to_json(self) -> dict:
        return {
            "certificate": "icosa-not-sos",
            "verdict": "obstruction" if self.ok else "failed",
            "failed_stage": self.failed_stage,
            "clique_count": self.clique_vectors.rows,
            "complement_dim": self.complement_dim,
            "restricted_psd": self.psd.is_psd,
            "trace": str(self.trace_value),
            "stages": self.stages,
        }


def icosahedral_obstruction(basis: QMatrix | None = None, data: Mapping | None = None) -> ObstructionReport:
    """No correlation matrix has every maximum-clique vector of the icosahedral graph in its nullspace.

    With D = diag(vertex_weight I, edge_weight I), V^T D V >= 0 for a basis V of the
    complement while tr(D X) < 0 for every unit-diagonal X; a correlation matrix
    V M V^T with M >= 0 would need tr(D X) = tr(V^T D V M) >= 0.
    """
    data = load_data("icosahedral_obstruction.json") if data is None else data
    g = icosahedral_graph()
    omega = int(data.get("omega", 3))
    cliques = maximum_cliques(g, omega)
    vecs = clique_vectors(g, cliques, omega)
    v = nullspace(vecs) if basis is None else basis
    nv, ne = g.nverts, len(g.edges)
    wv, we = as_fraction(data["vertex_weight"]), as_fraction(data["edge_weight"])
    dmat = QMatrix.diag([wv] * nv + [we] * ne)
    restricted = v.T @ dmat @ v
    psd = ldl_psd_check(restricted)
    trace_value = dmat.trace()
    exp = data.get("expected", {})
    stages = {
        "clique_count": len(cliques) == int(exp.get("clique_count", len(cliques))),
        "complement_orthogonal": all(x == 0 for row in (vecs @ v).data for x in row),
        "complement_dimension": v.cols == vecs.cols - rank(vecs)
        and rank(v) == v.cols
        and v.cols == int(exp.get("complement_dim", v.cols)),
        "restricted_psd": psd.is_psd,
        "negative_trace": trace_value < 0,
    }
    if "trace" in exp:
        stages["trace_matches_expected"] = trace_value == as_fraction(exp["trace"])
    failed = next((k for k, ok in stages.items() if not ok), None)
    return ObstructionReport(vecs, v, dmat, restricted, psd, trace_value, stages, failed)


# -- SOS recovery through the determinant ------------------------------------------

def monomial_vector(m: int, d: int) -> list[MvPoly]:
    """All monomials of degree d in m variables, lex descending."""
    return [_monomial(m, e) for e in compositions(d, m)]


@dataclass(frozen=True)
class RecoveryVerdict:
    status: str  # "identity_holds" | "mismatch"
    recovered: MvPoly
    monomial: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.status == "identity_holds"

    def to_json(self) -> dict:
        out = {"verdict": self.status, "recovered": self.recovered.to_json()}
        if self.monomial is not None:
            out["monomial"] = list(self.monomial)
        return out


def recovery_matrices(q_gram: QMatrix, d: int, m: int) -> tuple[list[list[MvPoly]], QMatrix]:
    """F(x) = [[0, m_d^T], [m_d, 0]] and U = diag(0, Q)."""
    mono = monomial_vector(m, d)
    size = len(mono) + 1
    zero = MvPoly.zero(m)
    f = [[zero] * size for _ in range(size)]
    for k, mk in enumerate(mono):
        f[0][k + 1] = mk
        f[k + 1][0] = mk
    u = [[Fraction(0)] * size for _ in range(size)]
    for i in range(len(mono)):
        for j in range(len(mono)):
            u[i + 1][j + 1] = q_gram[i, j]
    return f, QMatrix(u)


def sos_recovery_check(q_gram: QMatrix, d: int, m: int, target: MvPoly | None = None) -> RecoveryVerdict:
    """Compare tr(U F(x)^2), the determinant's phi at (F(x), e_2), with m_d^T Q m_d.

    ``target`` defaults to m_d^T Q m_d computed directly; pass another
    polynomial to check a claimed identity.
    """
    size = comb(m + d - 1, d)
    if q_gram.rows != size or q_gram.cols != size:
        raise DimensionError(f"Q must be {size}x{size} for m={m}, d={d}")
    f, u = recovery_matrices(q_gram, d, m)
    f2 = mat_mul(f, f)
    recovered = MvPoly.zero(m)
    for i in range(len(f2)):
        for j in range(len(f2)):
            if u[j, i]:
                recovered = recovered + f2[i][j].scale(u[j, i])
    if target is None:
        target = _sym_form(monomial_vector(m, d), q_gram)
    mism = _first_mismatch(recovered, target)
    if mism is not None:
        return RecoveryVerdict("mismatch", recovered, mism[0])
    return RecoveryVerdict("identity_holds", recovered)


def std_cubic_sos_necessity(q: MvPoly) -> MvPoly:
    """|x|^4 - 2 z q(x) + z^2 |x|^2 in the variables (x1, ..., xn, z)."""
    hom = is_homogeneous(q)
    if not q.is_zero and (not hom or hom.degree != 3):
        raise ContractError("q must be a homogeneous cubic")
    n = q.nvars + 1
    xs = MvPoly.variables(n)
    z = xs[-1]
    sq = MvPoly.zero(n)
    for v in xs[:-1]:
        sq = sq + v * v
    return sq * sq - 2 * z * q.embed(n) + z * z * sq


# -- brute-force Gram existence for tiny bases ---------------------------------------

def _gram_affine(target: MvPoly, basis: Sequence[MvPoly]):
    """Symmetric G0 and directions G1..Gk with sum G_ij b_i b_j = target exactly, or None."""
    k = len(basis)
    slots = [(i, j) for i in range(k) for j in range(i, k)]
    monos = set(target.terms)
    prods = {}
    for i, j in slots:
        pr = basis[i] * basis[j]
        if i != j:
            pr = pr.scale(2)
        prods[(i, j)] = pr
        monos |= set(pr.terms)
    monos = sorted(monos)
    rows = [[prods[s].coeff(mo) for s in slots] + [target.coeff(mo)] for mo in monos]
    from .linalg import _rref

    red, piv = _rref(rows, len(slots) + 1)
    if len(slots) in piv:
        return None
    free = [c for c in range(len(slots)) if c not in piv]

    def to_matrix(vec):
        g = [[Fraction(0)] * k for _ in range(k)]
        for (i, j), v in zip(slots, vec):
            g[i][j] = g[j][i] = v
        return QMatrix(g)

    particular = [Fraction(0)] * len(slots)
    for row, c in zip(red, piv):
        particular[c] = row[-1]
    directions = []
    for f in free:
        vec = [Fraction(0)] * len(slots)
        vec[f] = Fraction(1)
        for row, c in zip(red, piv):
            vec[c] = -row[f]
        directions.append(to_matrix(vec))
    return to_matrix(particular), directions


def _principal_minor_polys(g0: QMatrix, g1: QMatrix) -> list[UvPoly]:
    """det of every principal submatrix of g0 + t g1 as a polynomial in t."""
    from itertools import combinations

    k = g0.rows
    out = []
    for size in range(1, k + 1):
        for idx in combinations(range(k), size):
            # exact interpolation through size + 1 integer nodes
            pts = list(range(size + 1))
            vals = [(g0 + g1.scale(t)).submatrix(idx, idx).det() for t in pts]
            out.append(_interpolate(pts, vals))
    return out


def _interpolate(xs, ys) -> UvPoly:
    total = UvPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UvPoly([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UvPoly([-xj, 1]).scale(Fraction(1, xi - xj))
        total = total + term
    return total


def _sign_at_root(g: UvPoly, h: UvPoly, lo: Fraction, hi: Fraction) -> int:
    """Sign of g at the unique root of square-free h in (lo, hi]."""
    if g.is_zero:
        return 0
    common = h.gcd(g)
    if common.degree > 0 and sturm_count(common, lo, hi) == 1:
        return 0
    from .roots import RootInterval

    iv = RootInterval(lo, hi, 1)
    while sturm_count(g, iv.lo, iv.hi) > 0 or g.eval(iv.lo) == 0:
        iv = refine_root(h, iv, iv.width / 2)
        if iv.exact:
            v = g.eval(iv.lo)
            return (v > 0) - (v < 0)
    v = g.eval(iv.hi)
    return (v > 0) - (v < 0)


def gram_exists(target: MvPoly, basis: Sequence[MvPoly]) -> bool:
    """Exact decision: is there G >= 0 with basis^T G basis = target?

    Supports bases of size <= 3 whose Gram family has at most one free parameter;
    the PSD set is then an interval in t cut out by principal minors.
    """
    if len(basis) > 3:
        raise UnsupportedError("brute-force Gram search is limited to bases of size 3")
    aff = _gram_affine(target, basis)
    if aff is None:
        return False
    g0, dirs = aff
    if not dirs:
        return ldl_psd_check(g0).is_psd
    if len(dirs) > 1:
        raise UnsupportedError("more than one free Gram parameter")
    g1 = dirs[0]
    minors = _principal_minor_polys(g0, g1)
    nonconst = [p for p in minors if p.degree > 0]
    if not nonconst:
        return ldl_psd_check(g0).is_psd
    prod = UvPoly([1])
    for p in nonconst:
        prod = prod * p
    h = square_free_part(prod)
    ivs = list(isolate_roots(h, 1))
    if not ivs:
        return ldl_psd_check(g0).is_psd
    # one rational point inside every open cell cut out by the roots of h
    cells = [ivs[0].lo - 1, ivs[-1].hi + 1]
    for k in range(len(ivs) - 1):
        left, right = ivs[k], ivs[k + 1]
        while not left.hi < right.lo:
            left = refine_root(h, left, left.width / 2)
            right = refine_root(h, right, right.width / 2)
        cells.append((left.hi + right.lo) / 2)
    for t in cells:
        if ldl_psd_check(g0 + g1.scale(t)).is_psd:
            return True
    # an isolated PSD point sits at a root
    for iv in ivs:
        if iv.exact:
            if ldl_psd_check(g0 + g1.scale(iv.lo)).is_psd:
                return True
        elif all(_sign_at_root(p, h, iv.lo, iv.hi) >= 0 for p in minors):
            return True
    return False


def icosahedral_rg() -> MvPoly:
    """r_G for the normalized icosahedral cubic, variables (x, y, z)."""
    g = icosahedral_graph()
    q = graph_q(g, offset=0)
    return std_cubic_sos_necessity(q.scale(Fraction(9, 2)))
