"""Dense exact rational matrices, LDL-based PSD certification and nullspaces."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractError, DimensionError
from .poly import as_fraction

__all__ = [
    "QMatrix",
    "PsdCertificate",
    "ldl_psd_check",
    "nullspace",
    "rank",
    "mat_mul",
    "mat_transpose",
    "mat_add",
]


class QMatrix:
    """Row-major matrix of Fractions. Immutable by convention."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable]):
        rows = [tuple(as_fraction(v) for v in row) for row in data]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise DimensionError("ragged matrix rows")
        self.data: tuple[tuple[Fraction, ...], ...] = tuple(rows)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "QMatrix":
        if not columns:
            return cls([])
        return cls(list(zip(*columns)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def __eq__(self, other):
        if isinstance(other, QMatrix):
            return self.data == other.data and self.shape == other.shape
        return NotImplemented

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.data)
        return f"QMatrix([{body}])"

    @property
    def T(self) -> "QMatrix":
        return QMatrix(zip(*self.data)) if self.rows else QMatrix([])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i] for i in range(self.rows) for j in range(i)
        )

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return QMatrix([[-a for a in r] for r in self.data])

    def scale(self, c) -> "QMatrix":
        c = as_fraction(c)
        return QMatrix([[a * c for a in r] for r in self.data])

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return QMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.data])
        vec = [as_fraction(v) for v in other]
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.data)

    def quad_form(self, v: Sequence) -> Fraction:
        """v^T M v."""
        v = [as_fraction(x) for x in v]
        mv = self @ v
        return sum((a * b for a, b in zip(v, mv)), Fraction(0))

    def trace(self) -> Fraction:
        return sum((self.data[i][i] for i in range(min(self.shape))), Fraction(0))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix([[self.data[i][j] for j in cols] for i in rows])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        a = [list(r) for r in self.data]
        n = self.rows
        sign = 1
        result = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            result *= a[k][k]
            for i in range(k + 1, n):
                if a[i][k]:
                    f = a[i][k] / a[k][k]
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return sign * result

    def inverse(self) -> "QMatrix":
        n = self.rows
        if n != self.cols:
            raise DimensionError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.data)]
        for k in range(n):
            piv = next((i for i in range(k, n) if aug[i][k]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[k], aug[piv] = aug[piv], aug[k]
            p = aug[k][k]
            aug[k] = [v / p for v in aug[k]]
            for i in range(n):
                if i != k and aug[i][k]:
                    f = aug[i][k]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
        return QMatrix([r[n:] for r in aug])

    # -- export ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[{"num": str(v.numerator), "den": str(v.denominator)} for v in r] for r in self.data],
        }

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        entries = data["entries"] if isinstance(data, dict) else data
        return cls([[_entry(v) for v in r] for r in entries])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for r in self.data:
            writer.writerow([str(v) for v in r])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "QMatrix":
        reader = csv.reader(io.StringIO(text))
        return cls([[Fraction(v.strip()) for v in r] for r in reader if r])


def _entry(v) -> Fraction:
    if isinstance(v, dict):
        return Fraction(int(v["num"]), int(v.get("den", "1")))
    return as_fraction(v)


@dataclass
class PsdCertificate:
    """Exact verdict of `ldl_psd_check`.

    When psd: ``matrix`` equals ``P L diag(pivots) L^T P^T`` where ``order`` lists
    the original index eliminated at each step and ``lower`` is unit lower
    triangular in that order. When not psd: ``witness`` is a rational vector with
    ``witness^T M witness == witness_value < 0``.
    """

    verdict: str
    pivots: list[Fraction] = field(default_factory=list)
    order: list[int] = field(default_factory=list)
    lower: list[list[Fraction]] = field(default_factory=list)
    witness: tuple[Fraction, ...] | None = None
    witness_value: Fraction | None = None

    @property
    def is_psd(self) -> bool:
        return self.verdict == "psd"

    def __bool__(self):
        return self.is_psd

    def reconstruct(self) -> QMatrix:
        n = len(self.order)
        lower = QMatrix(self.lower) if n else QMatrix([])
        mid = lower @ QMatrix.diag(self.pivots) @ lower.T if n else QMatrix([])
        out = [[Fraction(0)] * n for _ in range(n)]
        for a, i in enumerate(self.order):
            for b, j in enumerate(self.order):
                out[i][j] = mid[a, b]
        return QMatrix(out)

    def to_json(self) -> dict:
        d = {"verdict": self.verdict}
        if self.is_psd:
            d["pivots"] = [str(p) for p in self.pivots]
            d["order"] = list(self.order)
        else:
            d["witness"] = [str(v) for v in self.witness]
            d["witness_value"] = str(self.witness_value)
        return d


def ldl_psd_check(m: QMatrix) -> PsdCertificate:
    """Decide M >= 0 exactly by symmetric LDL^T with diagonal pivoting.

    Pivots are taken from positive diagonal entries of the running Schur
    complement. A negative diagonal, or a zero diagonal with a nonzero entry in
    its row, ends the factorization with an explicit negative direction.
    """
    if not isinstance(m, QMatrix):
        m = QMatrix(m)
    if not m.is_symmetric():
        raise ContractError("ldl_psd_check requires a symmetric matrix")
    n = m.rows
    schur = {i: {j: m[i, j] for j in range(n)} for i in range(n)}
    remaining = list(range(n))
    order: list[int] = []
    pivots: list[Fraction] = []
    # multipliers[k][i] = L entry for eliminated step k and original index i
    multipliers: list[dict[int, Fraction]] = []

    def lift(w: dict[int, Fraction]) -> tuple[Fraction, ...]:
        # w lives on the remaining indices; solve L^T v = (0, w) back through the steps
        v = {i: Fraction(0) for i in range(n)}
        v.update(w)
        for k in range(len(order) - 1, -1, -1):
            piv_idx = order[k]
            v[piv_idx] = -sum((multipliers[k][i] * v[i] for i in multipliers[k]), Fraction(0))
        return tuple(v[i] for i in range(n))

    def fail(w: dict[int, Fraction]) -> PsdCertificate:
        vec = lift(w)
        value = m.quad_form(vec)
        assert value < 0
        return PsdCertificate("not_psd", witness=vec, witness_value=value)

    while remaining:
        neg = next((i for i in remaining if schur[i][i] < 0), None)
        if neg is not None:
            return fail({neg: Fraction(1)})
        for i in remaining:
            if schur[i][i] == 0:
                j = next((j for j in remaining if j != i and schur[i][j] != 0), None)
                if j is not None:
                    s, djj = schur[i][j], schur[j][j]
                    # [x, 1] on the (i, j) block gives 2 s x + d_jj = -1
                    return fail({i: -(djj + 1) / (2 * s), j: Fraction(1)})
        pos = [i for i in remaining if schur[i][i] > 0]
        if not pos:
            # remaining block is identically zero
            for i in remaining:
                order.append(i)
                pivots.append(Fraction(0))
                multipliers.append({})
            remaining = []
            break
        p = pos[0]
        d = schur[p][p]
        remaining.remove(p)
        col = {i: schur[i][p] / d for i in remaining if schur[i][p]}
        order.append(p)
        pivots.append(d)
        multipliers.append(col)
        for i in remaining:
            li = col.get(i)
            if not li:
                continue
            row_i = schur[i]
            for j in remaining:
                sj = schur[p][j]
                if sj:
                    row_i[j] -= li * sj

    pos_of = {idx: k for k, idx in enumerate(order)}
    lower = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        lower[k][k] = Fraction(1)
        for i, v in multipliers[k].items():
            lower[pos_of[i]][k] = v
    return PsdCertificate("psd", pivots=pivots, order=order, lower=lower)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [v / p for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m: QMatrix) -> int:
    return len(_rref(m.tolist(), m.cols)[1])


def nullspace(m: QMatrix) -> QMatrix:
    """Exact basis of {v : M v = 0}, returned as the columns of a matrix.

    One basis vector per free column of the reduced row echelon form, with that
    free coordinate set to 1.
    """
    n = m.cols
    reduced, pivots = _rref(m.tolist(), n)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    if not basis:
        return QMatrix([[] for _ in range(n)]) if n else QMatrix([])
    return QMatrix.from_columns(basis)


# -- generic matrix helpers over any commutative ring (Fractions, MvPoly, ...) ---

def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    inner = len(b)
    if a and len(a[0]) != inner:
        raise DimensionError("inner dimensions differ")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                x, y = row[k], b[k][j]
                if _nonzero(x) and _nonzero(y):
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def mat_transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*a)]


def mat_add(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _nonzero(x) -> bool:
    return bool(x)
