"""Exact integer and rational linear algebra.

Everything in this module is exact: integer matrices with arbitrary-precision
entries, Hermite and Smith normal forms with their unimodular witnesses,
saturated lattices in column Hermite normal form, rational linear solving, and
an exact phase-1 simplex used to decide cone membership. No floating point is
used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimMismatchError, NotFullRankError, ZeroVectorError

Vec = tuple  # integer or Fraction entries


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(c, a):
    return tuple(c * x for x in a)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major storage with an explicit shape.

    The shape is stored separately so matrices with zero rows or zero columns
    (empty ray sets, empty equation sets) remain well formed.
    """

    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.nrows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError("column count mismatch")

    @classmethod
    def from_rows(cls, rows, ncols=None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols, nrows=None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("nrows required for a matrix with no columns")
            nrows = len(cols[0])
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls(nrows, len(cols), rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n))
                               for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    def row(self, i) -> Vec:
        return self.entries[i]

    def column(self, j) -> Vec:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def rows(self) -> list:
        return list(self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.ncols, self.nrows,
                         tuple(self.column(j) for j in range(self.ncols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimMismatchError("matrix product shape mismatch")
        cols = other.columns()
        rows = tuple(tuple(dot(r, c) for c in cols) for r in self.entries)
        return IntMatrix(self.nrows, other.ncols, rows)

    def mul_vec(self, v: Vec) -> Vec:
        if len(v) != self.ncols:
            raise DimMismatchError("matrix-vector shape mismatch")
        return tuple(dot(r, v) for r in self.entries)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.entries)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.nrows != m.ncols:
        raise DimMismatchError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive_vector(v) -> Vec:
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g == 0:
        raise ZeroVectorError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def hermite_normal_form(m: IntMatrix):
    """Column-style Hermite normal form.

    Returns (H, U) with H = M @ U, U unimodular, H in column echelon form:
    pivot rows strictly increase with the column index, pivots positive, and
    entries in a pivot row left of the pivot reduced into [0, pivot).
    """
    cols = [list(c) for c in m.columns()]
    u = [list(c) for c in IntMatrix.identity(m.ncols).columns()]
    nc = m.ncols
    c = 0
    for r in range(m.nrows):
        if c >= nc:
            break
        # gcd-chase the entries of row r across columns >= c
        while True:
            live = [j for j in range(c, nc) if cols[j][r] != 0]
            if not live:
                break
            j0 = min(live, key=lambda j: (abs(cols[j][r]), j))
            if j0 != c:
                cols[c], cols[j0] = cols[j0], cols[c]
                u[c], u[j0] = u[j0], u[c]
            done = True
            for j in range(c + 1, nc):
                if cols[j][r] != 0:
                    q = cols[j][r] // cols[c][r]
                    for i in range(m.nrows):
                        cols[j][i] -= q * cols[c][i]
                    for i in range(nc):
                        u[j][i] -= q * u[c][i]
                    if cols[j][r] != 0:
                        done = False
            if done:
                break
        if c < nc and cols[c][r] != 0:
            if cols[c][r] < 0:
                cols[c] = [-x for x in cols[c]]
                u[c] = [-x for x in u[c]]
            p = cols[c][r]
            for j in range(c):
                q = cols[j][r] // p
                if q:
                    for i in range(m.nrows):
                        cols[j][i] -= q * cols[c][i]
                    for i in range(nc):
                        u[j][i] -= q * u[c][i]
            c += 1
    h = IntMatrix.from_columns([tuple(col) for col in cols], m.nrows)
    uu = IntMatrix.from_columns([tuple(col) for col in u], nc)
    return h, uu


def smith_normal_form(m: IntMatrix):
    """Smith normal form: returns (D, P, Q) with D = P @ M @ Q diagonal,
    P and Q unimodular, and nonnegative invariant factors d1 | d2 | ...
    """
    nr, nc = m.nrows, m.ncols
    a = [list(r) for r in m.entries]
    p = [list(r) for r in IntMatrix.identity(nr).entries]
    q = [list(c) for c in IntMatrix.identity(nc).columns()]  # q as columns

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        q[i], q[j] = q[j], q[i]

    def row_op(i, j, f):  # row_i -= f * row_j
        a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        p[i] = [x - f * y for x, y in zip(p[i], p[j])]

    def col_op(i, j, f):  # col_i -= f * col_j
        for row in a:
            row[i] -= f * row[j]
        q[i] = [x - f * y for x, y in zip(q[i], q[j])]

    def eliminate_from(t):
        while t < min(nr, nc):
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] != 0 and (best is None
                                         or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            while True:
                clean = True
                for i in range(t + 1, nr):
                    if a[i][t] != 0:
                        f = a[i][t] // a[t][t]
                        row_op(i, t, f)
                        if a[i][t] != 0:
                            swap_rows(t, i)
                            clean = False
                for j in range(t + 1, nc):
                    if a[t][j] != 0:
                        f = a[t][j] // a[t][t]
                        col_op(j, t, f)
                        if a[t][j] != 0:
                            swap_cols(t, j)
                            clean = False
                if clean and all(a[i][t] == 0 for i in range(t + 1, nr)):
                    break
            t += 1

    eliminate_from(0)
    # enforce the divisibility chain d_i | d_{i+1}
    while True:
        r = min(nr, nc)
        bad = None
        for i in range(r - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di != 0 and dj % di != 0:
                bad = i
                break
        if bad is None:
            break
        col_op(bad, bad + 1, -1)  # col_bad += col_{bad+1}
        eliminate_from(bad)
    for i in range(min(nr, nc)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            p[i] = [-x for x in p[i]]
    d = IntMatrix.from_rows([tuple(r) for r in a], nc)
    pm = IntMatrix.from_rows([tuple(r) for r in p], nr)
    qm = IntMatrix.from_columns([tuple(c) for c in q], nc)
    return d, pm, qm


def invariant_factors(m: IntMatrix) -> tuple:
    d, _, _ = smith_normal_form(m)
    k = min(m.nrows, m.ncols)
    facs = [d.entries[i][i] for i in range(k)]
    return tuple(f for f in facs if f != 0)


def rational_rank(rows) -> int:
    """Rank over Q of a list of vectors."""
    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for j in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][j] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pval = mat[rank][j]
        for i in range(len(mat)):
            if i != rank and mat[i][j] != 0:
                f = mat[i][j] / pval
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def solve_rational(a_rows, b):
    """Solve A x = b exactly over Q.

    Returns one solution (free variables set to 0) or None when the system is
    inconsistent.
    """
    m = len(a_rows)
    if len(b) != m:
        raise DimMismatchError("right-hand side length mismatch")
    n = len(a_rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])]
           for i, row in enumerate(a_rows)]
    pivots = []
    r = 0
    for j in range(n):
        piv = None
        for i in range(r, m):
            if aug[i][j] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pval = aug[r][j]
        aug[r] = [x / pval for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, j in enumerate(pivots):
        x[j] = aug[i][n]
    return tuple(x)


def int_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix (exact, integer entries)."""
    n = m.nrows
    cols = []
    for j in range(n):
        e = tuple(Fraction(1 if i == j else 0) for i in range(n))
        x = solve_rational(m.entries, e)
        if x is None:
            raise NotFullRankError("matrix is singular")
        col = []
        for v in x:
            if v.denominator != 1:
                raise NotFullRankError("matrix is not unimodular")
            col.append(v.numerator)
        cols.append(tuple(col))
    return IntMatrix.from_columns(cols, n)


def integer_kernel_basis(m: IntMatrix) -> IntMatrix:
    """Canonical basis (columns) of the saturated lattice {x in Z^n : Mx = 0}."""
    if m.nrows == 0:
        return hermite_basis(IntMatrix.identity(m.ncols))
    h, u = hermite_normal_form(m)
    ker = [u.column(j) for j in range(m.ncols)
           if all(h.entries[i][j] == 0 for i in range(m.nrows))]
    if not ker:
        return IntMatrix.from_columns([], m.ncols)
    return hermite_basis(IntMatrix.from_columns(ker, m.ncols))


def hermite_basis(m: IntMatrix) -> IntMatrix:
    """Canonical HNF basis (nonzero columns) of the lattice spanned by the
    columns of m."""
    h, _ = hermite_normal_form(m)
    cols = [h.column(j) for j in range(h.ncols)
            if any(x != 0 for x in h.column(j))]
    return IntMatrix.from_columns(cols, m.nrows)


def saturate_lattice(m: IntMatrix) -> IntMatrix:
    """Canonical basis of span_Q(columns of m) intersected with Z^n."""
    if m.ncols == 0:
        return m
    # rows orthogonal to the column span, then their integer kernel
    orth = integer_kernel_basis(m.transpose())
    return integer_kernel_basis(orth.transpose())


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^n given by a canonical column-HNF basis."""

    ambient_dim: int
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return self.basis.ncols


def lattice_from_generators(ambient_dim: int, columns) -> Lattice:
    cols = list(columns)
    for c in cols:
        if len(c) != ambient_dim:
            raise DimMismatchError("generator length mismatch")
    basis = hermite_basis(IntMatrix.from_columns(cols, ambient_dim))
    return Lattice(ambient_dim, basis)


def lattice_index(l1: Lattice, l2: Lattice) -> int:
    """Index [Z^n : L1 + L2], defined when the two lattices jointly span Q^n."""
    if l1.ambient_dim != l2.ambient_dim:
        raise DimMismatchError("lattices live in different ambient spaces")
    n = l1.ambient_dim
    joint = IntMatrix.from_columns(l1.basis.columns() + l2.basis.columns(), n)
    facs = invariant_factors(joint)
    if len(facs) < n:
        raise NotFullRankError("lattices do not jointly span the ambient space")
    idx = 1
    for f in facs:
        idx *= f
    return idx


def hnf_completion(basis: IntMatrix) -> IntMatrix:
    """Extend a saturated lattice basis (columns) to a unimodular matrix.

    The first columns of the result are the basis columns themselves; the
    completion comes from the Smith decomposition, which requires all
    invariant factors to be 1 (true exactly for saturated lattices).
    """
    n, d = basis.nrows, basis.ncols
    if d == 0:
        return IntMatrix.identity(n)
    dmat, p, _ = smith_normal_form(basis)
    for i in range(d):
        if dmat.entries[i][i] != 1:
            raise NotFullRankError("basis does not generate a saturated lattice")
    pinv = int_inverse(p)
    ext = [pinv.column(j) for j in range(d, n)]
    v = IntMatrix.from_columns(basis.columns() + ext, n)
    if abs(det(v)) != 1:
        raise NotFullRankError("completion failed to be unimodular")
    return v


def nonneg_solution_exists(a_rows, b) -> bool:
    """Decide whether A x = b has a solution with x >= 0.

    Exact phase-1 simplex over Q with Bland's rule, so termination and the
    verdict are both unconditional.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        r = [Fraction(x) for x in a_rows[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        rows.append(r)
        rhs.append(bi)
    if m == 0:
        return True
    # tableau columns: n structural vars, m artificials, rhs
    tab = [rows[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    total = n + m
    while True:
        # reduced costs for phase-1 objective (cost 1 on artificials)
        lam = [Fraction(1 if basis[i] >= n else 0) for i in range(m)]
        entering = None
        for j in range(total):
            if j in basis:
                continue
            red = (Fraction(1) if j >= n else Fraction(0)) \
                - sum(lam[i] * tab[i][j] for i in range(m))
            if red < 0:
                entering = j
                break
        if entering is None:
            obj = sum(lam[i] * tab[i][total] for i in range(m))
            return obj == 0
        leaving = None
        best = None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = tab[i][total] / tab[i][entering]
                if best is None or ratio < best or (ratio == best
                                                    and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:  # phase-1 objective is bounded below by zero
            raise AssertionError("unbounded phase-1 simplex")
        pv = tab[leaving][entering]
        tab[leaving] = [x / pv for x in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leaving])]
        basis[leaving] = entering


def cone_feasible(rays: IntMatrix, lineality: IntMatrix, target) -> bool:
    """Exact membership test: target in cone(ray columns) + span(lineality)."""
    n = rays.nrows if rays.ncols else lineality.nrows
    if rays.ncols and lineality.ncols and rays.nrows != lineality.nrows:
        raise DimMismatchError("rays and lineality ambient dimensions differ")
    if len(target) != n:
        raise DimMismatchError("target dimension mismatch")
    cols = rays.columns() + lineality.columns() \
        + [vec_neg(c) for c in lineality.columns()]
    if not cols:
        return all(x == 0 for x in target)
    a_rows = [tuple(c[i] for c in cols) for i in range(n)]
    return nonneg_solution_exists(a_rows, target)
