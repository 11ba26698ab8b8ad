"""Exact integer and rational linear algebra on small lattices.

Everything here works on plain Python ints (arbitrary precision) and
``fractions.Fraction``; no floating point enters any computation.  Matrices
are lists of row tuples.  The lattices involved are tiny (rank at most ~10),
so the classical HNF/SNF algorithms are used without size-reduction tricks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

IntVec = tuple[int, ...]


class LatticeError(ValueError):
    pass


def _as_rows(mat):
    return [list(row) for row in mat]


def hnf(rows, ambient_rank):
    """Hermite normal form of the lattice spanned by ``rows`` in Z^ambient_rank.

    Convention: lower triangular, pivots positive, the entries below each
    pivot reduced into [0, pivot).  Rows are ordered by increasing pivot
    column, zero rows dropped.  This form is unique per lattice, so it can be
    compared for equality directly.
    """
    work = [list(r) for r in rows if any(r)]
    for r in work:
        if len(r) != ambient_rank:
            raise LatticeError("row length does not match ambient rank")
    pivots = []  # list of (col, row) with col decreasing
    for col in range(ambient_rank - 1, -1, -1):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        # gcd-combine until a single row carries this column
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            a, b = live[0], live[1]
            q = b[col] // a[col]
            for k in range(ambient_rank):
                b[k] -= q * a[k]
            live = [r for r in work if r[col] != 0]
        piv = live[0]
        if piv[col] < 0:
            for k in range(ambient_rank):
                piv[k] = -piv[k]
        work.remove(piv)
        work = [r for r in work if any(r)]
        pivots.append((col, piv))
    pivots.reverse()  # increasing pivot column
    basis = [p for _, p in pivots]
    cols = [c for c, _ in pivots]
    # reduce entries below each pivot into [0, pivot); rows must be reduced
    # against pivot rows in decreasing pivot-column order, otherwise a later
    # subtraction (whose row has nonzero earlier entries) undoes the reduction
    for k in range(len(basis)):
        for i in range(k - 1, -1, -1):
            c = cols[i]
            q = basis[k][c] // basis[i][c]
            if q:
                for t in range(ambient_rank):
                    basis[k][t] -= q * basis[i][t]
    return [tuple(r) for r in basis]


def hnf_with_transform(rows):
    """Row echelon form H together with unimodular T such that T*rows = H.

    Pivots are taken left to right; only used internally (kernel
    computations), so no reduction pass is applied.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    work = [list(r) for r in rows]
    trans = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    rank = 0
    for col in range(n):
        live = [i for i in range(rank, m) if work[i][col] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda i: abs(work[i][col]))
            a, b = live[0], live[1]
            q = work[b][col] // work[a][col]
            for k in range(n):
                work[b][k] -= q * work[a][k]
            for k in range(m):
                trans[b][k] -= q * trans[a][k]
            live = [i for i in range(rank, m) if work[i][col] != 0]
        i = live[0]
        work[rank], work[i] = work[i], work[rank]
        trans[rank], trans[i] = trans[i], trans[rank]
        if work[rank][col] < 0:
            work[rank] = [-x for x in work[rank]]
            trans[rank] = [-x for x in trans[rank]]
        rank += 1
    return [tuple(r) for r in work], [tuple(r) for r in trans], rank


def right_kernel_basis(mat):
    """Rows spanning {x in Z^n : mat @ x = 0} for an integer matrix."""
    m = len(mat)
    n = len(mat[0])
    transposed = [tuple(mat[i][j] for i in range(m)) for j in range(n)]
    echelon, trans, rank = hnf_with_transform(transposed)
    assert all(not any(echelon[i]) for i in range(rank, n))
    return [trans[i] for i in range(rank, n)]


def smith_normal_form(rows):
    """Diagonal entries of the Smith normal form (nonnegative, divisibility chain)."""
    a = _as_rows(rows)
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < min(m, n):
        # locate a nonzero entry in the remaining block
        found = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        a[top], a[i] = a[i], a[top]
        for r in a:
            r[top], r[j] = r[j], r[top]
        while True:
            # clear column
            changed = False
            for i in range(top + 1, m):
                if a[i][top] != 0:
                    q = a[i][top] // a[top][top]
                    for k in range(top, n):
                        a[i][k] -= q * a[top][k]
                    if a[i][top] != 0:
                        a[top], a[i] = a[i], a[top]
                    changed = True
            if any(a[i][top] != 0 for i in range(top + 1, m)):
                continue
            # clear row
            for j in range(top + 1, n):
                if a[top][j] != 0:
                    q = a[top][j] // a[top][top]
                    for r in a:
                        r[j] -= q * r[top]
                    if a[top][j] != 0:
                        for r in a:
                            r[top], r[j] = r[j], r[top]
                    changed = True
            if any(a[top][j] != 0 for j in range(top + 1, n)):
                continue
            if not changed:
                break
        # enforce divisibility of the remaining block by the pivot
        piv = abs(a[top][top])
        bad = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % piv != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for k in range(top, n):
                a[top][k] += a[bad][k]
            continue
        diag.append(piv)
        top += 1
    return diag


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group given by its invariant factors (each dividing the next)."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise LatticeError("invariant factors must form a divisibility chain")
        if any(f < 2 for f in self.invariant_factors):
            raise LatticeError("invariant factors must be >= 2")

    @property
    def order(self):
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    def is_trivial(self):
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


def group_from_diagonal(diag):
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient_rank held by its unique HNF basis."""

    ambient_rank: int
    basis: tuple[IntVec, ...]

    @property
    def rank(self):
        return len(self.basis)

    def index_in_ambient(self):
        if self.rank != self.ambient_rank:
            raise LatticeError("index undefined for non-full-rank sublattice")
        det = 1
        for i, row in enumerate(self.basis):
            det *= row[_pivot_col(row)]
        return abs(det)

    def __contains__(self, v):
        return contains(self, v)


def _pivot_col(row):
    for j in range(len(row) - 1, -1, -1):
        if row[j] != 0:
            return j
    raise LatticeError("zero row in basis")


def hnf_canonicalize(generators, ambient_rank=None):
    """Canonical Sublattice spanned by the given generator rows."""
    gens = [tuple(g) for g in generators]
    if ambient_rank is None:
        if not gens:
            raise LatticeError("empty generator list needs explicit ambient rank")
        ambient_rank = len(gens[0])
    return Sublattice(ambient_rank, tuple(hnf(gens, ambient_rank)))


def sublattice_from_congruences(ambient_rank, congruences):
    """The sublattice {m : <c_k, m> = 0 mod n_k for all k} of Z^ambient_rank.

    Computed as the projection of the integer kernel of [C | -diag(n)].
    """
    congruences = list(congruences)
    for c, n in congruences:
        if n < 1:
            raise LatticeError("moduli must be >= 1")
        if len(c) != ambient_rank:
            raise LatticeError("congruence vector has wrong length")
    if not congruences:
        return hnf_canonicalize(_identity(ambient_rank), ambient_rank)
    k = len(congruences)
    mat = []
    for idx, (c, n) in enumerate(congruences):
        row = list(c) + [0] * k
        row[ambient_rank + idx] = -n
        mat.append(tuple(row))
    kernel = right_kernel_basis(mat)
    projected = [row[:ambient_rank] for row in kernel]
    return hnf_canonicalize(projected, ambient_rank)


def _identity(n):
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def solve_int(lat: Sublattice, v):
    """Integer coefficients x with x @ lat.basis == v, or None."""
    v = list(v)
    if len(v) != lat.ambient_rank:
        raise LatticeError("dimension mismatch")
    coeffs = [0] * lat.rank
    for i in range(lat.rank - 1, -1, -1):
        row = lat.basis[i]
        c = _pivot_col(row)
        if v[c] % row[c] != 0:
            return None
        x = v[c] // row[c]
        coeffs[i] = x
        if x:
            for t in range(lat.ambient_rank):
                v[t] -= x * row[t]
    if any(v):
        return None
    return coeffs


def contains(lat: Sublattice, v):
    return solve_int(lat, v) is not None


def quotient_group(ambient_rank, lat: Sublattice):
    """Invariant factors of Z^ambient_rank / lat (lat must be full rank)."""
    if lat.rank != ambient_rank:
        raise LatticeError("quotient by a non-full-rank sublattice is infinite")
    return group_from_diagonal(smith_normal_form(lat.basis))


def lattice_quotient(sup: Sublattice, sub: Sublattice):
    """Invariant factors of sup/sub for full-rank sub <= sup."""
    if sup.ambient_rank != sub.ambient_rank:
        raise LatticeError("ambient rank mismatch")
    if sub.rank != sup.rank:
        raise LatticeError("quotient of lattices of different rank is infinite")
    coeff_rows = []
    for row in sub.basis:
        coeffs = solve_int(sup, row)
        if coeffs is None:
            raise LatticeError("second lattice is not contained in the first")
        coeff_rows.append(tuple(coeffs))
    return group_from_diagonal(smith_normal_form(coeff_rows))


@dataclass(frozen=True)
class RationalLatticeBasis:
    """Basis (rows of exact rationals) of a lattice in Q^n, e.g. a dual lattice."""

    basis: tuple[tuple[Fraction, ...], ...]


def dual_lattice(lat: Sublattice):
    """Dual lattice {n : <n, m> in Z for all m in lat}, as inverse-transpose rows."""
    if lat.rank != lat.ambient_rank:
        raise LatticeError("dual lattice implemented for full-rank sublattices only")
    inv = invert_fraction_matrix([[Fraction(x) for x in row] for row in lat.basis])
    n = lat.ambient_rank
    rows = tuple(tuple(inv[i][j] for i in range(n)) for j in range(n))
    return RationalLatticeBasis(rows)


def invert_fraction_matrix(rows):
    """Inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise LatticeError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def solve_fraction_system(a_rows, b):
    """Solve A x = b exactly; returns list of Fractions or None if inconsistent.

    A may be rectangular; when the system is underdetermined the free
    variables are set to zero.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a_rows, b)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [x / p for x in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = a[i][n]
    return x


def fraction_matrix_rank(rows):
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    a = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        for i in range(r + 1, m):
            if a[i][col] != 0:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def det_fraction(rows):
    """Determinant of a square Fraction matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        p = a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def lattice_intersection(a: Sublattice, b: Sublattice):
    """The intersection of two sublattices of the same ambient Z^n."""
    if a.ambient_rank != b.ambient_rank:
        raise LatticeError("ambient rank mismatch")
    n = a.ambient_rank
    # x in both lattices iff x = u @ a.basis = v @ b.basis; solve for (u, v)
    mat = []
    for k in range(n):
        mat.append(tuple([row[k] for row in a.basis] + [-row[k] for row in b.basis]))
    kernel = right_kernel_basis(mat)
    rows = []
    for vec in kernel:
        u = vec[: a.rank]
        rows.append(tuple(sum(u[i] * a.basis[i][k] for i in range(a.rank))
                          for k in range(n)))
    return hnf_canonicalize(rows, n) if rows else Sublattice(n, ())


def lcm_list(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
