"""Independent brute-force oracles used by the test suite.

These deliberately avoid the code paths they check: lattice membership via
subgroup closure in a finite quotient, point enumeration by box scan with the
congruences applied directly, and subdivisions by scanning all candidate
supporting hyperplanes.
"""

from fractions import Fraction
from itertools import combinations, product


def subgroup_closure_mod(generators, modulus, n):
    """All elements of the subgroup of (Z/modulus)^n generated by the rows."""
    seen = {(0,) * n}
    frontier = [(0,) * n]
    gens = [tuple(x % modulus for x in g) for g in generators]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % modulus for a, b in zip(cur, g))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def lattice_index_by_cosets(generators, modulus, n):
    """Index of the generated lattice in Z^n, assuming modulus*Z^n lies inside."""
    sub = subgroup_closure_mod(generators, modulus, n)
    return modulus ** n // len(sub)


def membership_by_cosets(generators, v, modulus, n):
    """v in the lattice iff its residue lies in the finite image subgroup."""
    sub = subgroup_closure_mod(generators, modulus, n)
    return tuple(x % modulus for x in v) in sub


def box_scan_xi(degrees, congruences):
    """All m >= 0 with sum q_i m_i = d and the congruences satisfied."""
    n = len(degrees)
    d = 1
    for x in degrees:
        d = d * x // _gcd(d, x)
    q = [d // x for x in degrees]
    out = []
    for m in product(range(d + 1), repeat=n):
        if sum(qi * mi for qi, mi in zip(q, m)) != d:
            continue
        if all(sum(c * x for c, x in zip(cvec, m)) % mod == 0
               for cvec, mod in congruences):
            out.append(m)
    return sorted(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _affinely_independent(points):
    base = points[0]
    dirs = [[Fraction(x - y) for x, y in zip(p, base)] for p in points[1:]]
    return _rank(dirs) == len(points) - 1


def _rank(rows):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                f = Fraction(rows[i][col], 1) / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _solve(a_rows, b):
    n = len(a_rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a_rows, b)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][col]
        aug[r] = [x / p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return x


def subdivision_by_hyperplane_scan(points, heights):
    """All maximal cells of the lower hull, by scanning (dim+1)-subsets.

    For every affinely independent (dim+1)-subset, interpolate the lifted
    points by an affine functional; if it supports the whole lifted
    configuration from below, record its full contact set.  Cells are the
    contact sets that affinely span.
    """
    npts = len(points)
    dim = len(points[0])
    cells = set()
    for sub in combinations(range(npts), dim + 1):
        pts = [points[i] for i in sub]
        if not _affinely_independent(pts):
            continue
        rows = [list(points[i]) + [1] for i in sub]
        sol = _solve(rows, [heights[i] for i in sub])
        if sol is None:
            continue
        a, c = sol[:dim], sol[dim]

        def val(i):
            return sum(x * y for x, y in zip(a, points[i])) + c

        slacks = [heights[i] - val(i) for i in range(npts)]
        if any(s < 0 for s in slacks):
            continue
        contact = frozenset(i for i in range(npts) if slacks[i] == 0)
        cpts = [points[i] for i in sorted(contact)]
        base = cpts[0]
        dirs = [[Fraction(x - y) for x, y in zip(p, base)] for p in cpts[1:]]
        if _rank(dirs) == dim:
            cells.add(contact)
    return cells


def nullspace_int(rows, ncols):
    """Rational basis of the right kernel of an integer matrix (list of rows)."""
    a = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            vec[pcol] = -a[i][fcol]
        basis.append(vec)
    return basis
