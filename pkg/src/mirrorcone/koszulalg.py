"""Graded exterior-polynomial computations: Koszul cohomology, the quotient
algebra presented by the block-top-wedge ideal, the sign action, and the
enumeration of deformation and curvature classes.

Degrees live in the cover grading datum Z (+) Z^I / <(2(1-|I_j|), e_I_j)>;
a degree class is canonicalized by shifting each block's m-part to have
minimum zero.  Every degree class meets only finitely many monomials, so all
dimensions are computed per class by exact integer rank computations, with a
z-degree cutoff controlling only which classes get reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .toricdata import ValidatedToricData


class CutoffTooSmall(ValueError):
    pass


class ClassificationViolation(AssertionError):
    pass


# --- degree classes -------------------------------------------------------


def canonical_class(blocks, j, m):
    """Canonical representative of (j, m) modulo the block relators."""
    m = list(m)
    for blk in blocks:
        t = min(m[i] for i in blk)
        if t:
            for i in blk:
                m[i] -= t
            j -= 2 * (1 - len(blk)) * t
    return (j, tuple(m))


def _iter_exponents(n, total_max):
    """All a in Z^n_{>=0} with |a| <= total_max."""
    a = [0] * n

    def rec(i, rem):
        if i == n - 1:
            for v in range(rem + 1):
                a[i] = v
                yield tuple(a)
            a[i] = 0
            return
        for v in range(rem + 1):
            a[i] = v
            yield from rec(i + 1, rem - v)
        a[i] = 0

    yield from rec(0, total_max)


def degree_classes(blocks, n, cutoff):
    """Classes met by monomials z^a theta^K or z^a h with |a| <= cutoff."""
    classes = set()
    wedge_max = sum(len(blk) - 1 for blk in blocks)
    for a in _iter_exponents(n, cutoff):
        asum = sum(a)
        neg_a = tuple(-x for x in a)
        for w in range(wedge_max + 1):
            classes.add(canonical_class(blocks, 2 * asum + w, neg_a))
        for size in range(n + 1):
            for K in combinations(range(n), size):
                m = list(neg_a)
                for i in K:
                    m[i] += 1
                classes.add(canonical_class(blocks, 2 * asum - size, tuple(m)))
    return sorted(classes)


def _t_boxes(blocks, caps, total):
    """Integer vectors t with sum(t) = total and t_j <= caps[j]."""
    r = len(blocks)
    out = []
    t = [0] * r

    def rec(j, rem):
        if j == r - 1:
            if rem <= caps[j]:
                t[j] = rem
                out.append(tuple(t))
            return
        lo = rem - sum(caps[j + 1:])
        for v in range(lo, caps[j] + 1):
            t[j] = v
            rec(j + 1, rem - v)

    rec(0, total)
    return out


# --- Koszul complex side --------------------------------------------------


def _koszul_piece(blocks, n, cls):
    """All monomials z^a theta^K of the given degree class, as (K, a) pairs."""
    jhat, mhat = cls
    msum = sum(mhat)
    out = []
    for size in range(n + 1):
        for K in combinations(range(n), size):
            twice = size - 2 * msum - jhat
            if twice % 2:
                continue
            total = twice // 2
            caps = [min((1 if i in K else 0) - mhat[i] for i in blk)
                    for blk in blocks]
            if sum(caps) < total:
                continue
            for t in _t_boxes(blocks, caps, total):
                a = []
                for i in range(n):
                    j = next(jj for jj, blk in enumerate(blocks) if i in blk)
                    a.append((1 if i in K else 0) - mhat[i] - t[j])
                if all(x >= 0 for x in a):
                    out.append((K, tuple(a)))
    out.sort()
    return out


def _koszul_differential(blocks, n, mono):
    """Image of z^a theta^K under contraction with dW_0, W_0 = -sum z^{e_I_j}."""
    K, a = mono
    block_of = {}
    for blk in blocks:
        for i in blk:
            block_of[i] = blk
    out = {}
    for pos, k in enumerate(K):
        sign = (-1) ** pos
        blk = block_of[k]
        new_a = list(a)
        for i in blk:
            new_a[i] += 1
        new_a[k] -= 1
        key = (tuple(x for x in K if x != k), tuple(new_a))
        out[key] = out.get(key, 0) - sign  # dW_0/dz_k carries the minus sign
        if out[key] == 0:
            del out[key]
    return out


def _int_rank(rows):
    """Rank of an integer matrix (fraction-free Gaussian elimination)."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                x, y = pr[col], rows[i][col]
                rows[i] = [x * b - y * a for a, b in zip(pr, rows[i])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _koszul_map_matrix(blocks, n, source, target):
    index = {mono: i for i, mono in enumerate(target)}
    rows = []
    for mono in source:
        row = [0] * len(target)
        for key, coeff in _koszul_differential(blocks, n, mono).items():
            row[index[key]] = coeff
        rows.append(row)
    return rows


def koszul_cohomology_dim_for_class(blocks, n, cls):
    """dim of ker/im of the Koszul differential at one degree class."""
    jhat, mhat = cls
    here = _koszul_piece(blocks, n, cls)
    if not here:
        return 0
    above = _koszul_piece(blocks, n, canonical_class(blocks, jhat + 1, mhat))
    below = _koszul_piece(blocks, n, canonical_class(blocks, jhat - 1, mhat))
    rank_out = _int_rank(_koszul_map_matrix(blocks, n, here, above)) if above else 0
    rank_in = _int_rank(_koszul_map_matrix(blocks, n, below, here)) if below else 0
    return len(here) - rank_out - rank_in


@dataclass(frozen=True)
class GradedDims:
    """Finitely many degree classes with their dimensions (zeros omitted)."""

    dims: tuple  # sorted tuple of ((jhat, mhat), dim)

    def as_dict(self):
        return dict(self.dims)

    def to_json(self):
        return [{"deg": {"j": c[0], "m": list(c[1])}, "dim": d}
                for c, d in self.dims]


def _single_block_guard(n, cutoff):
    if cutoff < n:
        raise CutoffTooSmall(f"cutoff {cutoff} < block size {n}")


def koszul_cohomology_dims(n, z_cutoff) -> GradedDims:
    """Graded dimensions of the Koszul cohomology for a single block of size n."""
    _single_block_guard(n, z_cutoff)
    blocks = (tuple(range(n)),)
    return multiblock_koszul_dims(blocks, n, z_cutoff)


def multiblock_koszul_dims(blocks, n, z_cutoff) -> GradedDims:
    out = []
    for cls in degree_classes(blocks, n, z_cutoff):
        d = koszul_cohomology_dim_for_class(blocks, n, cls)
        if d:
            out.append((cls, d))
    return GradedDims(tuple(sorted(out)))


# --- exterior algebra on the odd generators u_i ---------------------------


def wedge(e1, e2):
    out = {}
    for s1, c1 in e1.items():
        for s2, c2 in e2.items():
            if s1 & s2:
                continue
            inv = sum(1 for a in s1 for b in s2 if a > b)
            key = s1 | s2
            out[key] = out.get(key, 0) + c1 * c2 * (-1) ** inv
            if out[key] == 0:
                del out[key]
    return out


def contract_block(elem, blk):
    """Contraction with e_I_j (odd derivation sending each u_i, i in block, to 1)."""
    out = {}
    for s, c in elem.items():
        for pos, i in enumerate(sorted(s)):
            if i not in blk:
                continue
            key = s - {i}
            val = c * (-1) ** pos
            out[key] = out.get(key, 0) + val
            if out[key] == 0:
                del out[key]
    return out


def h_basis(blk):
    """Basis of the kernel of contraction: u_i - u_last for i in blk[:-1]."""
    last = max(blk)
    return [{frozenset([i]): 1, frozenset([last]): -1} for i in sorted(blk) if i != last]


def wedge_basis_for_block(blk, degree):
    """Wedge products of h-basis vectors of the block, expanded in u-monomials."""
    basis = h_basis(blk)
    out = []
    for combo in combinations(range(len(basis)), degree):
        elem = {frozenset(): 1}
        for k in combo:
            elem = wedge(elem, basis[k])
        out.append(elem)
    return out


# --- quotient algebra side ------------------------------------------------


def _j_piece_slices(blocks, n, cls):
    """Slices (a, wedge-distribution) of the quotient-algebra degree class."""
    jhat, mhat = cls
    caps = [min(-mhat[i] for i in blk) for blk in blocks]
    wedge_caps = [len(blk) - 1 for blk in blocks]
    slices = []
    # sum(t) determines the total wedge degree: w = jhat + 2|mhat| + 2 sum(t)
    max_w = sum(wedge_caps)
    for w in range(max_w + 1):
        twice = w - jhat - 2 * sum(mhat)
        if twice % 2:
            continue
        total = twice // 2
        if sum(caps) < total:
            continue
        for t in _t_boxes(blocks, caps, total):
            a = []
            ok = True
            for i in range(n):
                j = next(jj for jj, blk in enumerate(blocks) if i in blk)
                v = -mhat[i] - t[j]
                if v < 0:
                    ok = False
                    break
                a.append(v)
            if not ok:
                continue
            for dist in _wedge_distributions(wedge_caps, w):
                slices.append((tuple(a), dist))
    return sorted(set(slices))


def _wedge_distributions(caps, total):
    out = []
    cur = [0] * len(caps)

    def rec(j, rem):
        if j == len(caps) - 1:
            if rem <= caps[j]:
                cur[j] = rem
                out.append(tuple(cur))
            return
        for v in range(min(caps[j], rem) + 1):
            cur[j] = v
            rec(j + 1, rem - v)

    rec(0, total)
    return out


def _slice_basis_count(blocks, dist):
    from math import comb
    count = 1
    for blk, w in zip(blocks, dist):
        count *= comb(len(blk) - 1, w)
    return count


def _expand_slice_monomials(blocks, a, dist):
    """u-monomial expansions of the basis z^a * prod_j w_{S_j} of one slice."""
    per_block = [wedge_basis_for_block(blk, w) for blk, w in zip(blocks, dist)]
    elems = [{frozenset(): 1}]
    for basis in per_block:
        elems = [wedge(e, b) for e in elems for b in basis]
    return [(a, e) for e in elems]


def _ideal_vectors_for_class(blocks, n, cls):
    """Spanning u-coordinate vectors of the ideal inside the class piece."""
    slices = _j_piece_slices(blocks, n, cls)
    vectors = []
    for a, dist in slices:
        for j, blk in enumerate(blocks):
            for size in range(len(blk) + 1):
                for K in combinations(sorted(blk), size):
                    gz = tuple(1 if (i in blk and i not in K) else 0
                               for i in range(n))
                    a_mult = tuple(x - g for x, g in zip(a, gz))
                    if any(x < 0 for x in a_mult):
                        continue
                    gw_degree = max(len(K) - 1, 0)
                    w_mult_j = dist[j] - gw_degree
                    if w_mult_j < 0 or w_mult_j > len(blk) - 1:
                        continue
                    if size == 0:
                        gw = {frozenset(): 1}
                    else:
                        top = {frozenset(K): 1}
                        gw = contract_block(top, blk) if size > 1 else {frozenset(): 1}
                    if not gw:
                        continue
                    mult_dist = list(dist)
                    mult_dist[j] = w_mult_j
                    for _, h in _expand_slice_monomials(blocks, a_mult, tuple(mult_dist)):
                        prod = wedge(h, gw)
                        if prod:
                            vectors.append((a, prod))
    return vectors


def _vectors_to_rows(pairs, index):
    rows = []
    for a, elem in pairs:
        row = [0] * len(index)
        for s, c in elem.items():
            row[index[(a, s)]] = c
        rows.append(row)
    return rows


def _class_coordinate_index(blocks, n, cls):
    slices = _j_piece_slices(blocks, n, cls)
    index = {}
    basis_pairs = []
    for a, dist in slices:
        for pair in _expand_slice_monomials(blocks, a, dist):
            basis_pairs.append(pair)
            for s in pair[1]:
                if (a, s) not in index:
                    index[(a, s)] = len(index)
    return slices, basis_pairs, index


def j_algebra_dim_for_class(blocks, n, cls):
    slices, basis_pairs, index = _class_coordinate_index(blocks, n, cls)
    if not basis_pairs:
        return 0
    piece_dim = sum(_slice_basis_count(blocks, dist) for _, dist in slices)
    ideal = _ideal_vectors_for_class(blocks, n, cls)
    for a, elem in ideal:
        for s in elem:
            assert (a, s) in index, "ideal vector escapes the class piece"
    rank = _int_rank(_vectors_to_rows(ideal, index)) if ideal else 0
    return piece_dim - rank


def j_algebra_dims(n, z_cutoff) -> GradedDims:
    """Graded dimensions of the quotient algebra for a single block of size n."""
    _single_block_guard(n, z_cutoff)
    blocks = (tuple(range(n)),)
    return multiblock_j_dims(blocks, n, z_cutoff)


def multiblock_j_dims(blocks, n, z_cutoff) -> GradedDims:
    out = []
    for cls in degree_classes(blocks, n, z_cutoff):
        d = j_algebra_dim_for_class(blocks, n, cls)
        if d:
            out.append((cls, d))
    return GradedDims(tuple(sorted(out)))


def element_in_ideal(blocks, n, a, elem):
    """Exact membership of z^a * elem (u-expansion) in the ideal."""
    cls = canonical_class(blocks, 2 * sum(a) + _wedge_degree(elem), tuple(-x for x in a))
    slices, basis_pairs, index = _class_coordinate_index(blocks, n, cls)
    for s in elem:
        if (a, s) not in index:
            raise ClassificationViolation("element does not lie in its class piece")
    ideal = _ideal_vectors_for_class(blocks, n, cls)
    rows = _vectors_to_rows(ideal, index)
    base_rank = _int_rank(rows) if rows else 0
    target = _vectors_to_rows([(a, elem)], index)
    return _int_rank(rows + target) == base_rank


def _wedge_degree(elem):
    sizes = {len(s) for s in elem}
    assert len(sizes) == 1
    return sizes.pop()


# --- tensor products ------------------------------------------------------


def tensor_j_dims(vt: ValidatedToricData, z_cutoff) -> GradedDims:
    """Convolution of the per-block graded dimensions in the total datum.

    Per-block dictionaries are computed with a margin above the requested
    cutoff so that every class reachable at total z-degree <= z_cutoff has all
    its tensor decompositions covered (a class reachable on the theta side at
    degree c can need per-block quotient-algebra representatives of degree up
    to c plus the block size); the margin is validated against the direct
    multi-block computation in the tests.
    """
    if z_cutoff < max(len(b) for b in vt.blocks):
        raise CutoffTooSmall("cutoff below the largest block size")
    per_block = []
    for blk in vt.blocks:
        nb = len(blk)
        dims = j_algebra_dims(nb, z_cutoff + nb + 1).as_dict()
        per_block.append((blk, dims))
    total = {(0, (0,) * vt.n): 1}
    for blk, dims in per_block:
        nxt = {}
        for (j1, m1), d1 in total.items():
            for (j2, m2loc), d2 in dims.items():
                m = list(m1)
                for pos, i in enumerate(sorted(blk)):
                    m[i] += m2loc[pos]
                key = (j1 + j2, tuple(m))
                nxt[key] = nxt.get(key, 0) + d1 * d2
        total = nxt
    out = tuple(sorted((cls, d) for cls, d in total.items() if d))
    return GradedDims(out)


# --- sign action and deformation classes ----------------------------------


def sign_action(a_vec, h_size, v):
    """(-1)^(1 + <v + e_I, a> + |h|) for the element z^a h."""
    dagger = 1 + sum((vi + 1) * ai for vi, ai in zip(v, a_vec)) + h_size
    return -1 if dagger % 2 else 1


def deformation_sign(vt: ValidatedToricData, v, b, h_size):
    """Combined Z/2 sign exponent of a degree-2 class r^a z^b h (minimal a).

    Full formula <n_sigma + v - e_I, k(a)> + 1 + <v + e_I, b> + |h| with
    k(a) - b a combination of block vectors; reduces to |h|/2 mod 2.
    """
    k_a = b  # minimal representative: a = e_b, so k(a) = b, all ell_j = 0
    pairing = sum((ns + vi - 1) * x for ns, vi, x in zip(vt.n_sigma, v, k_a))
    assert pairing.denominator == 1
    dagger = int(pairing) + 1 + sum((vi + 1) * x for vi, x in zip(v, b)) + h_size
    assert (dagger - h_size // 2) % 2 == 0, "sign disagrees with |h|/2 rule"
    return -1 if dagger % 2 else 1


@dataclass(frozen=True)
class DeformationClassification:
    surviving: tuple            # exponents in Xi_0, as tuples
    killed_in_ideal: tuple      # exponents in Xi minus Xi_0
    sign_killed: tuple          # (pair of H-basis labels, nonzero_in_algebra)

    def counts(self):
        return {
            "surviving": len(self.surviving),
            "killed_in_ideal": len(self.killed_in_ideal),
            "sign_killed": len(self.sign_killed),
        }


def enumerate_deformation_classes(vt: ValidatedToricData, v=None) -> DeformationClassification:
    """Classify the degree-2 invariant classes r^a z^b h per the proof scheme.

    Degree 2 forces 2 = 2<n_sigma, b> + |h|, so either |h| = 0 and b in Xi,
    or |h| = 2 and b = 0.  The |h| = 2 candidates are killed by the sign rule
    (invariance needs 4 | |h|); the b outside Xi_0 die in the quotient
    algebra; the survivors must be exactly the first-order classes indexed by
    Xi_0, each nonzero.
    """
    if v is None:
        from .grading import default_volume_vector
        v = default_volume_vector(vt)
    blocks = vt.blocks
    n = vt.n
    surviving = []
    killed = []
    for b in vt.xi:
        pairing = sum(ns * x for ns, x in zip(vt.n_sigma, b))
        assert pairing == 1
        sign = deformation_sign(vt, v, b, 0)
        if sign != 1:
            raise ClassificationViolation(f"|h|=0 class at {b} is not invariant")
        in_ideal = element_in_ideal(blocks, n, tuple(b), {frozenset(): 1})
        if b in set(vt.xi0):
            if in_ideal:
                raise ClassificationViolation(
                    f"first-order class z^{b} vanishes in the quotient algebra")
            surviving.append(tuple(b))
        else:
            if not in_ideal:
                raise ClassificationViolation(
                    f"class z^{b} with b outside Xi_0 survives the quotient")
            killed.append(tuple(b))
    # |h| = 2 candidates: wedge pairs of the fixed basis of H
    labels = []
    vectors = []
    for j, blk in enumerate(blocks):
        for pos, vec in enumerate(h_basis(blk)):
            labels.append((j, pos))
            vectors.append(vec)
    sign_killed = []
    zero_a = (0,) * n
    for (i1, i2) in combinations(range(len(vectors)), 2):
        pair = wedge(vectors[i1], vectors[i2])
        sign = deformation_sign(vt, v, zero_a, 2)
        if sign != -1:
            raise ClassificationViolation("|h|=2 class not killed by the sign rule")
        nonzero = bool(pair) and not element_in_ideal(blocks, n, zero_a, pair)
        sign_killed.append(((labels[i1], labels[i2]), nonzero))
    return DeformationClassification(
        surviving=tuple(sorted(surviving)),
        killed_in_ideal=tuple(sorted(killed)),
        sign_killed=tuple(sign_killed),
    )


def enumerate_curvature_candidates(vt: ValidatedToricData):
    """All K with e_K in M_bar and sum_{i in K} (1 - 2/d_i) = 1.

    The defining arithmetic is the same as the no-bc condition, so the output
    must coincide with its witness list.
    """
    from .intlat import contains
    out = []
    for size in range(1, vt.n + 1):
        for K in combinations(range(vt.n), size):
            eK = tuple(1 if i in K else 0 for i in range(vt.n))
            if not contains(vt.m_bar, eK):
                continue
            total = sum(Fraction(1) - Fraction(2, vt.degrees[i]) for i in K)
            if total == 1:
                out.append(K)
    return tuple(out)
