"""Validation and combinatorics of the toric input data.

The input is a partition of an index set into blocks, a degree vector, a
sublattice of Z^I and a positive weight per distinguished lattice point.
This module checks the defining axioms, enumerates the distinguished lattice
point sets, decides the three named combinatorial conditions and computes the
symmetry groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .intlat import (
    FiniteAbelianGroup,
    RationalLatticeBasis,
    Sublattice,
    contains,
    dual_lattice,
    hnf_canonicalize,
    lattice_quotient,
    lcm_list,
    quotient_group,
    sublattice_from_congruences,
)

IntVec = tuple[int, ...]


class ToricDataError(ValueError):
    """Base class for rejected toric input."""


class BlockTooSmall(ToricDataError):
    pass


class DegreeSumNotOne(ToricDataError):
    pass


class MissingGenerator(ToricDataError):
    pass


class DivisibilityFail(ToricDataError):
    pass


class IndexSetTooLarge(ToricDataError):
    pass


class UnknownMonomial(ToricDataError):
    pass


@dataclass(frozen=True)
class LatticeSpec:
    """Sublattice given either by generator rows or by congruences (c, mod)."""

    generators: tuple[IntVec, ...] | None = None
    congruences: tuple[tuple[IntVec, int], ...] | None = None

    def build(self, ambient_rank):
        if (self.generators is None) == (self.congruences is None):
            raise ToricDataError("specify exactly one of generators / congruences")
        if self.generators is not None:
            return hnf_canonicalize(self.generators, ambient_rank)
        return sublattice_from_congruences(ambient_rank, self.congruences)


@dataclass(frozen=True)
class ToricInput:
    """Raw input: blocks (0-based index tuples), degrees, sublattice, weights.

    ``weights`` is either a single positive rational (uniform) or a mapping
    from exponent tuples to positive rationals; it may be None when no fan
    computations are requested.  ``volume_orders`` is the optional pole-order
    vector; block sums must equal block size minus one.
    """

    blocks: tuple[IntVec, ...]
    degrees: IntVec
    lattice: LatticeSpec
    weights: object = None
    volume_orders: IntVec | None = None
    b_valuations: dict | None = None


@dataclass(frozen=True)
class ValidatedToricData:
    input: ToricInput
    m_bar: Sublattice
    n_bar: RationalLatticeBasis
    d: int
    q: IntVec
    n_sigma: tuple[Fraction, ...]
    xi: tuple[IntVec, ...]
    xi0: tuple[IntVec, ...]

    @property
    def blocks(self):
        return self.input.blocks

    @property
    def degrees(self):
        return self.input.degrees

    @property
    def n(self):
        return len(self.input.degrees)

    @property
    def r(self):
        return len(self.input.blocks)

    def block_of(self, i):
        for j, blk in enumerate(self.blocks):
            if i in blk:
                return j
        raise ToricDataError(f"index {i} not in any block")

    def block_vector(self, j):
        return tuple(1 if i in self.blocks[j] else 0 for i in range(self.n))

    def weight_of(self, p):
        w = self.input.weights
        if w is None:
            raise ToricDataError("no weight vector supplied")
        if isinstance(w, dict):
            key = tuple(p)
            if key not in w:
                raise UnknownMonomial(f"no weight for {key}")
            lam = Fraction(w[key])
        else:
            lam = Fraction(w)
        if lam <= 0:
            raise ToricDataError("weights must be positive")
        return lam


@dataclass(frozen=True)
class ConditionVerdict:
    holds: bool
    witnesses: tuple = ()

    def __bool__(self):
        return self.holds


def validate(inp: ToricInput) -> ValidatedToricData:
    """Check all axioms on the input and enumerate the lattice point sets.

    Raises a subclass of ToricDataError naming the violated axiom, with a
    witness in the message.
    """
    n = len(inp.degrees)
    seen = sorted(i for blk in inp.blocks for i in blk)
    if seen != list(range(n)):
        raise ToricDataError("blocks do not partition the index set")
    for j, blk in enumerate(inp.blocks):
        if len(blk) < 3:
            raise BlockTooSmall(f"block {j} has size {len(blk)} < 3")
        s = sum(Fraction(1, inp.degrees[i]) for i in blk)
        if s != 1:
            raise DegreeSumNotOne(f"block {j}: sum of 1/d_i is {s}, not 1")
    if any(d <= 0 for d in inp.degrees):
        raise ToricDataError("degrees must be positive")

    m_bar = inp.lattice.build(n)
    if m_bar.rank != n:
        raise MissingGenerator("sublattice is not of full rank")
    for i in range(n):
        v = tuple(inp.degrees[i] if k == i else 0 for k in range(n))
        if not contains(m_bar, v):
            raise MissingGenerator(f"d_i*e_i missing for i={i}: {v}")
    for j, blk in enumerate(inp.blocks):
        v = tuple(1 if i in blk else 0 for i in range(n))
        if not contains(m_bar, v):
            raise MissingGenerator(f"e_I_j missing for block {j}: {v}")

    d = lcm_list(inp.degrees)
    q = tuple(d // di for di in inp.degrees)
    for row in m_bar.basis:
        pairing = sum(qi * mi for qi, mi in zip(q, row))
        if pairing % d != 0:
            raise DivisibilityFail(f"d does not divide <q, m> for m = {row}")
    n_sigma = tuple(Fraction(qi, d) for qi in q)
    n_bar = dual_lattice(m_bar)

    xi, xi0 = _enumerate_xi(inp.blocks, d, q, m_bar)

    if inp.volume_orders is not None:
        validate_volume_orders(inp.blocks, inp.volume_orders)
    if isinstance(inp.weights, dict):
        xi0set = set(xi0)
        for key in inp.weights:
            if tuple(key) not in xi0set:
                raise UnknownMonomial(f"weight key {key} is not in Xi_0")
    if inp.b_valuations is not None:
        xi0set = set(xi0)
        for key in inp.b_valuations:
            if tuple(key) not in xi0set:
                raise UnknownMonomial(f"valuation key {key} is not in Xi_0")

    return ValidatedToricData(
        input=inp, m_bar=m_bar, n_bar=n_bar, d=d, q=q, n_sigma=n_sigma,
        xi=tuple(xi), xi0=tuple(xi0),
    )


def validate_volume_orders(blocks, v):
    for j, blk in enumerate(blocks):
        s = sum(v[i] for i in blk)
        if s != len(blk) - 1:
            raise ToricDataError(
                f"volume orders on block {j} sum to {s}, expected {len(blk) - 1}")


def _enumerate_xi(blocks, d, q, m_bar):
    """All m >= 0 with <q, m> = d and m in M_bar, plus the two-zeros filter.

    Depth-first over coordinates with remaining-degree pruning; the solution
    set is contained in a bounded simplex so the search always terminates.
    """
    n = len(q)
    out = []
    current = [0] * n

    def rec(i, remaining):
        if i == n:
            if remaining == 0 and contains(m_bar, tuple(current)):
                out.append(tuple(current))
            return
        limit = remaining // q[i]
        for val in range(limit + 1):
            current[i] = val
            rec(i + 1, remaining - val * q[i])
        current[i] = 0

    rec(0, d)
    out.sort()
    xi0 = [p for p in out if _two_zeros_per_block(p, blocks)]
    return out, xi0


def _two_zeros_per_block(p, blocks):
    return all(sum(1 for i in blk if p[i] == 0) >= 2 for blk in blocks)


def enumerate_xi(vt: ValidatedToricData):
    """Re-derive (Xi, Xi_0) from the validated data."""
    return _enumerate_xi(vt.blocks, vt.d, vt.q, vt.m_bar)


def iota_of_block(vt: ValidatedToricData, j):
    """The vector with entries 1/d_i on block j and 0 elsewhere."""
    blk = vt.blocks[j]
    return tuple(Fraction(1, vt.degrees[i]) if i in blk else Fraction(0)
                 for i in range(vt.n))


def check_nef_partition(vt: ValidatedToricData) -> ConditionVerdict:
    """Holds iff every iota(e_I_j) pairs integrally with all of M_bar."""
    for j in range(vt.r):
        iota = iota_of_block(vt, j)
        for row in vt.m_bar.basis:
            pairing = sum(a * b for a, b in zip(iota, row))
            if pairing.denominator != 1:
                return ConditionVerdict(False, ((j, row, pairing),))
    return ConditionVerdict(True)


def _subset_scan_guard(n):
    if n > 30:
        raise IndexSetTooLarge(f"2^{n} subset scan refused")


def check_embeddedness(vt: ValidatedToricData) -> ConditionVerdict:
    """Holds iff every 0/1 vector in M_bar is a union of blocks.

    All offending subsets are returned (sorted by size then lexicographically)
    so any particular counterexample of interest can be located in the output.
    """
    _subset_scan_guard(vt.n)
    block_sets = [frozenset(blk) for blk in vt.blocks]
    witnesses = []
    for size in range(1, vt.n + 1):
        for K in combinations(range(vt.n), size):
            eK = tuple(1 if i in K else 0 for i in range(vt.n))
            if not contains(vt.m_bar, eK):
                continue
            covered = set(K)
            for bs in block_sets:
                if bs <= covered:
                    covered -= bs
            if covered:
                witnesses.append(K)
    return ConditionVerdict(not witnesses, tuple(witnesses))


def check_no_bc(vt: ValidatedToricData) -> ConditionVerdict:
    """Holds iff no K has e_K in M_bar with |K| - 1 = 2 * sum_{i in K} 1/d_i."""
    _subset_scan_guard(vt.n)
    witnesses = []
    for size in range(1, vt.n + 1):
        for K in combinations(range(vt.n), size):
            eK = tuple(1 if i in K else 0 for i in range(vt.n))
            if not contains(vt.m_bar, eK):
                continue
            if sum(Fraction(2, vt.degrees[i]) for i in K) == size - 1:
                witnesses.append(K)
    return ConditionVerdict(not witnesses, tuple(witnesses))


@dataclass(frozen=True)
class SymmetryGroups:
    g: FiniteAbelianGroup
    g_star: FiniteAbelianGroup
    gamma: FiniteAbelianGroup


def symmetry_groups(vt: ValidatedToricData) -> SymmetryGroups:
    """The covering group G, its dual G*, and Gamma = G*/(Z/d).

    G = Z^I/M_bar (the quotient M-tilde/M agrees with it since every e_I_j
    lies in M_bar), and G* has the same invariant factors.  The diagonal Z/d
    inside G* is generated by the character m -> <q, m>/d mod 1, so Gamma is
    dual to its kernel K/M_bar with K = {m : d | <q, m>}; a finite abelian
    group and its dual share invariant factors.
    """
    g = quotient_group(vt.n, vt.m_bar)
    kernel = sublattice_from_congruences(vt.n, [(vt.q, vt.d)])
    gamma = lattice_quotient(kernel, vt.m_bar)
    # the diagonal character has exact order d, so |Gamma| * d = |G*|
    assert kernel.index_in_ambient() == vt.d
    assert gamma.order * vt.d == g.order
    return SymmetryGroups(g=g, g_star=g, gamma=gamma)
