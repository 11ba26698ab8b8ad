from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorcone.fixtures import fixture, fixture_input
from mirrorcone.toricdata import (
    BlockTooSmall,
    DegreeSumNotOne,
    DivisibilityFail,
    LatticeSpec,
    MissingGenerator,
    ToricInput,
    UnknownMonomial,
    check_embeddedness,
    check_nef_partition,
    check_no_bc,
    enumerate_xi,
    iota_of_block,
    symmetry_groups,
    validate,
)
from oracles import box_scan_xi

QUARTIC_CONG = (((1, 1, 1, 1), 4),)
CUBIC_CONG = (((1, 1, 1, 1, 1, 1), 3),)
ZMAN_CONG = (((1, 1, 1, -1, -1, -1, 0, 0, 0), 3), ((0, 0, 0, 1, 1, 1, -1, -1, -1), 3))


def test_quartic_validates():
    vt = fixture("quartic")
    assert vt.d == 4
    assert vt.q == (1, 1, 1, 1)
    assert vt.n_sigma == (Fraction(1, 4),) * 4
    assert len(vt.xi) == 35
    assert len(vt.xi0) == 22


def test_cubic_fourfold_validates():
    vt = fixture("cubic-fourfold")
    assert vt.d == 3
    assert len(vt.xi0) == 24


def test_zmanifold_xi0_structure():
    vt = fixture("z-manifold")
    assert len(vt.xi0) == 36
    singles = {p for p in vt.xi0 if max(p) == 3}
    triples = {p for p in vt.xi0 if max(p) == 1}
    assert len(singles) == 9 and len(triples) == 27
    assert singles | triples == set(vt.xi0)
    for p in triples:
        support = [i for i, x in enumerate(p) if x]
        assert [i // 3 for i in support] == [0, 1, 2]


def test_elliptic_xi0_exact():
    vt = fixture("elliptic")
    assert vt.xi0 == ((0, 0, 3), (0, 3, 0), (3, 0, 0))


@pytest.mark.parametrize("name,degrees,congs", [
    ("elliptic", (3, 3, 3), (((1, 1, 1), 3),)),
    ("quartic", (4, 4, 4, 4), QUARTIC_CONG),
    ("cubic-fourfold", (3,) * 6, CUBIC_CONG),
])
def test_xi_matches_box_scan_oracle(name, degrees, congs):
    vt = fixture(name)
    assert list(vt.xi) == box_scan_xi(degrees, congs)


def test_enumerate_xi_rederives():
    vt = fixture("quartic")
    xi, xi0 = enumerate_xi(vt)
    assert tuple(xi) == vt.xi and tuple(xi0) == vt.xi0


def test_xi0_two_zero_rule():
    for name in ("elliptic", "quartic", "cubic-fourfold", "z-manifold"):
        vt = fixture(name)
        for p in vt.xi0:
            for blk in vt.blocks:
                nonzero = sum(1 for i in blk if p[i] != 0)
                assert nonzero <= len(blk) - 2


def test_degree_sum_not_one():
    inp = ToricInput(blocks=((0, 1, 2),), degrees=(3, 3, 4),
                     lattice=LatticeSpec(congruences=(((1, 1, 1), 3),)))
    with pytest.raises(DegreeSumNotOne):
        validate(inp)


def test_block_too_small():
    inp = ToricInput(blocks=((0, 1),), degrees=(2, 2),
                     lattice=LatticeSpec(congruences=(((1, 1), 2),)))
    with pytest.raises(BlockTooSmall):
        validate(inp)


def test_missing_generator():
    # the diagonal lattice misses e_I
    gens = tuple(tuple(4 if i == j else 0 for i in range(4)) for j in range(4))
    inp = ToricInput(blocks=((0, 1, 2, 3),), degrees=(4, 4, 4, 4),
                     lattice=LatticeSpec(generators=gens))
    with pytest.raises(MissingGenerator):
        validate(inp)


def test_divisibility_fail():
    # the full lattice Z^4 contains everything but fails d | <q, m>
    gens = tuple(tuple(1 if i == j else 0 for i in range(4)) for j in range(4))
    inp = ToricInput(blocks=((0, 1, 2, 3),), degrees=(4, 4, 4, 4),
                     lattice=LatticeSpec(generators=gens))
    with pytest.raises(DivisibilityFail):
        validate(inp)


def test_weight_key_must_be_in_xi0():
    inp = fixture_input("quartic", weights={(1, 1, 1, 1): Fraction(1)})
    with pytest.raises(UnknownMonomial):
        validate(inp)


def test_nef_partition_quartic_true():
    assert check_nef_partition(fixture("quartic")).holds


def test_nef_partition_cubic_false_with_witness():
    vt = fixture("cubic-fourfold")
    verdict = check_nef_partition(vt)
    assert not verdict.holds
    j, m, pairing = verdict.witnesses[0]
    assert pairing.denominator != 1
    # re-check the witness by hand
    iota = iota_of_block(vt, j)
    assert sum(a * b for a, b in zip(iota, m)).denominator != 1


def test_nef_partition_zmanifold_false():
    assert not check_nef_partition(fixture("z-manifold")).holds


def test_nef_implies_iota_sum_is_n_sigma():
    for name in ("elliptic", "quartic"):
        vt = fixture(name)
        assert check_nef_partition(vt).holds
        total = [Fraction(0)] * vt.n
        for j in range(vt.r):
            for i, x in enumerate(iota_of_block(vt, j)):
                total[i] += x
        assert tuple(total) == vt.n_sigma


def test_embeddedness_quartic_true():
    assert check_embeddedness(fixture("quartic")).holds


def test_embeddedness_cubic_witnesses():
    verdict = check_embeddedness(fixture("cubic-fourfold"))
    assert not verdict.holds
    # the classical counterexample {1,4,5} (1-based) is among the witnesses
    assert (0, 3, 4) in verdict.witnesses
    # every witness is a 0/1 vector in M_bar that is not a union of blocks
    for K in verdict.witnesses:
        assert len(K) % 3 == 0
        assert set(K) not in ({0, 1, 2}, {3, 4, 5}, {0, 1, 2, 3, 4, 5})


def test_embeddedness_zmanifold_first_witness():
    verdict = check_embeddedness(fixture("z-manifold"))
    assert not verdict.holds
    assert verdict.witnesses[0] == (0, 3, 6)


def test_no_bc_quartic_holds():
    assert check_no_bc(fixture("quartic")).holds


def test_no_bc_cubic_fails_with_145():
    verdict = check_no_bc(fixture("cubic-fourfold"))
    assert not verdict.holds
    assert (0, 3, 4) in verdict.witnesses


def test_no_bc_zmanifold_fails_with_147():
    verdict = check_no_bc(fixture("z-manifold"))
    assert not verdict.holds
    assert (0, 3, 6) in verdict.witnesses


def test_symmetry_groups_fixture_values():
    sg = symmetry_groups(fixture("quartic"))
    assert sg.g.invariant_factors == (4,)
    assert sg.gamma.is_trivial()
    sg = symmetry_groups(fixture("cubic-fourfold"))
    assert sg.gamma.is_trivial()
    sg = symmetry_groups(fixture("z-manifold"))
    assert sg.gamma.invariant_factors == (3,)
    assert sg.g.invariant_factors == (3, 3)


@given(st.integers(3, 6))
@settings(max_examples=4, deadline=None)
def test_fermat_family_groups(n):
    # single block, all degrees n: G is Z/n, Gamma trivial
    inp = ToricInput(blocks=(tuple(range(n)),), degrees=(n,) * n,
                     lattice=LatticeSpec(congruences=(((1,) * n, n),)))
    vt = validate(inp)
    sg = symmetry_groups(vt)
    assert sg.g.invariant_factors == (n,)
    assert sg.gamma.is_trivial()
