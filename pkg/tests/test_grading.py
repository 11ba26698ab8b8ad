import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorcone.fixtures import fixture
from mirrorcone.grading import (
    GradingDatum,
    GradingError,
    build_grading_data,
    check_commutative_square,
    coker_H,
    deg_equal,
    default_volume_vector,
    p_injective_mod_z,
)
from mirrorcone.toricdata import ToricDataError

FIXTURES = ("elliptic", "quartic", "cubic-fourfold", "z-manifold")


@pytest.mark.parametrize("name", FIXTURES)
def test_morphisms_well_defined(name):
    vt = fixture(name)
    gd = build_grading_data(vt)
    for morph in gd.morphisms().values():
        assert morph.is_well_defined()


def test_mf_datum_relator():
    gd = build_grading_data(fixture("quartic"))
    assert gd.mf.relations == ((2, -4),)
    assert deg_equal(gd.mf.deg(2, (-4,)), gd.mf.zero())
    assert not deg_equal(gd.mf.deg(1, (0,)), gd.mf.zero())


def test_delta_datum_relation_quartic():
    gd = build_grading_data(fixture("quartic"))
    assert deg_equal(gd.delta.deg(2, (-1, -1, -1, -1)), gd.delta.zero())


def test_z_degrees():
    gd = build_grading_data(fixture("quartic"))
    assert gd.deg_z(gd.cover, 0).j == 2
    assert gd.deg_z(gd.cover, 0).m == (-1, 0, 0, 0)
    assert gd.deg_z(gd.delta, 0).j == 0
    assert gd.deg_z(gd.delta, 0).m == (1, 0, 0, 0)


def test_odd_relator_rejected():
    with pytest.raises(GradingError):
        GradingDatum("bad", 1, ((1, 2),))


@pytest.mark.parametrize("name", FIXTURES)
def test_all_relators_even(name):
    gd = build_grading_data(fixture(name))
    for datum in (gd.amb, gd.cover, gd.delta, gd.mf):
        for rel in datum.relations:
            assert rel[0] % 2 == 0


@pytest.mark.parametrize("name", FIXTURES)
def test_commutative_square(name):
    vt = fixture(name)
    gd = build_grading_data(vt)
    assert check_commutative_square(vt, gd)


@pytest.mark.parametrize("name", FIXTURES)
def test_coker_h_trivial(name):
    vt = fixture(name)
    assert coker_H(vt).is_trivial()


@pytest.mark.parametrize("name", FIXTURES)
def test_p_injective(name):
    vt = fixture(name)
    gd = build_grading_data(vt)
    assert p_injective_mod_z(vt, gd)


def test_default_volume_vector_block_sums():
    vt = fixture("z-manifold")
    v = default_volume_vector(vt)
    for blk in vt.blocks:
        assert sum(v[i] for i in blk) == len(blk) - 1


def test_default_volume_vector_quartic():
    assert default_volume_vector(fixture("quartic")) == (1, 1, 1, 0)


def test_volume_vector_validation():
    vt = fixture("quartic")
    with pytest.raises(ToricDataError):
        build_grading_data(vt, volume_orders=(1, 1, 1, 1))


def test_w_monomials_have_degree_two_in_cover():
    from mirrorcone.bside import build_superpotential
    for name in FIXTURES:
        vt = fixture(name)
        gd = build_grading_data(vt)
        w = build_superpotential(vt)
        two = gd.cover.deg(2, (0,) * vt.n)
        for t in w.terms:
            deg = gd.cover.zero()
            for i, e in enumerate(t.exponent):
                deg = deg + gd.deg_z(gd.cover, i).scale(e)
            if not t.is_block:
                deg = deg + gd.deg_r_monomial(t.exponent, 1)
            assert deg_equal(deg, two)


def test_t_sends_z_monomials_to_weighted_degree():
    vt = fixture("quartic")
    gd = build_grading_data(vt)
    for p in vt.xi:
        image = gd.t.apply(gd.delta.deg(0, p))
        assert image.j == 0 and image.m == (vt.d,)


def test_v_morphism_kills_cover_relators():
    vt = fixture("z-manifold")
    gd = build_grading_data(vt)
    for rel in gd.cover.relations:
        image = gd.v.apply(gd.cover.deg(rel[0], tuple(rel[1:])))
        assert image.j == 0


@given(st.integers(0, 3), st.integers(-2, 2))
@settings(max_examples=20, deadline=None)
def test_square_on_random_lattice_elements(k, c):
    vt = fixture("quartic")
    gd = build_grading_data(vt)
    m = tuple(c * x for x in vt.m_bar.basis[k % 4])
    left = gd.s.apply(gd.q.apply(gd.amb.deg(k, m)))
    right = gd.r.apply(gd.p.apply(gd.amb.deg(k, m)))
    assert deg_equal(left, right)
