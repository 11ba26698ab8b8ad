import random
from fractions import Fraction

import pytest

from mirrorcone.bside import (
    build_koszul_mf,
    build_superpotential,
    check_wflips,
    dualize_mf,
    epsilon_involution,
    term_flip_sign,
)
from mirrorcone.fixtures import fixture
from mirrorcone.grading import build_grading_data
from mirrorcone.toricdata import LatticeSpec, ToricInput, UnknownMonomial, validate

TERM_COUNTS = {"elliptic": 4, "quartic": 23, "cubic-fourfold": 26, "z-manifold": 39}
ISO_DEGREES = {"elliptic": -2, "quartic": -3, "cubic-fourfold": -4, "z-manifold": -6}


@pytest.mark.parametrize("name,count", sorted(TERM_COUNTS.items()))
def test_term_counts(name, count):
    w = build_superpotential(fixture(name))
    assert len(w.terms) == count
    assert sum(1 for t in w.terms if t.is_block) == fixture(name).r


def test_valuations_default_to_weights():
    vt = fixture("quartic", weights=Fraction(5, 2))
    w = build_superpotential(vt)
    for t in w.terms:
        if not t.is_block:
            assert t.valuation == Fraction(5, 2)


def test_explicit_valuations_override():
    vt = fixture("quartic")
    key = vt.xi0[0]
    w = build_superpotential(vt, b_valuations={key: Fraction(9, 4)})
    vals = {t.exponent: t.valuation for t in w.terms if not t.is_block}
    assert vals[key] == Fraction(9, 4)


def test_unknown_valuation_key_rejected():
    vt = fixture("quartic")
    with pytest.raises(UnknownMonomial):
        build_superpotential(vt, b_valuations={(1, 1, 1, 1): Fraction(1)})


from tests_support import random_admissible_v


@pytest.mark.parametrize("name", sorted(TERM_COUNTS))
def test_wflips_default_and_random_v(name):
    vt = fixture(name)
    w = build_superpotential(vt)
    assert check_wflips(w)
    rng = random.Random(13)
    for _ in range(10):
        v = random_admissible_v(vt, rng)
        assert check_wflips(w, v)


def test_block_term_flip_is_forced():
    vt = fixture("z-manifold")
    w = build_superpotential(vt)
    _, v = epsilon_involution(vt)
    for t in w.terms:
        if t.is_block:
            assert term_flip_sign(vt, t, v) == -1


def test_toy_three_variable_factorization():
    inp = ToricInput(blocks=((0, 1, 2),), degrees=(3, 3, 3),
                     lattice=LatticeSpec(congruences=(((1, 1, 1), 3),)))
    vt = validate(inp)
    w = build_superpotential(vt)
    mf = build_koszul_mf(w)
    assert mf.verify_factorization()
    report = dualize_mf(mf)
    assert report.intertwines and report.iso_degree == -2


@pytest.mark.parametrize("name", sorted(TERM_COUNTS))
def test_factorization_all_fixtures(name):
    vt = fixture(name)
    mf = build_koszul_mf(build_superpotential(vt))
    assert mf.verify_factorization()


@pytest.mark.parametrize("name", sorted(TERM_COUNTS))
def test_delta_degree_is_odd_one(name):
    vt = fixture(name)
    gd = build_grading_data(vt)
    mf = build_koszul_mf(build_superpotential(vt))
    assert mf.delta_degree_check(gd)


@pytest.mark.parametrize("name", sorted(ISO_DEGREES.items()))
def test_dualization(name):
    name, degree = name
    vt = fixture(name)
    mf = build_koszul_mf(build_superpotential(vt))
    report = dualize_mf(mf)
    assert report.iso_degree == degree
    assert report.intertwines


def test_split_reassembles_w():
    vt = fixture("cubic-fourfold")
    w = build_superpotential(vt)
    mf = build_koszul_mf(w)
    rebuilt = {}
    for i, entries in enumerate(mf.splits):
        for coeff, wexp in entries:
            exp = tuple(e + (1 if k == i else 0) for k, e in enumerate(wexp))
            for sym, val in coeff.items():
                rebuilt[(exp, sym)] = rebuilt.get((exp, sym), 0) + val
    expected = {(t.exponent, t.symbol()): t.sign for t in w.terms}
    assert rebuilt == expected
