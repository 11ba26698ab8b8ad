"""Deterministic report assembly: every collection sorted, rationals exact.

Re-running on identical input yields byte-identical JSON (no timestamps, no
floats, fixed version string).
"""

from __future__ import annotations

from fractions import Fraction

from . import __version__
from .bside import build_koszul_mf, build_superpotential, check_wflips, dualize_mf
from .fans import (
    certify_isolated_singularity,
    check_mpcp,
    check_mpcs,
    project_config,
    regular_subdivision,
)
from .grading import (
    build_grading_data,
    check_commutative_square,
    coker_H,
    p_injective_mod_z,
)
from .koszulalg import (
    enumerate_curvature_candidates,
    enumerate_deformation_classes,
    koszul_cohomology_dims,
    tensor_j_dims,
)
from .toricdata import (
    ValidatedToricData,
    check_embeddedness,
    check_nef_partition,
    check_no_bc,
    symmetry_groups,
)

ALL_SECTIONS = ("validation", "conditions", "groups", "grading", "bside",
                "fans", "algebra")


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _one_based(subset):
    return [i + 1 for i in subset]


def input_echo(vt: ValidatedToricData):
    inp = vt.input
    lattice = {}
    if inp.lattice.congruences is not None:
        lattice["congruences"] = [
            {"c": list(c), "mod": m} for c, m in inp.lattice.congruences]
    else:
        lattice["generators"] = [list(g) for g in inp.lattice.generators]
    weights = None
    if isinstance(inp.weights, dict):
        weights = {",".join(str(x) for x in k): frac_str(v)
                   for k, v in sorted(inp.weights.items())}
    elif inp.weights is not None:
        weights = "uniform:" + frac_str(inp.weights)
    echo = {
        "blocks": [sorted(_one_based(b)) for b in inp.blocks],
        "d": list(inp.degrees),
        "lattice": lattice,
        "lambda": weights,
    }
    if inp.volume_orders is not None:
        echo["v"] = list(inp.volume_orders)
    if inp.b_valuations is not None:
        echo["b_valuations"] = {",".join(str(x) for x in k): frac_str(v)
                                for k, v in sorted(inp.b_valuations.items())}
    return echo


def section_validation(vt):
    return {
        "valid": True,
        "d": vt.d,
        "q": list(vt.q),
        "n_sigma": [frac_str(x) for x in vt.n_sigma],
        "xi_count": len(vt.xi),
        "xi0_count": len(vt.xi0),
        "xi": [list(p) for p in vt.xi],
        "xi0": [list(p) for p in vt.xi0],
    }


def section_conditions(vt):
    nef = check_nef_partition(vt)
    emb = check_embeddedness(vt)
    nobc = check_no_bc(vt)
    nef_out = {"holds": nef.holds}
    if not nef.holds:
        j, m, pairing = nef.witnesses[0]
        nef_out["witness"] = {"block": j + 1, "m": list(m), "pairing": frac_str(pairing)}
    return {
        "nef_partition": nef_out,
        "embeddedness": {
            "holds": emb.holds,
            "witnesses": [_one_based(K) for K in emb.witnesses],
        },
        "no_bc": {
            "holds": nobc.holds,
            "witnesses": [_one_based(K) for K in nobc.witnesses],
        },
    }


def section_groups(vt):
    sg = symmetry_groups(vt)
    return {
        "G": list(sg.g.invariant_factors),
        "G_star": list(sg.g_star.invariant_factors),
        "Gamma": list(sg.gamma.invariant_factors),
    }


def section_grading(vt):
    gd = build_grading_data(vt)
    return {
        "volume_orders": list(gd.volume_orders),
        "morphisms_well_defined": {name: m.is_well_defined()
                                   for name, m in sorted(gd.morphisms().items())},
        "commutative_square": check_commutative_square(vt, gd),
        "coker_H": list(coker_H(vt, gd).invariant_factors),
        "p_injective_mod_z": p_injective_mod_z(vt, gd),
    }


def section_bside(vt):
    gd = build_grading_data(vt)
    w = build_superpotential(vt)
    mf = build_koszul_mf(w)
    mf.verify_factorization()
    dual = dualize_mf(mf)
    return {
        "terms": [t.to_json() for t in w.terms],
        "term_count": len(w.terms),
        "weighted_homogeneous": True,
        "monomials_in_m_bar": True,
        "wflips": check_wflips(w),
        "w_split_convention": "smallest-index variable with positive exponent",
        "delta_squared_is_w": True,
        "delta_degree_one": mf.delta_degree_check(gd),
        "dual_iso_degree": dual.iso_degree,
        "dual_intertwines": dual.intertwines,
    }


def section_fans(vt, perturb_seed=None, threads=1):
    cfg = project_config(vt)
    sub = regular_subdivision(cfg, vt.input.weights, perturb_seed=perturb_seed)
    mpcp = check_mpcp(sub, cfg)
    mpcs = check_mpcs(sub, cfg, mpcp)
    cert = certify_isolated_singularity(vt, vt.input.weights, threads=threads)
    return {
        "dim": cfg.dim,
        "cell_count": len(sub.cells),
        "cells": [list(c) for c in sub.cells],
        "supports": {
            "|".join(cell): {"a": [frac_str(x) for x in sub.supports[cell][0]],
                             "c": frac_str(sub.supports[cell][1])}
            for cell in sub.cells},
        "perturbed": sub.perturbed,
        "conditions": mpcs.to_json(),
        "isolated_singularity": cert.to_json(),
    }


def section_algebra(vt, cutoff):
    classes = enumerate_deformation_classes(vt)
    curvature = enumerate_curvature_candidates(vt)
    if vt.r == 1:
        dims = koszul_cohomology_dims(vt.n, cutoff)
    else:
        dims = tensor_j_dims(vt, cutoff)
    return {
        "cutoff": cutoff,
        "graded_dims": dims.to_json(),
        "deformation_classes": {
            "surviving": [list(b) for b in classes.surviving],
            "killed_in_ideal": [list(b) for b in classes.killed_in_ideal],
            "sign_killed_count": len(classes.sign_killed),
            "counts": classes.counts(),
        },
        "curvature_candidates": [_one_based(K) for K in curvature],
    }


def build_report(vt: ValidatedToricData, sections, algebra_cutoff=None,
                 perturb_seed=None, threads=1):
    body = {
        "tool": {"name": "mirrorcone", "version": __version__},
        "input": input_echo(vt),
        "sections": {},
    }
    for name in ALL_SECTIONS:
        if name not in sections:
            continue
        if name == "validation":
            body["sections"][name] = section_validation(vt)
        elif name == "conditions":
            body["sections"][name] = section_conditions(vt)
        elif name == "groups":
            body["sections"][name] = section_groups(vt)
        elif name == "grading":
            body["sections"][name] = section_grading(vt)
        elif name == "bside":
            body["sections"][name] = section_bside(vt)
        elif name == "fans":
            body["sections"][name] = section_fans(vt, perturb_seed=perturb_seed,
                                                  threads=threads)
        elif name == "algebra":
            body["sections"][name] = section_algebra(vt, algebra_cutoff)
    return body
