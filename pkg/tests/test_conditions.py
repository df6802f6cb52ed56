from __future__ import annotations

from fractions import Fraction

import pytest

from spinorss.conditions import (
    CONDITIONAL,
    FAILS,
    RICCI_TRACE_FACTOR,
    WEYL_CONTRACTION_FACTOR,
    close_assumptions,
    inconsistent,
    cond_mixed,
    cond_ricci_full,
    cond_ricci_S1,
    cond_ricci_S2,
    cond_weyl_contracted,
    cond_weyl_full,
    identity_suite,
    predicates,
    proportionality_factor,
    reduce_generators,
    ricci_partial_trace_spinor,
    ricci_s2_spinor,
    ricci_trace_spinor,
    verify_ricci_decomposition,
    verify_weyl_reduction,
    weyl_contracted_spinor,
    weyl_full_contraction,
)
from spinorss.curvature import (
    CurvatureSet,
    RicciSpinor,
    Segre,
    WeylSpinor,
    cplx,
    generic_curvature_set,
    generic_phi,
    real,
    standard_phi,
    standard_weyl,
)
from spinorss.scalar_algebra import Polynomial, Symbol, conj_closure, parse_polynomial

LAM = real("lam")


def family(petrov, phi=None, lam=LAM):
    w, nz = standard_weyl(petrov)
    return CurvatureSet(w, phi if phi is not None else RicciSpinor.zero(), lam), nz


def generators(residual, nonzero):
    return [str(g) for g in reduce_generators(residual.components, close_assumptions(nonzero))]


def test_identity_suite_is_exact():
    results = identity_suite(generic_curvature_set())
    assert len(results) == 5
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_frozen_factors():
    c = generic_curvature_set()
    assert proportionality_factor(weyl_contracted_spinor(c), weyl_full_contraction(c)) == WEYL_CONTRACTION_FACTOR
    assert WEYL_CONTRACTION_FACTOR == Fraction(4, 3)
    assert proportionality_factor(ricci_s2_spinor(c), ricci_partial_trace_spinor(c)) == RICCI_TRACE_FACTOR


def test_trace_vanishes():
    assert ricci_trace_spinor(generic_curvature_set()).is_zero()


def test_component_counts():
    c = generic_curvature_set()
    assert len(cond_weyl_full(c).components) == 15
    assert len(cond_weyl_contracted(c).components) == 5
    assert len(cond_ricci_S1(c).components) == 15
    assert len(cond_ricci_S2(c).components) == 9


def test_rank_reports():
    c = generic_curvature_set()
    r = verify_weyl_reduction(c)
    assert r.passes and r.ranks == {"WeylFull": 5, "WeylContracted": 5, "union": 5}
    r = verify_ricci_decomposition(c)
    assert r.passes
    assert (r.ranks["RicciS1"], r.ranks["RicciS2"], r.ranks["RicciFull"]) == (15, 9, 24)
    assert r.ranks["S1+S2"] == r.ranks["union"] == 24


def test_rank_reports_degenerate_inputs():
    flat = CurvatureSet(WeylSpinor.zero(), generic_phi(), LAM)
    assert verify_weyl_reduction(flat).ranks == {"WeylFull": 0, "WeylContracted": 0, "union": 0}
    vac = CurvatureSet(WeylSpinor(tuple(cplx(f"psi{n}") for n in range(5))), RicciSpinor.zero(), LAM)
    assert set(verify_ricci_decomposition(vac).ranks.values()) == {0}


def test_weyl_residuals_vanish_when_conformally_flat():
    c = CurvatureSet(WeylSpinor.zero(), generic_phi(), LAM)
    assert cond_weyl_full(c).vanishes
    assert cond_weyl_contracted(c).vanishes
    assert cond_mixed(c).vanishes
    assert cond_ricci_S1(c).vanishes


def test_type_d_conformal_condition():
    c, nz = family("D")
    assert generators(cond_weyl_contracted(c), nz) == ["lam + 1/2*psi2"]
    psi2 = Symbol("psi2")
    matched = c.substitute(conj_closure({psi2: -2 * LAM}))
    assert cond_weyl_full(matched).vanishes
    assert cond_weyl_contracted(matched).vanishes


def test_type_n_conformal_generator():
    c, nz = family("N")
    assert [str(g) for g in reduce_generators(cond_weyl_contracted(c).components, [])] == ["lam*psi4"]
    assert generators(cond_weyl_contracted(c), nz) == ["lam"]


def test_ricci_full_matches_vacuum():
    c, _ = family("I")
    assert cond_ricci_full(c).vanishes
    assert cond_ricci_S2(c).vanishes


@pytest.mark.parametrize("pattern", [Segre.PERFECT_FLUID, Segre.TACHYON])
def test_conformally_flat_fluids(pattern):
    phi, _ = standard_phi(pattern)
    c = CurvatureSet(WeylSpinor.zero(), phi, LAM)
    assert generators(cond_ricci_S2(c), [real("phi11")]) == ["lam - phi11"]
    assert cond_ricci_S2(c.substitute({Symbol("lam", "real"): real("phi11")})).vanishes


def test_a3_conformally_flat():
    phi, _ = standard_phi(Segre.A3)
    c = CurvatureSet(WeylSpinor.zero(), phi, LAM)
    raw = [str(g) for g in reduce_generators(cond_ricci_S2(c).components, [])]
    assert raw == ["lam*phi22"]


def test_predicates_examples():
    for t in ("I", "II", "III", "D", "N", "O"):
        c, nz = family(t, lam=0)
        assert predicates(c, nz).ricci.holds
    c = CurvatureSet(WeylSpinor.zero(), generic_phi(), LAM)
    assert predicates(c).conformal.holds
    phi, _ = standard_phi(Segre.A1_11_11)
    c, nz = family("D", phi=phi)
    psi2 = Symbol("psi2")
    matched = c.substitute(conj_closure({psi2: -2 * LAM}))
    v = predicates(matched, [LAM, real("phi11")])
    assert v.conformal.holds and v.ricci.holds and v.semisymmetric.holds


def test_verdict_witnesses():
    c, nz = family("I", lam=0)
    v = predicates(c, nz)
    assert v.conformal.status == FAILS
    assert v.conformal.witness
    c, nz = family("D")
    v = predicates(c, nz)
    assert v.conformal.status == CONDITIONAL
    point = {Symbol(k, "real") if k == "lam" else Symbol(k): val for k, val in v.conformal.witness.items()}
    vals = {s: parse_polynomial(x).constant_value() for s, x in point.items()}
    vals[Symbol("psi2").conj()] = vals[Symbol("psi2")].conj()
    assert any(g.evaluate(vals) for g in v.conformal.generators)


def test_strip_factors_keeps_ideal():
    p = cplx("psi2") * (2 * LAM + cplx("psi2"))
    assert [str(g) for g in reduce_generators([p], [cplx("psi2")])] == ["lam + 1/2*psi2"]
    assert reduce_generators([Polynomial()], []) == []


def test_inconsistency_detection():
    psi0, psi2 = cplx("psi0"), cplx("psi2")
    # psi2 = 0 and psi0^2 = 3 psi2^2 force psi0 = 0
    assert inconsistent([psi2, psi0 ** 2 - 3 * psi2 ** 2], close_assumptions([psi0]))
    assert not inconsistent([LAM + psi2 * Fraction(1, 2)], close_assumptions([psi2]))
    assert inconsistent([LAM], [LAM])
