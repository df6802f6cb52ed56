from __future__ import annotations

from fractions import Fraction

import pytest

from spinorss.conditions import proportionality_factor, weyl_full_spinor
from spinorss.curvature import (
    CurvatureSet,
    DyadTransform,
    RicciSpinor,
    Segre,
    WeylSpinor,
    box_on,
    build_X,
    cplx,
    curvature_set,
    dyad_transform,
    generic_curvature_set,
    real,
    standard_phi,
    standard_weyl,
)
from spinorss.errors import HermiticityError, NotUnimodular, UnknownPattern
from spinorss.scalar_algebra import GaussianRational, Polynomial
from spinorss.spinor_algebra import GeneralSpinor, conj_spinor, symmetrize


def test_weyl_components_map():
    w = WeylSpinor(tuple(cplx(f"psi{n}") for n in range(5))).to_spinor()
    for idx, c in w.items():
        assert c == cplx(f"psi{sum(idx)}")


def test_ricci_hermiticity():
    phi = RicciSpinor.zero()
    assert phi.is_zero()
    with pytest.raises(HermiticityError):
        RicciSpinor(((0, 1, 0), (GaussianRational(1, -2), 0, 0), (0, 0, 0)))
    with pytest.raises(HermiticityError):
        CurvatureSet(WeylSpinor.zero(), RicciSpinor.zero(), cplx("psi2"))


def test_ricci_spinor_is_real_tensor():
    s = generic_curvature_set().ricci.to_spinor()
    # conjugation swaps the unprimed and primed pairs
    assert conj_spinor(s) == s


def test_build_X():
    c = curvature_set(psi=standard_weyl("II")[0].psi, lam=0)
    assert build_X(c) == c.weyl.to_spinor()
    lam_only = CurvatureSet(WeylSpinor.zero(), RicciSpinor.zero(), real("lam"))
    x = build_X(lam_only)
    # Lambda (eps_AC eps_BD + eps_AD eps_BC) expanded by hand
    lam = real("lam")
    assert x[0, 1, 0, 1] == -lam and x[0, 1, 1, 0] == -lam
    assert x[0, 0, 1, 1] == 2 * lam and x[1, 1, 0, 0] == 2 * lam
    assert x[0, 0, 0, 0].is_zero() and x[0, 0, 0, 1].is_zero()
    g = generic_curvature_set()
    assert symmetrize(build_X(g), (0, 1, 2, 3)) == g.weyl.to_spinor()


def test_box_on_scalar_is_zero():
    c = generic_curvature_set()
    scalar = GeneralSpinor((), [real("lam")])
    assert box_on(c, scalar).is_zero()


def test_box_on_weyl_is_minus_four_weyl_full():
    c = generic_curvature_set()
    assert proportionality_factor(box_on(c, c.weyl.to_spinor()), weyl_full_spinor(c)) == -4


def test_standard_forms():
    w, nz = standard_weyl("D")
    assert [p.is_zero() for p in w.psi] == [True, True, False, True, True]
    assert nz == [cplx("psi2")]
    w, _ = standard_weyl("N")
    assert [p.is_zero() for p in w.psi] == [True, True, True, True, False]
    r, _ = standard_phi(Segre.A1_11_11)
    assert [(a, b) for a in range(3) for b in range(3) if not r.phi[a][b].is_zero()] == [(1, 1)]
    r, _ = standard_phi(Segre.PERFECT_FLUID)
    p11 = real("phi11")
    assert (r.phi[0][0], r.phi[1][1], r.phi[2][2]) == (2 * p11, p11, 2 * p11)
    r, _ = standard_phi(Segre.TACHYON)
    assert (r.phi[0][0], r.phi[2][2]) == (-2 * p11, -2 * p11)
    with pytest.raises(UnknownPattern):
        standard_phi("B[(11)]")


def test_dyad_identity_and_unimodularity():
    c = generic_curvature_set()
    assert dyad_transform(c, DyadTransform.identity()) == c
    with pytest.raises(NotUnimodular):
        DyadTransform(((2, 0), (0, 1)))


def test_boost_weight_of_psi4():
    k = Fraction(3)
    c = curvature_set(psi=(0, 0, 0, 0, 1))
    out = dyad_transform(c, DyadTransform(((k, 0), (0, 1 / k))))
    assert out.weyl.psi[4] == Polynomial.const(k ** -4)
    assert all(p.is_zero() for p in out.weyl.psi[:4])


def test_dyad_transforms_compose():
    c = generic_curvature_set()
    s = DyadTransform(((1, GaussianRational(0, 1)), (0, 1)))
    t = DyadTransform(((2, 1), (1, 1)))
    assert dyad_transform(dyad_transform(c, t), s) == dyad_transform(c, s.compose(t))
