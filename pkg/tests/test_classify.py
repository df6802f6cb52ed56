from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

import spinorss.classify as classify_mod
from spinorss.classify import (
    PetrovType,
    Segre,
    classify_case,
    petrov_partition,
    petrov_type,
    phi_kernel,
    random_admissible_point,
    segre_pattern,
)
from spinorss.conditions import FAILS
from spinorss.curvature import (
    CurvatureSet,
    DyadTransform,
    RicciSpinor,
    WeylSpinor,
    curvature_set,
    dyad_transform,
    generic_phi,
    real,
    standard_phi,
    standard_weyl,
)
from spinorss.errors import InconsistentInstantiationRank, SymbolicCoefficient
from spinorss.scalar_algebra import GaussianRational, Polynomial

PARTITION_TYPES = {(1, 1, 1, 1): "I", (2, 1, 1): "II", (2, 2): "D", (3, 1): "III", (4,): "N"}


def weyl_from_roots(roots, at_infinity=0, scale=GaussianRational(1)):
    """Psi_n such that sum C(4,n) Psi_n z^n = scale * prod (z - r) with 4 - len(roots) roots at infinity."""
    assert len(roots) + at_infinity == 4
    coeffs = [scale]
    for r in roots:
        nxt = [GaussianRational(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - c * r
        coeffs = nxt
    coeffs = coeffs + [GaussianRational(0)] * at_infinity
    return WeylSpinor(tuple(Polynomial.const(coeffs[n] * Fraction(1, comb(4, n))) for n in range(5)))


def test_examples():
    assert petrov_type(curvature_set(psi=(0, 0, 1, 0, 0)).weyl) is PetrovType.D
    assert petrov_type(curvature_set(psi=(0, 0, 0, 0, 1)).weyl) is PetrovType.N
    w = curvature_set(psi=(0, 0, 0, 1, 0)).weyl
    assert petrov_type(w) is PetrovType.III
    assert petrov_partition(w) == (3, 1)
    assert petrov_type(WeylSpinor.zero()) is PetrovType.O
    # 6 z^2 + z^4 = z^2 (z^2 + 6)
    assert petrov_type(curvature_set(psi=(0, 0, 1, 0, 1)).weyl) is PetrovType.II


def test_symbolic_weyl_rejected():
    with pytest.raises(SymbolicCoefficient):
        petrov_type(standard_weyl("D")[0])


@pytest.mark.parametrize("seed", range(30))
def test_partition_matches_constructed_roots(seed):
    rng = random.Random(seed)
    partition = rng.choice(list(PARTITION_TYPES))
    distinct = set()
    while len(distinct) < len(partition):
        distinct.add((rng.randint(-5, 5), rng.randint(-5, 5)))
    roots = [GaussianRational(*z) for z in distinct]
    inf = rng.random() < 0.3
    expanded = []
    at_infinity = 0
    for k, (r, m) in enumerate(zip(roots, partition)):
        if inf and k == len(partition) - 1:
            at_infinity = m
        else:
            expanded.extend([r] * m)
    w = weyl_from_roots(expanded, at_infinity, GaussianRational(rng.randint(1, 5), rng.randint(-3, 3)))
    assert petrov_type(w).value == PARTITION_TYPES[partition]


@pytest.mark.parametrize("seed", range(10))
def test_petrov_type_frame_invariant(seed):
    rng = random.Random(seed)
    t = rng.choice(["I", "II", "D", "III", "N"])
    w, nz = standard_weyl(t)
    pt = random_admissible_point(set().union(*(p.symbols() for p in w.psi)), nz, rng)
    c = CurvatureSet(WeylSpinor(tuple(Polynomial.const(p.evaluate(pt)) for p in w.psi)), RicciSpinor.zero(), 0)
    a = GaussianRational(rng.randint(1, 4), rng.randint(-2, 2))
    b = GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
    cc = GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
    d = (1 + b * cc) * a.inverse()
    moved = dyad_transform(c, DyadTransform(((a, b), (cc, d))))
    assert petrov_type(moved.weyl) is petrov_type(c.weyl) is PetrovType(t)


def test_segre_patterns():
    assert segre_pattern(RicciSpinor.zero(), 0) is Segre.VACUUM
    assert segre_pattern(RicciSpinor.zero(), real("lam")) is Segre.LAMBDA_TERM
    for pattern in (Segre.A1_11_11, Segre.A3, Segre.PERFECT_FLUID, Segre.TACHYON):
        assert segre_pattern(standard_phi(pattern)[0], real("lam")) is pattern
    assert segre_pattern(generic_phi(), 0) is Segre.OTHER
    fluid = RicciSpinor(((2, 0, 0), (0, 1, 0), (0, 0, 2)))
    assert segre_pattern(fluid, 1) is Segre.PERFECT_FLUID
    assert segre_pattern(RicciSpinor(((1, 0, 0), (0, 1, 0), (0, 0, 2))), 0) is Segre.OTHER


@pytest.mark.parametrize("t", ["I", "II", "III"])
@pytest.mark.parametrize("which", ["S1", "mixed", "both"])
def test_kernel_trivial(t, which):
    w, nz = standard_weyl(t)
    rep = phi_kernel(w, which, nz)
    assert rep.dimension == 0 and rep.basis == []
    assert len(rep.sampled_ranks) >= 3 and set(rep.sampled_ranks) == {9}


@pytest.mark.parametrize("which", ["S1", "mixed", "both"])
def test_kernel_type_d(which):
    w, nz = standard_weyl("D")
    rep = phi_kernel(w, which, nz)
    assert rep.dimension == 1
    assert rep.basis == [{"Phi11'": Polynomial.const(1)}]
    assert [str(g) for g in rep.conditions_on_kernel["RicciS2"]] == ["k1*lam + 1/2*k1*psi2"]
    assert rep.generic_pivots == []


def test_kernel_type_n_is_along_phi22():
    w, nz = standard_weyl("N")
    rep = phi_kernel(w, "S1", nz)
    assert rep.dimension == 1
    assert rep.basis == [{"Phi22'": Polynomial.const(1)}]
    # the Ricci condition on the kernel is Lambda times the Phi22' coordinate
    assert [str(g) for g in rep.conditions_on_kernel["RicciS2"]] == ["k1*lam"]
    assert rep.conditions_on_kernel["Mixed"] == []


def test_kernel_type_o_is_everything():
    rep = phi_kernel(WeylSpinor.zero(), "both")
    assert rep.dimension == 9


def test_kernel_sampling_mismatch_raises(monkeypatch):
    w, nz = standard_weyl("D")
    monkeypatch.setattr(classify_mod, "rank", lambda rows: 7)
    with pytest.raises(InconsistentInstantiationRank):
        phi_kernel(w, "S1", nz)


def test_classify_examples():
    flat = classify_case(curvature_set())
    assert flat.semisymmetric and flat.petrov is PetrovType.O and flat.segre is Segre.VACUUM

    generic = classify_case(CurvatureSet(WeylSpinor.zero(), generic_phi(), real("lam")))
    assert generic.conformally_semisymmetric and not generic.ricci_semisymmetric
    assert generic.verdicts.ricci.witness

    w, nz = standard_weyl("I")
    vac = classify_case(CurvatureSet(w, RicciSpinor.zero(), 0), nz)
    assert vac.ricci_semisymmetric and not vac.conformally_semisymmetric
    assert vac.verdicts.conformal.status == FAILS and vac.verdicts.conformal.witness
    assert vac.petrov is PetrovType.I


def test_symbolic_petrov_from_hint_or_shape():
    w, nz = standard_weyl("II")
    c = CurvatureSet(w, RicciSpinor.zero(), 0)
    assert classify_case(c, nz).petrov is PetrovType.II
    assert classify_case(c, nz, petrov_hint="D").petrov is PetrovType.D
    odd = CurvatureSet(WeylSpinor((real("a"), real("a"), 0, 0, 0)), RicciSpinor.zero(), 0)
    assert classify_case(odd).petrov is None
