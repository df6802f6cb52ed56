from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinorss.errors import ConjugationMismatch, NotExactlyDivisible, ParseError, SymbolicCoefficient
from spinorss.scalar_algebra import (
    GaussianRational,
    Polynomial,
    Symbol,
    conj_closure,
    is_identically_zero,
    parse_polynomial,
    poly_arith,
    squarefree_decomposition,
    substitute,
)

LAM = Polynomial.symbol("lam", "real")
PSI2 = Polynomial.symbol("psi2")
PSI4 = Polynomial.symbol("psi4")
PHI11 = Polynomial.symbol("phi11", "real")
X = Polynomial.symbol("x")
Z = Polynomial.symbol("z", "real")

SYMS = {s.name: s for s in (Symbol("lam", "real"), Symbol("psi2"), Symbol("psi4"), Symbol("x"),
                            Symbol("phi11", "real"))}

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
gaussians = st.builds(GaussianRational, small, small)
atoms = st.sampled_from([LAM, PSI2, PSI2.conj(), PSI4, X, X.conj(), PHI11])


@st.composite
def polynomials(draw, max_terms=4):
    p = Polynomial()
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(gaussians)
        mono = Polynomial.const(c)
        for _ in range(draw(st.integers(0, 3))):
            mono = mono * draw(atoms)
        p = p + mono
    return p


# ring axioms over many random polynomials

@settings(max_examples=1000, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial()
    assert a * 1 == a and a + 0 == a


@settings(max_examples=300, deadline=None)
@given(polynomials(), polynomials())
def test_conjugation_is_an_involutive_homomorphism(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@settings(max_examples=200, deadline=None)
@given(polynomials(), polynomials(), gaussians, gaussians)
def test_substitution_commutes_with_arithmetic(a, b, v, w):
    bindings = conj_closure({Symbol("x"): Polynomial.const(v), Symbol("psi2"): PSI4 + w})
    assert (a * b).substitute(bindings) == a.substitute(bindings) * b.substitute(bindings)
    assert (a + b).substitute(bindings) == a.substitute(bindings) + b.substitute(bindings)


@settings(max_examples=200, deadline=None)
@given(polynomials())
def test_format_parse_round_trip(p):
    assert parse_polynomial(str(p), SYMS) == p


@settings(max_examples=200, deadline=None)
@given(polynomials(max_terms=3), polynomials(max_terms=3))
def test_exact_division_recovers_factor(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_gaussian_rational_arithmetic():
    a = GaussianRational(Fraction(1, 2), 3)
    assert a * a.inverse() == GaussianRational(1)
    assert a.abs2() == Fraction(37, 4)
    assert str(GaussianRational(0, 1)) == "i"
    assert str(GaussianRational(Fraction(1, 2), Fraction(3, 4))) == "1/2+3/4*i"
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


def test_symbols_are_interned_and_paired():
    assert Symbol("psi2") is Symbol("psi2")
    assert Symbol("psi2").conj() is Symbol("psi2_bar")
    assert Symbol("lam", "real").conj() is Symbol("lam", "real")
    with pytest.raises(ValueError):
        Symbol("i")


def test_arithmetic_examples():
    assert (X + 1) + (-X - 1) == Polynomial()
    assert str(LAM * PSI4) == "lam*psi4"
    assert (2 * LAM + PSI2) * PHI11 == 2 * LAM * PHI11 + PSI2 * PHI11
    assert poly_arith(LAM, PSI2, "sub") == LAM - PSI2


def test_conjugation_examples():
    assert LAM.conj() == LAM
    assert str(PSI2.conj()) == "psi2_bar"
    assert ((1 + 2 * GaussianRational(0, 1)) * X).conj() == (1 - 2 * GaussianRational(0, 1)) * X.conj()


def test_substitution_examples():
    lam = Symbol("lam", "real")
    half_psi2 = Polynomial.const(Fraction(-1, 2)) * PSI2
    # Lambda real cannot be bound to a complex value
    with pytest.raises(ConjugationMismatch):
        substitute(2 * LAM + PSI2, {lam: half_psi2})
    assert substitute(2 * LAM + PSI2, {lam: half_psi2}, check=False).is_zero()
    psi2 = Symbol("psi2")
    assert substitute(2 * LAM + PSI2, conj_closure({psi2: -2 * LAM})).is_zero()
    assert substitute(LAM * PSI4, {lam: 0}).is_zero()
    assert substitute(X, {}) == X


def test_substitution_requires_conjugate_partner():
    with pytest.raises(ConjugationMismatch):
        substitute(X, {Symbol("x"): Polynomial.const(1)})
    assert substitute(X + X.conj(), conj_closure({Symbol("x"): GaussianRational(1, 1)})) == Polynomial.const(2)


def test_is_identically_zero():
    assert is_identically_zero(0)
    assert not is_identically_zero(PSI2 * Polynomial.symbol("phi00", "real"))


def _multiply_back(factors):
    out = Polynomial.const(1)
    for f, m in factors:
        out = out * f ** m
    return out


@pytest.mark.parametrize("q, expected", [
    (Z ** 2 * (Z ** 2 + 6), [("z", 2), ("z^2 + 6", 1)]),
    (Z ** 4, [("z", 4)]),
    ((Z ** 2 + 1) ** 2, [("z^2 + 1", 2)]),
    ((Z - 1) ** 3 * (Z + 2), [("z + 2", 1), ("z - 1", 3)]),
])
def test_squarefree_examples(q, expected):
    got = squarefree_decomposition(q)
    assert sorted((str(f), m) for f, m in got) == sorted(expected)
    assert _multiply_back(got) == q.normalized()


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=5),
       st.lists(st.integers(1, 3), min_size=5, max_size=5))
def test_squarefree_multiplies_back(roots, mults):
    q = Polynomial.const(3)
    for (re, im), m in zip(roots, mults):
        q = q * (Z - GaussianRational(re, im)) ** m
    got = squarefree_decomposition(q)
    assert _multiply_back(got) * 3 == q
    # factors are squarefree and pairwise coprime: degrees add up to distinct roots
    assert sum(f.degree() for f, _ in got) == len(set(roots))


def test_squarefree_errors():
    with pytest.raises(SymbolicCoefficient):
        squarefree_decomposition(Z * PSI2)
    with pytest.raises(ValueError):
        squarefree_decomposition(Polynomial())
    assert squarefree_decomposition(Polynomial.const(5)) == []


def test_divexact_rejects_inexact():
    with pytest.raises(NotExactlyDivisible):
        (X ** 2 + 1).divexact(X + 2)


def test_parser():
    assert parse_polynomial("2i*x - (1+i)^2", SYMS) == 2 * GaussianRational(0, 1) * X - GaussianRational(0, 2)
    assert parse_polynomial("x_bar", SYMS) == X.conj()
    assert parse_polynomial("3/4 * lam ** 2", SYMS) == Polynomial.const(Fraction(3, 4)) * LAM ** 2
    with pytest.raises(ParseError):
        parse_polynomial("y + 1", SYMS)
    with pytest.raises(ParseError):
        parse_polynomial("x +", SYMS)
    with pytest.raises(ParseError):
        parse_polynomial("lam_bar", SYMS)
