"""Curvature spinors, standard forms, dyad changes and the algebraic box action.

Component conventions: ``Psi_n`` is the Weyl spinor component with ``n``
indices equal to 1, and ``Phi_ab`` is the Ricci spinor component with
``a`` ones among its unprimed pair and ``b`` ones among its primed pair.
As a :class:`GeneralSpinor`, Phi has slots ``(A, B, A', B')``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import HermiticityError, NotUnimodular, UnknownPattern, UpperSlot
from .scalar_algebra import GaussianRational, Polynomial, Symbol
from .spinor_algebra import (
    LOWER,
    LOWER_P,
    GeneralSpinor,
    add,
    conj_spinor,
    epsilon,
    outer,
    permute,
    raise_index,
    scale,
    spinor_expr,
)

_ZERO = Polynomial()


class PetrovType(str, enum.Enum):
    I = "I"
    II = "II"
    D = "D"
    III = "III"
    N = "N"
    O = "O"

    def __str__(self):
        return self.value


def P(x) -> Polynomial:
    return Polynomial.coerce(x)


def real(name: str) -> Polynomial:
    return Polynomial.symbol(Symbol(name, "real"))


def cplx(name: str) -> Polynomial:
    return Polynomial.symbol(Symbol(name, "complex"))


@dataclass(frozen=True)
class WeylSpinor:
    psi: tuple

    def __post_init__(self):
        psi = tuple(P(c) for c in self.psi)
        if len(psi) != 5:
            raise ValueError("the Weyl spinor has 5 components")
        object.__setattr__(self, "psi", psi)

    @classmethod
    def zero(cls) -> "WeylSpinor":
        return cls((0,) * 5)

    def to_spinor(self) -> GeneralSpinor:
        return GeneralSpinor.from_function([LOWER] * 4, lambda idx: self.psi[sum(idx)])

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.psi)

    def conj(self) -> "WeylSpinor":
        return WeylSpinor(tuple(c.conj() for c in self.psi))


@dataclass(frozen=True)
class RicciSpinor:
    """Hermitian 3x3 matrix of components; validated on construction."""

    phi: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(P(c) for c in row) for row in self.phi)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("the Ricci spinor has 3x3 components")
        object.__setattr__(self, "phi", rows)
        if self.check:
            for a in range(3):
                for b in range(3):
                    if rows[a][b] != rows[b][a].conj():
                        raise HermiticityError(
                            f"Phi{a}{b}' = {rows[a][b]} is not the conjugate of Phi{b}{a}' = {rows[b][a]}")

    @classmethod
    def zero(cls) -> "RicciSpinor":
        return cls(((0,) * 3,) * 3)

    def to_spinor(self) -> GeneralSpinor:
        return GeneralSpinor.from_function(
            [LOWER, LOWER, LOWER_P, LOWER_P],
            lambda idx: self.phi[idx[0] + idx[1]][idx[2] + idx[3]])

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.phi for c in row)

    def entries(self) -> list:
        return [c for row in self.phi for c in row]


@dataclass(frozen=True)
class CurvatureSet:
    weyl: WeylSpinor
    ricci: RicciSpinor
    lam: Polynomial

    def __post_init__(self):
        lam = P(self.lam)
        if not lam.is_self_conjugate():
            raise HermiticityError(f"Lambda = {lam} is not real")
        object.__setattr__(self, "lam", lam)

    def symbols(self) -> set:
        out = set(self.lam.symbols())
        for c in self.weyl.psi:
            out |= c.symbols()
        for c in self.ricci.entries():
            out |= c.symbols()
        return out

    def substitute(self, bindings) -> "CurvatureSet":
        return CurvatureSet(
            WeylSpinor(tuple(c.substitute(bindings) for c in self.weyl.psi)),
            RicciSpinor(tuple(tuple(c.substitute(bindings) for c in row) for row in self.ricci.phi)),
            self.lam.substitute(bindings),
        )

    def is_constant(self) -> bool:
        return not self.symbols()


def curvature_set(psi=(0,) * 5, phi=None, lam=0) -> CurvatureSet:
    return CurvatureSet(WeylSpinor(tuple(psi)), RicciSpinor(phi) if phi is not None else RicciSpinor.zero(), P(lam))


# ---------------------------------------------------------------------------
# X spinor and the box action


def build_X(c: CurvatureSet) -> GeneralSpinor:
    """``X_ABCD = Psi_ABCD + Lambda (eps_AC eps_BD + eps_AD eps_BC)``."""
    eps = epsilon()
    ee = outer(eps, eps)  # eps_AB eps_CD, slots A B C D
    # eps_AC eps_BD: slots of ee are (A,C,B,D) -> reorder to (A,B,C,D)
    t1 = permute(ee, (0, 2, 1, 3))
    # eps_AD eps_BC: ee slots (A,D,B,C)
    t2 = permute(ee, (0, 2, 3, 1))
    return add(c.weyl.to_spinor(), scale(add(t1, t2), c.lam))


def build_X_bar(c: CurvatureSet) -> GeneralSpinor:
    return conj_spinor(build_X(c))


_TARGET_LABELS = "CDFGHIJKLMNOPQRSTUVW"


def box_on(c: CurvatureSet, target: GeneralSpinor, kind: str = "unprimed_pair") -> GeneralSpinor:
    """Algebraic action of the curvature commutator on an all-lower spinor.

    ``kind="unprimed_pair"`` gives ``Box_AB T`` using
    ``Box_AB k_C = -X_ABC^E k_E`` and ``Box_AB t_C' = -Phi_ABC'^E' t_E'``
    slot by slot (Leibniz).  ``kind="primed_pair"`` gives ``Box_A'B' T``
    with ``Box_A'B' k_C = -Phi_CE A'B'`` (E raised) and
    ``Box_A'B' t_C' = -Xbar_A'B'C'^E' t_E'``.  The operator pair is
    prepended to the target's slots.
    """
    if any(sl.upper for sl in target.slots):
        raise UpperSlot("box_on needs a target with only lower slots")
    if kind not in ("unprimed_pair", "primed_pair"):
        raise ValueError(f"unknown box kind {kind!r}")
    primed_op = kind == "primed_pair"
    op = ["A'", "B'"] if primed_op else ["A", "B"]
    labels = []
    for k, sl in enumerate(target.slots):
        labels.append(_TARGET_LABELS[k] + ("'" if sl.primed else ""))
    out = op + labels
    op_slot = LOWER_P if primed_op else LOWER
    result = GeneralSpinor.zero([op_slot, op_slot] + list(target.slots))

    x_up = raise_index(build_X(c), 3)                 # X_ABC^E
    xbar_up = raise_index(build_X_bar(c), 3)          # Xbar_A'B'C'^E'
    phi = c.ricci.to_spinor()
    phi_up_primed = raise_index(phi, 3)               # Phi_AB C'^E'
    phi_up_unprimed = raise_index(phi, 1)             # Phi_C^E A'B'

    for k, sl in enumerate(target.slots):
        lab = labels[k]
        dummy = "E'" if sl.primed else "E"
        tlabels = labels[:k] + [dummy] + labels[k + 1:]
        if not primed_op and not sl.primed:
            term = spinor_expr(out, x_up, op + [lab, dummy], target, tlabels)
        elif not primed_op and sl.primed:
            term = spinor_expr(out, phi_up_primed, op + [lab, dummy], target, tlabels)
        elif primed_op and not sl.primed:
            term = spinor_expr(out, phi_up_unprimed, [lab, dummy] + op, target, tlabels)
        else:
            term = spinor_expr(out, xbar_up, op + [lab, dummy], target, tlabels)
        result = add(result, scale(term, -1))
    return result


# ---------------------------------------------------------------------------
# standard forms

PSI_NAMES = ("psi0", "psi1", "psi2", "psi3", "psi4")


def standard_weyl(petrov, names: Sequence[str] = PSI_NAMES):
    """Weyl spinor in a standard frame for the given Petrov type.

    Returns ``(weyl, nonzero)`` where ``nonzero`` lists polynomials assumed
    generically nonzero for the family to have exactly this type.

    Frames: I ``(p0, 0, p2, 0, p0)``; II ``(0, 0, p2, 0, p4)``;
    D ``(0, 0, p2, 0, 0)``; III ``(0, 0, 0, p3, 0)``; N ``(0, 0, 0, 0, p4)``;
    O all zero.  For type I the quartic ``p0 (1 + z^4) + 6 p2 z^2`` has four
    distinct roots exactly when ``p0 != 0`` and ``p0 != +-3 p2``.
    """
    t = PetrovType(petrov)
    s = [cplx(n) for n in names]
    z = _ZERO
    if t is PetrovType.I:
        return WeylSpinor((s[0], z, s[2], z, s[0])), [s[0], s[0] - 3 * s[2], s[0] + 3 * s[2]]
    if t is PetrovType.II:
        return WeylSpinor((z, z, s[2], z, s[4])), [s[2], s[4]]
    if t is PetrovType.D:
        return WeylSpinor((z, z, s[2], z, z)), [s[2]]
    if t is PetrovType.III:
        return WeylSpinor((z, z, z, s[3], z)), [s[3]]
    if t is PetrovType.N:
        return WeylSpinor((z, z, z, z, s[4])), [s[4]]
    return WeylSpinor.zero(), []


class Segre(str, enum.Enum):
    VACUUM = "vacuum"
    LAMBDA_TERM = "A1[(111,1)]"
    A1_11_11 = "A1[(11)(1,1)]"
    A3 = "A3[(11,2)]"
    PERFECT_FLUID = "A1[(111),1]"
    TACHYON = "A1[1(11,1)]"
    OTHER = "other"

    def __str__(self):
        return self.value


PHI_NAMES = {(0, 0): "phi00", (1, 1): "phi11", (2, 2): "phi22",
             (0, 1): "phi01", (0, 2): "phi02", (1, 2): "phi12"}


def generic_phi() -> RicciSpinor:
    """All nine components symbolic: real diagonal, conjugate off-diagonal pairs."""
    m = [[_ZERO] * 3 for _ in range(3)]
    for (a, b), name in PHI_NAMES.items():
        if a == b:
            m[a][a] = real(name)
        else:
            m[a][b] = cplx(name)
            m[b][a] = cplx(name).conj()
    return RicciSpinor(tuple(map(tuple, m)))


def generic_curvature_set() -> CurvatureSet:
    """Every component symbolic: psi0..psi4, the nine Phi components and a real lam."""
    return CurvatureSet(WeylSpinor(tuple(cplx(n) for n in PSI_NAMES)), generic_phi(), real("lam"))


def _diag(d0, d1, d2) -> RicciSpinor:
    return RicciSpinor(((d0, 0, 0), (0, d1, 0), (0, 0, d2)))


def standard_phi(pattern):
    """Ricci spinor in standard form for one of the table's Segre patterns.

    Returns ``(ricci, constraints)``; constraints are ``(component, value)``
    pairs stating the pattern's relations, already applied to ``ricci``.
    ``"generic"`` (or :attr:`Segre.OTHER`) gives all nine components.
    """
    key = str(pattern)
    p11 = real("phi11")
    p22 = real("phi22")
    if key in (Segre.VACUUM.value, Segre.LAMBDA_TERM.value):
        return RicciSpinor.zero(), []
    if key == Segre.A1_11_11.value:
        return _diag(0, p11, 0), []
    if key == Segre.A3.value:
        return _diag(0, 0, p22), []
    if key == Segre.PERFECT_FLUID.value:
        return _diag(2 * p11, p11, 2 * p11), [("Phi00'", 2 * p11), ("Phi22'", 2 * p11)]
    if key == Segre.TACHYON.value:
        return _diag(-2 * p11, p11, -2 * p11), [("Phi00'", -2 * p11), ("Phi22'", -2 * p11)]
    if key in ("generic", Segre.OTHER.value):
        return generic_phi(), []
    raise UnknownPattern(f"no standard form for Segre pattern {pattern!r}")


def pattern_nonzero(pattern) -> list:
    """Symbols a pattern's family takes to be nonzero (so it is not vacuum)."""
    key = str(pattern)
    if key in (Segre.A1_11_11.value, Segre.PERFECT_FLUID.value, Segre.TACHYON.value):
        return [real("phi11")]
    if key == Segre.A3.value:
        return [real("phi22")]
    return []


# ---------------------------------------------------------------------------
# dyad transformations


@dataclass(frozen=True)
class DyadTransform:
    """Unimodular change of spin frame acting on lower unprimed indices."""

    m: tuple

    def __post_init__(self):
        m = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in self.m)
        if len(m) != 2 or any(len(r) != 2 for r in m):
            raise ValueError("a dyad transform is a 2x2 matrix")
        object.__setattr__(self, "m", m)
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1:
            raise NotUnimodular("dyad transform must have determinant 1")

    @classmethod
    def identity(cls) -> "DyadTransform":
        return cls(((1, 0), (0, 1)))

    def compose(self, other: "DyadTransform") -> "DyadTransform":
        """Matrix product ``self @ other`` (apply ``other`` first)."""
        a, b = self.m, other.m
        return DyadTransform(tuple(tuple(sum((a[i][k] * b[k][j] for k in range(2)), GaussianRational(0))
                                         for j in range(2)) for i in range(2)))

    def conj(self) -> "DyadTransform":
        return DyadTransform(tuple(tuple(x.conj() for x in row) for row in self.m))


def _transform_slots(s: GeneralSpinor, t: DyadTransform) -> GeneralSpinor:
    tc = t.conj()
    comps = list(s.comps)
    n = s.rank
    for k, sl in enumerate(s.slots):
        m = tc.m if sl.primed else t.m
        bit = 1 << (n - 1 - k)
        new = [None] * len(comps)
        for flat in range(len(comps)):
            base = flat & ~bit
            a = 1 if flat & bit else 0
            new[flat] = comps[base].scale(m[a][0]) + comps[base | bit].scale(m[a][1])
        comps = new
    return GeneralSpinor(s.slots, comps)


def transform_spinor(s: GeneralSpinor, t: DyadTransform) -> GeneralSpinor:
    """Apply ``t`` to every lower slot (conjugate matrix on primed slots)."""
    if any(sl.upper for sl in s.slots):
        raise UpperSlot("dyad transforms are applied to all-lower spinors")
    return _transform_slots(s, t)


def dyad_transform(c: CurvatureSet, t: DyadTransform) -> CurvatureSet:
    psi = transform_spinor(c.weyl.to_spinor(), t)
    phi = transform_spinor(c.ricci.to_spinor(), t)
    weyl = WeylSpinor(tuple(psi[(0,) * (4 - n) + (1,) * n] for n in range(5)))
    ricci = RicciSpinor(tuple(
        tuple(phi[(0,) * (2 - a) + (1,) * a + (0,) * (2 - b) + (1,) * b] for b in range(3))
        for a in range(3)))
    return CurvatureSet(weyl, ricci, c.lam)
