"""Petrov typing, Segre pattern matching, Phi-kernels and per-case reports."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .conditions import (
    Verdicts,
    close_assumptions,
    cond_mixed,
    cond_ricci_S1,
    cond_ricci_S2,
    predicates,
    reduce_generators,
)
from .curvature import (
    CurvatureSet,
    PetrovType,
    RicciSpinor,
    Segre,
    WeylSpinor,
    real,
)
from .errors import InconsistentInstantiationRank, SymbolicCoefficient
from .linalg import evaluate_matrix, fraction_free_rref, kernel_from_rref, rank
from .scalar_algebra import (
    GaussianRational,
    NotExactlyDivisible,
    Polynomial,
    Symbol,
    squarefree_decomposition_dense,
)

__all__ = [
    "PetrovType",
    "Segre",
    "petrov_type",
    "petrov_partition",
    "segre_pattern",
    "KernelReport",
    "phi_kernel",
    "ClassificationReport",
    "classify_case",
    "random_admissible_point",
]

_PARTITIONS = {
    (1, 1, 1, 1): PetrovType.I,
    (2, 1, 1): PetrovType.II,
    (2, 2): PetrovType.D,
    (3, 1): PetrovType.III,
    (4,): PetrovType.N,
}

_BINOMIAL = (1, 4, 6, 4, 1)


def petrov_partition(w: WeylSpinor) -> tuple:
    """Root multiplicities of ``sum C(4,n) Psi_n z^n``, a dropped degree counting as roots at infinity."""
    if not w.is_constant():
        raise SymbolicCoefficient("petrov_type needs constant Weyl components")
    coeffs = [w.psi[n].constant_value() * _BINOMIAL[n] for n in range(5)]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        return ()
    mults = []
    for factor, m in squarefree_decomposition_dense(coeffs):
        mults.extend([m] * (len(factor) - 1))
    at_infinity = 4 - (len(coeffs) - 1)
    if at_infinity:
        mults.append(at_infinity)
    return tuple(sorted(mults, reverse=True))


def petrov_type(w: WeylSpinor) -> PetrovType:
    part = petrov_partition(w)
    if not part:
        return PetrovType.O
    return _PARTITIONS[part]


def infer_petrov(w: WeylSpinor, hint=None):
    """Petrov type of constant data, the hint for symbolic data, else the standard-form shape."""
    if w.is_constant():
        return petrov_type(w)
    if hint is not None:
        return PetrovType(hint)
    shape = tuple(not c.is_zero() for c in w.psi)
    by_shape = {
        (False, False, True, False, False): PetrovType.D,
        (False, False, False, False, True): PetrovType.N,
        (False, False, False, True, False): PetrovType.III,
        (False, False, True, False, True): PetrovType.II,
    }
    if shape in by_shape:
        return by_shape[shape]
    if w.psi[1].is_zero() and w.psi[3].is_zero() and w.psi[0] == w.psi[4] and not w.psi[0].is_zero():
        return PetrovType.I
    return None


def segre_pattern(r: RicciSpinor, lam) -> Segre:
    """First matching table pattern for Phi in standard form."""
    lam = Polynomial.coerce(lam)
    phi = r.phi
    if r.is_zero():
        return Segre.VACUUM if lam.is_zero() else Segre.LAMBDA_TERM
    if any(not phi[a][b].is_zero() for a in range(3) for b in range(3) if a != b):
        return Segre.OTHER
    d0, d1, d2 = phi[0][0], phi[1][1], phi[2][2]
    if d0.is_zero() and d2.is_zero():
        return Segre.A1_11_11
    if d0.is_zero() and d1.is_zero():
        return Segre.A3
    if not d1.is_zero():
        if d0 == 2 * d1 and d2 == 2 * d1:
            return Segre.PERFECT_FLUID
        if d0 == -2 * d1 and d2 == -2 * d1:
            return Segre.TACHYON
    return Segre.OTHER


# ---------------------------------------------------------------------------
# Phi kernels

_UNKNOWN = {(a, b): Symbol(f"u{a}{b}", "complex") for a in range(3) for b in range(3)}
_ORDER = [(a, b) for a in range(3) for b in range(3)]


def phi_label(a: int, b: int) -> str:
    return f"Phi{a}{b}'"


@dataclass
class KernelReport:
    """Hermitian solution space of a linear-in-Phi condition set.

    ``dimension`` is the real dimension of the Hermitian solutions.  Each
    basis vector maps component labels such as ``"Phi11'"`` to polynomials.
    ``conditions_on_kernel`` maps a residual name to its generators on
    ``Phi = sum_k t_k * basis_k`` (parameters ``k1, k2, ...``).
    """

    which: str
    dimension: int
    basis: list
    conditions_on_kernel: dict
    generic_pivots: list = field(default_factory=list)
    sampled_ranks: list = field(default_factory=list)

    def basis_labels(self) -> list:
        return [sorted(v) for v in self.basis]


def _linear_rows(residual_components: Iterable[Polynomial]) -> list:
    rows = []
    for p in residual_components:
        row = [p.coefficient(_UNKNOWN[ab]) for ab in _ORDER]
        if any(not c.is_zero() for c in row):
            rows.append(row)
    return rows


def _conjugate_row(row: Sequence[Polynomial]) -> list:
    # conj(sum c_ab u_ab) = sum conj(c_ab) u_ba for Hermitian Phi
    out = [Polynomial()] * 9
    for k, (a, b) in enumerate(_ORDER):
        out[_ORDER.index((b, a))] = row[k].conj()
    return out


def _pivot_key(nonzero: Sequence[Polynomial]):
    def key(e: Polynomial):
        if e.is_constant():
            return (0, 0, "")
        stripped = e
        changed = True
        while changed and not stripped.is_constant():
            changed = False
            for q in nonzero:
                try:
                    stripped = stripped.divexact(q)
                    changed = True
                except NotExactlyDivisible:
                    pass
        if stripped.is_constant():
            return (1, len(e), str(e))
        return (2, len(e), str(e))
    return key


def random_admissible_point(symbols, nonzero: Sequence[Polynomial], rng: random.Random,
                            span: int = 9, attempts: int = 500) -> dict:
    """Random exact rational values, conjugation-consistent, with every assumption nonzero."""
    syms = sorted(symbols, key=lambda s: s.key)
    for _ in range(attempts):
        point = {}
        for s in syms:
            if s in point:
                continue
            re = Fraction(rng.randint(-span, span), rng.randint(1, 4))
            if s.is_real:
                point[s] = GaussianRational(re)
            else:
                v = GaussianRational(re, Fraction(rng.randint(-span, span), rng.randint(1, 4)))
                point[s] = v
                point[s.conj()] = v.conj()
        if all(q.evaluate(point) for q in nonzero):
            return point
    raise RuntimeError("could not sample an admissible point")


def _condition_components(w: WeylSpinor, phi, lam, which: str) -> dict:
    c = CurvatureSet(w, phi, lam)
    out = {}
    if which in ("S1", "both"):
        out["RicciS1"] = cond_ricci_S1(c).components
    if which in ("mixed", "both"):
        out["Mixed"] = cond_mixed(c).components
    return out


def phi_kernel(w: WeylSpinor, which: str = "S1", nonzero: Sequence = (),
               samples: int = 3, seed: int = 1) -> KernelReport:
    """Kernel of the linear-in-Phi conditions for a Weyl spinor in standard form.

    Phi is treated as nine complex unknowns.  Adding the conjugate of every
    equation (coefficients conjugated, unknown indices transposed) makes the
    solution space closed under the Hermitian involution, so its complex
    dimension equals the real dimension of the Hermitian solutions.

    Elimination is fraction-free over the polynomial ring in Psi's symbols.
    Pivots are preferred when they are constants or products of the
    assumed-nonzero polynomials; any other pivot is recorded in
    ``generic_pivots``.  The symbolic rank is re-checked at ``samples``
    random admissible instantiations.
    """
    if which not in ("S1", "mixed", "both"):
        raise ValueError(f"unknown condition set {which!r}")
    nonzero = close_assumptions(nonzero)
    unknown_phi = RicciSpinor(tuple(tuple(Polynomial.symbol(_UNKNOWN[(a, b)]) for b in range(3))
                                    for a in range(3)), check=False)
    comps = _condition_components(w, unknown_phi, Polynomial(), which)
    rows = []
    for polys in comps.values():
        rows.extend(_linear_rows(polys))
    rows = rows + [_conjugate_row(r) for r in rows]

    reduced, pivots, det = fraction_free_rref(rows, _pivot_key(nonzero))
    key = _pivot_key(nonzero)
    generic = [str(reduced[r][c]) for r, c in pivots if key(reduced[r][c])[0] == 2]
    symbolic_rank = len(pivots)

    rng = random.Random(seed)
    symbols = set()
    for r in rows:
        for e in r:
            symbols |= e.symbols()
    for q in nonzero:
        symbols |= q.symbols()
    sampled = []
    for _ in range(samples):
        point = random_admissible_point(symbols, nonzero, rng)
        sampled.append(rank(evaluate_matrix(rows, point)) if rows else 0)
    if any(s != symbolic_rank for s in sampled):
        raise InconsistentInstantiationRank(
            f"symbolic rank {symbolic_rank} but sampled ranks {sampled}")

    vectors = kernel_from_rref(reduced, pivots, det, 9) if rows else \
        [[Polynomial.const(1 if j == k else 0) for j in range(9)] for k in range(9)]
    basis = []
    for v in vectors:
        lead = next(e for e in v if not e.is_zero())
        try:
            v = [e.divexact(lead) for e in v]
        except NotExactlyDivisible:
            pass
        basis.append({phi_label(*_ORDER[k]): e for k, e in enumerate(v) if not e.is_zero()})

    conditions = _kernel_conditions(w, vectors, which, nonzero)
    return KernelReport(which, len(vectors), basis, conditions, generic, sampled)


def _is_hermitian(v: Sequence[Polynomial]) -> bool:
    for k, (a, b) in enumerate(_ORDER):
        if v[_ORDER.index((b, a))] != v[k].conj():
            return False
    return True


def _kernel_conditions(w: WeylSpinor, vectors, which: str, nonzero) -> dict:
    if not vectors:
        return {}
    matrix = [[Polynomial()] * 3 for _ in range(3)]
    hermitian = True
    for k, v in enumerate(vectors, start=1):
        lead = next(e for e in v if not e.is_zero())
        try:
            v = [e.divexact(lead) for e in v]
        except NotExactlyDivisible:
            pass
        if _is_hermitian(v):
            t = real(f"k{k}")
        else:
            hermitian = False
            t = Polynomial.symbol(Symbol(f"k{k}", "complex"))
        for j, (a, b) in enumerate(_ORDER):
            matrix[a][b] = matrix[a][b] + v[j] * t
    phi = RicciSpinor(tuple(map(tuple, matrix)), check=hermitian)
    c = CurvatureSet(w, phi, real("lam"))
    out = {"RicciS2": reduce_generators(cond_ricci_S2(c).components, nonzero)}
    if which == "S1":
        out["Mixed"] = reduce_generators(cond_mixed(c).components, nonzero)
    elif which == "mixed":
        out["RicciS1"] = reduce_generators(cond_ricci_S1(c).components, nonzero)
    return out


# ---------------------------------------------------------------------------
# case classification


@dataclass
class ClassificationReport:
    petrov: PetrovType | None
    segre: Segre
    verdicts: Verdicts
    residuals: list

    @property
    def conformally_semisymmetric(self) -> bool:
        return self.verdicts.conformal.holds

    @property
    def ricci_semisymmetric(self) -> bool:
        return self.verdicts.ricci.holds

    @property
    def semisymmetric(self) -> bool:
        return self.verdicts.semisymmetric.holds

    def to_dict(self) -> dict:
        def verdict(v):
            return {"status": v.status, "holds": v.holds,
                    "generators": [str(g) for g in v.generators],
                    "witness": dict(sorted(v.witness.items())),
                    "failing_conditions": list(v.failing)}

        return {
            "petrov": str(self.petrov) if self.petrov is not None else None,
            "segre": str(self.segre),
            "conformally_semisymmetric": verdict(self.verdicts.conformal),
            "ricci_semisymmetric": verdict(self.verdicts.ricci),
            "semisymmetric": verdict(self.verdicts.semisymmetric),
            "residuals": list(self.residuals),
        }

    def to_text(self) -> str:
        lines = [
            f"Petrov type:   {self.petrov if self.petrov is not None else 'undetermined'}",
            f"Segre pattern: {self.segre}",
            f"conformally semi-symmetric: {self.verdicts.conformal.describe()}",
            f"Ricci semi-symmetric:       {self.verdicts.ricci.describe()}",
            f"semi-symmetric:             {self.verdicts.semisymmetric.describe()}",
        ]
        if self.residuals:
            lines.append("residual generators:")
            lines.extend(f"  {r}" for r in self.residuals)
        return "\n".join(lines)


def classify_case(c: CurvatureSet, assumptions: Iterable = (), petrov_hint=None) -> ClassificationReport:
    assumptions = list(assumptions)
    petrov = infer_petrov(c.weyl, petrov_hint)
    segre = segre_pattern(c.ricci, c.lam)
    verdicts = predicates(c, assumptions)
    residuals = [str(g) for g in verdicts.semisymmetric.generators]
    return ClassificationReport(petrov, segre, verdicts, residuals)
