"""Semi-symmetry condition spinors and exact checks of their algebraic relations.

The residuals, with index order as stored:

==================  ==========================================================  =======
name                expression                                                  slots
==================  ==========================================================  =======
``WeylFull``        ``X_AB(C^G Psi_DEF)G``                                      ABCDEF
``Mixed``           ``Phi_A'B'(C^G Psi_DEF)G``                                  CDEFA'B'
``WeylContracted``  ``Psi^GH_(AD Psi_EF)GH - 2 Lambda Psi_ADEF``                ADEF
``RicciFull``       ``-2 X_AB(C^E Phi_D)EC'D' - 2 Phi_AB(C'^E' Phi_D')E'CD``    ABCDC'D'
``RicciS1``         ``Psi_(ABC^E Phi_D)EC'D'``                                  ABCDC'D'
``RicciS2``         ``4 Lambda Phi_ACC'D' - Psi^EF_AC Phi_EFC'D'``
                    ``- 2 Phi^E_A^F'_(C' Phi_D')F'CE``                          ACC'D'
==================  ==========================================================  =======

Conformal semi-symmetry is ``Mixed = 0`` and ``WeylContracted = 0``; Ricci
semi-symmetry is ``RicciS1 = 0`` and ``RicciS2 = 0``.  ``RicciFull`` is the
box action on Phi; its vanishing is equivalent to the S1/S2 pair, which
:func:`verify_ricci_decomposition` confirms.

Frozen relations found by :func:`identity_suite`:

* ``WeylContracted = 4/3 * (WeylFull contracted over its 2nd and 3rd slots)``
  where the 2nd slot is raised before contracting.
* ``RicciS2 = (RicciFull with its 2nd slot raised and contracted against
  the 4th, symmetrized over the remaining unprimed pair)``, i.e. RicciS2 is
  exactly ``Box_(A^F Phi_C)FC'D'``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .curvature import CurvatureSet, build_X, build_X_bar, box_on
from .linalg import evaluation_rank, span_rank
from .scalar_algebra import GaussianRational, NotExactlyDivisible, Polynomial
from .spinor_algebra import (
    GeneralSpinor,
    conj_spinor,
    contract,
    independent_components,
    raise_index,
    scale,
    spinor_expr,
    symmetrize,
)

# symmetric slot groups of each residual, used to list independent components
GROUPS = {
    "WeylFull": ((0, 1), (2, 3, 4, 5)),
    "Mixed": ((0, 1, 2, 3), (4, 5)),
    "WeylContracted": ((0, 1, 2, 3),),
    "RicciFull": ((0, 1), (2, 3), (4, 5)),
    "RicciS1": ((0, 1, 2, 3), (4, 5)),
    "RicciS2": ((0, 1), (2, 3)),
}

WEYL_CONTRACTION_FACTOR = Fraction(4, 3)
RICCI_TRACE_FACTOR = Fraction(1)


@dataclass(frozen=True)
class ConditionResidual:
    name: str
    spinor: GeneralSpinor
    components: tuple = field(repr=False)
    labels: tuple = field(repr=False)

    @classmethod
    def build(cls, name: str, spinor: GeneralSpinor) -> "ConditionResidual":
        comps = independent_components(spinor, GROUPS[name])
        return cls(name, spinor, tuple(c for _, c in comps), tuple(l for l, _ in comps))

    @property
    def vanishes(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def nonzero(self) -> list:
        return [(l, c) for l, c in zip(self.labels, self.components) if not c.is_zero()]


def _parts(c: CurvatureSet):
    return c.weyl.to_spinor(), c.ricci.to_spinor()


def weyl_full_spinor(c: CurvatureSet) -> GeneralSpinor:
    psi, _ = _parts(c)
    x_up = raise_index(build_X(c), 3)
    t = spinor_expr("ABCDEF", x_up, "ABCG", psi, "DEFG")
    return symmetrize(t, (2, 3, 4, 5))


def cond_weyl_full(c: CurvatureSet) -> ConditionResidual:
    return ConditionResidual.build("WeylFull", weyl_full_spinor(c))


def cond_mixed(c: CurvatureSet) -> ConditionResidual:
    psi, phi = _parts(c)
    phi_up = raise_index(phi, 1)  # Phi_C^G A'B'
    t = spinor_expr("CDEFA'B'", phi_up, "CGA'B'", psi, "DEFG")
    return ConditionResidual.build("Mixed", symmetrize(t, (0, 1, 2, 3)))


def weyl_contracted_spinor(c: CurvatureSet) -> GeneralSpinor:
    psi, _ = _parts(c)
    psi_uu = raise_index(raise_index(psi, 0), 1)
    t = symmetrize(spinor_expr("ADEF", psi_uu, "GHAD", psi, "EFGH"), (0, 1, 2, 3))
    return t - scale(psi, 2 * c.lam)


def cond_weyl_contracted(c: CurvatureSet) -> ConditionResidual:
    return ConditionResidual.build("WeylContracted", weyl_contracted_spinor(c))


def ricci_full_spinor(c: CurvatureSet) -> GeneralSpinor:
    _, phi = _parts(c)
    x_up = raise_index(build_X(c), 3)
    phi_up = raise_index(phi, 3)  # Phi_AB C'^E'
    out = "ABCDC'D'"
    t1 = symmetrize(spinor_expr(out, x_up, "ABCE", phi, "DEC'D'"), (2, 3))
    t2 = symmetrize(spinor_expr(out, phi_up, "ABC'E'", phi, "CDD'E'"), (4, 5))
    return scale(t1 + t2, -2)


def ricci_full_primed_spinor(c: CurvatureSet) -> GeneralSpinor:
    """Right-hand side of the primed commutator, slots ``C D A' B' C' D'``."""
    _, phi = _parts(c)
    xbar_up = raise_index(build_X_bar(c), 3)
    phi_up = raise_index(phi, 1)  # Phi_C^E A'B'
    out = "CDA'B'C'D'"
    t1 = symmetrize(spinor_expr(out, xbar_up, "A'B'C'E'", phi, "CDD'E'"), (4, 5))
    t2 = symmetrize(spinor_expr(out, phi_up, "CEA'B'", phi, "DEC'D'"), (0, 1))
    return scale(t1 + t2, -2)


def cond_ricci_full(c: CurvatureSet) -> ConditionResidual:
    return ConditionResidual.build("RicciFull", ricci_full_spinor(c))


def ricci_s1_spinor(c: CurvatureSet, use_x: bool = False) -> GeneralSpinor:
    psi, phi = _parts(c)
    base = build_X(c) if use_x else psi
    up = raise_index(base, 3)
    t = spinor_expr("ABCDC'D'", up, "ABCE", phi, "DEC'D'")
    return symmetrize(t, (0, 1, 2, 3))


def cond_ricci_S1(c: CurvatureSet) -> ConditionResidual:
    return ConditionResidual.build("RicciS1", ricci_s1_spinor(c))


def ricci_s2_spinor(c: CurvatureSet) -> GeneralSpinor:
    psi, phi = _parts(c)
    psi_uu = raise_index(raise_index(psi, 0), 1)
    phi_uu = raise_index(raise_index(phi, 0), 2)  # Phi^E_A^F'_C'
    out = "ACC'D'"
    t_psi = spinor_expr(out, psi_uu, "EFAC", phi, "EFC'D'")
    t_phi = symmetrize(spinor_expr(out, phi_uu, "EAF'C'", phi, "CED'F'"), (2, 3))
    return scale(phi, 4 * c.lam) - t_psi - scale(t_phi, 2)


def cond_ricci_S2(c: CurvatureSet) -> ConditionResidual:
    return ConditionResidual.build("RicciS2", ricci_s2_spinor(c))


# ---------------------------------------------------------------------------
# identity suite


@dataclass
class IdentityResult:
    name: str
    passed: bool
    detail: str = ""


def _first_difference(a: GeneralSpinor, b: GeneralSpinor) -> str:
    if a.slots != b.slots:
        return f"slot signatures differ: {a!r} vs {b!r}"
    for idx, x in a.items():
        y = b[idx]
        if x != y:
            label = "".join(map(str, idx))
            return f"component [{label}]: {x}  !=  {y}"
    return ""


def _proportional(a: GeneralSpinor, b: GeneralSpinor, factor) -> str:
    return _first_difference(a, scale(b, factor))


def ricci_trace_spinor(c: CurvatureSet) -> GeneralSpinor:
    """``Box^AB Phi_ABC'D'`` from the box action: raise A, B and contract with C, D."""
    t = ricci_full_spinor(c)
    t = raise_index(raise_index(t, 0), 1)
    t = contract(t, 0, 2)          # slots B^ D C' D'
    return contract(t, 0, 1)


def ricci_partial_trace_spinor(c: CurvatureSet) -> GeneralSpinor:
    """``Box_(A^F Phi_C)F C'D'``: raise the 2nd box slot, contract with the 2nd Phi slot."""
    t = raise_index(ricci_full_spinor(c), 1)
    t = contract(t, 1, 3)          # slots A C C' D'
    return symmetrize(t, (0, 1))


def weyl_full_contraction(c: CurvatureSet) -> GeneralSpinor:
    t = raise_index(weyl_full_spinor(c), 1)
    return contract(t, 1, 2)       # slots A D E F


def identity_suite(c: CurvatureSet) -> list:
    """The commutator identities, checked as exact polynomial identities."""
    results = []
    t7 = ricci_full_spinor(c)
    boxed = box_on(c, c.ricci.to_spinor())
    d = _first_difference(t7, boxed)
    results.append(IdentityResult("RicciFull equals the box action on Phi", not d, d))

    tr = ricci_trace_spinor(c)
    bad = tr.nonzero_components()
    results.append(IdentityResult(
        "trace Box^AB Phi_ABC'D' vanishes", not bad,
        "" if not bad else f"component [{''.join(map(str, bad[0][0]))}] = {bad[0][1]}"))

    d = _first_difference(conj_spinor(t7), ricci_full_primed_spinor(c))
    results.append(IdentityResult("primed commutator is the conjugate of RicciFull", not d, d))

    d = _proportional(weyl_contracted_spinor(c), weyl_full_contraction(c), WEYL_CONTRACTION_FACTOR)
    results.append(IdentityResult(
        f"WeylContracted = {WEYL_CONTRACTION_FACTOR} x BC-contraction of WeylFull", not d, d))

    d = _first_difference(ricci_s1_spinor(c, use_x=True), ricci_s1_spinor(c))
    results.append(IdentityResult("S1 built from X equals S1 built from Psi", not d, d))
    return results


def proportionality_factor(a: GeneralSpinor, b: GeneralSpinor):
    """The constant ``f`` with ``a == f * b``, or None if there is none."""
    factor = None
    for x, y in zip(a.comps, b.comps):
        if y.is_zero():
            if not x.is_zero():
                return None
            continue
        (m, cy) = y.leading_term()
        cx = x.terms.get(m)
        if cx is None:
            return None
        f = cx / cy
        if factor is None:
            factor = f
        elif f != factor:
            return None
    if factor is None or _first_difference(a, scale(b, factor)):
        return None
    return factor


# ---------------------------------------------------------------------------
# rank claims


@dataclass
class RankReport:
    name: str
    ranks: dict
    passes: bool
    sampled: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def _random_point(symbols, rng: random.Random) -> dict:
    point = {}
    for s in sorted(symbols, key=lambda s: s.key):
        if s in point:
            continue
        if s.is_real:
            point[s] = GaussianRational(rng.randint(-999, 999))
        else:
            v = GaussianRational(rng.randint(-999, 999), rng.randint(-999, 999))
            point[s] = v
            point[s.conj()] = v.conj()
    return point


def _sampled_ranks(sets: dict, trials: int, seed: int) -> list:
    """Ranks of each polynomial set from evaluations at random rational points."""
    rng = random.Random(seed)
    symbols = set()
    for polys in sets.values():
        for p in polys:
            symbols |= p.symbols()
    out = []
    for _ in range(trials):
        npts = max(len(p) for p in sets.values()) + 3
        points = [_random_point(symbols, rng) for _ in range(npts)]
        out.append({k: evaluation_rank(list(v), points) for k, v in sets.items()})
    return out


def verify_weyl_reduction(c: CurvatureSet, trials: int = 3, seed: int = 4) -> RankReport:
    """Rank of WeylFull's 15 components versus WeylContracted's 5."""
    w4 = cond_weyl_full(c).components
    w6 = cond_weyl_contracted(c).components
    sets = {"WeylFull": w4, "WeylContracted": w6, "union": w4 + w6}
    ranks = {k: span_rank(v) for k, v in sets.items()}
    sampled = _sampled_ranks(sets, trials, seed)
    consistent = all(s == ranks for s in sampled)
    r = ranks["WeylFull"]
    passes = consistent and r == ranks["WeylContracted"] == ranks["union"]
    notes = [f"{len(w4)} component slots in WeylFull, {len(w6)} in WeylContracted"]
    if not consistent:
        notes.append("sampled ranks disagree with the symbolic ranks")
    return RankReport("WeylFull reduces to WeylContracted", ranks, passes, sampled, notes)


def verify_ricci_decomposition(c: CurvatureSet, trials: int = 3, seed: int = 7) -> RankReport:
    """Span of RicciFull equals the span of S1 together with S2, and the trace vanishes."""
    r7 = cond_ricci_full(c).components
    s1 = cond_ricci_S1(c).components
    s2 = cond_ricci_S2(c).components
    sets = {"RicciFull": r7, "RicciS1": s1, "RicciS2": s2,
            "S1+S2": s1 + s2, "union": r7 + s1 + s2}
    ranks = {k: span_rank(v) for k, v in sets.items()}
    sampled = _sampled_ranks(sets, trials, seed)
    consistent = all(s == ranks for s in sampled)
    trace_zero = ricci_trace_spinor(c).is_zero()
    passes = (consistent and trace_zero
              and ranks["RicciFull"] == ranks["S1+S2"] == ranks["union"])
    notes = [f"{len(r7)} component slots in RicciFull, {len(s1)} in S1, {len(s2)} in S2",
             "trace identically zero" if trace_zero else "trace does not vanish"]
    if not consistent:
        notes.append("sampled ranks disagree with the symbolic ranks")
    return RankReport("RicciFull splits into S1 and S2", ranks, passes, sampled, notes)


# ---------------------------------------------------------------------------
# verdicts

HOLDS = "holds identically"
FAILS = "fails generically"
CONDITIONAL = "holds iff"


@dataclass
class Verdict:
    """Outcome of one semi-symmetry property on a curvature family.

    ``status`` is :data:`HOLDS` when every residual vanishes identically.
    Otherwise ``generators`` are the nonzero residual components with the
    assumed-nonzero factors divided out, and ``witness`` is an admissible
    exact instantiation at which some generator is nonzero.  The status is
    :data:`FAILS` when :func:`inconsistent` shows that no admissible member
    qualifies, and :data:`CONDITIONAL` otherwise: the property holds
    exactly on the members where all generators vanish.
    """

    status: str
    generators: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)
    failing: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def describe(self) -> str:
        if self.holds:
            return HOLDS
        gens = ", ".join(f"{g} = 0" for g in self.generators)
        wit = ", ".join(f"{k}={v}" for k, v in sorted(self.witness.items()))
        head = FAILS if self.status == FAILS else f"{CONDITIONAL} {{{gens}}}"
        tail = f" (witness: {wit})" if wit else ""
        if self.status == FAILS:
            return f"{head}: some residual is nonzero on every admissible member{tail}"
        return f"{head}; fails generically{tail}"


def strip_factors(p: Polynomial, nonzero: Sequence[Polynomial]) -> Polynomial:
    """Divide out every factor of ``p`` that is a power of an assumed-nonzero polynomial."""
    changed = True
    while changed and not p.is_constant():
        changed = False
        for q in nonzero:
            if q.is_constant():
                continue
            try:
                p = p.divexact(q)
                changed = True
            except NotExactlyDivisible:
                pass
    return p.normalized()


def close_assumptions(nonzero: Iterable[Polynomial]) -> list:
    out = []
    for q in nonzero:
        q = Polynomial.coerce(q)
        for v in (q, q.conj()):
            if v not in out and not v.is_zero():
                out.append(v)
    return out


def reduce_generators(polys: Iterable[Polynomial], nonzero: Sequence[Polynomial]) -> list:
    out = []
    for p in polys:
        if p.is_zero():
            continue
        g = strip_factors(p, nonzero)
        if g not in out:
            out.append(g)
    out.sort(key=lambda g: (len(g), str(g)))
    return out


def find_witness(symbols, nonzero: Sequence[Polynomial], residual: Sequence[Polynomial],
                 seed: int = 20110101, attempts: int = 200) -> dict:
    """Small exact instantiation with every assumption nonzero and some residual nonzero."""
    rng = random.Random(seed)
    syms = sorted(symbols, key=lambda s: s.key)
    for attempt in range(attempts):
        span = 3 + attempt // 20
        point = {}
        for s in syms:
            if s in point:
                continue
            if s.is_real:
                point[s] = GaussianRational(rng.randint(-span, span))
            else:
                v = GaussianRational(rng.randint(-span, span), rng.randint(-span, span))
                point[s] = v
                point[s.conj()] = v.conj()
        if any(not q.evaluate(point) for q in nonzero):
            continue
        if any(p.evaluate(point) for p in residual):
            return point
    raise RuntimeError("no witness instantiation found")


def _solve_linear(g: Polynomial):
    """Bindings solving ``g = 0`` for a symbol it contains linearly with a constant coefficient."""
    for s in sorted(g.symbols(), key=lambda s: s.key):
        if g.degree(s) != 1:
            continue
        a = g.coefficient(s, 1)
        if not a.is_constant():
            continue
        rest = g - a * Polynomial.symbol(s)
        if s in rest.symbols() or s.conj() in rest.symbols():
            continue
        value = rest * (-a.constant_value().inverse())
        if s.is_real:
            if value.is_self_conjugate():
                return {s: value}
            continue
        return {s: value, s.conj(): value.conj()}
    return None


def inconsistent(gens: Sequence[Polynomial], nonzero: Sequence[Polynomial]) -> bool:
    """True when ``gens = 0`` has no solution with every ``nonzero`` polynomial nonzero.

    Sound but incomplete: generators solvable for one symbol are eliminated
    one at a time, and the system is rejected once a generator reduces to a
    nonzero constant (after dividing out assumed-nonzero factors) or an
    assumption becomes identically zero.
    """
    gens = [strip_factors(g, nonzero) for g in gens if not g.is_zero()]
    if any(g.is_constant() for g in gens) or any(q.is_zero() for q in nonzero):
        return True
    for g in sorted(gens, key=lambda g: (len(g), str(g))):
        bindings = _solve_linear(g)
        if bindings is None:
            continue
        rest = [h.substitute(bindings, check=False) for h in gens if h is not g]
        return inconsistent(rest, [q.substitute(bindings, check=False) for q in nonzero])
    return False


def _verdict(residuals: Sequence[ConditionResidual], nonzero: Sequence[Polynomial],
             symbols) -> Verdict:
    comps = []
    failing = []
    for r in residuals:
        nz = [c for _, c in r.nonzero()]
        if nz:
            failing.append(r.name)
            comps.extend(nz)
    if not comps:
        return Verdict(HOLDS)
    gens = reduce_generators(comps, nonzero)
    status = FAILS if inconsistent(gens, nonzero) else CONDITIONAL
    relevant = set(symbols)
    for p in comps:
        relevant |= p.symbols()
    for q in nonzero:
        relevant |= q.symbols()
    point = find_witness(relevant, nonzero, comps)
    witness = {s.name: str(v) for s, v in point.items() if not s.is_conjugate}
    return Verdict(status, gens, witness, failing)


@dataclass
class Verdicts:
    conformal: Verdict
    ricci: Verdict
    semisymmetric: Verdict
    residuals: dict = field(default_factory=dict, repr=False)

    def __iter__(self):
        return iter((self.conformal, self.ricci, self.semisymmetric))


def predicates(c: CurvatureSet, assumptions: Iterable = ()) -> Verdicts:
    """Conformal, Ricci and full semi-symmetry verdicts for a curvature family."""
    nonzero = close_assumptions(assumptions)
    res = {
        "Mixed": cond_mixed(c),
        "WeylContracted": cond_weyl_contracted(c),
        "RicciS1": cond_ricci_S1(c),
        "RicciS2": cond_ricci_S2(c),
    }
    symbols = c.symbols()
    conformal = _verdict([res["Mixed"], res["WeylContracted"]], nonzero, symbols)
    ricci = _verdict([res["RicciS1"], res["RicciS2"]], nonzero, symbols)
    semi = _verdict(list(res.values()), nonzero, symbols)
    return Verdicts(conformal, ricci, semi, res)
