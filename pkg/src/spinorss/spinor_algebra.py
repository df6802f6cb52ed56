"""Dense two-component spinors with polynomial components.

A :class:`GeneralSpinor` has an ordered list of index slots, each unprimed
or primed and lower or upper, and ``2**n`` component polynomials.  The flat
component index treats slot 0 as the most significant bit, so
``s[0, 0, 1, 1]`` is the component printed as ``s[0011]``.

Conventions (Penrose-Rindler):

* ``eps_01 = eps^01 = +1`` for both the unprimed and the primed epsilon.
* Raising and lowering use the see-saw rule
  ``k^A = eps^AB k_B`` and ``k_A = k^B eps_BA``.
* :func:`contract` sums an upper slot against a lower slot.  Because
  variances are explicit there is no sign ambiguity at contraction time:
  ``X_A^B Y_B`` must be written with the upper slot on X.  Moving which
  side carries the upper index flips the sign,
  ``X_A^B Y_B = -X_AB Y^B``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import MixedSlots, PrimednessMismatch, SignatureMismatch, VarianceMismatch
from .scalar_algebra import Polynomial

_ZERO = Polynomial()


@dataclass(frozen=True)
class IndexSlot:
    primed: bool = False
    upper: bool = False

    def conj(self) -> "IndexSlot":
        return IndexSlot(not self.primed, self.upper)

    def flipped(self) -> "IndexSlot":
        return IndexSlot(self.primed, not self.upper)

    def __str__(self):
        return ("^" if self.upper else "_") + ("'" if self.primed else "")


LOWER = IndexSlot(False, False)
UPPER = IndexSlot(False, True)
LOWER_P = IndexSlot(True, False)
UPPER_P = IndexSlot(True, True)


def _flat(idx: Sequence[int]) -> int:
    k = 0
    for b in idx:
        k = (k << 1) | b
    return k


def _indices(n: int):
    return itertools.product((0, 1), repeat=n)


class GeneralSpinor:
    """Immutable dense spinor."""

    __slots__ = ("slots", "comps")

    def __init__(self, slots: Sequence[IndexSlot], comps: Sequence):
        slots = tuple(slots)
        comps = tuple(Polynomial.coerce(c) for c in comps)
        if len(comps) != 1 << len(slots):
            raise ValueError(f"{len(slots)} slots need {1 << len(slots)} components, got {len(comps)}")
        self.slots = slots
        self.comps = comps

    @classmethod
    def zero(cls, slots: Sequence[IndexSlot]) -> "GeneralSpinor":
        return cls(slots, [_ZERO] * (1 << len(slots)))

    @classmethod
    def from_function(cls, slots: Sequence[IndexSlot], fn: Callable) -> "GeneralSpinor":
        slots = tuple(slots)
        return cls(slots, [fn(idx) for idx in _indices(len(slots))])

    @property
    def rank(self) -> int:
        return len(self.slots)

    def __getitem__(self, idx) -> Polynomial:
        if isinstance(idx, int):
            idx = (idx,)
        if len(idx) != len(self.slots):
            raise IndexError(f"expected {len(self.slots)} indices")
        return self.comps[_flat(idx)]

    def items(self):
        return zip(_indices(len(self.slots)), self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def nonzero_components(self) -> list:
        return [(idx, c) for idx, c in self.items() if not c.is_zero()]

    def __eq__(self, other):
        if not isinstance(other, GeneralSpinor):
            return NotImplemented
        return self.slots == other.slots and self.comps == other.comps

    def __hash__(self):
        return hash((self.slots, self.comps))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __repr__(self):
        sig = "".join(str(s) for s in self.slots) or "scalar"
        return f"GeneralSpinor<{sig}>"

    def describe(self, name: str = "S") -> str:
        lines = []
        for idx, c in self.nonzero_components():
            label = "".join(map(str, idx))
            lines.append(f"{name}[{label}] = {c}")
        return "\n".join(lines) if lines else f"{name} = 0"


def epsilon(primed: bool = False, upper: bool = False) -> GeneralSpinor:
    """The antisymmetric spinor metric with ``eps[0,1] = +1``."""
    slot = IndexSlot(primed, upper)
    return GeneralSpinor((slot, slot), [0, 1, -1, 0])


def add(a: GeneralSpinor, b: GeneralSpinor) -> GeneralSpinor:
    if a.slots != b.slots:
        raise SignatureMismatch(f"cannot add {a!r} and {b!r}")
    return GeneralSpinor(a.slots, [x + y for x, y in zip(a.comps, b.comps)])


def scale(s: GeneralSpinor, c) -> GeneralSpinor:
    c = Polynomial.coerce(c)
    return GeneralSpinor(s.slots, [x * c for x in s.comps])


def outer(a: GeneralSpinor, b: GeneralSpinor) -> GeneralSpinor:
    comps = []
    for x in a.comps:
        if x.is_zero():
            comps.extend([_ZERO] * len(b.comps))
        else:
            comps.extend(x * y for y in b.comps)
    return GeneralSpinor(a.slots + b.slots, comps)


def permute(s: GeneralSpinor, order: Sequence[int]) -> GeneralSpinor:
    """New slot ``k`` is old slot ``order[k]``."""
    order = tuple(order)
    if sorted(order) != list(range(s.rank)):
        raise ValueError(f"{order} is not a permutation of the slots")
    slots = [s.slots[o] for o in order]

    def fn(idx):
        old = [0] * s.rank
        for k, o in enumerate(order):
            old[o] = idx[k]
        return s.comps[_flat(old)]

    return GeneralSpinor.from_function(slots, fn)


def raise_index(s: GeneralSpinor, k: int) -> GeneralSpinor:
    """``k^A = eps^AB k_B``: component 0 takes old 1, component 1 takes minus old 0."""
    if s.slots[k].upper:
        raise VarianceMismatch(f"slot {k} is already upper")
    slots = list(s.slots)
    slots[k] = slots[k].flipped()

    def fn(idx):
        old = list(idx)
        old[k] = 1 - idx[k]
        v = s.comps[_flat(old)]
        return v if idx[k] == 0 else -v

    return GeneralSpinor.from_function(slots, fn)


def lower_index(s: GeneralSpinor, k: int) -> GeneralSpinor:
    """``k_A = k^B eps_BA``: component 0 takes minus old 1, component 1 takes old 0."""
    if not s.slots[k].upper:
        raise VarianceMismatch(f"slot {k} is already lower")
    slots = list(s.slots)
    slots[k] = slots[k].flipped()

    def fn(idx):
        old = list(idx)
        old[k] = 1 - idx[k]
        v = s.comps[_flat(old)]
        return -v if idx[k] == 0 else v

    return GeneralSpinor.from_function(slots, fn)


def contract(s: GeneralSpinor, i: int, j: int) -> GeneralSpinor:
    """Trace over slots ``i`` and ``j`` (one upper, one lower, same primedness)."""
    if i == j:
        raise ValueError("cannot contract a slot with itself")
    si, sj = s.slots[i], s.slots[j]
    if si.primed != sj.primed:
        raise PrimednessMismatch(f"slots {i} and {j} differ in primedness")
    if si.upper == sj.upper:
        raise VarianceMismatch(f"slots {i} and {j} have the same variance")
    keep = [k for k in range(s.rank) if k not in (i, j)]
    slots = [s.slots[k] for k in keep]

    def fn(idx):
        total = _ZERO
        for v in (0, 1):
            old = [0] * s.rank
            for k, x in zip(keep, idx):
                old[k] = x
            old[i] = old[j] = v
            total = total + s.comps[_flat(old)]
        return total

    return GeneralSpinor.from_function(slots, fn)


def symmetrize(s: GeneralSpinor, subset: Iterable[int]) -> GeneralSpinor:
    """Average over all permutations of the slots in ``subset``."""
    subset = sorted(set(subset))
    if len(subset) < 2:
        return s
    kinds = {s.slots[k] for k in subset}
    if len(kinds) != 1:
        raise MixedSlots(f"slots {subset} differ in primedness or variance")
    cache: dict = {}

    def fn(idx):
        vals = tuple(idx[k] for k in subset)
        key = (tuple(x for k, x in enumerate(idx) if k not in subset), tuple(sorted(vals)))
        hit = cache.get(key)
        if hit is not None:
            return hit
        arrangements = set(itertools.permutations(vals))
        total = _ZERO
        for arr in arrangements:
            old = list(idx)
            for k, x in zip(subset, arr):
                old[k] = x
            total = total + s.comps[_flat(old)]
        result = total.scale(Fraction(1, len(arrangements))) if len(arrangements) > 1 else total
        cache[key] = result
        return result

    return GeneralSpinor.from_function(s.slots, fn)


def conj_spinor(s: GeneralSpinor) -> GeneralSpinor:
    """Complex conjugate.

    Every slot flips primedness and every component is conjugated.  The
    result is reordered so unprimed slots come first and primed slots
    second, each block keeping its relative order.  This makes
    conjugation an involution with a deterministic signature.
    """
    flipped = [sl.conj() for sl in s.slots]
    conj = GeneralSpinor(flipped, [c.conj() for c in s.comps])
    order = [k for k, sl in enumerate(flipped) if not sl.primed] + \
            [k for k, sl in enumerate(flipped) if sl.primed]
    return permute(conj, order)


def _parse_labels(labels) -> list:
    if not isinstance(labels, str):
        return list(labels)
    out = []
    for ch in labels:
        if ch == "'":
            if not out:
                raise ValueError("a prime must follow an index letter")
            out[-1] += "'"
        elif ch.isspace():
            continue
        else:
            out.append(ch)
    return out


def spinor_expr(out: str, *factors) -> GeneralSpinor:
    """Evaluate a product of spinors written with index labels.

    ``factors`` alternate ``spinor, labels``.  Labels are letters with an
    optional trailing prime; a label repeated across slots is contracted
    (it must be upper in one slot and lower in the other).  ``out`` gives
    the order of the free labels in the result::

        spinor_expr("ABCD", X_up, "ABCE", phi, "DE")   # X_ABC^E Phi_DE

    Primedness of each label must agree with the slots it labels.
    """
    if len(factors) % 2:
        raise ValueError("factors must alternate spinor, labels")
    specs = []
    where: dict = {}
    for f in range(0, len(factors), 2):
        s, labels = factors[f], _parse_labels(factors[f + 1])
        if len(labels) != s.rank:
            raise ValueError(f"{len(labels)} labels for a rank-{s.rank} spinor")
        specs.append((s, labels))
        for pos, lab in enumerate(labels):
            slot = s.slots[pos]
            if slot.primed != lab.endswith("'"):
                raise PrimednessMismatch(f"label {lab} on a slot of the other primedness")
            where.setdefault(lab, []).append(slot)
    out_labels = _parse_labels(out)
    summed = []
    for lab, seen in where.items():
        if len(seen) == 1:
            if lab not in out_labels:
                raise ValueError(f"free label {lab} missing from the output")
        elif len(seen) == 2:
            if seen[0].upper == seen[1].upper:
                raise VarianceMismatch(f"contracted label {lab} needs one upper and one lower slot")
            summed.append(lab)
        else:
            raise ValueError(f"label {lab} used {len(seen)} times")
    if sorted(out_labels) != sorted(l for l, seen in where.items() if len(seen) == 1):
        raise ValueError("output labels must be exactly the free labels")
    out_slots = [where[lab][0] for lab in out_labels]

    def fn(idx):
        total = _ZERO
        assign = dict(zip(out_labels, idx))
        for svals in _indices(len(summed)):
            assign.update(zip(summed, svals))
            term = None
            for s, labels in specs:
                c = s.comps[_flat([assign[l] for l in labels])]
                if c.is_zero():
                    term = None
                    break
                term = c if term is None else term * c
            else:
                if term is None:
                    # every factor was a scalar spinor
                    term = Polynomial.const(1)
            if term is not None:
                total = total + term
        return total

    return GeneralSpinor.from_function(out_slots, fn)


def independent_components(s: GeneralSpinor, groups: Sequence[Sequence[int]]) -> list:
    """One component per orbit of the symmetric ``groups`` of slots.

    Within each group the index values are taken in sorted order, so a
    spinor symmetric in groups of sizes ``k1, k2, ...`` yields
    ``(k1+1)(k2+1)...`` components.  Returns ``[(label, polynomial)]``
    with labels like ``"00,11"`` (one block per group).
    """
    out = []
    ranges = [range(len(g) + 1) for g in groups]
    for counts in itertools.product(*ranges):
        idx = [0] * s.rank
        for g, n in zip(groups, counts):
            for pos, k in enumerate(g):
                idx[k] = 1 if pos >= len(g) - n else 0
        label = ",".join("".join(str(idx[k]) for k in g) for g in groups)
        out.append((label, s[tuple(idx)]))
    return out

