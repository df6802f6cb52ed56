"""Petrov type by Segre type grid of semi-symmetry properties."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .classify import PetrovType, Segre
from .conditions import Verdicts, predicates
from .curvature import (
    CurvatureSet,
    generic_phi,
    pattern_nonzero,
    real,
    standard_phi,
    standard_weyl,
)
from .scalar_algebra import Polynomial, Symbol

COLUMNS = (PetrovType.I, PetrovType.II, PetrovType.III, PetrovType.D, PetrovType.N, PetrovType.O)
HEADER = "Segre type / Petrov type"

SEMI = "semi-sym"
RICCI_ONLY = "Ric s-s"
CONF_ONLY = "conf s-s"
NEITHER = "-"
ABSENT = "∄"
SEE_ABOVE = "see above"

GOLDEN_NAME = "semisymmetry_table.txt"
GOLDEN_RECORDS = "semisymmetry_table.json"


@dataclass(frozen=True)
class RowSpec:
    """One table row.

    ``lam_cases`` lists the Lambda settings whose common property the cell
    reports: ``"free"`` (Lambda a nonzero real symbol), ``"zero"``,
    ``"phi11"`` (Lambda = Phi11'), or ``"minus_half_psi2"`` (Psi2 = -2 Lambda).
    """

    label: str
    pattern: str
    lam_cases: tuple


ROWS = (
    RowSpec("Λ-term A1[(111,1)] or vacuum", Segre.LAMBDA_TERM.value, ("free", "zero")),
    RowSpec("Λ-term, Λ=-½Ψ2", Segre.LAMBDA_TERM.value, ("minus_half_psi2",)),
    RowSpec("A1[(11)(1,1)], Λ=-½Ψ2", Segre.A1_11_11.value, ("minus_half_psi2",)),
    RowSpec("A1[(11)(1,1)]", Segre.A1_11_11.value, ("zero",)),
    RowSpec("A3[(11,2)], Λ=0", Segre.A3.value, ("zero",)),
    RowSpec("A1[(111),1] perfect fluid, Λ=½Φ00'=Φ11'=½Φ22'",
            Segre.PERFECT_FLUID.value, ("phi11",)),
    RowSpec("A1[1(11,1)] tachyon fluid, Λ=-½Φ00'=Φ11'=-½Φ22'",
            Segre.TACHYON.value, ("phi11",)),
    RowSpec("All other Ricci tensors", "generic", ("free",)),
)


@dataclass
class Cell:
    row: str
    column: str
    label: str
    residuals: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"row": self.row, "column": self.column, "label": self.label,
                "residuals": self.residuals, "witnesses": self.witnesses}


@dataclass
class TableDocument:
    cells: list

    def grid(self) -> list:
        out = []
        for row in ROWS:
            out.append([c.label for c in self.cells if c.row == row.label])
        return out

    def to_text(self) -> str:
        lines = [" | ".join([HEADER] + [str(t) for t in COLUMNS])]
        for row, labels in zip(ROWS, self.grid()):
            lines.append(" | ".join([row.label] + labels))
        return "\n".join(lines) + "\n"

    def to_records(self) -> list:
        return [c.to_dict() for c in self.cells]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), indent=2, ensure_ascii=False) + "\n"


def cell_family(row: RowSpec, column: PetrovType, lam_case: str):
    """``(CurvatureSet, nonzero assumptions)`` for one cell and Lambda setting, or None if absent."""
    weyl, nonzero = standard_weyl(column)
    if row.pattern == "generic":
        ricci = generic_phi()
    else:
        ricci, _ = standard_phi(row.pattern)
    nonzero = list(nonzero) + pattern_nonzero(row.pattern)
    lam = real("lam")
    c = CurvatureSet(weyl, ricci, lam)
    if lam_case == "free":
        if row.pattern == Segre.LAMBDA_TERM.value:
            nonzero.append(lam)
        return c, nonzero
    if lam_case == "zero":
        bindings = {Symbol("lam", "real"): Polynomial()}
    elif lam_case == "phi11":
        bindings = {Symbol("lam", "real"): real("phi11")}
    elif lam_case == "minus_half_psi2":
        if weyl.psi[2].is_zero():
            return None
        psi2 = Symbol("psi2")
        bindings = {psi2: -2 * lam, psi2.conj(): -2 * lam}
        nonzero.append(lam)
    else:
        raise ValueError(f"unknown Lambda case {lam_case!r}")
    c = c.substitute(bindings)
    nonzero = [q.substitute(bindings) for q in nonzero]
    return c, nonzero


def evaluate_cell(row: RowSpec, column: PetrovType) -> tuple:
    """``(conformal holds, ricci holds, [verdicts per Lambda case])`` or None if absent."""
    results = []
    for case in row.lam_cases:
        fam = cell_family(row, column, case)
        if fam is None:
            return None
        c, nonzero = fam
        results.append((case, predicates(c, nonzero)))
    conf = all(v.conformal.holds for _, v in results)
    ricci = all(v.ricci.holds for _, v in results)
    return conf, ricci, results


def _label(conf: bool, ricci: bool) -> str:
    if conf and ricci:
        return SEMI
    if ricci:
        return RICCI_ONLY
    if conf:
        return CONF_ONLY
    return NEITHER


def _residual_strings(results) -> tuple:
    residuals, witnesses = [], []
    for case, v in results:
        semi: Verdicts = v
        for g in semi.semisymmetric.generators:
            s = str(g)
            if s not in residuals:
                residuals.append(s)
        if semi.semisymmetric.witness:
            witnesses.append({"lambda": case, "values": dict(sorted(semi.semisymmetric.witness.items()))})
    return residuals, witnesses


def reproduce_table() -> TableDocument:
    cells = []
    earlier: dict = {}
    for row in ROWS:
        for column in COLUMNS:
            out = evaluate_cell(row, column)
            if out is None:
                cells.append(Cell(row.label, str(column), ABSENT))
                continue
            conf, ricci, results = out
            label = _label(conf, ricci)
            if label == NEITHER and earlier.get((row.pattern, column)) in (SEMI, RICCI_ONLY, CONF_ONLY):
                label = SEE_ABOVE
            elif label != NEITHER:
                earlier.setdefault((row.pattern, column), label)
            residuals, witnesses = _residual_strings(results)
            cells.append(Cell(row.label, str(column), label, residuals, witnesses))
    return TableDocument(cells)


def golden_text() -> str:
    return resources.files("spinorss").joinpath("data").joinpath(GOLDEN_NAME).read_text(encoding="utf-8")


def golden_records() -> list:
    """Frozen machine-readable cells, witnesses included."""
    text = resources.files("spinorss").joinpath("data").joinpath(GOLDEN_RECORDS).read_text(encoding="utf-8")
    return json.loads(text)
