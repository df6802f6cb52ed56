"""Command-line front end: ``spinorss classify | verify-identities | table | kernel``."""
from __future__ import annotations

import argparse
import difflib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .classify import PetrovType, classify_case, phi_kernel
from .conditions import identity_suite, verify_ricci_decomposition, verify_weyl_reduction
from .curvature import CurvatureSet, RicciSpinor, WeylSpinor, generic_curvature_set, standard_weyl
from .errors import ConjugationMismatch, HermiticityError, ParseError, SpinorError
from .scalar_algebra import Polynomial, Symbol, parse_polynomial
from .table import golden_text, reproduce_table

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2

_FIELDS = {"lambda", "psi", "phi", "symbols", "assume_nonzero", "petrov_hint"}


@dataclass
class ParsedInput:
    curvature: CurvatureSet
    assumptions: list = field(default_factory=list)
    petrov_hint: str | None = None
    symbols: list = field(default_factory=list)


def _declare(entries) -> dict:
    table: dict = {}
    if not isinstance(entries, list):
        raise ParseError("'symbols' must be a list of {name, kind}")
    for entry in entries:
        if not isinstance(entry, dict) or "name" not in entry:
            raise ParseError(f"bad symbol declaration {entry!r}")
        name, kind = entry["name"], entry.get("kind", "complex")
        if kind not in ("real", "complex"):
            raise ParseError(f"symbol {name!r}: kind must be 'real' or 'complex'")
        if isinstance(name, str) and name.endswith("_bar"):
            raise ConjugationMismatch(f"declare {name[:-4]!r}; {name!r} is its conjugate")
        if name in table:
            raise ParseError(f"symbol {name!r} declared twice")
        try:
            table[name] = Symbol(name, kind)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    return table


def _scalar(value, table: dict, where: str) -> Polynomial:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"{where}: expected a scalar string, got {value!r}")
    try:
        return parse_polynomial(str(value), table)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def parse_input(text) -> ParsedInput:
    """Build a curvature set and its assumptions from a JSON input document.

    The upper triangle of ``phi`` (diagonal included) is authoritative; the
    lower triangle may be omitted (``null``) and is otherwise checked to be
    the conjugate of the upper one.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("input must be a JSON object")
    unknown = set(doc) - _FIELDS
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    table = _declare(doc.get("symbols", []))

    lam = _scalar(doc.get("lambda", "0"), table, "lambda")
    psi = doc.get("psi", ["0"] * 5)
    if not isinstance(psi, list) or len(psi) != 5:
        raise ParseError("'psi' must be a list of 5 scalars")
    weyl = WeylSpinor(tuple(_scalar(v, table, f"psi[{n}]") for n, v in enumerate(psi)))

    raw = doc.get("phi", [["0"] * 3 for _ in range(3)])
    if not isinstance(raw, list) or len(raw) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in raw):
        raise ParseError("'phi' must be a 3x3 list of scalars")
    m = [[Polynomial()] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(a, 3):
            m[a][b] = _scalar(raw[a][b], table, f"phi[{a}][{b}]")
            m[b][a] = m[a][b].conj()
    for a in range(3):
        for b in range(a):
            if raw[a][b] is None:
                continue
            given = _scalar(raw[a][b], table, f"phi[{a}][{b}]")
            if given != m[a][b]:
                raise HermiticityError(
                    f"phi[{a}][{b}] = {given} is not the conjugate of phi[{b}][{a}] = {m[b][a]}")
    ricci = RicciSpinor(tuple(map(tuple, m)))
    curvature = CurvatureSet(weyl, ricci, lam)

    assumptions = [_scalar(v, table, "assume_nonzero") for v in doc.get("assume_nonzero", [])]
    hint = doc.get("petrov_hint")
    if hint is not None:
        try:
            hint = PetrovType(hint).value
        except ValueError as exc:
            raise ParseError(f"unknown petrov_hint {hint!r}") from exc
    return ParsedInput(curvature, assumptions, hint, list(table.values()))


def format_input(parsed: ParsedInput) -> str:
    """Serialize back to the input schema; ``parse_input`` of the result rebuilds the same set."""
    c = parsed.curvature
    declared = {s.name: s for s in parsed.symbols}
    for s in c.symbols():
        base = s.conj() if s.is_conjugate else s
        declared.setdefault(base.name, base)
    doc = {
        "lambda": str(c.lam),
        "psi": [str(p) for p in c.weyl.psi],
        "phi": [[str(c.ricci.phi[a][b]) for b in range(3)] for a in range(3)],
        "symbols": [{"name": s.name, "kind": s.kind} for s in sorted(declared.values(), key=lambda s: s.key)],
        "assume_nonzero": [str(q) for q in parsed.assumptions],
    }
    if parsed.petrov_hint is not None:
        doc["petrov_hint"] = parsed.petrov_hint
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    parsed = parse_input(Path(args.file).read_bytes())
    report = classify_case(parsed.curvature, parsed.assumptions, parsed.petrov_hint)
    if args.machine:
        out = report.to_dict()
        out["input"] = json.loads(format_input(parsed))
        print(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        print(report.to_text())
    return EXIT_OK


def cmd_verify_identities(args) -> int:
    c = generic_curvature_set()
    results = identity_suite(c)
    ok = True
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}")
        if not r.passed:
            print(f"      first difference: {r.detail}")
        ok &= r.passed
    print(f"{sum(r.passed for r in results)}/{len(results)} identities pass")
    for rep in (verify_weyl_reduction(c), verify_ricci_decomposition(c)):
        ranks = ", ".join(f"{k}={v}" for k, v in rep.ranks.items())
        print(f"{'PASS' if rep.passes else 'FAIL'}  {rep.name}: {ranks}")
        ok &= rep.passes
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_table(args) -> int:
    doc = reproduce_table()
    text = doc.to_text()
    print(doc.to_json() if args.machine else text, end="")
    if args.golden is None:
        return EXIT_OK
    if args.golden == "-":
        expected = golden_text()
    else:
        try:
            expected = Path(args.golden).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read golden file: {exc}") from exc
    if text == expected:
        print("golden: match", file=sys.stderr)
        return EXIT_OK
    diff = difflib.unified_diff(expected.splitlines(), text.splitlines(), "golden", "computed", lineterm="")
    print("\n".join(diff), file=sys.stderr)
    return EXIT_MISMATCH


def cmd_kernel(args) -> int:
    weyl, nonzero = standard_weyl(args.petrov)
    rep = phi_kernel(weyl, args.which, nonzero)
    if args.machine:
        print(json.dumps({
            "petrov": args.petrov,
            "which": rep.which,
            "dimension": rep.dimension,
            "basis": [{k: str(v) for k, v in vec.items()} for vec in rep.basis],
            "conditions_on_kernel": {k: [str(g) for g in v] for k, v in rep.conditions_on_kernel.items()},
            "generic_pivots": rep.generic_pivots,
            "sampled_ranks": rep.sampled_ranks,
        }, indent=2))
        return EXIT_OK
    print(f"Petrov type {args.petrov}, conditions {rep.which}: kernel dimension {rep.dimension}")
    for k, vec in enumerate(rep.basis, start=1):
        print(f"  k{k}: " + ", ".join(f"{lbl} = {v}" for lbl, v in vec.items()))
    for name, gens in rep.conditions_on_kernel.items():
        shown = ", ".join(f"{g} = 0" for g in gens) if gens else "identically satisfied"
        print(f"  {name} on the kernel: {shown}")
    if rep.generic_pivots:
        print("  extra genericity conditions: " + ", ".join(f"{p} != 0" for p in rep.generic_pivots))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinorss", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a curvature input file")
    p.add_argument("file")
    p.add_argument("--machine", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-identities", help="check the commutator identities and rank claims")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("table", help="reproduce the Petrov/Segre semi-symmetry table")
    p.add_argument("--golden", nargs="?", const="-", default=None,
                   help="compare with a golden grid (the bundled one if no path is given)")
    p.add_argument("--machine", action="store_true", help="emit JSON cell records")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("kernel", help="Phi-kernel of the linear conditions for a Petrov type")
    p.add_argument("--petrov", required=True, choices=[t.value for t in PetrovType])
    p.add_argument("--which", default="S1", choices=["S1", "mixed", "both"])
    p.add_argument("--machine", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpinorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
