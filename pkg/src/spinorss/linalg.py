"""Exact elimination over the Gaussian rationals and over polynomial rings.

Two routines carry all rank and kernel claims:

* :func:`rank` runs plain Gaussian elimination on sparse rows of
  :class:`GaussianRational` values (used for coefficient-vector spans and
  for evaluated matrices).
* :func:`fraction_free_rref` runs fraction-free Gauss-Jordan elimination
  on a matrix of :class:`Polynomial` entries.  Every intermediate entry is
  a minor of the input, so each division is exact and nothing leaves the
  polynomial ring.
"""
from __future__ import annotations

import math
from typing import Callable, Hashable, Iterable, Sequence

from .scalar_algebra import GaussianRational, Polynomial


def rank(rows: Iterable[dict]) -> int:
    """Rank of sparse row vectors ``{column: GaussianRational}``."""
    return len(echelon_basis(rows))


def echelon_basis(rows: Iterable[dict]) -> list:
    """Reduce rows to an echelon basis of their span.

    Returns a list of ``(pivot_column, row)`` with ``row[pivot_column] == 1``.
    Columns are processed in order of first appearance, which keeps the
    pivot choice deterministic for a given row order.
    """
    basis: list = []
    for row in rows:
        v = {k: c for k, c in row.items() if c}
        for pcol, brow in basis:
            f = v.get(pcol)
            if f:
                for k, c in brow.items():
                    nv = v.get(k, 0) - f * c
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        if not v:
            continue
        pcol = next(iter(v))
        inv = GaussianRational.coerce(v[pcol]).inverse()
        v = {k: c * inv for k, c in v.items()}
        # keep earlier basis rows reduced against the new pivot
        for idx, (qcol, qrow) in enumerate(basis):
            f = qrow.get(pcol)
            if f:
                for k, c in v.items():
                    nv = qrow.get(k, 0) - f * c
                    if nv:
                        qrow[k] = nv
                    else:
                        qrow.pop(k, None)
        basis.append((pcol, v))
    return basis


def polynomial_rows(polys: Iterable[Polynomial]) -> list:
    """Coefficient vectors over the monomial basis."""
    return [dict(p.items()) for p in polys]


def span_rank(polys: Iterable[Polynomial]) -> int:
    """Dimension of the linear span of ``polys`` over the Gaussian rationals."""
    return rank(polynomial_rows(polys))


def evaluation_rank(polys: Sequence[Polynomial], points: Sequence[dict]) -> int:
    """Rank of the matrix ``[p(x) for x in points]`` over all polys.

    Bounded above by :func:`span_rank`; equal to it for generic points
    once there are at least as many points as the span dimension.  Points
    with Gaussian-integer values take an all-integer path.
    """
    if all(_is_gaussian_integer(v) for pt in points for v in pt.values()):
        rows = [_integer_row(p, points) for p in polys]
        return gaussian_integer_rank(rows)
    rows = []
    for p in polys:
        rows.append({j: p.evaluate(pt) for j, pt in enumerate(points)})
    return rank(rows)


def _is_gaussian_integer(v) -> bool:
    v = GaussianRational.coerce(v)
    return v.re.denominator == 1 and v.im.denominator == 1


def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _integer_row(p: Polynomial, points: Sequence[dict]) -> list:
    """Values of ``D*p`` at each point, ``D`` the common coefficient denominator."""
    den = 1
    for _, c in p.items():
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    coeffs = [(mono, (int(c.re * den), int(c.im * den))) for mono, c in p.items()]
    row = []
    for pt in points:
        vals = {s: (int(v.re), int(v.im)) for s, v in
                ((s, GaussianRational.coerce(v)) for s, v in pt.items())}
        total = (0, 0)
        for mono, c in coeffs:
            t = c
            for s, e in mono:
                for _ in range(e):
                    t = _gi_mul(t, vals[s])
            total = (total[0] + t[0], total[1] + t[1])
        row.append(total)
    return row


def _gi_divexact(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    q_re, r_re = divmod(re, n)
    q_im, r_im = divmod(im, n)
    if r_re or r_im:
        raise ArithmeticError("inexact Gaussian integer division in Bareiss step")
    return (q_re, q_im)


def gaussian_integer_rank(rows: Sequence[Sequence[tuple]]) -> int:
    """Rank of a Gaussian-integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows if any(x != (0, 0) for x in r)]
    if not m:
        return 0
    ncols = len(m[0])
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != (0, 0)), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            row, prow = m[i], m[r]
            for j in range(c, ncols):
                a = _gi_mul(piv, row[j])
                b = _gi_mul(f, prow[j])
                m[i][j] = _gi_divexact((a[0] - b[0], a[1] - b[1]), prev)
        prev = piv
        r += 1
        if r == len(m):
            break
    return r


def evaluate_matrix(matrix: Sequence[Sequence[Polynomial]], point: dict) -> list:
    return [{j: e.evaluate(point) for j, e in enumerate(row) if e} for row in matrix]


def fraction_free_rref(
    matrix: Sequence[Sequence[Polynomial]],
    pivot_key: Callable[[Polynomial], Hashable | None],
):
    """Fraction-free reduced row echelon form.

    ``pivot_key`` ranks candidate pivots (smaller is preferred) and returns
    ``None`` for entries that must not be used.  Zero entries are never
    offered.

    Returns ``(rows, pivots, det)`` where ``pivots`` lists ``(row, column)``
    pairs and every pivot entry in ``rows`` equals ``det``.
    """
    m = [list(map(Polynomial.coerce, row)) for row in matrix]
    if not m:
        return m, [], Polynomial.const(1)
    ncols = len(m[0])
    prev = Polynomial.const(1)
    r = 0
    pivots = []
    for c in range(ncols):
        best = None
        for i in range(r, len(m)):
            e = m[i][c]
            if e.is_zero():
                continue
            key = pivot_key(e)
            if key is None:
                continue
            if best is None or key < best[0]:
                best = (key, i)
        if best is None:
            continue
        p = best[1]
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(len(m)):
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f.is_zero():
                if piv != prev:
                    m[i] = [(piv * e).divexact(prev) if e else e for e in row]
                continue
            m[i] = [(piv * e - f * pe).divexact(prev) for e, pe in zip(row, prow)]
        prev = piv
        pivots.append((r, c))
        r += 1
    return m, pivots, prev


def kernel_from_rref(rows, pivots, det, ncols: int) -> list:
    """Kernel basis (polynomial vectors) from :func:`fraction_free_rref` output."""
    pivot_cols = {c: r for r, c in pivots}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [Polynomial.const(0)] * ncols
        v[f] = det
        for c, r in pivot_cols.items():
            v[c] = -rows[r][f]
        basis.append(v)
    return basis
