"""Exact sparse linear algebra over the rationals.

Columns are sparse integer vectors (dict row -> int), kept primitive
by gcd reduction.  Reduction is fraction-free: a column is cleared
against a pivot by the cross-multiplication b*col - a*pivot, so no
rational arithmetic and no pivot thresholds ever appear.  The reducer
keeps one pivot column per leading row, which gives ranks, kernel
combinations and image-membership tests for the slice matrices
assembled elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def normalize_column(col: dict) -> dict[int, int]:
    """Clear denominators and divide by the content."""
    if not col:
        return {}
    denlcm = 1
    for v in col.values():
        f = Fraction(v)
        denlcm = denlcm * f.denominator // gcd(denlcm, f.denominator)
    out = {}
    g = 0
    for r, v in col.items():
        f = Fraction(v) * denlcm
        iv = int(f)
        if iv:
            out[r] = iv
            g = gcd(g, abs(iv))
    if g > 1:
        out = {r: v // g for r, v in out.items()}
    return out


def _joint_reduce(col: dict[int, int], combo: dict | None):
    """Divide column and combo by their common content."""
    vals = list(col.values()) + (list(combo.values()) if combo else [])
    g = 0
    for v in vals:
        g = gcd(g, abs(v))
        if g == 1:
            return col, combo
    if g > 1:
        col = {r: v // g for r, v in col.items()}
        if combo:
            combo = {k: v // g for k, v in combo.items()}
    return col, combo


def _axpy(b: int, col: dict, a: int, piv: dict) -> dict:
    """b*col - a*piv, sparse."""
    out = {r: b * v for r, v in col.items()}
    for r, v in piv.items():
        w = out.get(r, 0) - a * v
        if w:
            out[r] = w
        else:
            out.pop(r, None)
    return out


def matrix_rank(columns: list[dict]) -> int:
    """Exact rank of a sparse integer/rational column collection.

    Fraction-free elimination with greedy sparsity pivoting (fewest
    entries first), which keeps fill-in low on the slice matrices;
    deterministic tie-breaking.
    """
    cols: dict[int, dict[int, int]] = {}
    for ci, c in enumerate(columns):
        nc = normalize_column(c)
        if nc:
            cols[ci] = nc
    rows: dict[int, set[int]] = {}
    for ci, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(ci)
    rank = 0
    while cols:
        ci = min(cols, key=lambda c: (len(cols[c]), c))
        col = cols.pop(ci)
        r = min(col, key=lambda rr: (len(rows[rr]), rr))
        rank += 1
        for rr in col:
            rows[rr].discard(ci)
        targets = sorted(rows.pop(r, ()))
        pv = col[r]
        for cj in targets:
            other = cols[cj]
            for rr in other:
                s = rows.get(rr)
                if s is not None:
                    s.discard(cj)
            new = _axpy(pv, other, other[r], col)
            new, _ = _joint_reduce(new, None)
            if new:
                cols[cj] = new
                for rr in new:
                    rows.setdefault(rr, set()).add(cj)
            else:
                del cols[cj]
    return rank


class ColumnReducer:
    """Incremental column echelon with optional combination tracking.

    Inserted columns that survive reduction become pivots, one per
    leading (maximal) row index.  Combination vectors, when tracked,
    express every stored or reduced column as an integer combination
    of the originally supplied ones (up to overall scale).
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict[int, dict[int, int]] = {}
        self.combos: dict[int, dict] = {}
        self.kernel: list[dict] = []  # combos of columns that reduced to zero
        self.n_inserted = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, col: dict, combo: dict | None = None):
        if self.track and combo is None:
            combo = {}
        # clear denominators, scaling the combo by the same factor
        denlcm = 1
        for v in col.values():
            f = Fraction(v)
            denlcm = denlcm * f.denominator // gcd(denlcm, f.denominator)
        col = {r: int(Fraction(v) * denlcm) for r, v in col.items() if Fraction(v)}
        if combo and denlcm != 1:
            combo = {k: v * denlcm for k, v in combo.items()}
        col, combo = _joint_reduce(col, combo)
        while col:
            lead = max(col)
            piv = self.pivots.get(lead)
            if piv is None:
                break
            a, b = col[lead], piv[lead]
            col = _axpy(b, col, a, piv)
            if self.track:
                combo = _axpy(b, combo, a, self.combos[lead])
            col, combo = _joint_reduce(col, combo)
        return col, combo

    def insert(self, col: dict, label=None) -> bool:
        """Reduce and keep the column; returns True if it was independent."""
        combo = {label: 1} if self.track else None
        col, combo = self.reduce(col, combo)
        self.n_inserted += 1
        if not col:
            if self.track:
                self.kernel.append(combo)
            return False
        self.pivots[max(col)] = col
        if self.track:
            self.combos[max(col)] = combo
        return True

    def contains(self, col: dict) -> bool:
        """Is the column in the span of the inserted ones?"""
        residual, _ = self.reduce(dict(col))
        return not residual

    def solve(self, col: dict, rhs_label="__rhs__"):
        """Express col as a rational combination of inserted columns.

        Returns a dict label -> Fraction, or None if col is not in the
        span.  Requires track=True and labeled insertions.
        """
        if not self.track:
            raise ValueError("solve requires combination tracking")
        residual, combo = self.reduce(dict(col), {rhs_label: 1})
        if residual:
            return None
        lam = combo.pop(rhs_label)
        return {label: Fraction(-v, lam) for label, v in combo.items() if v}
