"""Seeded randomized identity checks for the two graded structures.

Every check is an exact polynomial identity: a case passes only when
the residual is the zero cochain.  The same suite backs the test
battery and the ``axioms`` command, so a reported "200/200" means the
identities below held on 200 independently drawn homogeneous triples.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import actions
from .calculus import PolyVector, ext_pv_wedge, ext_schouten
from .dpoly import PolyDiffOp, ext_gerstenhaber, hochschild
from .liealg import Cochain, ce_differential, total_differential
from .poly import Poly
from .scenario import Scenario


class Sampler:
    """Draws degree-homogeneous random cochains over a scenario."""

    def __init__(self, s: Scenario, rng: random.Random):
        self.s = s
        self.rng = rng
        self.n = s.n
        self.m = s.dim_g

    def poly(self, maxdeg: int = 2) -> Poly:
        terms = {}
        for _ in range(self.rng.randint(1, 3)):
            e = tuple(self.rng.randint(0, maxdeg) for _ in range(self.n))
            terms[e] = Fraction(self.rng.randint(-3, 3))
        return Poly(self.n, terms)

    def polyvector(self, q: int) -> PolyVector:
        keys = list(combinations(range(self.n), q + 1))
        return PolyVector(self.n, {self.rng.choice(keys): self.poly()})

    def diffop(self, q: int, max_slot_order: int = 1) -> PolyDiffOp:
        key = tuple(tuple(self.rng.randint(0, max_slot_order) for _ in range(self.n))
                    for _ in range(q + 1))
        return PolyDiffOp(self.n, {key: self.poly(1)})

    def cochain_pv(self, p: int, q: int) -> Cochain:
        idx = tuple(sorted(self.rng.sample(range(self.m), p)))
        return Cochain(self.m, {idx: self.polyvector(q)})

    def cochain_dp(self, p: int, q: int) -> Cochain:
        idx = tuple(sorted(self.rng.sample(range(self.m), p)))
        return Cochain(self.m, {idx: self.diffop(q)})


def tpoly_axiom_checks(s: Scenario, cases: int = 200, seed: int = 0) -> dict:
    """Lemma-level identities on tot(Lambda g-dual (x) T_poly)."""
    rng = random.Random(seed)
    smp = Sampler(s, rng)
    act = actions.on_polyvectors(s)

    def d(c: Cochain) -> Cochain:
        return ce_differential(s.lie, c, act)

    failures = []
    for case in range(cases):
        degs = [(rng.randint(0, min(2, s.dim_g)), rng.randint(-1, s.n - 1))
                for _ in range(3)]
        (p1, q1), (p2, q2), (p3, q3) = degs
        a, b, c = (smp.cochain_pv(p, q) for p, q in degs)
        g1, g2 = p1 + q1, p2 + q2
        t1, t2 = p1 + q1 + 1, p2 + q2 + 1

        residuals = {
            "graded_commutativity": ext_pv_wedge(a, b)
                - ext_pv_wedge(b, a).scale((-1) ** (t1 * t2)),
            "bracket_antisymmetry": ext_schouten(a, b)
                + ext_schouten(b, a).scale((-1) ** (g1 * g2)),
            "graded_jacobi": ext_schouten(a, ext_schouten(b, c))
                - ext_schouten(ext_schouten(a, b), c)
                - ext_schouten(b, ext_schouten(a, c)).scale((-1) ** (g1 * g2)),
            "graded_leibniz": ext_schouten(a, ext_pv_wedge(b, c))
                - ext_pv_wedge(ext_schouten(a, b), c)
                - ext_pv_wedge(b, ext_schouten(a, c)).scale((-1) ** (g1 * t2)),
            "d_squared": d(d(a)),
            "d_derivation_product": d(ext_pv_wedge(a, b))
                - ext_pv_wedge(d(a), b)
                - ext_pv_wedge(a, d(b)).scale((-1) ** t1),
            "d_derivation_bracket": d(ext_schouten(a, b))
                - ext_schouten(d(a), b)
                - ext_schouten(a, d(b)).scale((-1) ** g1),
        }
        for name, res in residuals.items():
            if not res.is_zero():
                failures.append({"case": case, "identity": name,
                                 "degrees": degs, "residual": repr(res)})
    return {"side": "tpoly", "cases": cases, "passed": cases - len({f["case"] for f in failures}),
            "failures": failures, "seed": seed}


def dpoly_axiom_checks(s: Scenario, cases: int = 200, seed: int = 0) -> dict:
    """dgla identities on tot(Lambda g-dual (x) D_poly)."""
    rng = random.Random(seed)
    smp = Sampler(s, rng)
    act = actions.on_dpoly(s)

    def d(c: Cochain) -> Cochain:
        return total_differential(s.lie, c, act, hochschild)

    qtop = min(2, s.caps.max_arity - 1)
    failures = []
    for case in range(cases):
        degs = [(rng.randint(0, min(2, s.dim_g)), rng.randint(-1, qtop))
                for _ in range(3)]
        (p1, q1), (p2, q2), _ = degs
        a, b, c = (smp.cochain_dp(p, q) for p, q in degs)
        g1, g2 = p1 + q1, p2 + q2

        residuals = {
            "bracket_antisymmetry": ext_gerstenhaber(a, b)
                + ext_gerstenhaber(b, a).scale((-1) ** (g1 * g2)),
            "graded_jacobi": ext_gerstenhaber(a, ext_gerstenhaber(b, c))
                - ext_gerstenhaber(ext_gerstenhaber(a, b), c)
                - ext_gerstenhaber(b, ext_gerstenhaber(a, c)).scale((-1) ** (g1 * g2)),
            "D_squared": d(d(a)),
            "D_derivation_bracket": d(ext_gerstenhaber(a, b))
                - ext_gerstenhaber(d(a), b)
                - ext_gerstenhaber(a, d(b)).scale((-1) ** g1),
        }
        for name, res in residuals.items():
            if not res.is_zero():
                failures.append({"case": case, "identity": name,
                                 "degrees": degs, "residual": repr(res)})
    return {"side": "dpoly", "cases": cases, "passed": cases - len({f["case"] for f in failures}),
            "failures": failures, "seed": seed}


def run_axiom_checks(s: Scenario, cases: int = 200, seed: int = 0) -> dict:
    tp = tpoly_axiom_checks(s, cases, seed)
    dp = dpoly_axiom_checks(s, cases, seed)
    return {
        "cases": cases,
        "seed": seed,
        "tpoly": tp,
        "dpoly": dp,
        "all_passed": not tp["failures"] and not dp["failures"],
    }
