"""Polyvector fields and differential forms with polynomial coefficients.

A multivector of tensor degree t is stored as a map from strictly
increasing coordinate tuples of length t to polynomial coefficients;
the shifted grading (degree = tensor degree - 1, functions in degree
-1) is the one used for all bracket signs.  The Schouten bracket is
realized through odd-coordinate calculus: a multivector is a
polynomial in commuting coordinates and anticommuting symbols, one per
coordinate direction, and the bracket is the canonical odd Poisson
bracket on such polynomials.  On generators this reduces to X(f) and
the vector field commutator, which is what the tests pin down.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .liealg import Cochain, IndexTuple, merge_indices
from .poly import Poly, monomial_weight

CoordTuple = tuple[int, ...]


class PolyVector:
    """Sparse polynomial multivector field; sums of mixed degree allowed."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[CoordTuple, Poly] | None = None):
        self.n = n
        clean: dict[CoordTuple, Poly] = {}
        if terms:
            for idx, p in terms.items():
                if list(idx) != sorted(set(idx)) or any(not 0 <= j < n for j in idx):
                    raise ValueError(f"bad coordinate tuple {idx}")
                if not p.is_zero():
                    clean[idx] = p
        self.terms = clean

    # ---------------------------------------------------------- constructors

    @staticmethod
    def function(p: Poly) -> "PolyVector":
        return PolyVector(p.n, {(): p})

    @staticmethod
    def vector_field(components: list[Poly]) -> "PolyVector":
        n = components[0].n
        return PolyVector(n, {(j,): components[j] for j in range(n)})

    @staticmethod
    def basis_vector(n: int, j: int) -> "PolyVector":
        return PolyVector(n, {(j,): Poly.const(n, 1)})

    # --------------------------------------------------------------- algebra

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyVector) and self.n == other.n and self.terms == other.terms

    def __add__(self, other: "PolyVector") -> "PolyVector":
        out = dict(self.terms)
        for idx, p in other.terms.items():
            s = out.get(idx, Poly.zero(self.n)) + p
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return PolyVector(self.n, out)

    def __neg__(self) -> "PolyVector":
        return self.scale(-1)

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def scale(self, factor) -> "PolyVector":
        f = Fraction(factor)
        if f == 0:
            return PolyVector(self.n)
        return PolyVector(self.n, {i: p.scale(f) for i, p in self.terms.items()})

    def degrees(self) -> set[int]:
        """Shifted degrees present (functions count as -1)."""
        return {len(i) - 1 for i in self.terms}

    def component(self, degree: int) -> "PolyVector":
        return PolyVector(self.n, {i: p for i, p in self.terms.items()
                                   if len(i) - 1 == degree})

    def components_by_degree(self) -> list[tuple[int, "PolyVector"]]:
        return [(d, self.component(d)) for d in sorted(self.degrees())]

    def vf_components(self) -> list[Poly]:
        """Coefficients of a tensor-degree-1 multivector as a plain list."""
        return [self.terms.get((j,), Poly.zero(self.n)) for j in range(self.n)]

    def apply_to(self, f: Poly) -> Poly:
        """Directional derivative by a vector field."""
        out = Poly.zero(self.n)
        for idx, p in self.terms.items():
            if len(idx) != 1:
                raise ValueError("apply_to requires a vector field")
            out = out + p * f.partial(idx[0])
        return out

    # ---------------------------------------------------------------- weight

    def term_weight(self, idx: CoordTuple, exps, weights) -> int:
        return monomial_weight(exps, weights) - sum(weights[j] for j in idx)

    def weights_present(self, weights: tuple[int, ...]) -> set[int]:
        out = set()
        for idx, p in self.terms.items():
            for exps in p.terms:
                out.add(self.term_weight(idx, exps, weights))
        return out

    def weight_component(self, weights: tuple[int, ...], w: int) -> "PolyVector":
        out: dict[CoordTuple, Poly] = {}
        for idx, p in self.terms.items():
            shift = sum(weights[j] for j in idx)
            q = p.weight_component(weights, w + shift)
            if not q.is_zero():
                out[idx] = q
        return PolyVector(self.n, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({p!r})*d{list(i)}" for i, p in sorted(self.terms.items()))


# ------------------------------------------------------------- wedge, bracket

def pv_wedge(a: PolyVector, b: PolyVector) -> PolyVector:
    out: dict[CoordTuple, Poly] = {}
    for ia, pa in a.terms.items():
        for ib, pb in b.terms.items():
            merged = merge_indices(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            prod = pa * pb
            if sign < 0:
                prod = prod.scale(-1)
            s = out.get(idx, Poly.zero(a.n)) + prod
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
    return PolyVector(a.n, out)


def _xi_partial(idx: CoordTuple, i: int) -> tuple[int, CoordTuple] | None:
    """Left odd derivative of the symbol product indexed by idx."""
    if i not in idx:
        return None
    t = idx.index(i)
    sign = -1 if t % 2 else 1
    return sign, idx[:t] + idx[t + 1:]


def _xi_partial_right(idx: CoordTuple, i: int) -> tuple[int, CoordTuple] | None:
    """Right odd derivative: the symbol hops over the factors after it."""
    if i not in idx:
        return None
    t = idx.index(i)
    sign = -1 if (len(idx) - 1 - t) % 2 else 1
    return sign, idx[:t] + idx[t + 1:]


def schouten(a: PolyVector, b: PolyVector) -> PolyVector:
    """Schouten bracket; biderivation extension of X(f) and [X,Y].

    Realized as the canonical odd Poisson bracket
    sum_i (dr a / d xi_i)(dl b / d x_i) - (dr a / d x_i)(dl b / d xi_i)
    with right derivatives on the first argument and left on the second.
    """
    n = a.n
    acc: dict[CoordTuple, Poly] = {}

    def add_term(idx: CoordTuple, p: Poly) -> None:
        if p.is_zero():
            return
        s = acc.get(idx, Poly.zero(n)) + p
        if s.is_zero():
            acc.pop(idx, None)
        else:
            acc[idx] = s

    for ia, pa in a.terms.items():
        for ib, pb in b.terms.items():
            for i in range(n):
                right = _xi_partial_right(ia, i)
                if right is not None:
                    s1, ia_red = right
                    dpb = pb.partial(i)
                    if not dpb.is_zero():
                        merged = merge_indices(ia_red, ib)
                        if merged is not None:
                            s2, idx = merged
                            add_term(idx, (pa * dpb).scale(s1 * s2))
                left = _xi_partial(ib, i)
                if left is not None:
                    s1, ib_red = left
                    dpa = pa.partial(i)
                    if not dpa.is_zero():
                        merged = merge_indices(ia, ib_red)
                        if merged is not None:
                            s2, idx = merged
                            add_term(idx, (dpa * pb).scale(-s1 * s2))
    return PolyVector(n, acc)


# --------------------------------------------------------- differential forms

class DiffForm:
    """Polynomial differential form; sums of mixed degree allowed."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[CoordTuple, Poly] | None = None):
        self.n = n
        clean: dict[CoordTuple, Poly] = {}
        if terms:
            for idx, p in terms.items():
                if list(idx) != sorted(set(idx)) or any(not 0 <= j < n for j in idx):
                    raise ValueError(f"bad coordinate tuple {idx}")
                if not p.is_zero():
                    clean[idx] = p
        self.terms = clean

    @staticmethod
    def function(p: Poly) -> "DiffForm":
        return DiffForm(p.n, {(): p})

    @staticmethod
    def unit(n: int) -> "DiffForm":
        return DiffForm.function(Poly.const(n, 1))

    @staticmethod
    def dx(n: int, i: int) -> "DiffForm":
        return DiffForm(n, {(i,): Poly.const(n, 1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffForm) and self.n == other.n and self.terms == other.terms

    def __add__(self, other: "DiffForm") -> "DiffForm":
        out = dict(self.terms)
        for idx, p in other.terms.items():
            s = out.get(idx, Poly.zero(self.n)) + p
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return DiffForm(self.n, out)

    def __neg__(self) -> "DiffForm":
        return self.scale(-1)

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)

    def scale(self, factor) -> "DiffForm":
        f = Fraction(factor)
        if f == 0:
            return DiffForm(self.n)
        return DiffForm(self.n, {i: p.scale(f) for i, p in self.terms.items()})

    def degrees(self) -> set[int]:
        return {len(i) for i in self.terms}

    def component(self, degree: int) -> "DiffForm":
        return DiffForm(self.n, {i: p for i, p in self.terms.items() if len(i) == degree})

    def wedge(self, other: "DiffForm") -> "DiffForm":
        out: dict[CoordTuple, Poly] = {}
        for ia, pa in self.terms.items():
            for ib, pb in other.terms.items():
                merged = merge_indices(ia, ib)
                if merged is None:
                    continue
                sign, idx = merged
                prod = pa * pb
                if sign < 0:
                    prod = prod.scale(-1)
                s = out.get(idx, Poly.zero(self.n)) + prod
                if s.is_zero():
                    out.pop(idx, None)
                else:
                    out[idx] = s
        return DiffForm(self.n, out)

    def de_rham(self) -> "DiffForm":
        out = DiffForm(self.n)
        for idx, p in self.terms.items():
            for i in range(self.n):
                dp = p.partial(i)
                if dp.is_zero():
                    continue
                merged = merge_indices((i,), idx)
                if merged is None:
                    continue
                sign, new_idx = merged
                out = out + DiffForm(self.n, {new_idx: dp.scale(sign)})
        return out

    def weights_present(self, weights: tuple[int, ...]) -> set[int]:
        out = set()
        for idx, p in self.terms.items():
            shift = sum(weights[j] for j in idx)
            for exps in p.terms:
                out.add(monomial_weight(exps, weights) + shift)
        return out

    def weight_component(self, weights: tuple[int, ...], w: int) -> "DiffForm":
        out: dict[CoordTuple, Poly] = {}
        for idx, p in self.terms.items():
            shift = sum(weights[j] for j in idx)
            q = p.weight_component(weights, w - shift)
            if not q.is_zero():
                out[idx] = q
        return DiffForm(self.n, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({p!r})*dx{list(i)}" for i, p in sorted(self.terms.items()))


def interior_vf(x: PolyVector, omega: DiffForm) -> DiffForm:
    """Interior product of a vector field into a form."""
    n = omega.n
    comps = x.vf_components()
    out = DiffForm(n)
    for idx, p in omega.terms.items():
        for t, j in enumerate(idx):
            if comps[j].is_zero():
                continue
            coeff = (p * comps[j]).scale(-1 if t % 2 else 1)
            out = out + DiffForm(n, {idx[:t] + idx[t + 1:]: coeff})
    return out


def lie_derivative_form(x: PolyVector, omega: DiffForm) -> DiffForm:
    """Cartan formula: L_X = i_X d + d i_X."""
    return interior_vf(x, omega.de_rham()) + interior_vf(x, omega).de_rham()


def interior_form(theta: DiffForm, v: PolyVector) -> PolyVector:
    """Interior product of a k-form into a multivector.

    Pairing <dx^i, d_j> = delta; composite forms contract the leftmost
    multivector slots first (i_{t1 ^ t2} = i_{t2} o i_{t1}).
    """
    n = v.n
    out = PolyVector(n)
    for tform, h in theta.terms.items():
        for idx, p in v.terms.items():
            sign = 1
            cur: CoordTuple | None = idx
            for i in tform:
                step = _xi_partial(cur, i)
                if step is None:
                    cur = None
                    break
                s, cur = step
                sign *= s
            if cur is None:
                continue
            out = out + PolyVector(n, {cur: (h * p).scale(sign)})
    return out


# ----------------------------------------------------- Lambda g-dual extension

def ext_bilinear(a: Cochain, b: Cochain, op: Callable, components: Callable,
                 exponent: Callable[[int, int], int]) -> Cochain:
    """Bilinear extension of a value-level operation to cochains.

    On decomposables (alpha (x) v1) op (beta (x) v2) the result is
    (-1)**exponent(q1, p2) (alpha ^ beta) (x) op(v1, v2), where q1 runs
    over the homogeneous degrees of v1 (via ``components``) and p2 is
    the exterior degree of beta.
    """
    dim = a.dim
    acc = Cochain(dim)
    for i1, v1 in a.terms.items():
        for q1, v1c in components(v1):
            for i2, v2 in b.terms.items():
                merged = merge_indices(i1, i2)
                if merged is None:
                    continue
                sign, idx = merged
                if exponent(q1, len(i2)) % 2:
                    sign = -sign
                w = op(v1c, v2)
                if w.is_zero():
                    continue
                acc = acc + Cochain(dim, {idx: w.scale(sign)})
    return acc


def _pv_components(v: PolyVector):
    return v.components_by_degree()


def ext_schouten(a: Cochain, b: Cochain) -> Cochain:
    """Bracket extension: sign exponent q1*p2 with shifted degrees."""
    return ext_bilinear(a, b, schouten, _pv_components, lambda q1, p2: q1 * p2)


def ext_pv_wedge(a: Cochain, b: Cochain) -> Cochain:
    """Product extension: Koszul sign from the tensor degree q1+1."""
    return ext_bilinear(a, b, pv_wedge, _pv_components, lambda q1, p2: (q1 + 1) * p2)


def mixed_mul(a: Cochain, b: Cochain) -> Cochain:
    """Product of mixed forms (Cochains with DiffForm values)."""
    def comps(v: DiffForm):
        return [(d, v.component(d)) for d in sorted(v.degrees())]
    return ext_bilinear(a, b, DiffForm.wedge, comps, lambda k1, p2: k1 * p2)


def mixed_unit(dim: int, n: int) -> Cochain:
    return Cochain(dim, {(): DiffForm.unit(n)})


def is_balanced(eta: Cochain) -> bool:
    return all(v.degrees() <= {len(idx)} for idx, v in eta.terms.items())


def contract(eta: Cochain, a: Cochain) -> Cochain:
    """Contraction action of a balanced mixed form on polyvector cochains.

    For eta = omega (x) theta and a = alpha (x) X the result is
    (omega ^ alpha) (x) i_theta X; the extension sign is +1 (the acting
    element is balanced, hence even).  contract(unit, a) == a.
    """
    dim = a.dim
    acc = Cochain(dim)
    for iw, theta in eta.terms.items():
        for ia, x in a.terms.items():
            merged = merge_indices(iw, ia)
            if merged is None:
                continue
            sign, idx = merged
            v = interior_form(theta, x)
            if v.is_zero():
                continue
            acc = acc + Cochain(dim, {idx: v.scale(sign)})
    return acc
