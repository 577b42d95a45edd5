"""Buchberger engine with matrix term orders and Gröbner fan enumeration.

Term orders are weight-row matrices refined by a fixed graded reverse
lexicographic tie-break (first variable largest). Under the min convention the
smaller weight is the leading one, so initial forms of tropical weight vectors
are exactly the leading forms seen by the engine. On top of reduced bases sit
saturation, monomial-freeness, dimension counts, and the brute-force Gröbner
fan walk over facets.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    DimMismatchError,
    NotZeroDimensionalError,
    RequiresHomogeneousError,
    UnitIdealError,
    ZeroPolynomialError,
)
from .fans import Cone, cone_from_halfspaces, facets_with_normals, relative_interior_point
from .linalg import vec_neg, vec_sub
from .polynomials import IdealSpec, Polynomial, fresh_variable, initial_form


@dataclass(frozen=True)
class TermOrder:
    """Weight rows compared lexicographically, then grevlex.

    convention "min" makes the smaller weight lead (the tropical default);
    "max" is the classical direction.
    """

    weight_rows: tuple = ()
    convention: str = "min"

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.weight_rows)
        object.__setattr__(self, "weight_rows", rows)
        if self.convention not in ("min", "max"):
            raise ValueError("convention must be 'min' or 'max'")

    def key(self, exps):
        sign = -1 if self.convention == "min" else 1
        weight = tuple(sign * sum(w * e for w, e in zip(row, exps))
                       for row in self.weight_rows)
        grevlex = (sum(exps),) + tuple(-e for e in reversed(exps))
        return weight + grevlex

    def effective_max_rows(self):
        sign = -1 if self.convention == "min" else 1
        return [tuple(sign * x for x in row) for row in self.weight_rows]


@dataclass(frozen=True)
class GroebnerBasis:
    order: TermOrder
    elements: tuple
    leading_exponents: tuple

    def variables(self):
        return self.elements[0].variables

    def marked_key(self):
        """Canonical key identifying the marked reduced basis (and hence the
        Gröbner cone)."""
        items = []
        for g, lead in zip(self.elements, self.leading_exponents):
            trailing = tuple(sorted(e for e in g.terms if e != lead))
            items.append((lead, trailing))
        return tuple(sorted(items))


def leading_term(p: Polynomial, order: TermOrder):
    """(exponent, coefficient) of the leading term under the order."""
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial has no leading term")
    lead = max(p.terms, key=order.key)
    return lead, p.terms[lead]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(p: Polynomial, basis, order: TermOrder) -> Polynomial:
    """Full remainder of p on division by the basis list."""
    leads = [(leading_term(g, order), g) for g in basis if not g.is_zero()]
    remainder = {}
    work = p
    while not work.is_zero():
        lt, lc = leading_term(work, order)
        hit = None
        for (le, ce), g in leads:
            if _divides(le, lt):
                hit = (le, ce, g)
                break
        if hit is None:
            remainder[lt] = lc
            work = Polynomial(work.variables,
                              {e: c for e, c in work.terms.items() if e != lt})
            continue
        le, ce, g = hit
        shift = tuple(a - b for a, b in zip(lt, le))
        factor = Polynomial(work.variables, {shift: lc / ce})
        work = work - factor * g
    return Polynomial(p.variables, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    lf, cf = leading_term(f, order)
    lg, cg = leading_term(g, order)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = Polynomial(f.variables, {vec_sub(lcm, lf): 1 / cf})
    mg = Polynomial(g.variables, {vec_sub(lcm, lg): 1 / cg})
    return mf * f - mg * g


def _monic(p: Polynomial, order: TermOrder) -> Polynomial:
    _, c = leading_term(p, order)
    return p.scale(1 / c)


def _check_termination(spec: IdealSpec, order: TermOrder):
    if all(all(x >= 0 for x in row) for row in order.effective_max_rows()):
        return
    if not all(g.is_homogeneous() for g in spec.generators):
        raise RequiresHomogeneousError(
            "this weight order only terminates on homogeneous input")


def reduced_groebner_basis(spec: IdealSpec, order: TermOrder) -> GroebnerBasis:
    """The unique reduced Gröbner basis of the ideal for the order."""
    _check_termination(spec, order)
    basis = [_monic(g, order) for g in spec.generators if not g.is_zero()]
    if not basis:
        z = Polynomial.zero(spec.variables)
        return GroebnerBasis(order, (z,), ((0,) * len(spec.variables),))
    basis = _autoreduce(basis, order)
    pairs = []
    counter = 0

    def push_pairs(upto):
        nonlocal counter
        i = upto
        for j in range(i):
            lf = leading_term(basis[i], order)[0]
            lg = leading_term(basis[j], order)[0]
            lcm_deg = sum(max(a, b) for a, b in zip(lf, lg))
            heapq.heappush(pairs, (lcm_deg, counter, i, j))
            counter += 1

    for i in range(1, len(basis)):
        push_pairs(i)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        lf = leading_term(basis[i], order)[0]
        lg = leading_term(basis[j], order)[0]
        if all(min(a, b) == 0 for a, b in zip(lf, lg)):
            continue  # coprime leading monomials: S-pair reduces to zero
        s = s_polynomial(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if not r.is_zero():
            basis.append(_monic(r, order))
            push_pairs(len(basis) - 1)
    basis = _autoreduce(basis, order)
    leads = tuple(leading_term(g, order)[0] for g in basis)
    return GroebnerBasis(order, tuple(basis), leads)


def _autoreduce(basis, order):
    basis = [g for g in basis if not g.is_zero()]
    while True:
        changed = False
        kept = []
        for i, g in enumerate(basis):
            # reduce against everything already kept plus the untouched tail,
            # so mutually reducible copies cannot annihilate each other
            reducers = kept + basis[i + 1:]
            r = normal_form(g, reducers, order) if reducers else g
            if r.terms != g.terms:
                changed = True
            if not r.is_zero():
                kept.append(_monic(r, order))
        basis = kept
        if not changed:
            break
    basis.sort(key=lambda g: order.key(leading_term(g, order)[0]))
    return basis


def is_unit_basis(gb: GroebnerBasis) -> bool:
    return any(not g.is_zero() and g.total_degree() == 0 for g in gb.elements)


def initial_ideal(gb: GroebnerBasis, w) -> IdealSpec:
    """The ideal of w-initial forms of the basis elements.

    Correct whenever w lies in the closure of the basis' Gröbner cone.
    """
    nvars = len(gb.variables())
    if len(w) != nvars:
        raise DimMismatchError("weight vector length mismatch")
    conv = gb.order.convention
    gens = tuple(initial_form(g, w, conv) for g in gb.elements if not g.is_zero())
    if not gens:
        gens = (Polynomial.zero(gb.variables()),)
    return IdealSpec(gb.variables(), gens)


def saturate(spec: IdealSpec, f: Polynomial) -> IdealSpec:
    """(I : f^infinity) via the extended ring <I, t*f - 1> and elimination."""
    if f.is_zero():
        raise ZeroPolynomialError("cannot saturate by the zero polynomial")
    tname = fresh_variable("t", spec.variables)
    new_vars = (tname,) + spec.variables
    lifted = []
    for g in spec.generators:
        lifted.append(Polynomial(new_vars, {(0,) + e: c for e, c in g.terms.items()}))
    tf = Polynomial(new_vars, {(1,) + e: c for e, c in f.terms.items()})
    one = Polynomial.constant(new_vars, 1)
    gens = tuple(lifted) + (tf - one,)
    elim = TermOrder(((1,) + (0,) * len(spec.variables),), "max")
    gb = reduced_groebner_basis(IdealSpec(new_vars, gens), elim)
    kept = []
    for g in gb.elements:
        if g.is_zero():
            continue
        if all(e[0] == 0 for e in g.terms):
            kept.append(Polynomial(spec.variables,
                                   {e[1:]: c for e, c in g.terms.items()}))
    if not kept:
        kept = [Polynomial.zero(spec.variables)]
    return IdealSpec(spec.variables, tuple(kept))


def product_of_variables(variables) -> Polynomial:
    return Polynomial(tuple(variables), {(1,) * len(tuple(variables)): Fraction(1)})


def is_monomial_free(spec: IdealSpec) -> bool:
    """True when saturating by the product of all variables stays proper,
    i.e. the ideal contains no monomial."""
    if all(g.is_zero() for g in spec.generators):
        return True
    sat = saturate(spec, product_of_variables(spec.variables))
    return not any(not g.is_zero() and g.total_degree() == 0
                   for g in sat.generators)


def krull_dimension(spec: IdealSpec) -> int:
    """Dimension of the affine variety; -1 for the unit ideal."""
    gb = reduced_groebner_basis(spec, TermOrder((), "max"))
    if is_unit_basis(gb):
        return -1
    supports = [frozenset(i for i, e in enumerate(lead) if e > 0)
                for g, lead in zip(gb.elements, gb.leading_exponents)
                if not g.is_zero()]
    nvars = len(spec.variables)
    best = -1
    for mask in range(1 << nvars):
        subset = frozenset(i for i in range(nvars) if mask >> i & 1)
        if any(s <= subset for s in supports):
            continue
        best = max(best, len(subset))
    return best


def vector_space_dimension(spec: IdealSpec) -> int:
    """Count of standard monomials of the ideal (staircase complement)."""
    gb = reduced_groebner_basis(spec, TermOrder((), "max"))
    if is_unit_basis(gb):
        return 0
    nvars = len(spec.variables)
    leads = [lead for g, lead in zip(gb.elements, gb.leading_exponents)
             if not g.is_zero()]
    bounds = []
    for i in range(nvars):
        pure = [lead[i] for lead in leads
                if all(e == 0 for j, e in enumerate(lead) if j != i) and lead[i] > 0]
        if not pure:
            raise NotZeroDimensionalError(
                f"no pure power of variable {spec.variables[i]!r} leads the ideal")
        bounds.append(min(pure))
    count = 0
    for exps in product(*(range(b) for b in bounds)):
        if not any(_divides(lead, exps) for lead in leads):
            count += 1
    return count


def groebner_cone(gb: GroebnerBasis) -> Cone:
    """The closed cone of weight vectors selecting the basis' markings.

    Min convention: w.lead <= w.u for every trailing exponent u, encoded as
    rows (u - lead) with nonnegative pairing.
    """
    sign = 1 if gb.order.convention == "min" else -1
    rows = []
    for g, lead in zip(gb.elements, gb.leading_exponents):
        for e in g.terms:
            if e != lead:
                rows.append(tuple(sign * (a - b) for a, b in zip(e, lead)))
    return cone_from_halfspaces(rows, [], len(gb.variables()))


def groebner_fan(spec: IdealSpec):
    """All maximal Gröbner cones of a homogeneous ideal with their reduced
    bases, enumerated by breadth-first facet crossing.

    Each facet is crossed by rerunning Buchberger with weight rows (p, nu):
    p a relative interior point of the facet, nu the outward normal.
    """
    if not all(g.is_homogeneous() for g in spec.generators):
        raise RequiresHomogeneousError("the Gröbner fan needs homogeneous input")
    if all(g.is_zero() for g in spec.generators):
        raise ZeroPolynomialError("zero ideal has no Gröbner fan")
    start = reduced_groebner_basis(spec, TermOrder((), "min"))
    if is_unit_basis(start):
        raise UnitIdealError("unit ideal has no Gröbner fan")
    first_cone = groebner_cone(start)
    seen = {start.marked_key(): (start, first_cone)}
    queue = [start.marked_key()]
    while queue:
        key = queue.pop(0)
        _, cone = seen[key]
        for facet, inward in facets_with_normals(cone):
            p = relative_interior_point(facet)
            outward = vec_neg(inward)
            neighbor = reduced_groebner_basis(
                spec, TermOrder((p, outward), "min"))
            nk = neighbor.marked_key()
            if nk not in seen:
                seen[nk] = (neighbor, groebner_cone(neighbor))
                queue.append(nk)
    result = sorted(seen.values(),
                    key=lambda gc: (gc[1].rays.entries, gc[1].lineality.entries))
    return result
