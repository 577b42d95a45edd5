import random
from fractions import Fraction

import pytest

from tropfan.cycles import (
    TropicalCycle,
    cycle_dim,
    is_balanced,
    make_cycle,
    swap_convention,
)
from tropfan.errors import (
    ConventionMismatchError,
    DimMismatchError,
    MonomialHypersurfaceError,
    UnitIdealError,
    ZeroIdealError,
)
from tropfan.fans import (
    cone_from_generators,
    fan_cones,
    fan_dim,
    fan_from_cones,
    full_space,
    support_contains,
)
from tropfan.groebner import TermOrder, reduced_groebner_basis
from tropfan.polynomials import homogenize, ideal, parse_polynomial
from tropfan.tropical import (
    as_cycle_from_hypersurfaces,
    is_tropical_basis,
    multiplicity_at,
    optimum_attained_twice,
    stable_intersection,
    tropical_evaluate,
    tropical_hypersurface,
    tropical_prevariety,
    tropical_variety,
)


def P(text, vs):
    return parse_polynomial(text, vs)


XY = ("x", "y")
XYZ = ("x", "y", "z")


class TestEvaluate:
    def test_examples(self):
        f = P("x+y+1", XY)
        assert tropical_evaluate(f, (2, 3)) == 0
        assert tropical_evaluate(f, (-1, -4)) == -4
        assert tropical_evaluate(P("x", XY), (3, 0)) == 3
        assert tropical_evaluate(P("x", XY), (3, 0), "max") == 3

    def test_rational_point(self):
        f = P("x+y+1", XY)
        assert tropical_evaluate(f, (Fraction(1, 2), 3)) == 0
        assert tropical_evaluate(f, (Fraction(-1, 2), 3)) == Fraction(-1, 2)

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatchError):
            tropical_evaluate(P("x+y", XY), (1, 2, 3))


class TestHypersurface:
    def test_tropical_line(self):
        c = tropical_hypersurface(P("x+y+1", XY))
        assert c.fan.rays.columns() == [(-1, -1), (0, 1), (1, 0)]
        assert c.fan.lineality.ncols == 0
        assert c.multiplicities == (1, 1, 1)
        assert is_balanced(c)

    def test_quadric(self):
        c = tropical_hypersurface(P("x^2+y^2+z^2", XYZ))
        assert len(c.fan.maximal_cones) == 3
        assert c.fan.lineality.columns() == [(1, 1, 1)]
        assert c.multiplicities == (2, 2, 2)
        assert cycle_dim(c) == 2

    def test_linear_same_fan_as_quadric(self):
        cl = tropical_hypersurface(P("x+y+z", XYZ))
        cq = tropical_hypersurface(P("x^2+y^2+z^2", XYZ))
        assert cl.fan == cq.fan
        assert cl.multiplicities == (1, 1, 1)

    def test_monomial_rejected(self):
        with pytest.raises(MonomialHypersurfaceError):
            tropical_hypersurface(P("3*x^2*y", XY))

    def test_convention_duality(self):
        for text, vs in [("x+y+1", XY), ("x^2+y^2+z^2", XYZ),
                         ("x*y-1", XY), ("y^2-x^3+x", XY)]:
            mn = tropical_hypersurface(P(text, vs), "min")
            mx = tropical_hypersurface(P(text, vs), "max")
            assert mx == swap_convention(mn)

    def test_membership_oracle_sampled(self):
        rng = random.Random(23)
        for text, vs in [("x+y+1", XY), ("x*y-1", XY), ("x^2+x*y+y^2", XY),
                         ("x+y+z", XYZ), ("y^2-x^3+x", XY)]:
            f = P(text, vs)
            fan = tropical_hypersurface(f).fan
            for _ in range(300):
                w = tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 9))
                          for _ in vs)
                assert support_contains(fan, w) == \
                    optimum_attained_twice(f, w), (text, w)


class TestPrevariety:
    def test_example_dim_two(self):
        pre = tropical_prevariety([P("x+y+z", XYZ), P("x^2+y^2+z^2", XYZ)])
        assert fan_dim(pre) == 2
        assert pre == tropical_hypersurface(P("x+y+z", XYZ)).fan

    def test_single_polynomial(self):
        pre = tropical_prevariety([P("x+y+1", XY)])
        assert pre == tropical_hypersurface(P("x+y+1", XY)).fan

    def test_identical_binomial_supports(self):
        pre = tropical_prevariety([P("x+y", XY), P("x+2*y", XY)])
        assert fan_dim(pre) == 1
        assert pre.maximal_cones == ((),)
        assert pre.lineality.columns() == [(1, 1)]

    def test_monomial_propagates(self):
        with pytest.raises(MonomialHypersurfaceError):
            tropical_prevariety([P("x", XY), P("x+y", XY)])


class TestVariety:
    def test_tropical_line(self):
        c = tropical_variety(ideal(XY, (P("x+y+1", XY),)), strategy="groebner")
        assert c.fan.rays.columns() == [(-1, -1), (0, 1), (1, 0)]
        assert c.fan.lineality.ncols == 0
        assert c.fan.maximal_cones == ((0,), (1,), (2,))
        assert c.multiplicities == (1, 1, 1)
        assert cycle_dim(c) == 1

    def test_line_and_quadric(self):
        spec = ideal(XYZ, (P("x+y+z", XYZ), P("x^2+y^2+z^2", XYZ)))
        c = tropical_variety(spec, prime=False, strategy="groebner")
        assert isinstance(c, TropicalCycle)
        assert c.fan.rays.ncols == 0
        assert c.fan.lineality.columns() == [(1, 1, 1)]
        assert c.fan.maximal_cones == ((),)
        assert c.multiplicities == (2,)
        assert cycle_dim(c) == 1

    def test_binomial_lineality(self):
        c = tropical_variety(ideal(XY, (P("x*y-1", XY),)), strategy="groebner")
        assert c.fan.rays.ncols == 0
        assert c.fan.lineality.columns() == [(1, -1)]
        assert c.multiplicities == (1,)

    def test_zero_ideal_rejected(self):
        with pytest.raises(ZeroIdealError):
            tropical_variety(ideal(XY, (P("0", XY),)))

    def test_unit_ideal_rejected(self):
        with pytest.raises(UnitIdealError):
            tropical_variety(ideal(XY, (P("1", XY),)))

    def test_monomial_containing_ideal_is_empty(self):
        c = tropical_variety(ideal(XY, (P("x", XY),)))
        assert c.fan.is_empty()
        assert cycle_dim(c) == -1

    def test_max_convention(self):
        spec = ideal(XY, (P("x+y+1", XY),))
        mx = tropical_variety(spec, convention="max")
        assert mx == swap_convention(tropical_variety(spec, convention="min"))

    def test_containment_chain_sampled(self):
        spec = ideal(XYZ, (P("x+y+z", XYZ), P("x^2+y^2+z^2", XYZ)))
        variety = tropical_variety(spec, strategy="groebner")
        pre = tropical_prevariety(list(spec.generators))
        hyps = [tropical_hypersurface(g).fan for g in spec.generators]
        rng = random.Random(7)
        for _ in range(500):
            w = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 5))
                      for _ in range(3))
            in_var = support_contains(variety.fan, w)
            in_pre = support_contains(pre, w)
            if in_var:
                assert in_pre
            if in_pre:
                assert all(support_contains(h, w) for h in hyps)

    def test_exact_containment_per_cone(self):
        spec = ideal(XYZ, (P("x+y+z", XYZ), P("x^2+y^2+z^2", XYZ)))
        variety = tropical_variety(spec, strategy="groebner")
        pre = tropical_prevariety(list(spec.generators))
        from tropfan.fans import relative_interior_point
        for c in fan_cones(variety.fan):
            w = relative_interior_point(c)
            assert support_contains(pre, w)
            for g in c.rays.columns():
                assert support_contains(pre, g)
            for l in c.lineality.columns():
                assert support_contains(pre, l)


class TestPrincipalConsistency:
    def test_paths_agree(self):
        for text, vs in [("x+y+1", XY), ("x^2+y^2+z^2", XYZ), ("x*y-1", XY)]:
            spec = ideal(vs, (P(text, vs),))
            assert tropical_variety(spec, strategy="groebner") == \
                as_cycle_from_hypersurfaces(spec)


class TestMultiplicityAt:
    def test_line_cell(self):
        hv = ("h", "x", "y")
        spec = ideal(hv, (P("x+y+h", hv),))
        from tropfan.fans import cone_from_halfspaces
        # cell dual to the edge between the x and y exponents
        sigma = cone_from_halfspaces([(1, -1, 0)], [(0, 1, -1)], 3)
        assert multiplicity_at(spec, sigma) == 2 - 1

    def test_quadric_cells(self):
        hv = ("h", "x", "y", "z")
        spec = homogenize(ideal(XYZ, (P("x^2+y^2+z^2", XYZ),)))
        c = tropical_variety(ideal(XYZ, (P("x^2+y^2+z^2", XYZ),)),
                             strategy="groebner")
        assert set(c.multiplicities) == {2}

    def test_homogeneity_space_cell(self):
        spec = homogenize(ideal(XYZ, (P("x+y+z", XYZ), P("x^2+y^2+z^2", XYZ))))
        from tropfan.fans import cone_from_generators
        sigma = cone_from_generators([], [(1, 0, 0, 0), (0, 1, 1, 1)], 4)
        assert multiplicity_at(spec, sigma) == 2

    def test_non_maximal_cell_rejected(self):
        from tropfan.errors import NotZeroDimensionalError
        from tropfan.fans import cone_from_generators
        hv = ("h", "x", "y")
        spec = ideal(hv, (P("x+y+h", hv),))
        # the homogeneity line is a proper face of the maximal cells
        sigma = cone_from_generators([], [(1, 1, 1)], 3)
        with pytest.raises(NotZeroDimensionalError):
            multiplicity_at(spec, sigma)

    def test_matches_newton_edge_lengths(self):
        from tropfan.polynomials import edge_lattice_length, newton_polytope
        for text, vs in [("x+y+1", XY), ("x^3+y^3+1", XY),
                         ("y^2-x^3+x", XY), ("x^2+x*y+y^2", XY)]:
            spec = ideal(vs, (P(text, vs),))
            groebner_route = tropical_variety(spec, strategy="groebner")
            newton_route = as_cycle_from_hypersurfaces(spec)
            assert groebner_route == newton_route
            assert all(m >= 1 for m in groebner_route.multiplicities)


class TestTropicalBasis:
    def test_example_false(self):
        assert not is_tropical_basis([P("x+y+z", XYZ), P("x^2+y^2+z^2", XYZ)])

    def test_principal_always_true(self):
        assert is_tropical_basis([P("x+y+1", XY)])

    def test_linear_forms_true(self):
        assert is_tropical_basis([P("x+y", XYZ), P("y+z", XYZ)])


class TestStableIntersection:
    def test_line_times_conic(self):
        tl = tropical_variety(ideal(XYZ, (P("x+y+z", XYZ),)))
        tc = tropical_variety(ideal(XYZ, (P("x^2+y^2+z^2", XYZ),)))
        got = stable_intersection(tl, tc)
        assert got.fan.rays.ncols == 0
        assert got.fan.lineality.columns() == [(1, 1, 1)]
        assert got.fan.maximal_cones == ((),)
        assert got.multiplicities == (2,)
        assert cycle_dim(got) == 1

    def test_line_self_intersection(self):
        line = tropical_variety(ideal(XY, (P("x+y+1", XY),)))
        got = stable_intersection(line, line)
        assert got.fan.maximal_cones == ((),)
        assert got.fan.rays.ncols == 0
        assert got.fan.lineality.ncols == 0
        assert got.multiplicities == (1,)
        assert cycle_dim(got) == 0

    def test_full_space_is_identity(self):
        fs, _ = fan_from_cones(2, [full_space(2)])
        unit = TropicalCycle(fs, (1,), "min")
        line = tropical_variety(ideal(XY, (P("x+y+1", XY),)))
        assert stable_intersection(unit, line) == line
        assert stable_intersection(line, unit) == line

    def test_parallel_curves_empty(self):
        h = tropical_variety(ideal(XY, (P("x*y-1", XY),)))
        got = stable_intersection(h, h)
        assert got.fan.is_empty()
        assert got.multiplicities == ()

    def test_seed_independence(self):
        tl = tropical_variety(ideal(XYZ, (P("x+y+z", XYZ),)))
        tc = tropical_variety(ideal(XYZ, (P("x^2+y^2+z^2", XYZ),)))
        runs = {stable_intersection(tl, tc, seed=s) for s in (0, 1, 2, 99)}
        assert len(runs) == 1
        line = tropical_variety(ideal(XY, (P("x+y+1", XY),)))
        runs = {stable_intersection(line, line, seed=s) for s in (0, 5, 12)}
        assert len(runs) == 1

    def test_convention_mismatch(self):
        line = tropical_variety(ideal(XY, (P("x+y+1", XY),)))
        with pytest.raises(ConventionMismatchError):
            stable_intersection(line, swap_convention(line))

    def test_dim_mismatch(self):
        line = tropical_variety(ideal(XY, (P("x+y+1", XY),)))
        plane = tropical_variety(ideal(XYZ, (P("x+y+z", XYZ),)))
        with pytest.raises(DimMismatchError):
            stable_intersection(line, plane)

    def test_bezout_degrees(self):
        # cubic times line in the plane: 3 points counted with multiplicity
        cubic = tropical_variety(ideal(XY, (P("x^3+y^3+1", XY),)))
        line = tropical_variety(ideal(XY, (P("x+y+1", XY),)))
        got = stable_intersection(cubic, line)
        assert sum(got.multiplicities) == 3
        quad = tropical_variety(ideal(XY, (P("x^2+y^2+1", XY),)))
        got = stable_intersection(quad, line)
        assert sum(got.multiplicities) == 2

    def test_bezout_homogeneous_trinomials(self):
        # degree d trinomial curves in three variables: total weight d1*d2
        curves = {d: tropical_variety(
            ideal(XYZ, (P(f"x^{d}+y^{d}+z^{d}", XYZ),))) for d in (1, 2, 3)}
        for d1 in (1, 2, 3):
            for d2 in (1, 2, 3):
                got = stable_intersection(curves[d1], curves[d2])
                assert sum(got.multiplicities) == d1 * d2, (d1, d2)

    def test_plane_self_intersection_is_a_curve(self):
        plane = tropical_variety(ideal(XYZ, (P("x+y+z+1", XYZ),)))
        got = stable_intersection(plane, plane)
        assert cycle_dim(got) == 1
        assert got.fan.rays.columns() == [(-1, -1, -1), (0, 0, 1),
                                          (0, 1, 0), (1, 0, 0)]
        assert got.multiplicities == (1, 1, 1, 1)
        assert is_balanced(got)
        assert {stable_intersection(plane, plane, seed=s)
                for s in (1, 2, 3)} == {got}

    def test_subdivided_full_plane_identity(self):
        quads = [cone_from_generators(q, [], 2) for q in
                 [[(1, 0), (0, 1)], [(0, 1), (-1, 0)],
                  [(-1, 0), (0, -1)], [(0, -1), (1, 0)]]]
        fan, _ = fan_from_cones(2, quads)
        unit = TropicalCycle(fan, (1, 1, 1, 1), "min")
        assert stable_intersection(unit, unit) == unit

    def test_min_and_max_agree_after_swap(self):
        a = tropical_variety(ideal(XYZ, (P("x+y+z", XYZ),)))
        b = tropical_variety(ideal(XYZ, (P("x^2+y^2+z^2", XYZ),)))
        mn = stable_intersection(a, b)
        mx = stable_intersection(swap_convention(a), swap_convention(b))
        assert mx == swap_convention(mn)


class TestVarietySupportOracle:
    def test_fan_membership_matches_initial_ideal_test(self):
        # differential check bypassing the fan pipeline: membership in the
        # computed variety equals monomial-freeness of the initial ideal at
        # a fresh weight-adapted basis, on generic and wall-biased points
        from tropfan.corpus import PRIME_CORPUS
        from tropfan.groebner import (
            initial_ideal,
            is_monomial_free,
            reduced_groebner_basis,
        )
        rng = random.Random(314159)
        for entry in PRIME_CORPUS:
            spec = entry.ideal()
            spec_h = homogenize(spec)
            cycle = tropical_variety(spec, strategy="groebner")
            n = len(spec.variables)
            for _ in range(40):
                if rng.random() < 0.5:
                    w = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 4))
                              for _ in range(n))
                else:
                    w = tuple(Fraction(rng.choice([-2, -1, -1, 0, 0, 1, 1, 2]))
                              for _ in range(n))
                wh = (Fraction(0),) + w
                gb = reduced_groebner_basis(spec_h, TermOrder((wh,), "min"))
                direct = is_monomial_free(initial_ideal(gb, wh))
                assert support_contains(cycle.fan, w) == direct, (entry.name, w)


class TestTorusCurveCounts:
    # complete intersections whose torus points are unions of 1-parameter
    # subgroup translates: the cell is the diagonal line, the weight counts
    # the translates
    def test_diagonal_line(self):
        c = tropical_variety(ideal(XYZ, (P("x-y", XYZ), P("y-z", XYZ))),
                             strategy="groebner")
        assert c.fan.lineality.columns() == [(1, 1, 1)]
        assert c.fan.maximal_cones == ((),)
        assert c.multiplicities == (1,)
        assert is_balanced(c)

    def test_square_root_pair(self):
        c = tropical_variety(ideal(XYZ, (P("x^2-y^2", XYZ), P("y-z", XYZ))),
                             strategy="groebner")
        assert c.multiplicities == (2,)
        assert c.fan.lineality.columns() == [(1, 1, 1)]

    def test_cube_root_triple(self):
        c = tropical_variety(ideal(XYZ, (P("x^3-y^3", XYZ), P("y-z", XYZ))),
                             strategy="groebner")
        assert c.multiplicities == (3,)

    def test_plane_section_of_conic(self):
        c = tropical_variety(
            ideal(XYZ, (P("x-y", XYZ), P("x^2+y^2+z^2", XYZ))),
            strategy="groebner")
        assert c.multiplicities == (2,)
        assert is_balanced(c)

    def test_quadric_pair_three_lines(self):
        c = tropical_variety(
            ideal(XYZ, (P("x^2-y*z", XYZ), P("x*y-z^2", XYZ))),
            prime=False, strategy="groebner")
        assert c.multiplicities == (3,)
        assert c.fan.lineality.columns() == [(1, 1, 1)]
        assert is_balanced(c)


class TestNonPureVariety:
    def test_plane_union_line_is_weighted_fan(self):
        # product of a plane ideal and a vertical-line ideal: the tropical
        # variety is a 2-dimensional fan plus one isolated downward ray
        from tropfan.cycles import WeightedFan
        from tropfan.errors import NotPureError
        g1 = P("(x+y+z+1)*(x-2)", XYZ)
        g2 = P("(x+y+z+1)*(y-3)", XYZ)
        c = tropical_variety(ideal(XYZ, (g1, g2)), prime=False,
                             strategy="groebner")
        assert isinstance(c, WeightedFan)
        dims = sorted({cone.dim for cone in fan_cones(c.fan)})
        assert dims == [1, 2]
        assert support_contains(c.fan, (0, 0, -1))
        assert support_contains(c.fan, (0, 0, 1))
        assert not support_contains(c.fan, (1, 2, 3))
        with pytest.raises(NotPureError):
            is_balanced(c)


class TestVarietyBalancing:
    def test_small_cases_balanced(self):
        cases = [
            (XY, ("x+y+1",)),
            (XYZ, ("x+y+z",)),
            (XY, ("x*y-1",)),
            (XYZ, ("x+y+z", "x^2+y^2+z^2")),
        ]
        for vs, texts in cases:
            spec = ideal(vs, tuple(P(t, vs) for t in texts))
            c = tropical_variety(spec, strategy="groebner")
            assert is_balanced(c), texts
