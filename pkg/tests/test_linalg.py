from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropfan.errors import DimMismatchError, NotFullRankError, ZeroVectorError
from tropfan.linalg import (
    IntMatrix,
    cone_feasible,
    det,
    hermite_basis,
    hermite_normal_form,
    hnf_completion,
    int_inverse,
    integer_kernel_basis,
    invariant_factors,
    lattice_from_generators,
    lattice_index,
    nonneg_solution_exists,
    primitive_vector,
    rational_rank,
    saturate_lattice,
    smith_normal_form,
    solve_rational,
)


def cofactor_det(m):
    """Independent determinant oracle by Laplace expansion."""
    n = m.nrows
    if n == 0:
        return 1
    if n == 1:
        return m.entries[0][0]
    total = 0
    for j in range(n):
        minor = IntMatrix.from_rows(
            [row[:j] + row[j + 1:] for row in m.entries[1:]], n - 1)
        sign = -1 if j % 2 else 1
        total += sign * m.entries[0][j] * cofactor_det(minor)
    return total


small_matrices = st.integers(1, 3).flatmap(
    lambda n: st.integers(1, 3).flatmap(
        lambda k: st.lists(
            st.lists(st.integers(-9, 9), min_size=k, max_size=k),
            min_size=n, max_size=n)))


class TestHermite:
    def test_identity(self):
        m = IntMatrix.identity(2)
        h, u = hermite_normal_form(m)
        assert h.entries == m.entries
        assert u.entries == m.entries

    def test_upper_triangular_example(self):
        m = IntMatrix.from_rows([[2, 4], [0, 3]])
        h, u = hermite_normal_form(m)
        assert (m @ u).entries == h.entries
        assert abs(cofactor_det(u)) == 1
        assert {h.entries[0][0], h.entries[1][1]} == {2, 3}

    def test_zero_matrix(self):
        m = IntMatrix.zero(2, 2)
        h, u = hermite_normal_form(m)
        assert h.is_zero()
        assert u.entries == IntMatrix.identity(2).entries

    @settings(max_examples=60, deadline=None)
    @given(small_matrices)
    def test_mu_equals_h_and_unimodular(self, rows):
        m = IntMatrix.from_rows(rows)
        h, u = hermite_normal_form(m)
        assert (m @ u).entries == h.entries
        assert abs(cofactor_det(u)) == 1

    @settings(max_examples=40, deadline=None)
    @given(small_matrices)
    def test_canonical_for_column_lattice(self, rows):
        # shuffling or doubling generators must not change the HNF basis
        m = IntMatrix.from_rows(rows)
        doubled = IntMatrix.from_columns(
            m.columns() + m.columns(), m.nrows)
        assert hermite_basis(m).entries == hermite_basis(doubled).entries


class TestSmith:
    def test_diag_2_3(self):
        m = IntMatrix.from_rows([[2, 0], [0, 3]])
        d, p, q = smith_normal_form(m)
        assert (p @ m @ q).entries == d.entries
        # gcd/lcm oracle for the invariant factors
        assert invariant_factors(m) == (1, 6)

    def test_identity(self):
        m = IntMatrix.identity(3)
        d, _, _ = smith_normal_form(m)
        assert d.entries == m.entries

    def test_det_two(self):
        m = IntMatrix.from_rows([[1, 1], [1, -1]])
        d, p, q = smith_normal_form(m)
        assert (p @ m @ q).entries == d.entries
        assert d.entries == ((1, 0), (0, 2))
        assert abs(cofactor_det(m)) == 2

    @settings(max_examples=60, deadline=None)
    @given(small_matrices)
    def test_decomposition_and_chain(self, rows):
        m = IntMatrix.from_rows(rows)
        d, p, q = smith_normal_form(m)
        assert (p @ m @ q).entries == d.entries
        assert abs(cofactor_det(p)) == 1
        assert abs(cofactor_det(q)) == 1
        diag = [d.entries[i][i] for i in range(min(d.nrows, d.ncols))]
        for i in range(d.nrows):
            for j in range(d.ncols):
                if i != j:
                    assert d.entries[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                    min_size=3, max_size=3))
    def test_product_of_factors_is_det(self, rows):
        m = IntMatrix.from_rows(rows)
        dd = abs(cofactor_det(m))
        facs = invariant_factors(m)
        prod = 1
        for f in facs:
            prod *= f
        if dd != 0:
            assert prod == dd


class TestPrimitive:
    def test_examples(self):
        assert primitive_vector((-2, -2)) == (-1, -1)
        assert primitive_vector((1, 0)) == (1, 0)
        assert primitive_vector((6, -9, 3)) == (2, -3, 1)

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            primitive_vector((0, 0, 0))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=4),
           st.integers(1, 5))
    def test_scaling_invariance(self, v, k):
        if all(x == 0 for x in v):
            return
        assert primitive_vector(tuple(k * x for x in v)) == \
            primitive_vector(tuple(v))


class TestLatticeIndex:
    def test_unit_axes(self):
        l1 = lattice_from_generators(2, [(1, 0)])
        l2 = lattice_from_generators(2, [(0, 1)])
        assert lattice_index(l1, l2) == 1

    def test_det_two(self):
        l1 = lattice_from_generators(2, [(1, 1)])
        l2 = lattice_from_generators(2, [(1, -1)])
        assert lattice_index(l1, l2) == 2

    def test_full_lattice(self):
        l1 = lattice_from_generators(2, [(1, 0), (0, 1)])
        l2 = lattice_from_generators(2, [(5, 7)])
        assert lattice_index(l1, l2) == 1

    def test_symmetry(self):
        l1 = lattice_from_generators(3, [(1, 2, 0), (0, 3, 1)])
        l2 = lattice_from_generators(3, [(2, 0, 5)])
        assert lattice_index(l1, l2) == lattice_index(l2, l1)

    def test_not_full_rank(self):
        l1 = lattice_from_generators(2, [(1, 1)])
        l2 = lattice_from_generators(2, [(2, 2)])
        with pytest.raises(NotFullRankError):
            lattice_index(l1, l2)


class TestSolveRational:
    def test_identity(self):
        x = solve_rational([[1, 0], [0, 1]], (Fraction(3, 2), Fraction(-1)))
        assert x == (Fraction(3, 2), Fraction(-1))

    def test_underdetermined(self):
        x = solve_rational([[1, 1]], (5,))
        assert x is not None
        assert sum(x) == 5

    def test_inconsistent(self):
        assert solve_rational([[1], [1]], (0, 1)) is None


def brute_force_2d_membership(rays, lineality, target):
    """Independent oracle for 2-D cone membership: solve every generator
    pair exactly for nonnegative ray coefficients."""
    gens = []
    for r in rays:
        gens.append((r, False))
    for l in lineality:
        gens.append((l, True))
        gens.append((tuple(-x for x in l), True))
    if all(x == 0 for x in target):
        return True
    for i, (g1, free1) in enumerate(gens):
        # single generator
        sol = solve_rational([[g1[0]], [g1[1]]], target)
        if sol is not None and (free1 or sol[0] >= 0):
            return True
        for g2, free2 in gens[i + 1:]:
            a = [[g1[0], g2[0]], [g1[1], g2[1]]]
            sol = solve_rational(a, target)
            if sol is None:
                continue
            if (free1 or sol[0] >= 0) and (free2 or sol[1] >= 0):
                return True
    return False


class TestConeFeasible:
    def test_quadrant(self):
        rays = IntMatrix.from_columns([(1, 0), (0, 1)], 2)
        lin = IntMatrix.from_columns([], 2)
        assert cone_feasible(rays, lin, (2, 3))
        assert not cone_feasible(rays, lin, (-1, 0))

    def test_with_lineality(self):
        rays = IntMatrix.from_columns([(1, 1)], 2)
        lin = IntMatrix.from_columns([(1, -1)], 2)
        # (0,2) = 1*(1,1) + (-1)*(1,-1)
        assert cone_feasible(rays, lin, (0, 2))

    def test_dim_mismatch(self):
        rays = IntMatrix.from_columns([(1, 0)], 2)
        lin = IntMatrix.from_columns([], 2)
        with pytest.raises(DimMismatchError):
            cone_feasible(rays, lin, (1, 0, 0))

    def test_grid_agreement_with_brute_force(self):
        cones = [
            ([(1, 0), (0, 1)], []),
            ([(1, 2), (2, -1)], []),
            ([(-1, -1)], []),
            ([(1, 1)], [(1, -1)]),
            ([], [(2, 3)]),
            ([(3, 1), (1, 3)], []),
        ]
        half = Fraction(1, 2)
        grid = [Fraction(n, 2) for n in range(-10, 11)]
        assert grid[0] == -5 and grid[-1] == 5 and grid[1] - grid[0] == half
        for ray_list, lin_list in cones:
            rays = IntMatrix.from_columns(ray_list, 2)
            lin = IntMatrix.from_columns(lin_list, 2)
            for x in grid:
                for y in grid:
                    got = cone_feasible(rays, lin, (x, y))
                    want = brute_force_2d_membership(ray_list, lin_list, (x, y))
                    assert got == want, (ray_list, lin_list, x, y)


class TestLatticeHelpers:
    def test_integer_kernel(self):
        k = integer_kernel_basis(IntMatrix.from_rows([[1, 1, 1]]))
        assert k.ncols == 2
        for col in k.columns():
            assert sum(col) == 0

    def test_saturation(self):
        s = saturate_lattice(IntMatrix.from_columns([(2, 2, 0), (0, 0, 3)], 3))
        assert s.columns() == [(1, 1, 0), (0, 0, 1)]

    def test_completion_unimodular(self):
        b = IntMatrix.from_columns([(1, 1, 1)], 3)
        v = hnf_completion(b)
        assert abs(cofactor_det(v)) == 1
        assert v.column(0) == (1, 1, 1)

    def test_int_inverse(self):
        m = IntMatrix.from_rows([[1, 2], [0, 1]])
        inv = int_inverse(m)
        assert (m @ inv).entries == IntMatrix.identity(2).entries

    def test_rank(self):
        assert rational_rank([[1, 2], [2, 4]]) == 1
        assert rational_rank([[1, 0], [0, 1]]) == 2

    def test_nonneg_infeasible(self):
        assert not nonneg_solution_exists([[1, 1]], (-1,))
        assert nonneg_solution_exists([[1, -1]], (-1,))

    def test_det_oracle_agreement(self):
        m = IntMatrix.from_rows([[3, 1, 2], [0, -2, 5], [7, 1, 1]])
        assert det(m) == cofactor_det(m)
