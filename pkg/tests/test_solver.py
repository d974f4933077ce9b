"""Tests for the extremal solver, its certificate, and the kernel inverse."""

import numpy as np
import pytest

from bergex.poly import as_poly, degree_cap, monomial
from bergex.solver import (
    DegreeCapError,
    ExtremalProblem,
    NonConvergenceError,
    extremality_residual,
    gradient_norm_p,
    kernel_from_extremal,
    solve_extremal,
    solve_truncated_family,
)
from bergex.spaces import bergman_inner, bergman_norm_even, functional_value


def random_poly(rng, degree):
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return as_poly(c)


class TestProblemValidation:
    def test_odd_p_rejected(self):
        with pytest.raises(ValueError):
            ExtremalProblem(p=3, kernel=as_poly([1.0]), degree=4)

    def test_p_below_two_rejected(self):
        with pytest.raises(ValueError):
            ExtremalProblem(p=0, kernel=as_poly([1.0]), degree=4)

    def test_zero_kernel_rejected(self):
        with pytest.raises(ValueError):
            ExtremalProblem(p=4, kernel=as_poly([]), degree=4)

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            ExtremalProblem(p=4, kernel=as_poly([1.0]), degree=-1)

    def test_bad_tolerance_rejected(self):
        with pytest.raises(ValueError):
            ExtremalProblem(p=4, kernel=as_poly([1.0]), degree=4, tolerance=0.0)

    def test_kernel_vanishing_on_working_space_rejected(self):
        # k = z^5 truncated to P_2 leaves no functional at all
        with pytest.raises(ValueError):
            ExtremalProblem(p=4, kernel=monomial(5), degree=2)

    def test_degree_below_kernel_degree_warns(self):
        with pytest.warns(UserWarning):
            ExtremalProblem(p=4, kernel=as_poly([1.0, 0.0, 0.0, 1.0]), degree=1)

    def test_degree_cap_precheck(self):
        kernel = as_poly([1.0, 1.0])
        with degree_cap(64):
            with pytest.raises(DegreeCapError):
                solve_extremal(ExtremalProblem(p=4, kernel=kernel, degree=40))


class TestClosedForms:
    def test_p2_closed_form(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            k = random_poly(rng, 8)
            sol = solve_extremal(ExtremalProblem(p=2, kernel=k, degree=12))
            expected = k.coeffs / bergman_norm_even(k, 2)
            np.testing.assert_allclose(sol.F.padded(9), expected, atol=1e-10)

    def test_p2_one_plus_z(self):
        k = as_poly([1.0, 1.0])
        sol = solve_extremal(ExtremalProblem(p=2, kernel=k, degree=8))
        expected = np.array([1.0, 1.0]) / np.sqrt(1.5)
        np.testing.assert_allclose(sol.F.padded(2), expected, atol=1e-10)

    def test_constant_kernel_any_p(self):
        for p in (2, 4, 6):
            sol = solve_extremal(ExtremalProblem(p=p, kernel=as_poly([2.0]),
                                                 degree=6))
            np.testing.assert_allclose(sol.F.padded(1), [1.0], atol=1e-10)
            assert sol.residual_max <= 1e-10

    def test_monomial_kernel_p4(self):
        sol = solve_extremal(ExtremalProblem(p=4, kernel=monomial(1), degree=8))
        expected = np.zeros(2)
        expected[1] = 3.0 ** 0.25
        np.testing.assert_allclose(sol.F.padded(2), expected, atol=1e-8)


@pytest.fixture(scope="module")
def solution():
    """A certified solve for a complex cubic kernel.

    The degree is large enough that the optimality residual clears 1e-8
    over twice the truncation degree; this kernel's coefficient tail
    decays slowly, so smaller degrees leave a visible gap.
    """
    kernel = as_poly([1.0, 0.5, -0.25, 0.1j])
    return solve_extremal(ExtremalProblem(p=4, kernel=kernel, degree=128,
                                          tolerance=1e-11))


class TestSolutionInvariants:
    def test_unit_norm(self, solution):
        assert abs(bergman_norm_even(solution.F, 4) - 1.0) <= 1e-10

    def test_phi_norm_real_positive(self, solution):
        value = functional_value(solution.kernel, solution.F)
        assert value.real > 0
        assert abs(value.imag) <= 1e-10

    def test_certificate(self, solution):
        assert solution.residual_max <= 1e-8
        assert solution.certified

    def test_trace_monotone_objective(self, solution):
        values = [v for _, v, _ in solution.trace]
        # descent method: objective never increases beyond round-off
        for earlier, later in zip(values, values[1:]):
            assert later <= earlier * (1 + 1e-12)

    def test_residuals_recomputable(self, solution):
        res = extremality_residual(solution.F, solution.kernel, 4,
                                   solution.phi_norm, 2 * solution.degree)
        assert float(np.max(np.abs(res))) == pytest.approx(
            solution.residual_max, rel=1e-12, abs=1e-15
        )


class TestGradient:
    def test_constant_example(self):
        g = gradient_norm_p(as_poly([1.0]), 4)
        assert g[0] == pytest.approx(2.0, rel=1e-14)

    def test_monomial_quadratic_form(self):
        g = gradient_norm_p(monomial(1), 2)
        assert g[1] == pytest.approx(0.5, rel=1e-14)

    def test_matches_bergman_inner_definition(self):
        from bergex.poly import multiply, power

        rng = np.random.default_rng(5)
        f = random_poly(rng, 5)
        g = gradient_norm_p(f, 4)
        u, v = power(f, 2), power(f, 1)
        for m in range(len(f.coeffs)):
            direct = 2.0 * bergman_inner(u, multiply(monomial(m), v))
            assert g[m] == pytest.approx(direct, rel=1e-12)

    def test_finite_difference_match(self):
        rng = np.random.default_rng(17)
        f = random_poly(rng, 8)
        g = gradient_norm_p(f, 4)
        h = 1e-5
        for m in range(len(f.coeffs)):
            re_bump = f + monomial(m, h)
            re_drop = f + monomial(m, -h)
            im_bump = f + monomial(m, 1j * h)
            im_drop = f + monomial(m, -1j * h)
            d_re = (bergman_norm_even(re_bump, 4) ** 4
                    - bergman_norm_even(re_drop, 4) ** 4) / (2 * h)
            d_im = (bergman_norm_even(im_bump, 4) ** 4
                    - bergman_norm_even(im_drop, 4) ** 4) / (2 * h)
            # Wirtinger: d/d conj(a) = (d/d Re + i d/d Im) / 2
            fd = 0.5 * (d_re + 1j * d_im)
            assert abs(fd - g[m]) <= 1e-6 * max(1.0, abs(g[m]))

    def test_zero_input(self):
        assert len(gradient_norm_p(as_poly([]), 4)) == 0

    def test_odd_p_rejected(self):
        with pytest.raises(ValueError):
            gradient_norm_p(as_poly([1.0]), 3)


class TestExtremalityResidual:
    def test_true_extremal_constant(self):
        res = extremality_residual(as_poly([1.0]), as_poly([1.0]), 4, 1.0, 6)
        np.testing.assert_allclose(np.abs(res), 0.0, atol=1e-15)

    def test_non_extremal_detection(self):
        # F=1 is not extremal for k=z; the j=1 residual is -phi(z)/phi_norm
        # and the j=0 residual is the unmatched unit pairing of F with itself
        res = extremality_residual(as_poly([1.0]), monomial(1), 4, 1.0, 3)
        assert res[1] == pytest.approx(-0.5, abs=1e-15)
        assert res[0] == pytest.approx(1.0, abs=1e-15)

    def test_p2_exact_at_closed_form(self):
        rng = np.random.default_rng(23)
        k = random_poly(rng, 6)
        F = as_poly(k.coeffs / bergman_norm_even(k, 2))
        phi_norm = functional_value(k, F).real
        res = extremality_residual(F, k, 2, phi_norm, 12)
        assert float(np.max(np.abs(res))) <= 1e-13


class TestKernelRoundTrip:
    def test_constant(self):
        k = kernel_from_extremal(as_poly([1.0]), 4, 3)
        assert k.degree == 0
        assert k.coeffs[0].real > 0

    def test_scaled_monomial(self):
        F = as_poly([0.0, 3.0 ** 0.25])
        k = kernel_from_extremal(F, 4, 3)
        # proportional to z: the only surviving coefficient sits at j=1
        assert abs(k.coeff(0)) <= 1e-14
        assert k.coeff(1).real > 0
        assert abs(k.coeff(2)) <= 1e-14

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            kernel_from_extremal(as_poly([]), 4, 3)

    def test_round_trip_cosine(self):
        rng = np.random.default_rng(31)
        for _ in range(3):
            k = random_poly(rng, 5)
            sol = solve_extremal(ExtremalProblem(p=4, kernel=k, degree=20,
                                                 tolerance=1e-12))
            rec = kernel_from_extremal(sol.F, 4, 5)
            a, b = rec.padded(6), k.padded(6)
            cosine = np.real(np.vdot(a, b)) / (
                np.linalg.norm(a) * np.linalg.norm(b)
            )
            assert cosine >= 1.0 - 1e-6


class TestSolverProperties:
    def test_uniqueness_from_random_starts(self):
        kernel = as_poly([1.0, 0.5, 0.25])
        problem = ExtremalProblem(p=4, kernel=kernel, degree=10,
                                  tolerance=1e-11)
        reference = solve_extremal(problem)
        rng = np.random.default_rng(41)
        for _ in range(16):
            start = random_poly(rng, 10)
            sol = solve_extremal(problem, start=start)
            gap = np.max(np.abs(sol.F.padded(11) - reference.F.padded(11)))
            assert gap <= 1e-6

    def test_scaling_law(self):
        kernel = as_poly([1.0, -0.5, 0.2j])
        base = solve_extremal(ExtremalProblem(p=4, kernel=kernel, degree=12))
        scaled = solve_extremal(ExtremalProblem(p=4, kernel=3.5 * kernel,
                                                degree=12))
        np.testing.assert_allclose(scaled.F.padded(13), base.F.padded(13),
                                   atol=1e-8)
        assert scaled.phi_norm == pytest.approx(3.5 * base.phi_norm, rel=1e-9)

    def test_rotation_equivariance(self):
        kernel = as_poly([1.0, 0.7, 0.3])
        rho = 0.83
        twist = np.exp(-1j * rho * np.arange(3))
        rotated = as_poly(kernel.coeffs * twist)
        base = solve_extremal(ExtremalProblem(p=4, kernel=kernel, degree=12))
        rot = solve_extremal(ExtremalProblem(p=4, kernel=rotated, degree=12))
        expected = base.F.padded(13) * np.exp(-1j * rho * np.arange(13))
        np.testing.assert_allclose(rot.F.padded(13), expected, atol=1e-8)

    def test_midpoint_convexity_on_slice(self):
        kernel = as_poly([1.0, 0.5])
        rng = np.random.default_rng(47)
        degree = 8
        k_pad = kernel.padded(degree + 1)
        weights = 1.0 / (np.arange(degree + 1) + 1.0)

        def feasible(seed_vec):
            # shift along the kernel direction so that phi(f) = 1 exactly
            value = np.sum(seed_vec * np.conj(k_pad) * weights)
            base = k_pad / np.sum(np.abs(k_pad) ** 2 * weights)
            return seed_vec + (1.0 - value) * base

        for _ in range(10):
            f1 = feasible(rng.standard_normal(degree + 1)
                          + 1j * rng.standard_normal(degree + 1))
            f2 = feasible(rng.standard_normal(degree + 1)
                          + 1j * rng.standard_normal(degree + 1))
            mid = 0.5 * (f1 + f2)
            lhs = bergman_norm_even(as_poly(mid), 4) ** 4
            rhs = 0.5 * (bergman_norm_even(as_poly(f1), 4) ** 4
                         + bergman_norm_even(as_poly(f2), 4) ** 4)
            assert lhs <= rhs + 1e-10

    def test_non_convergence_carries_trace(self):
        kernel = as_poly([1.0, 1.0, 0.5])
        with pytest.raises(NonConvergenceError) as exc_info:
            solve_extremal(ExtremalProblem(p=4, kernel=kernel, degree=16,
                                           tolerance=1e-12, max_iterations=3))
        trace = exc_info.value.trace
        assert len(trace) == 3
        assert all(len(entry) == 3 for entry in trace)

    def test_unreachable_tolerance_raises(self):
        kernel = as_poly([1.0, 1.0])
        with pytest.raises(NonConvergenceError):
            solve_extremal(ExtremalProblem(p=4, kernel=kernel, degree=12,
                                           tolerance=1e-30))


class TestTruncatedFamily:
    def test_constant_kernel(self):
        entries = solve_truncated_family(as_poly([1.0]), 4, [2, 4, 8])
        for entry in entries:
            assert entry.error is None
            np.testing.assert_allclose(entry.solution.F.padded(1), [1.0],
                                       atol=1e-10)

    def test_p2_truncated_closed_form(self):
        rng = np.random.default_rng(53)
        k = random_poly(rng, 6)
        entries = solve_truncated_family(k, 2, [2, 4, 6])
        for entry in entries:
            n = entry.degree
            kn = as_poly(k.coeffs[:n + 1])
            expected = kn.coeffs / bergman_norm_even(kn, 2)
            np.testing.assert_allclose(
                entry.solution.F.padded(n + 1),
                np.concatenate([expected, np.zeros(n + 1 - len(expected))]),
                atol=1e-10,
            )

    def test_cauchy_differences_decrease(self):
        from bergex.spaces import hardy_norm_even

        k = as_poly((np.arange(33) + 1.0) ** -2.0 + 0j)
        entries = solve_truncated_family(k, 4, [8, 16, 32], tolerance=1e-12)
        f8, f16, f32 = (e.solution.F for e in entries)
        later = hardy_norm_even(f32 - f16, 4)
        earlier = hardy_norm_even(f16 - f8, 4)
        assert later < earlier

    def test_error_isolation(self):
        # degree 0 slot: kernel z truncates to zero there, a per-level error
        entries = solve_truncated_family(monomial(1), 4, [0, 4])
        assert entries[0].error is not None
        assert entries[0].solution is None
        assert entries[1].error is None
        assert entries[1].solution is not None
