"""Solver for the linear extremal problem over the Bergman space A^p.

For an even integer p and a polynomial kernel k representing the
functional phi(f) = integral_D f conj(k) dsigma, the problem solved here
is

    minimize ||f||_{A^p}^p  over  {f in P_n : phi(f) = 1},

whose normalized minimizer F = f / ||f|| maximizes Re phi on the unit
sphere of P_n. The two real constraints Re phi(f) = 1, Im phi(f) = 0 are
eliminated by an orthogonal parameterization of the affine slice, and the
reduced problem (smooth and strictly convex because p is even) is
minimized by BFGS with a backtracking line search.

Everything the optimizer touches is exact coefficient arithmetic: with
s = p/2, u = f^s and v = f^{s-1}, the Wirtinger gradient of the objective
is

    d/d conj(a_j) ||f||_p^p = s * <u, z^j v>_A = s * sum_t u_{t+j} conj(v_t)/(t+j+1),

a single weighted cross-correlation per iteration. The same pairings at
the optimum reproduce the extremality characterization

    integral_D z^j F^{s-1} conj(F)^s dsigma = phi(z^j) / ||phi||,

which is what ``extremality_residual`` certifies and what
``kernel_from_extremal`` inverts.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import minimize
from scipy.special import roots_legendre

from ._backend import xcorr
from .poly import (
    AnalyticPoly,
    DegreeCapError,
    get_max_degree,
    power,
    taylor_truncate,
)
from .spaces import bergman_norm_even, functional_value

DEFAULT_TOLERANCE = 1e-10
DEFAULT_CERTIFICATE_TOL = 1e-8
DEFAULT_MAX_ITERATIONS = 2000

# Extra iterations after the tolerance is met. The coefficient tails of
# F^{p/2} sit at the level of the reduced gradient, so pushing the
# gradient to its float floor buys the certificates two extra digits at
# negligible cost.
_POLISH_BUDGET = 30


class NonConvergenceError(RuntimeError):
    """Solver failed to meet tolerance; carries the iteration trace."""

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class ExtremalProblem:
    """One solve: exponent p, kernel k, working degree n, and tolerances."""

    p: int
    kernel: AnalyticPoly
    degree: int
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if self.p < 2 or self.p % 2 != 0:
            raise ValueError(f"p must be an even integer >= 2, got {self.p}")
        if self.kernel.is_zero():
            raise ValueError("kernel must not be identically zero")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if taylor_truncate(self.kernel, self.degree).is_zero():
            raise ValueError(
                "kernel vanishes on the working space P_n; raise the degree"
            )
        if self.degree < self.kernel.degree:
            warnings.warn(
                "working degree below kernel degree: the functional is "
                "truncated to P_n",
                stacklevel=2,
            )


@dataclass(frozen=True)
class ExtremalSolution:
    """Certified output of a solve.

    ``phi_norm`` is the norm of the functional restricted to P_n (it
    approaches the full-space norm from below as n grows). ``residual_max``
    is the largest extremality-characterization residual over the
    monomials z^j, j = 0..2n.
    """

    F: AnalyticPoly
    phi_norm: float
    residual_max: float
    iterations: int
    trace: tuple
    p: int
    kernel: AnalyticPoly
    degree: int

    @property
    def certified(self):
        return self.residual_max <= DEFAULT_CERTIFICATE_TOL


def _pairings(F, p, count):
    """<u, z^j v>_A for j = 0..count-1, with u = F^{p/2}, v = F^{p/2-1}."""
    s = p // 2
    u = power(F, s).coeffs
    v = power(F, s - 1).coeffs
    wu = u / (np.arange(len(u)) + 1.0)
    if len(wu) < count:
        wu = np.concatenate([wu, np.zeros(count - len(wu), dtype=complex)])
    out = xcorr(wu, v)[:count]
    if len(out) < count:
        out = np.concatenate([out, np.zeros(count - len(out), dtype=complex)])
    return out


def gradient_norm_p(f, p):
    """Wirtinger gradient of ||f||_{A^p}^p with respect to conj(a_j).

    Component j equals (p/2) * <f^{p/2}, z^j f^{p/2-1}>_A. Exact in
    coefficients; the solver consumes the same expression through its
    reduced parameterization.
    """
    if p < 2 or p % 2 != 0:
        raise ValueError("p must be an even integer >= 2")
    if f.is_zero():
        return np.zeros(0, dtype=complex)
    s = p // 2
    return s * _pairings(f, p, len(f.coeffs))


def extremality_residual(F, k, p, phi_norm, max_test_degree):
    """Characterization residuals against the monomials z^j.

    Entry j is integral_D z^j F^{s-1} conj(F)^s dsigma - phi(z^j)/phi_norm
    for j = 0..max_test_degree, all integrals exact in coefficients. For
    a true extremal function every entry vanishes; the maximum modulus is
    the certificate the solver reports.
    """
    count = max_test_degree + 1
    pair = np.conj(_pairings(F, p, count))
    c = k.padded(count)
    rhs = np.conj(c) / ((np.arange(count) + 1.0) * phi_norm)
    return pair - rhs


def kernel_from_extremal(F, p, out_degree):
    """Recover the representing kernel of a unit-norm extremal function.

    Inverts the characterization: c_j = (j+1) * conj(pairing_j) with the
    normalization ||phi|| = 1. The kernel of the original problem is this
    one up to a positive scalar.
    """
    if F.is_zero():
        raise ValueError("extremal function must not be zero")
    pair = _pairings(F, p, out_degree + 1)
    c = (np.arange(out_degree + 1) + 1.0) * pair
    return AnalyticPoly(c)


def _reduced_setup(c_hat, n):
    """Affine-slice parameterization x = x0 + Z y for the two constraints.

    Real coordinates are x = (Re a, Im a). The rows of A encode
    Re phi(f) = 1 and Im phi(f) = 0 for the unit-normalized kernel; they
    are orthogonal with equal norms, so the least-squares particular
    point and the orthonormal null basis are well conditioned.
    """
    n1 = n + 1
    w = 1.0 / (np.arange(n1) + 1.0)
    A = np.zeros((2, 2 * n1))
    A[0, :n1] = c_hat.real * w
    A[0, n1:] = c_hat.imag * w
    A[1, :n1] = -c_hat.imag * w
    A[1, n1:] = c_hat.real * w
    Z = null_space(A)
    x0 = A.T @ np.linalg.solve(A @ A.T, np.array([1.0, 0.0]))
    return A, Z, x0


def solve_extremal(problem, start=None):
    """Solve the extremal problem over P_n and certify the result.

    Returns an ``ExtremalSolution`` whose F has unit A^p norm and whose
    phi_norm equals Re phi(F) for the original kernel. Raises
    ``NonConvergenceError`` (trace attached) if the reduced gradient
    cannot be brought below the tolerance. Once the tolerance is met a
    bounded polish phase keeps iterating toward the gradient's float
    floor and the best iterate seen is returned.

    ``start`` optionally seeds the iteration with a candidate polynomial;
    it is orthogonally projected onto the feasible affine slice, so any
    polynomial of degree <= n works. The default start is the normalized
    truncated kernel, which is already optimal for p = 2. The minimized
    objective is strictly convex on the slice, so every start reaches the
    same solution.
    """
    p, n = problem.p, problem.degree
    s = p // 2
    n1 = n + 1

    if s * n > get_max_degree():
        raise DegreeCapError(
            f"solving at degree {n} with p={p} forms powers of degree "
            f"{s * n}, above the cap {get_max_degree()}; raise it with "
            "set_max_degree or the degree_cap context manager"
        )

    c = problem.kernel.padded(n1)
    # Work with the A^2-normalized kernel so objective and gradient are
    # O(1) regardless of the caller's kernel scale.
    knorm = float(np.sqrt(np.sum(np.abs(c) ** 2 / (np.arange(n1) + 1.0))))
    c_hat = c / knorm
    _, Z, x0 = _reduced_setup(c_hat, n)

    idx = None

    def objective_and_gradient(y):
        nonlocal idx
        x = x0 + Z @ y
        a = x[:n1] + 1j * x[n1:]
        u = power(AnalyticPoly(a), s).coeffs
        v = power(AnalyticPoly(a), s - 1).coeffs
        if idx is None or len(idx) != len(u):
            idx = np.arange(len(u)) + 1.0
        wu = u / idx[:len(u)]
        value = float(np.real(np.sum(u * np.conj(wu))))
        g = s * xcorr(wu, v)[:n1]
        if len(g) < n1:
            g = np.concatenate([g, np.zeros(n1 - len(g), dtype=complex)])
        gx = np.concatenate([2.0 * g.real, 2.0 * g.imag])
        return value, Z.T @ gx

    # Default start: the normalized truncated kernel, projected onto the
    # slice. For p = 2 that projection is already the optimum.
    if start is None:
        x_init = np.concatenate([c_hat.real, c_hat.imag])
    else:
        a_init = start.padded(n1)
        x_init = np.concatenate([a_init.real, a_init.imag])
    y = Z.T @ (x_init - x0)

    value, grad = objective_and_gradient(y)
    dim = len(y)
    H = np.eye(dim)
    scaled = False
    trace = []
    converged = False
    iterations = 0
    best_y, best_gnorm = y, np.inf
    polish_left = _POLISH_BUDGET

    for it in range(problem.max_iterations):
        iterations = it
        gnorm = float(np.linalg.norm(grad))
        trace.append((it, value, gnorm))
        if gnorm < best_gnorm:
            best_y, best_gnorm = y, gnorm
        if gnorm <= problem.tolerance:
            converged = True
            if gnorm <= problem.tolerance * 1e-3 or polish_left == 0:
                break
            polish_left -= 1

        d = -H @ grad
        slope = float(grad @ d)
        if slope >= 0.0:
            # curvature information went bad; restart from steepest descent
            H = np.eye(dim)
            d = -grad
            slope = float(grad @ d)

        t = 1.0
        accepted = False
        for _ in range(80):
            new_value, new_grad = objective_and_gradient(y + t * d)
            # Armijo, with an absolute-floor escape: near the optimum the
            # predicted decrease is below float resolution and equality
            # within round-off counts as acceptance.
            if new_value <= value + 1e-4 * t * slope or new_value <= value * (1 + 1e-15):
                accepted = True
                break
            t *= 0.5
            if t < 1e-16:
                break
        if not accepted:
            if converged:
                break
            raise NonConvergenceError(
                f"line search stalled at iteration {it} "
                f"(gradient norm {gnorm:.3e}, tolerance {problem.tolerance:.1e})",
                tuple(trace),
            )

        step = t * d
        y_diff = new_grad - grad
        sy = float(step @ y_diff)
        if not scaled and sy > 0:
            # initial inverse-Hessian scale from the first curvature pair
            H *= sy / float(y_diff @ y_diff)
            scaled = True
        if sy > 1e-12 * np.linalg.norm(step) * np.linalg.norm(y_diff):
            rho = 1.0 / sy
            Hy = H @ y_diff
            H -= rho * (np.outer(step, Hy) + np.outer(Hy, step))
            H += (rho * rho * float(y_diff @ Hy) + rho) * np.outer(step, step)

        y = y + step
        value, grad = objective_and_gradient(y)

    if not converged:
        raise NonConvergenceError(
            f"no convergence in {problem.max_iterations} iterations "
            f"(last gradient norm {float(np.linalg.norm(grad)):.3e})",
            tuple(trace),
        )

    x = x0 + Z @ best_y
    f = AnalyticPoly(x[:n1] + 1j * x[n1:])
    F = AnalyticPoly(f.coeffs / bergman_norm_even(f, p))
    phi_f = functional_value(problem.kernel, F)
    phi_norm = float(phi_f.real)
    residuals = extremality_residual(F, problem.kernel, p, phi_norm, 2 * n)
    return ExtremalSolution(
        F=F,
        phi_norm=phi_norm,
        residual_max=float(np.max(np.abs(residuals))),
        iterations=iterations,
        trace=tuple(trace),
        p=p,
        kernel=problem.kernel,
        degree=n,
    )


@dataclass(frozen=True)
class FamilyEntry:
    """Per-degree outcome of a truncated-kernel sweep."""

    degree: int
    solution: ExtremalSolution = None
    error: Exception = None


def solve_truncated_family(k, p, degrees, tolerance=DEFAULT_TOLERANCE,
                           max_iterations=DEFAULT_MAX_ITERATIONS):
    """Solve with kernel S_n k over P_n for each n in degrees.

    Failures are recorded per level and do not abort the sweep.
    """
    out = []
    for n in degrees:
        try:
            problem = ExtremalProblem(
                p=p,
                kernel=taylor_truncate(k, n),
                degree=n,
                tolerance=tolerance,
                max_iterations=max_iterations,
            )
            out.append(FamilyEntry(degree=n, solution=solve_extremal(problem)))
        except (ValueError, NonConvergenceError) as exc:
            out.append(FamilyEntry(degree=n, error=exc))
    return out


def brute_force_oracle(k, p, degree=3, starts=3, seed=7):
    """Independent solve over a small space by derivative-free search.

    Minimizes the unconstrained convex surrogate

        J(f) = ||f||_{A^p}^p / p - Re phi(f)

    whose minimizer is ||phi||^{1/(p-1)} F, using disc quadrature for the
    objective (no coefficient identities, no analytic gradients) and
    Nelder-Mead/Powell restarts followed by a finite-difference Newton
    polish. Everything here is deliberately disjoint from the production
    solver's machinery so the two can check each other.

    Returns the unit-norm extremal candidate as an ``AnalyticPoly``.
    """
    if p < 2 or p % 2 != 0:
        raise ValueError("p must be an even integer >= 2")
    if degree < 0 or degree > 8:
        raise ValueError("oracle is meant for small spaces (degree <= 8)")
    n1 = degree + 1

    # quadrature exact for |poly of degree n|^p: radial Gauss-Legendre,
    # uniform angular sampling above the integrand bandwidth
    radial = max(16, p * degree // 2 + 4)
    x_gl, w_gl = roots_legendre(radial)
    r = 0.5 * (x_gl + 1.0)
    wr = 0.5 * w_gl * 2.0 * r
    angular = 1 << max(3, (p * degree + 1).bit_length())
    zs = np.exp(2j * np.pi * np.arange(angular) / angular)
    pts = np.outer(r, zs).ravel()
    wts = np.repeat(wr / angular, angular)
    V = pts[:, None] ** np.arange(n1)
    kv = np.polyval(k.coeffs[::-1], pts) if not k.is_zero() else np.zeros_like(pts)
    wk = wts * np.conj(kv)

    def J(x):
        a = x[:n1] + 1j * x[n1:]
        va = V @ a
        return float(wts @ np.abs(va) ** p) / p - float(np.real(wk @ va))

    rng = np.random.default_rng(seed)
    best_x, best_f = None, np.inf
    for i in range(starts):
        x = rng.standard_normal(2 * n1) * (0.5 if i else 0.0)
        for _ in range(2):
            res = minimize(J, x, method="Nelder-Mead",
                           options=dict(xatol=1e-13, fatol=1e-16,
                                        maxiter=4000, adaptive=True))
            x = res.x
            res = minimize(J, x, method="Powell",
                           options=dict(xtol=1e-13, ftol=1e-16, maxiter=4000))
            x = res.x
        if res.fun < best_f:
            best_x, best_f = x, res.fun

    # Function-value-only quadratic model: central differences for
    # gradient and Hessian, then Newton steps. Breaks through the
    # sqrt(eps) accuracy wall that simplex and line-search methods hit.
    x = best_x
    dim = 2 * n1
    hg, hh = 5e-6, 1e-4
    eye = np.eye(dim)
    for _ in range(3):
        g = np.array([(J(x + hg * e) - J(x - hg * e)) / (2 * hg) for e in eye])
        Hm = np.zeros((dim, dim))
        j0 = J(x)
        for i in range(dim):
            Hm[i, i] = (J(x + hh * eye[i]) - 2 * j0 + J(x - hh * eye[i])) / hh ** 2
            for jj in range(i):
                Hm[i, jj] = Hm[jj, i] = (
                    J(x + hh * (eye[i] + eye[jj]))
                    - J(x + hh * (eye[i] - eye[jj]))
                    - J(x - hh * (eye[i] - eye[jj]))
                    + J(x - hh * (eye[i] + eye[jj]))
                ) / (4 * hh ** 2)
        try:
            step = np.linalg.solve(Hm, -g)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)) or np.linalg.norm(step) > 1.0:
            break
        x = x + step
        if np.linalg.norm(step) < 1e-12:
            break

    a = x[:n1] + 1j * x[n1:]
    scale = float(wts @ np.abs(V @ a) ** p) ** (1.0 / p)
    return AnalyticPoly(a / scale)
