"""Analytic polynomials and boundary trigonometric polynomials.

``AnalyticPoly`` carries a finite Taylor coefficient vector a_0..a_n for
f(z) = sum a_n z^n on the unit disc. It is the function carrier every
other module consumes: kernels, extremal candidates, derivatives, all of
it is coefficient arithmetic here. ``TrigPoly`` carries two-sided
frequency data for boundary functions h(e^{i t}) = sum_m h_m e^{imt}.

Coefficient storage is dense from index zero. Construction trims trailing
zeros, so the degree is well defined and the zero polynomial is the
canonical empty vector. A configurable degree cap (default 512) guards
against runaway products; raise it with ``set_max_degree`` or scope the
raise with the ``degree_cap`` context manager.
"""

import contextlib
from dataclasses import dataclass, field

import numpy as np

from ._backend import conv

_DEFAULT_MAX_DEGREE = 512
_max_degree = _DEFAULT_MAX_DEGREE

# Trailing coefficients at or below this magnitude are treated as zero
# when trimming. Exact zeros are the common case; the tiny absolute
# threshold only guards against -0.0 style artifacts.
_TRIM_TOL = 0.0


class DegreeCapError(ValueError):
    """Raised when an operation would exceed the configured degree cap."""


def get_max_degree():
    """Current degree cap."""
    return _max_degree


def set_max_degree(n):
    """Set the degree cap; returns the previous value."""
    global _max_degree
    if n < 0:
        raise ValueError("degree cap must be nonnegative")
    old = _max_degree
    _max_degree = int(n)
    return old


@contextlib.contextmanager
def degree_cap(n):
    """Temporarily raise (or lower) the degree cap within a block."""
    old = set_max_degree(n)
    try:
        yield
    finally:
        set_max_degree(old)


def _trim(coeffs):
    end = len(coeffs)
    while end > 0 and abs(coeffs[end - 1]) <= _TRIM_TOL:
        end -= 1
    return coeffs[:end]


@dataclass(frozen=True)
class AnalyticPoly:
    """Finite Taylor series f(z) = sum_{t=0}^{n} coeffs[t] z^t.

    Immutable. The zero polynomial has an empty coefficient vector and
    degree -1 by convention, which keeps degree queries total.
    """

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))

    def __post_init__(self):
        arr = _trim(np.asarray(self.coeffs, dtype=complex))
        arr = np.array(arr, dtype=complex)
        arr.setflags(write=False)
        if len(arr) - 1 > _max_degree:
            raise DegreeCapError(
                f"degree {len(arr) - 1} exceeds cap {_max_degree}; "
                "see set_max_degree / degree_cap"
            )
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return len(self.coeffs) == 0

    def coeff(self, t):
        """Coefficient a_t, zero beyond the stored range."""
        if 0 <= t < len(self.coeffs):
            return complex(self.coeffs[t])
        return 0j

    def padded(self, length):
        """Coefficients as a writable array of the given length."""
        out = np.zeros(length, dtype=complex)
        m = min(length, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def __call__(self, z):
        """Evaluate by Horner at a point or an array of points."""
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0j
        return np.polyval(self.coeffs[::-1], z)

    def __add__(self, other):
        other = as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return AnalyticPoly(self.padded(n) + other.padded(n))

    def __sub__(self, other):
        other = as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return AnalyticPoly(self.padded(n) - other.padded(n))

    def __neg__(self):
        return AnalyticPoly(-self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return AnalyticPoly(self.coeffs * other)
        return multiply(self, as_poly(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AnalyticPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __repr__(self):
        if self.is_zero():
            return "AnalyticPoly(0)"
        return f"AnalyticPoly(degree={self.degree})"


ZERO = AnalyticPoly()
ONE = AnalyticPoly(np.array([1.0 + 0j]))


def as_poly(value):
    """Coerce a scalar or coefficient sequence into an AnalyticPoly."""
    if isinstance(value, AnalyticPoly):
        return value
    if np.isscalar(value):
        return AnalyticPoly(np.array([value], dtype=complex))
    return AnalyticPoly(np.asarray(value, dtype=complex))


def monomial(t, coefficient=1.0):
    """The polynomial coefficient * z^t."""
    c = np.zeros(t + 1, dtype=complex)
    c[t] = coefficient
    return AnalyticPoly(c)


def multiply(f, g):
    """Product of two polynomials via coefficient convolution."""
    if f.is_zero() or g.is_zero():
        return ZERO
    return AnalyticPoly(conv(f.coeffs, g.coeffs))


def power(f, m):
    """f^m by repeated multiplication; power(f, 0) is the constant 1."""
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    out = ONE
    for _ in range(m):
        out = multiply(out, f)
    return out


def derivative(f):
    """Termwise derivative: coefficient t of f' is (t+1) a_{t+1}."""
    if f.degree < 1:
        return ZERO
    t = np.arange(1, len(f.coeffs))
    return AnalyticPoly(f.coeffs[1:] * t)


def antiderivative(f):
    """The primitive of f vanishing at 0: coefficient t+1 is a_t/(t+1)."""
    if f.is_zero():
        return ZERO
    out = np.zeros(len(f.coeffs) + 1, dtype=complex)
    out[1:] = f.coeffs / (np.arange(len(f.coeffs)) + 1.0)
    return AnalyticPoly(out)


def k_transform(k):
    """K with K(z) = (1/z) * integral of k from 0 to z.

    Coefficientwise this divides c_t by t+1, and the defining identity
    (z K)' = k holds exactly in coefficients.
    """
    if k.is_zero():
        return ZERO
    return AnalyticPoly(k.coeffs / (np.arange(len(k.coeffs)) + 1.0))


def taylor_truncate(f, n):
    """The n-th Taylor polynomial S_n f (coefficients above n dropped)."""
    if n < 0:
        raise ValueError("truncation order must be nonnegative")
    return AnalyticPoly(f.coeffs[:n + 1].copy())


def shift(f, m):
    """Multiply by z^m, shifting coefficients up by m slots."""
    if f.is_zero():
        return ZERO
    out = np.zeros(len(f.coeffs) + m, dtype=complex)
    out[m:] = f.coeffs
    return AnalyticPoly(out)


class TrigPoly:
    """Boundary function h(e^{it}) = sum_{m} h_m e^{imt}, finitely many m."""

    def __init__(self, terms=None):
        self.terms = {}
        for m, amp in (terms or {}).items():
            amp = complex(amp)
            if amp != 0:
                self.terms[int(m)] = amp

    @classmethod
    def from_analytic(cls, f):
        """Boundary values of an analytic polynomial (frequencies >= 0)."""
        return cls({t: c for t, c in enumerate(f.coeffs)})

    def term(self, m):
        return self.terms.get(m, 0j)

    def frequencies(self):
        return sorted(self.terms)

    def is_real_valued(self, tol=0.0):
        """True when h(-m) = conj(h(m)) for every frequency."""
        return all(
            abs(self.term(-m) - np.conj(amp)) <= tol
            for m, amp in self.terms.items()
        )

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex) if theta.ndim else 0j
        for m, amp in self.terms.items():
            out = out + amp * np.exp(1j * m * theta)
        return out

    def conjugate(self):
        return TrigPoly({-m: np.conj(amp) for m, amp in self.terms.items()})

    def __add__(self, other):
        merged = dict(self.terms)
        for m, amp in other.terms.items():
            merged[m] = merged.get(m, 0j) + amp
        return TrigPoly(merged)

    def __repr__(self):
        if not self.terms:
            return "TrigPoly(0)"
        lo, hi = min(self.terms), max(self.terms)
        return f"TrigPoly(frequencies {lo}..{hi})"


def szego_project(h):
    """Szego projection: keep frequencies m >= 0, yielding an analytic poly.

    Acts as the identity on boundary values of analytic polynomials.
    """
    if not h.terms:
        return ZERO
    top = max(h.frequencies())
    if top < 0:
        return ZERO
    out = np.zeros(top + 1, dtype=complex)
    for m, amp in h.terms.items():
        if m >= 0:
            out[m] = amp
    return AnalyticPoly(out)
