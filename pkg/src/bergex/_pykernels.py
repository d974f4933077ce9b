"""NumPy implementations of the coefficient kernels.

These are the two inner loops the whole library leans on: Cauchy
convolution of coefficient vectors (polynomial products, powers) and
one-sided cross-correlation (gradients, Fourier coefficients of |f|^p).
A compiled twin lives in ``_ckernels.pyx``; this module is the fallback
and the reference the compiled version is tested against.
"""

import numpy as np

BACKEND = "numpy"


def conv_direct(a, b):
    """Cauchy convolution of two complex coefficient vectors."""
    return np.convolve(a, b)


def xcorr_direct(a, v):
    """Nonnegative-lag cross-correlation out[j] = sum_t a[t+j] * conj(v[t]).

    Lags run from 0 to len(a)-1; terms with t+j beyond the end of ``a``
    are dropped, so ``v`` may be shorter or longer than ``a``.
    """
    a = np.asarray(a, dtype=complex)
    v = np.asarray(v, dtype=complex)
    n = len(a)
    out = np.empty(n, dtype=complex)
    vc = np.conj(v)
    for j in range(n):
        m = min(n - j, len(v))
        out[j] = np.dot(a[j:j + m], vc[:m])
    return out
