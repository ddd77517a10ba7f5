"""Confluent hypergeometric function M = 1F1 and the Gamma function for
complex parameters.

Everything here is tuned for arguments on the nonnegative real axis
(z = x**2), where the Maclaurin terms share phase and direct summation is
benign.  Past ``asymptotic_switch`` the dominant large-argument expansion
Gamma(b)/Gamma(a) * exp(z) * z**(a-b) * S(1/z) takes over; the recessive
second branch is exponentially small there and is dropped.  General complex
z away from that axis is out of scope.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, PoleArgument, PoleParameter

_ASYMPTOTIC_MAX_TERMS = 120

# Fixed published rational-approximation coefficients (g = 7, n = 9); good
# for ~1e-13 relative accuracy away from the poles.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _nonpositive_integer(w) -> bool:
    w = complex(w)
    return w.imag == 0.0 and w.real <= 0.0 and w.real == round(w.real)


@dataclass(frozen=True)
class SeriesControls:
    """Stopping and switching controls for the 1F1 evaluation."""

    max_terms: int = 500
    term_tolerance: float = 1e-16
    asymptotic_switch: float = 30.0

    def __post_init__(self):
        if self.max_terms < 50:
            raise ValueError("max_terms must be at least 50")
        if not 0.0 < self.term_tolerance < 1.0:
            raise ValueError("term_tolerance must lie in (0, 1)")
        if self.asymptotic_switch <= 0.0:
            raise ValueError("asymptotic_switch must be positive")


DEFAULT_CONTROLS = SeriesControls()


def gamma(z) -> complex:
    """Gamma for complex argument: rational approximation plus reflection."""
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleArgument(f"gamma pole at z={z}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma(1.0 - z))
    w = z - 1.0
    acc = complex(_LANCZOS[0])
    for k, coeff in enumerate(_LANCZOS[1:], start=1):
        acc += coeff / (w + k)
    t = w + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * acc


def _maclaurin(a, b, z, controls):
    # Direct sum; stops once two consecutive term ratios fall below the
    # tolerance.  Terminating series (a a nonpositive integer) hit an exact
    # zero term and stop the same way.
    term = np.ones_like(z)
    total = np.ones_like(z)
    prev_small = np.zeros(z.shape, dtype=bool)
    for n in range(controls.max_terms):
        term = term * ((a + n) * z) / ((b + n) * (n + 1.0))
        total = total + term
        small = np.abs(term) <= controls.term_tolerance * np.abs(total)
        if n >= 1 and bool(np.all(small & prev_small)):
            return total
        prev_small = small
    raise NoConvergence(
        f"1F1 series not converged after {controls.max_terms} terms "
        f"(a={a}, b={b}, max|z|={float(np.max(np.abs(z))):.3g})"
    )


def _asymptotic(a, b, z, controls):
    # Dominant branch only; the divergent tail is truncated at the smallest
    # term per entry.
    s = np.ones_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    last = np.abs(term)
    tol = controls.term_tolerance
    for n in range(_ASYMPTOTIC_MAX_TERMS):
        term = term * ((b - a + n) * (1.0 - a + n)) / ((n + 1.0) * z)
        mag = np.abs(term)
        active &= mag < last
        s = np.where(active, s + term, s)
        if bool(np.all((mag <= tol * np.abs(s)) | ~active)):
            break
        last = mag
    pref = (gamma(b) / gamma(a)) * np.exp(z) * np.exp((a - b) * np.log(z))
    return pref * s


def kummer_m(a, b, z, controls: SeriesControls = DEFAULT_CONTROLS):
    """1F1(a, b; z) for complex parameters; ``z`` may be a scalar or ndarray.

    Maclaurin series below ``asymptotic_switch`` in |z|, large-argument
    expansion above.  The dominant exponential overflows past z ~ 709
    (|x| ~ 27 in seed coordinates), which raises NoConvergence.
    """
    a = complex(a)
    b = complex(b)
    if _nonpositive_integer(b):
        raise PoleParameter(f"1F1 parameter b={b} is a nonpositive integer")
    z_in = np.asarray(z, dtype=complex)
    scalar = z_in.ndim == 0
    zz = np.atleast_1d(z_in)
    out = np.empty_like(zz)
    if _nonpositive_integer(a):
        # Terminating series: an exact polynomial, valid for every z.
        out[...] = _maclaurin(a, b, zz, controls)
    else:
        near = np.abs(zz) <= controls.asymptotic_switch
        if bool(near.any()):
            out[near] = _maclaurin(a, b, zz[near], controls)
        far = ~near
        if bool(far.any()):
            out[far] = _asymptotic(a, b, zz[far], controls)
    if not bool(np.all(np.isfinite(out))):
        raise NoConvergence(f"1F1 overflowed for a={a}, b={b}")
    return complex(out[0]) if scalar else out


def kummer_m_derivative(a, b, z, order: int = 1, controls: SeriesControls = DEFAULT_CONTROLS):
    """order-th z-derivative via the contiguous shift (a)_k/(b)_k M(a+k, b+k; z)."""
    if order < 1:
        raise ValueError("order must be a positive integer")
    a = complex(a)
    b = complex(b)
    num = 1.0 + 0.0j
    den = 1.0 + 0.0j
    for k in range(order):
        if _nonpositive_integer(b + k):
            raise PoleParameter(f"1F1 parameter b+{k}={b + k} is a nonpositive integer")
        num *= a + k
        den *= b + k
    return (num / den) * kummer_m(a + order, b + order, z, controls)


def kummer_oracle(a, b, z, decimal_digits: int = 30):
    """Reference 1F1: the same Maclaurin sum carried in mpmath arithmetic.

    Returns an mpmath complex so the extra digits survive; cast with
    ``complex()`` for the double view.  Test-suite oracle, deliberately
    independent of the double-precision evaluation path.
    """
    if not 0 < decimal_digits <= 50:
        raise ValueError("decimal_digits must lie in (0, 50]")
    if _nonpositive_integer(b):
        raise PoleParameter(f"1F1 parameter b={b} is a nonpositive integer")
    import mpmath

    with mpmath.workdps(decimal_digits + 10):
        aa = mpmath.mpmathify(complex(a))
        bb = mpmath.mpmathify(complex(b))
        zz = mpmath.mpmathify(complex(z))
        total = mpmath.mpc(1)
        term = mpmath.mpc(1)
        cutoff = mpmath.mpf(10) ** (-(decimal_digits + 6))
        for n in range(100000):
            term = term * (aa + n) * zz / ((bb + n) * (n + 1))
            total += term
            if n >= 1 and abs(term) <= cutoff * abs(total):
                return total
    raise NoConvergence("oracle series did not converge")
