"""Complex log-Gamma, digamma and trigamma for arguments with Re z > 0.

All three functions use the same shift-and-expand scheme: recur upward
until Re w >= 12, then evaluate the Stirling-type asymptotic series with
Bernoulli-number coefficients through B_14.  At the shift threshold the
first omitted series term is below 1e-17 relative, so the results are
good to ~1e-14..1e-13 relative everywhere in the right half plane, which
is what the force formulas downstream are budgeted for.

Reflection to Re z <= 0 is intentionally not provided; every argument
arising from the force expressions has the form 1 + (positive) +- i y.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError

_SHIFT_THRESHOLD = 12.0
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k-1)), k = 1..7
_LOG_GAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)

# B_{2k} / (2k), k = 1..7
_DIGAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# B_{2k}, k = 1..7
_TRIGAMMA_COEFFS = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


def _checked(z: complex | float) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("argument must be finite")
    if z.real <= 0.0:
        raise DomainError(f"Re z must be positive, got {z!r}")
    return z


def _horner_even(coeffs: tuple[float, ...], inv_w2: complex) -> complex:
    acc = 0.0j
    for c in reversed(coeffs):
        acc = acc * inv_w2 + c
    return acc


def log_gamma(z: complex | float) -> complex:
    """Principal-branch log Gamma(z) for Re z > 0."""
    z = _checked(z)
    shift = 0.0j
    w = z
    while w.real < _SHIFT_THRESHOLD:
        shift += cmath.log(w)
        w += 1.0
    inv_w = 1.0 / w
    series = inv_w * _horner_even(_LOG_GAMMA_COEFFS, inv_w * inv_w)
    return (w - 0.5) * cmath.log(w) - w + _HALF_LOG_TWO_PI + series - shift


def digamma(z: complex | float) -> complex:
    """psi(z) = d/dz log Gamma(z) for Re z > 0."""
    z = _checked(z)
    shift = 0.0j
    w = z
    while w.real < _SHIFT_THRESHOLD:
        shift += 1.0 / w
        w += 1.0
    inv_w = 1.0 / w
    inv_w2 = inv_w * inv_w
    series = inv_w2 * _horner_even(_DIGAMMA_COEFFS, inv_w2)
    return cmath.log(w) - 0.5 * inv_w - series - shift


def trigamma(z: complex | float) -> complex:
    """psi'(z), the derivative of digamma, for Re z > 0."""
    z = _checked(z)
    shift = 0.0j
    w = z
    while w.real < _SHIFT_THRESHOLD:
        shift += 1.0 / (w * w)
        w += 1.0
    inv_w = 1.0 / w
    inv_w2 = inv_w * inv_w
    series = inv_w * inv_w2 * _horner_even(_TRIGAMMA_COEFFS, inv_w2)
    return inv_w + 0.5 * inv_w2 + series + shift
