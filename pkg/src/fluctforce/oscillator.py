"""Damped-oscillator domain types and eigenfrequency solvers.

Everything here works in reduced units (hbar = k_B = 1): the resonance
frequency, damping rate, high-frequency cutoff and temperature all share
one frequency unit.  SI conversion is handled by the circuits/cli layer.

Two damping models are supported:

* Ohmic    -- frequency-independent rate gamma0,
* Drude    -- gamma(omega) = gamma0 * omega_d / (omega_d - i omega),
              where omega_d acts as a high-frequency cutoff.

Eigenfrequencies are the roots of the dispersion relation
Omega^2 - i gamma(omega) omega - omega^2 = 0.  For the Drude model the
substitution omega = i s turns this into a real cubic in s, which is
solved by a depressed-cubic branch (trigonometric for three real roots,
Cardano otherwise) followed by Newton polish on the original cubic.  The
polish step matters: when omega_d dominates, undoing the depression shift
cancels catastrophically for the two small roots, and one or two Newton
steps restore them to ~1 ulp.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import PreconditionError

#: omega_d below this multiple of max(Omega, gamma0) flags the
#: approximate-root regime as unreliable (first order in Omega/omega_d).
DRUDE_REGIME_FACTOR = 10.0

WARN_DRUDE_APPROX = "drude-approx-regime"


@dataclass(frozen=True)
class Ohmic:
    """Frequency-independent damping, gamma(omega) = gamma0."""

    gamma0: float

    def __post_init__(self):
        if self.gamma0 < 0.0:
            raise ValueError("gamma0 must be >= 0")


@dataclass(frozen=True)
class Drude:
    """Drude damping gamma0 * omega_d / (omega_d - i omega)."""

    gamma0: float
    omega_d: float

    def __post_init__(self):
        if self.gamma0 < 0.0:
            raise ValueError("gamma0 must be >= 0")
        if self.omega_d <= 0.0:
            raise ValueError("omega_d must be > 0")

    def in_approx_regime(self, omega0: float) -> bool:
        return self.omega_d >= DRUDE_REGIME_FACTOR * max(omega0, self.gamma0)


DampingModel = Ohmic | Drude


@dataclass(frozen=True)
class OscillatorParams:
    """Reduced-unit oscillator parameters.

    The mass cancels from every force expression and is kept only for
    bookkeeping; no force operation reads it.
    """

    omega0: float
    damping: DampingModel
    temperature: float
    mass: float | None = None

    def __post_init__(self):
        if self.omega0 <= 0.0:
            raise ValueError("omega0 must be > 0")
        if self.temperature < 0.0:
            raise ValueError("temperature must be >= 0")


def _const_zero(_: float) -> float:
    return 0.0


@dataclass(frozen=True)
class ParametricModel:
    """Oscillator parameters as functions of a sweep parameter lambda.

    lambda is abstract: a distance, an angle, or anything else the
    parameters depend on.  Derivative callables must be the analytic
    partners of the value callables (checked by finite differences in the
    test-suite).  omega_d / d_omega_d are None for Ohmic damping.
    """

    omega: Callable[[float], float]
    d_omega: Callable[[float], float]
    gamma0: Callable[[float], float] = field(default=_const_zero)
    d_gamma0: Callable[[float], float] = field(default=_const_zero)
    omega_d: Callable[[float], float] | None = None
    d_omega_d: Callable[[float], float] | None = None

    def params_at(self, lam: float, temperature: float,
                  mass: float | None = None) -> OscillatorParams:
        """Materialize OscillatorParams at a sweep point."""
        if self.omega_d is None:
            damping: DampingModel = Ohmic(self.gamma0(lam))
        else:
            damping = Drude(self.gamma0(lam), self.omega_d(lam))
        return OscillatorParams(self.omega(lam), damping, temperature, mass)

    def derivatives_at(self, lam: float) -> tuple[float, float, float]:
        """(dOmega/dlam, dgamma0/dlam, domega_d/dlam) at lam."""
        dwd = self.d_omega_d(lam) if self.d_omega_d is not None else 0.0
        return self.d_omega(lam), self.d_gamma0(lam), dwd


def power_law(coeff: float, exponent: float):
    """Value/derivative callables for coeff * lam**exponent."""
    def value(lam: float) -> float:
        return coeff * lam ** exponent

    def derivative(lam: float) -> float:
        if exponent == 0.0:
            return 0.0
        return coeff * exponent * lam ** (exponent - 1.0)

    return value, derivative


def power_law_model(omega0: tuple[float, float],
                    gamma0: tuple[float, float] = (0.0, 0.0),
                    omega_d: tuple[float, float] | None = None) -> ParametricModel:
    """ParametricModel with power-law parameter dependences.

    Each argument is (coeff, exponent) with value coeff * lam**exponent.
    Covers the common geometric laws, e.g. a planar capacitor gives
    Omega proportional to sqrt(d), i.e. exponent 1/2.
    """
    om, dom = power_law(*omega0)
    g0, dg0 = power_law(*gamma0)
    if omega_d is None:
        return ParametricModel(om, dom, g0, dg0)
    wd, dwd = power_law(*omega_d)
    return ParametricModel(om, dom, g0, dg0, wd, dwd)


@dataclass(frozen=True)
class Eigenfrequencies:
    """Complex oscillator eigenfrequencies.

    omega3 is None for Ohmic damping.  For Drude damping omega3 is the
    root of largest magnitude (the overdamped cutoff mode, ~ -i omega_d
    in the usual regime).  The remaining pair is ordered so that
    Im(i omega1) >= Im(i omega2), with ties broken by Re(i omega) so the
    overdamped pair comes out as i_omega1 <= i_omega2.
    """

    omega1: complex
    omega2: complex
    omega3: complex | None
    method: str
    warnings: tuple[str, ...] = ()

    def as_tuple(self) -> tuple[complex, ...]:
        if self.omega3 is None:
            return (self.omega1, self.omega2)
        return (self.omega1, self.omega2, self.omega3)


def eigenfrequencies_ohmic(p: OscillatorParams) -> Eigenfrequencies:
    """Roots of omega^2 + i gamma omega - Omega^2 = 0.

    Written with a complex square root so the under-, critically- and
    over-damped cases are one code path: i omega_{1,2} =
    gamma/2 +- i sqrt(Omega^2 - gamma^2/4).
    """
    if not isinstance(p.damping, Ohmic):
        raise PreconditionError("eigenfrequencies_ohmic requires Ohmic damping")
    g = p.damping.gamma0
    sq = cmath.sqrt(complex(p.omega0 * p.omega0 - 0.25 * g * g))
    i_w1 = 0.5 * g + 1j * sq
    i_w2 = 0.5 * g - 1j * sq
    return Eigenfrequencies(-1j * i_w1, -1j * i_w2, None, "ohmic")


def _polish_root(s: complex | float, a2: float, a1: float, a0: float,
                 steps: int = 2):
    """Newton-polish a root of s^3 + a2 s^2 + a1 s + a0."""
    for _ in range(steps):
        f = ((s + a2) * s + a1) * s + a0
        df = (3.0 * s + 2.0 * a2) * s + a1
        if df == 0:
            break
        step = f / df
        # near-double roots make Newton overshoot; keep the current value
        if abs(step) > 0.5 * (1.0 + abs(s)):
            break
        s = s - step
    return s


def solve_cubic(a2: float, a1: float, a0: float) -> list[complex]:
    """All roots of s^3 + a2 s^2 + a1 s + a0 = 0 with real coefficients.

    Depressed-cubic branch selection by discriminant sign, then Newton
    polish of every root on the original cubic.
    """
    shift = a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = a2 * (2.0 * a2 * a2 / 27.0 - a1 / 3.0) + a0
    disc = -4.0 * p * p * p - 27.0 * q * q

    roots: list[complex]
    if disc >= 0.0 and p < 0.0:
        # three real roots, trigonometric form
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg)
        ts = [m * math.cos((phi - 2.0 * math.pi * k) / 3.0) for k in range(3)]
        real_roots = [_polish_root(t - shift, a2, a1, a0) for t in ts]
        return [complex(r) for r in real_roots]

    # one real root, numerically stable Cardano
    rad = math.sqrt(max(q * q / 4.0 + p * p * p / 27.0, 0.0))
    u3 = -0.5 * q - math.copysign(rad, q)
    if u3 == 0.0:
        t0 = 0.0
    else:
        u = math.copysign(abs(u3) ** (1.0 / 3.0), u3)
        t0 = u - p / (3.0 * u)
    s0 = _polish_root(t0 - shift, a2, a1, a0)
    # deflate: remaining pair solves t^2 + b t + c with b from Vieta
    b = a2 + s0
    c = -a0 / s0 if s0 != 0.0 else a1
    disc2 = b * b - 4.0 * c
    if disc2 >= 0.0:
        r = -0.5 * (b + math.copysign(math.sqrt(disc2), b)) if b != 0.0 \
            else math.sqrt(disc2) * 0.5
        pair = [r, c / r] if r != 0.0 else [0.0, -b]
        roots = [complex(_polish_root(x, a2, a1, a0)) for x in pair]
    else:
        z = complex(-0.5 * b, 0.5 * math.sqrt(-disc2))
        z = _polish_root(z, a2, a1, a0)
        roots = [z, z.conjugate()]
    return roots + [complex(s0)]


def _ordered(omegas: list[complex]) -> tuple[complex, complex, complex]:
    by_mag = sorted(omegas, key=abs)
    w3 = by_mag[2]
    pair = sorted(by_mag[:2],
                  key=lambda w: (-(1j * w).imag, (1j * w).real))
    return pair[0], pair[1], w3


def eigenfrequencies_drude_exact(p: OscillatorParams) -> Eigenfrequencies:
    """The three roots of the Drude dispersion cubic.

    omega = i s maps omega^3 + i omega_d omega^2 - (Omega^2 +
    gamma0 omega_d) omega - i Omega^2 omega_d = 0 onto the real cubic
    s^3 + omega_d s^2 + (Omega^2 + gamma0 omega_d) s + Omega^2 omega_d.
    gamma0 = 0 short-circuits to the decoupled roots {+-Omega, -i omega_d}.
    """
    if not isinstance(p.damping, Drude):
        raise PreconditionError("eigenfrequencies_drude_exact requires Drude damping")
    om, g0, wd = p.omega0, p.damping.gamma0, p.damping.omega_d
    if g0 == 0.0:
        omegas = [complex(om), complex(-om), complex(0.0, -wd)]
    else:
        s_roots = solve_cubic(wd, om * om + g0 * wd, om * om * wd)
        omegas = [1j * s for s in s_roots]
    w1, w2, w3 = _ordered(omegas)
    return Eigenfrequencies(w1, w2, w3, "exact-cubic")


def eigenfrequencies_drude_approx(p: OscillatorParams) -> Eigenfrequencies:
    """First-order roots for omega_d >> Omega, gamma0.

    i omega_{1,2} = gamma0/2 +- i sqrt(Omega^2 - gamma0^2/4) and
    i omega3 = omega_d - gamma0.  The triple satisfies the root-sum rule
    omega1 + omega2 + omega3 = -i omega_d exactly, which is what makes
    the Gamma-function free energy well defined.
    """
    if not isinstance(p.damping, Drude):
        raise PreconditionError("eigenfrequencies_drude_approx requires Drude damping")
    g0, wd = p.damping.gamma0, p.damping.omega_d
    warnings = () if p.damping.in_approx_regime(p.omega0) else (WARN_DRUDE_APPROX,)
    sq = cmath.sqrt(complex(p.omega0 * p.omega0 - 0.25 * g0 * g0))
    i_w1 = 0.5 * g0 + 1j * sq
    i_w2 = 0.5 * g0 - 1j * sq
    return Eigenfrequencies(-1j * i_w1, -1j * i_w2, complex(0.0, -(wd - g0)),
                            "approx", warnings)


def damping_at_matsubara(p: OscillatorParams, omega_n: float) -> float:
    """gamma(i omega_n): the damping function on the imaginary axis."""
    if omega_n < 0.0:
        raise PreconditionError("omega_n must be >= 0")
    if isinstance(p.damping, Ohmic):
        return p.damping.gamma0
    d = p.damping
    return d.gamma0 * d.omega_d / (d.omega_d + omega_n)
