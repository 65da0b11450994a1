"""Lumped-element layer: RLC circuits, capacitor geometries, circuit
forces, Casimir references and relative weights.

A series RLC loop maps onto the damped oscillator as M -> L,
gamma -> R/L, Omega -> 1/sqrt(LC); a parallel loop as M -> C,
gamma -> 1/(RC), Omega -> 1/sqrt(LC).  In both cases gamma is
frequency independent (Ohmic), which is exactly why the circuit force
is only finite when the damping does not depend on the swept
parameter: for a series loop only C may vary, for a parallel loop
only L.

Units: circuit element values may be SI (ohm, henry, farad, kelvin,
metre) with units="si", or reduced (hbar = k_B = 1, any consistent
frequency unit) with units="reduced".  Geometry operations
(capacitances, Casimir references, relative weights) are SI only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .constants import C_LIGHT, EPSILON_0, HBAR, K_B, ZETA_3
from .errors import PreconditionError
from .forces import (ForceResult, force_ohmic_exact, force_ohmic_high_t,
                     force_ohmic_low_t, force_ohmic_weak_dissipation)
from .oscillator import ParametricModel

WARN_EDGE_EFFECTS = "edge-effects"
WARN_SPHERE_INTERP = "sphere-interpolation-accuracy"
WARN_REGIME_AMBIGUOUS = "regime-ambiguous"
WARN_ELEMENT_SIZE = "lumped-element-size"

#: d^2/S above this flags plate edge effects.
EDGE_EFFECT_RATIO = 0.1

_REGIMES = ("exact", "weak-dissipation", "high-T", "low-T")


@dataclass(frozen=True)
class ElementLaw:
    """A circuit element value as a function of the sweep parameter."""

    value: Callable[[float], float]
    derivative: Callable[[float], float]
    constant: bool = False


def constant_element(x: float) -> ElementLaw:
    return ElementLaw(lambda _lam: x, lambda _lam: 0.0, constant=True)


def power_element(coeff: float, exponent: float) -> ElementLaw:
    def value(lam: float) -> float:
        return coeff * lam ** exponent

    def derivative(lam: float) -> float:
        return coeff * exponent * lam ** (exponent - 1.0) if exponent else 0.0

    return ElementLaw(value, derivative)


def _as_law(x) -> ElementLaw:
    if isinstance(x, ElementLaw):
        return x
    if isinstance(x, tuple):
        return power_element(*x)
    return constant_element(float(x))


@dataclass(frozen=True)
class SeriesRLC:
    """Series loop; element_size is an optional advisory length used to
    check the lumped-element condition R/L << c/r0."""

    resistance: ElementLaw
    inductance: ElementLaw
    capacitance: ElementLaw
    element_size: float | None = None

    @classmethod
    def of(cls, resistance, inductance, capacitance, element_size=None):
        """Accepts numbers, (coeff, exponent) power laws, or ElementLaw."""
        return cls(_as_law(resistance), _as_law(inductance),
                   _as_law(capacitance), element_size)


@dataclass(frozen=True)
class ParallelRLC:
    resistance: ElementLaw
    inductance: ElementLaw
    capacitance: ElementLaw
    element_size: float | None = None

    @classmethod
    def of(cls, resistance, inductance, capacitance, element_size=None):
        return cls(_as_law(resistance), _as_law(inductance),
                   _as_law(capacitance), element_size)


@dataclass(frozen=True)
class PlanarCapacitor:
    """Parallel plates: contact area, gap, relative permittivity."""

    area: float
    gap: float
    epsilon: float = 1.0

    def __post_init__(self):
        if self.area <= 0.0 or self.gap <= 0.0 or self.epsilon <= 0.0:
            raise ValueError("area, gap and epsilon must be positive")


@dataclass(frozen=True)
class SpherePlate:
    """Sphere of radius `radius` above a plate at minimum gap `gap`."""

    radius: float
    gap: float

    def __post_init__(self):
        if self.radius <= 0.0 or self.gap <= 0.0:
            raise ValueError("radius and gap must be positive")


def _check_positive(name: str, x: float) -> float:
    if x <= 0.0:
        raise ValueError(f"{name} must be positive, got {x}")
    return x


def map_series(c: SeriesRLC) -> ParametricModel:
    """Oscillator model of a series loop: Omega = 1/sqrt(LC), gamma = R/L."""
    r_of, l_of, c_of = c.resistance, c.inductance, c.capacitance

    def omega(lam: float) -> float:
        cl = _check_positive("inductance", l_of.value(lam))
        cc = _check_positive("capacitance", c_of.value(lam))
        return 1.0 / math.sqrt(cl * cc)

    def d_omega(lam: float) -> float:
        cl, cc = l_of.value(lam), c_of.value(lam)
        return -0.5 * omega(lam) * (l_of.derivative(lam) / cl
                                    + c_of.derivative(lam) / cc)

    def gamma0(lam: float) -> float:
        return r_of.value(lam) / l_of.value(lam)

    def d_gamma0(lam: float) -> float:
        cl = l_of.value(lam)
        return (r_of.derivative(lam) / cl
                - r_of.value(lam) * l_of.derivative(lam) / (cl * cl))

    return ParametricModel(omega, d_omega, gamma0, d_gamma0)


def map_parallel(c: ParallelRLC) -> ParametricModel:
    """Oscillator model of a parallel loop: Omega = 1/sqrt(LC), gamma = 1/RC."""
    r_of, l_of, c_of = c.resistance, c.inductance, c.capacitance

    def omega(lam: float) -> float:
        cl = _check_positive("inductance", l_of.value(lam))
        cc = _check_positive("capacitance", c_of.value(lam))
        return 1.0 / math.sqrt(cl * cc)

    def d_omega(lam: float) -> float:
        cl, cc = l_of.value(lam), c_of.value(lam)
        return -0.5 * omega(lam) * (l_of.derivative(lam) / cl
                                    + c_of.derivative(lam) / cc)

    def gamma0(lam: float) -> float:
        return 1.0 / (_check_positive("resistance", r_of.value(lam))
                      * c_of.value(lam))

    def d_gamma0(lam: float) -> float:
        rr, cc = r_of.value(lam), c_of.value(lam)
        return -gamma0(lam) * (r_of.derivative(lam) / rr
                               + c_of.derivative(lam) / cc)

    return ParametricModel(omega, d_omega, gamma0, d_gamma0)


def capacitance_planar(g: PlanarCapacitor) -> tuple[float, float]:
    """(C, dC/dd) of an ideal parallel-plate capacitor, SI."""
    cap = EPSILON_0 * g.epsilon * g.area / g.gap
    return cap, -cap / g.gap


def capacitance_sphere_plate(g: SpherePlate) -> tuple[float, float]:
    """(C, dC/dd) of the sphere-plate interpolation formula.

    C = 4 pi eps0 R [1 + log(1 + R/d)/2], a good approximation for
    d <~ R; the derivative is analytic, dC/dd =
    -2 pi eps0 R^2 / (d^2 (1 + R/d)).
    """
    ratio = g.radius / g.gap
    cap = 4.0 * math.pi * EPSILON_0 * g.radius * (1.0 + 0.5 * math.log1p(ratio))
    dcap = -2.0 * math.pi * EPSILON_0 * g.radius ** 2 / (
        g.gap ** 2 * (1.0 + ratio))
    return cap, dcap


def planar_capacitance_law(area: float, epsilon: float = 1.0) -> ElementLaw:
    """C(d) = eps0 * epsilon * area / d as an ElementLaw over the gap."""
    coeff = EPSILON_0 * epsilon * area
    return ElementLaw(lambda d: coeff / d, lambda d: -coeff / (d * d))


def sphere_plate_capacitance_law(radius: float) -> ElementLaw:
    """Sphere-plate interpolation capacitance as an ElementLaw over the gap."""
    def value(d: float) -> float:
        return capacitance_sphere_plate(SpherePlate(radius, d))[0]

    def derivative(d: float) -> float:
        return capacitance_sphere_plate(SpherePlate(radius, d))[1]

    return ElementLaw(value, derivative)


def units_factors(temperature: float, units: str) -> tuple[float, float]:
    """(output force scale, temperature as a frequency).

    In SI mode the oscillator layer runs on frequencies in 1/s with
    T -> k_B T / hbar, and every force term carries exactly one power of
    hbar, so the reduced-unit result times hbar is newtons.
    """
    if units == "si":
        return HBAR, K_B * temperature / HBAR
    if units == "reduced":
        return 1.0, temperature
    raise ValueError("units must be 'si' or 'reduced'")


_OHMIC_DISPATCH = {
    "exact": force_ohmic_exact,
    "weak-dissipation": force_ohmic_weak_dissipation,
    "high-T": force_ohmic_high_t,
    "low-T": force_ohmic_low_t,
}


def _element_size_warnings(circuit, gamma: float, units: str) -> tuple[str, ...]:
    if units != "si" or circuit.element_size is None:
        return ()
    if gamma >= 0.1 * C_LIGHT / circuit.element_size:
        return (WARN_ELEMENT_SIZE,)
    return ()


def scale_result(res: ForceResult, hbar_out: float,
                 extra_warnings: tuple[str, ...] = ()) -> ForceResult:
    components = None
    if res.components is not None:
        components = {k: hbar_out * v for k, v in res.components.items()}
    return ForceResult(hbar_out * res.value, res.regime,
                       res.warnings + extra_warnings, components,
                       hbar_out * res.im_residual)


def force_series_rlc(c: SeriesRLC, temperature: float, lam: float,
                     regime: str = "exact", units: str = "si") -> ForceResult:
    """Fluctuation force of a series RLC loop whose capacitance sweeps.

    Composition of the series mapping with the Ohmic force at the chosen
    regime; R and L must be lambda-independent so that gamma stays
    fixed (otherwise the force is not finite and the difference-force
    route applies).
    """
    if regime not in _REGIMES:
        raise ValueError(f"regime must be one of {_REGIMES}")
    if not (c.resistance.constant and c.inductance.constant):
        raise PreconditionError(
            "series RLC force requires lambda-independent R and L")
    hbar_out, t_freq = units_factors(temperature, units)
    model = map_series(c)
    p = model.params_at(lam, t_freq)
    res = _OHMIC_DISPATCH[regime](p, model.d_omega(lam))
    return scale_result(res, hbar_out,
                        _element_size_warnings(c, p.damping.gamma0, units))


def force_parallel_rlc(c: ParallelRLC, temperature: float, lam: float,
                       regime: str = "exact", units: str = "si") -> ForceResult:
    """Fluctuation force of a parallel RLC loop whose inductance sweeps.

    gamma = 1/(RC) does not involve L, so a swept inductance leaves the
    damping fixed; R and C must be lambda-independent.
    """
    if regime not in _REGIMES:
        raise ValueError(f"regime must be one of {_REGIMES}")
    if not (c.resistance.constant and c.capacitance.constant):
        raise PreconditionError(
            "parallel RLC force requires lambda-independent R and C")
    hbar_out, t_freq = units_factors(temperature, units)
    model = map_parallel(c)
    p = model.params_at(lam, t_freq)
    res = _OHMIC_DISPATCH[regime](p, model.d_omega(lam))
    return scale_result(res, hbar_out,
                        _element_size_warnings(c, p.damping.gamma0, units))


def planar_rlc_low_t_weak(g: PlanarCapacitor, inductance: float,
                          resistance: float) -> float:
    """Low-temperature series-loop force estimate at weak dissipation, SI.

    f = -hbar / (4 sqrt(eps0 eps L S d)) + hbar R / (4 pi L d), valid for
    R^2 << 4 L d / (eps0 eps S) and T << hbar Omega / (2 pi k_B).
    """
    s, d, eps = g.area, g.gap, g.epsilon
    return (-HBAR / (4.0 * math.sqrt(EPSILON_0 * eps * inductance * s * d))
            + HBAR * resistance / (4.0 * math.pi * inductance * d))


def planar_rlc_low_t_strong(g: PlanarCapacitor, inductance: float,
                            resistance: float) -> float:
    """Low-temperature series-loop force estimate at strong dissipation, SI.

    f = -hbar / (2 pi eps0 eps S R) * log(eps0 eps S R^2 / (L d)).
    """
    s, d, eps = g.area, g.gap, g.epsilon
    return (-HBAR / (2.0 * math.pi * EPSILON_0 * eps * s * resistance)
            * math.log(EPSILON_0 * eps * s * resistance ** 2
                       / (inductance * d)))


def _thermal_wavelength_ratio(temperature: float, gap: float) -> float:
    return K_B * temperature * gap / (HBAR * C_LIGHT)


def casimir_reference(geometry, temperature: float, regime: str) -> ForceResult:
    """Reference Casimir-Lifshitz force for the same bodies, SI.

    Plate pair: -pi^2 hbar c S / (240 d^4) at low T and
    -zeta(3) k_B T S / (8 pi d^3) at high T.  Sphere-plate (proximity
    force approximation): -pi^3 hbar c R / (360 d^3) and
    -zeta(3) k_B T R / (8 d^2).

    The high-temperature plate result is the Drude-model value; it is
    half of the plasma-model prediction because the TM polarization
    contribution is fully suppressed at high temperatures.
    """
    if regime not in ("low-T", "high-T"):
        raise ValueError("regime must be 'low-T' or 'high-T'")
    warnings: tuple[str, ...] = ()
    x = _thermal_wavelength_ratio(temperature, geometry.gap)
    if 0.1 <= x <= 10.0:
        warnings = (WARN_REGIME_AMBIGUOUS,)
    if isinstance(geometry, PlanarCapacitor):
        s, d = geometry.area, geometry.gap
        if d * d / s > EDGE_EFFECT_RATIO:
            warnings = warnings + (WARN_EDGE_EFFECTS,)
        if regime == "low-T":
            value = -math.pi ** 2 * HBAR * C_LIGHT * s / (240.0 * d ** 4)
        else:
            value = -ZETA_3 * K_B * temperature * s / (8.0 * math.pi * d ** 3)
    elif isinstance(geometry, SpherePlate):
        r, d = geometry.radius, geometry.gap
        if d > r:
            warnings = warnings + (WARN_SPHERE_INTERP,)
        if regime == "low-T":
            value = -math.pi ** 3 * HBAR * C_LIGHT * r / (360.0 * d ** 3)
        else:
            value = -ZETA_3 * K_B * temperature * r / (8.0 * d ** 2)
    else:
        raise PreconditionError("geometry must be PlanarCapacitor or SpherePlate")
    return ForceResult(value, regime, warnings)


def sphere_plate_circuit_force(g: SpherePlate, inductance: float,
                               temperature: float, regime: str) -> ForceResult:
    """Dissipationless circuit force between sphere and plate, SI.

    Low T:  -hbar Omega_LC / (8 d (1 + d/R) [1 + log(1 + R/d)/2]),
    high T: -k_B T / (4 d (1 + d/R) [1 + log(1 + R/d)/2]),
    with Omega_LC = 1/sqrt(L C_sp(d)).  Both equal the corresponding
    limits of -(hbar/2) dOmega/dd and -(k_B T/Omega) dOmega/dd under the
    interpolated sphere-plate capacitance.
    """
    if regime not in ("low-T", "high-T"):
        raise ValueError("regime must be 'low-T' or 'high-T'")
    warnings: tuple[str, ...] = ()
    if g.gap > g.radius:
        warnings = (WARN_SPHERE_INTERP,)
    d, r = g.gap, g.radius
    bracket = 1.0 + 0.5 * math.log1p(r / d)
    geom = d * (1.0 + d / r) * bracket
    if regime == "low-T":
        cap, _ = capacitance_sphere_plate(g)
        omega_lc = 1.0 / math.sqrt(inductance * cap)
        value = -HBAR * omega_lc / (8.0 * geom)
    else:
        value = -K_B * temperature / (4.0 * geom)
    return ForceResult(value, regime, warnings)


def relative_weight(geometry, circuit: SeriesRLC, temperature: float,
                    regime: str) -> float:
    """Ratio r = f_circuit / f_Casimir in the dissipationless limit, SI.

    Planar plates:   r_low = (60/pi^2) (Omega_LC d / c) (d^2/S),
                     r_high = 4 pi d^2 / (zeta(3) S).
    Sphere-plate:    r_low = (Omega_LC d / c) (45/pi^3) / B,
                     r_high = (2/zeta(3)) / B,
    with B = (R/d + 1)(1 + log(R/d + 1)/2).  The exact analytic
    constants 45/pi^3 = 1.4514... and 2/zeta(3) = 1.6638... are used.
    The circuit supplies the (lambda-independent) inductance; finite
    damping corrections are available through the force routines but
    not in these closed forms.  temperature is accepted for interface
    symmetry; the closed-form weights are temperature free because T
    cancels between the circuit force and the Casimir reference.
    """
    if regime not in ("low-T", "high-T"):
        raise ValueError("regime must be 'low-T' or 'high-T'")
    del temperature
    if isinstance(geometry, PlanarCapacitor):
        s, d = geometry.area, geometry.gap
        if regime == "high-T":
            return 4.0 * math.pi * d * d / (ZETA_3 * s)
        inductance = circuit.inductance.value(d)
        omega_lc = math.sqrt(d / (EPSILON_0 * geometry.epsilon * inductance * s))
        return (60.0 / math.pi ** 2) * (omega_lc * d / C_LIGHT) * (d * d / s)
    if isinstance(geometry, SpherePlate):
        r, d = geometry.radius, geometry.gap
        bracket = (r / d + 1.0) * (1.0 + 0.5 * math.log1p(r / d))
        if regime == "high-T":
            return (2.0 / ZETA_3) / bracket
        inductance = circuit.inductance.value(d)
        cap, _ = capacitance_sphere_plate(geometry)
        omega_lc = 1.0 / math.sqrt(inductance * cap)
        return (omega_lc * d / C_LIGHT) * (45.0 / math.pi ** 3) / bracket
    raise PreconditionError("geometry must be PlanarCapacitor or SpherePlate")
