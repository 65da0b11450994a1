"""Physical constants (SI, CODATA 2018) used by the circuit layer.

A single table so unit conversions cannot drift between modules.
"""

HBAR = 1.054571817e-34        # J s
K_B = 1.380649e-23            # J / K (exact)
C_LIGHT = 299792458.0         # m / s (exact)
EPSILON_0 = 8.8541878128e-12  # F / m

#: Apery's constant zeta(3), used by the thermal Casimir references.
ZETA_3 = 1.2020569031595942854
