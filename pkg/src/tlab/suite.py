"""Standard configuration suite used by the CLI and the regression tests.

Fourteen representative configurations: for each thermal placement the four
damping/coupling variants at unequal wave speeds (k3 = 2 keeps chi nonzero
in the tau = (1,0,0) case), plus the equal-speed first-order type-III
variants of the second and third placements, where the high-frequency decay
becomes exponential.
"""

from __future__ import annotations

from tlab.model import Coupling, Damping, SystemConfig, Tau


def _cfg(tau: Tau, damping: Damping, coupling: Coupling,
         equal_speeds: bool = False) -> SystemConfig:
    k3 = 1.0 if equal_speeds else 2.0
    return SystemConfig(k1=1.0, k2=1.0, k3=k3, k4=1.0, k5=1.0, gamma=1.0,
                        tau=tau, damping=damping, coupling=coupling)


def standard_suite() -> dict[str, SystemConfig]:
    suite: dict[str, SystemConfig] = {}
    for tau in (Tau.TAU1, Tau.TAU2, Tau.TAU3):
        for damping in (Damping.TYPE_III, Damping.FRICTIONAL):
            for coupling in (Coupling.FIRST_ORDER, Coupling.ZERO_ORDER):
                name = (f"tau{tau.value}-{damping.value}-{coupling.value}")
                suite[name] = _cfg(tau, damping, coupling)
    for tau in (Tau.TAU2, Tau.TAU3):
        name = f"tau{tau.value}-type3-first-eq"
        suite[name] = _cfg(tau, Damping.TYPE_III, Coupling.FIRST_ORDER,
                           equal_speeds=True)
    return suite


def unstable_reference() -> SystemConfig:
    """tau = (1,0,0) with k2 = k3: purely imaginary spectrum, no decay."""
    return SystemConfig(k1=1.0, k2=1.0, k3=1.0, k4=1.0, k5=1.0, gamma=1.0,
                        tau=Tau.TAU1, damping=Damping.TYPE_III,
                        coupling=Coupling.FIRST_ORDER)
