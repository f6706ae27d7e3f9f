"""Analytic exchange energy of the coupled-dot pair.

The Heitler-London treatment of two laterally coupled single-electron
dots collapses to a closed form in the dimensionless parameters (b, d, c,
chi): a 1/sinh tunnelling prefactor multiplying three contributions,

    coulomb  c sqrt(b) [exp(-b d^2) I0(b d^2)
                        - exp(d^2 (b - 1/b)) I0(d^2 (b - 1/b))],
    quartic  (3 / 4b) (1 + b d^2),
    efield   (3/2) chi^2 / d^2,

where chi = e E a / (hbar omega_0).  The overlap of the two dot orbitals
is S = exp(-d^2 (2b - 1/b)), and the prefactor 1/sinh(2 d^2 (2b - 1/b))
equals 2 S^2 / (1 - S^4).  J > 0 favours the spin singlet
(antiferromagnetic coupling), J < 0 the triplet (ferromagnetic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError, SingularConfigurationError
from .special import bessel_i0e
from .units import FieldConfig, MaterialParams, derive_parameters


@dataclass(frozen=True)
class ExchangeBreakdown:
    """Exchange energy and its term-by-term decomposition.

    j_dimensionless = prefactor * (coulomb_term + quartic_term + efield_term)
    and j_mev is the same number scaled by the confinement quantum.
    """

    prefactor: float
    coulomb_term: float
    quartic_term: float
    efield_term: float
    j_dimensionless: float
    j_mev: float


def overlap(b: float, d: float) -> float:
    """Overlap S of the left and right dot orbitals."""
    _check_bd(b, d, allow_zero_d=True)
    return math.exp(-d * d * (2.0 * b - 1.0 / b))


def exchange_energy(
    b: float,
    d: float,
    c: float,
    efield_ratio: float,
    energy_scale_mev: float = 1.0,
) -> ExchangeBreakdown:
    """Exchange splitting for dimensionless inputs.

    `energy_scale_mev` is the confinement quantum used to express j_mev;
    callers working in lab units pass the material value (see
    `exchange_energy_lab`), dimensionless callers can leave the default.
    """
    _check_bd(b, d, allow_zero_d=False)
    if not (math.isfinite(c) and c >= 0.0):
        raise InvalidParameterError(f"coulomb strength c must be finite and >= 0, got {c!r}")
    if not math.isfinite(efield_ratio):
        raise InvalidParameterError(f"efield_ratio must be finite, got {efield_ratio!r}")

    d2 = d * d
    x1 = b * d2
    x2 = d2 * (b - 1.0 / b)
    arg = 2.0 * (x1 + x2)  # 2 d^2 (2b - 1/b)
    csb = c * math.sqrt(b)

    quartic_term = 0.75 / b * (1.0 + x1)
    efield_term = 1.5 * (efield_ratio * efield_ratio) / d2
    # 1/sinh(arg) == 2 exp(-arg) to double precision once exp(-2 arg)
    # underflows; switching forms avoids overflowing sinh itself.
    prefactor = 1.0 / math.sinh(arg) if arg < 350.0 else 2.0 * math.exp(-arg)
    # The term as printed overflows through exp(x2) for extreme (b, d);
    # report -inf there, while j below uses an overflow-free regrouping.
    coulomb_term = (
        csb * (bessel_i0e(x1) - math.exp(2.0 * x2) * bessel_i0e(x2))
        if 2.0 * x2 < 700.0
        else -math.inf
    )

    em = math.exp(-arg)
    j_dimensionless = (
        2.0 * em * (csb * bessel_i0e(x1) + quartic_term + efield_term)
        - 2.0 * csb * bessel_i0e(x2) * math.exp(-2.0 * x1)
    ) / (1.0 - em * em)

    return ExchangeBreakdown(
        prefactor=prefactor,
        coulomb_term=coulomb_term,
        quartic_term=quartic_term,
        efield_term=efield_term,
        j_dimensionless=j_dimensionless,
        j_mev=j_dimensionless * energy_scale_mev,
    )


def exchange_energy_lab(mat: MaterialParams, fields: FieldConfig) -> ExchangeBreakdown:
    """Exchange splitting for lab inputs (Tesla, V/m, nm)."""
    p = derive_parameters(mat, fields)
    return exchange_energy(
        p.b, p.d, p.c_coulomb, p.efield_ratio, energy_scale_mev=mat.confinement_energy
    )


def _check_bd(b: float, d: float, allow_zero_d: bool):
    if not (math.isfinite(b) and b >= 1.0 - 1e-12):
        raise InvalidParameterError(f"compression factor b must be >= 1, got {b!r}")
    if not math.isfinite(d) or d < 0.0:
        raise InvalidParameterError(f"distance d must be finite and >= 0, got {d!r}")
    if d == 0.0 and not allow_zero_d:
        raise SingularConfigurationError(
            "singular configuration d=0: the two dots coincide"
        )
