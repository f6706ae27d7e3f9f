"""Material parameters, field configuration, and unit conversions.

Lab-facing quantities are SI-flavoured (Tesla, V/m, nm, meV).  Everything
downstream works with four dimensionless numbers derived here:

    b   magnetic compression factor of the dot orbitals (>= 1),
    d   half inter-dot distance in units of the effective Bohr radius,
    c   Coulomb interaction strength relative to the confinement quantum,
    chi electric dipole ratio e*E*a / (hbar*omega_0).

The confinement quantum hbar*omega_0 sets the energy unit and the single
well Bohr radius a_B = sqrt(hbar / (m omega_0)) sets the length unit.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

from scipy.constants import elementary_charge as E_CHARGE  # C
from scipy.constants import epsilon_0 as EPS0  # F/m
from scipy.constants import hbar as HBAR  # J s
from scipy.constants import m_e as M_ELECTRON  # kg

from .errors import InvalidParameterError, SingularConfigurationError

MEV_TO_J = 1e-3 * E_CHARGE
NM_TO_M = 1e-9


@dataclass(frozen=True)
class MaterialParams:
    """Host material and confinement description.

    effective_mass        electron mass as a multiple of the bare mass
    dielectric_const      relative permittivity kappa
    confinement_energy    single-well level spacing hbar*omega_0 in meV
    c_override            optional fixed value for the dimensionless
                          Coulomb strength, replacing the derived one
    """

    effective_mass: float
    dielectric_const: float
    confinement_energy: float
    c_override: float | None = None

    def validate(self):
        for name in ("effective_mass", "dielectric_const", "confinement_energy"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise InvalidParameterError(f"{name} must be finite and > 0, got {value!r}")
        if self.c_override is not None and not (
            math.isfinite(self.c_override) and self.c_override >= 0.0
        ):
            raise InvalidParameterError(f"c_override must be finite and >= 0, got {self.c_override!r}")


@dataclass(frozen=True)
class FieldConfig:
    """Applied fields and geometry.

    B   magnetic flux density in Tesla, along z (sign irrelevant: enters
        through b only, so negative values are folded by symmetry)
    E   electric field in V/m, along x
    a   half distance between the dot centers, in nm (> 0)
    """

    B: float
    E: float
    a: float

    def validate(self):
        if self.a == 0.0:
            raise SingularConfigurationError(
                "singular configuration d=0: the two dots coincide"
            )
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise InvalidParameterError(f"half-distance a must be finite and > 0, got {self.a!r}")
        if not math.isfinite(self.B):
            raise InvalidParameterError(f"B must be finite, got {self.B!r}")
        if not math.isfinite(self.E):
            raise InvalidParameterError(f"E must be finite, got {self.E!r}")


@dataclass(frozen=True)
class DerivedParams:
    """Dimensionless model inputs plus the frequencies they come from.

    larmor        omega_L = e B / (2 m), rad/s
    fock_darwin   Omega = sqrt(omega_0^2 + omega_L^2), rad/s
    b             Omega / omega_0, magnetic compression factor
    d             a / a_B, dimensionless half-distance
    bohr_radius   a_B in nm
    c_coulomb     dimensionless Coulomb strength
    efield_ratio  e E a / (hbar omega_0)
    """

    larmor: float
    fock_darwin: float
    b: float
    d: float
    bohr_radius: float
    c_coulomb: float
    efield_ratio: float


GAAS = MaterialParams(effective_mass=0.067, dielectric_const=13.1, confinement_energy=3.0)

BUILTIN_MATERIALS = {"gaas": GAAS}

#: Environment variable naming a directory of extra material JSON presets.
MATERIAL_PATH_ENV = "DOTX_MATERIAL_PATH"


def confinement_frequency(mat: MaterialParams) -> float:
    """omega_0 in rad/s."""
    return mat.confinement_energy * MEV_TO_J / HBAR


def bohr_radius_nm(mat: MaterialParams) -> float:
    """Effective Bohr radius sqrt(hbar / (m omega_0)) of one well, in nm."""
    m = mat.effective_mass * M_ELECTRON
    return math.sqrt(HBAR / (m * confinement_frequency(mat))) / NM_TO_M


def coulomb_strength(mat: MaterialParams) -> float:
    """Dimensionless Coulomb strength for the material.

    c = sqrt(pi/2) * (e^2 / (4 pi eps0 kappa a_B)) / (hbar omega_0),
    i.e. the screened interaction energy at the Bohr-radius scale
    measured against the confinement quantum.  GaAs with a 3 meV well
    gives c close to 2.36.
    """
    if mat.c_override is not None:
        return mat.c_override
    a_b = bohr_radius_nm(mat) * NM_TO_M
    e_coul = E_CHARGE**2 / (4.0 * math.pi * EPS0 * mat.dielectric_const * a_b)
    return math.sqrt(math.pi / 2.0) * e_coul / (mat.confinement_energy * MEV_TO_J)


def derive_parameters(mat: MaterialParams, fields: FieldConfig) -> DerivedParams:
    """Map lab inputs to the dimensionless model parameters."""
    mat.validate()
    fields.validate()
    m = mat.effective_mass * M_ELECTRON
    omega0 = confinement_frequency(mat)
    larmor = E_CHARGE * abs(fields.B) / (2.0 * m)
    fock_darwin = math.hypot(omega0, larmor)
    b = fock_darwin / omega0
    a_b = bohr_radius_nm(mat)
    d = fields.a / a_b
    chi = E_CHARGE * fields.E * fields.a * NM_TO_M / (mat.confinement_energy * MEV_TO_J)
    return DerivedParams(
        larmor=larmor,
        fock_darwin=fock_darwin,
        b=b,
        d=d,
        bohr_radius=a_b,
        c_coulomb=coulomb_strength(mat),
        efield_ratio=chi,
    )


def to_dimensionless(mat: MaterialParams, fields: FieldConfig):
    """(b, d, c, efield_ratio) for the given configuration."""
    p = derive_parameters(mat, fields)
    return p.b, p.d, p.c_coulomb, p.efield_ratio


def fields_from_dimensionless(
    mat: MaterialParams, b: float, d: float, efield_ratio: float = 0.0
) -> FieldConfig:
    """Invert (b, d, chi) back to lab fields for the given material."""
    mat.validate()
    if not (math.isfinite(b) and b >= 1.0):
        raise InvalidParameterError(f"compression factor b must be >= 1, got {b!r}")
    if not (math.isfinite(d) and d > 0.0):
        raise InvalidParameterError(f"dimensionless distance d must be > 0, got {d!r}")
    m = mat.effective_mass * M_ELECTRON
    omega0 = confinement_frequency(mat)
    larmor = omega0 * math.sqrt(b * b - 1.0)
    B = 2.0 * m * larmor / E_CHARGE
    a_nm = d * bohr_radius_nm(mat)
    E = efield_ratio * mat.confinement_energy * MEV_TO_J / (E_CHARGE * a_nm * NM_TO_M)
    return FieldConfig(B=B, E=E, a=a_nm)


def load_material(path: str) -> MaterialParams:
    """Read a material config file (JSON).

    Required keys: effective_mass, dielectric_const, confinement_energy_mev.
    Optional: c_override.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        mat = MaterialParams(
            effective_mass=float(raw["effective_mass"]),
            dielectric_const=float(raw["dielectric_const"]),
            confinement_energy=float(raw["confinement_energy_mev"]),
            c_override=(float(raw["c_override"]) if "c_override" in raw else None),
        )
    except KeyError as exc:
        raise InvalidParameterError(f"material file {path} is missing key {exc}") from exc
    mat.validate()
    return mat


def material_by_name(name: str, search_dir: str | None = None) -> MaterialParams:
    """Resolve a preset name, falling back to `<dir>/<name>.json`.

    The directory comes from `search_dir` or the DOTX_MATERIAL_PATH
    environment variable.
    """
    key = name.lower()
    if key in BUILTIN_MATERIALS:
        return BUILTIN_MATERIALS[key]
    directory = search_dir or os.environ.get(MATERIAL_PATH_ENV)
    if directory:
        candidate = os.path.join(directory, f"{name}.json")
        if os.path.exists(candidate):
            return load_material(candidate)
    raise InvalidParameterError(f"unknown material preset {name!r}")
