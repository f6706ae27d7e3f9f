"""Exchange energy of two laterally coupled single-electron quantum dots.

Closed-form Heitler-London result in the dimensionless parameters
(b, d, c, chi), an independent quadrature oracle built from the dot
orbitals, and sweep/switch tooling on top, all behind the `dotx` CLI.
"""

from .closed_form import ExchangeBreakdown, exchange_energy, exchange_energy_lab, overlap
from .errors import (
    DotxError,
    InvalidArgumentError,
    InvalidParameterError,
    NoRootInBracketError,
    QuadratureError,
    RootConvergenceError,
    ScenarioError,
    SingularConfigurationError,
)
from .oracle import (
    HLBreakdown,
    OrbitalSpec,
    TermEstimate,
    apply_hamiltonian,
    assemble_oracle,
    build_orbital,
    eval_orbital,
    overlap_numeric,
    upsilon_coulomb,
    upsilon_quartic,
    upsilon_single,
)
from .special import (
    QuadratureSpec,
    bessel_i0,
    bessel_i0e,
    integrate_2d,
    integrate_coulomb_relative,
)
from .sweeps import (
    ScenarioResult,
    ScenarioStep,
    SweepRow,
    SweepSpec,
    SwitchPoint,
    brent,
    find_switch,
    scan_switches,
    sweep,
    switching_scenario,
)
from .units import (
    BUILTIN_MATERIALS,
    GAAS,
    DerivedParams,
    FieldConfig,
    MaterialParams,
    bohr_radius_nm,
    coulomb_strength,
    derive_parameters,
    fields_from_dimensionless,
    load_material,
    material_by_name,
    to_dimensionless,
)

__version__ = "0.1.0"
