"""Regenerate tests/golden/pinned_values.json.

Every value here is computed by an independent route (extended-precision
arithmetic via mpmath, series summation, brute-force 2D quadrature), not
by the library under test.  Run manually when the pinned set changes:

    python3 tests/make_golden.py
"""

import json
import pathlib

from mpmath import mp, exp, mpf, pi, quad, sinh, sqrt
from scipy.constants import elementary_charge, epsilon_0, hbar, m_e

mp.dps = 50

GAAS_MASS = mpf("0.067")
GAAS_KAPPA = mpf("13.1")
GAAS_HW0_MEV = mpf(3)

E = mpf(repr(elementary_charge))
HBAR = mpf(repr(hbar))
M_E = mpf(repr(m_e))
EPS0 = mpf(repr(epsilon_0))


def i0_series(x, tol=mpf("1e-40")):
    """Power-series evaluation of I0; term count adapts to x."""
    x = mpf(x)
    q = x * x / 4
    total = term = mpf(1)
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        total += term
        if term < tol * total:
            return total


def closed_form_j(b, d, c, chi):
    """The analytic exchange energy, re-evaluated in extended precision
    with the series I0 (independent of the library's float math)."""
    b, d, c, chi = mpf(b), mpf(d), mpf(c), mpf(chi)
    d2 = d * d
    x1 = b * d2
    x2 = d2 * (b - 1 / b)
    bracket = (
        c * sqrt(b) * (exp(-x1) * i0_series(x1) - exp(x2) * i0_series(x2))
        + mpf(3) / (4 * b) * (1 + x1)
        + mpf(3) / 2 * chi * chi / d2
    )
    return bracket / sinh(2 * d2 * (2 * b - 1 / b))


def overlap_quadrature(b, d):
    """Overlap of the two dot orbitals by brute-force 2D quadrature.

    Orbitals at E = 0: centers -d and +d, width b, phase slopes
    +lambda*d and -lambda*d with lambda = sqrt(b^2 - 1); the product
    integrand carries exp(2 i lambda d y), whose real part is kept.
    """
    b, d = mpf(b), mpf(d)
    lam = sqrt(b * b - 1)
    norm = b / pi

    def integrand_x(x):
        return exp(-b / 2 * ((x + d) ** 2 + (x - d) ** 2))

    def integrand_y(y):
        return exp(-b * y * y) * mp.cos(2 * lam * d * y)

    cut = 10 / sqrt(b)
    ix = quad(integrand_x, [-d - cut, d + cut])
    iy = quad(integrand_y, [-cut, cut])
    return norm * ix * iy


def main():
    gaas_m = GAAS_MASS * M_E
    hw0_j = GAAS_HW0_MEV * mpf("1e-3") * E
    omega0 = hw0_j / HBAR
    a_b = sqrt(HBAR / (gaas_m * omega0))

    larmor_1t = E * 1 / (2 * gaas_m)  # B = 1 T
    hbar_larmor_mev = HBAR * larmor_1t / (mpf("1e-3") * E)
    b_1t = sqrt(1 + (larmor_1t / omega0) ** 2)

    c_gaas = sqrt(pi / 2) * E * E / (4 * pi * EPS0 * GAAS_KAPPA * a_b) / hw0_j

    j_b1 = closed_form_j(1, mpf("0.7"), mpf("2.36"), 0)
    j_gaas_b0_mev = closed_form_j(1, mpf("0.7"), c_gaas, 0) * GAAS_HW0_MEV
    j_gaas_1t_mev = closed_form_j(b_1t, mpf("0.7"), c_gaas, 0) * GAAS_HW0_MEV

    golden = {
        "_comment": "independently computed reference values; see make_golden.py",
        "bohr_radius_gaas_nm": float(a_b / mpf("1e-9")),
        "hbar_omega_larmor_1t_mev": float(hbar_larmor_mev),
        "b_at_1t": float(b_1t),
        "c_coulomb_gaas": float(c_gaas),
        "efield_ratio_e1e5_a13p65nm": float(
            E * mpf("1e5") * mpf("13.65e-9") / hw0_j
        ),
        "j_dimensionless_b1_d0p7_c2p36": float(j_b1),
        "j_mev_gaas_b0_a0p7ab": float(j_gaas_b0_mev),
        "j_mev_gaas_1t_a0p7ab": float(j_gaas_1t_mev),
        "overlap_b1p0406_d0p7": float(overlap_quadrature(mpf("1.0406"), mpf("0.7"))),
        "overlap_b1_d0p7": float(overlap_quadrature(1, mpf("0.7"))),
        "coulomb_polar_gauss_over_r": float(pi ** mpf("1.5")),
        "bessel_i0": {
            str(x): float(i0_series(x)) for x in ["0", "0.5", "1", "2", "5", "7.5", "10", "30", "100"]
        },
    }

    out = pathlib.Path(__file__).parent / "golden" / "pinned_values.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(golden, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out}")
    for key, value in sorted(golden.items()):
        if key != "_comment":
            print(f"  {key}: {value}")


if __name__ == "__main__":
    main()
