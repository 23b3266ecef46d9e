"""Built-in verification suite.

Each check pits a closed form against an independent route (quadrature
reconstruction, extrapolated limits, the sigma-matrix reduction) or pins
an anchored constant, and records measured values against fixed
tolerances.  ``run_suite("fast")`` uses reduced sampling; ``"full"``
runs the complete grids, including the k*w0 = 100 oracle comparisons at
their stated sizes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .beams import (
    BeamSpec,
    Configuration,
    CylPoint,
    Finite,
    FiniteMethod,
    GaussianSpectrum,
    NonDiffractive,
    Spinor,
    evaluate_finite,
    evaluate_nondiffractive,
    reconstruct_from_momentum,
    spectral_profile,
)
from .polarization import (
    closed_form_polarization,
    probability_density,
    spin_expectation,
    spin_polarization,
)
from .specfun import HalfInt, bessel_i_scaled, bessel_j_zero
from .topology import charge_boundary, charge_formula

__all__ = ["CheckLine", "CheckOutcome", "run_suite", "CHECKS"]

_J0_FIRST_ZERO_5DIGIT = 2.4048
_J0_FIRST_ZERO = 2.404825557695773


@dataclass(frozen=True)
class CheckLine:
    label: str
    measured: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.measured <= self.tolerance


@dataclass
class CheckOutcome:
    name: str
    lines: list[CheckLine] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)


def _spectrum() -> GaussianSpectrum:
    return GaussianSpectrum(1.0)


def _beam_nd(config: Configuration, twice_j: int, sigma: int) -> BeamSpec:
    return BeamSpec(config, HalfInt(twice_j), sigma, 2.0, NonDiffractive(1.2))


def _beam_finite_radial(twice_j: int, sigma: int, method=FiniteMethod.PARAXIAL_CLOSED_FORM) -> BeamSpec:
    return BeamSpec(Configuration.RADIAL, HalfInt(twice_j), sigma, 100.0,
                    Finite(_spectrum(), method))


def _beam_finite_azimuthal(twice_j: int, sigma: int) -> BeamSpec:
    return BeamSpec(Configuration.AZIMUTHAL, HalfInt(twice_j), sigma, 100.0,
                    Finite(_spectrum(), FiniteMethod.QUADRATURE))


def _evaluate(spec: BeamSpec, pt: CylPoint) -> Spinor:
    if isinstance(spec.kind, NonDiffractive):
        return evaluate_nondiffractive(spec, pt)
    return evaluate_finite(spec, pt)


def _four_families() -> dict[str, BeamSpec]:
    return {
        "nondiffractive radial": _beam_nd(Configuration.RADIAL, 1, 1),
        "nondiffractive azimuthal": _beam_nd(Configuration.AZIMUTHAL, 1, 1),
        "finite radial": _beam_finite_radial(1, 1),
        "finite azimuthal": _beam_finite_azimuthal(1, 1),
    }


def _random_point(rng, spec: BeamSpec, azimuthal_narrow_z: bool = True) -> CylPoint:
    if isinstance(spec.kind, NonDiffractive):
        r = rng.uniform(0.05, 6.0)
        z = rng.uniform(-5.0, 5.0)
    else:
        w0 = spec.kind.spectrum.w0
        z0 = spec.kind.spectrum.rayleigh_range(spec.k)
        r = rng.uniform(0.05 * w0, 3.36 * w0)
        if spec.configuration is Configuration.AZIMUTHAL and azimuthal_narrow_z:
            z = rng.uniform(-0.25 * z0, 0.25 * z0)
        else:
            z = rng.uniform(-z0, z0)
    return CylPoint(r, rng.uniform(0.0, 2.0 * math.pi), z)


# ----------------------------------------------------------------------
# the twelve checks
# ----------------------------------------------------------------------


def check_topological_charge(full: bool) -> list[CheckLine]:
    lines = [CheckLine("q_formula(1/2) == -1 (exact)", abs(charge_formula(HalfInt(1)) + 1.0), 0.0)]
    rep = charge_boundary(_beam_finite_radial(1, 1), z=0.0)
    lines.append(CheckLine("q_boundary(1/2, z=0) vs -1", abs(rep.q_boundary + 1.0), 2e-3))
    lines.append(CheckLine("q_formula(201/2) vs -1/2", abs(charge_formula(HalfInt(201)) + 0.5), 1e-2))
    return lines


def check_unit_polarization(full: bool) -> list[CheckLine]:
    n_pts = 1000 if full else 100
    rng = np.random.default_rng(2001)
    lines = []
    for name, spec in _four_families().items():
        worst = 0.0
        for _ in range(n_pts):
            pt = _random_point(rng, spec)
            s = spin_polarization(_evaluate(spec, pt), pt.phi)
            worst = max(worst, abs(s.norm - 1.0))
        lines.append(CheckLine(f"| |s|-1 | {name} ({n_pts} pts)", worst, 1e-10))
    return lines


def check_momentum_reconstruction(full: bool) -> list[CheckLine]:
    per_combo = 13 if full else 3
    rng = np.random.default_rng(2003)
    lines = []
    for config in (Configuration.RADIAL, Configuration.AZIMUTHAL):
        worst = 0.0
        for twice_j in (1, -1, 3, -3):
            sigma = 1 if twice_j > 0 else -1
            spec = _beam_nd(config, twice_j, sigma)
            for _ in range(per_combo):
                pt = CylPoint(rng.uniform(0.0, 8.0), rng.uniform(0.0, 2.0 * math.pi),
                              rng.uniform(-5.0, 5.0))
                a = evaluate_nondiffractive(spec, pt)
                b = reconstruct_from_momentum(spec, pt)
                worst = max(worst, abs(a.up - b.up), abs(a.down - b.down))
        lines.append(CheckLine(f"closed form vs reconstruction, {config.value}", worst, 1e-8))
    return lines


def check_paraxial_oracle(full: bool) -> list[CheckLine]:
    spectrum = _spectrum()
    k = 100.0
    z0 = spectrum.rayleigh_range(k)
    orders = (0, 1, 2) if full else (0, 1)
    radii = (0.5, 1.0, 3.0, 5.0) if full else (1.0, 3.0)
    heights = (0.0, z0 / 4.0, z0) if full else (0.0, z0 / 4.0)
    worst = 0.0
    for n in orders:
        for r in radii:
            for z in heights:
                cf = spectral_profile(n, r, z, spectrum, k, FiniteMethod.PARAXIAL_CLOSED_FORM)
                qd = spectral_profile(n, r, z, spectrum, k, FiniteMethod.QUADRATURE,
                                      paraxial_phase=True)
                worst = max(worst, abs(cf - qd) / abs(cf))
    return [CheckLine("closed form vs spectral quadrature (rel, k*w0=100)", worst, 1e-6)]


def check_polarization_cross(full: bool) -> list[CheckLine]:
    n_pts = 500 if full else 50
    rng = np.random.default_rng(2005)
    lines = []
    for name, spec in _four_families().items():
        worst = 0.0
        for _ in range(n_pts):
            pt = _random_point(rng, spec)
            s1 = spin_polarization(_evaluate(spec, pt), pt.phi)
            s2 = closed_form_polarization(spec, pt)
            worst = max(worst,
                        abs(s1.s_r - s2.s_r), abs(s1.s_phi - s2.s_phi),
                        abs(s1.s_z - s2.s_z))
        lines.append(CheckLine(f"closed-form vs spinor polarization, {name} ({n_pts} pts)",
                               worst, 1e-10))
    return lines


def check_axis_law(full: bool) -> list[CheckLine]:
    lines = []
    worst_pos, worst_neg = 0.0, 0.0
    for twice_j in (1, 3, 5):
        for spec in (_beam_nd(Configuration.RADIAL, twice_j, 1),
                     _beam_nd(Configuration.AZIMUTHAL, twice_j, 1),
                     _beam_finite_radial(twice_j, 1)):
            s = closed_form_polarization(spec, CylPoint(0.0, 0.0, 0.1))
            worst_pos = max(worst_pos, abs(s.s_z - 1.0))
    for twice_j in (-1, -3):
        for spec in (_beam_nd(Configuration.RADIAL, twice_j, -1),
                     _beam_finite_radial(twice_j, -1)):
            s = closed_form_polarization(spec, CylPoint(0.0, 0.0, 0.1))
            worst_neg = max(worst_neg, abs(s.s_z + 1.0))
    lines.append(CheckLine("s_z(0) = +1 for j in {1/2,3/2,5/2}", worst_pos, 1e-12))
    lines.append(CheckLine("s_z(0) = -1 for j in {-1/2,-3/2}", worst_neg, 1e-12))
    return lines


def check_spin_expectation(full: bool) -> list[CheckLine]:
    worst = 0.0
    for twice_j in (1, -1, 3):
        for sigma in (1, -1):
            spec = _beam_finite_radial(twice_j, sigma)
            vec = spin_expectation(spec, z=0.0, abs_tol=1e-9)
            worst = max(worst, float(np.max(np.abs(vec))))
    return [CheckLine("|<sigma>| finite radial, j in {+-1/2, 3/2}, sigma = +-1", worst, 1e-8)]


def check_nondiffraction(full: bool) -> list[CheckLine]:
    lines = []
    for config in (Configuration.RADIAL, Configuration.AZIMUTHAL):
        spec = _beam_nd(config, 1, 1)
        worst = 0.0
        for r in (0.3, 1.7, 4.1):
            pt0 = CylPoint(r, 0.9, 0.0)
            psi0 = evaluate_nondiffractive(spec, pt0)
            rho0 = probability_density(psi0)
            s0 = spin_polarization(psi0, pt0.phi)
            for z in (1.0 / spec.k, 10.0 / spec.k, 100.0 / spec.k):
                psi = evaluate_nondiffractive(spec, CylPoint(r, 0.9, z))
                s = spin_polarization(psi, pt0.phi)
                worst = max(
                    worst,
                    abs(probability_density(psi) - rho0) / max(rho0, 1e-30),
                    abs(s.s_r - s0.s_r), abs(s.s_phi - s0.s_phi), abs(s.s_z - s0.s_z),
                )
        lines.append(CheckLine(f"z-invariance of rho and s, {config.value}", worst, 1e-12))
    return lines


def _jz_residual(spec: BeamSpec, pt: CylPoint, h: float = 0.01) -> float:
    stencil = [_evaluate(spec, CylPoint(pt.r, pt.phi + k * h, pt.z)) for k in (-2, -1, 0, 1, 2)]
    dup = (stencil[0].up - 8 * stencil[1].up + 8 * stencil[3].up - stencil[4].up) / (12 * h)
    ddn = (stencil[0].down - 8 * stencil[1].down + 8 * stencil[3].down - stencil[4].down) / (12 * h)
    jf = float(spec.j)
    res_up = -1j * dup + 0.5 * stencil[2].up - jf * stencil[2].up
    res_dn = -1j * ddn - 0.5 * stencil[2].down - jf * stencil[2].down
    norm = math.sqrt(stencil[2].norm_sq)
    return math.sqrt(abs(res_up) ** 2 + abs(res_dn) ** 2) / norm


def check_jz_eigenstate(full: bool) -> list[CheckLine]:
    lines = []
    pts = [CylPoint(0.7, 0.3, 0.1), CylPoint(2.1, 4.4, -0.6)]
    for name, spec in _four_families().items():
        worst = max(_jz_residual(spec, pt) for pt in pts)
        lines.append(CheckLine(f"(-i d_phi + sigma_z/2) residual, {name}", worst, 1e-6))
    return lines


def check_bessel_anchor(full: bool) -> list[CheckLine]:
    zero = bessel_j_zero(0, 1)
    lines = [
        CheckLine("first J_0 zero vs 2.4048 (5 digits)", abs(zero - _J0_FIRST_ZERO_5DIGIT), 5e-5),
        CheckLine("first J_0 zero vs 2.404825557695773", abs(zero - _J0_FIRST_ZERO), 1e-9),
    ]
    worst = 0.0
    for twice_nu in (1, 2, 3, 4, 6):  # central orders 1/2 .. 3
        nu = HalfInt(twice_nu)
        for radius in (0.5, 3.0, 15.0, 45.0, 200.0, 1500.0):
            for theta in (0.0, 0.6, 1.2, -0.6, -1.2):
                z = complex(radius * math.cos(theta), radius * math.sin(theta))
                a = bessel_i_scaled(nu - 1, z)
                b = bessel_i_scaled(nu, z)
                c = bessel_i_scaled(nu + 1, z)
                res = abs(a - c - (2.0 * float(nu) / z) * b) / max(abs(a), abs(c))
                worst = max(worst, res)
    lines.append(CheckLine("I recurrence residual over complex domain", worst, 1e-9))
    return lines


def check_transversality(full: bool) -> list[CheckLine]:
    lines = []
    worst = 0.0
    for sigma in (1, -1):
        spec = _beam_nd(Configuration.AZIMUTHAL, 1, sigma)
        for r in (0.4, 1.3, 2.9, 5.2):
            for phi in (0.0, 1.1, 3.9):
                s = closed_form_polarization(spec, CylPoint(r, phi, 0.7))
                psi = evaluate_nondiffractive(spec, CylPoint(r, phi, 0.7))
                worst = max(worst, abs(s.s_r), abs(spin_polarization(psi, phi).s_r))
    lines.append(CheckLine("azimuthal family: |s_r|", worst, 1e-12))
    worst = 0.0
    methods = (FiniteMethod.PARAXIAL_CLOSED_FORM, FiniteMethod.QUADRATURE)
    for method in methods if full else methods[:1]:
        spec = _beam_finite_radial(1, 1, method)
        for r in (0.5, 1.5, 3.0):
            psi = evaluate_finite(spec, CylPoint(r, 0.8, 0.0))
            worst = max(worst, abs(spin_polarization(psi, 0.8).s_phi),
                        abs(closed_form_polarization(spec, CylPoint(r, 0.8, 0.0)).s_phi))
    lines.append(CheckLine("finite radial at waist: |s_phi|", worst, 1e-10))
    return lines


def check_large_r_asymptote(full: bool) -> list[CheckLine]:
    worst = 0.0
    for twice_j in (1, 3, 5):
        spec = _beam_finite_radial(twice_j, 1)
        rep = charge_boundary(spec, z=0.0)
        jf = twice_j / 2.0
        target = -jf / (jf * jf + 0.25)
        worst = max(worst, abs(rep.s_z_infinity - target))
    return [CheckLine("extrapolated s_z(inf) vs -j/(j^2+1/4)", worst, 2e-3)]


CHECKS = [
    ("1 topological charge", check_topological_charge),
    ("2 unit polarization", check_unit_polarization),
    ("3 momentum reconstruction", check_momentum_reconstruction),
    ("4 paraxial profile oracle", check_paraxial_oracle),
    ("5 polarization cross-check", check_polarization_cross),
    ("6 axis law", check_axis_law),
    ("7 spin expectation", check_spin_expectation),
    ("8 non-diffraction", check_nondiffraction),
    ("9 J_z eigenstate", check_jz_eigenstate),
    ("10 Bessel anchor", check_bessel_anchor),
    ("11 transversality", check_transversality),
    ("12 large-r asymptote", check_large_r_asymptote),
]


def run_suite(suite: str = "fast") -> list[CheckOutcome]:
    """Run every check; 'fast' trims sampling sizes, 'full' runs them all."""
    if suite not in ("fast", "full"):
        raise ValueError("suite must be 'fast' or 'full'")
    full = suite == "full"
    outcomes = []
    for name, fn in CHECKS:
        start = time.perf_counter()
        lines = fn(full)
        outcomes.append(CheckOutcome(name, lines, time.perf_counter() - start))
    return outcomes


def format_report(outcomes: list[CheckOutcome]) -> str:
    rows = []
    for oc in outcomes:
        status = "PASS" if oc.passed else "FAIL"
        rows.append(f"[{status}] {oc.name}  ({oc.elapsed:.2f}s)")
        for line in oc.lines:
            mark = "ok " if line.passed else "BAD"
            rows.append(f"    {mark} {line.label}: measured {line.measured:.3e}"
                        f" <= tolerance {line.tolerance:.3e}")
    n_pass = sum(oc.passed for oc in outcomes)
    rows.append(f"{n_pass}/{len(outcomes)} checks passed")
    return "\n".join(rows)
