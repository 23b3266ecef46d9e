"""Spinor beam families and their evaluation.

Four families of cylindrically symmetric spin-polarized beams, all
eigenstates of the total angular momentum J_z = L_z + sigma_z/2 with
half-odd-integer eigenvalue j (hbar = 1, lengths in user units):

* non-diffractive, radial configuration: fixed transverse wavenumber
  kappa; components are J_{j-1/2} and J_{j+1/2} with a sigma sign on the
  upper component,
* non-diffractive, azimuthal configuration: the same Bessel structure
  with cone-angle weights sqrt(1 +- kappa/k) and a -i on one component,
* finite radial: a Gaussian spectrum over kappa; the radial profiles
  F_n(r, z) are evaluated either by direct quadrature of the spectral
  integral (exact longitudinal wavenumber) or by the paraxial
  modified-Bessel-Gaussian closed form,
* finite azimuthal: quadrature only, with the weights inside the
  spectral integral.

The momentum-space reconstruction (an azimuthal integral against the
plane-wave kernel) is provided as an independent oracle for the
non-diffractive closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .quadrature import integrate
from .specfun import HalfInt, bessel_i_scaled, bessel_j

__all__ = [
    "Configuration",
    "FiniteMethod",
    "GaussianSpectrum",
    "NonDiffractive",
    "Finite",
    "BeamSpec",
    "CylPoint",
    "Spinor",
    "eigenspinor_radial",
    "eigenspinor_azimuthal",
    "evaluate_nondiffractive",
    "evaluate_finite",
    "spectral_profile",
    "weighted_spectral_profile",
    "reconstruct_from_momentum",
]

_TWO_PI = 2.0 * math.pi
_AMP_FINITE = 1.0 / math.sqrt(4.0 * math.pi)

# the spectrum is numerically dead beyond kappa ~ 10/w0 (|f|^2 tail < 1e-43)
_SPECTRUM_CUT = 10.0
_MAX_GUARD_PANELS = 3000


class Configuration(Enum):
    RADIAL = "radial"
    AZIMUTHAL = "azimuthal"


class FiniteMethod(Enum):
    PARAXIAL_CLOSED_FORM = "paraxial"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class GaussianSpectrum:
    """Normalized Gaussian spectral amplitude f(kappa) = sqrt(2) w0 exp(-w0^2 kappa^2 / 2).

    Satisfies the continuum normalization: the integral of |f|^2 kappa
    over [0, infinity) is exactly 1.
    """

    w0: float

    def __post_init__(self):
        if not (self.w0 > 0.0 and math.isfinite(self.w0)):
            raise ValueError("waist w0 must be positive and finite")

    def amplitude(self, kappa):
        return math.sqrt(2.0) * self.w0 * np.exp(-0.5 * self.w0 ** 2 * np.square(kappa))

    def rayleigh_range(self, k: float) -> float:
        return k * self.w0 ** 2

    def paraxial_valid(self, k: float) -> bool:
        return k * self.w0 >= 10.0


@dataclass(frozen=True)
class NonDiffractive:
    kappa: float


@dataclass(frozen=True)
class Finite:
    spectrum: GaussianSpectrum
    method: FiniteMethod = FiniteMethod.QUADRATURE


@dataclass(frozen=True)
class CylPoint:
    """Observation point (r, phi, z); phi is reduced to [0, 2 pi)."""

    r: float
    phi: float
    z: float

    def __post_init__(self):
        if not (self.r >= 0.0 and math.isfinite(self.r)):
            raise ValueError("r must be finite and >= 0")
        if not (math.isfinite(self.phi) and math.isfinite(self.z)):
            raise ValueError("phi and z must be finite")
        object.__setattr__(self, "phi", self.phi % _TWO_PI)


@dataclass(frozen=True)
class Spinor:
    """Two-component amplitude (spin-up, spin-down) at a point."""

    up: complex
    down: complex

    @property
    def norm_sq(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2


@dataclass(frozen=True)
class BeamSpec:
    """Full description of one beam.

    j must be half-odd-integer; the orbital quantum number of the upper
    component is m = j - sigma/2, always an integer.  Non-diffractive
    kinds need 0 < kappa < k; the paraxial closed form is only defined
    for the radial configuration and requires k * w0 >= 10.
    """

    configuration: Configuration
    j: HalfInt
    sigma: int
    k: float
    kind: NonDiffractive | Finite

    def __post_init__(self):
        if not isinstance(self.j, HalfInt) or self.j.is_integer:
            raise ValueError(f"j must be a half-odd-integer HalfInt, got {self.j!r}")
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma!r}")
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise ValueError("k must be positive and finite")
        if isinstance(self.kind, NonDiffractive):
            if not (0.0 < self.kind.kappa < self.k):
                raise ValueError("non-diffractive beams need 0 < kappa < k")
        elif isinstance(self.kind, Finite):
            if self.kind.method is FiniteMethod.PARAXIAL_CLOSED_FORM:
                if self.configuration is not Configuration.RADIAL:
                    raise ValueError(
                        "the paraxial closed form exists only for the radial configuration"
                    )
                if not self.kind.spectrum.paraxial_valid(self.k):
                    raise ValueError("paraxial closed form requires k * w0 >= 10")
        else:
            raise ValueError(f"unknown beam kind {self.kind!r}")

    @property
    def m(self) -> int:
        return HalfInt(self.j.twice_value - self.sigma).as_int()

    @property
    def order_minus(self) -> int:
        return (self.j - HalfInt(1)).as_int()

    @property
    def order_plus(self) -> int:
        return (self.j + HalfInt(1)).as_int()

    @property
    def kz(self) -> float:
        if not isinstance(self.kind, NonDiffractive):
            raise ValueError("kz is defined for non-diffractive beams only")
        return math.sqrt(self.k ** 2 - self.kind.kappa ** 2)


# ----------------------------------------------------------------------
# eigenspinors
# ----------------------------------------------------------------------


def eigenspinor_radial(sigma: int, phi: float) -> Spinor:
    """Unit eigenspinor of sigma . v with v = -e_phi, eigenvalue sigma."""
    inv = 1.0 / math.sqrt(2.0)
    if sigma == 1:
        return Spinor(inv + 0.0j, -1j * cmath.exp(1j * phi) * inv)
    if sigma == -1:
        return Spinor(-1j * cmath.exp(-1j * phi) * inv, inv + 0.0j)
    raise ValueError(f"sigma must be +1 or -1, got {sigma!r}")


def eigenspinor_azimuthal(sigma: int, phi: float, w_rho: float) -> Spinor:
    """Unit eigenspinor of sigma . u, u = v x p/p, for w_rho = k_rho / k."""
    if not 0.0 <= w_rho <= 1.0:
        raise ValueError("w_rho must lie in [0, 1]")
    inv = 1.0 / math.sqrt(2.0)
    a = math.sqrt(1.0 + w_rho)
    b = math.sqrt(1.0 - w_rho)
    if sigma == 1:
        return Spinor(a * inv + 0.0j, -cmath.exp(1j * phi) * b * inv)
    if sigma == -1:
        return Spinor(cmath.exp(-1j * phi) * b * inv, a * inv + 0.0j)
    raise ValueError(f"sigma must be +1 or -1, got {sigma!r}")


# ----------------------------------------------------------------------
# non-diffractive beams
# ----------------------------------------------------------------------


def evaluate_nondiffractive(spec: BeamSpec, x: CylPoint) -> Spinor:
    """Spinor wavefunction of a fixed-kappa beam at a point.

    Radial configuration:
        sqrt(kappa/4 pi) (sigma J_{j-1/2} e^{i(j-1/2)phi},
                                J_{j+1/2} e^{i(j+1/2)phi}) e^{i k_z z}
    Azimuthal configuration: same structure with weights
    sqrt(1 + kappa/k) on one component and -i sqrt(1 - kappa/k) on the
    other, the placement swapping with sigma.
    """
    if not isinstance(spec.kind, NonDiffractive):
        raise ValueError("evaluate_nondiffractive needs a NonDiffractive spec")
    kappa = spec.kind.kappa
    n_minus, n_plus = spec.order_minus, spec.order_plus
    amp = math.sqrt(kappa / (4.0 * math.pi))
    carrier = cmath.exp(1j * spec.kz * x.z)
    j_minus = bessel_j(n_minus, kappa * x.r)
    j_plus = bessel_j(n_plus, kappa * x.r)
    ph_minus = cmath.exp(1j * n_minus * x.phi)
    ph_plus = cmath.exp(1j * n_plus * x.phi)
    if spec.configuration is Configuration.RADIAL:
        up = spec.sigma * j_minus * ph_minus
        down = j_plus * ph_plus
    else:
        w_kappa = kappa / spec.k
        a = math.sqrt(1.0 + w_kappa)
        b = math.sqrt(1.0 - w_kappa)
        if spec.sigma == 1:
            up = a * j_minus * ph_minus
            down = -1j * b * j_plus * ph_plus
        else:
            up = -1j * b * j_minus * ph_minus
            down = a * j_plus * ph_plus
    return Spinor(amp * carrier * up, amp * carrier * down)


# ----------------------------------------------------------------------
# spectral profiles of finite beams
# ----------------------------------------------------------------------


def _guard_panels(kappa_cut: float, r: float, z: float, k: float) -> int:
    # pre-split so each starting panel spans at most about one period of
    # the fastest phase: J_n(kappa r) oscillates at rate r in kappa, and
    # the propagation phase at rate |z| kappa / k_z.
    kz_min = math.sqrt(max(k * k - kappa_cut * kappa_cut, 1e-12 * k * k))
    rate = r + abs(z) * kappa_cut / kz_min
    return min(_MAX_GUARD_PANELS, int(kappa_cut * rate / _TWO_PI) + 4)


def _quadrature_profile(
    n: int,
    r: float,
    z: float,
    spectrum: GaussianSpectrum,
    k: float,
    paraxial_phase: bool,
    weight_sign: int,
    abs_tol: float | None,
    rel_tol: float,
) -> complex:
    sign = 1.0
    if n < 0:
        n = -n
        if n % 2 == 1:
            sign = -1.0
    kappa_cut = min(k, _SPECTRUM_CUT / spectrum.w0)

    def integrand(kap):
        f = spectrum.amplitude(kap)
        if paraxial_phase:
            phase = np.exp(1j * (k - np.square(kap) / (2.0 * k)) * z)
        else:
            kz = np.sqrt(np.maximum(k * k - np.square(kap), 0.0))
            phase = np.exp(1j * kz * z)
        vals = f * bessel_j(n, kap * r) * phase * kap
        if weight_sign != 0:
            vals = vals * np.sqrt(np.clip(1.0 + weight_sign * kap / k, 0.0, None))
        return vals

    if abs_tol is None:
        abs_tol = 1e-13 * math.sqrt(2.0) / spectrum.w0
    res = integrate(
        integrand,
        0.0,
        kappa_cut,
        abs_tol=abs_tol,
        rel_tol=rel_tol,
        initial_panels=_guard_panels(kappa_cut, r, z, k),
    )
    return sign * res.value


def _scaled_bessel_bracket(n: int, x: complex) -> complex:
    """e^{-x} (I_{(n-1)/2}(x) - I_{(n+1)/2}(x)) for n >= 1, Re x >= 0.

    A joint ascending series is used for small |x| where the plain
    difference of the two modified Bessel values would cancel.
    """
    if abs(x) < 0.5:
        nu = 0.5 * (n - 1)
        term = cmath.exp(nu * cmath.log(x / 2.0) - math.lgamma(nu + 1.0)) if x != 0 else (
            1.0 + 0.0j if n == 1 else 0.0j
        )
        total = 0.0j
        q = x * x / 4.0
        for kk in range(0, 60):
            total += term * (1.0 - (x / 2.0) / (nu + kk + 1.0))
            term = term * q / ((kk + 1.0) * (nu + kk + 1.0))
            if abs(term) <= 1e-18 * abs(total):
                break
        return total * cmath.exp(-x)
    return bessel_i_scaled(HalfInt(n - 1), x) - bessel_i_scaled(HalfInt(n + 1), x)


def _paraxial_profile(n: int, r: float, z: float, spectrum: GaussianSpectrum, k: float) -> complex:
    # modified-Bessel-Gaussian closed form; w^2 = w0^2 (1 + i z/z0) with
    # the principal square root, so Re(1/w^2) > 0 and the profile decays.
    w0 = spectrum.w0
    z0 = k * w0 * w0
    wsq = w0 * w0 * complex(1.0, z / z0)
    carrier = cmath.exp(1j * k * z)
    if n == 0:
        # the half-integer bracket collapses: e^{-x}(I_{-1/2} - I_{1/2})
        # equals sqrt(2/(pi x)) e^{-2x}, leaving a pure Gaussian
        return math.sqrt(2.0) * w0 / wsq * cmath.exp(-r * r / (2.0 * wsq)) * carrier
    if r == 0.0:
        return 0.0j
    x = r * r / (4.0 * wsq)
    w = cmath.sqrt(wsq)
    pref = math.sqrt(math.pi) * w0 * r / (2.0 * wsq * w)
    return pref * _scaled_bessel_bracket(n, x) * carrier


def spectral_profile(
    n: int,
    r: float,
    z: float,
    spectrum: GaussianSpectrum,
    k: float,
    method: FiniteMethod = FiniteMethod.QUADRATURE,
    paraxial_phase: bool = False,
    abs_tol: float | None = None,
    rel_tol: float = 1e-9,
) -> complex:
    """Radial profile F_n(r, z) of a finite beam component.

    Quadrature method: the spectral integral of f(kappa) J_n(kappa r)
    e^{i k_z z} kappa over [0, k], with exact k_z = sqrt(k^2 - kappa^2)
    by default; ``paraxial_phase=True`` replaces the phase by
    k - kappa^2/(2k) (used by the consistency checks).  Negative n is
    reflected through (-1)^n F_{|n|}.

    Paraxial method: the modified-Bessel-Gaussian closed form, defined
    for n >= 0 and k * w0 >= 10 only.
    """
    if r < 0.0:
        raise ValueError("r must be >= 0")
    if method is FiniteMethod.PARAXIAL_CLOSED_FORM:
        if n < 0:
            raise ValueError("the paraxial closed form is derived for n >= 0 only")
        if not spectrum.paraxial_valid(k):
            raise ValueError("paraxial closed form requires k * w0 >= 10")
        return _paraxial_profile(n, r, z, spectrum, k)
    return _quadrature_profile(n, r, z, spectrum, k, paraxial_phase, 0, abs_tol, rel_tol)


def weighted_spectral_profile(
    n: int,
    r: float,
    z: float,
    spectrum: GaussianSpectrum,
    k: float,
    weight_sign: int,
    abs_tol: float | None = None,
    rel_tol: float = 1e-9,
) -> complex:
    """Spectral profile with the azimuthal cone weight sqrt(1 +- kappa/k).

    ``weight_sign`` selects the sign inside the root.  Quadrature only;
    negative n is reflected like the plain profile.
    """
    if weight_sign not in (1, -1):
        raise ValueError("weight_sign must be +1 or -1")
    if r < 0.0:
        raise ValueError("r must be >= 0")
    return _quadrature_profile(n, r, z, spectrum, k, False, weight_sign, abs_tol, rel_tol)


def _profile_reflected(
    spec: BeamSpec, n: int, r: float, z: float,
    abs_tol: float | None = None, rel_tol: float = 1e-9,
) -> complex:
    # closed-form route for negative orders goes through the reflection
    # (-1)^n F_{|n|}; the quadrature route already reflects internally.
    kind = spec.kind
    if kind.method is FiniteMethod.PARAXIAL_CLOSED_FORM:
        sign = 1.0 if n >= 0 or n % 2 == 0 else -1.0
        return sign * _paraxial_profile(abs(n), r, z, kind.spectrum, spec.k)
    return _quadrature_profile(n, r, z, kind.spectrum, spec.k, False, 0, abs_tol, rel_tol)


def _weighted_reflected(
    spec: BeamSpec, n: int, sign: int, r: float, z: float,
    abs_tol: float | None = None, rel_tol: float = 1e-9,
) -> complex:
    return _quadrature_profile(n, r, z, spec.kind.spectrum, spec.k, False, sign,
                               abs_tol, rel_tol)


def evaluate_finite(
    spec: BeamSpec, x: CylPoint,
    abs_tol: float | None = None, rel_tol: float = 1e-9,
) -> Spinor:
    """Spinor wavefunction of a finite (square-integrable) beam at a point.

    Radial: (1/sqrt(4 pi)) (sigma F_{j-1/2} e^{i(j-1/2)phi},
                                  F_{j+1/2} e^{i(j+1/2)phi}).
    Azimuthal: the profiles carry the cone weights inside the spectral
    integral, with the -i placement following the eigenspinor of the
    azimuthal unit-vector operator.
    """
    if not isinstance(spec.kind, Finite):
        raise ValueError("evaluate_finite needs a Finite spec")
    n_minus, n_plus = spec.order_minus, spec.order_plus
    ph_minus = cmath.exp(1j * n_minus * x.phi)
    ph_plus = cmath.exp(1j * n_plus * x.phi)
    if spec.configuration is Configuration.RADIAL:
        f_minus = _profile_reflected(spec, n_minus, x.r, x.z, abs_tol, rel_tol)
        f_plus = _profile_reflected(spec, n_plus, x.r, x.z, abs_tol, rel_tol)
        up = spec.sigma * f_minus * ph_minus
        down = f_plus * ph_plus
    else:
        if spec.kind.method is not FiniteMethod.QUADRATURE:
            raise ValueError("finite azimuthal beams require the quadrature method")
        if spec.sigma == 1:
            up = _weighted_reflected(spec, n_minus, +1, x.r, x.z, abs_tol, rel_tol) * ph_minus
            down = -1j * _weighted_reflected(spec, n_plus, -1, x.r, x.z, abs_tol, rel_tol) * ph_plus
        else:
            up = -1j * _weighted_reflected(spec, n_minus, -1, x.r, x.z, abs_tol, rel_tol) * ph_minus
            down = _weighted_reflected(spec, n_plus, +1, x.r, x.z, abs_tol, rel_tol) * ph_plus
    return Spinor(_AMP_FINITE * up, _AMP_FINITE * down)


# ----------------------------------------------------------------------
# momentum-space reconstruction oracle
# ----------------------------------------------------------------------

_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)


def reconstruct_from_momentum(spec: BeamSpec, x: CylPoint) -> Spinor:
    """Evaluate a non-diffractive beam from its momentum representation.

    The radial delta of the momentum basis collapses the transform to a
    single azimuthal integral of the eigenspinor against the plane-wave
    kernel e^{i kappa r cos(phi' - phi)}; that integral is done by
    adaptive quadrature.  Serves as the independent oracle for
    :func:`evaluate_nondiffractive`.
    """
    if not isinstance(spec.kind, NonDiffractive):
        raise ValueError("reconstruct_from_momentum needs a NonDiffractive spec")
    kappa = spec.kind.kappa
    m = spec.m
    w_rho = kappa / spec.k
    inv_sqrt2 = 1.0 / math.sqrt(2.0)

    if spec.configuration is Configuration.RADIAL:
        if spec.sigma == 1:
            comp_up = lambda p: inv_sqrt2 * np.ones_like(p, dtype=complex)
            comp_dn = lambda p: -1j * np.exp(1j * p) * inv_sqrt2
        else:
            comp_up = lambda p: -1j * np.exp(-1j * p) * inv_sqrt2
            comp_dn = lambda p: inv_sqrt2 * np.ones_like(p, dtype=complex)
    else:
        a = math.sqrt(1.0 + w_rho) * inv_sqrt2
        b = math.sqrt(1.0 - w_rho) * inv_sqrt2
        if spec.sigma == 1:
            comp_up = lambda p: a * np.ones_like(p, dtype=complex)
            comp_dn = lambda p: -b * np.exp(1j * p)
        else:
            comp_up = lambda p: b * np.exp(-1j * p)
            comp_dn = lambda p: a * np.ones_like(p, dtype=complex)

    kernel = lambda p: np.exp(1j * (m * p + kappa * x.r * np.cos(p - x.phi)))
    panels = max(8, int(kappa * x.r / math.pi) + 4)
    up_int = integrate(lambda p: comp_up(p) * kernel(p), 0.0, _TWO_PI,
                       abs_tol=1e-13, rel_tol=1e-11, initial_panels=panels).value
    dn_int = integrate(lambda p: comp_dn(p) * kernel(p), 0.0, _TWO_PI,
                       abs_tol=1e-13, rel_tol=1e-11, initial_panels=panels).value

    pref = (
        (1.0 / _TWO_PI)
        * math.sqrt(kappa / _TWO_PI)
        * _I_POW[(-m) % 4]
        * cmath.exp(1j * spec.kz * x.z)
    )
    return Spinor(pref * up_int, pref * dn_int)
