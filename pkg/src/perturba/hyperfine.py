"""Hydrogen ground-state hyperfine structure in a constant magnetic field.

The unperturbed Hamiltonian is the electron-proton spin coupling
W sigma_e . sigma_p, whose coupled eigenbasis is the triplet/singlet set

    phi1 = aa,  phi2 = (ab + ba)/sqrt(2),  phi3 = bb,  phi4 = (ab - ba)/sqrt(2)

with eigenvalues (W, W, W, -3W). A uniform field B along +z adds the
electron Zeeman term B mu_e sigma_ez (the proton term is dropped, its
moment being ~660x smaller). In the coupled basis that perturbation is
diagonal (B mu_e, 0, -B mu_e, 0) plus a single off-diagonal coupling
B mu_e between phi2 and phi4.

This module builds that 4x4 problem for the perturbation engine, carries
the closed-form exact and improved solutions, and exposes the three
normalized 2 -> 4 transition-probability curves (exact, improved,
traditional) that the sweep tooling compares:

    pT = sin^2(sqrt(4 W^2 + (mu_e B)^2) t / hbar) / (1 + (mu_e B)^2 / 4 W^2)
    pI = sin^2((2 W + (B mu_e)^2 / 4W - (B mu_e)^4 / (4W)^3) t / hbar)
    p  = sin^2(2 W t / hbar)

Units: energies in eV, time in seconds, fields in tesla. mu_e enters as
a positive magnitude, matching the formulas above (the physical electron
moment is negative; only |mu_e| appears here).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .perturb import PerturbationProblem

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA inputs in SI units plus the derived eV-based quantities.

    Defaults are the 2002 recommended values; every field can be
    overridden (e.g. from a CLI config file) to track revisions.
    """

    mu_e: float = 9.28476412e-24  # electron magnetic moment magnitude, J/T
    delta_nu_h: float = 1.4204057517667e9  # ground-state hyperfine frequency, Hz
    planck_h: float = 6.6260693e-34  # Planck constant, J s
    elementary_charge: float = 1.60217653e-19  # C

    @property
    def mu_e_ev_per_tesla(self) -> float:
        return self.mu_e / self.elementary_charge

    @property
    def hbar_evs(self) -> float:
        return self.planck_h / TWO_PI / self.elementary_charge

    @property
    def w_ev(self) -> float:
        """Hyperfine coupling W = h * delta_nu / 4 expressed in eV."""
        return self.planck_h * self.delta_nu_h / (4.0 * self.elementary_charge)


@dataclass(frozen=True)
class HyperfineConfig:
    """A field magnitude (tesla, +z direction) plus the constants to use."""

    b_field: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if not (np.isfinite(self.b_field) and self.b_field >= 0.0):
            raise ValueError(f"b_field must be finite and >= 0, got {self.b_field}")

    @property
    def coupling_ev(self) -> float:
        """Zeeman scale B mu_e in eV."""
        return self.constants.mu_e_ev_per_tesla * self.b_field

    @property
    def is_perturbative(self) -> bool:
        """True while B mu_e < 0.1 W, the regime the expansions assume."""
        return self.coupling_ev < 0.1 * self.constants.w_ev


@dataclass(frozen=True)
class CoupledBasis:
    """Triplet/singlet combinations in the product basis {aa, ab, ba, bb}."""

    phi1: NDArray[np.float64]
    phi2: NDArray[np.float64]
    phi3: NDArray[np.float64]
    phi4: NDArray[np.float64]

    @property
    def matrix(self) -> NDArray[np.float64]:
        """Columns phi1..phi4, i.e. the product -> coupled change of basis."""
        return np.column_stack([self.phi1, self.phi2, self.phi3, self.phi4])


def coupled_basis() -> CoupledBasis:
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    return CoupledBasis(
        phi1=np.array([1.0, 0.0, 0.0, 0.0]),
        phi2=np.array([0.0, inv_sqrt2, inv_sqrt2, 0.0]),
        phi3=np.array([0.0, 0.0, 0.0, 1.0]),
        phi4=np.array([0.0, inv_sqrt2, -inv_sqrt2, 0.0]),
    )


_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def pauli_operators() -> tuple[NDArray, NDArray, NDArray]:
    """The 4x4 product-basis operators sigma_e . sigma_p, sigma_ez, sigma_pz."""
    spin_dot = (
        np.kron(_SIGMA_X, _SIGMA_X)
        + np.kron(_SIGMA_Y, _SIGMA_Y)
        + np.kron(_SIGMA_Z, _SIGMA_Z)
    )
    assert np.all(spin_dot.imag == 0.0)
    eye = np.eye(2)
    return spin_dot.real, np.kron(_SIGMA_Z.real, eye), np.kron(eye, _SIGMA_Z.real)


def build_problem(config: HyperfineConfig) -> PerturbationProblem:
    """Assemble the 4x4 hyperfine + Zeeman problem in the coupled basis.

    Built from explicit Pauli tensor algebra in the product basis and then
    transformed, rather than hard-coded, so the structure of the matrices
    (e0 = (W, W, W, -3W); Zeeman diagonal (x, 0, -x, 0) with the single
    phi2/phi4 coupling x = B mu_e) is a computed consequence of
    sigma_ez phi2 = phi4 and friends.

    The transform sandwiches with unnormalized integer basis columns and
    rescales by the exact squared norms afterwards, so every nonzero
    entry is divided by exactly 1 or 2 and no 1/sqrt(2) roundoff leaks
    into the matrices.
    """
    w = config.constants.w_ev
    x = config.coupling_ev
    spin_dot, sigma_ez, _ = pauli_operators()
    h0 = w * spin_dot
    h1 = x * sigma_ez

    basis_int = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 1.0],
            [0.0, 1.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]
    )
    norm2 = np.array([1.0, 2.0, 1.0, 2.0])
    rescale = np.sqrt(np.multiply.outer(norm2, norm2))

    h0_coupled = (basis_int.T @ h0 @ basis_int) / rescale
    h1_coupled = (basis_int.T @ h1 @ basis_int) / rescale
    assert np.all(h0_coupled == np.diag(np.diag(h0_coupled)))

    return PerturbationProblem(e0=np.diag(h0_coupled).copy(), h1=h1_coupled)


def exact_eigensystem_closed_form(
    config: HyperfineConfig,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Closed-form eigenvalues and eigenvectors of the full 4x4 Hamiltonian.

    Returned in conventional label order (not ascending):

        E1 = W + B mu_e          Psi1 = phi1
        E2 = -W + sqrt(4W^2 + (mu_e B)^2)
        E3 = W - B mu_e          Psi3 = phi3
        E4 = -W - sqrt(4W^2 + (mu_e B)^2)

    Eigenvector columns hold components along phi1..phi4 (the coupled
    basis the 4x4 problem is written in). Psi2 and Psi4 are the
    normalized phi2/phi4 superpositions written in terms of
    omega42 = -4W and omega42_exact = E4 - E2. At B = 0 those formulas
    degenerate to 0/0 and the unperturbed limits phi2, phi4 are returned
    instead.
    """
    w = config.constants.w_ev
    x = config.coupling_ev
    s = np.sqrt(4.0 * w * w + x * x)
    energies = np.array([w + x, -w + s, w - x, -w - s])
    vectors = np.eye(4)
    if x != 0.0:
        omega42 = -4.0 * w
        omega42_exact = -2.0 * s
        a2 = omega42 + omega42_exact
        a4 = omega42 - omega42_exact
        norm2 = np.sqrt(a2 * a2 + 4.0 * x * x)
        norm4 = np.sqrt(a4 * a4 + 4.0 * x * x)
        # columns are (phi2, phi4) components of Psi2 and Psi4
        vectors[1, 1] = a2 / norm2
        vectors[3, 1] = -2.0 * x / norm2
        vectors[1, 3] = a4 / norm4
        vectors[3, 3] = -2.0 * x / norm4
    return energies, vectors


def improved_energies_closed_form(config: HyperfineConfig) -> NDArray[np.float64]:
    """The four improved energies, label order matching the exact system.

    E~1 = W + B mu_e and E~3 = W - B mu_e are exact; levels 2 and 4 pick
    up the symmetric +-((B mu_e)^2 / 4W - (B mu_e)^4 / (4W)^3) corrections.
    """
    w = config.constants.w_ev
    x = config.coupling_ev
    quadratic = x * x / (4.0 * w)
    quartic = x**4 / (4.0 * w) ** 3
    return np.array(
        [w + x, w + quadratic - quartic, w - x, -3.0 * w - quadratic + quartic]
    )


def angular_rates(constants: PhysicalConstants, b_field):
    """Angular rates (rad/s) of the three normalized curves; b_field may be an array.

    Returns (exact, improved, traditional) where each curve is
    sin^2(rate * t) apart from the exact curve's amplitude denominator.
    The traditional rate 2W/hbar does not depend on the field.
    """
    w = constants.w_ev
    hbar = constants.hbar_evs
    x = constants.mu_e_ev_per_tesla * np.asarray(b_field, dtype=np.float64)
    exact = np.sqrt(4.0 * w * w + x * x) / hbar
    improved = (2.0 * w + (x * x) / (4.0 * w) - x**4 / (4.0 * w) ** 3) / hbar
    traditional = 2.0 * w / hbar
    return exact, improved, traditional


def _normalized_triple(w: float, x, hbar: float, t):
    """Vectorized (pT, pI, p); x and t broadcast against each other."""
    x = np.asarray(x, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    u = (x * x) / (4.0 * w * w)
    p_exact = np.sin(np.sqrt(4.0 * w * w + x * x) * t / hbar) ** 2 / (1.0 + u)
    improved_gap = 2.0 * w + (x * x) / (4.0 * w) - x**4 / (4.0 * w) ** 3
    p_improved = np.sin(improved_gap * t / hbar) ** 2
    # field-independent by construction: broadcasting replicates the same bits
    p_traditional = np.broadcast_to(
        np.sin(2.0 * w * t / hbar) ** 2, p_exact.shape
    ).copy()
    return p_exact, p_improved, p_traditional


def normalized_probabilities(config: HyperfineConfig, t):
    """The three dimensionless 2 -> 4 comparison curves at time(s) ``t``.

    Each is the raw transition probability rescaled by the common factor
    (omega42 / 2)^2 / (mu_e B)^2 = (2W / B mu_e)^2, which strips the
    shared envelope so the phase behavior can be compared directly.
    Returns (exact, improved, traditional); scalars in, scalars out.
    """
    pT, pI, p = _normalized_triple(
        config.constants.w_ev, config.coupling_ev, config.constants.hbar_evs, t
    )
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(pT), float(pI), float(p)
    return pT, pI, p


def normalization_factor(config: HyperfineConfig) -> float:
    """(omega42 / 2)^2 / (mu_e B)^2: raw probability times this gives the curves."""
    w = config.constants.w_ev
    x = config.coupling_ev
    if x == 0.0:
        raise ValueError("normalization undefined at B = 0")
    return (2.0 * w / x) ** 2
