"""Redivision-based perturbation engine for finite Hermitian problems.

Given H = diag(e0) + h1 expressed in the eigenbasis of the unperturbed
part, the full Hamiltonian is *redivided* into its diagonal part
d = e0 + diag(h1) and the strictly off-diagonal coupling g1. Correction
sums over coupling paths then build improved level energies

    E~_b = d_b + G_b(2) + G_b(3) + G_b(4),

whose gaps drive the oscillation phase of the improved transition
probability, while the amplitude denominator keeps the plain diagonal
gap. All energy denominators below use the redivided diagonal d, which
is what removes degeneracies lifted by diag(h1).

Everything is a pure function over immutable inputs; sweeps may evaluate
these in parallel without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from . import hermitian
from .errors import DegenerateDenominator, DimensionMismatch

#: gaps smaller than this fraction of max|d| count as degenerate
DEGENERACY_RTOL = 1e-15


@dataclass(frozen=True)
class PerturbationProblem:
    """Unperturbed eigenvalues e0 and the perturbation h1 in that basis."""

    e0: NDArray[np.float64]
    h1: NDArray[np.complex128]

    def __post_init__(self):
        e0 = np.asarray(self.e0, dtype=np.float64)
        h1 = hermitian.require_hermitian(self.h1)
        if e0.ndim != 1 or e0.shape[0] != h1.shape[0]:
            raise DimensionMismatch(
                f"e0 has shape {e0.shape} but h1 is {h1.shape[0]}x{h1.shape[1]}"
            )
        if not np.all(np.isfinite(e0)):
            raise ValueError("e0 contains non-finite entries")
        object.__setattr__(self, "e0", e0)
        object.__setattr__(self, "h1", h1)

    @property
    def dim(self) -> int:
        return self.e0.shape[0]

    def full_hamiltonian(self) -> NDArray[np.complex128]:
        return np.diag(self.e0).astype(np.complex128) + self.h1


@dataclass(frozen=True)
class RedividedProblem:
    """Diagonal energies d = e0 + diag(h1) and the off-diagonal coupling g1."""

    d: NDArray[np.float64]
    g1: NDArray[np.complex128]

    @property
    def dim(self) -> int:
        return self.d.shape[0]

    @property
    def degeneracy_tol(self) -> float:
        return DEGENERACY_RTOL * float(np.max(np.abs(self.d)))


def redivide(problem: PerturbationProblem) -> RedividedProblem:
    """Split diag(e0) + h1 into diag(d) + g1 with an exactly zero g1 diagonal.

    The original Hamiltonian is recoverable: diag(d) + g1 reproduces
    diag(e0) + h1 entry for entry.
    """
    d = problem.e0 + np.diag(problem.h1).real
    g1 = problem.h1.copy()
    np.fill_diagonal(g1, 0.0)
    return RedividedProblem(d=d, g1=g1)


def _checked_gap(r: RedividedProblem, beta: int, other: int, tol: float) -> float:
    gap = r.d[beta] - r.d[other]
    if abs(gap) <= tol:
        raise DegenerateDenominator(beta, other)
    return gap


def g2(r: RedividedProblem, beta: int) -> float:
    """Second-order correction sum_{b != beta} |g1[beta, b]|^2 / (d_beta - d_b).

    Terms with zero coupling contribute nothing regardless of their gap;
    a zero gap under a nonzero coupling raises DegenerateDenominator.
    """
    tol = r.degeneracy_tol
    total = 0.0
    for b in range(r.dim):
        if b == beta:
            continue
        coupling = r.g1[beta, b]
        if coupling == 0.0:
            continue
        gap = _checked_gap(r, beta, b, tol)
        total += (coupling.real**2 + coupling.imag**2) / gap
    return total


def g3(r: RedividedProblem, beta: int) -> float:
    """Third-order correction over paths beta -> b1 -> b2 -> beta.

    sum over b1, b2 != beta of
        g1[beta, b1] g1[b1, b2] g1[b2, beta] / ((d_beta - d_b1)(d_beta - d_b2)).

    Hermiticity makes the total real; the residual imaginary part is
    asserted negligible against the summed term magnitudes and dropped.
    """
    tol = r.degeneracy_tol
    total = 0.0 + 0.0j
    budget = 0.0
    for b1 in range(r.dim):
        if b1 == beta:
            continue
        g_in = r.g1[beta, b1]
        if g_in == 0.0:
            continue
        gap1 = _checked_gap(r, beta, b1, tol)
        for b2 in range(r.dim):
            if b2 == beta:
                continue
            g_out = r.g1[b2, beta]
            if g_out == 0.0:
                continue
            mid = r.g1[b1, b2]
            if mid == 0.0:
                continue
            gap2 = _checked_gap(r, beta, b2, tol)
            term = g_in * mid * g_out / (gap1 * gap2)
            total += term
            budget += abs(term)
    assert abs(total.imag) <= 1e-12 * budget + 1e-300, "Hermiticity violated in g3"
    return float(total.real)


def g4(r: RedividedProblem, beta: int) -> float:
    """Fourth-order correction: the eta-weighted path sum minus its collapse term.

    First part sums g1[beta,b1] g1[b1,b2] g1[b2,b3] g1[b3,beta] over
    b1, b3 != beta and b2 != beta (the eta factor), divided by the three
    gaps (d_beta - d_b1)(d_beta - d_b2)(d_beta - d_b3). Note b2 may be a
    level with no direct coupling to beta, so its gap is only checked
    when the path numerator is nonzero. Second part subtracts

        sum_{b1,b2 != beta} |g1[beta,b1]|^2 |g1[beta,b2]|^2
                            / ((d_beta - d_b1)^2 (d_beta - d_b2)).
    """
    tol = r.degeneracy_tol
    first = 0.0 + 0.0j
    budget = 0.0
    for b1 in range(r.dim):
        if b1 == beta:
            continue
        g_in = r.g1[beta, b1]
        if g_in == 0.0:
            continue
        gap1 = _checked_gap(r, beta, b1, tol)
        for b2 in range(r.dim):
            if b2 == beta:
                continue
            for b3 in range(r.dim):
                if b3 == beta:
                    continue
                g_out = r.g1[b3, beta]
                if g_out == 0.0:
                    continue
                numerator = g_in * r.g1[b1, b2] * r.g1[b2, b3] * g_out
                if numerator == 0.0:
                    continue
                gap2 = _checked_gap(r, beta, b2, tol)
                gap3 = _checked_gap(r, beta, b3, tol)
                term = numerator / (gap1 * gap2 * gap3)
                first += term
                budget += abs(term)
    assert abs(first.imag) <= 1e-12 * budget + 1e-300, "Hermiticity violated in g4"

    second = 0.0
    for b1 in range(r.dim):
        if b1 == beta:
            continue
        c1 = r.g1[beta, b1]
        if c1 == 0.0:
            continue
        gap1 = _checked_gap(r, beta, b1, tol)
        w1 = (c1.real**2 + c1.imag**2) / gap1**2
        for b2 in range(r.dim):
            if b2 == beta:
                continue
            c2 = r.g1[beta, b2]
            if c2 == 0.0:
                continue
            gap2 = _checked_gap(r, beta, b2, tol)
            second += w1 * (c2.real**2 + c2.imag**2) / gap2
    return float(first.real) - second


@dataclass(frozen=True)
class ImprovedSpectrum:
    """Improved level energies with their per-order correction terms.

    ``g_terms[b, k]`` holds G_b(k + 2) for the orders actually included;
    columns beyond the truncation order stay zero. Energies satisfy
    ``energies[b] == d[b] + g_terms[b].sum()`` by construction.
    """

    order: int
    energies: NDArray[np.float64]
    g_terms: NDArray[np.float64]

    @property
    def dim(self) -> int:
        return self.energies.shape[0]


def improved_energies(r: RedividedProblem, order: int = 4) -> ImprovedSpectrum:
    """Build E~_b = d_b + G_b(2) + ... + G_b(order) for every level.

    ``order`` 1 returns the redivided diagonal itself. Degenerate
    denominators propagate from the G sums.
    """
    if order not in (1, 2, 3, 4):
        raise ValueError(f"order must be 1..4, got {order}")
    n = r.dim
    g_terms = np.zeros((n, 3))
    for beta in range(n):
        if order >= 2:
            g_terms[beta, 0] = g2(r, beta)
        if order >= 3:
            g_terms[beta, 1] = g3(r, beta)
        if order >= 4:
            g_terms[beta, 2] = g4(r, beta)
    energies = r.d.copy()
    for k in range(3):
        energies = energies + g_terms[:, k]
    return ImprovedSpectrum(order=order, energies=energies, g_terms=g_terms)


def first_order_amplitude(
    r: RedividedProblem,
    spectrum: ImprovedSpectrum,
    gamma: int,
    beta: int,
    t: float,
    hbar: float,
) -> complex:
    """First-order amplitude for finding level gamma having started in beta.

    Returns (g1[gamma, beta] / (d_gamma - d_beta)) * (1 - exp(i w~ t / hbar))
    with w~ = E~_gamma - E~_beta from ``spectrum``. The prefactor keeps the
    plain diagonal gap; only the oscillating phase is improved. Zero
    coupling gives exactly zero.
    """
    _check_pair(r, gamma, beta, hbar)
    coupling = r.g1[gamma, beta]
    if coupling == 0.0:
        return 0.0 + 0.0j
    gap = _checked_gap(r, gamma, beta, r.degeneracy_tol)
    omega_tilde = spectrum.energies[gamma] - spectrum.energies[beta]
    return complex((coupling / gap) * (1.0 - np.exp(1j * omega_tilde * t / hbar)))


@dataclass(frozen=True)
class TransitionResult:
    """A transition probability plus the phase its sin^2 actually used."""

    gamma: int
    beta: int
    probability: float
    angular_argument: float


def _check_pair(r, gamma: int, beta: int, hbar: float) -> None:
    if gamma == beta:
        raise ValueError("transition requires two distinct levels")
    if not (0 <= gamma < r.dim and 0 <= beta < r.dim):
        raise IndexError(f"level indices ({gamma}, {beta}) out of range for dim {r.dim}")
    if not hbar > 0.0:
        raise ValueError(f"hbar must be positive, got {hbar}")


def transition_probability_improved(
    r: RedividedProblem,
    spectrum: ImprovedSpectrum,
    gamma: int,
    beta: int,
    t: float,
    hbar: float,
) -> TransitionResult:
    """Improved transition probability beta -> gamma.

    P = |g1|^2 sin^2(w~ t / 2 hbar) / (w / 2)^2, where the phase gap
    w~ = E~_gamma - E~_beta comes from the improved spectrum but the
    amplitude denominator w = d_gamma - d_beta does not. That asymmetry
    is deliberate and is what limits the amplitude accuracy at strong
    coupling.
    """
    _check_pair(r, gamma, beta, hbar)
    omega_tilde = spectrum.energies[gamma] - spectrum.energies[beta]
    argument = omega_tilde * t / (2.0 * hbar)
    coupling = r.g1[gamma, beta]
    if coupling == 0.0:
        return TransitionResult(gamma, beta, 0.0, argument)
    omega = _checked_gap(r, gamma, beta, r.degeneracy_tol)
    envelope = (coupling.real**2 + coupling.imag**2) / (omega / 2.0) ** 2
    return TransitionResult(gamma, beta, envelope * np.sin(argument) ** 2, argument)


def transition_probability_traditional(
    r: RedividedProblem, gamma: int, beta: int, t: float, hbar: float
) -> TransitionResult:
    """First-order probability with the unimproved gap in the phase.

    P = |g1|^2 sin^2(w t / 2 hbar) / (w / 2)^2 with w = d_gamma - d_beta.
    Coincides with the improved result when an order-1 spectrum is used.
    """
    _check_pair(r, gamma, beta, hbar)
    coupling = r.g1[gamma, beta]
    if coupling == 0.0:
        omega = r.d[gamma] - r.d[beta]
        return TransitionResult(gamma, beta, 0.0, omega * t / (2.0 * hbar))
    omega = _checked_gap(r, gamma, beta, r.degeneracy_tol)
    argument = omega * t / (2.0 * hbar)
    envelope = (coupling.real**2 + coupling.imag**2) / (omega / 2.0) ** 2
    return TransitionResult(gamma, beta, envelope * np.sin(argument) ** 2, argument)


def transition_probability_exact(
    problem: PerturbationProblem, gamma: int, beta: int, t: float, hbar: float
) -> TransitionResult:
    """Exact probability |<phi_gamma| exp(-i H t / hbar) |phi_beta>|^2.

    Builds the full Hamiltonian, diagonalizes it, and sums the spectral
    amplitudes sum_k <phi_gamma|Psi_k><Psi_k|phi_beta> e^{-i E_k t/hbar}.
    The reported angular argument pairs each basis level with the
    eigenvector it dominates, which reduces to the usual two-level gap
    for weakly mixed problems.
    """
    if gamma == beta:
        raise ValueError("transition requires two distinct levels")
    if not (0 <= gamma < problem.dim and 0 <= beta < problem.dim):
        raise IndexError(
            f"level indices ({gamma}, {beta}) out of range for dim {problem.dim}"
        )
    if not hbar > 0.0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    dec = hermitian.eigendecompose(problem.full_hamiltonian())
    v = dec.eigenvectors
    amplitudes = v[gamma, :] * np.conj(v[beta, :])
    z = np.sum(amplitudes * np.exp(-1j * dec.eigenvalues * (t / hbar)))
    k_gamma = int(np.argmax(np.abs(v[gamma, :])))
    k_beta = int(np.argmax(np.abs(v[beta, :])))
    omega_exact = dec.eigenvalues[k_gamma] - dec.eigenvalues[k_beta]
    return TransitionResult(
        gamma, beta, float(abs(z) ** 2), omega_exact * t / (2.0 * hbar)
    )
