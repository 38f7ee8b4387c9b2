#!/usr/bin/env python3
"""Walk through the correction engine on the 4x4 spin problem at unit scale.

Uses symbolic-friendly values W = 1, B mu_e = 0.1 so every matrix entry
is readable, then shows how the improved energies close the gap to the
exact spectrum order by order.
"""

import numpy as np

from perturba import (
    PerturbationProblem,
    eigendecompose,
    g2,
    g3,
    g4,
    improved_energies,
    redivide,
)

w, x = 1.0, 0.1

e0 = np.array([w, w, w, -3 * w])
h1 = np.array(
    [
        [x, 0, 0, 0],
        [0, 0, 0, x],
        [0, 0, -x, 0],
        [0, x, 0, 0],
    ],
    dtype=complex,
)
problem = PerturbationProblem(e0=e0, h1=h1)

print("full Hamiltonian H = diag(e0) + h1:")
print(problem.full_hamiltonian().real)

r = redivide(problem)
print("\nredivided diagonal d (degeneracy of the triplet is lifted):")
print(r.d)
print("off-diagonal coupling g1 (only the 2<->4 pair couples):")
print(r.g1.real)

print("\nper-level corrections:")
print(f"{'level':>5} {'G2':>12} {'G3':>12} {'G4':>14}")
for beta in range(4):
    print(f"{beta + 1:>5} {g2(r, beta):>12.6g} {g3(r, beta):>12.6g} {g4(r, beta):>14.8g}")

exact = eigendecompose(problem.full_hamiltonian()).eigenvalues
print("\nimproved energies versus exact, by truncation order:")
print(f"{'order':>5} {'max |E~ - E_exact|':>20}")
for order in (1, 2, 3, 4):
    improved = np.sort(improved_energies(r, order).energies)
    print(f"{order:>5} {np.max(np.abs(improved - exact)):>20.3e}")

print("\nshrinking the coupling shows the order-4 error scaling like x^5:")
print(f"{'coupling':>10} {'order-2 error':>15} {'order-4 error':>15}")
for scale in (0.1, 0.03, 0.01, 0.003):
    scaled = PerturbationProblem(e0=e0, h1=(scale / x) * h1)
    rs = redivide(scaled)
    exact_s = eigendecompose(scaled.full_hamiltonian()).eigenvalues
    err2 = np.max(np.abs(np.sort(improved_energies(rs, 2).energies) - exact_s))
    err4 = np.max(np.abs(np.sort(improved_energies(rs, 4).energies) - exact_s))
    print(f"{scale:>10.3g} {err2:>15.3e} {err4:>15.3e}")
