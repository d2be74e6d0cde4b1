"""Phase-space portraits of finite-dimensional states.

Walks through the core objects of the toolkit on a small odd-dimensional
space: the theta-function kernel, the s-parametrized quasiprobability
family (Glauber-Sudarshan, Wigner, Husimi), and the smoothing chain that
connects them.  Run with ``python demos/01_phase_space_portraits.py``.
"""

import numpy as np

from qps import (
    half_width,
    labels,
    kernel_table,
    fock_projector,
    coherent_projector,
    coherent_state,
    phase_fn,
    smooth_p_to_w,
    smooth_w_to_h,
)

N = 7
ELL = half_width(N)


def show_grid(title, grid, fmt="{:8.4f}"):
    print(f"\n{title}")
    header = "        " + " ".join(f"nu={nu:+d}   " for nu in labels(N))
    print(header)
    for mu in labels(N):
        row = " ".join(fmt.format(grid[mu + ELL, nu + ELL].real) for nu in labels(N))
        print(f" mu={mu:+d} {row}")


print(f"Working on an N = {N} dimensional space, labels -{ELL}..{ELL}.")

# The kernel is a positive bell centered at the origin, normalized to 1.
K = kernel_table(N)
show_grid("Theta-function kernel K(eta, xi):", K.astype(complex))
print(f"\nK(0,0) = {K[ELL, ELL]:.12f} (exactly 1 by construction)")

# A coherent state sits at a single phase-space point; its Husimi
# function is the kernel squared, displaced to that point.
mu0, nu0 = 2, -1
rho = coherent_projector(mu0, nu0, N)
H = phase_fn(rho, -1)
show_grid(f"Husimi function of the coherent state at ({mu0}, {nu0}):", H.grid)

# The Wigner function of a number state shows the familiar ring-plus-core
# interference structure, including negative values.
W1 = phase_fn(fock_projector(1, N), 0)
show_grid("Wigner function of the one-quantum number state:", W1.grid)
print(f"\nminimum Wigner value: {W1.grid.real.min():.6f} (negativity is physical)")

# The hierarchy: the singular Glauber-Sudarshan function smooths to the
# Wigner function, which smooths to the nonnegative Husimi function.
P = phase_fn(rho, 1)
W = smooth_p_to_w(P)
H2 = smooth_w_to_h(W)
direct_W = phase_fn(rho, 0)
print("\nSmoothing chain on the coherent state:")
print(f"  max |smooth(P) - W|  = {np.abs(W.grid - direct_W.grid).max():.3e}")
print(f"  max |smooth(W) - H|  = {np.abs(H2.grid - H.grid).max():.3e}")
print(f"  P ranges over [{P.grid.real.min():.2f}, {P.grid.real.max():.2f}]"
      f" while H stays within [{H.grid.real.min():.4f}, {H.grid.real.max():.4f}]")

# Coherent-state overlaps reproduce the kernel: the lattice analogue of
# the Gaussian overlap rule of continuous coherent states.
a = coherent_state(0, 0, N)
print("\nOverlap of the origin coherent state with its neighbors:")
for d in range(ELL + 1):
    b = coherent_state(d, 0, N)
    print(f"  |<0,0|{d},0>|^2 = {abs(a.conj() @ b) ** 2:.6f}"
          f"   K({d},0)^2 = {K[d + ELL, ELL] ** 2:.6f}")
