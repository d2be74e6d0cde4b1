"""Jacobi theta series and the objects built from them.

Covers the bell-shaped kernel K(eta, xi), its 1-D smoothing analogue,
the integer phase correction used for label wraparound, and the finite
number-basis coefficient tables.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.special import eval_hermite

from .lattice import check_dim, half_width, labels, center_mod

__all__ = [
    "theta",
    "phase_phi",
    "kernel_value",
    "kernel_table",
    "smoothing_1d",
    "fock_coefficients",
    "gamma_table",
]

# relative truncation floor for the theta series; ~60 terms suffice at N <= 15
TRUNCATION = 1e-16


def theta(kind, z, a, tol=TRUNCATION):
    """Jacobi theta function of the given kind at nome q = exp(-pi*a).

    theta3(z) = 1 + 2 sum_{n>=1} q^(n^2) cos(2nz)
    theta4(z) = 1 + 2 sum_{n>=1} (-1)^n q^(n^2) cos(2nz)
    theta2(z) = 2 sum_{n>=0} q^((n+1/2)^2) cos((2n+1)z)

    The series is truncated once the term amplitude drops below `tol`.
    """
    if a <= 0:
        raise ValueError(f"lattice parameter a must be positive, got {a}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    q = math.exp(-math.pi * a)
    if kind in (3, 4):
        total = 1.0
        n = 1
        while True:
            amp = 2.0 * q ** (n * n)
            term = amp * math.cos(2 * n * z)
            if kind == 4 and n % 2 == 1:
                term = -term
            total += term
            if amp < tol:
                return total
            n += 1
    elif kind == 2:
        total = 0.0
        n = 0
        while True:
            amp = 2.0 * q ** ((n + 0.5) ** 2)
            total += amp * math.cos((2 * n + 1) * z)
            if amp < tol:
                return total
            n += 1
    raise ValueError(f"theta kind must be 2, 3 or 4, got {kind}")


def phase_phi(eta, xi, N):
    """Integer phase exponent restoring mod(N) invariance under label shifts.

    The integer parts are the wrap counts of the centered reduction, so
    (-1)**phase_phi(eta, xi, N) is exactly the phase relating the raw
    displacement operator at (eta, xi) to the one at the reduced labels;
    it vanishes for in-range labels.
    """
    N = check_dim(N)
    i_eta = (eta - center_mod(eta, N)) // N
    i_xi = (xi - center_mod(xi, N)) // N
    return N * i_eta * i_xi - eta * i_xi - xi * i_eta


def _kernel_norm(N):
    a = 1.0 / (2 * N)
    return 2.0 * (
        theta(3, 0.0, a) * theta(3, 0.0, 4 * a)
        + theta(4, 0.0, a) * theta(2, 0.0, 4 * a)
    )


def kernel_value(eta, xi, N):
    """Kernel K(eta, xi) evaluated at raw (possibly out-of-range) integers.

    Assembled as a four-term sum of theta-function products with
    a = 1/(2N); the imaginary part must vanish and is dropped after a
    consistency check.
    """
    N = check_dim(N)
    a = 1.0 / (2 * N)
    t3e = theta(3, math.pi * a * eta, a)
    t4e = theta(4, math.pi * a * eta, a)
    t3x = theta(3, math.pi * a * xi, a)
    t4x = theta(4, math.pi * a * xi, a)
    num = (
        t3e * t3x
        + t3e * t4x * np.exp(1j * np.pi * eta)
        + t4e * t3x * np.exp(1j * np.pi * xi)
        + t4e * t4x * np.exp(1j * np.pi * (eta + xi + N))
    )
    val = num / _kernel_norm(N)
    if abs(val.imag) > 1e-12:
        raise ArithmeticError(
            f"kernel K({eta},{xi}) has residual imaginary part {val.imag:.3e}"
        )
    return float(val.real)


@lru_cache(maxsize=None)
def kernel_table(N):
    """Cached table K[eta + ell, xi + ell] over the centered label square."""
    N = check_dim(N)
    ell = half_width(N)
    K = np.empty((N, N))
    for eta in range(-ell, ell + 1):
        for xi in range(-ell, ell + 1):
            K[eta + ell, xi + ell] = kernel_value(eta, xi, N)
    if not np.all(K > 0) or abs(K[ell, ell] - 1.0) > 1e-12:
        raise ArithmeticError(f"kernel table failed positivity/normalization at N={N}")
    K.setflags(write=False)
    return K


def smoothing_1d(chi, N):
    """1-D smoothing weight driving the marginal-distribution hierarchy."""
    N = check_dim(N)
    a = 1.0 / (2 * N)
    num = theta(3, 0.0, a) * theta(3, 2 * math.pi * a * chi, a) + theta(
        4, 0.0, a
    ) * theta(4, 2 * math.pi * a * chi, a)
    return num / (math.sqrt(2 * N) * 0.5 * _kernel_norm(N))


@lru_cache(maxsize=None)
def fock_coefficients(N):
    """Coefficients F[kappa + ell, n] of the finite number states.

    Each column n holds the coordinate-basis amplitudes of the n-th
    number state, built from a Gaussian-weighted Hermite sum over the
    integer winding index and normalized to unit column norm.  Columns
    are exactly N-periodic in kappa.
    """
    N = check_dim(N)
    ell = half_width(N)
    kappas = labels(N)
    # exp(-pi*beta^2/N) < 1e-16 beyond this winding range
    bmax = int(math.ceil(math.sqrt(16 * math.log(10) * N / math.pi))) + 1
    betas = np.arange(-bmax, bmax + 1)
    gauss = np.exp(-math.pi * betas**2 / N)
    phases = np.exp(2j * math.pi * np.outer(betas, kappas) / N)

    F = np.empty((N, N), dtype=complex)
    for n in range(N):
        herm = eval_hermite(n, math.sqrt(2 * math.pi / N) * betas)
        col = ((-1j) ** n / math.sqrt(N)) * (gauss * herm) @ phases
        F[:, n] = col / np.linalg.norm(col)
    F.setflags(write=False)
    return F


@lru_cache(maxsize=None)
def gamma_table(N):
    """Number-basis kernel table G[m, n, eta + ell, xi + ell].

    G[m, n] is the (eta, xi)-resolved overlap of number states m and n,
    satisfying G[m, n](0, 0) = delta_mn and G[0, 0] = K.
    """
    N = check_dim(N)
    ell = half_width(N)
    F = fock_coefficients(N)
    sigmas = labels(N)
    G = np.empty((N, N, N, N), dtype=complex)
    for xi in range(-ell, ell + 1):
        shifted = F[center_mod(sigmas - xi, N) + ell, :]
        for eta in range(-ell, ell + 1):
            phase = np.exp(2j * np.pi * sigmas * eta / N)
            front = np.exp(-1j * np.pi * eta * xi / N)
            # G_mn = front * sum_sigma phase * F[sigma, n] * conj(F[sigma - xi, m])
            G[:, :, eta + ell, xi + ell] = front * np.einsum(
                "s,sn,sm->mn", phase, F, shifted.conj()
            )
    G.setflags(write=False)
    return G
