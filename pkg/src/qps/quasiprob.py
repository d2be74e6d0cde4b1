"""s-parametrized characteristic and phase-space functions, the discrete
Glauber-Sudarshan / Wigner / Husimi family, coherent states, the smoothing
hierarchy between them, and number-basis matrix elements of the mapping
kernel.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import check_dim, half_width, labels, center_mod
from .theta import kernel_table, gamma_table, fock_coefficients
from .schwinger import check_order, s_op, t_family, t_op, t_overlap, decompose_t

__all__ = [
    "FormalismViolation",
    "PhaseSpaceFunction",
    "CharacteristicFunction",
    "validate_density",
    "maximally_mixed",
    "fock_state",
    "fock_projector",
    "coherent_projector",
    "coherent_state",
    "random_density",
    "char_fn",
    "phase_fn",
    "phase_fn_direct",
    "smoothing_table",
    "smooth_p_to_w",
    "smooth_w_to_h",
    "smooth_p_to_h",
    "expectation",
    "t_matrix_element",
    "reconstruct_rho",
]


class FormalismViolation(RuntimeError):
    """An exact identity of the formalism failed beyond tolerance."""


@dataclass(frozen=True)
class PhaseSpaceFunction:
    """Grid of F^(s)(mu, nu) over centered labels, tagged with its order s."""

    s: complex
    grid: np.ndarray

    @property
    def dim(self):
        return self.grid.shape[0]


@dataclass(frozen=True)
class CharacteristicFunction:
    """Grid of Xi^(s)(eta, xi) over centered labels, tagged with its order s."""

    s: complex
    grid: np.ndarray

    @property
    def dim(self):
        return self.grid.shape[0]


def validate_density(rho, tol=1e-10):
    """Check hermiticity, unit trace and positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > 1e-12:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-12:
        raise ValueError(f"density matrix trace is {np.trace(rho)}, not 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def maximally_mixed(N):
    N = check_dim(N)
    return np.eye(N, dtype=complex) / N


def fock_state(n, N):
    """Coordinate-basis amplitudes of the n-th finite number state."""
    N = check_dim(N)
    if not 0 <= n < N:
        raise ValueError(f"number-state index must lie in 0..{N - 1}, got {n}")
    return fock_coefficients(N)[:, n].copy()


def fock_projector(n, N):
    psi = fock_state(n, N)
    return np.outer(psi, psi.conj())


def coherent_projector(mu, nu, N, tol=1e-8):
    """Projector onto the discrete coherent state at (mu, nu).

    Returns T^(-1)(mu, nu) after verifying it is Hermitian with spectrum
    {1, 0, ..., 0}; a violation indicates a broken kernel table.
    """
    P = np.array(t_op(mu, nu, -1, N))
    if np.abs(P - P.conj().T).max() > 1e-10:
        raise FormalismViolation("coherent projector is not Hermitian")
    w = np.linalg.eigvalsh(P)
    if abs(w[-1] - 1.0) > tol or np.abs(w[:-1]).max() > tol:
        raise FormalismViolation(
            f"T^(-1)({mu},{nu}) is not a rank-1 projector; spectrum {w}"
        )
    return P


def coherent_state(mu, nu, N):
    """Dominant eigenvector of the coherent projector at (mu, nu)."""
    P = coherent_projector(mu, nu, N)
    w, v = np.linalg.eigh(P)
    psi = v[:, -1]
    # fix the free global phase: largest-magnitude amplitude real positive
    k = np.argmax(np.abs(psi))
    return psi * (abs(psi[k]) / psi[k])


def random_density(N, rng, pure=False):
    """Random density matrix (Haar-ish); pure=True gives a projector."""
    N = check_dim(N)
    if pure:
        psi = rng.normal(size=N) + 1j * rng.normal(size=N)
        psi /= np.linalg.norm(psi)
        return np.outer(psi, psi.conj())
    A = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    rho = A @ A.conj().T
    return rho / np.trace(rho)


def char_fn(rho, s):
    """Characteristic function Xi^(s)(eta, xi) = Tr[S^(s)(eta, xi) rho]."""
    rho = np.asarray(rho)
    s = check_order(s)
    N = check_dim(rho.shape[0])
    ell = half_width(N)
    Kpow = kernel_table(N) ** (-s)
    grid = np.empty((N, N), dtype=complex)
    for eta in labels(N):
        for xi in labels(N):
            grid[eta + ell, xi + ell] = Kpow[eta + ell, xi + ell] * np.trace(
                s_op(eta, xi, N) @ rho
            )
    return CharacteristicFunction(s, grid)


def _dft_phases(N):
    ks = labels(N)
    return np.exp(-2j * np.pi * np.outer(ks, ks) / N)  # ph[eta, mu]


def phase_fn(rho, s):
    """Phase-space function F^(s)(mu, nu) via the Fourier transform of Xi^(s).

    The direct-trace route is available as phase_fn_direct; both agree to
    1e-10 by construction of the kernels.
    """
    xi = char_fn(rho, s)
    ph = _dft_phases(xi.dim)
    grid = np.einsum("em,fn,ef->mn", ph, ph, xi.grid) / np.sqrt(xi.dim)
    return PhaseSpaceFunction(xi.s, grid)


def phase_fn_direct(rho, s):
    """F^(s)(mu, nu) = Tr[T^(s)(mu, nu) rho] by direct kernel traces."""
    rho = np.asarray(rho)
    s = check_order(s)
    N = check_dim(rho.shape[0])
    grid = np.einsum("mnij,ji->mn", t_family(s, N), rho)
    return PhaseSpaceFunction(s, grid)


@lru_cache(maxsize=None)
def smoothing_table(N):
    """2-D smoothing weights E[dmu + ell, dnu + ell] linking the hierarchy.

    E(dmu, dnu) = Tr[T^(0)(mu, nu) T^(-1)(mu + dmu, nu + dnu)]; real and
    N-periodic in both offsets.
    """
    N = check_dim(N)
    ell = half_width(N)
    E = np.empty((N, N))
    for dmu in labels(N):
        for dnu in labels(N):
            val = t_overlap(0, -1, dmu, dnu, N)
            E[dmu + ell, dnu + ell] = val.real
    E.setflags(write=False)
    return E


def _convolve(grid, weights):
    """(1/N) sum_{mu',nu'} weights(mu'-mu, nu'-nu) grid(mu', nu')."""
    N = grid.shape[0]
    ell = half_width(N)
    ks = labels(N)
    didx = center_mod(np.subtract.outer(ks, ks), N) + ell  # didx[p, m] = (k_p - k_m)
    out = np.empty_like(grid)
    for m in range(N):
        for n in range(N):
            out[m, n] = np.sum(weights[np.ix_(didx[:, m], didx[:, n])] * grid) / N
    return out


def _require_order(F, s, what):
    if abs(complex(F.s) - s) > 1e-12:
        raise ValueError(f"{what} expects an input at s = {s}, got s = {F.s}")


def smooth_p_to_w(P):
    """One smoothing step: Glauber-Sudarshan grid to Wigner grid."""
    _require_order(P, 1, "smooth_p_to_w")
    return PhaseSpaceFunction(0, _convolve(P.grid, smoothing_table(P.dim)))


def smooth_w_to_h(W):
    """One smoothing step: Wigner grid to Husimi grid."""
    _require_order(W, 0, "smooth_w_to_h")
    return PhaseSpaceFunction(-1, _convolve(W.grid, smoothing_table(W.dim)))


def smooth_p_to_h(P):
    """Direct two-step shortcut: Glauber-Sudarshan grid to Husimi grid.

    The weights are the coherent-state overlap probabilities |K|^2.
    """
    _require_order(P, 1, "smooth_p_to_h")
    return PhaseSpaceFunction(-1, _convolve(P.grid, kernel_table(P.dim) ** 2))


def expectation(O, rho, s):
    """Mean value Tr(O rho) evaluated through the phase-space overlap rule."""
    O = np.asarray(O)
    s = check_order(s)
    coeffs = decompose_t(O, s)  # O^(-s)(mu, nu)
    F = phase_fn(rho, s)
    return complex(np.sum(coeffs * F.grid) / F.dim)


def t_matrix_element(m, n, mu, nu, s, N):
    """Number-basis matrix element <m|T^(s)(mu, nu)|n> via the Gamma table."""
    N = check_dim(N)
    if not (0 <= m < N and 0 <= n < N):
        raise IndexError(f"number-basis indices must lie in 0..{N - 1}, got {m},{n}")
    s = check_order(s)
    ell = half_width(N)
    ks = labels(N)
    Kpow = kernel_table(N) ** (-s)
    G = gamma_table(N)[m, n]
    ph = np.exp(-2j * np.pi * np.add.outer(ks * mu, ks * nu) / N)
    return complex(np.sum(ph * Kpow * G) / N)


def reconstruct_rho(F, tol=1e-8):
    """Invert a phase-space function back to its density matrix.

    rho = (1/N) sum F^(s)(mu, nu) T^(-s)(mu, nu); flags a non-unit trace.
    """
    fam = t_family(-complex(F.s), F.dim)
    rho = np.einsum("mn,mnij->ij", F.grid, fam) / F.dim
    if abs(np.trace(rho) - 1.0) > tol:
        raise FormalismViolation(
            f"reconstructed operator has trace {np.trace(rho)}, expected 1"
        )
    return rho
