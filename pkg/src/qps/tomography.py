"""Marginal distributions, symplectic (Bogoliubov-type) transformations,
discrete Radon transforms and their ray-by-ray inverses, Wigner
reconstruction from simulated line sums, and the scattering-circuit
simulator.
"""

import math
from dataclasses import dataclass

import numpy as np

from .lattice import check_dim, half_width, labels, center_mod, tensor, dagger
from .theta import kernel_value, smoothing_1d
from .schwinger import check_order, s_op
from .quasiprob import (
    PhaseSpaceFunction,
    CharacteristicFunction,
    char_fn,
    phase_fn,
)

__all__ = [
    "CoverageError",
    "MarginalDistribution",
    "SymplecticParams",
    "mod_inverse",
    "marginal_q",
    "marginal_r",
    "smooth_marginal",
    "symplectic_c",
    "symplectic_n",
    "symplectic_m",
    "symplectic_j",
    "radon_q",
    "radon_r",
    "char_from_radon_q",
    "char_from_radon_r",
    "reconstruct_wigner",
    "scattering_circuit",
    "sample_marginal",
]


class CoverageError(ValueError):
    """Raised when the ray family cannot cover the dual plane (composite N)."""


@dataclass(frozen=True)
class MarginalDistribution:
    """Length-N marginal over one centered label, tagged with its order s.

    `axis` is "Q" (coordinate-like) or "R" (momentum-like); `line` holds
    the integer pair selecting the summation line, None for the plain
    axis-aligned marginal.
    """

    s: complex
    axis: str
    values: np.ndarray
    line: tuple | None = None

    @property
    def dim(self):
        return len(self.values)


def mod_inverse(a, N):
    """Multiplicative inverse of a mod N, as a centered label."""
    a = int(a) % N
    if math.gcd(a, N) != 1:
        raise ValueError(f"{a} has no inverse mod {N}")
    return center_mod(pow(a, -1, N), N)


@dataclass(frozen=True)
class SymplecticParams:
    """Integer quadruple (z1, z2, z3, z4) with z1*z4 - z2*z3 = 1 mod N."""

    z1: int
    z2: int
    z3: int
    z4: int
    N: int

    def __post_init__(self):
        N = check_dim(self.N)
        for name in ("z1", "z2", "z3", "z4"):
            object.__setattr__(self, name, center_mod(getattr(self, name), N))
        if (self.z1 * self.z4 - self.z2 * self.z3 - 1) % N != 0:
            raise ValueError(
                f"({self.z1},{self.z2},{self.z3},{self.z4}) has determinant "
                f"!= 1 mod {N}"
            )
        # both inverses below must exist for the generator decomposition
        mod_inverse(self.z4, N)
        mod_inverse(1 + self.z2 * self.z3, N)

    @property
    def omegas(self):
        """Generator parameters (Omega1, Omega2, Omega3) as centered labels."""
        N = self.N
        inv_z4 = mod_inverse(self.z4, N)
        inv_q = mod_inverse(1 + self.z2 * self.z3, N)
        o1 = center_mod(self.z4 * inv_q, N)
        o2 = center_mod(self.z2 * inv_z4 * (1 + self.z2 * self.z3), N)
        o3 = center_mod(self.z3 * self.z4 * inv_q, N)
        return o1, o2, o3

    def matrix(self):
        return np.array([[self.z1, self.z2], [self.z3, self.z4]])


def marginal_q(F):
    """Coordinate marginal Q^(s)(mu) = sum_nu F^(s)(mu, nu) / sqrt(N)."""
    return MarginalDistribution(F.s, "Q", F.grid.sum(axis=1) / np.sqrt(F.dim))


def marginal_r(F):
    """Momentum marginal R^(s)(nu) = sum_mu F^(s)(mu, nu) / sqrt(N)."""
    return MarginalDistribution(F.s, "R", F.grid.sum(axis=0) / np.sqrt(F.dim))


def smooth_marginal(dist):
    """One step down the marginal hierarchy (s -> s - 1) via the 1-D weights."""
    N = dist.dim
    s = complex(dist.s)
    if abs(s - 1) > 1e-12 and abs(s) > 1e-12:
        raise ValueError(f"marginal smoothing is defined at s = 1 or 0, got {s}")
    ks = labels(N)
    out = np.array(
        [
            sum(
                smoothing_1d(int(kp) - int(k), N) * dist.values[kp + half_width(N)]
                for kp in ks
            )
            for k in ks
        ]
    )
    return MarginalDistribution(s - 1, dist.axis, out, dist.line)


def _generator_sum(N, phase, eta_of, xi_of):
    ell = half_width(N)
    acc = np.zeros((N, N), dtype=complex)
    for eta in labels(N):
        for xi in labels(N):
            acc += phase(eta, xi) * s_op(eta_of(eta, xi), xi_of(eta, xi), N)
    return acc / np.sqrt(N)


def symplectic_c(params):
    """Scaling-type generator C(Omega1)."""
    N = params.N
    o1 = params.omegas[0]
    return _generator_sum(
        N,
        lambda eta, xi: np.exp(-1j * np.pi * (1 + o1) * eta * xi / N),
        lambda eta, xi: eta,
        lambda eta, xi: (1 - o1) * xi,
    )


def symplectic_n(params):
    """Coordinate quadratic-phase generator N(Omega2).

    The shear parameter enters with a sign matching the downward-shift V
    convention, so that the full J reproduces the conjugation law
    (eta, xi) -> (z1 eta + z2 xi, z3 eta + z4 xi).  The parameter is taken
    as the even representative of its class mod 2N: the quadratic phase
    exp(i*pi*Omega*kappa^2/N) is N-periodic in kappa only for even Omega,
    and an odd representative breaks the conjugation law at wraparound.
    """
    N = params.N
    o2 = -params.omegas[1]
    if o2 % 2:
        o2 += N
    return _generator_sum(
        N,
        lambda eta, xi: np.exp(1j * np.pi * (o2 * xi - 2 * eta) * xi / N),
        lambda eta, xi: eta,
        lambda eta, xi: 0,
    )


def symplectic_m(params):
    """Momentum quadratic-phase generator M(Omega3); sign and even-mod-2N
    representative chosen as in symplectic_n."""
    N = params.N
    o3 = -params.omegas[2]
    if o3 % 2:
        o3 += N
    return _generator_sum(
        N,
        lambda eta, xi: np.exp(-1j * np.pi * (o3 * eta + 2 * xi) * eta / N),
        lambda eta, xi: 0,
        lambda eta, xi: xi,
    )


def symplectic_j(params):
    """Full Bogoliubov-type transformation J = M(O3) N(O2) C(O1)."""
    return symplectic_m(params) @ symplectic_n(params) @ symplectic_c(params)


def radon_q(F, z1, z3):
    """Line-sum marginal Q^(s)(mu; z1, z3) over lines z1*mu' + z3*nu' = mu."""
    N = F.dim
    if center_mod(z1, N) == 0 and center_mod(z3, N) == 0:
        raise ValueError("degenerate line: (z1, z3) = (0, 0) mod N")
    ks = labels(N)
    line_of = center_mod(np.add.outer(z1 * ks, z3 * ks), N)  # [mu', nu']
    values = np.array(
        [F.grid[line_of == mu].sum() for mu in ks]
    ) / np.sqrt(N)
    return MarginalDistribution(F.s, "Q", values, (int(z1), int(z3)))


def radon_r(F, z2, z4):
    """Line-sum marginal R^(s)(nu; z2, z4) over lines z2*mu' + z4*nu' = nu."""
    N = F.dim
    if center_mod(z2, N) == 0 and center_mod(z4, N) == 0:
        raise ValueError("degenerate line: (z2, z4) = (0, 0) mod N")
    ks = labels(N)
    line_of = center_mod(np.add.outer(z2 * ks, z4 * ks), N)
    values = np.array(
        [F.grid[line_of == nu].sum() for nu in ks]
    ) / np.sqrt(N)
    return MarginalDistribution(F.s, "R", values, (int(z2), int(z4)))


def _ray_invert(dist, za, zb, N):
    """Common inverse: Xi^(s)(za*t, zb*t) for t in [-ell, ell].

    Kernel ratios are evaluated at the raw (unreduced) composite labels;
    at s = 0 they drop out entirely.
    """
    s = complex(dist.s)
    ell = half_width(N)
    ks = labels(N)
    out = np.empty(N, dtype=complex)
    for t in ks:
        if abs(s) < 1e-14:
            ratio = 1.0
        else:
            base = kernel_value(t, 0, N) if dist.axis == "Q" else kernel_value(0, t, N)
            ratio = (base / kernel_value(za * t, zb * t, N)) ** s
        tot = sum(
            np.exp(2j * np.pi * k * t / N) * dist.values[k + ell] for k in ks
        )
        out[t + ell] = ratio * tot / N
    return out


def char_from_radon_q(dist, z1, z3, N):
    """Ray values Xi^(s)(z1*eta, z3*eta) recovered from a Q-type line sum."""
    if dist.axis != "Q":
        raise ValueError("expected a Q-type marginal")
    return _ray_invert(dist, z1, z3, N)


def char_from_radon_r(dist, z2, z4, N):
    """Ray values Xi^(s)(z2*xi, z4*xi) recovered from an R-type line sum."""
    if dist.axis != "R":
        raise ValueError("expected an R-type marginal")
    return _ray_invert(dist, z2, z4, N)


def _is_prime(n):
    if n < 2:
        return False
    return all(n % p for p in range(2, int(math.isqrt(n)) + 1))


def sample_marginal(dist, shots, rng):
    """Multinomial shot-noise estimate of an s = 0 marginal.

    The (real, nonnegative) values are scaled to probabilities, sampled,
    and rescaled, preserving the sum sqrt(N).
    """
    if abs(complex(dist.s)) > 1e-12:
        raise ValueError("shot sampling is defined for s = 0 marginals only")
    p = np.clip(dist.values.real, 0.0, None)
    p = p / p.sum()
    counts = rng.multinomial(int(shots), p)
    values = counts / shots * math.sqrt(dist.dim)
    return MarginalDistribution(dist.s, dist.axis, values, dist.line)


def reconstruct_wigner(rho, shots=None, rng=None):
    """Reconstruct the Wigner grid of `rho` from simulated line sums.

    For prime N the rays (1, k), k = 0..N-1, plus (0, 1) cover every
    point of the dual plane exactly once (up to the shared origin); each
    ray is inverted to characteristic-function values which are then
    Fourier transformed back to phase space.  With `shots` set, the line
    sums are replaced by seeded multinomial estimates.
    """
    rho = np.asarray(rho)
    N = check_dim(rho.shape[0])
    if not _is_prime(N):
        raise CoverageError(
            f"ray coverage requires prime N; N = {N} has degenerate rays"
        )
    ell = half_width(N)
    ks = labels(N)
    F = phase_fn(rho, 0)

    def measured(dist):
        if shots is None:
            return dist
        return sample_marginal(dist, shots, rng)

    Xi = np.zeros((N, N), dtype=complex)
    for k in range(N):
        dist = measured(radon_q(F, 1, k))
        vals = char_from_radon_q(dist, 1, k, N)
        for t in ks:
            Xi[center_mod(t, N) + ell, center_mod(k * t, N) + ell] = vals[t + ell]
    dist = measured(radon_r(F, 0, 1))
    vals = char_from_radon_r(dist, 0, 1, N)
    for t in ks:
        Xi[ell, t + ell] = vals[t + ell]

    ph = np.exp(-2j * np.pi * np.outer(ks, ks) / N)
    grid = np.einsum("em,fn,ef->mn", ph, ph, Xi) / np.sqrt(N)
    return PhaseSpaceFunction(0, grid)


def scattering_circuit(rho, eta=None, xi=None, unitary=None):
    """Hadamard-test interferometer reading out Re/Im of Tr(U rho).

    The ancilla qubit starts in |0>, passes a Hadamard, controls U on the
    system, passes a second Hadamard; the returned pair is the ancilla
    (<sigma_z>, <sigma_y>).  With the default U = sqrt(N) S(eta, xi) this
    equals sqrt(N) (Re, Im) of Xi^(0)(eta, xi).
    """
    rho = np.asarray(rho)
    d = rho.shape[0]
    if unitary is None:
        if eta is None or xi is None:
            raise ValueError("either (eta, xi) or an explicit unitary is required")
        unitary = math.sqrt(d) * s_op(eta, xi, d)
    U = np.asarray(unitary)

    anc0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2)
    ctrl = tensor(np.diag([1.0, 0.0]), np.eye(d)) + tensor(
        np.diag([0.0, 1.0]), U
    )
    circ = tensor(H, np.eye(d)) @ ctrl @ tensor(H, np.eye(d))
    state = circ @ tensor(anc0, rho) @ dagger(circ)

    sz = np.diag([1.0, -1.0])
    # ancilla y-polarization, oriented so the pair reads (Re, +Im) of Tr(U rho)
    sy = np.array([[0.0, 1j], [-1j, 0.0]])
    out_z = np.trace(tensor(sz, np.eye(d)) @ state)
    out_y = np.trace(tensor(sy, np.eye(d)) @ state)
    return float(out_z.real), float(out_y.real)
