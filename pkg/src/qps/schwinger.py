"""Clock/shift operators, the symmetrized operator basis and its s-ordered
and mod(N)-invariant descendants, operator decompositions, and the unitary
depolarizer average.

Convention: U is diagonal in the coordinate basis with U[kappa, kappa] =
exp(2*pi*i*kappa/N) over centered kappa, and V is the downward cyclic
shift V|kappa> = |kappa - 1>, so that U V = exp(-2*pi*i/N) V U.  This is
the unique pairing (up to relabeling) for which the adjoint identity
S(eta, xi)^dag = S(-eta, -xi) holds with the symmetrization phase
exp(+i*pi*eta*xi/N).
"""

from functools import lru_cache

import numpy as np

from .lattice import check_dim, half_width, labels, center_mod, dagger
from .theta import kernel_table

__all__ = [
    "check_order",
    "u_matrix",
    "v_matrix",
    "s_op",
    "s_op_ordered",
    "t_op",
    "t_family",
    "t_overlap",
    "decompose_schwinger",
    "reconstruct_schwinger",
    "decompose_t",
    "reconstruct_t",
    "depolarize",
]


def check_order(s):
    """Validate an ordering parameter: complex with |s| <= 1."""
    s = complex(s)
    if abs(s) > 1 + 1e-12:
        raise ValueError(f"ordering parameter must satisfy |s| <= 1, got {s}")
    return s


@lru_cache(maxsize=None)
def u_matrix(N):
    """Clock operator: diagonal phases exp(2*pi*i*kappa/N) over centered kappa."""
    N = check_dim(N)
    U = np.diag(np.exp(2j * np.pi * labels(N) / N))
    U.setflags(write=False)
    return U


@lru_cache(maxsize=None)
def v_matrix(N):
    """Shift operator: V|kappa> = |kappa - 1> with centered wraparound."""
    N = check_dim(N)
    ell = half_width(N)
    V = np.zeros((N, N), dtype=complex)
    for kappa in labels(N):
        V[center_mod(kappa - 1, N) + ell, kappa + ell] = 1.0
    V.setflags(write=False)
    return V


def s_op(eta, xi, N):
    """Symmetrized displacement S(eta, xi) = exp(i*pi*eta*xi/N) U^eta V^xi / sqrt(N).

    Defined for arbitrary integer labels; out-of-range labels pick up the
    quasi-periodic phases of the raw formula.
    """
    N = check_dim(N)
    ell = half_width(N)
    ks = labels(N)
    S = np.zeros((N, N), dtype=complex)
    front = np.exp(1j * np.pi * eta * xi / N) / np.sqrt(N)
    rows = center_mod(ks - xi, N) + ell
    # U^eta acts after the shift: phase exp(2*pi*i*eta*(kappa - xi)/N)
    S[rows, ks + ell] = front * np.exp(2j * np.pi * eta * (ks - xi) / N)
    return S


def s_op_ordered(eta, xi, s, N):
    """s-ordered basis element K(eta, xi)^(-s) S(eta, xi) (principal power)."""
    s = check_order(s)
    ell = half_width(N)
    K = kernel_table(N)[center_mod(eta, N) + ell, center_mod(xi, N) + ell]
    return K ** (-s) * s_op(eta, xi, N)


@lru_cache(maxsize=None)
def _t_family(s, N):
    ell = half_width(N)
    ks = labels(N)
    Kpow = kernel_table(N) ** (-s)
    stack = np.empty((N, N, N, N), dtype=complex)
    for eta in ks:
        for xi in ks:
            stack[eta + ell, xi + ell] = s_op(eta, xi, N)
    ph = np.exp(-2j * np.pi * np.outer(ks, ks) / N)  # ph[eta, mu]
    T = np.einsum("em,fn,ef,efij->mnij", ph, ph, Kpow, stack) / np.sqrt(N)
    T.setflags(write=False)
    return T


def t_family(s, N):
    """All N^2 kernels T^(s)(mu, nu) as an array [mu + ell, nu + ell, :, :].

    Cached per (s, N); the returned array is read-only.
    """
    return _t_family(check_order(s), check_dim(N))


def t_op(mu, nu, s, N):
    """Single mod(N)-invariant kernel T^(s)(mu, nu); any integer labels."""
    ell = half_width(N)
    fam = t_family(s, N)
    return fam[center_mod(mu, N) + ell, center_mod(nu, N) + ell]


def t_overlap(t, s, dmu, dnu, N):
    """Trace of T^(t)(mu, nu) T^(s)(mu', nu') as a function of the offsets
    (dmu, dnu) = (mu' - mu, nu' - nu)."""
    t = check_order(t)
    s = check_order(s)
    N = check_dim(N)
    ks = labels(N)
    Kpow = kernel_table(N) ** (-(t + s))
    ph = np.exp(
        2j * np.pi * (np.add.outer(ks * dmu, ks * dnu)) / N
    )
    return complex(np.sum(ph * Kpow) / N)


def decompose_schwinger(O):
    """Coefficients C[eta + ell, xi + ell] = Tr[S(eta, xi)^dag O]."""
    O = np.asarray(O)
    N = check_dim(O.shape[0])
    ell = half_width(N)
    C = np.empty((N, N), dtype=complex)
    for eta in labels(N):
        for xi in labels(N):
            C[eta + ell, xi + ell] = np.trace(s_op(-eta, -xi, N) @ O)
    return C


def reconstruct_schwinger(C):
    """Rebuild the operator sum_{eta,xi} C(eta, xi) S(eta, xi)."""
    C = np.asarray(C)
    N = check_dim(C.shape[0])
    ell = half_width(N)
    O = np.zeros((N, N), dtype=complex)
    for eta in labels(N):
        for xi in labels(N):
            O += C[eta + ell, xi + ell] * s_op(eta, xi, N)
    return O


def decompose_t(O, s):
    """Phase-space coefficients O^(-s)[mu + ell, nu + ell] = Tr[T^(-s)(mu, nu) O]."""
    O = np.asarray(O)
    s = check_order(s)
    N = check_dim(O.shape[0])
    fam = t_family(-s, N)
    return np.einsum("mnij,ji->mn", fam, O)


def reconstruct_t(grid, s):
    """Rebuild the operator (1/N) sum_{mu,nu} grid(mu, nu) T^(s)(mu, nu)."""
    grid = np.asarray(grid)
    s = check_order(s)
    N = check_dim(grid.shape[0])
    fam = t_family(s, N)
    return np.einsum("mn,mnij->ij", grid, fam) / N


def depolarize(O, omega=0.0):
    """Uniform conjugation average over the unitary set sqrt(N) S^(i*omega).

    Equals Tr(O) * identity for every operator O; omega = 0 recovers the
    plain symmetrized-basis depolarizer.
    """
    O = np.asarray(O)
    N = check_dim(O.shape[0])
    s = check_order(1j * omega)
    acc = np.zeros((N, N), dtype=complex)
    for eta in labels(N):
        for xi in labels(N):
            X = np.sqrt(N) * s_op_ordered(eta, xi, s, N)
            acc += X @ O @ dagger(X)
    return acc / N
