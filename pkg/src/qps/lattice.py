"""Centered modular index arithmetic and dense linear-algebra helpers.

Operators on an N-dimensional space (N odd) are indexed by centered labels
kappa in [-ell, ell] with ell = (N-1)/2, stored at row/column kappa + ell.
Every module in the package shares this convention.
"""

from functools import reduce

import numpy as np

__all__ = [
    "check_dim",
    "half_width",
    "labels",
    "center_mod",
    "dagger",
    "tensor",
    "partial_trace",
    "dft_matrix",
]


def check_dim(N):
    """Validate a Hilbert-space dimension: positive and odd."""
    N = int(N)
    if N < 1 or N % 2 == 0:
        raise ValueError(f"dimension must be an odd positive integer, got {N}")
    return N


def half_width(N):
    """Half-width ell = (N-1)/2 of the centered label interval."""
    return (check_dim(N) - 1) // 2


def labels(N):
    """Centered labels -ell..ell as an integer array."""
    ell = half_width(N)
    return np.arange(-ell, ell + 1)


def center_mod(x, N):
    """Reduce integer(s) x into the centered interval [-ell, ell] mod N."""
    N = check_dim(N)
    ell = (N - 1) // 2
    r = (np.asarray(x) + ell) % N - ell
    if np.ndim(x) == 0:
        return int(r)
    return r


def dagger(A):
    """Conjugate transpose."""
    return np.asarray(A).conj().T


def tensor(*ops):
    """Kronecker product of one or more matrices, left to right."""
    if not ops:
        raise ValueError("tensor() needs at least one operand")
    return reduce(np.kron, [np.asarray(op) for op in ops])


def partial_trace(A, dims, keep):
    """Trace out all subsystems not listed in `keep`.

    Parameters
    ----------
    A : (D, D) array
        Operator on the composite space, D = prod(dims).
    dims : sequence of int
        Subsystem dimensions, in tensor order.
    keep : iterable of int
        Indices (into `dims`) of the subsystems to retain.

    Returns
    -------
    (d, d) array with d = prod(dims[k] for k in keep).
    """
    A = np.asarray(A)
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    if A.shape != (total, total):
        raise ValueError(
            f"dims {dims} do not factor a {A.shape} matrix"
        )
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= len(dims):
        raise ValueError(f"keep={keep} is not a nonempty subset of subsystems")

    t = A.reshape(dims + dims)
    cur = list(dims)
    for i in sorted(set(range(len(dims))) - set(keep), reverse=True):
        t = np.trace(t, axis1=i, axis2=i + len(cur))
        cur.pop(i)
    d = int(np.prod(cur))
    return t.reshape(d, d)


def dft_matrix(N):
    """Discrete Fourier matrix F[mu, nu] = exp(2*pi*i*mu*nu/N)/sqrt(N) over centered labels."""
    N = check_dim(N)
    k = labels(N)
    return np.exp(2j * np.pi * np.outer(k, k) / N) / np.sqrt(N)
