"""Random constructions: Krein spaces, maximal uniformly definite subspaces, J-frames,
projections in the class Q and J-frame operators.

Every function takes a ``numpy.random.Generator`` (or a seed) so that runs are
reproducible and safe to parallelize.
"""

import numpy as np

from . import _linalg as la
from .config import DEFAULT_TOLERANCES
from .hilbert import VectorFamily
from .krein import KreinSpace, SubspaceBasis, oblique_projection

__all__ = ["rng_from", "random_complex", "random_unitary", "random_krein_space",
           "random_angular_coords", "subspace_from_angular", "random_maximal_subspace",
           "random_frame_matrix", "random_j_frame", "random_maximal_pair",
           "random_projection_in_Q", "random_operator_split"]


def rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(n, rng):
    Q, R = np.linalg.qr(random_complex(rng, n, n))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_krein_space(p, q, rng=None, general=False, tol=DEFAULT_TOLERANCES):
    """Signature ``(p, q)``; with ``general`` the symmetry is ``U diag(..) U*`` for a
    random unitary ``U`` instead of the diagonal one."""
    rng = rng_from(rng)
    D = np.diag([1.0] * p + [-1.0] * q).astype(complex)
    if general:
        U = random_unitary(p + q, rng)
        D = U @ D @ la.adj(U)
        D = la.hermitian_part(D)
    return KreinSpace(D, tol)


def random_angular_coords(rows, cols, rng, norm):
    """A ``rows x cols`` matrix with spectral norm exactly ``norm``."""
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=complex)
    K = random_complex(rng, rows, cols)
    return K * (norm / la.spectral_norm(K))


def subspace_from_angular(space, K, sign=1):
    """Graph ``{x + Kx}`` of ``K`` (coordinates ``H_sign -> H_-sign``)."""
    Up, Um = space.decomposition
    Uin, Uout = (Up, Um) if sign > 0 else (Um, Up)
    return SubspaceBasis.span(Uin + Uout @ K, space)


def random_maximal_subspace(space, sign, rng=None, max_norm=0.9, norm=None):
    """Maximal J-definite subspace of the given sign whose angular operator has norm
    ``norm`` (default: uniform in ``[0, max_norm]``).  ``norm = 1`` gives a maximal
    J-semidefinite subspace that is degenerate."""
    rng = rng_from(rng)
    p, q = space.signature
    rows, cols = (q, p) if sign > 0 else (p, q)
    if norm is None:
        norm = rng.uniform(0.0, max_norm)
    return subspace_from_angular(space, random_angular_coords(rows, cols, rng, norm), sign)


def random_frame_matrix(M, m, rng=None):
    """``m`` random vectors spanning ``M`` (requires ``m >= dim M``)."""
    rng = rng_from(rng)
    if m < M.dim:
        raise ValueError("need at least dim M = %d vectors" % M.dim)
    return M.B @ random_complex(rng, M.dim, m)


def random_maximal_pair(space, rng=None, max_norm=0.9):
    rng = rng_from(rng)
    return (random_maximal_subspace(space, 1, rng, max_norm),
            random_maximal_subspace(space, -1, rng, max_norm))


def random_j_frame(space, rng=None, max_norm=0.9, redundancy=4, shuffle=False):
    """A J-frame glued from random frames of a random maximal pair.

    Each side gets between ``dim`` and ``redundancy * dim`` vectors.
    """
    rng = rng_from(rng)
    Mp, Mm = random_maximal_pair(space, rng, max_norm)
    parts = []
    for M in (Mp, Mm):
        if M.dim:
            m = int(rng.integers(M.dim, redundancy * M.dim + 1))
            parts.append(random_frame_matrix(M, m, rng))
    T = np.hstack(parts)
    if shuffle:
        T = T[:, rng.permutation(T.shape[1])]
    return VectorFamily(space, T)


def random_projection_in_Q(space, rng=None, max_norm=0.9):
    """Projection onto a random maximal uniformly J-positive subspace along a random
    maximal uniformly J-negative one."""
    Mp, Mm = random_maximal_pair(space, rng, max_norm)
    return oblique_projection(space, Mp, Mm)


def random_operator_split(space, rng=None, max_norm=0.9):
    """J-positive ``S1``, ``S2`` with ``R(S1)``/``R(S2)`` a random maximal uniformly
    J-positive/J-negative pair: ``S_j = B_j A_j B_j* J`` with ``A_j`` positive
    definite."""
    rng = rng_from(rng)
    out = []
    for M in random_maximal_pair(space, rng, max_norm):
        X = random_complex(rng, M.dim, M.dim)
        A = X @ la.adj(X) + 0.1 * np.eye(M.dim)
        out.append(M.B @ A @ la.adj(M.B) @ space.J)
    return tuple(out)
