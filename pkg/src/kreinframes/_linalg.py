"""Dense linear-algebra helpers shared by the package.

Rank decisions compare singular values against ``rtol * max(1, sigma_max)``.
"""

import numpy as np
import scipy.linalg


def as_complex_matrix(A):
    A = np.asarray(A, dtype=complex)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2:
        raise ValueError("expected a matrix, got an array with %d dimensions" % A.ndim)
    return A


def adj(A):
    """Conjugate transpose."""
    return A.conj().T


def hermitian_part(A):
    return 0.5 * (A + adj(A))


def _threshold(s, rtol):
    smax = s[0] if s.size else 0.0
    return rtol * max(1.0, smax)


def rank(A, rtol=1e-10):
    A = as_complex_matrix(A)
    if A.size == 0:
        return 0
    s = scipy.linalg.svdvals(A)
    return int(np.count_nonzero(s > _threshold(s, rtol)))


def range_basis(A, rtol=1e-10):
    """Orthonormal basis (columns) of the range of ``A``."""
    A = as_complex_matrix(A)
    n = A.shape[0]
    if A.size == 0:
        return np.zeros((n, 0), dtype=complex)
    U, s, _ = scipy.linalg.svd(A, full_matrices=False)
    r = int(np.count_nonzero(s > _threshold(s, rtol)))
    return U[:, :r]


def null_space(A, rtol=1e-10):
    """Orthonormal basis (columns) of the kernel of ``A``."""
    A = as_complex_matrix(A)
    m = A.shape[1]
    if A.shape[0] == 0 or m == 0:
        return np.eye(m, dtype=complex)
    _, s, Vh = scipy.linalg.svd(A, full_matrices=True)
    r = int(np.count_nonzero(s > _threshold(s, rtol)))
    return adj(Vh[r:])


def pinv(A, rtol=1e-10):
    """Moore-Penrose inverse by thresholded SVD."""
    A = as_complex_matrix(A)
    if A.size == 0:
        return np.zeros((A.shape[1], A.shape[0]), dtype=complex)
    U, s, Vh = scipy.linalg.svd(A, full_matrices=False)
    keep = s > _threshold(s, rtol)
    return (adj(Vh[keep]) / s[keep]) @ adj(U[:, keep])


def spectral_norm(A):
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(A)[0])


def psd_sqrt(A, inverse=False):
    """Principal square root (or inverse square root) of a Hermitian p.s.d. matrix."""
    w, V = scipy.linalg.eigh(hermitian_part(A))
    w = np.clip(w, 0.0, None)
    if inverse:
        w = 1.0 / w
    return (V * np.sqrt(w)) @ adj(V)


def inertia(H, tol):
    """Counts of eigenvalues of the Hermitian matrix ``H`` above ``tol``, below ``-tol``
    and in between."""
    if H.shape[0] == 0:
        return 0, 0, 0
    w = scipy.linalg.eigvalsh(hermitian_part(H))
    pos = int(np.count_nonzero(w > tol))
    neg = int(np.count_nonzero(w < -tol))
    return pos, neg, w.size - pos - neg


def min_eigenvalue(H):
    if H.shape[0] == 0:
        return np.inf
    return float(scipy.linalg.eigvalsh(hermitian_part(H))[0])


def max_eigenvalue(H):
    if H.shape[0] == 0:
        return -np.inf
    return float(scipy.linalg.eigvalsh(hermitian_part(H))[-1])
