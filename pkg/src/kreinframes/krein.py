"""Finite-dimensional Krein spaces and their indefinite geometry.

The Hilbert inner product is ``<x, y> = sum(x * conj(y))`` (linear in the first
argument) and the indefinite one is ``[x, y] = <Jx, y>``.  Subspaces are carried as
matrices with orthonormal columns.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
import scipy.linalg

from . import _linalg as la
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ClassificationError, DimensionError, GeometryError, SymmetryError

__all__ = [
    "KreinSpace", "SubspaceBasis", "SubspaceClassification",
    "indefinite_inner", "j_adjoint", "gramian", "reduced_min_modulus",
    "definiteness_bound", "gramian_modulus", "classify_subspace", "degenerate_part",
    "j_orthogonal_companion", "friedrichs_angle", "oblique_projection",
    "j_selfadjoint_projection", "intersection", "orthogonal_complement",
    "is_uniformly_definite",
]


@dataclass(frozen=True, eq=False)
class KreinSpace:
    """``C^n`` with the indefinite product ``[x, y] = <Jx, y>``.

    ``J`` may be any Hermitian involution; the fundamental decomposition
    ``H+ (+) H-`` is recovered from its eigenvectors.  Use
    :meth:`from_signature` for the canonical ``diag(1, ..., 1, -1, ..., -1)``.
    """

    J: np.ndarray
    tol: Tolerances = DEFAULT_TOLERANCES

    def __post_init__(self):
        J = np.array(self.J, dtype=complex)
        if J.ndim != 2 or J.shape[0] != J.shape[1] or J.shape[0] == 0:
            raise DimensionError("J must be a non-empty square matrix, got shape %s" % (J.shape,))
        n = J.shape[0]
        if np.linalg.norm(J - la.adj(J)) > self.tol.check:
            raise SymmetryError("J is not Hermitian")
        if np.linalg.norm(J @ J - np.eye(n)) > self.tol.check:
            raise SymmetryError("J is not an involution")
        J.setflags(write=False)
        object.__setattr__(self, "J", J)

    @classmethod
    def from_signature(cls, p, q, tol=DEFAULT_TOLERANCES):
        if p < 0 or q < 0 or p + q == 0:
            raise DimensionError("signature must be non-negative with p + q > 0")
        return cls(np.diag([1.0] * p + [-1.0] * q), tol)

    @property
    def dim(self):
        return self.J.shape[0]

    @cached_property
    def decomposition(self):
        """Orthonormal bases ``(U_plus, U_minus)`` of ``H+`` and ``H-``."""
        J = self.J
        d = np.real(np.diag(J))
        if np.count_nonzero(J - np.diag(np.diag(J))) == 0:
            eye = np.eye(self.dim, dtype=complex)
            return eye[:, d > 0], eye[:, d < 0]
        w, V = scipy.linalg.eigh(J)
        return V[:, w > 0], V[:, w < 0]

    @property
    def signature(self):
        Up, Um = self.decomposition
        return Up.shape[1], Um.shape[1]

    @property
    def is_definite(self):
        return 0 in self.signature

    @cached_property
    def P_plus(self):
        """The J-selfadjoint projection ``(I + J) / 2`` onto ``H+``."""
        return 0.5 * (np.eye(self.dim) + self.J)

    def antispace(self):
        """Same vectors with the form ``-[., .]``."""
        return KreinSpace(-self.J, self.tol)

    def with_tolerances(self, tol):
        return KreinSpace(self.J, tol)

    def inner(self, x, y):
        return indefinite_inner(self, x, y)

    def __repr__(self):
        p, q = self.signature
        return "KreinSpace(dim=%d, signature=(%d, %d))" % (self.dim, p, q)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """A subspace given by an orthonormal basis ``B`` (``n x k``).

    ``space`` is optional so the same type can describe subspaces of a plain
    coefficient space.
    """

    space: Optional[KreinSpace]
    B: np.ndarray

    def __post_init__(self):
        B = la.as_complex_matrix(self.B)
        if self.space is not None and B.shape[0] != self.space.dim:
            raise DimensionError("basis has %d rows, space has dimension %d" % (B.shape[0], self.space.dim))
        k = B.shape[1]
        if k > B.shape[0]:
            raise DimensionError("more basis vectors than the ambient dimension")
        if k and np.linalg.norm(la.adj(B) @ B - np.eye(k)) > 1e-8:
            raise ValueError("basis columns are not orthonormal; use SubspaceBasis.span")
        B.setflags(write=False)
        object.__setattr__(self, "B", B)

    @classmethod
    def span(cls, vectors, space=None, rtol=None):
        """Subspace spanned by the columns of ``vectors``."""
        if rtol is None:
            rtol = space.tol.rank if space is not None else DEFAULT_TOLERANCES.rank
        return cls(space, la.range_basis(vectors, rtol))

    @classmethod
    def zero(cls, n, space=None):
        return cls(space, np.zeros((n, 0), dtype=complex))

    @property
    def dim(self):
        return self.B.shape[1]

    @property
    def ambient_dim(self):
        return self.B.shape[0]

    @cached_property
    def projector(self):
        """Orthogonal projection onto the subspace."""
        return self.B @ la.adj(self.B)

    @cached_property
    def gram(self):
        """The form ``[., .]`` in the basis ``B``: ``B* J B``."""
        if self.space is None:
            raise GeometryError("subspace is not attached to a Krein space")
        return la.hermitian_part(la.adj(self.B) @ self.space.J @ self.B)

    def contains(self, x, tol=1e-8):
        x = np.asarray(x, dtype=complex)
        return np.linalg.norm(x - self.projector @ x) <= tol * max(1.0, np.linalg.norm(x))

    def equals(self, other, tol=1e-8):
        """Subspace equality via projector distance."""
        return self.dim == other.dim and np.linalg.norm(self.projector - other.projector, 2) <= tol

    def __repr__(self):
        return "SubspaceBasis(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)


KINDS = ("positive", "nonnegative", "neutral", "nonpositive", "negative", "indefinite", "zero")


@dataclass(frozen=True)
class SubspaceClassification:
    """Sign behaviour of ``[f, f]`` on a subspace.

    ``definiteness_bound`` is ``None`` for indefinite subspaces.  The zero subspace
    gets ``kind="zero"``, is uniformly definite of either sign (bound 1 by
    convention) and counts as maximal only when ``sign`` was given and the
    matching half of the fundamental decomposition is trivial.
    """

    kind: str
    definiteness_bound: Optional[float]
    uniformly_definite: bool
    maximal: bool
    degenerate_part_dim: int
    dim: int

    @property
    def sign(self):
        if self.kind in ("positive", "nonnegative"):
            return 1
        if self.kind in ("negative", "nonpositive"):
            return -1
        return 0


def _vector(space, x, name):
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1 or x.shape[0] != space.dim:
        raise DimensionError("%s must be a vector of length %d, got shape %s" % (name, space.dim, x.shape))
    return x


def indefinite_inner(space, x, y):
    """``[x, y] = <Jx, y>``."""
    x = _vector(space, x, "x")
    y = _vector(space, y, "y")
    return complex(np.vdot(y, space.J @ x))


def j_adjoint(space_in, space_out, T):
    """J-adjoint ``T# = J_in T* J_out`` of ``T`` mapping ``space_in`` to ``space_out``."""
    T = la.as_complex_matrix(T)
    if T.shape != (space_out.dim, space_in.dim):
        raise DimensionError("T has shape %s, expected %s" % (T.shape, (space_out.dim, space_in.dim)))
    return space_in.J @ la.adj(T) @ space_out.J


def gramian(space, M):
    """Gramian ``G_M = P_M J P_M`` as an ``n x n`` matrix."""
    _check_attached(space, M)
    P = M.projector
    return la.hermitian_part(P @ space.J @ P)


def reduced_min_modulus(T, rtol=DEFAULT_TOLERANCES.rank):
    """Smallest nonzero singular value of ``T``; ``inf`` when ``T = 0``."""
    T = np.asarray(T, dtype=complex)
    if T.size == 0:
        return np.inf
    s = scipy.linalg.svdvals(la.as_complex_matrix(T))
    s = s[s > rtol * max(1.0, s[0])]
    return float(s[-1]) if s.size else np.inf


def _check_attached(space, M):
    if M.ambient_dim != space.dim:
        raise DimensionError("subspace lives in dimension %d, space has %d" % (M.ambient_dim, space.dim))


def classify_subspace(space, M, sign=None):
    """Classify ``M`` from the eigenvalues of ``B* J B``.

    ``sign`` (+1/-1) only matters for the zero subspace, whose maximality depends
    on which side it is meant to represent.
    """
    _check_attached(space, M)
    k = M.dim
    p, q = space.signature
    if k == 0:
        maximal = sign is not None and (p if sign > 0 else q) == 0
        return SubspaceClassification("zero", 1.0, True, maximal, 0, 0)
    if M.space is space:
        H = M.gram
    else:
        H = la.hermitian_part(la.adj(M.B) @ space.J @ M.B)
    w = scipy.linalg.eigvalsh(H)
    tol = space.tol.rank
    pos = w > tol
    neg = w < -tol
    nzero = int(np.count_nonzero(~pos & ~neg))
    if pos.all():
        kind, alpha = "positive", float(w[0])
    elif neg.all():
        kind, alpha = "negative", float(-w[-1])
    elif not neg.any() and pos.any():
        kind, alpha = "nonnegative", 0.0
    elif not pos.any() and neg.any():
        kind, alpha = "nonpositive", 0.0
    elif not pos.any() and not neg.any():
        kind, alpha = "neutral", 0.0
    else:
        kind, alpha = "indefinite", None
    uniform = kind in ("positive", "negative")
    maximal = uniform and k == (p if kind == "positive" else q)
    return SubspaceClassification(kind, alpha, uniform, maximal, nzero, k)


def is_uniformly_definite(space, M, sign):
    """True when ``M`` is uniformly J-positive (``sign=+1``) or J-negative (``sign=-1``).
    The zero subspace qualifies for both signs."""
    c = classify_subspace(space, M, sign)
    return c.kind == "zero" or (c.uniformly_definite and c.sign == sign)


def definiteness_bound(space, M):
    """Largest ``alpha`` with ``|[f, f]| >= alpha ||f||^2`` on a J-semidefinite ``M``.

    Degenerate subspaces give 0.  See :func:`gramian_modulus` for the reduced
    minimum modulus of the Gramian, which ignores the degenerate part.
    """
    c = classify_subspace(space, M)
    if c.kind == "indefinite":
        raise ClassificationError("subspace is J-indefinite; the definiteness bound is undefined")
    return c.definiteness_bound


def gramian_modulus(space, M):
    """``gamma(G_M)``; equals the definiteness bound of ``M`` minus its degenerate part."""
    return reduced_min_modulus(gramian(space, M), space.tol.rank)


def degenerate_part(space, M):
    """``M`` intersected with its J-orthogonal companion."""
    _check_attached(space, M)
    if M.dim == 0:
        return SubspaceBasis.zero(space.dim, space)
    H = la.hermitian_part(la.adj(M.B) @ space.J @ M.B)
    N = la.null_space(H, space.tol.rank)
    return SubspaceBasis(space, la.range_basis(M.B @ N, space.tol.rank))


def j_orthogonal_companion(space, M):
    """``M^[perp] = {x : [x, m] = 0 for all m in M}``, i.e. ``(JM)^perp``."""
    _check_attached(space, M)
    return SubspaceBasis(space, la.null_space(la.adj(M.B) @ space.J, space.tol.rank))


def intersection(S, T, rtol=DEFAULT_TOLERANCES.rank):
    n = S.ambient_dim
    if S.dim == 0 or T.dim == 0:
        return SubspaceBasis.zero(n, S.space)
    N = la.null_space(np.hstack([S.B, -T.B]), rtol)
    return SubspaceBasis(S.space, la.range_basis(S.B @ N[: S.dim], rtol))


def orthogonal_complement(S, rtol=DEFAULT_TOLERANCES.rank):
    return SubspaceBasis(S.space, la.null_space(la.adj(S.B), rtol))


def _remove(S, W, rtol):
    """``S (-) W`` for ``W`` contained in ``S``."""
    if W.dim == 0:
        return S
    C = la.null_space(la.adj(W.B) @ S.B, rtol)
    return SubspaceBasis(S.space, la.range_basis(S.B @ C, rtol))


def friedrichs_angle(S, T, rtol=DEFAULT_TOLERANCES.rank):
    """Cosine of the Friedrichs angle: ``||P_{S(-)W} P_{T(-)W}||`` with ``W = S cap T``."""
    if S.ambient_dim != T.ambient_dim:
        raise DimensionError("subspaces live in different dimensions")
    W = intersection(S, T, rtol)
    S1 = _remove(S, W, rtol)
    T1 = _remove(T, W, rtol)
    if S1.dim == 0 or T1.dim == 0:
        return 0.0
    return min(1.0, la.spectral_norm(la.adj(S1.B) @ T1.B))


def oblique_projection(space, M, N):
    """Projection with range ``M`` and kernel ``N``; they must be complementary."""
    _check_attached(space, M)
    _check_attached(space, N)
    n = space.dim
    if M.dim + N.dim != n:
        raise GeometryError("dimensions %d + %d do not add up to %d" % (M.dim, N.dim, n))
    W = np.hstack([M.B, N.B])
    if la.rank(W, space.tol.rank) != n:
        raise GeometryError("subspaces intersect nontrivially; no oblique projection")
    D = np.zeros(n)
    D[: M.dim] = 1.0
    return (W * D) @ np.linalg.inv(W)


def j_selfadjoint_projection(space, M):
    """The J-selfadjoint projection onto a uniformly J-definite ``M``.

    It is ``P_{M // M^[perp]} = B (B* J B)^{-1} B* J``; for J-semidefinite
    subspaces that are not uniformly definite no such projection exists.
    """
    c = classify_subspace(space, M)
    if not (c.uniformly_definite or c.kind == "zero"):
        raise GeometryError("subspace is %s, not uniformly J-definite" % c.kind)
    if M.dim == 0:
        return np.zeros((space.dim, space.dim), dtype=complex)
    B = M.B
    H = la.adj(B) @ space.J @ B
    return B @ np.linalg.solve(H, la.adj(B) @ space.J)
