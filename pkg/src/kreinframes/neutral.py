"""Geometry between subspaces and the cone of J-neutral vectors.

For a J-semidefinite subspace with definiteness bound ``alpha`` everything here is
a closed form in ``alpha``:

* ``c0    = (sqrt((1 + alpha)/2) + sqrt((1 - alpha)/2)) / sqrt(2)`` (cosine of the
  minimal angle ``theta`` to the cone),
* ``||K|| = sqrt((1 - alpha)/(1 + alpha))`` for the angular operator ``K``,
* aperture ``||K|| / sqrt(1 + ||K||^2) = sqrt((1 - alpha)/2) = sin(phi)``,
* ``phi + theta = pi/4``.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _linalg as la
from .errors import GeometryError, NotAFrameError, PreconditionError
from .hilbert import is_frame
from .krein import SubspaceBasis, classify_subspace

__all__ = ["ConeAngleReport", "AngularOperator", "cone_cosine", "cone_correlation",
           "cone_correlation_oracle", "angular_operator", "j_frame_by_partition"]


@dataclass(frozen=True)
class ConeAngleReport:
    c0: float
    theta: float
    alpha: float
    K_norm: float
    aperture: float
    phi: float
    semidefinite: bool = True
    note: str = ""


def cone_cosine(alpha):
    """``c0`` as a function of the definiteness bound."""
    return (math.sqrt((1 + alpha) / 2) + math.sqrt((1 - alpha) / 2)) / math.sqrt(2)


def _report(alpha, semidefinite=True, note=""):
    alpha = min(max(float(alpha), 0.0), 1.0)
    phi = math.asin(math.sqrt((1 - alpha) / 2))
    # theta from phi keeps full precision near alpha = 0, where arccos(c0) would not
    theta = max(0.0, math.pi / 4 - phi)
    K = math.sqrt((1 - alpha) / (1 + alpha))
    return ConeAngleReport(
        c0=cone_cosine(alpha), theta=theta, alpha=alpha, K_norm=K,
        aperture=math.sqrt((1 - alpha) / 2), phi=phi,
        semidefinite=semidefinite, note=note,
    )


def cone_correlation(space, M):
    """Minimal angle between ``M`` and the neutral cone.

    Indefinite subspaces contain neutral vectors, so they get ``c0 = 1``,
    ``theta = 0`` (reported with ``alpha = 0``).  The zero subspace is treated
    as ``alpha = 1``.
    """
    c = classify_subspace(space, M)
    if c.kind == "indefinite":
        return _report(0.0, semidefinite=False, note="subspace contains neutral vectors")
    if c.kind == "zero":
        return _report(1.0, note="zero subspace")
    if c.sign < 0:
        # nonpositive subspaces are nonnegative in the antispace; the cone is the same
        anti = space.antispace()
        alpha = classify_subspace(anti, SubspaceBasis(anti, M.B)).definiteness_bound
    else:
        alpha = c.definiteness_bound
    note = "subspace contains neutral vectors" if alpha <= space.tol.rank else ""
    return _report(alpha, note=note)


def _split(space, m):
    Up, Um = space.decomposition
    return Up @ (la.adj(Up) @ m), Um @ (la.adj(Um) @ m)


def cone_correlation_oracle(space, M, samples, seed=None):
    """Sampling estimate of ``c0 = sup |<m, n>|`` over unit ``m in M`` and unit
    neutral ``n``.

    The inner supremum is attained at ``n_m = (m+/||m+|| + m-/||m-||) / sqrt(2)``
    (or ``(m + z)/sqrt(2)`` with a unit ``z`` from the other half when one
    component vanishes), so only ``m`` is sampled.  For a fixed seed the sample
    sequence is prefix-stable, hence the estimate is nondecreasing in ``samples``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if space.is_definite:
        raise GeometryError("the neutral cone of a definite space is trivial")
    if M.dim == 0:
        raise GeometryError("the zero subspace has no unit vectors")
    rng = np.random.default_rng(seed)
    Up, Um = space.decomposition
    z = rng.standard_normal((samples, M.dim, 2))
    coords = z[..., 0] + 1j * z[..., 1]
    best = 0.0
    for y in coords:
        m = M.B @ y
        m /= np.linalg.norm(m)
        mp, mm = _split(space, m)
        a, b = np.linalg.norm(mp), np.linalg.norm(mm)
        if b <= 1e-15:
            n = (m + Um[:, 0]) / math.sqrt(2)
        elif a <= 1e-15:
            n = (m + Up[:, 0]) / math.sqrt(2)
        else:
            n = (mp / a + mm / b) / math.sqrt(2)
        best = max(best, abs(np.vdot(n, m)))
    return float(best)


@dataclass(frozen=True, eq=False)
class AngularOperator:
    """Angular operator of a subspace over ``H+`` (``sign=+1``) or ``H-`` (``sign=-1``).

    ``coords`` maps coordinates of ``H_sign`` to coordinates of ``H_-sign`` in the
    bases of ``space.decomposition``; ``matrix`` is the same map on ``C^n``
    (zero off the domain).  ``M = {x + Kx : x in domain}``.
    """

    coords: np.ndarray
    matrix: np.ndarray
    domain: SubspaceBasis
    sign: int

    @property
    def norm(self):
        return la.spectral_norm(self.coords)

    @property
    def everywhere_defined(self):
        return self.domain.dim == self.coords.shape[1]


def angular_operator(space, M, sign=None):
    """Angular operator of ``M`` with respect to the fundamental decomposition.

    ``sign`` defaults to the sign of ``M`` (+1 for J-nonnegative, -1 for
    J-nonpositive) and must be given for neutral or indefinite subspaces.
    Raises :class:`GeometryError` when ``M`` meets the opposite half
    (the projection of ``M`` onto ``H_sign`` is not injective).
    """
    if sign is None:
        sign = classify_subspace(space, M).sign
        if sign == 0:
            if M.dim == 0:
                sign = 1
            else:
                raise GeometryError("sign of a neutral or indefinite subspace must be given")
    Up, Um = space.decomposition
    Uin, Uout = (Up, Um) if sign > 0 else (Um, Up)
    X = la.adj(Uin) @ M.B
    Y = la.adj(Uout) @ M.B
    if la.rank(X, space.tol.rank) < M.dim:
        raise GeometryError("subspace meets H%s; it has no angular operator" % ("-" if sign > 0 else "+"))
    Kc = Y @ la.pinv(X, space.tol.rank)
    domain = SubspaceBasis(space, la.range_basis(Uin @ X, space.tol.rank))
    return AngularOperator(Kc, Uout @ Kc @ la.adj(Uin), domain, int(sign))


def _theta(space, T, idx):
    M = SubspaceBasis.span(T[:, list(idx)], space) if len(idx) else SubspaceBasis.zero(space.dim, space)
    return M, cone_correlation(space, M).theta


def j_frame_by_partition(space, F, partition):
    """Angle test: both classes of the partition span subspaces at a positive
    angle from the neutral cone, and those subspaces have opposite signs.

    The sign requirement is part of the conclusion that makes the angle test
    equivalent to being a J-frame; without it two uniformly J-positive classes
    (e.g. ``(1, .1)`` and ``(1, -.1)`` in signature (1, 1)) would pass.
    """
    if not is_frame(F):
        raise NotAFrameError("the family is not a frame")
    I1, I2 = (sorted(set(int(i) for i in part)) for part in partition)
    m = F.size
    if set(I1) & set(I2) or set(I1) | set(I2) != set(range(m)):
        raise PreconditionError("partition must split the indices 0..%d disjointly" % (m - 1))
    tol = space.tol.angle
    M1, t1 = _theta(space, F.T, I1)
    M2, t2 = _theta(space, F.T, I2)
    if not (t1 > tol and t2 > tol):
        return False
    s1 = classify_subspace(space, M1).sign
    s2 = classify_subspace(space, M2).sign
    # an empty class (sign 0) pairs with either sign
    return s1 * s2 <= 0
