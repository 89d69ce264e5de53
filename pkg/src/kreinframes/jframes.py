"""J-frames: detection, bounds, the J-frame operator and the canonical dual J-frame.

A family ``{f_i}`` with synthesis matrix ``T`` is split by the sign of ``[f_i, f_i]``
into ``T+`` and ``T-``; it is a J-frame when ``R(T+)`` is a maximal uniformly
J-positive subspace and ``R(T-)`` a maximal uniformly J-negative one.  On the
coefficient space the signs give the fundamental symmetry ``J2 = diag(sigma_i)``,
and the J-frame operator is ``S = T T# = T J2 T* J``.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

from . import _linalg as la
from .errors import (GeometryError, NeutralVectorError, NotAFrameError, NotAJFrameError,
                     OperatorError)
from .hilbert import VectorFamily, is_frame
from .krein import (SubspaceBasis, SubspaceClassification, classify_subspace, degenerate_part,
                    is_uniformly_definite, oblique_projection, reduced_min_modulus)
from .neutral import angular_operator

__all__ = [
    "SignPartition", "JFrameBounds", "JFrameReport", "TransitionCriterion",
    "InequalityResult", "partition_by_sign", "is_j_frame", "j_frame_bounds",
    "crude_j_frame_bounds", "bound_attainers", "literal_bound_expressions",
    "j_frame_operator", "j_frame_operator_by_sum", "j_frame_decomposition",
    "indefinite_reconstruct", "canonical_dual_j_frame", "transition_operator_criterion",
    "build_from_maximal_pair", "index_signature", "frame_inequality_constants",
    "j_frame_via_inequalities",
]


@dataclass(frozen=True)
class SignPartition:
    """Split of the column positions by the sign of ``[f_i, f_i]``.

    Neutral columns are listed in ``neutral`` and, following the ``>= 0``
    convention, also in ``I_plus`` with ``sigma = +1``.
    """

    I_plus: tuple
    I_minus: tuple
    sigma: tuple
    neutral: tuple = ()

    @property
    def J2(self):
        return np.diag(np.asarray(self.sigma, dtype=float))


class JFrameBounds(NamedTuple):
    B_minus: float
    A_minus: float
    A_plus: float
    B_plus: float


class TransitionCriterion(NamedTuple):
    defined_everywhere: bool
    norm_F: float

    def holds(self, tol=1e-10):
        return self.defined_everywhere and self.norm_F < 1 - tol


class InequalityResult(NamedTuple):
    """One-sided frame inequalities ``A [f,f] <= sum |[f, f_i]|^2 <= B [f,f]`` on the span.

    ``A``/``B`` are the optimal constants (in absolute value; the caller applies the
    sign) or ``None`` when the span is J-neutral and any constants work.
    """

    satisfiable: bool
    A: Optional[float]
    B: Optional[float]
    degenerate_dim: int
    kind: str


@dataclass(frozen=True, eq=False)
class JFrameReport:
    """Everything :func:`is_j_frame` learns about a family.

    Operator fields and ``bounds`` are ``None`` unless ``is_j_frame``.
    """

    space: object
    family: VectorFamily
    is_j_frame: bool
    reason: str
    is_frame: bool
    partition: SignPartition
    M_plus: SubspaceBasis
    M_minus: SubspaceBasis
    class_plus: SubspaceClassification
    class_minus: SubspaceClassification
    neutral_plus: SubspaceBasis
    neutral_minus: SubspaceBasis
    bounds: Optional[JFrameBounds] = None
    crude_bounds: Optional[JFrameBounds] = None
    S: Optional[np.ndarray] = None
    S_plus: Optional[np.ndarray] = None
    S_minus: Optional[np.ndarray] = None
    Q: Optional[np.ndarray] = None

    @property
    def T_plus(self):
        return self.family.T[:, list(self.partition.I_plus)]

    @property
    def T_minus(self):
        return self.family.T[:, list(self.partition.I_minus)]

    @property
    def sigma(self):
        return np.asarray(self.partition.sigma, dtype=float)

    def require(self):
        if not self.is_j_frame:
            raise NotAJFrameError("not a J-frame: " + self.reason)
        return self


def _as_family(space, F):
    if isinstance(F, VectorFamily):
        return F
    return VectorFamily(space, F)


def partition_by_sign(space, F, strict=True):
    """Partition column positions by the sign of ``[f_i, f_i]``.

    A column is neutral when ``|[f_i, f_i]| <= tol.neutral * ||f_i||^2``; with
    ``strict`` such columns raise :class:`NeutralVectorError`.
    """
    F = _as_family(space, F)
    T = F.T
    q = np.real(np.einsum("ij,ik,kj->j", T.conj(), space.J, T))
    norms = np.einsum("ij,ij->j", T.conj(), T).real
    neutral = np.abs(q) <= space.tol.neutral * norms
    if strict and neutral.any():
        idx = tuple(int(i) for i in np.flatnonzero(neutral))
        raise NeutralVectorError(
            "J-neutral vector(s) at position(s) %s (labels %s); a J-frame cannot contain them"
            % (list(idx), [F.labels[i] for i in idx]), idx)
    plus = (q > 0) | neutral
    sigma = tuple(1 if s else -1 for s in plus)
    return SignPartition(
        tuple(int(i) for i in np.flatnonzero(plus)),
        tuple(int(i) for i in np.flatnonzero(~plus)),
        sigma,
        tuple(int(i) for i in np.flatnonzero(neutral)),
    )


def _span(space, T):
    if T.shape[1] == 0:
        return SubspaceBasis.zero(space.dim, space)
    return SubspaceBasis.span(T, space)


def _side_reason(name, c, dim_half):
    if c.kind == "indefinite":
        return "%s indefinite" % name
    if c.degenerate_part_dim:
        return "%s degenerate: neutral direction present" % name
    if not c.maximal:
        return "%s not maximal: dim %d < %d" % (name, c.dim, dim_half)
    return ""


def is_j_frame(space, F):
    """Decide whether ``F`` is a J-frame and collect the supporting data."""
    F = _as_family(space, F)
    part = partition_by_sign(space, F)
    Tp = F.T[:, list(part.I_plus)]
    Tm = F.T[:, list(part.I_minus)]
    Mp, Mm = _span(space, Tp), _span(space, Tm)
    cp = classify_subspace(space, Mp, +1)
    cm = classify_subspace(space, Mm, -1)
    p, q = space.signature
    ok_p = cp.maximal and is_uniformly_definite(space, Mp, +1)
    ok_m = cm.maximal and is_uniformly_definite(space, Mm, -1)
    reasons = [r for r in (
        "" if ok_p else _side_reason("M_plus", cp, p),
        "" if ok_m else _side_reason("M_minus", cm, q),
    ) if r]
    common = dict(
        space=space, family=F, is_frame=is_frame(F), partition=part,
        M_plus=Mp, M_minus=Mm, class_plus=cp, class_minus=cm,
        neutral_plus=degenerate_part(space, Mp), neutral_minus=degenerate_part(space, Mm),
    )
    if not (ok_p and ok_m):
        return JFrameReport(is_j_frame=False, reason="; ".join(reasons), **common)

    S_plus = Tp @ la.adj(Tp) @ space.J
    S_minus = Tm @ la.adj(Tm) @ space.J
    report = JFrameReport(
        is_j_frame=True, reason="M_plus and M_minus are maximal uniformly J-definite",
        S=S_plus - S_minus, S_plus=S_plus, S_minus=S_minus,
        Q=oblique_projection(space, Mp, Mm), **common,
    )
    object.__setattr__(report, "bounds", _optimal_bounds(report))
    object.__setattr__(report, "crude_bounds", _crude_bounds(report))
    return report


def _report(space, F):
    """Accept either a family or an existing report."""
    if isinstance(F, JFrameReport):
        return F.require()
    return is_j_frame(space, F).require()


def _side_matrix(space, T, M, sign):
    """``H^{1/2} C C* H^{1/2}`` in the basis of ``M``, where ``H = sign * B* J B`` and
    ``T = B C``.  Its eigenvalues are the ratios ``sum |[f, f_i]|^2 / |[f, f]|``."""
    H = sign * M.gram
    C = la.adj(M.B) @ T
    Hh = la.psd_sqrt(H)
    return Hh @ C @ la.adj(C) @ Hh, H


def _side_extremes(space, T, M, sign):
    if M.dim == 0:
        return np.nan, np.nan, None, None
    X, H = _side_matrix(space, T, M, sign)
    w, V = scipy.linalg.eigh(la.hermitian_part(X))
    Hih = la.psd_sqrt(H, inverse=True)
    lo = M.B @ (Hih @ V[:, 0])
    hi = M.B @ (Hih @ V[:, -1])
    return float(w[0]), float(w[-1]), lo, hi


def j_frame_bounds(space, F):
    """Optimal J-frame bounds ``(B-, A-, A+, B+)``.

    On each side they are the extreme eigenvalues of ``G^{1/2} T T* G^{1/2}``
    expressed on ``M_+-``, with the Gramian ``G`` taken with the sign that makes
    it positive.  A side with no vectors (possible only when the matching half
    of the space is trivial) reports ``nan``.
    """
    return _report(space, F).bounds


def _optimal_bounds(r):
    sp = r.space
    lo_p, hi_p, _, _ = _side_extremes(sp, r.T_plus, r.M_plus, +1)
    lo_m, hi_m, _, _ = _side_extremes(sp, r.T_minus, r.M_minus, -1)
    return JFrameBounds(-hi_m, -lo_m, lo_p, hi_p)


def crude_j_frame_bounds(space, F):
    """The non-optimal constants ``+-alpha^2 gamma(T+-)^2`` and ``+-||T+-||^2 / alpha``."""
    return _report(space, F).crude_bounds


def _crude_bounds(r):
    out = []
    for T, c in ((r.T_plus, r.class_plus), (r.T_minus, r.class_minus)):
        if T.shape[1] == 0:
            out.append((np.nan, np.nan))
            continue
        a = c.definiteness_bound
        out.append((a * a * reduced_min_modulus(T, r.space.tol.rank) ** 2,
                    la.spectral_norm(T) ** 2 / a))
    (ap, bp), (am, bm) = out
    return JFrameBounds(-bm, -am, ap, bp)


def bound_attainers(space, F):
    """Vectors of ``M_+-`` at which the optimal bounds are attained.

    Returns a dict with keys ``"A_plus"``, ``"B_plus"``, ``"A_minus"``, ``"B_minus"``.
    """
    r = _report(space, F)
    _, _, lo_p, hi_p = _side_extremes(r.space, r.T_plus, r.M_plus, +1)
    _, _, lo_m, hi_m = _side_extremes(r.space, r.T_minus, r.M_minus, -1)
    return {"A_plus": lo_p, "B_plus": hi_p, "A_minus": lo_m, "B_minus": hi_m}


def literal_bound_expressions(space, F):
    """The norm expressions ``||G^{-1/2} (T T*)^{-1}||^{-1}`` and ``||G^{1/2} T T* G||``
    evaluated on each side, for comparison with :func:`j_frame_bounds`.

    They coincide with the optimal bounds when ``M_+-`` is contained in ``H_+-``
    (``G`` the identity) but not in general; the symmetric expression
    ``||G^{1/2} T T* G^{1/2}||`` always reproduces ``B``.
    """
    r = _report(space, F)
    vals = {}
    for name, T, M, sign in (("plus", r.T_plus, r.M_plus, 1), ("minus", r.T_minus, r.M_minus, -1)):
        if M.dim == 0:
            vals[name] = (np.nan, np.nan)
            continue
        G = sign * M.gram
        C = la.adj(M.B) @ T
        CC = C @ la.adj(C)
        A = 1.0 / la.spectral_norm(la.psd_sqrt(G, inverse=True) @ np.linalg.inv(CC))
        B = la.spectral_norm(la.psd_sqrt(G) @ CC @ G)
        vals[name] = (sign * A, sign * B)
    return JFrameBounds(vals["minus"][1], vals["minus"][0], vals["plus"][0], vals["plus"][1])


def j_frame_operator(space, F):
    """``S = T J2 T* J``, i.e. ``Sf = sum sigma_i [f, f_i] f_i``.

    Defined for every family without neutral vectors; it is a J-frame operator
    only when the family is a J-frame.
    """
    F = _as_family(space, F)
    sigma = np.asarray(partition_by_sign(space, F).sigma, dtype=float)
    return (F.T * sigma) @ la.adj(F.T) @ space.J


def j_frame_operator_by_sum(space, F, f):
    """Apply ``S`` to a vector through the defining sum (reference path)."""
    F = _as_family(space, F)
    sigma = partition_by_sign(space, F).sigma
    f = np.asarray(f, dtype=complex)
    out = np.zeros(space.dim, dtype=complex)
    for i in range(F.size):
        fi = F.T[:, i]
        out += sigma[i] * space.inner(f, fi) * fi
    return out


def j_frame_decomposition(report):
    """``(S_plus, S_minus, Q)`` with ``S = S_plus - S_minus``, ``S_+- = T+- T+-* J`` and
    ``Q`` the projection onto ``M_plus`` along ``M_minus``."""
    report.require()
    return report.S_plus, report.S_minus, report.Q


class Reconstruction(NamedTuple):
    coeffs: np.ndarray
    rebuilt: np.ndarray


def indefinite_reconstruct(report, f, swap=False):
    """Indefinite reconstruction of ``f`` from a J-frame.

    By default the coefficients are ``sigma_i [f, S^-1 f_i]`` and ``f`` is rebuilt
    from the frame vectors; with ``swap`` they are ``sigma_i [f, f_i]`` and ``f``
    is rebuilt from the dual vectors ``S^-1 f_i``.
    """
    report.require()
    sp = report.space
    f = np.asarray(f, dtype=complex)
    T = report.family.T
    G = np.linalg.solve(report.S, T)
    sigma = report.sigma
    if swap:
        coeffs = sigma * (la.adj(T) @ (sp.J @ f))
        return Reconstruction(coeffs, G @ coeffs)
    coeffs = sigma * (la.adj(G) @ (sp.J @ f))
    return Reconstruction(coeffs, T @ coeffs)


def canonical_dual_j_frame(space, F):
    """The canonical dual J-frame ``{S^-1 f_i}``."""
    r = _report(space, F)
    return VectorFamily(r.space, np.linalg.solve(r.S, r.family.T), r.family.labels)


def _angular_side(space, M, sign):
    half = space.signature[0 if sign > 0 else 1]
    if M.dim == 0:
        return half == 0, 0.0
    try:
        K = angular_operator(space, M, sign)
    except GeometryError:
        return False, np.inf
    return K.everywhere_defined, K.norm


def transition_operator_criterion(space, F):
    """Domain and norm of the transition operator ``F = K+ P + K- (I - P)``.

    ``K+-`` are the angular operators of ``R(T+-)``; ``F`` is everywhere defined
    when both are, and since ``F`` is block off-diagonal ``||F|| = max ||K+-||``.
    A side meeting the opposite half of the space has no angular operator and
    reports an infinite norm.
    """
    F = _as_family(space, F)
    part = partition_by_sign(space, F)
    Mp = _span(space, F.T[:, list(part.I_plus)])
    Mm = _span(space, F.T[:, list(part.I_minus)])
    dp, np_ = _angular_side(space, Mp, +1)
    dm, nm = _angular_side(space, Mm, -1)
    return TransitionCriterion(bool(dp and dm), float(max(np_, nm)))


def build_from_maximal_pair(space, Fp, Fm):
    """Glue a frame of a maximal uniformly J-positive subspace and one of a maximal
    uniformly J-negative subspace into a J-frame."""
    Tp = Fp.T if isinstance(Fp, VectorFamily) else la.as_complex_matrix(Fp)
    Tm = Fm.T if isinstance(Fm, VectorFamily) else la.as_complex_matrix(Fm)
    for T, sign, name in ((Tp, 1, "positive"), (Tm, -1, "negative")):
        M = _span(space, T)
        c = classify_subspace(space, M, sign)
        if not (c.maximal and is_uniformly_definite(space, M, sign)):
            raise GeometryError("span of the %s part is %s (dim %d), not maximal uniformly J-%s"
                                % (name, c.kind, c.dim, name))
    labels = ()
    if isinstance(Fp, VectorFamily) and isinstance(Fm, VectorFamily):
        labels = Fp.labels + Fm.labels
        if len(set(labels)) != len(labels):
            labels = ()
    return VectorFamily(space, np.hstack([Tp, Tm]), labels)


def index_signature(space, S):
    """``(ind+, ind-)``: numbers of positive and negative eigenvalues of ``J S``."""
    S = la.as_complex_matrix(S)
    JS = space.J @ S
    scale = max(1.0, la.spectral_norm(JS))
    if np.linalg.norm(JS - la.adj(JS)) > space.tol.check * scale:
        raise OperatorError("S is not J-selfadjoint")
    pos, neg, _ = la.inertia(JS, space.tol.rank * scale)
    return pos, neg


def frame_inequality_constants(space, vectors, sign=1):
    """Test ``A [f,f] <= sum |[f, f_i]|^2 <= B [f,f]`` on the span of ``vectors`` for
    constants of the given sign.

    The inequalities can hold on a degenerate span (the degenerate part is
    invisible to both sides), which is why ``degenerate_dim`` is reported.
    """
    T = la.as_complex_matrix(vectors)
    M = _span(space, T)
    if M.dim == 0:
        return InequalityResult(True, None, None, 0, "zero")
    c = classify_subspace(space, M)
    if c.kind == "indefinite" or c.sign == -sign:
        return InequalityResult(False, None, None, c.degenerate_part_dim, c.kind)
    H = sign * M.gram
    w, V = scipy.linalg.eigh(H)
    keep = w > space.tol.rank
    if not keep.any():
        return InequalityResult(True, None, None, c.degenerate_part_dim, c.kind)
    Vr = V[:, keep]
    W = la.adj(Vr) @ M.gram @ (la.adj(M.B) @ T)
    X = (W / np.sqrt(w[keep])[:, None])
    ev = scipy.linalg.eigvalsh(la.hermitian_part(X @ la.adj(X)))
    A, B = float(ev[0]), float(ev[-1])
    return InequalityResult(A > space.tol.rank, A, B, c.degenerate_part_dim, c.kind)


def j_frame_via_inequalities(space, F):
    """J-frame test through nondegeneracy plus one-sided frame inequalities.

    Uses ``I+- = {i : +-[f_i, f_i] >= 0}`` so neutral vectors land on both sides.
    """
    F = _as_family(space, F)
    if not is_frame(F):
        raise NotAFrameError("the family is not a frame for the ambient space")
    T = F.T
    q = np.real(np.einsum("ij,ik,kj->j", T.conj(), space.J, T))
    slack = space.tol.neutral * np.einsum("ij,ij->j", T.conj(), T).real
    for sign in (1, -1):
        side = T[:, sign * q >= -slack]
        res = frame_inequality_constants(space, side, sign)
        if not res.satisfiable or res.degenerate_dim:
            return False
    return True
