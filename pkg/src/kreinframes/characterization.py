"""Operator-level characterizations of J-frames.

Three questions, each answered for a *given* witness (no search over index
subsets or projections):

* is a surjective ``T`` the synthesis operator of a J-frame for a given ``I+``?
* does a unitary change of coefficients turn ``T`` into one (given a split
  ``T = T1 + T2`` or a projection ``Q``)?
* is an invertible J-selfadjoint ``S`` a J-frame operator (given ``Q``, a maximal
  uniformly J-positive subspace, or a split ``S = S1 - S2``)?  The last form is
  constructive and returns a J-frame with operator ``S``.

Here ``Q`` always refers to the class of projections whose range is uniformly
J-positive and whose kernel is uniformly J-negative.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from . import _linalg as la
from .errors import (GeometryError, NotSurjectiveError, OperatorError, PreconditionError)
from .hilbert import VectorFamily
from .jframes import index_signature, is_j_frame
from .krein import (SubspaceBasis, classify_subspace, friedrichs_angle, intersection,
                    is_uniformly_definite, oblique_projection, orthogonal_complement)
from .sampling import rng_from

__all__ = [
    "OperatorCertificate", "projection_in_Q", "kernel_splits", "projection_split_test",
    "is_jframe_synthesis", "reordering_projection_test", "split_from_projection",
    "unitary_reordering_test", "is_j_frame_operator", "positive_image_test",
    "construct_j_frame_from_operator", "search_j_frame_operator",
]


@dataclass
class OperatorCertificate:
    """Verdict plus the witness it was checked against and named residuals."""

    verdict: bool
    witness_Q: Optional[np.ndarray] = None
    witness_split: Optional[tuple] = None
    witness_U: Optional[np.ndarray] = None
    witness_partition: Optional[tuple] = None
    diagnostics: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.verdict)


def _scale(A):
    return max(1.0, la.spectral_norm(A))


def _require_surjective(T, rtol):
    if la.rank(T, rtol) != T.shape[0]:
        raise NotSurjectiveError("T has rank %d < %d" % (la.rank(T, rtol), T.shape[0]))


def projection_in_Q(space, Q):
    """Whether ``Q`` is idempotent with uniformly J-positive range and uniformly
    J-negative kernel.  Returns ``(verdict, diagnostics)``."""
    Q = la.as_complex_matrix(Q)
    tol = space.tol
    idem = float(np.linalg.norm(Q @ Q - Q, 2))
    diag = {"idempotency": idem}
    if idem > tol.check * _scale(Q) ** 2:
        return False, diag
    R = SubspaceBasis(space, la.range_basis(Q, tol.rank))
    N = SubspaceBasis(space, la.null_space(Q, tol.rank))
    cr, cn = classify_subspace(space, R, +1), classify_subspace(space, N, -1)
    diag["alpha_range"] = cr.definiteness_bound if cr.sign >= 0 and cr.definiteness_bound is not None else -1.0
    diag["alpha_kernel"] = cn.definiteness_bound if cn.sign <= 0 and cn.definiteness_bound is not None else -1.0
    ok = is_uniformly_definite(space, R, +1) and is_uniformly_definite(space, N, -1)
    return ok, diag


def kernel_splits(T, S, rtol=1e-10):
    """``N(T) = (S cap N(T)) (+) (S^perp cap N(T))``, decided by dimension count."""
    N = SubspaceBasis(None, la.null_space(T, rtol))
    a = intersection(S, N, rtol).dim
    b = intersection(orthogonal_complement(S, rtol), N, rtol).dim
    return a + b == N.dim


def _oblique_coeff_projection(T, S, rtol):
    return T @ S.projector @ la.pinv(T, rtol)


def projection_split_test(T, S, rtol=1e-10, tol=1e-9):
    """Whether ``T P_S T^+`` is idempotent, for surjective ``T`` and a subspace ``S``
    of the coefficient space."""
    T = la.as_complex_matrix(T)
    _require_surjective(T, rtol)
    if S.ambient_dim != T.shape[1]:
        raise PreconditionError("S lives in dimension %d, T has %d columns" % (S.ambient_dim, T.shape[1]))
    row = SubspaceBasis(None, la.range_basis(la.adj(T), rtol))
    if friedrichs_angle(S, row, rtol) >= 1 - tol:
        raise PreconditionError("c(S, N(T)^perp) is not below 1")
    E = _oblique_coeff_projection(T, S, rtol)
    return float(np.linalg.norm(E @ E - E, 2)) <= tol * _scale(E) ** 2


def is_jframe_synthesis(space, T, I_plus):
    """Synthesis-operator test for a given index set ``I+``:
    ``c(N(T)^perp, l2(I+)) < 1`` and ``T P+ T^+`` in Q."""
    T = la.as_complex_matrix(T)
    tol = space.tol
    _require_surjective(T, tol.rank)
    m = T.shape[1]
    I_plus = tuple(sorted(int(i) for i in I_plus))
    E = np.zeros((m, 0), dtype=complex) if not I_plus else np.eye(m, dtype=complex)[:, list(I_plus)]
    S = SubspaceBasis(None, E)
    row = SubspaceBasis(None, la.range_basis(la.adj(T), tol.rank))
    c = friedrichs_angle(row, S, tol.rank)
    Q = _oblique_coeff_projection(T, S, tol.rank)
    ok, diag = projection_in_Q(space, Q)
    diag["friedrichs_cosine"] = c
    verdict = bool(c < 1 - tol.check and ok)
    return OperatorCertificate(verdict, witness_Q=Q if verdict else None,
                               witness_partition=I_plus, diagnostics=diag)


def split_from_projection(T, Q):
    """``(QT, (I - Q)T)``."""
    T = la.as_complex_matrix(T)
    return Q @ T, T - Q @ T


def reordering_projection_test(space, T, Q):
    """``Q`` in Q and ``Q T T* (I - Q)* = 0``."""
    T = la.as_complex_matrix(T)
    _require_surjective(T, space.tol.rank)
    ok, diag = projection_in_Q(space, Q)
    n = space.dim
    res = float(np.linalg.norm(Q @ T @ la.adj(T) @ la.adj(np.eye(n) - Q), 2))
    diag["QTT*(I-Q)*"] = res
    verdict = ok and res <= space.tol.check * _scale(T) ** 2 * _scale(Q) ** 2
    return OperatorCertificate(bool(verdict), witness_Q=Q if verdict else None, diagnostics=diag)


def _mixing_unitary(k):
    """The ``k x k`` unitary DFT matrix; none of its entries vanish, so mixing a block
    with kernel vectors leaves every new column with a nonzero part in the block."""
    if k == 0:
        return np.zeros((0, 0), dtype=complex)
    j = np.arange(k)
    return np.exp(-2j * np.pi * np.outer(j, j) / k) / np.sqrt(k)


def _reordering_unitary(T1, T2, rtol):
    """Unitary whose columns are an orthonormal basis of ``N(T1)^perp`` followed by one of
    ``N(T1)``, arranged so that no column lands in ``N(T)``.

    Kernel directions of ``T`` would produce zero (hence neutral) vectors; they are
    mixed into the block of the side that has room for them.
    """
    m = T1.shape[1]
    A = la.range_basis(la.adj(T1), rtol)          # N(T1)^perp
    C = la.range_basis(la.adj(T2), rtol)          # N(T2)^perp, inside N(T1)
    K = la.null_space(np.vstack([T1, T2]), rtol)  # N(T1) cap N(T2)
    if K.shape[1]:
        if A.shape[1]:
            A = np.hstack([A, K]) @ _mixing_unitary(A.shape[1] + K.shape[1])
        elif C.shape[1]:
            C = np.hstack([C, K]) @ _mixing_unitary(C.shape[1] + K.shape[1])
    U = np.hstack([A, C])
    if U.shape != (m, m):
        raise PreconditionError("split does not decompose the coefficient space")
    return U, A.shape[1]


def _coordinate_split(T, T1, tol):
    """True when ``T1`` keeps some columns of ``T`` and zeroes the rest (so U = I)."""
    keep = np.linalg.norm(T1 - T, axis=0) <= tol
    drop = np.linalg.norm(T1, axis=0) <= tol
    return bool(np.all(keep | drop) and np.all(np.linalg.norm(T, axis=0) > tol))


def unitary_reordering_test(space, T, split):
    """Check a split ``T = T1 + T2`` with ``R(T1)`` uniformly J-positive, ``R(T2)``
    uniformly J-negative and ``T1 T2* = T2 T1* = 0``; when it holds, build the
    unitary ``U`` making ``TU`` a J-frame synthesis matrix."""
    T = la.as_complex_matrix(T)
    tol = space.tol
    _require_surjective(T, tol.rank)
    T1, T2 = (la.as_complex_matrix(X) for X in split)
    scale = _scale(T)
    if T1.shape != T.shape or T2.shape != T.shape or np.linalg.norm(T1 + T2 - T, 2) > tol.check * scale:
        raise PreconditionError("T1 + T2 does not equal T")
    R1 = SubspaceBasis(space, la.range_basis(T1, tol.rank))
    R2 = SubspaceBasis(space, la.range_basis(T2, tol.rank))
    diag = {
        "T1T2*": float(np.linalg.norm(T1 @ la.adj(T2), 2)),
        "T2T1*": float(np.linalg.norm(T2 @ la.adj(T1), 2)),
    }
    cert = OperatorCertificate(False, witness_split=(T1, T2), diagnostics=diag)
    if not is_uniformly_definite(space, R1, +1):
        cert.notes.append("R(T1) is %s" % classify_subspace(space, R1).kind)
        return cert
    if not is_uniformly_definite(space, R2, -1):
        cert.notes.append("R(T2) is %s" % classify_subspace(space, R2).kind)
        return cert
    if max(diag.values()) > tol.check * scale ** 2:
        cert.notes.append("T1 T2* is not zero")
        return cert

    if _coordinate_split(T, T1, tol.check * scale):
        U = np.eye(T.shape[1], dtype=complex)
    else:
        U, _ = _reordering_unitary(T1, T2, tol.rank)
    V = T @ U
    diag["unitarity"] = float(np.linalg.norm(la.adj(U) @ U - np.eye(U.shape[0]), 2))
    try:
        report = is_j_frame(space, V)
    except Exception as exc:  # neutral columns etc.
        cert.notes.append("TU is not a J-frame: %s" % exc)
        return cert
    cert.verdict = report.is_j_frame
    cert.witness_U = U
    cert.witness_partition = report.partition.I_plus
    if not report.is_j_frame:
        cert.notes.append("TU is not a J-frame: " + report.reason)
    return cert


def _require_invertible_selfadjoint(space, S):
    S = la.as_complex_matrix(S)
    if S.shape != (space.dim, space.dim):
        raise OperatorError("S must be %d x %d" % (space.dim, space.dim))
    JS = space.J @ S
    if np.linalg.norm(JS - la.adj(JS), 2) > space.tol.check * _scale(S):
        raise OperatorError("S is not J-selfadjoint")
    if la.rank(S, space.tol.rank) < space.dim:
        raise OperatorError("S is not invertible")
    return S


def _j_positivity(space, A, scale):
    """Smallest eigenvalue of the Hermitian part of ``JA`` and its non-Hermitian residual."""
    JA = space.J @ A
    return la.min_eigenvalue(JA) / scale, float(np.linalg.norm(JA - la.adj(JA), 2)) / scale


def is_j_frame_operator(space, S, Q):
    """Check a candidate ``Q``: ``Q`` in Q, ``QS`` J-positive, ``(I - Q)S`` J-negative."""
    S = _require_invertible_selfadjoint(space, S)
    Q = la.as_complex_matrix(Q)
    tol = space.tol
    ok, diag = projection_in_Q(space, Q)
    scale = la.spectral_norm(space.J @ S)
    I = np.eye(space.dim)
    mp, hp = _j_positivity(space, Q @ S, scale)
    mn, hn = _j_positivity(space, -(I - Q) @ S, scale)
    diag.update({"min_eig J(QS)": mp, "min_eig -J(I-Q)S": mn,
                 "herm_residual J(QS)": hp, "herm_residual J(I-Q)S": hn})
    verdict = (ok and mp >= -tol.psd and mn >= -tol.psd
               and hp <= tol.check and hn <= tol.check)
    return OperatorCertificate(bool(verdict), witness_Q=Q, diagnostics=diag)


def _image(space, S, M):
    return SubspaceBasis(space, la.range_basis(S @ M.B, space.tol.rank))


def positive_image_test(space, S, T_subspace):
    """Check a maximal uniformly J-positive ``T``: ``S(T)`` maximal uniformly J-positive,
    ``[Sf, f] >= 0`` on ``T`` and ``[Sg, g] <= 0`` on ``S(T)^[perp]``; when all hold the
    projection onto ``S(T)`` along ``T^[perp]`` is checked with
    :func:`is_j_frame_operator`."""
    from .krein import j_orthogonal_companion

    S = _require_invertible_selfadjoint(space, S)
    T = T_subspace
    c = classify_subspace(space, T, +1)
    if not (c.maximal and is_uniformly_definite(space, T, +1)):
        raise GeometryError("T is %s (dim %d), not maximal uniformly J-positive" % (c.kind, c.dim))
    tol = space.tol
    scale = la.spectral_norm(space.J @ S)
    ST = _image(space, S, T)
    cst = classify_subspace(space, ST, +1)
    cond1 = bool(cst.maximal and is_uniformly_definite(space, ST, +1))
    cond2 = la.min_eigenvalue(la.adj(T.B) @ space.J @ S @ T.B) / scale >= -tol.psd
    Wp = j_orthogonal_companion(space, ST)
    cond3 = la.max_eigenvalue(la.adj(Wp.B) @ space.J @ S @ Wp.B) / scale <= tol.psd
    cert = OperatorCertificate(bool(cond1 and cond2 and cond3),
                               diagnostics={"S(T) maximal uniformly positive": cond1,
                                            "[Sf,f]>=0 on T": bool(cond2),
                                            "[Sg,g]<=0 on S(T)^[perp]": bool(cond3)})
    if not cond1:
        cert.notes.append("S(T) is %s" % cst.kind)
        return cert
    Q = oblique_projection(space, ST, j_orthogonal_companion(space, T))
    delegated = is_j_frame_operator(space, S, Q)
    cert.witness_Q = Q
    cert.diagnostics["delegated_verdict"] = delegated.verdict
    cert.diagnostics.update(delegated.diagnostics)
    return cert


def construct_j_frame_from_operator(space, S1, S2, extra=0, rng=None):
    """Build a J-frame whose J-frame operator is ``S1 - S2``.

    ``S1``/``S2`` must be J-positive with uniformly J-positive/J-negative ranges
    ``K1``/``K2``.  On each ``K_j`` the positive operator ``A_j = S_j J`` is
    factored as ``T_j T_j*`` with ``T_j = B_j A_j^{1/2} W_j``, where ``B_j`` is an
    orthonormal basis of ``K_j`` and ``W_j`` a co-isometry adding ``extra`` redundant
    vectors per side (``W_j = I`` when ``extra == 0``).
    """
    n = space.dim
    tol = space.tol
    S1, S2 = la.as_complex_matrix(S1), la.as_complex_matrix(S2)
    parts = []
    for Sj, sign, name in ((S1, 1, "S1"), (S2, -1, "S2")):
        JS = space.J @ Sj
        sc = _scale(JS)
        if np.linalg.norm(JS - la.adj(JS), 2) > tol.check * sc or la.min_eigenvalue(JS) < -tol.psd * sc:
            raise OperatorError("%s is not J-positive" % name)
        K = SubspaceBasis(space, la.range_basis(Sj, tol.rank))
        if not is_uniformly_definite(space, K, sign):
            raise GeometryError("R(%s) is %s, not uniformly J-%s"
                                % (name, classify_subspace(space, K).kind, "positive" if sign > 0 else "negative"))
        A = la.hermitian_part(la.adj(K.B) @ Sj @ space.J @ K.B)
        if K.dim and la.min_eigenvalue(A) <= tol.rank * _scale(A):
            raise OperatorError("%s J is not positive definite on its range" % name)
        Tj = K.B @ la.psd_sqrt(A)
        if extra and K.dim:
            rng = rng_from(rng)
            W = la.adj(np.linalg.qr(la.adj(rng.standard_normal((K.dim, K.dim + extra))
                                           + 1j * rng.standard_normal((K.dim, K.dim + extra))))[0])
            Tj = Tj @ W
        parts.append(Tj)
    if la.rank(S1 - S2, tol.rank) < n:
        raise OperatorError("S1 - S2 is not invertible")
    labels = tuple("+%d" % (i + 1) for i in range(parts[0].shape[1])) + \
        tuple("-%d" % (i + 1) for i in range(parts[1].shape[1]))
    return VectorFamily(space, np.hstack(parts), labels)


def _positive_type_invariant_subspace(space, S):
    """Span of eigenvectors of ``S`` with real eigenvalues and J-positive type, when
    there are exactly ``dim H+`` of them; ``None`` otherwise."""
    w, V = scipy.linalg.eig(S)
    real = np.abs(w.imag) <= space.tol.check * _scale(S)
    vecs = [V[:, i] for i in np.flatnonzero(real)
            if np.real(np.vdot(V[:, i], space.J @ V[:, i])) > space.tol.rank]
    p = space.signature[0]
    if len(vecs) < p or p == 0:
        return None
    M = SubspaceBasis.span(np.column_stack(vecs), space)
    c = classify_subspace(space, M, +1)
    return M if c.maximal and c.uniformly_definite else None


def search_j_frame_operator(space, S):
    """Try the witnesses that come for free: ``(I + J)/2``, ``T = H+`` and the
    J-positive-type invariant subspace of ``S``.  Returns the first passing
    certificate, or a failing one listing what was tried."""
    S = _require_invertible_selfadjoint(space, S)
    ind = index_signature(space, S)
    tried = []
    cert = is_j_frame_operator(space, S, space.P_plus)
    tried.append("Q=(I+J)/2")
    if cert.verdict:
        cert.notes.append("witness Q=(I+J)/2")
        return cert
    candidates = [("T=H+", SubspaceBasis(space, space.decomposition[0]))]
    inv = _positive_type_invariant_subspace(space, S)
    if inv is not None:
        candidates.append(("T=positive-type eigenspace of S", inv))
    for name, T in candidates:
        if T.dim == 0 and space.signature[0] > 0:
            continue
        tried.append(name)
        c = positive_image_test(space, S, T)
        if c.verdict:
            c.notes.append("witness " + name)
            return c
    out = OperatorCertificate(False, diagnostics={"ind": ind})
    msg = "no admissible Q found among tried witnesses (%s)" % ", ".join(tried)
    if ind == space.signature:
        msg = "ind=(%d,%d) but " % ind + msg
    out.notes.append(msg)
    return out
