"""Classical frames for the Hilbert space underlying a Krein space."""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg

from . import _linalg as la
from .errors import DimensionError, NotAFrameError

__all__ = ["VectorFamily", "FrameBounds", "frame_operator", "frame_bounds",
           "canonical_dual", "is_frame"]


@dataclass(frozen=True, eq=False)
class VectorFamily:
    """A finite family ``{f_i}`` stored as the synthesis matrix ``T`` (column i is f_i).

    Labels default to ``1..m``; all index arguments elsewhere in the package are
    0-based column positions.
    """

    space: object
    T: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        T = la.as_complex_matrix(self.T)
        if T.shape[1] == 0:
            raise DimensionError("a family needs at least one vector")
        if self.space is not None and T.shape[0] != self.space.dim:
            raise DimensionError("vectors have length %d, space has dimension %d" % (T.shape[0], self.space.dim))
        T.setflags(write=False)
        object.__setattr__(self, "T", T)
        labels = tuple(self.labels) if len(self.labels) else tuple(range(1, T.shape[1] + 1))
        if len(labels) != T.shape[1]:
            raise DimensionError("%d labels for %d vectors" % (len(labels), T.shape[1]))
        object.__setattr__(self, "labels", labels)

    @property
    def size(self):
        return self.T.shape[1]

    def __len__(self):
        return self.size

    def __getitem__(self, i):
        return self.T[:, i]

    def subfamily(self, indices):
        indices = list(indices)
        return VectorFamily(self.space, self.T[:, indices], tuple(self.labels[i] for i in indices))


class FrameBounds(NamedTuple):
    A: float
    B: float


def _matrix(F):
    return F.T if isinstance(F, VectorFamily) else la.as_complex_matrix(F)


def _rtol(F):
    space = getattr(F, "space", None)
    return space.tol.rank if space is not None else 1e-10


def frame_operator(F):
    """``S = T T*``, i.e. ``Sf = sum <f, f_i> f_i``."""
    T = _matrix(F)
    return la.hermitian_part(T @ la.adj(T))


def is_frame(F):
    T = _matrix(F)
    return la.rank(T, _rtol(F)) == T.shape[0]


def _require_frame(F):
    if not is_frame(F):
        T = _matrix(F)
        raise NotAFrameError("family spans a %d-dimensional subspace of C^%d"
                             % (la.rank(T, _rtol(F)), T.shape[0]))


def frame_bounds(F):
    """Optimal frame bounds: extreme eigenvalues of the frame operator."""
    _require_frame(F)
    w = scipy.linalg.eigvalsh(frame_operator(F))
    return FrameBounds(float(w[0]), float(w[-1]))


def canonical_dual(F):
    """The canonical dual frame ``{S^-1 f_i}``."""
    _require_frame(F)
    G = np.linalg.solve(frame_operator(F), _matrix(F))
    if isinstance(F, VectorFamily):
        return VectorFamily(F.space, G, F.labels)
    return G
