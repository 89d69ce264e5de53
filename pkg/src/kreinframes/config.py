"""Numerical tolerances.

A :class:`Tolerances` value is carried by every :class:`~kreinframes.krein.KreinSpace`
and passed explicitly to the few functions that do not take a space.  There is no
module-level mutable state.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    #: rank/kernel threshold, applied as ``rank * max(1, sigma_max)``
    rank: float = 1e-10
    #: a column is neutral when ``|[f, f]| <= neutral * ||f||**2``
    neutral: float = 1e-10
    #: minimal cone angle (radians) accepted as "strictly positive"
    angle: float = 1e-8
    #: eigenvalue floor for semidefiniteness, relative to the operator norm
    psd: float = 1e-9
    #: projector distance under which two subspaces are considered equal
    subspace: float = 1e-8
    #: residual allowed in structural checks (Hermitian, involution, idempotent)
    check: float = 1e-9

    def updated(self, **changes):
        return replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()
