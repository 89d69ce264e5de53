"""JSON problem files.

Matrices are dense and row-major; each entry is a real number or a two-element
``[re, im]`` array.  A problem file is a JSON object with a ``space`` (either
``{"signature": [p, q]}`` or ``{"dim": n, "J": ...}``) and whichever of
``family``, ``operator``, ``subspace`` and ``witnesses`` the command needs.

``witnesses.Q`` and ``witnesses.T`` are lists of matrices (candidate projections
and spanning sets of candidate subspaces); ``witnesses.S1``/``S2`` are single
matrices and ``witnesses.I_plus`` a list of 0-based column positions.
"""

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import DimensionError
from .hilbert import VectorFamily
from .krein import KreinSpace, SubspaceBasis

__all__ = ["ProblemFile", "decode_matrix", "encode_matrix", "encode_value",
           "load_problem", "parse_problem", "family_to_dict", "dump_json",
           "ProblemFormatError"]


class ProblemFormatError(ValueError):
    """The problem file does not have the expected structure."""


def _decode_entry(x):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ProblemFormatError("complex entries must be [re, im], got %r" % (x,))
        return complex(float(x[0]), float(x[1]))
    return complex(float(x))


def decode_matrix(rows, name="matrix"):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ProblemFormatError("%s must be a non-empty list of rows" % name)
    width = {len(r) for r in rows}
    if len(width) != 1:
        raise ProblemFormatError("%s has rows of different lengths" % name)
    return np.array([[_decode_entry(x) for x in r] for r in rows], dtype=complex)


def encode_value(z, digits=None):
    z = complex(z)
    re, im = z.real, z.imag
    if digits is not None:
        re, im = float("%.*g" % (digits, re)), float("%.*g" % (digits, im))
    return [re, im]


def encode_matrix(A, digits=None):
    A = np.atleast_2d(np.asarray(A))
    return [[encode_value(z, digits) for z in row] for row in A]


@dataclass
class ProblemFile:
    space: KreinSpace
    family: Optional[VectorFamily] = None
    operator: Optional[np.ndarray] = None
    subspace: Optional[SubspaceBasis] = None
    witnesses: dict = field(default_factory=dict)


def _parse_space(obj, tol):
    if not isinstance(obj, dict):
        raise ProblemFormatError("'space' must be an object")
    if "signature" in obj:
        sig = obj["signature"]
        if not (isinstance(sig, list) and len(sig) == 2):
            raise ProblemFormatError("'signature' must be [p, q]")
        return KreinSpace.from_signature(int(sig[0]), int(sig[1]), tol)
    if "J" in obj:
        J = decode_matrix(obj["J"], "J")
        if "dim" in obj and int(obj["dim"]) != J.shape[0]:
            raise DimensionError("'dim' is %s but J is %dx%d" % (obj["dim"], *J.shape))
        return KreinSpace(J, tol)
    raise ProblemFormatError("'space' needs 'signature' or 'J'")


def parse_problem(obj, tol=DEFAULT_TOLERANCES):
    if not isinstance(obj, dict) or "space" not in obj:
        raise ProblemFormatError("problem must be an object with a 'space' field")
    space = _parse_space(obj["space"], tol)
    prob = ProblemFile(space)
    if "family" in obj:
        fam = obj["family"]
        T = decode_matrix(fam["T"] if isinstance(fam, dict) else fam, "family.T")
        labels = tuple(fam.get("labels", ())) if isinstance(fam, dict) else ()
        prob.family = VectorFamily(space, T, labels)
    if "operator" in obj:
        op = obj["operator"]
        prob.operator = decode_matrix(op["S"] if isinstance(op, dict) else op, "operator.S")
    if "subspace" in obj:
        sub = obj["subspace"]
        M = decode_matrix(sub["M"] if isinstance(sub, dict) else sub, "subspace.M")
        if M.shape[0] != space.dim:
            raise DimensionError("subspace vectors have length %d, space has %d" % (M.shape[0], space.dim))
        prob.subspace = SubspaceBasis.span(M, space)
    w = obj.get("witnesses", {})
    out = {}
    for key in ("Q", "T"):
        if key in w:
            if not isinstance(w[key], list):
                raise ProblemFormatError("witnesses.%s must be a list of matrices" % key)
            out[key] = [decode_matrix(m, "witnesses.%s[%d]" % (key, i)) for i, m in enumerate(w[key])]
    for key in ("S1", "S2"):
        if key in w:
            out[key] = decode_matrix(w[key], "witnesses.%s" % key)
    if "I_plus" in w:
        out["I_plus"] = [int(i) for i in w["I_plus"]]
    prob.witnesses = out
    return prob


def load_problem(path, tol=DEFAULT_TOLERANCES):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProblemFormatError("%s: %s" % (path, exc)) from exc
    return parse_problem(obj, tol)


def family_to_dict(F, signature=None):
    """Problem-file dict for a family (the space is written as its ``J``)."""
    sp = F.space
    space = {"signature": list(signature)} if signature is not None else \
        {"dim": sp.dim, "J": encode_matrix(sp.J)}
    return {"space": space,
            "family": {"T": encode_matrix(F.T), "labels": [str(l) for l in F.labels]}}


def dump_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
