"""Command-line front end.

    kreinframes analyze problem.json
    kreinframes check-operator problem.json [--synthesize --out family.json]
    kreinframes angle problem.json [--oracle 10000]
    kreinframes synthesize problem.json --out family.json

Exit codes: 0 when the verdict is positive, 2 when it is negative (not a J-frame,
neutral vector, rejected operator), 1 on input or usage errors.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import _linalg as la
from .characterization import (OperatorCertificate, construct_j_frame_from_operator,
                               is_j_frame_operator, positive_image_test,
                               search_j_frame_operator)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import GeometryError, KreinError, NeutralVectorError, OperatorError
from .io import ProblemFormatError, dump_json, encode_matrix, family_to_dict, load_problem
from .jframes import index_signature, indefinite_reconstruct, is_j_frame
from .krein import SubspaceBasis
from .neutral import cone_correlation, cone_correlation_oracle

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2
DIGITS = 9


def fmt(x):
    """9 significant digits; complex values as ``a+bj``."""
    if x is None:
        return "-"
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(fmt(v) for v in x) + ")"
    z = complex(x) + 0.0    # drops the sign of -0
    if z.imag == 0:
        return "%.*g" % (DIGITS, z.real)
    return "%.*g%+.*gj" % (DIGITS, z.real, DIGITS, z.imag)


def _round(x):
    return float("%.*g" % (DIGITS, x)) if math.isfinite(x) else str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return encode_matrix(obj, DIGITS)
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    return obj


class Printer:
    def __init__(self, quiet=False, stream=None):
        self.quiet = quiet
        self.stream = stream or sys.stdout

    def line(self, text=""):
        if not self.quiet:
            print(text, file=self.stream)

    def kv(self, key, value):
        self.line("%s: %s" % (key, value if isinstance(value, str) else fmt(value)))

    def matrix(self, name, A):
        if self.quiet or A is None:
            return
        self.line("%s:" % name)
        A = np.array(A, dtype=complex)
        cut = 1e-14 * max(1.0, float(np.abs(A).max()))
        A.real[np.abs(A.real) < cut] = 0
        A.imag[np.abs(A.imag) < cut] = 0
        for row in A:
            self.line("  [" + ", ".join(fmt(z) for z in row) + "]")


def parse_tolerances(items):
    """``--tol`` values: ``key=value`` pairs or a bare float applied to every field."""
    tol = DEFAULT_TOLERANCES
    for item in items or ():
        if "=" in item:
            key, val = item.split("=", 1)
            if key not in Tolerances.__dataclass_fields__:
                raise ValueError("unknown tolerance %r (known: %s)"
                                 % (key, ", ".join(Tolerances.__dataclass_fields__)))
            tol = tol.updated(**{key: float(val)})
        else:
            v = float(item)
            tol = Tolerances(**{k: v for k in Tolerances.__dataclass_fields__})
    return tol


def _side(cls, half):
    return {
        "kind": cls.kind, "dim": cls.dim, "half_dim": half,
        "alpha": cls.definiteness_bound, "uniformly_definite": cls.uniformly_definite,
        "maximal": cls.maximal, "degenerate_dim": cls.degenerate_part_dim,
    }


def cmd_analyze(prob, args, out):
    space, F = prob.space, prob.family
    if F is None:
        raise ProblemFormatError("analyze needs a 'family'")
    try:
        rep = is_j_frame(space, F)
    except NeutralVectorError as exc:
        out.kv("verdict", "not a J-frame")
        out.kv("reason", str(exc))
        return EXIT_NEGATIVE, {"is_j_frame": False, "reason": str(exc),
                               "neutral_indices": list(exc.indices)}
    p, q = space.signature
    part = rep.partition
    data = {
        "signature": [p, q],
        "is_frame": rep.is_frame,
        "is_j_frame": rep.is_j_frame,
        "reason": rep.reason,
        "I_plus": list(part.I_plus), "I_minus": list(part.I_minus),
        "plus": _side(rep.class_plus, p),
        "minus": _side(rep.class_minus, q),
        "notes": [],
    }
    if q == 0 and not part.I_minus:
        data["notes"].append("no negative side: space is Hilbert")
    if p == 0 and not part.I_plus:
        data["notes"].append("no positive side: space is anti-Hilbert")
    for key, M in (("theta_plus", rep.M_plus), ("theta_minus", rep.M_minus)):
        data[key] = cone_correlation(space, M).theta if M.dim else None
    if rep.is_j_frame:
        data["bounds"] = dict(rep.bounds._asdict())
        data["crude_bounds"] = dict(rep.crude_bounds._asdict())
        data["ind"] = list(index_signature(space, rep.S))
        rng = np.random.default_rng(args.seed)
        f = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
        res = [float(np.linalg.norm(indefinite_reconstruct(rep, f, swap=s).rebuilt - f) / np.linalg.norm(f))
               for s in (False, True)]
        data["reconstruction_residual"] = max(res)
        data.update(S=rep.S, S_plus=rep.S_plus, S_minus=rep.S_minus, Q=rep.Q)

    out.kv("signature", "(%d, %d)" % (p, q))
    out.kv("vectors", F.size)
    out.kv("frame", rep.is_frame)
    out.kv("I_plus", str([F.labels[i] for i in part.I_plus]))
    out.kv("I_minus", str([F.labels[i] for i in part.I_minus]))
    for name in ("plus", "minus"):
        s = data[name]
        out.kv("M_%s" % name, "%s, dim %d of %d, alpha %s, maximal %s"
               % (s["kind"], s["dim"], s["half_dim"], fmt(s["alpha"]), fmt(s["maximal"])))
    out.kv("theta(M_plus, cone)", fmt(data["theta_plus"]))
    out.kv("theta(M_minus, cone)", fmt(data["theta_minus"]))
    for note in data["notes"]:
        out.kv("note", note)
    out.kv("verdict", "J-frame" if rep.is_j_frame else "not a J-frame")
    out.kv("reason", rep.reason)
    if rep.is_j_frame:
        out.kv("bounds (B-, A-, A+, B+)", "(" + ", ".join(fmt(x) for x in rep.bounds) + ")")
        out.kv("crude bounds", "(" + ", ".join(fmt(x) for x in rep.crude_bounds) + ")")
        out.kv("ind(S)", "(%d, %d)" % tuple(data["ind"]))
        out.kv("reconstruction residual", data["reconstruction_residual"])
        out.matrix("S", rep.S)
        out.matrix("S_plus", rep.S_plus)
        out.matrix("S_minus", rep.S_minus)
        out.matrix("Q", rep.Q)
    return (EXIT_OK if rep.is_j_frame else EXIT_NEGATIVE), data


def _cert_dict(name, cert):
    return {"witness": name, "verdict": cert.verdict, "notes": list(cert.notes),
            "diagnostics": cert.diagnostics, "Q": cert.witness_Q}


def _synthesize(prob, args, out, S):
    w = prob.witnesses
    if "S1" not in w or "S2" not in w:
        raise ProblemFormatError("--synthesize needs witnesses S1 and S2")
    S1, S2 = w["S1"], w["S2"]
    if S is not None and np.linalg.norm(S1 - S2 - S, 2) > prob.space.tol.check * max(1.0, la.spectral_norm(S)):
        raise OperatorError("S1 - S2 does not equal the operator S")
    F = construct_j_frame_from_operator(prob.space, S1, S2, extra=args.extra,
                                        rng=np.random.default_rng(args.seed))
    return F


def cmd_check_operator(prob, args, out):
    space, S = prob.space, prob.operator
    w = prob.witnesses
    if S is None:
        if "S1" in w and "S2" in w:
            S = w["S1"] - w["S2"]
        else:
            raise ProblemFormatError("check-operator needs an 'operator' (or witnesses S1, S2)")
    JS = space.J @ S
    scale = max(1.0, la.spectral_norm(JS))
    selfadj = bool(np.linalg.norm(JS - la.adj(JS), 2) <= space.tol.check * scale)
    invertible = la.rank(S, space.tol.rank) == space.dim
    data = {"J_selfadjoint": selfadj, "invertible": invertible, "certificates": []}
    out.kv("J-selfadjoint", selfadj)
    out.kv("invertible", invertible)
    if not (selfadj and invertible):
        out.kv("verdict", "not a J-frame operator")
        data["verdict"] = False
        return EXIT_NEGATIVE, data
    ind = index_signature(space, S)
    data["ind"] = list(ind)
    data["signature"] = list(space.signature)
    out.kv("ind(S)", "(%d, %d)" % ind)
    out.kv("signature", "(%d, %d)" % space.signature)

    certs = []
    for i, Q in enumerate(w.get("Q", [])):
        certs.append(("Q[%d]" % i, is_j_frame_operator(space, S, Q)))
    for i, M in enumerate(w.get("T", [])):
        name = "T[%d]" % i
        try:
            certs.append((name, positive_image_test(space, S, SubspaceBasis.span(M, space))))
        except GeometryError as exc:
            certs.append((name, OperatorCertificate(False, notes=[str(exc)])))
    if not certs:
        certs.append(("search", search_j_frame_operator(space, S)))
    verdict = any(c.verdict for _, c in certs)
    for name, c in certs:
        out.kv("certificate %s" % name, "pass" if c.verdict else "fail")
        for k, v in c.diagnostics.items():
            out.kv("  %s" % k, v)
        for note in c.notes:
            out.kv("  note", note)
        data["certificates"].append(_cert_dict(name, c))
    data["verdict"] = verdict

    if args.synthesize:
        F = _synthesize(prob, args, out, S)
        rep = is_j_frame(space, F)
        data["synthesized"] = {"T": F.T, "is_j_frame": rep.is_j_frame, "S": rep.S}
        out.kv("synthesized vectors", F.size)
        out.kv("synthesized J-frame", rep.is_j_frame)
        out.matrix("synthesized T", F.T)
        if args.out:
            dump_json(family_to_dict(F), args.out)
            out.kv("wrote", args.out)
        verdict = verdict or rep.is_j_frame
        data["verdict"] = verdict
    out.kv("verdict", "J-frame operator" if verdict else "not certified as a J-frame operator")
    return (EXIT_OK if verdict else EXIT_NEGATIVE), data


def cmd_synthesize(prob, args, out):
    args.synthesize = True
    return cmd_check_operator(prob, args, out)


def cmd_angle(prob, args, out):
    space, M = prob.space, prob.subspace
    if M is None:
        raise ProblemFormatError("angle needs a 'subspace'")
    rep = cone_correlation(space, M)
    data = dict(rep.__dict__)
    for key in ("c0", "theta", "alpha", "K_norm", "aperture", "phi"):
        out.kv(key, getattr(rep, key))
    out.kv("semidefinite", rep.semidefinite)
    if rep.note:
        out.kv("note", rep.note)
    if args.oracle:
        est = cone_correlation_oracle(space, M, args.oracle, seed=args.seed)
        data["oracle_c0"] = est
        data["oracle_samples"] = args.oracle
        out.kv("oracle c0 (%d samples)" % args.oracle, est)
    return EXIT_OK, data


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", action="append", metavar="VALUE",
                        help="tolerance override: key=value (rank, neutral, angle, psd, subspace, "
                             "check) or a single float for all; may be repeated")
    common.add_argument("--seed", type=int, default=0, help="seed for probe vectors and sampling")
    common.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    common.add_argument("--quiet", action="store_true", help="suppress the text report")

    ap = argparse.ArgumentParser(prog="kreinframes", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="J-frame analysis of a family")
    p.add_argument("input")
    p.set_defaults(func=cmd_analyze)

    for name, func, helptext in (("check-operator", cmd_check_operator, "is S a J-frame operator?"),
                                 ("synthesize", cmd_synthesize, "build a J-frame from S1, S2")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        if name == "check-operator":
            p.add_argument("--synthesize", action="store_true",
                           help="construct a J-frame from witnesses S1, S2")
        p.add_argument("--out", metavar="PATH", help="write the synthesized family here")
        p.add_argument("--extra", type=int, default=0,
                       help="redundant vectors added per side when synthesizing")
        p.set_defaults(func=func, synthesize=False)

    p = sub.add_parser("angle", parents=[common], help="minimal angle to the neutral cone")
    p.add_argument("input")
    p.add_argument("--oracle", type=int, metavar="N", help="also estimate c0 from N samples")
    p.set_defaults(func=cmd_angle)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = Printer(args.quiet)
    try:
        tol = parse_tolerances(args.tol)
        prob = load_problem(args.input, tol)
        code, data = args.func(prob, args, out)
    except (OSError, ProblemFormatError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    except NeutralVectorError as exc:
        print("not a J-frame: %s" % exc, file=sys.stderr)
        code, data = EXIT_NEGATIVE, {"verdict": False, "reason": str(exc),
                                     "neutral_indices": list(exc.indices)}
    except (OperatorError, GeometryError) as exc:
        print("rejected: %s" % exc, file=sys.stderr)
        code, data = EXIT_NEGATIVE, {"verdict": False, "reason": str(exc)}
    except KreinError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(_jsonable(data), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
