"""Command line front end: ``latsum <command> --input FILE``.

Input is one JSON document::

    {"dim": d,
     "polytope": {"vertices": [["p/q", ...], ...]},        # or
     "cone": {"vertex": [...], "generators": [[...], ...]},
     "L": [[...], ...],
     "weight": {"ell": [...], "M": m},
     "options": {"taylor_order": N, "samples": ["p/q", ...]}}

``eval`` and ``check`` also accept a stored ``"quasipolynomial"``.  Output is
JSON on stdout (or ``--output``); exit status is 0 on success, 1 when
``check`` finds a mismatch, 2 for invalid input and 3 for a violated internal
invariant.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional

from . import kernels
from .conedecomp import SimplicialCone, barvinok_decompose, brion_vergne_decompose
from .ehrhart import QuasiPolynomial, ehrhart_qp, qp_eval
from .errors import DimensionError, LatsumError, RankError
from .exactlin import format_rat, rat, rat_vec, vectors_rank
from .genfun import (
    GenFun,
    Polytope,
    intermediate_genfun,
    laurent_along,
    moment_direction,
    polytope_short_formula,
    taylor_along,
)
from .oracle import brute_intermediate_sum

log = logging.getLogger("latsum")

COMMANDS = ("genfun", "ehrhart", "eval", "check", "decompose")


class InputError(LatsumError):
    code = "input"


def _setup_logging():
    level = os.environ.get("LATSUM_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _vec(v):
    return [format_rat(x) for x in v]


class Job:
    """Parsed and validated input document."""

    def __init__(self, data: dict, taylor_order: Optional[int] = None, samples=None):
        if not isinstance(data, dict):
            raise InputError("input must be a JSON object")
        self.data = data
        options = data.get("options", {}) or {}
        self.polytope = None
        self.cone = None
        self.vertex = None
        if "polytope" in data and "cone" in data:
            raise InputError("give either a polytope or a cone, not both")
        if "polytope" in data:
            pdata = data["polytope"]
            facets = None
            if "facets" in pdata:
                facets = [(rat_vec(f["normal"]), rat(f["offset"])) for f in pdata["facets"]]
            self.polytope = Polytope(tuple(rat_vec(v) for v in pdata["vertices"]), facets)
            dim = self.polytope.dim
        elif "cone" in data:
            cdata = data["cone"]
            self.cone = SimplicialCone.from_vectors(cdata["generators"])
            dim = self.cone.dim
            self.vertex = rat_vec(cdata.get("vertex", [0] * dim))
            if len(self.vertex) != dim:
                raise DimensionError("cone vertex has the wrong dimension")
        else:
            dim = data.get("dim")
        if "dim" in data and dim is not None and int(data["dim"]) != dim:
            raise DimensionError("declared dim does not match the geometry")
        self.dim = dim
        self.L_given = "L" in data
        self.L = [rat_vec(v) for v in data.get("L", []) or []]
        if self.L:
            if any(len(v) != dim for v in self.L):
                raise DimensionError("L basis vectors have the wrong dimension")
            if vectors_rank(self.L) != len(self.L):
                raise RankError("L basis vectors are linearly dependent")
        weight = data.get("weight", {}) or {}
        self.M = int(weight.get("M", 0))
        self.ell = rat_vec(weight["ell"]) if "ell" in weight else None
        if self.M < 0:
            raise InputError("M must be non-negative")
        self.taylor_order = taylor_order if taylor_order is not None else options.get("taylor_order")
        if samples is None:
            samples = options.get("samples", [])
        self.samples = [rat(t) for t in samples]
        self.decomposition = options.get("decomposition")
        self.qp = QuasiPolynomial.from_json(data["quasipolynomial"]) if "quasipolynomial" in data else None

    def need_polytope(self):
        if self.polytope is None:
            raise InputError("this command needs a polytope")
        return self.polytope


def cmd_genfun(job: Job, jobs: int = 1) -> dict:
    out = {"command": "genfun"}
    if job.polytope is not None:
        data = polytope_short_formula(job.polytope, job.L)
        out["short_formula"] = [{"vertex": _vec(s), "terms": [t.to_json() for t in terms]}
                                for s, terms in data]
        f = GenFun(job.dim, tuple(t.instantiate(s) for s, terms in data for t in terms))
        regular = True
    elif job.cone is not None:
        symbolic = intermediate_genfun(job.vertex, job.cone, job.L, symbolic=True)
        out["short_formula"] = [{"vertex": _vec(job.vertex), "terms": [t.to_json() for _, t in symbolic]}]
        f = GenFun(job.dim, tuple(t.instantiate(s) for s, t in symbolic))
        regular = False
    else:
        raise InputError("genfun needs a polytope or a cone")
    out["n_terms"] = len(f)
    out["genfun"] = f.to_json()
    out["rendering"] = f.render()
    if job.taylor_order is not None:
        xi0 = moment_direction(f.edges(), job.dim)
        if regular:
            coeffs = taylor_along(f, xi0, int(job.taylor_order))
            out["taylor"] = {"direction": _vec(xi0), "coefficients": _vec(coeffs)}
        else:
            low, coeffs = laurent_along(f, xi0, int(job.taylor_order))
            out["laurent"] = {"direction": _vec(xi0), "lowest_power": low, "coefficients": _vec(coeffs)}
    return out


def _values(qp: QuasiPolynomial, samples) -> list:
    return [{"t": format_rat(t), "value": format_rat(qp_eval(qp, t))} for t in samples]


def cmd_ehrhart(job: Job, jobs: int = 1) -> dict:
    p = job.need_polytope()
    qp = ehrhart_qp(p, job.L, job.ell, job.M, jobs=jobs)
    out = {"command": "ehrhart", "quasipolynomial": qp.to_json(), "rendering": qp.render()}
    if job.samples:
        out["values"] = _values(qp, job.samples)
    return out


def cmd_eval(job: Job, jobs: int = 1) -> dict:
    qp = job.qp
    if qp is None:
        qp = ehrhart_qp(job.need_polytope(), job.L, job.ell, job.M, jobs=jobs)
    return {"command": "eval", "values": _values(qp, job.samples)}


def cmd_check(job: Job, jobs: int = 1) -> dict:
    p = job.need_polytope()
    qp = job.qp if job.qp is not None else ehrhart_qp(p, job.L, job.ell, job.M, jobs=jobs)
    report = []
    for t in job.samples:
        computed = qp_eval(qp, t)
        expected = brute_intermediate_sum(p, job.L, job.ell, job.M, t)
        report.append({"t": format_rat(t), "computed": format_rat(computed),
                       "oracle": format_rat(expected), "equal": computed == expected})
    return {"command": "check", "report": report, "all_equal": all(r["equal"] for r in report)}


def _cone_json(c) -> dict:
    out = {"sign": c.sign, "vertex": _vec(c.vertex), "generators": [list(g) for g in c.cone.generators]}
    if c.basis_subset is not None:
        out["basis_subset"] = list(c.basis_subset)
    return out


def cmd_decompose(job: Job, jobs: int = 1) -> dict:
    if job.cone is None:
        raise InputError("decompose needs a cone")
    method = job.decomposition or ("brion-vergne" if job.L_given else "barvinok")
    if method == "brion-vergne":
        pieces = brion_vergne_decompose(job.cone, job.L)
    elif method == "barvinok":
        pieces = barvinok_decompose(job.cone, job.vertex)
    else:
        raise InputError(f"unknown decomposition {method!r}")
    if method == "brion-vergne":
        pieces = [type(c)(c.sign, job.vertex, c.cone, c.basis_subset) for c in pieces]
    return {"command": "decompose", "method": method, "cones": [_cone_json(c) for c in pieces]}


HANDLERS = {
    "genfun": cmd_genfun,
    "ehrhart": cmd_ehrhart,
    "eval": cmd_eval,
    "check": cmd_check,
    "decompose": cmd_decompose,
}


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latsum", description="Intermediate sums over rational polytopes.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", required=True, help="JSON job file ('-' for stdin)")
    ap.add_argument("--output", help="write JSON here instead of stdout")
    ap.add_argument("--taylor-order", type=int, help="also print Taylor coefficients up to this order")
    ap.add_argument("--samples", help="comma separated values of t, e.g. 1/4,1,5/2")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for per-vertex work")
    return ap


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    _setup_logging()
    log.debug("kernel backend: %s", kernels.BACKEND)
    try:
        try:
            if args.input == "-":
                data = json.load(sys.stdin)
            else:
                with open(args.input) as fh:
                    data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read input: {exc}") from exc
        samples = args.samples.split(",") if args.samples else None
        try:
            job = Job(data, args.taylor_order, samples)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed input: {exc}") from exc
        result = HANDLERS[args.command](job, args.jobs)
    except LatsumError as exc:
        json.dump({"error": exc.code, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return exc.exit_code
    text = json.dumps(result, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "check" and not result["all_equal"]:
        return 1
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
