"""Command-line front end.

Exit codes: 0 when the query is answered member/true/pass, 1 when answered
non-member/false/fail, 2 on usage or parse errors. Reports are canonical JSON
on standard output; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import hashlib
import random
import sys
import time

from . import __version__
from .cells import build_arrangement, classify_boundary, interior_cell_formula
from .errors import DegenerateCoordinate, NotMember, NotOnBoundary, TubeError
from .exact import DiffConfig, PointConfig, diffs_to_points, lorentz_scale, to_diffs
from .extend import (
    FORWARD_CONE,
    DomainDescriptor,
    convex_tube_extension,
    proposal_stream,
    verify_extension,
)
from .io import (
    canonical_dumps,
    complex_to_json,
    config_to_json,
    load_config,
    point_config_to_json,
)
from .oracle import (
    OracleConfig,
    oracle_cut_scan,
    oracle_extended_membership,
    r_independence,
    random_rational,
)
from .permutations import DEFAULT_MAX_M, Permutation, union_membership
from .tube import (
    in_extended_tube,
    in_forward_tube,
    is_jost_point,
    two_point_invariant_image,
    verify_certificate,
    witness_lambda,
)
from .uniformity import classify_order, projection_inclusion_check

COMMANDS = ("membership", "witness", "jost", "classify", "union", "project", "cells", "extend", "oracle-check")


def _as_diffs(cfg) -> DiffConfig:
    return to_diffs(cfg) if isinstance(cfg, PointConfig) else cfg


def _as_points(cfg) -> PointConfig:
    return cfg if isinstance(cfg, PointConfig) else diffs_to_points(cfg)


def _digest(cfg) -> str:
    return "sha256:" + hashlib.sha256(canonical_dumps(config_to_json(cfg)).encode()).hexdigest()


def _load(args):
    if not args.file:
        raise TubeError(f"{args.command} needs --file")
    return load_config(args.file)


# -- handlers return (exit code, result, input config or None) ----------------------------

def cmd_membership(args):
    cfg = _load(args)
    diffs = _as_diffs(cfg)
    ext = in_extended_tube(diffs)
    fwd = in_forward_tube(diffs)
    result = {"extended": ext.to_json(), "forward": fwd.to_json(),
              "certificate_verified": verify_certificate(diffs, ext)}
    if len(diffs) == 1:
        c, flag = two_point_invariant_image(diffs)
        result["invariant"] = {"value": complex_to_json(c), "on_cut": flag}
    return (0 if ext.member else 1), result, cfg


def cmd_witness(args):
    cfg = _load(args)
    diffs = _as_diffs(cfg)
    ext = in_extended_tube(diffs)
    if not ext.member:
        return 1, {"verdict": "non-member", "certificate": ext.to_json()}, cfg
    lam = witness_lambda(ext.witness)
    image = lorentz_scale(diffs, lam)
    result = {"verdict": "member", "witness": list(ext.witness),
              "lambda": complex_to_json(lam),
              "image": config_to_json(image),
              "image_in_forward_tube": in_forward_tube(image).member,
              "r_independent": r_independence(diffs, ext.witness)}
    return 0, result, cfg


def cmd_jost(args):
    cfg = _load(args)
    diffs = _as_diffs(cfg)
    jost, cert = is_jost_point(diffs)
    return (0 if jost else 1), {"jost": jost, "certificate": cert.to_json()}, cfg


def cmd_classify(args):
    if args.s is None or args.m is None:
        raise TubeError("classify needs --s and --m")
    cls = classify_order(args.s, args.m)
    return 0, {"s": args.s, "m": args.m, "class": cls.value, "name": cls.description}, None


def _max_m(args) -> int:
    return args.max_m_override if args.max_m_override is not None else DEFAULT_MAX_M


def cmd_union(args):
    cfg = _as_points(_load(args))
    uv = union_membership(cfg, args.mode, _max_m(args))
    return (0 if uv.member else 1), uv.to_json(), cfg


def cmd_project(args):
    if args.r is None:
        raise TubeError("project needs --r")
    cfg = _as_points(_load(args))
    try:
        rep = projection_inclusion_check(cfg, args.r, _max_m(args))
    except NotMember as exc:
        return 1, {"verdict": "non-member", "error": str(exc)}, cfg
    return (0 if rep.ok else 1), rep.to_json(), cfg


def cmd_cells(args):
    if not args.file:
        if args.m is None:
            raise TubeError("cells needs --file or --m")
        formula = interior_cell_formula(args.m)
        return 0, {"m": args.m, "disjuncts": len(formula.cells), "formula": formula.to_json()}, None
    cfg = _load(args)
    diffs = _as_diffs(cfg)
    ext = in_extended_tube(diffs)
    result = {"verdict": ext.verdict,
              "formula_holds": interior_cell_formula(diffs.m).satisfied_by(diffs)}
    try:
        result["arrangement"] = build_arrangement(diffs).to_json()
    except DegenerateCoordinate as exc:
        result["arrangement"] = {"degenerate": str(exc)}
    if not ext.member:
        try:
            result["strata"] = [s.to_json() for s in classify_boundary(diffs)]
        except NotOnBoundary:
            result["strata"] = []
    return (0 if ext.member else 1), result, cfg


def _parse_perms(text: str | None, m: int) -> tuple[Permutation, ...]:
    if not text:
        return DomainDescriptor.primitive(m).permutations
    perms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk == "id":
            perms.append(Permutation.identity(m))
        elif chunk == "rev":
            perms.append(Permutation.reversal(m))
        else:
            perms.append(Permutation.from_one_based(chunk.split(",")))
    return tuple(perms)


def cmd_extend(args, out):
    m = args.m if args.m is not None else 2
    perms = _parse_perms(args.perms, m)
    domain = DomainDescriptor(m, perms)
    ext = convex_tube_extension([FORWARD_CONE] * (m - 1), perms)
    out.write(canonical_dumps({"extension": ext.to_json()}) + "\n")
    verified = emitted = rejected = 0
    for t, cand, rej in proposal_stream(domain, args.seed, args.draws):
        if cand is None:
            rejected += 1
            continue
        emitted += 1
        ver = verify_extension(cand, ext)
        verified += ver.member
        out.write(canonical_dumps({"draw": t, "candidate": point_config_to_json(cand),
                                   "verification": ver.to_json()}) + "\n")
    result = {"m": m, "seed": args.seed, "draws": args.draws, "emitted": emitted,
              "rejected": rejected, "verified": verified}
    return (0 if verified else 1), result, None


def cmd_oracle_check(args):
    oc = OracleConfig(theta_steps=args.theta_steps)
    if args.file:
        cfg = _load(args)
        diffs = _as_diffs(cfg)
        ext = in_extended_tube(diffs)
        orc = oracle_extended_membership(diffs, oc)
        failures = []
        if orc.found and not ext.member:
            failures.append("oracle member but exact non-member")
        if not verify_certificate(diffs, ext):
            failures.append("certificate does not re-verify")
        result = {"exact": ext.to_json(),
                  "oracle": {"verdict": orc.verdict, "direction": list(orc.direction) if orc.direction else None,
                             "scanned": orc.scanned},
                  "failures": failures}
        return (0 if not failures else 1), result, cfg
    rng = random.Random(args.seed)
    m = args.m if args.m is not None else 3
    failures = []
    members = 0
    for t in range(args.draws):
        diffs = DiffConfig(tuple(_random_vector(rng) for _ in range(m - 1)))
        ext = in_extended_tube(diffs)
        members += ext.member
        orc = oracle_extended_membership(diffs, oc)
        if (orc.found and not ext.member) or not verify_certificate(diffs, ext):
            failures.append(t)
    cut = oracle_cut_scan(args.draws, args.seed)
    result = {"m": m, "samples": args.draws, "seed": args.seed, "theta_steps": args.theta_steps,
              "exact_members": members, "failures": failures, "cut_scan": cut.to_json()}
    return (0 if not failures and cut.ok else 1), result, None


def _random_vector(rng):
    from .exact import GaussianRational, LightConeVector
    return LightConeVector(GaussianRational(random_rational(rng), random_rational(rng)),
                           GaussianRational(random_rational(rng), random_rational(rng)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tubedomains",
                                description="Exact extended-tube computations in 2D space-time.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--file")
        sp.add_argument("--mode", choices=("first", "all"), default="all")
        sp.add_argument("--s", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--r", type=int)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--draws", type=int, default=64)
        sp.add_argument("--theta-steps", type=int, default=64)
        sp.add_argument("--max-m-override", type=int)
        if name == "extend":
            sp.add_argument("--perms", help='";"-separated one-based permutations, or "id"/"rev"')
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    handlers = {"membership": cmd_membership, "witness": cmd_witness, "jost": cmd_jost,
                "classify": cmd_classify, "union": cmd_union, "project": cmd_project,
                "cells": cmd_cells, "oracle-check": cmd_oracle_check}
    try:
        if args.command == "extend":
            code, result, cfg = cmd_extend(args, out)
        else:
            code, result, cfg = handlers[args.command](args)
    except (TubeError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    report = {"command": {"name": args.command, "argv": argv},
              "input_digest": _digest(cfg) if cfg is not None else None,
              "result": result,
              "timing_ms": round((time.perf_counter() - start) * 1000, 3),
              "engine_version": __version__}
    out.write(canonical_dumps(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
