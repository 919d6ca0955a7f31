"""Batch command-line front end.

One command per process: parse the input documents, dispatch to exactly
one library operation, and write a machine-readable JSON report.  Exit
statuses: 0 success, 2 schema error, 3 precondition violation, 4
unsupported feature, 5 internal invariant failure.

Reports carry exact rationals as "p/q" strings, echo the command, embed
the full search configuration (bounded verdicts are never quoted without
their bound), and include a configuration fingerprint for replay.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__, documents
from .corpus import PROFILES
from .errors import (
    DimensionError,
    DomainError,
    InvariantViolation,
    PreconditionError,
    SchemaError,
    UnsupportedError,
)
from .gcr import building_centre, is_gcr_algebra, is_gcr_search, reduce_to_gcr
from .groups import norm_sq
from .instability import is_cochar_closed, optimize
from .parabolic import classify
from .reps import limit

EXIT_SCHEMA = 2
EXIT_PRECONDITION = 3
EXIT_UNSUPPORTED = 4
EXIT_INVARIANT = 5

COMMANDS = (
    "limit",
    "classify",
    "optimize",
    "cochar-closed",
    "gcr",
    "reduce",
    "centre",
    "oracle",
    "corpus",
)


def _load_json(path: str, what: str):
    if path is None:
        raise SchemaError(f"missing required document: {what}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"{what} document not found: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what} document is not valid JSON: {exc}")


def _fingerprint(payload) -> str:
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def _emit_cocharacter_or_none(lam):
    return None if lam is None else documents.emit_cocharacter(lam)


def _emit_parabolic(p):
    if p is None:
        return None
    return {
        "whole_group": p.is_whole_group,
        "blocks": [list(b) for b in p.blocks],
        "flags": [[documents.emit_matrix(space) for space in chain] for chain in p.flags],
    }


def _emit_optimization(result) -> dict:
    payload = {
        "status": result.status,
        "cocharacter": _emit_cocharacter_or_none(result.cocharacter),
        "value_sq": None if result.value_sq is None else documents.emit_rational(result.value_sq),
        "parabolic": _emit_parabolic(result.parabolic),
        "global_verified": result.global_verified,
        "certificate": {
            "frames_examined": len(result.certificate.frames),
            "frames": [
                {
                    "frame_index": f.frame_index,
                    "exponents": None if f.exponents is None else list(f.exponents),
                    "value_sq": None if f.value_sq is None else documents.emit_rational(f.value_sq),
                }
                for f in result.certificate.frames
            ],
            "active_objective": [list(c.weights) for c in result.certificate.active_objective],
            "active_cone": [list(c.weights) for c in result.certificate.active_cone],
            "oracle_value_sq": None
            if result.certificate.oracle_value_sq is None
            else documents.emit_rational(result.certificate.oracle_value_sq),
            "oracle_box": result.certificate.oracle_box,
            "norm_gram": None
            if result.certificate.norm_gram is None
            else documents.emit_matrix(result.certificate.norm_gram),
        },
    }
    if result.cocharacter is not None and not result.cocharacter.is_zero:
        payload["norm_sq"] = documents.emit_rational(norm_sq(result.cocharacter))
    return payload


def _emit_gcr_verdict(verdict) -> dict:
    return {
        "status": verdict.status,
        "witness_cocharacter": _emit_cocharacter_or_none(verdict.witness_cocharacter),
        "witness_radical": None
        if verdict.witness_radical is None
        else [documents.emit_matrix(x) for x in verdict.witness_radical],
        "bounded_box": verdict.bounded_box,
        "examined_nonzero": len(verdict.examined),
        "tuple_length": verdict.tuple_length,
        "norm_gram": None
        if verdict.norm_gram is None
        else documents.emit_matrix(verdict.norm_gram),
    }


def _run_limit(args):
    group = documents.parse_group(_load_json(args.group, "group"))
    rep = documents.parse_representation(_load_json(args.rep, "representation"), group)
    doc = _load_json(args.input, "input")
    if not isinstance(doc, dict):
        raise SchemaError("input: expected an object with 'point' and 'cocharacter'")
    point = documents.parse_point(doc.get("point"), rep, "$.point")
    lam = documents.parse_cocharacter(doc.get("cocharacter"), group, "$.cocharacter")
    value = limit(point, lam)
    result = {
        "exists": value is not None,
        "limit": None if value is None else documents.emit_point(value),
    }
    return result, None, ()


def _run_classify(args):
    group = documents.parse_group(_load_json(args.group, "group"))
    doc = _load_json(args.input, "input")
    if not isinstance(doc, dict):
        raise SchemaError("input: expected an object with 'element' and 'cocharacter'")
    element = documents.parse_matrix(doc.get("element"), "$.element")
    lam = documents.parse_cocharacter(doc.get("cocharacter"), group, "$.cocharacter")
    cls = classify(element, lam)
    return {"membership": cls.value}, None, ()


def _run_optimize(args, force_oracle: bool = False):
    group = documents.parse_group(_load_json(args.group, "group"))
    rep = documents.parse_representation(_load_json(args.rep, "representation"), group)
    doc = _load_json(args.input, "input")
    if not isinstance(doc, dict):
        raise SchemaError("input: expected an object with 'points' and 'subvariety'")
    pts_doc = doc.get("points")
    if not isinstance(pts_doc, list) or not pts_doc:
        raise SchemaError("$.points: expected a nonempty list")
    points = [documents.parse_point(p, rep, f"$.points[{i}]") for i, p in enumerate(pts_doc)]
    s = documents.parse_subvariety(doc.get("subvariety"), rep, "$.subvariety")
    cfg_doc = _load_json(args.config, "config") if args.config else None
    cfg = documents.parse_config(cfg_doc, group)
    if force_oracle and not cfg.oracle_mode:
        cfg = type(cfg)(
            cfg.group,
            cfg.exponent_box,
            cfg.conjugation_family,
            True,
            cfg.normalizer_samples,
        )
    result = optimize(points, s, cfg)
    assertions = ["limits_land_in_subvariety", "value_recomputed_from_orders",
                  "tied_maximizers_share_parabolic", "normalizer_samples_contained"]
    return _emit_optimization(result), cfg, tuple(assertions)


def _run_cochar_closed(args):
    group = documents.parse_group(_load_json(args.group, "group"))
    rep = documents.parse_representation(_load_json(args.rep, "representation"), group)
    doc = _load_json(args.input, "input")
    point = documents.parse_point(doc.get("point") if isinstance(doc, dict) else doc, rep, "$.point")
    cfg = documents.parse_config(_load_json(args.config, "config") if args.config else None, group)
    verdict = is_cochar_closed(point, cfg)
    result = {
        "closed_within_bound": verdict.closed,
        "box": verdict.box,
        "witness": _emit_cocharacter_or_none(verdict.witness),
        "witness_limit": None
        if verdict.witness_limit is None
        else [documents.emit_matrix(h) for h in verdict.witness_limit],
        "examined_nonzero": len(verdict.examined),
    }
    return result, cfg, ("witness_conjugator_rechecked",)


def _run_gcr(args):
    group = documents.parse_group(_load_json(args.group, "group"))
    h = documents.parse_subgroup(_load_json(args.input, "input"), group)
    cfg = documents.parse_config(_load_json(args.config, "config") if args.config else None, group)
    searched = is_gcr_search(h, cfg)
    payload = {"search": _emit_gcr_verdict(searched)}
    if len(group.factors) == 1 and group.factors[0].family == "GL":
        payload["algebra"] = _emit_gcr_verdict(is_gcr_algebra(h))
        payload["agree"] = payload["algebra"]["status"] == payload["search"]["status"]
    payload["status"] = searched.status
    return payload, cfg, ("witness_conjugator_rechecked",)


def _run_reduce(args):
    group = documents.parse_group(_load_json(args.group, "group"))
    h = documents.parse_subgroup(_load_json(args.input, "input"), group)
    cfg = documents.parse_config(_load_json(args.config, "config") if args.config else None, group)
    chain, quotient = reduce_to_gcr(h, cfg)
    result = {
        "chain": [documents.emit_cocharacter(lam) for lam in chain],
        "quotient_generators": [documents.emit_matrix(g) for g in quotient.generators],
    }
    return result, cfg, ("quotient_certified_semisimple_on_gl",)


def _run_centre(args):
    group = documents.parse_group(_load_json(args.group, "group"))
    h = documents.parse_subgroup(_load_json(args.input, "input"), group)
    cfg = documents.parse_config(_load_json(args.config, "config") if args.config else None, group)
    centre = building_centre(h, cfg)
    result = {
        "has_centre": centre.has_centre,
        "cocharacter": _emit_cocharacter_or_none(centre.cocharacter),
        "parabolic": _emit_parabolic(centre.parabolic),
        "stabilizing_samples": [documents.emit_matrix(g) for g in centre.stabilizing_samples],
    }
    assertions = ("generators_inside_parabolic", "unipotent_generators_in_radical")
    return result, cfg, assertions


def _run_corpus(args):
    profile = args.profile
    if profile not in PROFILES:
        raise SchemaError(f"unknown corpus profile {profile!r}; known: {sorted(PROFILES)}")
    seed = args.seed if args.seed is not None else 1
    size = args.size if args.size is not None else 50
    suite = PROFILES[profile]
    records = _run_suite_parallel(suite, profile, seed, size)
    failures = [r for r in records if not r.get("ok", False)]
    result = {
        "profile": profile,
        "seed": seed,
        "size": len(records),
        "passed": len(records) - len(failures),
        "failures": failures,
    }
    return result, None, ()


def _worker(task):
    profile, seed, index = task
    record = PROFILES[profile](seed, index + 1)[index]
    record["reproducer"] = {"profile": profile, "seed": seed, "case": index}
    return record


def _run_suite_parallel(suite, profile: str, seed: int, size: int) -> list[dict]:
    """Run a suite, optionally fanning cases out to worker processes.

    DESTAB_THREADS caps the worker count; results are aggregated in case
    order, so the report is identical to a sequential run.
    """
    workers = int(os.environ.get("DESTAB_THREADS", "1"))
    if workers <= 1:
        records = suite(seed, size)
        for i, r in enumerate(records):
            r.setdefault("reproducer", {"profile": profile, "seed": seed, "case": i})
        return records
    import concurrent.futures

    tasks = [(profile, seed, i) for i in range(size)]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_worker, tasks))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="destab",
        description="exact destabilizing-cocharacter and complete-reducibility toolkit",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--group", help="group specification document (JSON)")
    parser.add_argument("--rep", help="representation document (JSON)")
    parser.add_argument("--input", help="input document (points/subgroup/element)")
    parser.add_argument("--config", help="search configuration document (JSON)")
    parser.add_argument("--seed", type=int, help="seed for corpus generation")
    parser.add_argument("--size", type=int, help="corpus size")
    parser.add_argument("--profile", help="corpus profile name")
    parser.add_argument("--out", help="write the report here (default: stdout)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "limit":
            result, cfg, assertions = _run_limit(args)
        elif args.command == "classify":
            result, cfg, assertions = _run_classify(args)
        elif args.command == "optimize":
            result, cfg, assertions = _run_optimize(args)
        elif args.command == "oracle":
            result, cfg, assertions = _run_optimize(args, force_oracle=True)
        elif args.command == "cochar-closed":
            result, cfg, assertions = _run_cochar_closed(args)
        elif args.command == "gcr":
            result, cfg, assertions = _run_gcr(args)
        elif args.command == "reduce":
            result, cfg, assertions = _run_reduce(args)
        elif args.command == "centre":
            result, cfg, assertions = _run_centre(args)
        elif args.command == "corpus":
            result, cfg, assertions = _run_corpus(args)
        else:  # pragma: no cover - argparse restricts choices
            raise SchemaError(f"unknown command {args.command!r}")
    except SchemaError as exc:
        _emit_error(args, "schema", str(exc))
        return EXIT_SCHEMA
    except (PreconditionError, DimensionError, DomainError) as exc:
        _emit_error(args, "precondition", str(exc))
        return EXIT_PRECONDITION
    except UnsupportedError as exc:
        _emit_error(args, "unsupported", str(exc))
        return EXIT_UNSUPPORTED
    except InvariantViolation as exc:
        _emit_error(args, "invariant", str(exc))
        return EXIT_INVARIANT

    config_echo = None if cfg is None else documents.emit_config(cfg)
    report = {
        "command": args.command,
        "version": __version__,
        "result": result,
        "config": config_echo,
        "assertions_passed": list(assertions),
        "config_fingerprint": _fingerprint(
            {"command": args.command, "config": config_echo, "seed": args.seed}
        ),
    }
    _write(args, report)
    return 0


def _write(args, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _emit_error(args, kind: str, message: str) -> None:
    _write(args, {"error": {"kind": kind, "message": message}})


if __name__ == "__main__":
    raise SystemExit(main())
