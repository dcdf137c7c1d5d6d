"""Command-line interface.

Exit codes: 0 success, 1 parse or validation failure, 2 internal invariant
breach, 3 kill loop did not stabilize within the cap.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .cdga import NotFree, ValidationError, check_minimality, validate
from .cohomology import cohomology_summary
from .description import (
    ParseError,
    dumps,
    load_json,
    model_name,
    model_to_description,
    parse_expression,
    parse_lie_algebra,
    parse_model,
)
from .graded_algebra import format_element
from .ks_extension import (
    check_tensor_minimality,
    describe_twist,
    ks_extension,
    total_space_dims,
    total_table,
    validate_extension,
)
from .minimal_model import (
    DEFAULT_KILL_CAP,
    ConstructionError,
    KillCapExceeded,
    NonConnectedTarget,
    construct_minimal_model,
    rational_homotopy_dims,
)
from .models_library import (
    JacobiFailure,
    chevalley_eilenberg,
    filiform4_lie,
    heisenberg_model,
    heisenberg_times_line_lie,
    projective_model,
    sphere_model,
    torus_model,
)

log = logging.getLogger("sullivan")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_KILL_CAP = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def cmd_validate(args) -> int:
    text = _read(args.file)
    A = parse_model(text, check=False)
    report = validate(A, args.max_degree)
    if args.format == "json":
        _emit(dumps({
            "ok": report.ok,
            "max_degree": report.max_degree,
            "issues": [{"kind": i.kind, "subject": i.subject, "detail": i.detail} for i in report.issues],
            "notes": list(report.notes),
        }))
    else:
        lines = [f"{'ok' if report.ok else 'FAILED'}: {report.summary()}"]
        lines += [f"  {i}" for i in report.issues]
        lines += [f"  note: {n}" for n in report.notes]
        _emit("\n".join(lines))
    return EXIT_OK if report.ok else EXIT_INPUT


def cmd_cohomology(args) -> int:
    A = parse_model(_read(args.file), max_degree=args.max_degree + 1)
    summary = cohomology_summary(A, args.max_degree)
    table = A.table
    classes = {n: [format_element(c.representative, table) for c in cl] for n, cl in summary.classes.items()}
    if args.format == "json":
        _emit(dumps({
            "max_degree": args.max_degree,
            "betti": {str(n): b for n, b in summary.betti.items()},
            "representatives": {str(n): reps for n, reps in classes.items()},
        }))
    else:
        lines = ["degree  betti  representatives"]
        for n, b in summary.betti.items():
            lines.append(f"{n:<7} {b:<6} {', '.join(f'[{r}]' for r in classes[n])}")
        _emit("\n".join(lines))
    return EXIT_OK


def _result_payload(name, result, kill_cap) -> dict:
    model = result.model
    table, target_table = model.table, result.rho.target.table
    verdict = check_minimality(model)
    ver = result.verification
    return {
        "name": name,
        "max_degree": result.max_degree,
        "kill_cap": kill_cap,
        "model": model_to_description(model, f"minimal model of {name}"),
        "generators": [
            {
                "name": g.name,
                "degree": g.degree,
                "differential": format_element(model.differential[g.id], table),
                "image": format_element(result.rho.images[g.id], target_table),
            }
            for g in table
        ],
        "dims": {str(k): v for k, v in result.dims.items()},
        "diagnostics": [entry.as_dict() for entry in result.diagnostics],
        "minimality": {"well_ordered": verdict.minimal, "decomposable": verdict.decomposable},
        "verification": {
            "iso_through": ver.iso_through(),
            "mono_next": result.mono_next,
            "degrees": [
                {
                    "degree": d.degree,
                    "source_betti": d.source_betti,
                    "target_betti": d.target_betti,
                    "rank": d.rank,
                    "injective": d.injective,
                    "surjective": d.surjective,
                }
                for d in ver.degrees
            ],
        },
    }


def _result_text(payload) -> str:
    lines = [f"minimal model of {payload['name']} through degree {payload['max_degree']}", "generators:"]
    if not payload["generators"]:
        lines.append("  (none)")
    for g in payload["generators"]:
        lines.append(f"  {g['name']}  degree {g['degree']}  d = {g['differential']}  rho = {g['image']}")
    lines.append("dims:")
    for k, v in payload["dims"].items():
        lines.append(f"  V^{k} = {v}")
    lines.append("diagnostics:")
    for e in payload["diagnostics"]:
        added = ", ".join(e["added"]) or "-"
        lines.append(
            f"  {e['action']} degree {e['degree']} round {e['round']}: added {added} "
            f"({e['dimension_before']} -> {e['dimension_after']})"
        )
    ver = payload["verification"]
    lines.append(f"quasi-isomorphism: iso through degree {ver['iso_through']}; "
                 f"mono in degree {payload['max_degree'] + 1}: {'yes' if ver['mono_next'] else 'no'}")
    return "\n".join(lines)


def cmd_minimal_model(args) -> int:
    text = _read(args.file)
    A = parse_model(text, max_degree=args.max_degree + 2)
    name = model_name(text)
    result = construct_minimal_model(A, args.max_degree, args.kill_cap)
    payload = _result_payload(name, result, args.kill_cap)
    _emit(dumps(payload) if args.format == "json" else _result_text(payload))
    return EXIT_OK


def cmd_homotopy(args) -> int:
    text = _read(args.file)
    A = parse_model(text, max_degree=args.max_degree + 2)
    result = construct_minimal_model(A, args.max_degree, args.kill_cap)
    h = rational_homotopy_dims(result)
    if args.format == "json":
        _emit(dumps({"dims": {str(k): v for k, v in h.dims.items()}, "hypotheses": list(h.hypotheses)}))
    else:
        lines = [f"dim V^{k} = {v}" for k, v in h.dims.items()]
        lines.append("valid as rational homotopy ranks under these hypotheses:")
        lines += [f"  - {hyp}" for hyp in h.hypotheses]
        _emit("\n".join(lines))
    return EXIT_OK


def _free_part(A, label):
    if A.relations:
        raise ParseError("must be a free model (no relations)", context=label)
    return A.free


def cmd_ks_check(args) -> int:
    base = _free_part(parse_model(_read(args.base)), "base")
    fiber = _free_part(parse_model(_read(args.fiber)), "fiber")
    twist_data = load_json(_read(args.twist))
    raw = twist_data.get("differential", {})
    if not isinstance(raw, dict):
        raise ParseError("must be an object", context="twist differential")
    try:
        table = total_table(base, fiber)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    twist = {k: parse_expression(v, table, f"twist[{k!r}]") for k, v in raw.items()}
    try:
        E = ks_extension(base, fiber, twist)
    except ValueError as exc:
        raise ParseError(str(exc), context="twist") from None
    max_degree = args.max_degree or max((g.degree for g in table), default=1)
    report = validate_extension(E, max_degree + 1)
    if not report.ok:
        raise ValidationError(report)
    verdict = check_tensor_minimality(E)
    dims = total_space_dims(E, max_degree, verdict) if verdict.minimal else None
    tri = verdict.triangularity
    payload = {
        "twist": describe_twist(E),
        "triangularity": {"ok": tri.ok, "order": list(tri.order or []), "problem": tri.problem, "nodes": list(tri.nodes)},
        "minimality": {
            "minimal": verdict.minimal,
            "order": list(verdict.order or []),
            "base_in_degree_one": verdict.base_in_degree_one,
            "fiber_simply_connected": verdict.fiber_simply_connected,
            "fallback": verdict.fallback,
            "flags": list(verdict.flags),
        },
        "total_dims": {str(k): v for k, v in dims.items()} if dims is not None else None,
    }
    if args.format == "json":
        _emit(dumps(payload))
    else:
        lines = []
        if tri.ok:
            lines.append(f"triangular: order {' < '.join(tri.order) if tri.order else '(no fiber generators)'}")
        else:
            lines.append(f"{tri.problem}: {', '.join(tri.nodes)}")
        lines.append(f"minimal: {'yes' if verdict.minimal else 'no'}"
                     + (f" (order {' < '.join(verdict.order)})" if verdict.order else ""))
        for flag in verdict.flags:
            lines.append(f"  flag: {flag}")
        if dims is not None:
            lines += [f"dim V^{k} = {v}" for k, v in dims.items()]
        _emit("\n".join(lines))
    return EXIT_OK if tri.ok else EXIT_INPUT


_LIBRARY_HELP = "sphere N | cpn N | torus N | heisenberg | filiform4 | heisenberg-x-line | ce LIE_FILE"


def library_model(name: str, params: list[str]):
    def one_int():
        if len(params) != 1:
            raise ParseError(f"library {name} takes exactly one integer parameter")
        try:
            n = int(params[0])
        except ValueError:
            raise ParseError(f"not an integer: {params[0]!r}") from None
        if n < 1:
            raise ParseError("parameter must be >= 1")
        return n

    if name == "sphere":
        return f"S{params[0] if params else ''}", sphere_model(one_int())
    if name == "cpn":
        return f"CP{params[0] if params else ''}", projective_model(one_int())
    if name == "torus":
        return f"T{params[0] if params else ''}", torus_model(one_int())
    if params and name != "ce":
        raise ParseError(f"library {name} takes no parameters")
    if name == "heisenberg":
        return "heisenberg", heisenberg_model()
    if name == "filiform4":
        return "filiform4", chevalley_eilenberg(filiform4_lie())
    if name == "heisenberg-x-line":
        return "heisenberg-x-line", chevalley_eilenberg(heisenberg_times_line_lie())
    if name == "ce":
        if len(params) != 1:
            raise ParseError("library ce takes one Lie algebra file")
        return "chevalley-eilenberg", chevalley_eilenberg(parse_lie_algebra(_read(params[0])))
    raise ParseError(f"unknown library model {name!r} (choose from {_LIBRARY_HELP})")


def cmd_library(args) -> int:
    name, A = library_model(args.name, args.params)
    _emit(dumps(model_to_description(A, name)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sullivan", description="Minimal models of finitely presented CDGAs over Q.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log construction steps to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree_required=True):
        p.add_argument("--max-degree", type=int, required=degree_required)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="check a model description")
    p.add_argument("file", nargs="?", default="-")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="betti numbers and class representatives")
    p.add_argument("file", nargs="?", default="-")
    common(p)
    p.set_defaults(func=cmd_cohomology)

    for name, func, text in (
        ("minimal-model", cmd_minimal_model, "construct the minimal model"),
        ("homotopy", cmd_homotopy, "generator counts in degrees >= 2"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file", nargs="?", default="-")
        common(p)
        p.add_argument("--kill-cap", type=int, default=DEFAULT_KILL_CAP)
        p.set_defaults(func=func)

    p = sub.add_parser("ks-check", help="triangularity and minimality of a twisted tensor product")
    p.add_argument("base")
    p.add_argument("fiber")
    p.add_argument("twist")
    common(p, degree_required=False)
    p.set_defaults(func=cmd_ks_check)

    p = sub.add_parser("library", help=f"emit a built-in model: {_LIBRARY_HELP}")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_library)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "max_degree", None) is not None and args.max_degree < 1:
        parser.error("--max-degree must be >= 1")
    if getattr(args, "kill_cap", 1) < 1:
        parser.error("--kill-cap must be >= 1")
    try:
        return args.func(args)
    except KillCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KILL_CAP
    except ValidationError as exc:
        print("error: validation failed", file=sys.stderr)
        for issue in exc.report.issues:
            print(f"  {issue}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, NonConnectedTarget, NotFree, JacobiFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConstructionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - any other failure is a tool bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
