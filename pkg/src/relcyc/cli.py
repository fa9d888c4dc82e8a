"""Command-line surface: instance ingestion, dispatch, report emission.

Subcommands
-----------

``validate``   axiom report for an instance (structure, algebra laws,
               module laws, the balanced product, grading additivity,
               and the extension's own unitality/associativity).
``homology``   relative homology dimensions through chosen pipelines.
``verify``     the full identity suite of every module, optionally with
               randomized element checks.
``harmonic``   the harmonic-decomposition families only: the Karoubi
               calculus, projection, Green operator, splitting, the
               pair-model description with its cross-checks, and the
               Connes property.
``sbi``        the periodicity long exact sequence, slot by slot.
``compare``    all pipelines side by side with agreement flags.

Instances are bundled fixture names (``dn``, ``t``, ``k2``, ``tp3``,
``tp5``) or paths to instance JSON files.  Reports are JSON (default)
or CSV, written to stdout or ``--out``; identical configurations
produce byte-identical reports.

Exit status: 0 clean; 1 when any identity, agreement, or exactness
check fails (messages name the failing identity, instance, and
bidegree); 2 on unusable input (bad flags, unparseable or invalid
instance files, impossible requests).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import (
    InvalidDatum,
    NoGrading,
    build_cleft_extension,
    bundled_instance_names,
    load_datum,
)
from .complexes import ChainModel, IdentityViolation
from .harmonic import (
    HarmonicModel,
    ImageMismatch,
    MethodDisagreement,
    NotInjective,
    PropertyViolation,
    SolveFailure,
    verify_connes_property,
    verify_de_rham_karoubi,
    verify_description,
    verify_green,
    verify_projection,
    verify_splitting,
)
from .homology import (
    HC_PIPELINES,
    HH_PIPELINES,
    ExactnessViolation,
    HomologyEngine,
    PipelineDisagreement,
    comparison_csv,
    comparison_json,
    report_csv,
    report_json,
    sbi_csv,
    sbi_json,
)
from .identities import run_identity_suite
from .linalg import ComposabilityViolation
from .parallel import ordered_map
from .perturbation import NotLocallyNilpotent

__all__ = ["main", "run"]

DEGREE_CAP = 4
CAP_EXTENSION_DIM = 5

_INPUT_ERRORS = (InvalidDatum, NoGrading, OSError, json.JSONDecodeError)
_CHECK_ERRORS = (
    PipelineDisagreement,
    ExactnessViolation,
    IdentityViolation,
    MethodDisagreement,
    SolveFailure,
    NotInjective,
    ImageMismatch,
    PropertyViolation,
    ComposabilityViolation,
    NotLocallyNilpotent,
)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _effective_bound(datum, requested: int, uncapped: bool) -> int:
    """Clamp the degree bound on large instances unless overridden.

    Word spaces grow like (dim E - 1)^w, so instances with a large
    extension get a conservative default; ``--uncapped`` lifts it with
    a warning instead of silently committing to a huge computation.
    """
    if build_cleft_extension(datum).dim < CAP_EXTENSION_DIM:
        return requested
    if requested <= DEGREE_CAP:
        return requested
    if uncapped:
        print(
            f"warning: {datum.name}: max degree {requested} exceeds the "
            f"default cap {DEGREE_CAP} for an extension of dimension "
            f">= {CAP_EXTENSION_DIM}; this may be slow",
            file=sys.stderr,
        )
        return requested
    print(
        f"note: {datum.name}: capping max degree at {DEGREE_CAP} "
        f"(requested {requested}); pass --uncapped to override",
        file=sys.stderr,
    )
    return DEGREE_CAP


def _family_payload(instance: str, bound: int, counts, failures) -> dict:
    return {
        "instance": instance,
        "bound": bound,
        "families": [[name, bad] for name, bad in counts],
        "failures": [str(f) for f in failures],
        "ok": not failures,
    }


def _family_csv(payload: dict) -> str:
    lines = ["instance,family,failures"]
    for name, bad in payload["families"]:
        lines.append(f"{payload['instance']},{name},{bad}")
    return "\n".join(lines) + "\n"


def _report_failures(failures) -> None:
    for failure in failures:
        print(str(failure), file=sys.stderr)


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------


def _cmd_validate(args) -> int:
    datum = load_datum(args.instance)  # InvalidDatum -> exit 2
    extension = build_cleft_extension(datum)
    payload = {
        "instance": datum.name,
        "valid": True,
        "algebra_dim": datum.algebra.dim,
        "module_dim": datum.module.dim,
        "extension_dim": extension.dim,
        "graded": datum.graded,
    }
    if args.format == "csv":
        text = (
            "instance,valid,algebra_dim,module_dim,extension_dim,graded\n"
            f"{datum.name},true,{datum.algebra.dim},{datum.module.dim},"
            f"{extension.dim},{str(datum.graded).lower()}\n"
        )
    else:
        text = _dump(payload)
    _emit(text, args.out)
    return 0


def _parse_pipelines(parser, kind: str, spec: str | None) -> tuple[str, ...]:
    allowed = HH_PIPELINES if kind == "hh" else HC_PIPELINES
    if spec is None:
        return allowed
    chosen = tuple(p.strip() for p in spec.split(",") if p.strip())
    bad = [p for p in chosen if p not in allowed]
    if bad or not chosen:
        parser.error(
            f"unknown {kind} pipeline(s) {', '.join(bad) or '(none)'}; "
            f"choose from {', '.join(allowed)}"
        )
    return chosen


def _cmd_homology(args, parser) -> int:
    datum = load_datum(args.instance)
    bound = _effective_bound(datum, args.max_degree, args.uncapped)
    pipelines = _parse_pipelines(parser, args.kind, args.pipeline)
    engine = HomologyEngine(datum)
    reports = list(ordered_map(
        lambda p: engine.report(args.kind, bound, p), pipelines))
    if args.per_weight:
        if args.kind != "hc":
            parser.error("--per-weight applies to --kind hc only")
        graded = engine.graded_hc(bound)  # NoGrading -> exit 2
        reports = [
            graded if r.pipeline == "quotient" else r for r in reports
        ]
        if all(r.pipeline != "quotient" for r in reports):
            reports.append(graded)
    if args.format == "csv":
        chunks = [report_csv(r) for r in reports]
        text = chunks[0] + "".join(
            chunk.split("\n", 1)[1] for chunk in chunks[1:])
    else:
        docs = [json.loads(report_json(r)) for r in reports]
        text = _dump(docs[0] if len(docs) == 1 else {
            "instance": datum.name,
            "kind": args.kind,
            "bound": bound,
            "reports": docs,
        })
    _emit(text, args.out)
    return 0


def _cmd_verify(args) -> int:
    datum = load_datum(args.instance)
    bound = _effective_bound(datum, args.max_degree, args.uncapped)
    report = run_identity_suite(datum, bound,
                                samples=args.samples, seed=args.seed)
    payload = _family_payload(datum.name, bound, report.counts,
                              report.failures)
    payload["samples"] = args.samples
    payload["seed"] = args.seed
    text = _family_csv(payload) if args.format == "csv" else _dump(payload)
    _emit(text, args.out)
    if not report.ok:
        _report_failures(report.failures)
        return 1
    return 0


def _cmd_harmonic(args) -> int:
    datum = load_datum(args.instance)
    bound = _effective_bound(datum, args.max_degree, args.uncapped)
    har = HarmonicModel(ChainModel(datum))
    families = [
        ("karoubi", verify_de_rham_karoubi),
        ("projection", verify_projection),
        ("green", verify_green),
        ("splitting", verify_splitting),
        ("description", verify_description),
        ("connes-property", verify_connes_property),
    ]
    results = ordered_map(lambda fam: fam[1](har, bound), families)
    counts = [(name, len(bad)) for (name, _), bad in zip(families, results)]
    failures = [f for bad in results for f in bad]
    payload = _family_payload(datum.name, bound, counts, failures)
    text = _family_csv(payload) if args.format == "csv" else _dump(payload)
    _emit(text, args.out)
    if failures:
        _report_failures(failures)
        return 1
    return 0


def _cmd_sbi(args) -> int:
    datum = load_datum(args.instance)
    bound = _effective_bound(datum, args.max_degree, args.uncapped)
    report = HomologyEngine(datum).sbi_report(bound)
    text = sbi_csv(report) if args.format == "csv" else sbi_json(report)
    _emit(text, args.out)
    if not report.ok:
        report.require()  # raises ExactnessViolation naming the slots
    return 0


def _cmd_compare(args) -> int:
    datum = load_datum(args.instance)
    bound = _effective_bound(datum, args.max_degree, args.uncapped)
    comparison = HomologyEngine(datum).compare_pipelines(bound)
    text = (comparison_csv(comparison) if args.format == "csv"
            else comparison_json(comparison))
    _emit(text, args.out)
    if not comparison.all_agree:
        for kind, degree, dims in comparison.disagreements():
            detail = ", ".join(f"{p}={d}" for p, d in sorted(dims.items()))
            print(
                f"pipelines disagree on {datum.name!r}: {kind} at degree "
                f"{degree}: {detail}",
                file=sys.stderr,
            )
        return 1
    return 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relcyc",
        description=(
            "Exact relative Hochschild/cyclic homology of cleft "
            "extensions, with mechanical verification of the chain-"
            "level identities."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, degree: bool = True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "instance",
            help="bundled instance name (%s) or path to an instance "
                 "JSON file" % ", ".join(bundled_instance_names()),
        )
        if degree:
            p.add_argument("--max-degree", type=int, default=6,
                           help="largest homological degree (default 6)")
            p.add_argument("--uncapped", action="store_true",
                           help="allow degrees past the large-instance cap")
        p.add_argument("--format", choices=("json", "csv"), default="json",
                       help="report format (default json)")
        p.add_argument("--out", default=None,
                       help="write the report to this file instead of stdout")
        return p

    add("validate", "check every axiom of an instance", degree=False)

    homology = add("homology", "relative homology dimensions")
    homology.add_argument("--kind", choices=("hh", "hc"), required=True,
                          help="Hochschild (hh) or cyclic (hc)")
    homology.add_argument("--pipeline", default=None,
                          help="comma-separated pipelines (default: all)")
    homology.add_argument("--per-weight", action="store_true",
                          help="include the weight decomposition "
                               "(graded instances, --kind hc)")

    verify = add("verify", "run the full identity suite")
    verify.add_argument("--samples", type=int, default=0,
                        help="extra randomized element checks (default 0)")
    verify.add_argument("--seed", type=int, default=0,
                        help="seed for the randomized checks (default 0)")

    add("harmonic", "verify the harmonic-decomposition families")
    add("sbi", "check the periodicity long exact sequence")
    add("compare", "run all pipelines and flag disagreements")
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_degree", 0) < 0:
        parser.error("--max-degree must be nonnegative")
    if getattr(args, "samples", 0) < 0:
        parser.error("--samples must be nonnegative")
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "homology":
            return _cmd_homology(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "harmonic":
            return _cmd_harmonic(args)
        if args.command == "sbi":
            return _cmd_sbi(args)
        if args.command == "compare":
            return _cmd_compare(args)
        parser.error(f"unknown command {args.command!r}")
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _CHECK_ERRORS as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
