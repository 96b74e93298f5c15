"""Batch front end: validation, construction, classification,
factorization, transport, seeded generation, and the law-suite driver.

Exit codes: 0 all checks passed, 1 a law failed (a counterexample file
is written when an output directory is given), 2 input error, 3 a
pushout saturation bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import jsonio
from .classify import classify
from .fincat import FinCat, FinFunctor, validate_category, validate_functor
from .gen import (
    GenConfig,
    gen_fincat,
    gen_functor,
    gen_indexed_smf,
    gen_lens,
    gen_smf,
    rng_for,
)
from .idx import (
    IndexedSmf,
    PushforwardResult,
    elements,
    fibres,
    pullback_idx,
    pushforward_idx,
    roundtrip_idx,
    roundtrip_lens,
    validate_indexed_smf,
)
from .jsonio import ParseError, dumps, from_json, to_dot, to_json
from .lens import (
    DeltaLens,
    DiaLens,
    Retrofunctor,
    check_delta_lens,
    check_dialens,
    check_retrofunctor,
    epi_mono_factorization,
    lens_of_dopf,
    reflective_factorization,
)
from .pushout import PushoutBounds, Undecided
from .smult import Smf, compose_smf, validate_smf
from .suites import SUITES, run_suite

PASS, LAW_FAILURE, INPUT_ERROR, UNDECIDED = 0, 1, 2, 3


class Workspace:
    """Named store of values loaded from files, with validation state."""

    def __init__(self, allow_invalid: bool = False):
        self.allow_invalid = allow_invalid
        self.entries: dict[str, dict] = {}

    def load(self, path: str):
        name = Path(path).stem
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
            value = from_json(data)
        except (OSError, json.JSONDecodeError, ParseError) as exc:
            raise ParseError(f"{path}: {exc}")
        report = validator_for(value)
        if not report.ok and not self.allow_invalid:
            raise ParseError(f"{path}: invalid input ({report})")
        self.entries[name] = {
            "value": value,
            "source": path,
            "report": report,
        }
        return value

    def values(self):
        return [entry["value"] for entry in self.entries.values()]


def validator_for(value):
    if isinstance(value, DeltaLens):
        return check_delta_lens(value)
    if isinstance(value, DiaLens):
        return check_dialens(value)
    if isinstance(value, Retrofunctor):
        return check_retrofunctor(value)
    if isinstance(value, IndexedSmf):
        return validate_indexed_smf(value)
    if isinstance(value, Smf):
        return validate_smf(value)
    if isinstance(value, FinFunctor):
        return validate_functor(value)
    if isinstance(value, FinCat):
        return validate_category(value)
    raise ParseError(f"no validator for {type(value).__name__}")


def write_output(args, name: str, value, suffix: str = "json") -> None:
    if args.output is None:
        return
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    if suffix == "json":
        (out_dir / f"{name}.json").write_text(dumps(to_json(value)),
                                              encoding="utf-8")
    else:
        (out_dir / f"{name}.dot").write_text(to_dot(value, name),
                                             encoding="utf-8")


def write_report(args, name: str, payload: dict) -> None:
    if args.output is None:
        return
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{name}.json").write_text(dumps(payload), encoding="utf-8")


def emit(args, name: str, value) -> None:
    write_output(args, name, value, "json")
    if args.format == "dot":
        write_output(args, name, value, "dot")


def default_bounds(args) -> PushoutBounds:
    word = args.bound
    if word is None:
        word = int(os.environ.get("TOOL_PUSHOUT_WORD_BOUND", "8"))
    size = int(os.environ.get("TOOL_PUSHOUT_SIZE_BOUND", "10000"))
    return PushoutBounds(word_length=word, max_words=size)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    ws = Workspace(allow_invalid=True)
    failed = False
    for path in args.input:
        value = ws.load(path)
        name = Path(path).stem
        report = ws.entries[name]["report"]
        status = "ok" if report.ok else str(report)
        print(f"{path}: {status}")
        write_report(args, f"{name}.report", {
            "source": path,
            "ok": report.ok,
            "problems": [{"law": p.law, "detail": p.detail}
                         for p in report.problems],
        })
        failed = failed or not report.ok
    return LAW_FAILURE if failed else PASS


def cmd_elements(args) -> int:
    ws = Workspace(args.allow_invalid)
    for path in args.input:
        value = ws.load(path)
        if not isinstance(value, IndexedSmf):
            raise ParseError(f"{path}: elements needs indexed data")
        lens, _ = elements(value)
        print(f"{path}: elements has {len(lens.cat_a.objects)} objects, "
              f"{len(lens.cat_a.morphisms)} morphisms")
        emit(args, Path(path).stem + ".lens", lens)
    return PASS


def cmd_fibres(args) -> int:
    ws = Workspace(args.allow_invalid)
    for path in args.input:
        value = ws.load(path)
        if not isinstance(value, DeltaLens):
            raise ParseError(f"{path}: fibres needs a lens")
        x = fibres(value)
        print(f"{path}: fibres over {len(x.base.objects)} objects")
        emit(args, Path(path).stem + ".idx", x)
    return PASS


def cmd_roundtrip(args) -> int:
    ws = Workspace(args.allow_invalid)
    failed = False
    for path in args.input:
        value = ws.load(path)
        name = Path(path).stem
        try:
            if isinstance(value, DeltaLens):
                roundtrip_lens(value)
            elif isinstance(value, IndexedSmf):
                roundtrip_idx(value)
            else:
                raise ParseError(f"{path}: round trips need a lens or "
                                 f"indexed data")
            print(f"{path}: round trip verified")
            write_report(args, f"{name}.roundtrip", {"ok": True})
        except RuntimeError as exc:
            failed = True
            print(f"{path}: round trip FAILED: {exc}")
            write_report(args, f"{name}.roundtrip",
                         {"ok": False, "error": str(exc)})
    return LAW_FAILURE if failed else PASS


def cmd_classify(args) -> int:
    ws = Workspace(args.allow_invalid)
    for path in args.input:
        value = ws.load(path)
        if isinstance(value, DeltaLens):
            value = fibres(value)
        if not isinstance(value, IndexedSmf):
            raise ParseError(f"{path}: classify needs indexed data or a lens")
        report = classify(value)
        print(f"{path}:")
        for tag, verdict in report.verdicts.items():
            mark = "agree" if verdict.agree else "DISAGREE"
            print(f"  {tag:24s} idx={str(verdict.idx_level):5s} "
                  f"lens={str(verdict.lens_level):5s} [{mark}]")
        write_report(args, Path(path).stem + ".classes", report.as_dict())
        if not report.all_agree:
            return LAW_FAILURE
    return PASS


def cmd_factor(args) -> int:
    ws = Workspace(args.allow_invalid)
    for path in args.input:
        value = ws.load(path)
        name = Path(path).stem
        if args.kind == "comprehensive":
            if not isinstance(value, FinFunctor):
                raise ParseError(f"{path}: comprehensive factorization needs "
                                 f"a functor")
            from .fincat import comprehensive_factorization

            fact = comprehensive_factorization(value)
            emit(args, f"{name}.initial", fact.first)
            emit(args, f"{name}.dopf", fact.second)
            print(f"{path}: factored through {len(fact.mid.objects)} objects")
        elif args.kind == "ioo_dopf":
            if isinstance(value, FinFunctor):
                value = lens_of_dopf(value)
            if not isinstance(value, DeltaLens):
                raise ParseError(f"{path}: this factorization needs a lens or "
                                 f"discrete opfibration")
            ioo, ff = reflective_factorization(value)
            emit(args, f"{name}.ioo", ioo)
            emit(args, f"{name}.ff", ff)
            print(f"{path}: identity-on-objects then fully faithful")
        elif args.kind == "epi_mono":
            if not isinstance(value, DeltaLens):
                raise ParseError(f"{path}: epi/mono factorization needs a lens")
            epi, mono = epi_mono_factorization(value)
            emit(args, f"{name}.epi", epi)
            emit(args, f"{name}.mono", mono)
            print(f"{path}: surjective then fully-faithful-injective")
        else:
            raise ParseError(f"unknown factorization kind {args.kind!r}")
    return PASS


def cmd_compose_smf(args) -> int:
    ws = Workspace(args.allow_invalid)
    values = [ws.load(path) for path in args.input]
    if len(values) < 2 or not all(isinstance(v, Smf) for v in values):
        raise ParseError("compose-smf needs at least two split multivalued "
                         "function files")
    out = values[0]
    for nxt in values[1:]:
        out = compose_smf(out, nxt)
    print(f"composite carrier has {len(out.carrier)} elements")
    emit(args, "composite.smf", out)
    return PASS


def _load_idx_and_functor(args):
    ws = Workspace(args.allow_invalid)
    values = [ws.load(path) for path in args.input]
    idx = next((v for v in values if isinstance(v, IndexedSmf)), None)
    fun = next((v for v in values if isinstance(v, FinFunctor)), None)
    if idx is None or fun is None:
        raise ParseError("this command needs one indexed-data file and one "
                         "functor file")
    return idx, fun


def cmd_pullback(args) -> int:
    idx, fun = _load_idx_and_functor(args)
    out = pullback_idx(idx, fun)
    print(f"pullback over {len(out.base.objects)} objects")
    emit(args, "pullback.idx", out)
    return PASS


def cmd_pushforward(args) -> int:
    idx, fun = _load_idx_and_functor(args)
    res = pushforward_idx(idx, fun, default_bounds(args))
    if isinstance(res, Undecided):
        print(f"undecided: {res.reason}")
        write_report(args, "pushforward.undecided", {"reason": res.reason})
        return UNDECIDED
    print(f"pushforward over {len(res.idx.base.objects)} objects")
    emit(args, "pushforward.idx", res.idx)
    return PASS


GEN_KINDS = {
    "fincat": lambda cfg, rng: gen_fincat(cfg, rng),
    "functor": lambda cfg, rng: gen_functor(cfg, rng),
    "lens": lambda cfg, rng: gen_lens(cfg, rng),
    "idx": lambda cfg, rng: gen_indexed_smf(cfg, rng),
    "smf": lambda cfg, rng: gen_smf(rng),
}


def cmd_gen(args) -> int:
    cfg = GenConfig(
        seed=args.seed,
        max_objects=args.max_objects,
        max_hom=args.max_hom,
        max_fibre=args.max_fibre,
        acyclic=not args.cyclic,
        count=args.count,
    )
    builder = GEN_KINDS[args.gen_kind]
    for index in range(args.count):
        value = builder(cfg, rng_for(args.seed, index))
        report = validator_for(value)
        if not report.ok:
            print(f"instance {index}: generator produced invalid data "
                  f"({report})")
            return LAW_FAILURE
        emit(args, f"{args.gen_kind}-{index:04d}", value)
    write_report(args, "gen-manifest", {
        "kind": args.gen_kind,
        "seed": str(args.seed),
        "count": args.count,
        "max_objects": args.max_objects,
        "max_hom": args.max_hom,
        "max_fibre": args.max_fibre,
        "acyclic": not args.cyclic,
    })
    print(f"generated {args.count} valid {args.gen_kind} instances "
          f"(seed {args.seed})")
    return PASS


def cmd_check_laws(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise ParseError(f"unknown suite {name!r}; available: "
                             + ", ".join(sorted(SUITES)))
    failed = []
    for name in names:
        result = run_suite(name, seed=args.seed, count=args.count,
                           bound=default_bounds(args))
        print(result.line())
        print(f"       {result.description}")
        if not result.ok:
            failed.append(result)
            write_report(args, f"{name}.counterexamples", {
                "suite": name,
                "failures": result.failures[:50],
            })
    return LAW_FAILURE if failed else PASS


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltalens",
        description="delta lenses over finite categories: validation, "
                    "elements/fibres, detectors, factorizations, transport",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs=True):
        if inputs:
            p.add_argument("--input", nargs="+", required=True,
                           help="input JSON file(s)")
        p.add_argument("--output", help="output directory")
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--seed", default="0")
        p.add_argument("--count", type=int, default=None)
        p.add_argument("--bound", type=int, default=None,
                       help="pushout word-length bound")
        p.add_argument("--allow-invalid", action="store_true")

    for name, fn in (
        ("validate", cmd_validate),
        ("elements", cmd_elements),
        ("fibres", cmd_fibres),
        ("roundtrip", cmd_roundtrip),
        ("classify", cmd_classify),
        ("compose-smf", cmd_compose_smf),
        ("pullback", cmd_pullback),
        ("pushforward", cmd_pushforward),
    ):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("factor")
    common(p)
    p.add_argument("--kind", choices=("comprehensive", "ioo_dopf", "epi_mono"),
                   required=True)
    p.set_defaults(fn=cmd_factor)

    p = sub.add_parser("gen")
    common(p, inputs=False)
    p.add_argument("--gen-kind", choices=sorted(GEN_KINDS), default="idx")
    p.add_argument("--max-objects", type=int, default=4)
    p.add_argument("--max-hom", type=int, default=3)
    p.add_argument("--max-fibre", type=int, default=3)
    p.add_argument("--cyclic", action="store_true",
                   help="allow cyclic base categories")
    p.set_defaults(fn=cmd_gen, count=10)

    p = sub.add_parser("check-laws")
    common(p, inputs=False)
    p.add_argument("--suite", default="all",
                   help="suite name or 'all' (see docs)")
    p.set_defaults(fn=cmd_check_laws)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "count", None) is None and args.command == "gen":
        args.count = 10
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except Exception as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
