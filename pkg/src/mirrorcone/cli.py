"""Command line entry points: validate, analyze, examples.

Exit codes: 0 success, 1 domain-condition failure, 2 input error,
3 internal certificate failure (a falsified identity, i.e. a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bside import FactorizationCheckFailed, IntertwineCheckFailed
from .fans import CellLiftFailure, FanError
from .fixtures import FIXTURE_NAMES, fixture_input
from .koszulalg import ClassificationViolation
from .report import ALL_SECTIONS, build_report, input_echo
from .toricdata import LatticeSpec, ToricDataError, ToricInput, validate

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class ConfigError(ValueError):
    pass


def _parse_fraction(value, where):
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: bad rational {value!r}: {exc}") from None


def _parse_exponent_key(key, where):
    try:
        return tuple(int(x) for x in str(key).split(","))
    except ValueError:
        raise ConfigError(f"{where}: bad exponent key {key!r}") from None


def parse_config(data) -> ToricInput:
    """Build a ToricInput from the JSON config structure (1-based blocks)."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    for key in ("blocks", "d", "lattice"):
        if key not in data:
            raise ConfigError(f"config: missing field {key!r}")
    try:
        blocks = tuple(tuple(int(i) - 1 for i in blk) for blk in data["blocks"])
        degrees = tuple(int(x) for x in data["d"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config: blocks/d malformed: {exc}") from None

    lat = data["lattice"]
    if not isinstance(lat, dict):
        raise ConfigError("config: lattice must be an object")
    if "congruences" in lat:
        congruences = []
        for item in lat["congruences"]:
            congruences.append((tuple(int(x) for x in item["c"]), int(item["mod"])))
        spec = LatticeSpec(congruences=tuple(congruences))
    elif "generators" in lat:
        spec = LatticeSpec(generators=tuple(
            tuple(int(x) for x in g) for g in lat["generators"]))
    else:
        raise ConfigError("config: lattice needs congruences or generators")

    weights = None
    if data.get("lambda") is not None:
        lam = data["lambda"]
        if isinstance(lam, str):
            if not lam.startswith("uniform:"):
                raise ConfigError("config: lambda string must be 'uniform:<rational>'")
            weights = _parse_fraction(lam[len("uniform:"):], "lambda")
        elif isinstance(lam, dict):
            weights = {_parse_exponent_key(k, "lambda"): _parse_fraction(v, "lambda")
                       for k, v in lam.items()}
        else:
            raise ConfigError("config: lambda must be a string or object")

    volume_orders = None
    if data.get("v") is not None:
        volume_orders = tuple(int(x) for x in data["v"])

    b_valuations = None
    if data.get("b_valuations") is not None:
        b_valuations = {
            _parse_exponent_key(k, "b_valuations"): _parse_fraction(v, "b_valuations")
            for k, v in data["b_valuations"].items()}

    return ToricInput(blocks=blocks, degrees=degrees, lattice=spec,
                      weights=weights, volume_orders=volume_orders,
                      b_valuations=b_valuations)


def load_config(path) -> ToricInput:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    return parse_config(data)


def fixture_config_json(name):
    inp = fixture_input(name)
    from .toricdata import validate as _validate
    return input_echo(_validate(inp))


def _threads():
    raw = os.environ.get("MIRRORCONE_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_validate(args):
    try:
        inp = load_config(args.config)
    except ConfigError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        vt = validate(inp)
    except ToricDataError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(json.dumps({"valid": True, "xi_count": len(vt.xi),
                      "xi0_count": len(vt.xi0)}, sort_keys=True))
    return EXIT_OK


def cmd_analyze(args):
    try:
        inp = load_config(args.config)
    except ConfigError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        vt = validate(inp)
    except ToricDataError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.sections:
        sections = tuple(s.strip() for s in args.sections.split(",") if s.strip())
        unknown = [s for s in sections if s not in ALL_SECTIONS]
        if unknown:
            print(f"input error: unknown sections {unknown}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sections = ["validation", "conditions", "groups", "grading", "bside"]
        if vt.input.weights is not None:
            sections.append("fans")
        if args.algebra:
            sections.append("algebra")
        sections = tuple(sections)
    if "algebra" in sections and args.cutoff is None:
        print("input error: --algebra requires --cutoff N", file=sys.stderr)
        return EXIT_INPUT
    if "fans" in sections and vt.input.weights is None:
        print("input error: fans section needs a lambda in the config",
              file=sys.stderr)
        return EXIT_INPUT

    try:
        report = build_report(vt, sections, algebra_cutoff=args.cutoff,
                              perturb_seed=args.perturb, threads=_threads())
    except (FactorizationCheckFailed, IntertwineCheckFailed, CellLiftFailure,
            ClassificationViolation) as exc:
        print(f"certificate failure [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ToricDataError, FanError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_examples(args):
    if args.action == "list":
        for name in FIXTURE_NAMES:
            print(name)
        return EXIT_OK
    if args.name not in FIXTURE_NAMES:
        print(f"unknown example {args.name!r}; choose from {', '.join(FIXTURE_NAMES)}",
              file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(fixture_config_json(args.name), sort_keys=True, indent=2))
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="mirrorcone",
        description="Combinatorial analysis of generalized Greene-Plesser toric data")
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check the input axioms")
    p_val.add_argument("config")
    p_val.set_defaults(func=cmd_validate)

    p_an = sub.add_parser("analyze", help="run the analysis pipeline")
    p_an.add_argument("config")
    p_an.add_argument("--sections", default=None,
                      help="comma-separated subset of: " + ",".join(ALL_SECTIONS))
    p_an.add_argument("--algebra", action="store_true",
                      help="include the graded-algebra section")
    p_an.add_argument("--cutoff", type=int, default=None,
                      help="z-degree cutoff for the algebra section")
    p_an.add_argument("--perturb", type=int, default=None, metavar="SEED",
                      help="refine non-simplicial cells by lexicographic perturbation")
    p_an.add_argument("--out", default=None, help="write the report to a file")
    p_an.set_defaults(func=cmd_analyze)

    p_ex = sub.add_parser("examples", help="list or show the builtin fixtures")
    p_ex.add_argument("action", choices=("list", "show"))
    p_ex.add_argument("name", nargs="?")
    p_ex.set_defaults(func=cmd_examples)

    args = parser.parse_args(argv)
    if args.command == "examples" and args.action == "show" and not args.name:
        parser.error("examples show requires a name")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
