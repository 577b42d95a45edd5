"""Command-line front end.

Subcommands mirror the library surface: hypersurface, variety, prevariety,
is-tropical-basis, is-balanced, stable-intersection, and eval. Text output
echoes the session accessor layout (rays as columns, brace lists); JSON output
is the canonical cycle schema with sorted keys and no whitespace variance.
Exit codes: 0 success, 1 domain error, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .errors import (
    ConventionMismatchError,
    DomainError,
    IdealFileError,
    InputError,
)
from .cycles import (
    TropicalCycle,
    WeightedFan,
    cycle_from_dict,
    cycle_to_dict,
    fan_to_dict,
    is_balanced,
)
from .fans import Fan, fan_dim, is_pure
from .linalg import IntMatrix
from .polynomials import IdealSpec, parse_polynomial
from .tropical import (
    is_tropical_basis,
    stable_intersection,
    tropical_evaluate,
    tropical_hypersurface,
    tropical_prevariety,
    tropical_variety,
)

ENV_SEED = "TROP_SEED"


def read_ideal_file(path: str) -> IdealSpec:
    """Parse an ideal file: a `vars:` header line, then one generator per
    line; `#` starts a comment."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise IdealFileError(f"cannot read {path}: {e}") from e
    lines = []
    for line in raw.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise IdealFileError(f"{path}: empty ideal file")
    header = lines[0]
    if not header.lower().startswith("vars:"):
        raise IdealFileError(f"{path}: first line must be 'vars: x,y,...'")
    names = [v.strip() for v in header.split(":", 1)[1].split(",") if v.strip()]
    if not names:
        raise IdealFileError(f"{path}: no variables declared")
    gens = []
    for line in lines[1:]:
        gens.append(parse_polynomial(line, names))
    if not gens:
        raise IdealFileError(f"{path}: no generators")
    return IdealSpec(tuple(names), tuple(gens))


def _matrix_block(m: IntMatrix) -> str:
    if m.ncols == 0 or m.nrows == 0:
        return "(none)"
    return "\n".join("| " + " ".join(str(x) for x in row) + " |"
                     for row in m.entries)


def _brace_list(items) -> str:
    return "{" + ", ".join(items) + "}"


def format_session(obj) -> str:
    """Human-readable block mirroring the rays/maxCones accessor layout."""
    fan = obj if isinstance(obj, Fan) else obj.fan
    lines = ["rays:", _matrix_block(fan.rays),
             "lineality:", _matrix_block(fan.lineality),
             "maxCones: " + _brace_list(
                 _brace_list(str(i) for i in cone) for cone in fan.maximal_cones)]
    if not isinstance(obj, Fan):
        lines.append("multiplicities: " + _brace_list(
            str(m) for m in obj.multiplicities))
    lines.append(f"dim: {fan_dim(fan)}")
    lines.append(f"pure: {'true' if is_pure(fan) else 'false'}")
    if isinstance(obj, TropicalCycle):
        lines.append(f"balanced: {'true' if is_balanced(obj) else 'false'}")
    elif isinstance(obj, WeightedFan):
        lines.append("balanced: n/a")
    return "\n".join(lines) + "\n"


def dumps_canonical(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def format_output(obj, fmt: str, convention: str) -> str:
    if fmt == "json":
        if isinstance(obj, Fan):
            return dumps_canonical(fan_to_dict(obj, convention))
        if isinstance(obj, (TropicalCycle, WeightedFan)):
            return dumps_canonical(cycle_to_dict(obj))
        if isinstance(obj, bool):
            return dumps_canonical({"value": obj})
        if isinstance(obj, Fraction):
            return dumps_canonical({"value": str(obj)})
        raise TypeError(f"cannot format {type(obj)!r}")
    if isinstance(obj, (Fan, TropicalCycle, WeightedFan)):
        return format_session(obj)
    if isinstance(obj, bool):
        return ("true" if obj else "false") + "\n"
    if isinstance(obj, Fraction):
        return str(obj) + "\n"
    raise TypeError(f"cannot format {type(obj)!r}")


def write_cycle(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(cycle_to_dict(obj)))


def read_cycle(path: str, require_weights: bool = True):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise IdealFileError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise IdealFileError(f"{path}: invalid JSON: {e}") from e
    return cycle_from_dict(data, require_weights=require_weights)


def _check_convention(obj, convention: str) -> None:
    if obj.convention != convention:
        raise ConventionMismatchError(
            f"input uses the {obj.convention} convention but the session "
            f"is {convention} (use --max to switch)")


def _parse_point(text: str):
    coords = []
    for part in text.split(","):
        try:
            coords.append(Fraction(part.strip()))
        except (ValueError, ZeroDivisionError):
            raise IdealFileError(f"bad rational coordinate {part.strip()!r}")
    return tuple(coords)


def _parse_vars(text: str):
    return tuple(v.strip() for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max", action="store_true",
                        help="use the max convention (default: min)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH",
                        help="write the result to a file instead of stdout")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for the stable-intersection displacement "
                             f"(defaults to ${ENV_SEED} or 0)")
    common.add_argument("--time", action="store_true",
                        help="report elapsed wall time on stderr")

    parser = argparse.ArgumentParser(
        prog="tropfan",
        description="Exact tropical geometry over Q with trivial valuation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hypersurface", parents=[common],
                       help="tropical hypersurface of one polynomial")
    p.add_argument("poly")
    p.add_argument("--vars", required=True, help="comma-separated names")

    p = sub.add_parser("variety", parents=[common],
                       help="tropical variety of an ideal file")
    p.add_argument("ideal_file")
    p.add_argument("--not-prime", action="store_true",
                   help="flag a non-prime ideal (same exhaustive strategy)")

    p = sub.add_parser("prevariety", parents=[common],
                       help="tropical prevariety of an ideal file")
    p.add_argument("ideal_file")

    p = sub.add_parser("is-tropical-basis", parents=[common],
                       help="do the generators cut out the tropical variety?")
    p.add_argument("ideal_file")

    p = sub.add_parser("is-balanced", parents=[common],
                       help="check the balancing condition of a cycle file")
    p.add_argument("cycle_file")

    p = sub.add_parser("stable-intersection", parents=[common],
                       help="stable intersection of two cycle files")
    p.add_argument("cycle_a")
    p.add_argument("cycle_b")

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate the tropicalization at a point")
    p.add_argument("poly")
    p.add_argument("--vars", required=True)
    p.add_argument("--point", required=True,
                   help="comma-separated rational coordinates; use "
                        "--point=-1,-4 for a leading minus")
    return parser


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError as e:
            raise IdealFileError(f"bad {ENV_SEED} value: {env!r}") from e
    return 0


def dispatch(args) -> str:
    convention = "max" if args.max else "min"
    if args.command == "hypersurface":
        f = parse_polynomial(args.poly, _parse_vars(args.vars))
        return format_output(tropical_hypersurface(f, convention),
                             args.format, convention)
    if args.command == "variety":
        spec = read_ideal_file(args.ideal_file)
        cycle = tropical_variety(spec, prime=not args.not_prime,
                                 convention=convention)
        return format_output(cycle, args.format, convention)
    if args.command == "prevariety":
        spec = read_ideal_file(args.ideal_file)
        fan = tropical_prevariety(list(spec.generators), convention)
        return format_output(fan, args.format, convention)
    if args.command == "is-tropical-basis":
        spec = read_ideal_file(args.ideal_file)
        return format_output(is_tropical_basis(list(spec.generators), convention),
                             args.format, convention)
    if args.command == "is-balanced":
        cycle = read_cycle(args.cycle_file, require_weights=True)
        _check_convention(cycle, convention)
        return format_output(is_balanced(cycle), args.format, convention)
    if args.command == "stable-intersection":
        a = read_cycle(args.cycle_a, require_weights=True)
        b = read_cycle(args.cycle_b, require_weights=True)
        _check_convention(a, convention)
        _check_convention(b, convention)
        return format_output(stable_intersection(a, b, seed=_seed(args)),
                             args.format, convention)
    if args.command == "eval":
        f = parse_polynomial(args.poly, _parse_vars(args.vars))
        value = tropical_evaluate(f, _parse_point(args.point), convention)
        return format_output(value, args.format, convention)
    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        output = dispatch(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    finally:
        if getattr(args, "time", False):
            elapsed = time.monotonic() - started
            print(f"-- {elapsed:.6f} seconds elapsed", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
