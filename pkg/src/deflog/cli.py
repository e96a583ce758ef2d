"""Command-line front end.

Subcommands: `conclusions`, `transform`, `check`, `classify`, `gen`.
Input is a `.dfl` file path or `-` for stdin.  Exit codes: 0 success (or
checked property holds), 1 checked property fails, 2 parse error, 3
precondition or semantic error.  All report metadata is emitted as `%`
comments so outputs remain parseable `.dfl` streams, and every subcommand
is deterministic.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import classify, equivalent, gen_theory, pair_table
from .core import (
    Atom,
    DeflogError,
    Literal,
    Theory,
    check_normal,
    check_well_formed,
    ground,
)
from .engine import Mode, conclusions
from .parser import ParseError, parse, print_theory
from .transform import elim_dft, elim_sup, normal, pipeline

EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_PARSE_ERROR = 2
EXIT_PRECONDITION = 3

_STAGES = {
    "normal": normal,
    "elim-dft": elim_dft,
    "elim-sup": elim_sup,
    "pipeline": pipeline,
}


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load(path: str, allow_generated: bool) -> Theory:
    return parse(_read_source(path), allow_generated=allow_generated)


def _split_atoms(listing: str | None) -> list[str]:
    if not listing:
        return []
    return [name for name in listing.split(",") if name]


def _prepare(theory: Theory, do_ground: bool) -> Theory:
    if do_ground:
        return ground(theory)
    if not theory.is_ground:
        raise DeflogError("theory is not ground (pass --ground to expand schemas)")
    return theory


def _cmd_conclusions(args: argparse.Namespace) -> int:
    theory = _prepare(_load(args.input, args.allow_generated), args.ground)
    mode = Mode.REDUCED if args.mode == "reduced" else Mode.FULL
    result = conclusions(theory, mode, extra_atoms=_split_atoms(args.atoms))
    for line in result.lines():
        print(line)
    return EXIT_OK


def _cmd_transform(args: argparse.Namespace) -> int:
    theory = _load(args.input, args.allow_generated)
    result, report = _STAGES[args.stage](theory)
    sys.stdout.write(print_theory(result))
    if args.report:
        print(f"% input: facts={report.input_facts} rules={report.input_rules}"
              f" superiority={report.input_superiority} size={report.input_size}")
        print(f"% output: facts={report.output_facts} rules={report.output_rules}"
              f" superiority={report.output_superiority} size={report.output_size}")
        print(f"% growth-factor: {report.growth_factor:.3f}")
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    theory = _load(args.input, args.allow_generated)
    if args.what == "well-formed":
        report = check_well_formed(theory)
        if not report.acyclic:
            print("cyclic superiority")
        if not report.complementary:
            print("superiority between rules with non-complementary heads")
        print(f"well-formed: {'yes' if report.ok else 'no'}")
        return EXIT_OK if report.ok else EXIT_PROPERTY_FAILS
    if args.what == "normal":
        report = check_normal(theory)
        print(f"literal rule condition: {'yes' if report.literal_rule_condition else 'no'}")
        print(f"no strict rule in superiority: {'yes' if report.no_strict_in_sup else 'no'}")
        print(f"no facts: {'yes' if report.no_facts else 'no'}")
        print(f"normal form: {'yes' if report.ok else 'no'}")
        return EXIT_OK if report.ok else EXIT_PROPERTY_FAILS
    # equiv
    if not args.other:
        raise DeflogError("check --what equiv needs a second theory file")
    other = _load(args.other, True)
    sigma = _split_atoms(args.sigma) or None
    same = equivalent(theory, other, sigma)
    shown = ",".join(sorted(_split_atoms(args.sigma))) if args.sigma else "common language"
    print(f"equivalent over {shown}: {'yes' if same else 'no'}")
    return EXIT_OK if same else EXIT_PROPERTY_FAILS


def _parse_atom(text: str) -> Atom:
    if "(" in text:
        name, _, rest = text.partition("(")
        args = tuple(a.strip() for a in rest.rstrip(")").split(","))
        return Atom(name, args)
    return Atom(text)


def _cmd_classify(args: argparse.Namespace) -> int:
    theory = _prepare(_load(args.input, args.allow_generated), args.ground)
    atom = _parse_atom(args.atom)
    extra = _split_atoms(args.atoms)
    if atom not in theory.atoms and str(atom) not in extra:
        raise DeflogError(f"unknown atom: {atom}")
    result = conclusions(theory, Mode.FULL, extra_atoms=extra)
    positive = classify(result, Literal(atom, True))
    negative = classify(result, Literal(atom, False))
    status = pair_table(positive, negative)
    print(f"{atom}: {positive.value} ~{atom}: {negative.value} pair: {status.value}")
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    theory = gen_theory(
        args.seed,
        num_atoms=args.num_atoms,
        num_rules=args.num_rules,
        num_facts=args.num_facts,
        defeater_fraction=args.defeater_fraction,
        strict_fraction=args.strict_fraction,
        sup_density=args.sup_density,
        force_acyclic=args.force_acyclic,
        force_well_formed=args.force_well_formed,
        force_normalized=args.force_normalized,
    )
    sys.stdout.write(print_theory(theory))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deflog",
        description="Defeasible logic toolkit: conclusions, transformations, checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="path to a .dfl file, or - for stdin")
        p.add_argument("--allow-generated", action="store_true",
                       help="accept $-symbols (reading back transformed theories)")

    p = sub.add_parser("conclusions", help="compute all conclusions")
    add_input(p)
    p.add_argument("--mode", choices=["full", "reduced"], default="full")
    p.add_argument("--ground", action="store_true", help="expand rule schemas first")
    p.add_argument("--atoms", help="comma-separated extra atoms to include in the language")
    p.set_defaults(func=_cmd_conclusions)

    p = sub.add_parser("transform", help="apply a transformation stage")
    add_input(p)
    p.add_argument("--stage", choices=sorted(_STAGES), required=True)
    p.add_argument("--report", action="store_true",
                   help="append size accounting as % comments")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("check", help="check a property of one or two theories")
    add_input(p)
    p.add_argument("--what", choices=["well-formed", "normal", "equiv"], required=True)
    p.add_argument("other", nargs="?", help="second theory (for --what equiv)")
    p.add_argument("--sigma", help="comma-separated atoms defining the language")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("classify", help="outcome of an atom and its negation")
    add_input(p)
    p.add_argument("--atom", required=True)
    p.add_argument("--ground", action="store_true", help="expand rule schemas first")
    p.add_argument("--atoms", help="comma-separated extra atoms to include in the language")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("gen", help="generate a seeded random theory")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--num-atoms", type=int, default=6)
    p.add_argument("--num-rules", type=int, default=10)
    p.add_argument("--num-facts", type=int, default=0)
    p.add_argument("--defeater-fraction", type=float, default=0.0)
    p.add_argument("--strict-fraction", type=float, default=0.0)
    p.add_argument("--sup-density", type=float, default=0.0)
    p.add_argument("--force-acyclic", action="store_true")
    p.add_argument("--force-well-formed", action="store_true")
    p.add_argument("--force-normalized", action="store_true")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except (DeflogError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
