"""Command-line front end.

Every subcommand prints exact values only (integers and fractions); there
is no floating-point formatting anywhere.  Matrix-valued flags accept
either four comma-separated integers "a,b,c,d" or a generator word such as
"T^3 S T^-1".  --format json emits the same data machine-readably.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .assembly import (
    assembly_to_json_dict,
    compute_invariants,
    load_assembly,
    realize_spec_chi,
    save_assembly,
)
from .errors import GluingError
from .meyer import meyer_function
from .recipes import (
    FillingOutcome,
    recipe_fill_semibundle,
    recipe_fill_torus_bundle,
    recipe_virtual_filling,
    recipe_xn,
)
from .sl2z import (
    GeneratorWord,
    MatrixZ,
    abelianization_class,
    are_conjugate,
    word_to_matrix,
)
from .verify import all_passed, format_line, run_criteria
from .wall import (
    semibundle_trick_signature,
    semibundle_wall_data,
    wall_correction,
    wall_correction_form,
)


class CliError(Exception):
    """User-facing error; the message is printed and the exit status is 1."""


def parse_matrix_flag(text: str, flag: str, unit_det: bool = True) -> MatrixZ:
    """Parse a,b,c,d or a generator word; name the flag in any complaint."""
    matrix = None
    try:
        matrix = MatrixZ.parse(text)
    except ValueError as matrix_error:
        try:
            matrix = word_to_matrix(GeneratorWord.parse(text))
        except ValueError:
            raise CliError(
                f"{flag}: {text!r} is neither a matrix a,b,c,d nor a "
                f"generator word ({matrix_error})"
            )
    if unit_det and matrix.det != 1:
        raise CliError(f"{flag}: determinant must be +1, got {matrix.det}")
    return matrix


def _emit(args, text: str, data: dict) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _vec_text(vec) -> str:
    return "(" + ", ".join(str(x) for x in vec) + ")"


def _vec_json(vec) -> list:
    return [str(x) for x in vec]


# ---------------------------------------------------------------- commands


def cmd_meyer(args) -> int:
    m = parse_matrix_flag(args.matrix, "--matrix")
    value = meyer_function(m)
    _emit(args, str(value), {"matrix": m.compact(), "meyer": str(value)})
    return 0


def cmd_conjugate(args) -> int:
    m1 = parse_matrix_flag(args.m1, "--m1")
    m2 = parse_matrix_flag(args.m2, "--m2")
    res = are_conjugate(m1, m2)
    if res.conjugate:
        text = f"conjugate: yes\nwitness: {res.witness.compact()}"
    else:
        text = "conjugate: no"
    _emit(
        args,
        text,
        {
            "conjugate": res.conjugate,
            "witness": res.witness.compact() if res.witness else None,
        },
    )
    return 0


def cmd_abelian(args) -> int:
    m = parse_matrix_flag(args.matrix, "--matrix")
    cls = abelianization_class(m)
    text = f"class: {cls}\nadditive order: {cls.additive_order}"
    _emit(
        args,
        text,
        {"class": int(cls), "additive_order": cls.additive_order},
    )
    return 0


def cmd_wall(args) -> int:
    phi = parse_matrix_flag(args.phi, "--phi")
    triple = semibundle_wall_data(phi)
    reps, gram = wall_correction_form(triple)
    correction = wall_correction(triple)
    trick = semibundle_trick_signature(phi)
    lines = []
    for label, space in (
        ("A (graph of the reflection twist)", triple.a_minus),
        ("B (core plane)", triple.b_core),
        ("C (reflected graph)", triple.c_plus),
    ):
        basis = ", ".join(_vec_text(v) for v in space.basis())
        lines.append(f"{label}: span {basis}")
    lines.append(f"dim U: {len(reps)}")
    gram_text = "[" + "; ".join(", ".join(str(x) for x in row) for row in gram) + "]"
    lines.append(f"Gram matrix: {gram_text}")
    lines.append(f"correction: {correction}")
    lines.append(f"trick signature: {trick}")
    _emit(
        args,
        "\n".join(lines),
        {
            "phi": phi.compact(),
            "a_minus": [_vec_json(v) for v in triple.a_minus.basis()],
            "b_core": [_vec_json(v) for v in triple.b_core.basis()],
            "c_plus": [_vec_json(v) for v in triple.c_plus.basis()],
            "dim_u": len(reps),
            "gram": [[str(x) for x in row] for row in gram],
            "correction": correction,
            "trick_signature": trick,
        },
    )
    return 0


def cmd_construct_xn(args) -> int:
    if args.n < 0:
        raise CliError("--n: must be a non-negative integer")
    assembly = recipe_xn(args.n)
    report = compute_invariants(assembly)
    text = report.to_text()
    data = {"report": report.to_json_dict()}
    if args.save:
        save_assembly(assembly, args.save)
        text += f"\nsaved: {args.save}"
        data["saved"] = args.save
    _emit(args, text, data)
    return 0


def _emit_outcome(args, outcome: FillingOutcome) -> int:
    lines = [f"status: {outcome.status}"]
    data = {
        "status": outcome.status,
        "cover_degree": outcome.cover_degree,
        "notes": outcome.notes,
        "report": None,
    }
    if outcome.cover_degree != 1:
        lines.append(f"cover degree: {outcome.cover_degree}")
    lines.append(f"notes: {outcome.notes}")
    if outcome.constructed:
        report = compute_invariants(outcome.assembly)
        lines.append(report.to_text())
        data["report"] = report.to_json_dict()
        data["assembly"] = assembly_to_json_dict(outcome.assembly)
    if getattr(args, "save", None):
        if not outcome.constructed:
            raise CliError("--save: no assembly was constructed")
        save_assembly(outcome.assembly, args.save)
        lines.append(f"saved: {args.save}")
        data["saved"] = args.save
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_fill(args) -> int:
    m = parse_matrix_flag(args.matrix, "--matrix")
    if args.target == "torus-bundle":
        return _emit_outcome(args, recipe_fill_torus_bundle(m))
    return _emit_outcome(args, recipe_fill_semibundle(m))


def cmd_virtual_fill(args) -> int:
    m = parse_matrix_flag(args.matrix, "--matrix")
    outcome = recipe_virtual_filling(m, force_degree_12=args.force_degree_12)
    return _emit_outcome(args, outcome)


def cmd_spec_chi(args) -> int:
    try:
        recipe = realize_spec_chi(args.dim, args.chi)
    except ValueError as exc:
        raise CliError(str(exc))
    _emit(args, recipe.describe(), recipe.to_json_dict())
    return 0


def cmd_invariants(args) -> int:
    try:
        assembly = load_assembly(args.file)
    except OSError as exc:
        raise CliError(f"--file: {exc}")
    except (ValueError, KeyError) as exc:
        raise CliError(f"--file: invalid assembly document: {exc}")
    report = compute_invariants(assembly)
    _emit(args, report.to_text(), report.to_json_dict())
    return 0


def cmd_verify_paper(args) -> int:
    results = run_criteria()
    text = "\n".join(format_line(r) for r in results)
    ok = all_passed(results)
    text += f"\n{'all criteria passed' if ok else 'CRITERIA FAILED'}"
    _emit(
        args,
        text,
        {
            "criteria": [
                {
                    "number": r.number,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                }
                for r in results
            ],
            "all_passed": ok,
        },
    )
    return 0 if ok else 1


# ---------------------------------------------------------------- dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourfold",
        description="Exact calculator for aspherical 4-manifolds glued "
        "from torus bundle pieces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(p):
        p.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="output format (default: text)",
        )
        return p

    p = with_format(sub.add_parser("meyer", help="Meyer signature value of a monodromy"))
    p.add_argument("--matrix", required=True)
    p.set_defaults(fn=cmd_meyer)

    p = with_format(sub.add_parser("conjugate", help="decide conjugacy, print a witness"))
    p.add_argument("--m1", required=True)
    p.add_argument("--m2", required=True)
    p.set_defaults(fn=cmd_conjugate)

    p = with_format(sub.add_parser("abelian", help="abelianization class mod 12"))
    p.add_argument("--matrix", required=True)
    p.set_defaults(fn=cmd_abelian)

    p = with_format(sub.add_parser("wall", help="Wall correction data for the semi-bundle trick"))
    p.add_argument("--phi", required=True)
    p.set_defaults(fn=cmd_wall)

    construct = sub.add_parser("construct", help="emit a named assembly")
    csub = construct.add_subparsers(dest="what", required=True)
    p = with_format(csub.add_parser("xn", help="closed assembly with euler = signature = n"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--save", help="export the assembly document to this path")
    p.set_defaults(fn=cmd_construct_xn)

    fill = sub.add_parser("fill", help="aspherical euler-0 filling of a boundary")
    fsub = fill.add_subparsers(dest="target", required=True)
    for target in ("torus-bundle", "semi-bundle"):
        p = with_format(fsub.add_parser(target))
        p.add_argument("--matrix", required=True)
        p.add_argument("--save", help="export the filling assembly to this path")
        p.set_defaults(fn=cmd_fill)

    p = with_format(sub.add_parser("virtual-fill", help="fill a finite cover instead"))
    p.add_argument("--matrix", required=True)
    p.add_argument("--force-degree-12", action="store_true")
    p.add_argument("--save", help="export the filling assembly to this path")
    p.set_defaults(fn=cmd_virtual_fill)

    p = with_format(sub.add_parser("spec-chi", help="realize an Euler characteristic in a dimension"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--chi", type=int, required=True)
    p.set_defaults(fn=cmd_spec_chi)

    p = with_format(sub.add_parser("invariants", help="report on a saved assembly document"))
    p.add_argument("--file", required=True)
    p.set_defaults(fn=cmd_invariants)

    p = with_format(sub.add_parser("verify-paper", help="run every acceptance criterion"))
    p.set_defaults(fn=cmd_verify_paper)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, GluingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
