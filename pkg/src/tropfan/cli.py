"""Command-line front end.

Every command reads one JSON document (``--input``, default stdin) and
writes one JSON report (``--output``, default stdout). The input carries the
polygon, optional explicit marks, optional heights and an optional explicit
subdivision; see the README for the format.

Exit codes: 0 success, 2 unreadable or invalid input, 3 precondition
violated, 4 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import jsonschema

from . import io
from .errors import BudgetExceeded, EmptyCone, PreconditionViolated
from .fan import (
    DEFAULT_BUDGET,
    cone_dim,
    enumerate_effective_subdivisions,
    rank,
    relative_interior_point,
    secondary_cone,
    severi_cone_check,
    subfan_obstruction_witness,
)
from .multiplicity import severi_multiplicity
from .subdivision import classify, concave_hull_values, is_effective, is_effective_subdivision, regular_subdivision
from .svg import render_curve, render_subdivision
from .tropcurve import dual_curve

COMMANDS = ("subdivide", "hull", "classify", "fan", "curve", "multiplicity", "census", "witness")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    """A command was run without something it needs."""


class Job:
    """Parsed input document plus command-line options."""

    def __init__(self, args: argparse.Namespace, doc: dict):
        self.args = args
        self.doc = doc
        self.base = io.decode_polygon(doc)
        self.heights = io.decode_heights(self.base, doc["heights"]) if "heights" in doc else None
        self.given_subdivision = (
            io.decode_subdivision(self.base, doc["subdivision"]) if "subdivision" in doc else None
        )

    def need_heights(self):
        if self.heights is None:
            raise UsageError(f"'{self.args.command}' needs \"heights\" in the input")
        return self.heights

    def subdivision(self):
        """The explicit subdivision if given, else the one induced by the heights."""
        if self.given_subdivision is not None:
            return self.given_subdivision
        if self.heights is None:
            raise UsageError(f"'{self.args.command}' needs \"subdivision\" or \"heights\" in the input")
        return regular_subdivision(self.heights)

    def need_delta(self) -> int:
        if self.args.delta is None:
            raise UsageError(f"'{self.args.command}' needs --delta")
        return self.args.delta

    def header(self) -> dict:
        out = {"command": self.args.command, **io.encode_polygon(self.base)}
        if self.heights is not None:
            out["heights"] = io.encode_heights(self.heights)
        return out


def _subdivide(job: Job):
    S = regular_subdivision(job.need_heights())
    report = job.header()
    report["subdivision"] = io.encode_subdivision(S)
    report["result"] = {"cell_count": len(S.cells), "effective": is_effective_subdivision(S)}
    return report, render_subdivision(S)


def _hull(job: Job):
    psi = job.need_heights()
    report = job.header()
    report["result"] = {
        "concave_hull": io.encode_heights(concave_hull_values(psi)),
        "effective": is_effective(psi),
    }
    return report, None


def _classify(job: Job):
    S = job.subdivision()
    report = job.header()
    report["subdivision"] = io.encode_subdivision(S)
    result = io.encode_classification(classify(S))
    if job.args.delta is not None:
        result["severi_cone"] = io.encode_severi_check(severi_cone_check(S, job.args.delta))
    report["result"] = result
    return report, render_subdivision(S)


def _fan(job: Job):
    S = job.subdivision()
    C = secondary_cone(S)
    report = job.header()
    report["subdivision"] = io.encode_subdivision(S)
    result = {
        "cone": io.encode_cone(C),
        "dimension": cone_dim(C),
        "relative_interior_point": [io.encode_rational(v) for v in relative_interior_point(C)],
    }
    if job.heights is not None:
        result["rank"] = rank(job.heights)
    report["result"] = result
    return report, render_subdivision(S)


def _curve(job: Job):
    curve = dual_curve(job.need_heights())
    report = job.header()
    report["result"] = io.encode_curve(curve)
    return report, render_curve(curve)


def _multiplicity(job: Job):
    S = job.subdivision()
    report = job.header()
    report["subdivision"] = io.encode_subdivision(S)
    report["result"] = io.encode_multiplicity(severi_multiplicity(S, job.args.mode, job.args.l_vs))
    return report, render_subdivision(S)


def _census(job: Job):
    census = enumerate_effective_subdivisions(
        job.base, budget=job.args.budget, seed=job.args.seed
    )
    encoded = io.encode_census(census)
    report = job.header()
    report["result"] = {
        "certificate": encoded["certificate"],
        "entries": encoded["entries"],
        "effective_count": len(census.effective_entries),
    }
    return report, None


def _witness(job: Job):
    w = subfan_obstruction_witness(job.need_heights(), job.need_delta())
    report = job.header()
    report["result"] = io.encode_witness(w)
    return report, None


HANDLERS = {
    "subdivide": _subdivide,
    "hull": _hull,
    "classify": _classify,
    "fan": _fan,
    "curve": _curve,
    "multiplicity": _multiplicity,
    "census": _census,
    "witness": _witness,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropfan",
        description="Regular subdivisions, secondary cones and tropical curves of lattice polygons.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", default="-", help="input JSON file (default: stdin)")
    parser.add_argument("--output", default="-", help="report JSON file (default: stdout)")
    parser.add_argument("--delta", type=int, help="number of nodes")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="census size limit")
    parser.add_argument("--seed", type=int, default=0, help="random seed for the census")
    parser.add_argument("--l-vs", dest="l_vs", type=int, help="use this component count instead of computing it")
    parser.add_argument("--svg", help="also write an SVG drawing to this path")
    parser.add_argument("--mode", choices=("tilde", "full"), default="tilde", help="multiplicity formula")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = json.loads(_read(args.input))
        io.validate_input(doc)
        job = Job(args, doc)
        report, drawing = HANDLERS[args.command](job)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(k) for k in exc.absolute_path) or "document"
        print(f"error: invalid input at {where}: {exc.message}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionViolated, EmptyCone) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write(args.output, io.dumps(report))
    if args.svg:
        if drawing is None:
            print(f"note: '{args.command}' has no drawing; --svg ignored", file=sys.stderr)
        else:
            _write(args.svg, drawing)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
