"""Command-line front end: ``transweingarten {curvature,fit,verify,mesh,generate}``.

Exit codes: 0 success, 1 a verification or generation check failed,
2 bad input, 3 nothing admissible to report, 4 a fit found both a and b
nonzero.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import warnings
from dataclasses import replace
from typing import Sequence

from .algebra import MUTATIONS, SUITES, run_suite, suite_json
from .genesis import FAMILIES, integrate_separated_profile, make_family, separated_closed_form
from .surface import Ambient, GridSpec, NoAdmissibleSamplesError, TranslationSurface, dump_surface, load_surface, sample_grid
from .weingarten import GENERAL, InsufficientDataError, TheoremViolationWarning, fit_linear_weingarten

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_EMPTY = 3
EXIT_GENERAL = 4

DEFAULT_COUNT = 21
CHECK_TOLERANCE = 1e-9


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def write_output(path: str, text: str) -> None:
    """Write ``text`` to ``path`` atomically; ``-`` means standard output."""
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt(v: float) -> str:
    return f"{v:.17g}"


# ---------------------------------------------------------------------------
# Surface and grid selection


def resolve_surface(args: argparse.Namespace) -> TranslationSurface:
    given = [name for name in ("surface", "family", "f") if getattr(args, name, None) is not None]
    if len(given) != 1:
        raise CliError("give exactly one of --surface, --family or --f/--g")
    if args.surface is not None:
        try:
            with open(args.surface, encoding="utf-8") as fh:
                surface = load_surface(fh.read())
        except OSError as exc:
            raise CliError(f"cannot read {args.surface}: {exc.strerror}") from None
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CliError(f"bad surface file {args.surface}: {exc}") from None
    elif args.family is not None:
        surface = make_family(args.family, args.lam)
    else:
        if args.g is None:
            raise CliError("--f needs a matching --g")
        surface = TranslationSurface.from_expressions(args.f, args.g)
    if args.ambient is not None:
        surface = replace(surface, ambient=Ambient(args.ambient))
    return surface


def resolve_grid(args: argparse.Namespace, surface: TranslationSurface) -> GridSpec:
    if args.grid is not None:
        return GridSpec.parse(args.grid)

    def axis(domain: tuple[float, float]) -> tuple[float, float]:
        lo, hi = domain
        return (lo if math.isfinite(lo) else -1.0, hi if math.isfinite(hi) else 1.0)

    (x0, x1), (y0, y1) = axis(surface.domain_f), axis(surface.domain_g)
    return GridSpec(x0, x1, DEFAULT_COUNT, y0, y1, DEFAULT_COUNT)


def _samples(args: argparse.Namespace):
    surface = resolve_surface(args)
    grid = resolve_grid(args, surface)
    return surface, grid, sample_grid(surface, grid)


# ---------------------------------------------------------------------------
# Commands


def cmd_curvature(args: argparse.Namespace) -> int:
    _, _, samples = _samples(args)
    lines = ["x,y,H,K,W,valid"]
    for s in samples:
        lines.append(",".join([fmt(s.x), fmt(s.y), fmt(s.H), fmt(s.K), fmt(s.W), "1" if s.valid else "0"]))
    write_output(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    _, _, samples = _samples(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TheoremViolationWarning)
        try:
            fit = fit_linear_weingarten(samples)
        except InsufficientDataError as exc:
            raise CliError(str(exc), EXIT_EMPTY) from None
    write_output(args.out, fit.to_json())
    if fit.verdict.kind == GENERAL:
        print("alarm: fitted relation has both a and b nonzero", file=sys.stderr)
        return EXIT_GENERAL
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(args.suite, args.seed, args.mutate)
    write_output(args.out, suite_json(reports))
    failed = [f"{r.suite}/{s.name}" for r in reports for s in r.steps if not s.passed]
    if failed:
        print(f"failed steps: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def mesh_obj(surface: TranslationSurface, grid: GridSpec, samples) -> tuple[str, int, int]:
    """OBJ text, vertex count and face count for the valid part of a sampled grid."""
    nx = len(grid.xs())
    valid = [s.valid for s in samples]
    index: dict[int, int] = {}
    lines = []
    for k, s in enumerate(samples):
        if valid[k]:
            index[k] = len(index) + 1
            lines.append("v " + " ".join(fmt(c) for c in surface.position(s.x, s.y)))
    faces = 0
    rows = len(samples) // nx
    for j in range(rows - 1):
        for i in range(nx - 1):
            corners = (j * nx + i, j * nx + i + 1, (j + 1) * nx + i + 1, (j + 1) * nx + i)
            if all(valid[c] for c in corners):
                lines.append("f " + " ".join(str(index[c]) for c in corners))
                faces += 1
    return "\n".join(lines) + "\n", len(index), faces


def cmd_mesh(args: argparse.Namespace) -> int:
    surface, grid, samples = _samples(args)
    text, _, faces = mesh_obj(surface, grid, samples)
    if faces == 0:
        raise CliError("no grid cell has four valid corners", EXIT_EMPTY)
    write_output(args.out, text)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    surface = make_family(args.family, args.lam, args.profile)
    if args.check or args.table:
        if args.family != "scherk":
            raise CliError("--check and --table integrate the Scherk profile; use them with the scherk family")
        x_end = 1.0 / args.lam
        table = integrate_separated_profile(args.lam, x_end, args.step / args.lam)
        if args.table:
            write_output(args.table, table.to_csv())
        if args.check:
            deviation = float(max(abs(table.f - separated_closed_form(args.lam, table.x))))
            print(f"check: max deviation {deviation:.3e} on [0, {fmt(x_end)}]", file=sys.stderr)
            if not deviation < CHECK_TOLERANCE:
                write_output(args.out, dump_surface(surface))
                return EXIT_FAILED
    write_output(args.out, dump_surface(surface))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _surface_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--surface", metavar="PATH", help="surface JSON file")
    p.add_argument("--family", choices=FAMILIES, help="named family")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="family parameter (default 1)")
    p.add_argument("--f", metavar="EXPR", help="profile f(t)")
    p.add_argument("--g", metavar="EXPR", help="profile g(t)")
    p.add_argument("--ambient", choices=[a.value for a in Ambient], help="ambient space (default: from the surface)")
    p.add_argument("--grid", metavar="X0:X1:NX,Y0:Y1:NY", help="sample grid (default 21x21 over the domain)")
    p.add_argument("--out", default="-", metavar="PATH", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transweingarten", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", help="sample H, K and W on a grid as CSV")
    _surface_options(p)
    p.set_defaults(run=cmd_curvature)

    p = sub.add_parser("fit", help="fit a H + b K = c and classify")
    _surface_options(p)
    p.set_defaults(run=cmd_fit)

    p = sub.add_parser("mesh", help="export the sampled surface as Wavefront OBJ")
    _surface_options(p)
    p.set_defaults(run=cmd_mesh)

    p = sub.add_parser("verify", help="run the exact identity suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutate", choices=MUTATIONS, help=argparse.SUPPRESS)
    p.add_argument("--out", default="-", metavar="PATH")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("generate", help="emit the surface JSON of a named family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--profile", metavar="EXPR", help="generating curve of a cylinder")
    p.add_argument("--check", action="store_true", help="compare the RK4 profile with the closed form")
    p.add_argument("--step", type=float, default=1e-3, help="RK4 step for lambda = 1 (scaled by 1/lambda)")
    p.add_argument("--table", metavar="PATH", help="also write the RK4 profile table as CSV")
    p.add_argument("--out", default="-", metavar="PATH")
    p.set_defaults(run=cmd_generate)
    return parser


def _join_values(argv: Sequence[str], options: tuple[str, ...] = ("--grid", "--f", "--g", "--profile")) -> list[str]:
    """Attach option values that start with ``-`` (``--grid -1:1:5,...``, ``--f -t^2``)."""
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in options:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    try:
        return args.run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NoAdmissibleSamplesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
