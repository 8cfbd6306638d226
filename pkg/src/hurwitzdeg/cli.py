"""Command line surface.

One binary with verbs: validate, count, components, pi, bounds,
theta-top, figure, report.  Output is line oriented on stdout;
--machine switches to stable key=value lines carrying the same numbers.
With --cache DIR, results replay byte-identically from a
content-addressed store keyed by canonical input, verb, ceilings and
engine version.  Exit status: 0 success, 1 invalid input, 2 capacity
refusal, 3 model violation.
"""

import argparse
import logging
import os
import sys

from . import cache as result_cache
from .boundary import component_euler_characteristics, source_degree_report
from .braid import decompose_components
from .core import ModelViolationError, require_portrait, validate_branching
from .counting import CapacityError, Ceilings, DEFAULT_CEILINGS, enumerate_marked
from .dynamics import (
    degree_bounds,
    inverse_table,
    polynomiality_index,
    single_valued_band,
    single_valued_conditions,
)
from .portrait_io import PortraitParseError, parse_portrait, print_portrait

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CAPACITY = 2
EXIT_MODEL = 3

log = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true",
                        help="emit stable key=value lines")
    common.add_argument("--ledger", action="store_true",
                        help="dump the cover/branch/vanishing-order audit ledger")
    common.add_argument("--max-degree", type=int, metavar="N",
                        default=DEFAULT_CEILINGS.max_degree,
                        help="refuse inputs of degree above N")
    common.add_argument("--max-classes", type=int, metavar="N",
                        default=DEFAULT_CEILINGS.max_classes,
                        help="refuse enumerations beyond N classes")
    common.add_argument("--cache", metavar="DIR",
                        help="content-addressed result cache directory")

    parser = argparse.ArgumentParser(
        prog="hurwitzdeg",
        description="exact dynamical degrees of Hurwitz self-correspondences",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, help_text in (
        ("validate", "check the combinatorial conditions"),
        ("count", "degree of the branch-configuration map"),
        ("components", "braid orbit decomposition"),
        ("pi", "polynomiality index and cycle report"),
        ("bounds", "certified intervals for all dynamical degrees"),
        ("theta-top", "degree of the source-configuration map"),
        ("report", "full pipeline in one consolidated report"),
    ):
        sp = sub.add_parser(verb, parents=[common], help=help_text)
        sp.add_argument("input", help="portrait file, or - for stdin")
        if verb == "report":
            sp.add_argument("--figures", metavar="DIR",
                            help="also render figures into DIR")

    sp = sub.add_parser("figure", parents=[common],
                        help="log-band CSV for the single-valued inverse")
    sp.add_argument("input", nargs="?", help="portrait file, or - for stdin")
    sp.add_argument("--degree", type=int, help="degree d (explicit mode)")
    sp.add_argument("--points", type=int, help="number of marked points")
    sp.add_argument("--ell0", type=int, help="shortest fully ramified cycle length")
    sp.add_argument("--assume-conditions", action="store_true",
                    help="emit the band even when the conditions fail")
    sp.add_argument("--render", metavar="PATH", help="also render the band to PATH")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    ceilings = Ceilings(
        max_degree=args.max_degree,
        max_classes=args.max_classes,
        max_nodes=DEFAULT_CEILINGS.max_nodes,
    )
    try:
        return _dispatch(args, ceilings)
    except PortraitParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ModelViolationError as exc:
        print(f"model violation: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(lines) -> None:
    for line in lines:
        print(line)


def _dispatch(args, ceilings: Ceilings) -> int:
    if args.verb == "figure":
        return _run_figure(args, ceilings)

    data = parse_portrait(_read_input(args.input))
    report = validate_branching(data)

    if args.verb == "validate":
        if args.machine:
            lines = [f"ok={'true' if report.ok else 'false'}",
                     f"fully_marked={'true' if report.fully_marked else 'false'}"]
            lines += [f"violation_{k}={m}" for k, m in enumerate(report.messages())]
        else:
            if report.ok:
                marked = "yes" if report.fully_marked else "no"
                lines = [f"valid portrait (fully marked: {marked})"]
            else:
                lines = ["invalid:"] + [f"  {m}" for m in report.messages()]
        _emit(lines)
        return EXIT_OK if report.ok else EXIT_INVALID

    if not report.ok:
        for m in report.messages():
            print(m, file=sys.stderr)
        return EXIT_INVALID

    side_effects = getattr(args, "figures", None) or getattr(args, "render", None)
    cache_dir = args.cache if not side_effects else None
    key = None
    if cache_dir:
        tag = args.verb + (";ledger" if args.ledger else "")
        key = result_cache.cache_key(print_portrait(data), tag, ceilings)
        hit = result_cache.load(cache_dir, key)
        if hit is not None:
            _emit(hit["machine"] if args.machine else hit["human"])
            return EXIT_OK

    human, machine = _compute(args, data, ceilings)
    payload = {"human": human, "machine": machine}
    if cache_dir:
        result_cache.store(cache_dir, key, payload)
    _emit(machine if args.machine else human)
    return EXIT_OK


def _compute(args, data, ceilings):
    if args.verb == "count":
        classes = enumerate_marked(data, ceilings)
        return [f"deg_pi1 = {classes.total}"], [f"deg_pi1={classes.total}"]
    if args.verb == "components":
        classes = enumerate_marked(data, ceilings)
        comps = decompose_components(classes)
        return _component_lines(comps)
    if args.verb == "pi":
        require_portrait(data)
        return _pi_lines(polynomiality_index(data))
    if args.verb == "bounds":
        return _bounds_verb(data, ceilings)
    if args.verb == "theta-top":
        return _theta_verb(data, ceilings, args.ledger)
    if args.verb == "report":
        return _report_verb(data, ceilings, args)
    raise AssertionError(args.verb)


def _component_lines(comps):
    human = [f"components = {len(comps.orbits)}"]
    machine = [f"components={len(comps.orbits)}"]
    for k, orbit in enumerate(comps.orbits):
        rep = orbit.representative.hex()
        human.append(f"orbit {k} size {orbit.size} rep {rep}")
        machine.append(f"orbit_{k}_size={orbit.size}")
        machine.append(f"orbit_{k}_rep={rep}")
    return human, machine


def _pi_lines(rep):
    human = [f"pi = {rep.index.render()}",
             f"classification = {rep.classification}"]
    machine = [f"pi={rep.index.render()}",
               f"classification={rep.classification}"]
    if rep.ell0 is not None:
        human.append(f"ell0 = {rep.ell0}")
        machine.append(f"ell0={rep.ell0}")
    for k, cyc in enumerate(rep.cycles):
        pts = ",".join(cyc.points)
        human.append(f"cycle ({pts}) length {cyc.length} product {cyc.ram_product}")
        machine.append(f"cycle_{k}_points={pts}")
        machine.append(f"cycle_{k}_length={cyc.length}")
        machine.append(f"cycle_{k}_product={cyc.ram_product}")
    return human, machine


def _table_lines(table, prefix_h, prefix_m):
    human, machine = [], []
    for row in table.rows:
        pin = " pinned" if row.pinned else ""
        val = f"[{row.lower.render()},{row.upper.render()}]"
        human.append(f"{prefix_h}k={row.k} {val}{pin}")
        machine.append(f"{prefix_m}k{row.k}={val}")
    return human, machine


def _bounds_verb(data, ceilings):
    require_portrait(data)
    classes = enumerate_marked(data, ceilings)
    theta0 = classes.total
    theta_top = None
    if len(data.target_points) == 4:
        theta_top = source_degree_report(data, ceilings).total
    pirep = polynomiality_index(data)
    table = degree_bounds(theta0, theta_top, pirep.index, len(data.target_points))
    human = [f"deg_pi1 = {theta0}"]
    machine = [f"deg_pi1={theta0}"]
    if theta_top is not None:
        human.append(f"theta_top = {theta_top}")
        machine.append(f"theta_top={theta_top}")
    else:
        human.append("theta_top: not computed (needs exactly four marked points)")
        machine.append("theta_top=not-computed")
    human.append(f"pi = {pirep.index.render()}")
    machine.append(f"pi={pirep.index.render()}")
    h, m = _table_lines(table, "", "bound_")
    human += ["bounds:"] + h
    machine += m
    conditions = single_valued_conditions(data)
    if conditions.holds:
        inv = inverse_table(table)
        h, m = _table_lines(inv, "", "inverse_")
        human += ["inverse:"] + h
        machine += m
    return human, machine


def _theta_lines(report):
    human = [f"theta_top = {report.total}",
             f"deg_nu = {report.completion.deg_forget}"]
    machine = [f"theta_top={report.total}",
               f"deg_nu={report.completion.deg_forget}"]
    for comp in report.per_component:
        human.append(
            f"component {comp.orbit_index} size {comp.size} theta_top {comp.value}"
        )
        machine.append(f"theta_top_c{comp.orbit_index}={comp.value}")
    return human, machine


def _ledger_lines(report):
    lines = []
    orbit_of = report.analysis.components.orbit_of
    for si, sa in enumerate(report.analysis.splits):
        lines.append(
            f"ledger split {si} {sa.split.label()} covers {len(sa.covers)} "
            f"total_multiplicity {sa.total_multiplicity}"
        )
        for ci, cover in enumerate(sa.covers):
            profile = ",".join(str(k) for k in cover.node_profile)
            lines.append(
                f"ledger split {si} cover {ci} profile ({profile}) "
                f"multiplicity {cover.multiplicity}"
            )
            for bi, branch in enumerate(sa.branches[ci]):
                lines.append(
                    f"ledger split {si} cover {ci} branch {bi} "
                    f"degree {branch.local_degree} "
                    f"component {orbit_of[branch.smoothed_key]}"
                )
    for a in report.audits:
        side = ",".join(a.side_marks)
        lines.append(
            f"ledger split {a.split_index} cover {a.cover_index} "
            f"branch {a.branch_index} point {a.point} order {a.order} "
            f"side {{{side}}}"
        )
    return lines


def _theta_verb(data, ceilings, want_ledger):
    require_portrait(data)
    if len(data.target_points) != 4:
        line_h = "theta_top: not computed (needs exactly four marked points)"
        return [line_h], ["theta_top=not-computed"]
    report = source_degree_report(data, ceilings)
    human, machine = _theta_lines(report)
    if want_ledger:
        ledger = _ledger_lines(report)
        human += ledger
        machine += ledger
    return human, machine


def _report_verb(data, ceilings, args):
    require_portrait(data)
    validation = validate_branching(data)
    marked = "yes" if validation.fully_marked else "no"
    human = [f"valid portrait (fully marked: {marked})"]
    machine = ["ok=true", f"fully_marked={'true' if validation.fully_marked else 'false'}"]

    classes = enumerate_marked(data, ceilings)
    comps = decompose_components(classes)
    human.append(f"deg_pi1 = {classes.total}")
    machine.append(f"deg_pi1={classes.total}")
    h, m = _component_lines(comps)
    human += h
    machine += m

    pirep = polynomiality_index(data)
    h, m = _pi_lines(pirep)
    human += h
    machine += m

    theta_report = None
    theta_top = None
    if len(data.target_points) == 4:
        theta_report = source_degree_report(data, ceilings)
        theta_top = theta_report.total
        h, m = _theta_lines(theta_report)
        human += h
        machine += m
        chis = component_euler_characteristics(data, classes, comps)
        for k, chi in enumerate(chis):
            human.append(f"component {k} chi {chi}")
            machine.append(f"chi_c{k}={chi}")
    else:
        human.append("theta_top: not computed (needs exactly four marked points)")
        machine.append("theta_top=not-computed")

    n_points = len(data.target_points)
    table = degree_bounds(classes.total, theta_top, pirep.index, n_points)
    h, m = _table_lines(table, "", "bound_")
    human += ["bounds:"] + h
    machine += m

    conditions = single_valued_conditions(data)
    if conditions.holds:
        inv = inverse_table(table)
        h, m = _table_lines(inv, "", "inverse_")
        human += ["inverse:"] + h
        machine += m

    if theta_report is not None:
        for comp in theta_report.per_component:
            ctable = degree_bounds(comp.size, comp.value, pirep.index, n_points)
            h, m = _table_lines(
                ctable, f"component {comp.orbit_index} ", f"bound_c{comp.orbit_index}_"
            )
            human += h
            machine += m

    if args.ledger and theta_report is not None:
        ledger = _ledger_lines(theta_report)
        human += ledger
        machine += ledger

    if getattr(args, "figures", None):
        paths = _render_report_figures(args.figures, table, conditions, data)
        for p in paths:
            human.append(f"figure {p}")
            machine.append(f"figure={p}")
    return human, machine


def _render_report_figures(directory, table, conditions, data):
    from .plotting import render_band, render_bounds

    os.makedirs(directory, exist_ok=True)
    paths = [render_bounds(table, os.path.join(directory, "bounds.png"))]
    if conditions.holds and data.degree > 1:
        band = single_valued_band(
            data.degree, len(data.target_points), conditions.ell0
        )
        paths.append(render_band(band, os.path.join(directory, "band.png")))
    return paths


def _run_figure(args, ceilings: Ceilings) -> int:
    if args.input:
        data = parse_portrait(_read_input(args.input))
        report = validate_branching(data)
        if not report.ok:
            for m in report.messages():
                print(m, file=sys.stderr)
            return EXIT_INVALID
        require_portrait(data)
        conditions = single_valued_conditions(data)
        if not conditions.holds and not args.assume_conditions:
            print("single-valued conditions fail for this portrait "
                  "(use --assume-conditions to emit the band anyway)",
                  file=sys.stderr)
            return EXIT_INVALID
        if conditions.ell0 is None:
            print("no periodic fully ramified point: the band is undefined",
                  file=sys.stderr)
            return EXIT_INVALID
        if not conditions.holds:
            log.warning("conditions fail; band emitted on caller's assertion")
        degree, n_points, ell0 = data.degree, len(data.target_points), conditions.ell0
    else:
        if args.degree is None or args.points is None or args.ell0 is None:
            print("figure needs a portrait file or all of "
                  "--degree, --points, --ell0", file=sys.stderr)
            return EXIT_INVALID
        degree, n_points, ell0 = args.degree, args.points, args.ell0
    band = single_valued_band(degree, n_points, ell0)
    lines = band.csv_lines()
    lyap = band.lyapunov_lower
    lines.append(f"# lyapunov_lower=({lyap.numerator}/{lyap.denominator})*log({degree})")
    lines.append(f"# {band.entropy_note}")
    if args.render:
        from .plotting import render_band

        lines.append(f"# rendered {render_band(band, args.render)}")
    _emit(lines)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
