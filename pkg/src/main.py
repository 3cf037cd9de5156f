"""Command-line entry point.

Exit codes: 0 on success, 1 when a check fails, 2 on usage errors and bad input.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from .algebra.groebner import GroebnerSolver, Ideal
from .algebra.modular import ModularGroebner, verify_decomposition
from .algebra.parser import parse_poly
from .algebra.rings import TermOrder, make_ring
from .config import AnalysisConfig
from .dynamics.bifurcation import BifurcationAnalyzer, restrict
from .dynamics.conditions import center_condition
from .dynamics.darboux import expand_linearization, search_factors, verify_certificate
from .dynamics.linquant import LinearizabilityComputer
from .dynamics.numeric import numeric_period
from .dynamics.period import PeriodComputer
from .dynamics.systems import ComplexSystem, PlanarSystem
from .errors import AnalysisError, CertificateError, NotACenterError, SeriesCapError, SystemFileError
from .geometry.compactify import blow_up, chart_field, divisor_equilibria, infinite_singulars
from .geometry.portrait import render_portrait
from .reproduce import run_fixtures
from .utils.file_handling import FileHandler

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
VARIETIES = tuple(f"I{k}" for k in range(1, 8))

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False, log_file: Optional[str] = None):
    """Configure logging for the application; stdout stays reserved for JSON."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isochron", description=__doc__.splitlines()[0])
    parser.add_argument("--prime", type=int, help="first prime of the modular pipeline")
    parser.add_argument("--tol", type=float, help="relative tolerance of numeric integration")
    parser.add_argument("--series-cap", type=int, help="largest admissible series order")
    parser.add_argument("--workers", type=int, help="thread pool size")
    parser.add_argument("--pretty", action="store_true", help="indented JSON")
    parser.add_argument("--json", action="store_true", help="compact JSON (default)")
    parser.add_argument("--out", help="write the JSON report to this file")
    parser.add_argument("--log-file", help="also log to this file")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("linquant", help="linearizability quantities")
    p.add_argument("--system", required=True)
    p.add_argument("--max-order", type=int, default=2)
    p.add_argument("--transform", action="store_true", help="include the linearizing transform")

    p = sub.add_parser("period", help="period constants")
    p.add_argument("--system", required=True)
    p.add_argument("--max-order", type=int, default=2)
    p.add_argument("--variety", choices=VARIETIES, help="restrict the family to a center component")
    p.add_argument("--numeric", type=float, nargs="*", default=[], metavar="R0",
                   help="also integrate the period at these radii")

    p = sub.add_parser("bifurcate", help="weak center order and critical periods")
    p.add_argument("--variety", required=True, choices=VARIETIES)
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--search", action="store_true", help="run the alternating-sign search")
    p.add_argument("--sign-ratio", type=float, help="coefficient ratio of the search (default from config)")

    p = sub.add_parser("verify-darboux", help="check a Darboux linearization certificate")
    p.add_argument("--system", required=True)
    p.add_argument("--cert")
    p.add_argument("--expand", type=int, metavar="N", help="expand the linearization through degree N")
    p.add_argument("--search", type=int, metavar="DEGREE", help="search Darboux factors instead")

    p = sub.add_parser("gb", help="Groebner basis of an ideal file")
    p.add_argument("--ideal", required=True, help='JSON {"vars": [...], "polys": [...]}')
    p.add_argument("--order", choices=TermOrder.KINDS, default="grevlex")
    p.add_argument("--radical", help="test membership of this polynomial in the radical")
    p.add_argument("--decomposition", help='JSON {"components": [[...], ...]} to verify')

    p = sub.add_parser("compactify", help="Poincare compactification charts")
    p.add_argument("--system", required=True)
    p.add_argument("--chart", default="u1", choices=[c.lower() for c in ("U1", "U2", "U3", "V1", "V2", "V3")])
    p.add_argument("--singulars", action="store_true", help="locate infinite singular points")
    p.add_argument("--blow-up", nargs="+", choices=("u", "v"), metavar="DIR",
                   help="blow up the chart origin along these directions")

    p = sub.add_parser("portrait", help="phase portrait on the Poincare disc")
    p.add_argument("--system", required=True)
    p.add_argument("--seeds", default="seeds.json")
    p.add_argument("--out", dest="svg_out", required=True, help="SVG output file")
    p.add_argument("--csv", help="CSV samples output file")

    p = sub.add_parser("reproduce", help="run the bundled fixtures")
    p.add_argument("--all", action="store_true", help="include the long checks")
    p.add_argument("--timing", action="store_true", help="include timings in the report")
    return parser


def _system(path):
    loaded = FileHandler.load_system(path)
    return loaded, loaded.system


def cmd_linquant(args, config: AnalysisConfig) -> dict:
    loaded, system = _system(args.system)
    quantities, transform = LinearizabilityComputer(config).compute(system, args.max_order)
    result = {"system": loaded.name, "digest": loaded.digest, "quantities": quantities.to_json()}
    if args.transform:
        result["transform"] = {"U": {str(d): str(u) for d, u in transform.U.items()},
                               "V": {str(d): str(v) for d, v in transform.V.items()}}
    return result


def cmd_period(args, config: AnalysisConfig) -> dict:
    loaded, system = _system(args.system)
    if not isinstance(system, PlanarSystem):
        raise SystemFileError("period constants need a real system with linear part (-y, x)", loaded.path)
    center = None
    if args.variety:
        restriction = restrict(center_condition(args.variety), system)
        system, center = restriction.system, restriction.ideal
    coefficients = PeriodComputer(config).compute(system, args.max_order, center)
    result = {"system": loaded.name, "digest": loaded.digest, "p": coefficients.to_json()}
    if args.numeric:
        values = loaded.numeric_values()
        result["numeric"] = [{"r0": r0, "T": numeric_period(system, r0, values, config)}
                             for r0 in args.numeric]
    return result


def cmd_bifurcate(args, config: AnalysisConfig) -> dict:
    cc = center_condition(args.variety)
    analyzer = BifurcationAnalyzer(config)
    report = analyzer.weak_center_order(cc, args.max_order)
    result = report.to_dict()
    if args.search:
        result["search"] = analyzer.alternating_sign_search(cc, report, ratio=args.sign_ratio).to_dict()
    return result


def cmd_verify_darboux(args, config: AnalysisConfig) -> dict:
    loaded, system = _system(args.system)
    if not isinstance(system, ComplexSystem):
        raise SystemFileError("Darboux certificates need a system in z, w", loaded.path)
    if args.search:
        factors = search_factors(system, args.search, config)
        return {"system": loaded.name, "factors": [{"f": str(d.f), "K": str(d.K)} for d in factors]}
    if not args.cert:
        raise SystemFileError("either --cert or --search is required", loaded.path)
    cert = FileHandler.load_certificate(args.cert, system)
    report = verify_certificate(cert, system)
    result = {"system": loaded.name, "certificate": cert.system, "passed": report.valid, **report.to_dict()}
    if args.expand and report.valid:
        transform = expand_linearization(cert, system, args.expand)
        result["transform"] = {"U": {str(d): str(u) for d, u in transform.U.items()},
                               "V": {str(d): str(v) for d, v in transform.V.items()}}
    return result


def cmd_gb(args, config: AnalysisConfig) -> dict:
    data = FileHandler.load_json(args.ideal)
    try:
        ring = make_ring(tuple(data["vars"]), order=TermOrder(args.order))
        ideal = Ideal([parse_poly(text, ring) for text in data["polys"]], ring)
    except KeyError as e:
        raise SystemFileError(f"missing key {e}", args.ideal) from e
    solver = GroebnerSolver(config)
    field = "Q"
    if args.prime:
        ideal = ModularGroebner(config).image(ideal, args.prime)
        field = f"F_{args.prime}"
    basis = solver.buchberger(ideal)
    result = {"field": field, "order": args.order, "basis": basis.to_strings(), "unit": basis.is_unit()}
    if args.radical:
        f = parse_poly(args.radical, ring)
        if args.prime:
            f = f.reduce_mod_p(args.prime)
        result["radical_member"] = solver.radical_membership(f, ideal, basis)
    if args.decomposition:
        components = [Ideal([parse_poly(text, ring) for text in gens], ring)
                      for gens in FileHandler.load_json(args.decomposition)["components"]]
        source = Ideal([parse_poly(text, ring) for text in data["polys"]], ring)
        report = verify_decomposition(source, components, args.prime or "Q", config=config)
        result["decomposition"] = report.to_dict()
        result["passed"] = report.passed()
    return result


def cmd_compactify(args, config: AnalysisConfig) -> dict:
    loaded, system = _system(args.system)
    chart = chart_field(system, args.chart.upper())
    result = {"system": loaded.name, **chart.to_strings()}
    if args.singulars:
        found = infinite_singulars(system)
        result["singulars"] = {name: [p.to_dict() for p in points] or "none" for name, points in found.items()}
    if args.blow_up:
        chain = blow_up(chart, args.blow_up)
        result["blow_up"] = chain.to_dict()
        result["divisor"] = divisor_equilibria(chain)
    return result


def cmd_portrait(args, config: AnalysisConfig) -> dict:
    loaded, system = _system(args.system)
    seeds = FileHandler.load_seeds(args.seeds)
    svg, csv_text = render_portrait(system, seeds, loaded.numeric_values(), config)
    FileHandler.write_output(args.svg_out, svg)
    if args.csv:
        FileHandler.write_output(args.csv, csv_text)
    return {"system": loaded.name, "seeds": len(seeds), "svg": args.svg_out, "csv": args.csv,
            "svg_digest": FileHandler.digest(svg)}


def cmd_reproduce(args, config: AnalysisConfig) -> dict:
    report = run_fixtures(include_slow=args.all, config=config)
    return report.to_dict(timing=args.timing)


COMMANDS = {
    "linquant": cmd_linquant,
    "period": cmd_period,
    "bifurcate": cmd_bifurcate,
    "verify-darboux": cmd_verify_darboux,
    "gb": cmd_gb,
    "compactify": cmd_compactify,
    "portrait": cmd_portrait,
    "reproduce": cmd_reproduce,
}


def emit(payload: dict, args) -> str:
    text = json.dumps(payload, sort_keys=True, indent=2 if args.pretty else None, default=str)
    if args.out:
        FileHandler.write_output(args.out, text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return text


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    setup_logging(args.verbose, args.log_file)

    try:
        config = AnalysisConfig.from_args(args)
        payload = COMMANDS[args.command](args, config)
    except (SystemFileError, SeriesCapError, ValueError, KeyError) as e:
        logger.error(f"{args.command}: bad input: {e}")
        return EXIT_USAGE
    except (NotACenterError, CertificateError) as e:
        logger.error(f"{args.command}: check failed: {e}")
        emit({"command": args.command, "passed": False, "error": str(e)}, args)
        return EXIT_FAILED
    except AnalysisError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILED

    emit(payload, args)
    if payload.get("passed") is False:
        return EXIT_FAILED
    logger.info(f"{args.command} completed successfully")
    return EXIT_OK


def run(argv: Optional[List[str]] = None):
    sys.exit(main(argv))


if __name__ == "__main__":
    run()
