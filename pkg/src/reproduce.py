"""Runs the bundled fixtures and collects their verdicts in a RunReport."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .algebra.groebner import Ideal
from .algebra.modular import verify_decomposition
from .algebra.parser import parse_poly
from .algebra.poly import MPoly
from .config import AnalysisConfig
from .dynamics.bifurcation import BifurcationAnalyzer, residual_I6, restrict
from .dynamics.conditions import center_condition, condition_bindings, linearizability_components
from .dynamics.darboux import verify_certificate
from .dynamics.linquant import LinearizabilityComputer
from .dynamics.numeric import numeric_period
from .dynamics.period import PeriodComputer, matches_up_to_positive_constant
from .dynamics.systems import riccati_family
from .geometry.compactify import blow_up, chart_field, divisor_equilibria, infinite_singulars
from .utils.file_handling import DATA_DIR, FileHandler

logger = logging.getLogger(__name__)

PUBLISHED, DERIVED, TRIVIAL = "published", "derived", "trivial"

# Chart fields of the two global systems, as printed.
CHART_FIXTURES = {
    ("sys2-2without", "U1"): ("1/9 + u*v + v^2 + u^2*v^2", "u*v^3"),
    ("sys2-2without", "U2"): ("-1/9*u^4 - u^2*v - v^2 - u^2*v^2", "-1/9*u^3*v - u*v^2 - u*v^3"),
    ("sys2-3without", "U1"): ("4/9*u^4 + u^2*v + v^2 + u^2*v^2", "4/9*u^3*v + u*v^3"),
    ("sys2-3without", "U2"): ("-4/9 - u*v - v^2 - u^2*v^2", "-v^2 - u*v^3"),
}
ISOCHRONOUS_RADII = (0.1, 0.2, 0.4)
# coefficient ratio at which the critical radii separate under integration
RESOLVABLE_RATIO = 0.5


@dataclass
class CheckResult:
    name: str
    provenance: str
    computed: object = None
    verdict: bool = False
    seconds: float = 0.0
    error: Optional[str] = None

    def to_dict(self, timing: bool = False) -> dict:
        result = {"name": self.name, "provenance": self.provenance, "computed": self.computed,
                  "verdict": self.verdict}
        if self.error:
            result["error"] = self.error
        if timing:
            result["seconds"] = round(self.seconds, 3)
        return result


@dataclass
class RunReport:
    command: str
    digest: str
    checks: List[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.verdict for c in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        result = {
            "command": self.command,
            "digest": self.digest,
            "checks": [c.to_dict(timing) for c in self.checks],
            "passed": self.passed,
        }
        if timing:
            result["seconds"] = round(self.seconds, 3)
        return result


def data_digest() -> str:
    """md5 over the bundled data files in name order."""
    parts = []
    for path in sorted(DATA_DIR.iterdir()):
        if path.is_file():
            parts.append(path.name + "\n" + FileHandler.read_text(path))
    return FileHandler.digest("\n".join(parts))


def _same(computed: MPoly, printed: str) -> bool:
    return computed.primitive() == parse_poly(printed, computed.ring).primitive()


class FixtureRunner:
    """Registry of fixture checks; each returns (computed, verdict)."""

    def __init__(self, config: Optional[AnalysisConfig] = None, include_slow: bool = False):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)
        self.include_slow = include_slow
        self.fixtures = FileHandler.load_json("fixtures.json")
        self.periods = PeriodComputer(self.config)

    def registry(self) -> List[Tuple[str, str, Callable[[], Tuple[object, bool]]]]:
        checks = [("printed-pairs", PUBLISHED, self.printed_pairs)]
        for name in ("1", "2", "3", "4"):
            checks.append((f"linearizable-condition-{name}", PUBLISHED, lambda n=name: self.linearizable(n)))
        for name in ("2", "3", "4"):
            checks.append((f"darboux-certificate-{name}", PUBLISHED, lambda n=name: self.certificate(n)))
        checks.append(("darboux-perturbed", TRIVIAL, self.perturbed_certificate))
        for system, chart in CHART_FIXTURES:
            checks.append((f"chart-{system}-{chart}", PUBLISHED, lambda s=system, c=chart: self.chart(s, c)))
        checks.append(("infinite-singulars", PUBLISHED, self.infinite))
        checks.append(("blow-up-divisor", DERIVED, self.blow_up_divisor))
        for variety in ("I2", "I3"):
            checks.append((f"period-{variety}", PUBLISHED, lambda v=variety: self.period(v, 1)))
        checks.append(("period-I1", PUBLISHED, lambda: self.period("I1", 3 if self.include_slow else 2)))
        checks.append(("period-I6", PUBLISHED, lambda: self.period("I6", 3)))
        checks.append(("residual-I6", PUBLISHED, self.residual))
        checks.append(("weak-center-I6", PUBLISHED, lambda: self.weak_center("I6")))
        checks.append(("isochronous-numeric", DERIVED, self.isochronous_numeric))
        if self.include_slow:
            checks.append(("p8-terms-I1", PUBLISHED, self.p8_terms))
            checks.append(("weak-center-I1", PUBLISHED, lambda: self.weak_center("I1")))
            checks.append(("decomposition", PUBLISHED, self.decomposition))
            checks.append(("sign-search-I6", PUBLISHED, self.sign_search))
        return checks

    # -- checks --------------------------------------------------------

    def printed_pairs(self):
        quantities, _ = LinearizabilityComputer(self.config).compute(riccati_family(), 2)
        printed = self.fixtures["linearizability"]
        names = ("i1", "j1", "i2", "j2")
        matches = {n: _same(q, printed[n]) for n, q in zip(names, quantities.generators())}
        return matches, all(matches.values())

    def linearizable(self, name: str):
        K = 8 if self.include_slow else 3
        family = riccati_family()
        system = family.bind(condition_bindings(name, family.ring), name=f"condition-{name}")
        quantities, _ = LinearizabilityComputer(self.config).compute(system, K)
        return {"order": K, "nonzero": sum(1 for q in quantities.generators() if not q.is_zero())}, \
            quantities.is_zero()

    def certificate(self, name: str):
        loaded = FileHandler.load_system(f"sys{name}-1.sys")
        cert = FileHandler.load_certificate(f"certificate-{name}.json", loaded.system)
        report = verify_certificate(cert, loaded.system)
        return report.to_dict(), report.valid

    def perturbed_certificate(self):
        loaded = FileHandler.load_system("sys2-1.sys")
        cert = FileHandler.load_certificate("certificate-2.json", loaded.system)
        report = verify_certificate(cert.perturbed('z', 2), loaded.system)
        return report.to_dict(), not report.valid

    def chart(self, system_name: str, chart: str):
        system = FileHandler.load_system(f"{system_name}.sys").system
        computed = chart_field(system, chart)
        du, dv = CHART_FIXTURES[(system_name, chart)]
        ring = computed.ring
        verdict = computed.u_dot == parse_poly(du, ring) and computed.v_dot == parse_poly(dv, ring)
        return computed.to_strings(), verdict

    def infinite(self):
        first = infinite_singulars(FileHandler.load_system("sys2-2without.sys").system)
        second = infinite_singulars(FileHandler.load_system("sys2-3without.sys").system)
        null = [[0.0, 0.0], [0.0, 0.0]]
        verdict = (not first['U1'] and len(first['U2']) == 1 and first['U2'][0].jacobian == null
                   and not second['U2'])
        computed = {"sys2-2without": {k: [p.to_dict() for p in v] for k, v in first.items()},
                    "sys2-3without": {k: [p.to_dict() for p in v] for k, v in second.items()}}
        return computed, verdict

    def blow_up_divisor(self):
        system = FileHandler.load_system("sys2-2without.sys").system
        chain = blow_up(chart_field(system, 'U2'), ['u', 'v'])
        points = divisor_equilibria(chain)
        roots = sorted(round(p['u'], 9) for p in points)
        return points, roots == [-6.0, -3.0, 0.0] and all(p["hyperbolic"] for p in points)

    def _restricted_periods(self, variety: str, K: int):
        restriction = restrict(center_condition(variety))
        return self.periods.compute(restriction.system, K, restriction.ideal)

    def period(self, variety: str, K: int):
        coefficients = self._restricted_periods(variety, K)
        printed = self.fixtures["period"][variety]
        matches = {}
        for k in range(1, K + 1):
            key = f"p{2 * k}"
            if key in printed:
                expected = parse_poly(printed[key], coefficients.p2k(k).ring)
                matches[key] = matches_up_to_positive_constant(coefficients.p2k(k), expected)
        return matches, bool(matches) and all(matches.values())

    def residual(self):
        x, y = residual_I6(config=self.config)
        expected = self.fixtures["period"]["I6"]["residual"]
        return [str(x), str(y)], x * expected[1] == y * expected[0] and x * y > 0

    def weak_center(self, variety: str):
        report = BifurcationAnalyzer(self.config).weak_center_order(center_condition(variety), 3)
        printed = self.fixtures["period"][variety]
        return {"order": report.order, "rank": report.rank}, \
            report.order == printed["order"] and report.rank == printed["rank"]

    def isochronous_numeric(self):
        periods = {}
        for name in ("sys2-2without", "sys2-3without"):
            system = FileHandler.load_system(f"{name}.sys").system
            periods[name] = [numeric_period(system, r0, {}, self.config) for r0 in ISOCHRONOUS_RADII]
        verdict = all(abs(T - 2 * math.pi) < 1e-6 for values in periods.values() for T in values)
        return periods, verdict

    def p8_terms(self):
        coefficients = self._restricted_periods("I1", 4)
        terms = len(coefficients.p2k(4).primitive())
        return terms, terms == self.fixtures["period"]["I1"]["p8_terms"]

    def decomposition(self):
        quantities, _ = LinearizabilityComputer(self.config).compute(riccati_family(), 8)
        L = Ideal(quantities.generators())
        components = linearizability_components(L.ring)
        note = ("The quantities through order 8 are used; one extra order would be needed "
                "for a complete statement of the variety.")
        report = verify_decomposition(L, components, "Q", directions=("forward",), note=note, config=self.config)
        for p in self.config.primes[:2]:
            verify_decomposition(L, components, p, directions=("backward",), config=self.config, report=report)
        return report.to_dict(), report.passed()

    def sign_search(self):
        analyzer = BifurcationAnalyzer(self.config)
        result = analyzer.alternating_sign_search(center_condition("I6"), ratio=RESOLVABLE_RATIO)
        return result.to_dict(), len(result.critical_radii) >= 2

    # -- driver --------------------------------------------------------

    def run_check(self, name: str, provenance: str, check) -> CheckResult:
        result = CheckResult(name, provenance)
        start = time.perf_counter()
        try:
            result.computed, result.verdict = check()
            self.logger.info(f"{name}: {'passed' if result.verdict else 'FAILED'}")
        except Exception as e:
            self.logger.error(f"Error in check {name}: {str(e)}")
            result.error = str(e)
        result.seconds = time.perf_counter() - start
        return result

    def run(self) -> RunReport:
        """Run every registered check in parallel; results follow registry order."""
        start = time.perf_counter()
        report = RunReport("reproduce --all" if self.include_slow else "reproduce", data_digest())
        checks = self.registry()
        self.logger.info(f"Found {len(checks)} checks to run")
        with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
            futures = [executor.submit(self.run_check, *item) for item in checks]
            for future in futures:
                report.checks.append(future.result())
        report.seconds = time.perf_counter() - start

        failed = [c.name for c in report.checks if not c.verdict]
        self.logger.info("Reproduction summary:")
        self.logger.info(f"Total checks: {len(report.checks)}")
        self.logger.info(f"Passed: {len(report.checks) - len(failed)}")
        self.logger.info(f"Failed: {len(failed)}")
        if failed:
            self.logger.warning(f"Failed checks: {', '.join(failed)}")
        return report


def run_fixtures(include_slow: bool = False, config: Optional[AnalysisConfig] = None) -> RunReport:
    return FixtureRunner(config, include_slow).run()
