"""Modular Groebner bases with rational reconstruction, and decomposition checks."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.ntheory.modular import crt

from ..config import AnalysisConfig
from ..errors import GroebnerLimitError, UnluckyPrimeError
from .groebner import GroebnerBasis, GroebnerSolver, Ideal
from .poly import MPoly

logger = logging.getLogger(__name__)

Shape = Tuple[Tuple[Tuple[int, ...], ...], ...]


def rat_reconstruct(residue: int, modulus: int):
    """The unique n/d with |n|, d <= sqrt(modulus/2) and n = residue*d mod modulus.

    Returns a QQ element, or None when no such fraction exists.
    """
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1 or gcd(abs(s1), modulus) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return QQ(r1, s1)


def _shape(gb: GroebnerBasis) -> Shape:
    return tuple(tuple(m for m, _ in g.sorted_terms()) for g in gb.basis)


def _residues(gb: GroebnerBasis, p: int) -> List[int]:
    return [int(c) % p for g in gb.basis for _, c in g.sorted_terms()]


class ModularGroebner:
    """Groebner bases over Q through images modulo several primes."""

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)
        self.solver = GroebnerSolver(self.config)

    def image(self, ideal: Ideal, p: int) -> Ideal:
        """The ideal reduced modulo p (UnluckyPrimeError on a vanishing denominator)."""
        gens = [g.reduce_mod_p(p) for g in ideal.generators]
        ring = ideal.ring.clone(domain=gens[0].ring.domain) if gens else ideal.ring
        return Ideal(gens, ring)

    def basis_mod_p(self, ideal: Ideal, p: int) -> Optional[GroebnerBasis]:
        try:
            return self.solver.buchberger(self.image(ideal, p))
        except UnluckyPrimeError as e:
            self.logger.warning(f"Skipping prime {p}: {e}")
            return None

    def modular_gb(self, ideal: Ideal, primes: Optional[Sequence[int]] = None) -> GroebnerBasis:
        """Reduced basis over Q, accepted once two consecutive reconstructions agree
        and the lifted basis reduces every original generator to zero."""
        ring = ideal.ring
        if ring.ext:
            raise ValueError("Modular Groebner bases are computed over Q only")
        if ideal.is_zero():
            return GroebnerBasis([], ring)
        primes = list(primes or self.config.primes)

        with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
            futures = [executor.submit(self.basis_mod_p, ideal, p) for p in primes]
            images = [future.result() for future in futures]

        groups: Dict[Shape, Tuple[int, List[int]]] = {}
        previous: Dict[Shape, List] = {}
        for p, gb in zip(primes, images):
            if gb is None:
                continue
            shape = _shape(gb)
            residues = _residues(gb, p)
            if shape in groups:
                modulus, acc = groups[shape]
                combined = [int(crt([modulus, p], [a, r])[0]) for a, r in zip(acc, residues)]
                groups[shape] = (modulus * p, combined)
            else:
                if groups:
                    self.logger.warning(f"Basis shape modulo {p} differs from earlier primes")
                groups[shape] = (p, residues)
            modulus, acc = groups[shape]
            lifted = [rat_reconstruct(r, modulus) for r in acc]
            if any(c is None for c in lifted):
                continue
            if previous.get(shape) == lifted:
                candidate = self._assemble(ring, shape, lifted)
                if all(candidate.contains(g) for g in ideal.generators):
                    self.logger.info(f"Modular basis accepted with {len(candidate)} elements "
                                     f"after prime {p}")
                    return candidate
                self.logger.warning(f"Lifted basis modulo {modulus} fails verification over Q")
            previous[shape] = lifted

        raise UnluckyPrimeError("Modular images did not stabilize; supply more primes", primes)

    @staticmethod
    def _assemble(ring, shape: Shape, coefficients: List) -> GroebnerBasis:
        basis = []
        k = 0
        for monomials in shape:
            terms = {}
            for m in monomials:
                terms[m] = coefficients[k]
                k += 1
            basis.append(MPoly(ring, terms))
        return GroebnerBasis(basis, ring, True)


def modular_gb(ideal: Ideal, primes: Optional[Sequence[int]] = None,
               config: Optional[AnalysisConfig] = None) -> GroebnerBasis:
    return ModularGroebner(config).modular_gb(ideal, primes)


@dataclass
class DecompositionReport:
    """One record per tested polynomial: {poly, direction, field, result}."""
    records: List[dict] = field(default_factory=list)
    fields: List[str] = field(default_factory=list)
    note: str = ""

    def add(self, poly: MPoly, direction: str, field_name: str, result: Optional[bool],
            error: Optional[str] = None):
        record = {"poly": str(poly), "direction": direction, "field": field_name, "result": result}
        if error:
            record["error"] = error
        self.records.append(record)
        if field_name not in self.fields:
            self.fields.append(field_name)

    @property
    def forward(self) -> List[Optional[bool]]:
        return [r["result"] for r in self.records if r["direction"] == "forward"]

    @property
    def backward(self) -> List[Optional[bool]]:
        return [r["result"] for r in self.records if r["direction"] == "backward"]

    def passed(self) -> bool:
        return bool(self.records) and all(r["result"] is True for r in self.records)

    def to_dict(self) -> dict:
        return {"records": self.records, "fields": self.fields, "note": self.note,
                "passed": self.passed()}


def field_label(field_spec: Union[str, int]) -> str:
    return "Q" if field_spec in ("Q", 0, None) else f"F_{int(field_spec)}"


def verify_decomposition(generators: Ideal, components: Sequence[Ideal],
                         field_spec: Union[str, int] = "Q", directions=("forward", "backward"),
                         via_intersection: bool = False, note: str = "",
                         config: Optional[AnalysisConfig] = None,
                         report: Optional[DecompositionReport] = None) -> DecompositionReport:
    """Check V(generators) = V(J1) ∪ ... ∪ V(Jm) by radical membership.

    Forward: each generator of the first ideal vanishes on every component.
    Backward: each generator of the intersection of the components vanishes on
    V(generators). Checks that hit a resource limit are recorded with result None.

    Args:
        generators: the ideal L whose variety is decomposed
        components: the ideals J_i of the claimed components
        field_spec: "Q" or a prime p to work over F_p
        directions: which directions to run
        via_intersection: run forward checks against the computed intersection

    Returns:
        A DecompositionReport (appended to `report` when one is given).
    """
    solver = GroebnerSolver(config)
    modular = ModularGroebner(config)
    report = report or DecompositionReport(note=note)
    if note and not report.note:
        report.note = note
    label = field_label(field_spec)

    if label == "Q":
        L, parts = generators, list(components)
    else:
        p = int(field_spec)
        L = modular.image(generators, p)
        parts = [modular.image(c, p) for c in components]

    intersection = None

    def intersect():
        nonlocal intersection
        if intersection is None:
            intersection = solver.intersect_all(parts)
            logger.info(f"Intersection of {len(parts)} components over {label}: "
                        f"{len(intersection)} generators")
        return intersection

    if "forward" in directions:
        bases = None if via_intersection else [solver.buchberger(c) for c in parts]
        for q in L.generators:
            try:
                if via_intersection:
                    result = solver.radical_membership(q, intersect())
                else:
                    result = all(solver.radical_membership(q, c, gb) for c, gb in zip(parts, bases))
                report.add(q, "forward", label, result)
            except GroebnerLimitError as e:
                logger.warning(f"Forward check hit a resource limit: {e}")
                report.add(q, "forward", label, None, str(e))
        passed = sum(1 for r in report.forward if r)
        logger.info(f"Forward checks over {label}: {passed}/{len(report.forward)} passed")

    if "backward" in directions:
        for g in intersect().generators:
            try:
                report.add(g, "backward", label, solver.radical_membership(g, L))
            except GroebnerLimitError as e:
                logger.warning(f"Backward check hit a resource limit: {e}")
                report.add(g, "backward", label, None, str(e))
        passed = sum(1 for r in report.backward if r)
        logger.info(f"Backward checks over {label}: {passed}/{len(report.backward)} passed")

    return report
