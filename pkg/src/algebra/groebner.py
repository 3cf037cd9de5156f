"""Buchberger's algorithm, normal forms, radical membership, intersection and elimination."""

import heapq
import logging
from dataclasses import dataclass, field
from operator import sub
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..config import AnalysisConfig
from ..errors import GroebnerLimitError
from .poly import (MPoly, divides, from_rep, monic_rep, monomial_lcm, reduce_rep,
                   to_rep)
from .rings import Monomial, Ring, TermOrder

logger = logging.getLogger(__name__)


class Ideal:
    """An ideal given by generators sharing one ring (and so one term order)."""

    def __init__(self, generators: Iterable[MPoly], ring: Optional[Ring] = None):
        generators = list(generators)
        if ring is None:
            if not generators:
                raise ValueError("Cannot infer the ring of an empty generator list")
            ring = generators[0].ring
        self.ring = ring
        self.generators = [g.to_ring(ring) if g.ring != ring else g
                           for g in generators if not g.is_zero()]

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"Ideal<{', '.join(str(g) for g in self.generators)}>"

    def to_ring(self, ring: Ring) -> "Ideal":
        return Ideal([g.to_ring(ring) for g in self.generators], ring)

    def is_zero(self) -> bool:
        return not self.generators

    def to_strings(self) -> List[str]:
        return [str(g) for g in self.generators]


@dataclass
class GroebnerBasis:
    """A Groebner basis; when `reduced`, elements are monic and sorted by leading monomial."""
    basis: List[MPoly]
    ring: Ring
    reduced: bool = True
    pairs_processed: int = 0
    _divisors: Optional[List[Tuple[Monomial, dict]]] = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def divisors(self) -> List[Tuple[Monomial, dict]]:
        if self._divisors is None:
            self._divisors = [monic_rep(self.ring, to_rep(g)) for g in self.basis]
        return self._divisors

    def reduce(self, f: MPoly) -> MPoly:
        """Normal form of f modulo the basis."""
        if not self.basis:
            return f
        f = f.to_ring(self.ring) if f.ring != self.ring else f
        return from_rep(self.ring, reduce_rep(self.ring, to_rep(f), self.divisors()))

    def contains(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        """True iff the basis is {1}."""
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()

    def leading_monomials(self) -> List[Monomial]:
        return [lm for lm, _ in self.divisors()]

    def to_strings(self) -> List[str]:
        return [str(g) for g in self.basis]


def normal_form(f: MPoly, generators: Sequence[MPoly]) -> MPoly:
    """Remainder of f on division by `generators`, tried in the given order.

    The generators need not form a Groebner basis; the remainder is then only
    determined by the listed order.
    """
    ring = f.ring
    divisors = [monic_rep(ring, to_rep(g.to_ring(ring))) for g in generators if not g.is_zero()]
    if not divisors:
        raise ValueError("normal_form needs at least one nonzero divisor")
    return from_rep(ring, reduce_rep(ring, to_rep(f), divisors))


def s_polynomial(ring: Ring, a: Tuple[Monomial, dict], b: Tuple[Monomial, dict]) -> Dict[Monomial, object]:
    """S-polynomial of two monic reps."""
    field_ = ring.field
    (lm_a, fa), (lm_b, fb) = a, b
    lcm = monomial_lcm(lm_a, lm_b)
    shift_a = tuple(map(sub, lcm, lm_a))
    shift_b = tuple(map(sub, lcm, lm_b))
    out: Dict[Monomial, object] = {}
    for m, c in fa.items():
        if m != lm_a:
            out[tuple(x + y for x, y in zip(m, shift_a))] = c
    for m, c in fb.items():
        if m == lm_b:
            continue
        t = tuple(x + y for x, y in zip(m, shift_b))
        old = out.get(t)
        if old is None:
            out[t] = field_.neg(c)
        else:
            new = field_.sub(old, c)
            if field_.is_zero(new):
                del out[t]
            else:
                out[t] = new
    return out


def _coefficient_bits(ring: Ring, rep: Dict[Monomial, object]) -> int:
    if ring.characteristic:
        return 0
    numer, denom = ring.domain.numer, ring.domain.denom
    values = []
    for c in rep.values():
        values.extend(c if ring.field.quadratic else (c,))
    return max((max(int(numer(v)).bit_length(), int(denom(v)).bit_length()) for v in values), default=0)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class GroebnerSolver:
    """Deterministic Buchberger engine with configurable resource limits."""

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)

    def buchberger(self, ideal: Ideal) -> GroebnerBasis:
        """Reduced Groebner basis of `ideal` under its ring's term order.

        Pairs are selected by smallest lcm (normal strategy); the product and chain
        criteria discard pairs. Raises GroebnerLimitError when the pair count or the
        coefficient size exceeds the configured caps.
        """
        ring = ideal.ring
        if ring.field is None:
            raise ValueError("Groebner bases need at most one extension variable")
        if ideal.is_zero():
            return GroebnerBasis([], ring)

        basis: List[Tuple[Monomial, dict]] = []
        pending = set()
        queue: List[Tuple[tuple, int, int]] = []
        pairs_processed = 0

        def add(rep):
            lm, monic = monic_rep(ring, rep)
            k = len(basis)
            basis.append((lm, monic))
            for i in range(k):
                pending.add((i, k))
                heapq.heappush(queue, (ring.main_key(monomial_lcm(basis[i][0], lm)), i, k))
            return lm

        for g in ideal.generators:
            rep = reduce_rep(ring, to_rep(g), basis) if basis else to_rep(g)
            if not rep:
                continue
            lm = add(rep)
            if not any(lm):
                return self._unit(ring, pairs_processed)

        while queue:
            _, i, j = heapq.heappop(queue)
            if (i, j) not in pending:
                continue
            pending.discard((i, j))
            lm_i, lm_j = basis[i][0], basis[j][0]
            if _coprime(lm_i, lm_j):
                continue
            if self._chain_criterion(basis, pending, i, j):
                continue
            pairs_processed += 1
            if pairs_processed > self.config.max_pairs:
                self.logger.error(f"Groebner pair limit {self.config.max_pairs} exceeded")
                raise GroebnerLimitError("Pair limit exceeded", pairs_processed, len(basis))
            h = reduce_rep(ring, s_polynomial(ring, basis[i], basis[j]), basis)
            if not h:
                continue
            bits = _coefficient_bits(ring, h)
            if bits > self.config.max_coeff_bits:
                self.logger.error(f"Coefficient size {bits} bits exceeds {self.config.max_coeff_bits}")
                raise GroebnerLimitError(f"Coefficient size limit exceeded ({bits} bits)",
                                         pairs_processed, len(basis))
            lm = add(h)
            if not any(lm):
                return self._unit(ring, pairs_processed)

        reduced = self._interreduce(ring, self._minimalize(basis))
        result = GroebnerBasis([from_rep(ring, rep) for _, rep in reduced], ring, True, pairs_processed)
        self.logger.debug(f"Groebner basis with {len(result)} elements after {pairs_processed} pairs")
        if self.config.verify_bases:
            self.check_closure(result)
        return result

    @staticmethod
    def _chain_criterion(basis, pending, i: int, j: int) -> bool:
        lcm = monomial_lcm(basis[i][0], basis[j][0])
        for k, (lm_k, _) in enumerate(basis):
            if k == i or k == j:
                continue
            if not divides(lm_k, lcm):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            return True
        return False

    @staticmethod
    def _unit(ring: Ring, pairs_processed: int) -> GroebnerBasis:
        return GroebnerBasis([ring.constant(1)], ring, True, pairs_processed)

    @staticmethod
    def _minimalize(basis):
        kept = []
        for k, (lm, rep) in enumerate(basis):
            redundant = False
            for l, (other, _) in enumerate(basis):
                if l == k or not divides(other, lm):
                    continue
                if other != lm or l < k:
                    redundant = True
                    break
            if not redundant:
                kept.append((lm, rep))
        return kept

    @staticmethod
    def _interreduce(ring: Ring, basis):
        out = []
        for k, (lm, rep) in enumerate(basis):
            others = basis[:k] + basis[k + 1:]
            out.append((lm, reduce_rep(ring, rep, others) if others else rep))
        out.sort(key=lambda t: ring.main_key(t[0]), reverse=True)
        return out

    def check_closure(self, gb: GroebnerBasis) -> None:
        """Assert every S-polynomial of the basis reduces to zero."""
        divisors = gb.divisors()
        for i in range(len(divisors)):
            for j in range(i + 1, len(divisors)):
                r = reduce_rep(gb.ring, s_polynomial(gb.ring, divisors[i], divisors[j]), divisors)
                if r:
                    raise AssertionError(f"S-polynomial of basis elements {i}, {j} does not reduce to 0")

    # -- derived operations ----------------------------------------------

    def radical_membership(self, f: MPoly, ideal: Ideal, basis: Optional[GroebnerBasis] = None) -> bool:
        """True iff f vanishes on V(ideal), via the basis of <ideal, 1 - t*f> being {1}."""
        if f.is_zero():
            return True
        if basis is not None and basis.contains(f):
            return True
        ring = ideal.ring
        t = ring.fresh_symbol('aux')
        extended = ring.with_symbols([t])
        gens = [g.to_ring(extended) for g in ideal.generators]
        gens.append(extended.constant(1) - extended.gen(t) * f.to_ring(extended))
        return self.buchberger(Ideal(gens, extended)).is_unit()

    def ideal_intersect(self, first: Ideal, second: Ideal) -> Ideal:
        """Generators of first ∩ second by eliminating t from t*first + (1 - t)*second."""
        ring = first.ring
        if first.is_zero() or second.is_zero():
            return Ideal([], ring)
        t = ring.fresh_symbol('aux')
        extended = make_block_ring(ring, t)
        tt = extended.gen(t)
        one = extended.constant(1)
        gens = [tt * g.to_ring(extended) for g in first.generators]
        gens += [(one - tt) * g.to_ring(extended) for g in second.generators]
        gb = self.buchberger(Ideal(gens, extended))
        kept = [g.to_ring(ring) for g in gb.basis if g.degree(t) == 0]
        self.logger.debug(f"Intersection has {len(kept)} generators")
        return Ideal(kept, ring)

    def intersect_all(self, ideals: Sequence[Ideal]) -> Ideal:
        result = ideals[0]
        for other in ideals[1:]:
            result = self.ideal_intersect(result, other)
        return result

    def eliminate(self, ideal: Ideal, variables: Iterable[str]) -> Ideal:
        """Generators of ideal ∩ k[remaining variables], from a lex basis with `variables` greatest."""
        ring = ideal.ring
        variables = [v for v in ring.symbols if v in set(variables)]
        rest = [v for v in ring.symbols if v not in variables]
        lex_ring = ring.clone(symbols=variables + rest, order=TermOrder('lex'))
        gb = self.buchberger(ideal.to_ring(lex_ring))
        kept = [g.to_ring(ring) for g in gb.basis
                if all(g.degree(v) <= 0 for v in variables)]
        return Ideal(kept, ring)


def make_block_ring(ring: Ring, first: str) -> Ring:
    """`ring` with `first` prepended, ordered by a block order eliminating it."""
    return ring.clone(symbols=(first,) + ring.symbols, order=TermOrder('block', 1))


def buchberger(ideal: Ideal, config: Optional[AnalysisConfig] = None) -> GroebnerBasis:
    return GroebnerSolver(config).buchberger(ideal)


def radical_membership(f: MPoly, ideal: Ideal, config: Optional[AnalysisConfig] = None,
                       basis: Optional[GroebnerBasis] = None) -> bool:
    return GroebnerSolver(config).radical_membership(f, ideal, basis)


def ideal_intersect(first: Ideal, second: Ideal, config: Optional[AnalysisConfig] = None) -> Ideal:
    return GroebnerSolver(config).ideal_intersect(first, second)


def eliminate(ideal: Ideal, variables: Iterable[str], config: Optional[AnalysisConfig] = None) -> Ideal:
    return GroebnerSolver(config).eliminate(ideal, variables)
