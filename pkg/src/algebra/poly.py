"""Sparse exact multivariate polynomials."""

import heapq
from fractions import Fraction
from math import gcd
from operator import add, sub
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import UnknownVariableError, UnluckyPrimeError
from .rings import Monomial, Ring, make_ring, prime_field


class MPoly:
    """A polynomial as a map from exponent tuples to nonzero domain coefficients.

    Values are treated as immutable: no method mutates `terms` after construction.
    Extension variables (for instance I with I^2 = -1) never carry an exponent
    above one.
    """

    __slots__ = ('ring', 'terms', '_hash')

    def __init__(self, ring: Ring, terms: Optional[Dict[Monomial, object]] = None):
        self.ring = ring
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_monomial in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring.zero_monomial, self.ring.zero)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring.symbols == other.ring.symbols and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.symbols, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .parser import render
        return render(self)

    __str__ = __repr__

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Optional["MPoly"]:
        if isinstance(other, MPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                if other.ring.symbols == self.ring.symbols and other.ring.domain == self.ring.domain:
                    return MPoly(self.ring, other.terms)
                raise ValueError(f"Ring mismatch: {self.ring} vs {other.ring}")
            return other
        try:
            return self.ring.constant(other)
        except Exception:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        zero = self.ring.zero
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s == zero:
                    del terms[m]
                else:
                    terms[m] = s
        return MPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "MPoly":
        """Multiply by a domain element."""
        if c == self.ring.zero:
            return MPoly(self.ring, {})
        return MPoly(self.ring, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                c = self.ring.coerce(other)
            except Exception:
                return NotImplemented
            return self.scale(c)
        other = self._coerce(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        ring = self.ring
        zero = ring.zero
        ext = ring.ext
        terms: Dict[Monomial, object] = {}
        get = terms.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(map(add, m1, m2))
                c = c1 * c2
                if ext:
                    for i, sq in ext:
                        if m[i] > 1:
                            q, r = divmod(m[i], 2)
                            c = c * ring.domain(sq) ** q
                            m = m[:i] + (r,) + m[i + 1:]
                s = get(m)
                terms[m] = c if s is None else s + c
        return MPoly(ring, {m: c for m, c in terms.items() if c != zero})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if other.is_constant() and not other.is_zero():
                return self.scale(self.ring.one / other.constant_coefficient())
            return exact_divide(self, other)
        c = self.ring.coerce(other)
        return self.scale(self.ring.one / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"Exponent must be a non-negative integer: {n}")
        result = self.ring.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, shift: Monomial, c=None) -> "MPoly":
        """Multiply by c * x^shift for a monomial free of extension variables."""
        if c is None:
            return MPoly(self.ring, {tuple(map(add, m, shift)): v for m, v in self.terms.items()})
        if c == self.ring.zero:
            return MPoly(self.ring, {})
        return MPoly(self.ring, {tuple(map(add, m, shift)): v * c for m, v in self.terms.items()})

    # -- structure -------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        """Terms in descending term order (extension exponents break ties)."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return tuple(self.ring.symbols[i] for i in sorted(used))

    def degree(self, var: Optional[str] = None) -> int:
        """Total degree over the main variables, or the degree in `var`. Zero polynomial: -1."""
        if not self.terms:
            return -1
        if var is None:
            main = self.ring.main
            return max(sum(m[i] for i in main) for m in self.terms)
        i = self._index(var)
        return max(m[i] for m in self.terms)

    def total_degree(self, variables: Sequence[str]) -> int:
        if not self.terms:
            return -1
        idx = [self._index(v) for v in variables]
        return max(sum(m[i] for i in idx) for m in self.terms)

    def _index(self, var: str) -> int:
        try:
            return self.ring.index[var]
        except KeyError:
            raise UnknownVariableError(var) from None

    def coefficients_in(self, variables: Sequence[str]) -> Dict[Tuple[int, ...], "MPoly"]:
        """Split into exponent tuples over `variables` and coefficients free of them."""
        idx = [self._index(v) for v in variables]
        out: Dict[Tuple[int, ...], Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            key = tuple(m[i] for i in idx)
            rest = list(m)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: MPoly(self.ring, t) for k, t in out.items()}

    def coefficient(self, exponents: Dict[str, int]) -> "MPoly":
        """Coefficient of the monomial given over some variables, as a polynomial in the others."""
        names = tuple(exponents)
        key = tuple(exponents[n] for n in names)
        return self.coefficients_in(names).get(key, self.ring.poly())

    def homogeneous_components(self, variables: Sequence[str]) -> Dict[int, "MPoly"]:
        idx = [self._index(v) for v in variables]
        out: Dict[int, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            out.setdefault(sum(m[i] for i in idx), {})[m] = c
        return {d: MPoly(self.ring, t) for d, t in out.items()}

    def truncate(self, max_degree: int, variables: Sequence[str]) -> "MPoly":
        idx = [self._index(v) for v in variables]
        return MPoly(self.ring, {m: c for m, c in self.terms.items()
                                 if sum(m[i] for i in idx) <= max_degree})

    def map_coefficients(self, fn: Callable) -> "MPoly":
        zero = self.ring.zero
        terms = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v != zero:
                terms[m] = v
        return MPoly(self.ring, terms)

    # -- calculus and substitution --------------------------------------

    def diff(self, var: str) -> "MPoly":
        """Partial derivative with respect to `var`."""
        i = self._index(var)
        zero = self.ring.zero
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                v = c * e
                if v != zero:
                    terms[m[:i] + (e - 1,) + m[i + 1:]] = v
        return MPoly(self.ring, terms)

    def subs(self, bindings: Dict[str, object]) -> "MPoly":
        """Ring homomorphism sending each bound variable to the given polynomial or scalar."""
        if not bindings:
            return self
        ring = self.ring
        values = {}
        for name, value in bindings.items():
            values[self._index(name)] = value if isinstance(value, MPoly) else ring.constant(value)
        idx = sorted(values)
        groups: Dict[Tuple[int, ...], Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            key = tuple(m[i] for i in idx)
            rest = list(m)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        powers: Dict[Tuple[int, int], MPoly] = {}

        def power(i, e):
            if (i, e) not in powers:
                powers[(i, e)] = values[i] ** e
            return powers[(i, e)]

        result = ring.poly()
        for key, terms in groups.items():
            part = MPoly(ring, terms)
            for i, e in zip(idx, key):
                if e:
                    part = part * power(i, e)
            result = result + part
        return result

    def evaluate(self, values: Dict[str, object]):
        """Evaluate at numbers. Exact for int/Fraction inputs, float/complex otherwise.

        Extension variables evaluate to their square roots (I -> 1j) unless given.
        """
        ring = self.ring
        point = {}
        for name, value in values.items():
            point[self._index(name)] = value
        for i, sq in ring.ext:
            if i not in point:
                point[i] = 1j if sq == -1 else sq ** 0.5
        total = 0
        for m, c in self.terms.items():
            term = _to_number(c, ring)
            for i, e in enumerate(m):
                if e:
                    if i not in point:
                        raise UnknownVariableError(ring.symbols[i])
                    term = term * point[i] ** e
            total = total + term
        return total

    def compile(self, variables: Sequence[str]) -> Callable:
        """A fast float evaluator f(*args) over `variables`; all other symbols must be absent."""
        idx = [self._index(v) for v in variables]
        items = []
        for m, c in self.terms.items():
            for i, e in enumerate(m):
                if e and i not in idx:
                    raise ValueError(f"Cannot compile: free symbol {self.ring.symbols[i]}")
            items.append((float(_to_number(c, self.ring)), tuple(m[i] for i in idx)))

        def f(*args):
            total = 0.0
            for c, exps in items:
                t = c
                for a, e in zip(args, exps):
                    if e:
                        t *= a ** e
                total += t
            return total
        return f

    # -- content and domains ---------------------------------------------

    def content(self):
        """Positive rational content: gcd of numerators over lcm of denominators."""
        ring = self.ring
        if ring.characteristic:
            raise ValueError("Content is defined over Q only")
        if not self.terms:
            return ring.zero
        g, l = 0, 1
        for c in self.terms.values():
            n, d = _numer_denom(c, ring)
            g = gcd(g, abs(n))
            l = l * d // gcd(l, d)
        return ring.domain(g) / ring.domain(l)

    def primitive(self) -> "MPoly":
        """Divide out the positive content; signs are preserved."""
        if not self.terms:
            return self
        return self.scale(self.ring.one / self.content())

    def monic(self) -> "MPoly":
        """Scale so the leading coefficient (over the extension field) is one."""
        if not self.terms:
            return self
        lm, lc = leading(self)
        field = self.ring.field
        return from_rep(self.ring, {m: field.mul(c, field.inv(lc)) for m, c in to_rep(self).items()})

    def to_ring(self, ring: Ring) -> "MPoly":
        """Re-express in a ring with the same coefficient domain and a superset of used symbols."""
        if ring is self.ring:
            return self
        mapping = []
        for i, s in enumerate(self.ring.symbols):
            mapping.append(ring.index.get(s))
        terms = {}
        for m, c in self.terms.items():
            new = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    j = mapping[i]
                    if j is None:
                        raise UnknownVariableError(self.ring.symbols[i])
                    new[j] = e
            terms[tuple(new)] = c if ring.domain == self.ring.domain else ring.coerce(c)
        return MPoly(ring, terms)

    def reduce_mod_p(self, p: int) -> "MPoly":
        """Image in F_p; raises UnluckyPrimeError if a denominator vanishes mod p."""
        field = prime_field(p)
        target = self.ring.clone(domain=field)
        terms = {}
        for m, c in self.terms.items():
            n, d = _numer_denom(c, self.ring)
            if d % p == 0:
                raise UnluckyPrimeError(f"Denominator {d} divisible by {p}", [p])
            v = field(n) / field(d)
            if v != field.zero:
                terms[m] = v
        return MPoly(target, terms)


def _numer_denom(c, ring: Ring) -> Tuple[int, int]:
    return int(ring.domain.numer(c)), int(ring.domain.denom(c))


def _to_number(c, ring: Ring):
    if ring.characteristic:
        return int(c) % ring.characteristic
    n, d = _numer_denom(c, ring)
    return Fraction(n, d)


# -- representation over the coefficient field K = Q, F_p or Q(sqrt d) ------
#
# A rep is a dict main-monomial -> K element where extension exponents are
# folded into the coefficient. Groebner and division code works on reps.

def to_rep(f: MPoly) -> Dict[Monomial, object]:
    ring = f.ring
    if not ring.ext:
        return dict(f.terms)
    if ring.field is None:
        raise ValueError("Division needs at most one extension variable")
    i = ring.ext[0][0]
    zero = ring.zero
    rep: Dict[Monomial, list] = {}
    for m, c in f.terms.items():
        base = m[:i] + (0,) + m[i + 1:]
        slot = rep.setdefault(base, [zero, zero])
        slot[m[i]] = slot[m[i]] + c
    return {m: (a, b) for m, (a, b) in rep.items()}


def from_rep(ring: Ring, rep: Dict[Monomial, object]) -> MPoly:
    if not ring.ext:
        return MPoly(ring, {m: c for m, c in rep.items() if c != ring.zero})
    i = ring.ext[0][0]
    zero = ring.zero
    terms = {}
    for m, (a, b) in rep.items():
        if a != zero:
            terms[m] = a
        if b != zero:
            terms[m[:i] + (1,) + m[i + 1:]] = b
    return MPoly(ring, terms)


def leading(f: MPoly):
    """Leading main monomial and its coefficient in K."""
    rep = to_rep(f)
    key = f.ring.main_key
    lm = max(rep, key=key)
    return lm, rep[lm]


def divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monic_rep(ring: Ring, rep: Dict[Monomial, object]):
    """(leading monomial, rep scaled to a unit leading coefficient)."""
    field = ring.field
    lm = max(rep, key=ring.main_key)
    inv = field.inv(rep[lm])
    return lm, {m: field.mul(c, inv) for m, c in rep.items()}


def reduce_rep(ring: Ring, p: Dict[Monomial, object], divisors: Sequence[Tuple[Monomial, dict]],
               quotients: bool = False):
    """Full multivariate division of p by monic divisors (lm, rep), tried in list order.

    Returns the remainder, and the list of quotient reps when requested.
    """
    field = ring.field
    heap_key = ring.heap_key
    p = dict(p)
    remainder: Dict[Monomial, object] = {}
    quots = [dict() for _ in divisors] if quotients else None
    heap = [(heap_key(m), m) for m in p]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = p.get(m)
        if c is None:
            continue
        for k, (lm, g) in enumerate(divisors):
            if divides(lm, m):
                shift = tuple(map(sub, m, lm))
                del p[m]
                if quotients:
                    quots[k][shift] = c
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = tuple(map(add, gm, shift))
                    prod = field.mul(c, gc)
                    old = p.get(t)
                    if old is None:
                        p[t] = field.neg(prod)
                        heapq.heappush(heap, (heap_key(t), t))
                    else:
                        new = field.sub(old, prod)
                        if field.is_zero(new):
                            del p[t]
                        else:
                            p[t] = new
                break
        else:
            remainder[m] = p.pop(m)
    if quotients:
        return remainder, quots
    return remainder


def divide(f: MPoly, g: MPoly) -> Tuple[MPoly, MPoly]:
    """Quotient and remainder of f by a single nonzero g."""
    if g.is_zero():
        raise ZeroDivisionError("Division by the zero polynomial")
    ring = f.ring
    field = ring.field
    g_rep = to_rep(g)
    lm, monic = monic_rep(ring, g_rep)
    inv_lc = field.inv(g_rep[lm])
    rem, (q,) = reduce_rep(ring, to_rep(f), [(lm, monic)], quotients=True)
    q = {m: field.mul(c, inv_lc) for m, c in q.items()}
    return from_rep(ring, q), from_rep(ring, rem)


def exact_divide(f: MPoly, g: MPoly) -> MPoly:
    q, r = divide(f, g)
    if not r.is_zero():
        raise ValueError("Polynomial division is not exact")
    return q


def monomial_content(f: MPoly, variables: Sequence[str]) -> Dict[str, int]:
    """Largest monomial over `variables` dividing every term."""
    idx = {v: f.ring.index[v] for v in variables}
    return {v: min((m[i] for m in f.terms), default=0) for v, i in idx.items()}


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Sylvester resultant of f and g with respect to `var` (fraction-free Bareiss determinant)."""
    m, n = f.degree(var), g.degree(var)
    if m < 1 or n < 1:
        raise ValueError(f"Resultant needs positive degree in {var}: got {m} and {n}")
    ring = f.ring
    fc = _coefficient_list(f, var, m)
    gc = _coefficient_list(g, var, n)
    size = m + n
    zero = ring.poly()
    matrix = []
    for i in range(n):
        matrix.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        matrix.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return _bareiss_determinant(matrix)


def _coefficient_list(f: MPoly, var: str, degree: int) -> List[MPoly]:
    coeffs = f.coefficients_in((var,))
    return [coeffs.get((degree - k,), f.ring.poly()) for k in range(degree + 1)]


def _bareiss_determinant(matrix: List[List[MPoly]]) -> MPoly:
    a = [row[:] for row in matrix]
    size = len(a)
    ring = a[0][0].ring
    sign = 1
    prev = ring.constant(1)
    for k in range(size - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, size):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ring.poly()
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev) if not prev.is_constant() else num / prev
            a[i][k] = ring.poly()
        prev = a[k][k]
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def lift_rational(f: MPoly, ring: Ring) -> MPoly:
    """Copy a polynomial with integer-valued coefficients into a ring over Q."""
    return MPoly(ring, {m: ring.domain(int(c)) for m, c in f.terms.items()})


def ring_over(symbols: Iterable[str], **kwargs) -> Ring:
    return make_ring(tuple(symbols), **kwargs)
