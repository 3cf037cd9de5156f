"""Polynomial rings: variable tables, coefficient fields and term orders."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, Tuple

from sympy import GF, QQ, isprime

DEFAULT_VARIABLES = (
    'a02', 'a03', 'b20', 'b11', 'b02', 'b21', 'b12', 'b30',
    'x', 'y', 'z', 'w', 'u', 'v', 'aux',
)

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class Extension:
    """An adjoined square root: the variable `name` reduces by name^2 -> square."""
    name: str
    square: int


IMAGINARY_UNIT = Extension('I', -1)


class TermOrder:
    """Monomial order over the non-extension variables of a ring.

    The variable priority is the ring's symbol order. Kinds:
      lex      -- lexicographic
      grevlex  -- graded reverse lexicographic
      block    -- the first `block` variables form a grevlex block that is
                  compared before the grevlex block of the remaining ones
    """

    KINDS = ('lex', 'grevlex', 'block')

    def __init__(self, kind: str = 'grevlex', block: int = 0):
        if kind not in self.KINDS:
            raise ValueError(f"Unknown term order: {kind}")
        if kind == 'block' and block < 1:
            raise ValueError("Block order needs a positive block size")
        self.kind = kind
        self.block = block if kind == 'block' else 0

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.kind, self.block) == (other.kind, other.block)

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        return f"TermOrder({self.kind!r}{', ' + str(self.block) if self.block else ''})"

    def key_function(self, main: Sequence[int]) -> Callable[[Monomial], Tuple[int, ...]]:
        """Build a flat integer key; larger keys are larger monomials."""
        main = tuple(main)
        if self.kind == 'lex':
            def key(m):
                return tuple(m[i] for i in main)
        elif self.kind == 'grevlex':
            rev = tuple(reversed(main))

            def key(m):
                return (sum(m[i] for i in main),) + tuple(-m[i] for i in rev)
        else:
            first, rest = main[:self.block], main[self.block:]
            rev_first, rev_rest = tuple(reversed(first)), tuple(reversed(rest))

            def key(m):
                return ((sum(m[i] for i in first),) + tuple(-m[i] for i in rev_first)
                        + (sum(m[i] for i in rest),) + tuple(-m[i] for i in rev_rest))
        return key


class CoefficientField:
    """Arithmetic in K = domain or K = domain(sqrt(d)).

    Elements of a quadratic extension are pairs (a, b) meaning a + b*sqrt(d).
    """

    def __init__(self, domain, square: Optional[int] = None):
        self.domain = domain
        self.square = None if square is None else domain(square)
        self.quadratic = square is not None
        if self.quadratic:
            self.zero = (domain.zero, domain.zero)
            self.one = (domain.one, domain.zero)
        else:
            self.zero = domain.zero
            self.one = domain.one

    def is_zero(self, a) -> bool:
        if self.quadratic:
            return a[0] == self.domain.zero and a[1] == self.domain.zero
        return a == self.domain.zero

    def add(self, a, b):
        if self.quadratic:
            return (a[0] + b[0], a[1] + b[1])
        return a + b

    def sub(self, a, b):
        if self.quadratic:
            return (a[0] - b[0], a[1] - b[1])
        return a - b

    def neg(self, a):
        if self.quadratic:
            return (-a[0], -a[1])
        return -a

    def mul(self, a, b):
        if self.quadratic:
            return (a[0] * b[0] + self.square * a[1] * b[1], a[0] * b[1] + a[1] * b[0])
        return a * b

    def inv(self, a):
        if self.quadratic:
            norm = a[0] * a[0] - self.square * a[1] * a[1]
            if norm == self.domain.zero:
                raise ZeroDivisionError("Zero divisor in quadratic extension")
            return (a[0] / norm, -a[1] / norm)
        if a == self.domain.zero:
            raise ZeroDivisionError("Division by zero coefficient")
        return self.domain.one / a


class Ring:
    """A polynomial ring: ordered symbols, coefficient domain, term order and extensions."""

    def __init__(self, symbols: Iterable[str], domain=QQ, order: Optional[TermOrder] = None,
                 extensions: Iterable[Extension] = ()):
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"Duplicate symbols: {self.symbols}")
        self.domain = domain
        self.order = order or TermOrder('grevlex')
        self.extensions = tuple(e for e in extensions if e.name in self.symbols)
        self.index = {s: i for i, s in enumerate(self.symbols)}
        self.nvars = len(self.symbols)
        self.ext = tuple((self.index[e.name], e.square) for e in self.extensions)
        ext_positions = {i for i, _ in self.ext}
        self.main = tuple(i for i in range(self.nvars) if i not in ext_positions)
        self.zero_monomial = (0,) * self.nvars
        self.zero = domain.zero
        self.one = domain.one
        if len(self.ext) > 1:
            self.field = None
        else:
            self.field = CoefficientField(domain, self.ext[0][1] if self.ext else None)

        main_key = self.order.key_function(self.main)
        ext_idx = tuple(i for i, _ in self.ext)

        @lru_cache(maxsize=None)
        def key(m):
            return main_key(m) + tuple(m[i] for i in ext_idx)

        @lru_cache(maxsize=None)
        def heap_key(m):
            return tuple(-k for k in main_key(m))

        self.key = key
        self.main_key = main_key
        self.heap_key = heap_key

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.symbols == other.symbols
                and self.domain == other.domain and self.order == other.order
                and self.extensions == other.extensions)

    def __hash__(self):
        return hash((self.symbols, str(self.domain), self.order, self.extensions))

    def __repr__(self):
        return f"Ring({','.join(self.symbols)}; {self.domain}; {self.order})"

    @property
    def characteristic(self) -> int:
        return int(self.domain.characteristic())

    def extension_names(self) -> Tuple[str, ...]:
        return tuple(e.name for e in self.extensions)

    def clone(self, symbols: Optional[Iterable[str]] = None, domain=None,
              order: Optional[TermOrder] = None) -> "Ring":
        """A ring differing in symbols, domain or order; extensions carry over."""
        return make_ring(tuple(symbols) if symbols is not None else self.symbols,
                         domain if domain is not None else self.domain,
                         order if order is not None else self.order,
                         self.extensions)

    def with_symbols(self, extra: Sequence[str], first: bool = False) -> "Ring":
        """Add fresh symbols in front of or behind the existing ones."""
        extra = tuple(s for s in extra if s not in self.index)
        symbols = extra + self.symbols if first else self.symbols + extra
        return self.clone(symbols=symbols)

    def fresh_symbol(self, stem: str = 'aux') -> str:
        name, k = stem, 0
        while name in self.index:
            k += 1
            name = f"{stem}{k}"
        return name

    def coerce(self, value):
        """Convert an int, Fraction, or domain element into the coefficient domain."""
        if isinstance(value, int):
            return self.domain(value)
        numerator = getattr(value, 'numerator', None)
        denominator = getattr(value, 'denominator', None)
        if numerator is not None and denominator is not None and not callable(numerator):
            return self.domain(int(numerator)) / self.domain(int(denominator))
        return self.domain.convert(value)

    # constructors; imported lazily to keep the module graph acyclic
    def poly(self, terms=None):
        from .poly import MPoly
        return MPoly(self, terms or {})

    def constant(self, value):
        from .poly import MPoly
        c = self.coerce(value)
        if c == self.zero:
            return MPoly(self, {})
        return MPoly(self, {self.zero_monomial: c})

    def gen(self, name: str):
        from .poly import MPoly
        from ..errors import UnknownVariableError
        if name not in self.index:
            raise UnknownVariableError(name)
        m = [0] * self.nvars
        m[self.index[name]] = 1
        return MPoly(self, {tuple(m): self.one})

    def gens(self, names: Iterable[str]):
        return [self.gen(n) for n in names]

    def monomial(self, exponents: dict):
        """Monomial from a name -> exponent mapping."""
        m = [0] * self.nvars
        for name, e in exponents.items():
            m[self.index[name]] = e
        return tuple(m)


@lru_cache(maxsize=None)
def make_ring(symbols: Tuple[str, ...], domain=QQ, order: Optional[TermOrder] = None,
              extensions: Tuple[Extension, ...] = ()) -> Ring:
    """Cached ring constructor so equal rings are shared."""
    return Ring(symbols, domain, order or TermOrder('grevlex'), extensions)


def prime_field(p: int):
    """The prime field F_p with residues in [0, p)."""
    if not isprime(p):
        raise ValueError(f"Modulus is not prime: {p}")
    return GF(p, symmetric=False)
