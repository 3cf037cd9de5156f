"""Planar polynomial vector fields and their complexified form."""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

from ..algebra.parser import parse_poly
from ..algebra.poly import MPoly
from ..algebra.rings import IMAGINARY_UNIT, Ring, make_ring

RICCATI_PARAMETERS = ('a02', 'a03', 'b20', 'b11', 'b02', 'b21', 'b12', 'b30')
STATE = ('x', 'y')
COMPLEX_STATE = ('z', 'w')


def analysis_ring(params: Iterable[str] = RICCATI_PARAMETERS, extra: Sequence[str] = ()) -> Ring:
    """Q[params, x, y, z, w, extra, I] with I^2 = -1, graded reverse lex."""
    params = tuple(params)
    symbols = params + tuple(dict.fromkeys(s for s in STATE + COMPLEX_STATE + tuple(extra) if s not in params))
    return make_ring(symbols + ('I',), extensions=(IMAGINARY_UNIT,))


@dataclass(frozen=True)
class PolynomialField:
    """A polynomial vector field (P, Q) in two state variables."""
    P: MPoly
    Q: MPoly
    params: Tuple[str, ...] = ()
    variables: Tuple[str, str] = STATE
    name: str = ''

    @property
    def ring(self) -> Ring:
        return self.P.ring

    @property
    def degree(self) -> int:
        return max(self.P.total_degree(self.variables), self.Q.total_degree(self.variables))

    def components(self) -> Dict[int, Tuple[MPoly, MPoly]]:
        """Homogeneous parts (P_n, Q_n) keyed by degree n in the state variables."""
        p = self.P.homogeneous_components(self.variables)
        q = self.Q.homogeneous_components(self.variables)
        zero = self.ring.poly()
        return {n: (p.get(n, zero), q.get(n, zero)) for n in sorted(set(p) | set(q))}

    def bind(self, bindings: Dict[str, object], name: Optional[str] = None) -> "PolynomialField":
        """Substitute parameters; bound parameters leave the parameter list."""
        params = tuple(p for p in self.params if p not in bindings)
        return type(self)(self.P.subs(bindings), self.Q.subs(bindings), params,
                          self.variables, name if name is not None else self.name)

    def free_parameters(self) -> Tuple[str, ...]:
        used = set(self.P.variables()) | set(self.Q.variables())
        return tuple(p for p in self.params if p in used)

    def vector_field(self, values: Optional[Dict[str, float]] = None) -> Callable:
        """f(t, state) -> [P, Q] for numeric integration at the given parameter values."""
        values = dict(values or {})
        used = self.free_parameters()
        missing = [p for p in used if p not in values]
        if missing:
            raise ValueError(f"Missing numeric values for parameters: {', '.join(missing)}")
        names = tuple(used) + tuple(self.variables)
        fp = self.P.compile(names)
        fq = self.Q.compile(names)
        fixed = tuple(float(values[p]) for p in used)

        def rhs(t, state):
            args = fixed + (state[0], state[1])
            return [fp(*args), fq(*args)]
        return rhs

    def to_strings(self) -> Dict[str, str]:
        return {f"d{self.variables[0]}": str(self.P), f"d{self.variables[1]}": str(self.Q)}


@dataclass(frozen=True)
class PlanarSystem(PolynomialField):
    """x' = -y + P_2 + ..., y' = x + Q_2 + ... : a field with linear part (-y, x)."""

    def __post_init__(self):
        x, y = (self.ring.gen(v) for v in self.variables)
        parts = self.components()
        if 0 in parts and not (parts[0][0].is_zero() and parts[0][1].is_zero()):
            raise ValueError("System has constant terms")
        zero = self.ring.poly()
        p1, q1 = parts.get(1, (zero, zero))
        if p1 != -y or q1 != x:
            raise ValueError(f"Linear part must be (-y, x), got ({p1}, {q1})")

    def nonlinear(self) -> Tuple[MPoly, MPoly]:
        x, y = (self.ring.gen(v) for v in self.variables)
        return self.P + y, self.Q - x


@dataclass(frozen=True)
class ComplexSystem:
    """z' = z + X(z, w), w' = -w - Y(z, w) with X, Y of order at least two."""
    X: MPoly
    Y: MPoly
    params: Tuple[str, ...] = ()
    name: str = ''

    def __post_init__(self):
        for label, f in (("X", self.X), ("Y", self.Y)):
            low = [d for d in f.homogeneous_components(COMPLEX_STATE) if d < 2]
            if low:
                raise ValueError(f"{label} has terms of degree {min(low)}")

    @property
    def ring(self) -> Ring:
        return self.X.ring

    @property
    def zdot(self) -> MPoly:
        return self.ring.gen('z') + self.X

    @property
    def wdot(self) -> MPoly:
        return -self.ring.gen('w') - self.Y

    @property
    def degree(self) -> int:
        return max(self.X.total_degree(COMPLEX_STATE), self.Y.total_degree(COMPLEX_STATE), 1)

    def components(self) -> Dict[int, Tuple[MPoly, MPoly]]:
        x = self.X.homogeneous_components(COMPLEX_STATE)
        y = self.Y.homogeneous_components(COMPLEX_STATE)
        zero = self.ring.poly()
        return {n: (x.get(n, zero), y.get(n, zero)) for n in sorted(set(x) | set(y))}

    def bind(self, bindings: Dict[str, object]) -> "ComplexSystem":
        params = tuple(p for p in self.params if p not in bindings)
        return ComplexSystem(self.X.subs(bindings), self.Y.subs(bindings), params, self.name)

    @classmethod
    def from_equations(cls, zdot: MPoly, wdot: MPoly, params: Tuple[str, ...] = (),
                       name: str = '') -> "ComplexSystem":
        ring = zdot.ring
        return cls(zdot - ring.gen('z'), -(wdot + ring.gen('w')), params, name)


def complexify(system: PlanarSystem) -> ComplexSystem:
    """Image under z = x + iy, w = x - iy with time divided by i.

    With x = (z + w)/2 and y = -i(z - w)/2 this gives z' = Q - iP and
    w' = -(Q + iP).
    """
    ring = system.ring
    z, w, i = ring.gen('z'), ring.gen('w'), ring.gen('I')
    half = ring.constant(1) / 2
    sub = {system.variables[0]: (z + w) * half, system.variables[1]: -i * (z - w) * half}
    p = system.P.subs(sub)
    q = system.Q.subs(sub)
    zdot = q - i * p
    wdot = -(q + i * p)
    return ComplexSystem.from_equations(zdot, wdot, system.params, system.name)


def riccati_family(a03_zero: bool = False, ring: Optional[Ring] = None) -> PlanarSystem:
    """x' = -y + a02 y^2 + a03 y^3, y' = x + b20 x^2 + b11 xy + b02 y^2 + b30 x^3 + b21 x^2 y + b12 xy^2."""
    params = tuple(p for p in RICCATI_PARAMETERS if not (a03_zero and p == 'a03'))
    ring = ring or analysis_ring()
    p_text = "-y + a02*y^2" + ("" if a03_zero else " + a03*y^3")
    q_text = "x + b20*x^2 + b11*x*y + b02*y^2 + b30*x^3 + b21*x^2*y + b12*x*y^2"
    name = "riccati-a03-zero" if a03_zero else "riccati"
    return PlanarSystem(parse_poly(p_text, ring), parse_poly(q_text, ring), params, name=name)


def general_family(n: int) -> PlanarSystem:
    """x' = -y + sum a_pq x^p y^q, y' = x + sum b_pq x^p y^q over 2 <= p + q <= n."""
    if n < 2 or n > 9:
        raise ValueError(f"Family degree must be in 2..9: {n}")
    params = []
    for d in range(2, n + 1):
        for p in range(d, -1, -1):
            params.append(f"a{p}{d - p}")
    for d in range(2, n + 1):
        for p in range(d, -1, -1):
            params.append(f"b{p}{d - p}")
    ring = analysis_ring(params)
    x, y = ring.gen('x'), ring.gen('y')
    P, Q = -y, x
    for name in params:
        p, q = int(name[1]), int(name[2])
        term = ring.gen(name) * x ** p * y ** q
        if name[0] == 'a':
            P = P + term
        else:
            Q = Q + term
    return PlanarSystem(P, Q, tuple(params), name=f"general-{n}")


def linear_system(ring: Optional[Ring] = None) -> PlanarSystem:
    ring = ring or analysis_ring()
    return PlanarSystem(-ring.gen('y'), ring.gen('x'), (), name="linear")
