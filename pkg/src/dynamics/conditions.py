"""Linearizability and center conditions of the cubic Riccati family, as data."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..algebra.groebner import Ideal
from ..algebra.parser import parse_poly
from ..algebra.poly import MPoly
from ..algebra.rings import Ring

LINEARIZABILITY_IDEALS: Dict[str, Tuple[str, ...]] = {
    "J1": ("b12", "a02", "b30", "b21", "a03", "b02 + b20", "b11^2 + 4*b20^2"),
    "J2": ("b12", "a02", "b20", "b02", "b21", "a03", "9*b30 - b11^2"),
    "J3": ("b12", "a02", "b11", "b20", "b30", "b21", "9*a03 + 4*b02^2"),
    "J4": ("b12", "b30", "b21", "a03", "2*b02 + 5*b20", "10*a02 - 3*b11", "4*b11^2 + 25*b20^2"),
}

# One branch of each linearizability condition written as a substitution.
# Conditions (1) and (4) force b11 to be an imaginary multiple of b20.
LINEARIZABILITY_BINDINGS: Dict[str, Dict[str, str]] = {
    "1": {"b12": "0", "a02": "0", "b30": "0", "b21": "0", "a03": "0",
          "b02": "-b20", "b11": "2*I*b20"},
    "2": {"b12": "0", "a02": "0", "b20": "0", "b02": "0", "b21": "0", "a03": "0",
          "b30": "1/9*b11^2"},
    "3": {"b12": "0", "a02": "0", "b11": "0", "b20": "0", "b30": "0", "b21": "0",
          "a03": "-4/9*b02^2"},
    "4": {"b12": "0", "b30": "0", "b21": "0", "a03": "0", "b02": "-5/2*b20",
          "a02": "3/4*I*b20", "b11": "5/2*I*b20"},
}


@dataclass(frozen=True)
class CenterCondition:
    """A component of the center variety of the a03 = 0 family."""
    name: str
    generators: Tuple[str, ...]
    real_dimension_note: str = ""
    literature_order: Optional[int] = None
    kukles: bool = False

    def polynomials(self, ring: Ring) -> List[MPoly]:
        return [parse_poly(g, ring) for g in self.generators]

    def ideal(self, ring: Ring) -> Ideal:
        return Ideal(self.polynomials(ring), ring)


_CENTER_CONDITIONS = (
    CenterCondition("I1", ("b21", "b20", "b02")),
    CenterCondition("I2", ("b30", "b12", "b02", "b11*b20 - b21")),
    CenterCondition("I3", (
        "b30", "b21", "b12",
        "-2*b02*b11^2 + 4*b02^2*b20 - b11^2*b20",
        "2*a02*b11 + b11^2 - 4*b02*b20",
        "2*a02*b02 - b02*b11 - b11*b20",
        "4*a02^2 - b11^2 - 4*b20^2")),
    CenterCondition("I4", ("b21", "b11", "a02"),
                    "reduced Kukles system, center type K_III", literature_order=3, kukles=True),
    CenterCondition("I5", (
        "a02",
        "b02*b21 + b11*b30",
        "2*b02*b12 + b12*b20 + b02*b30",
        "b02*b11 + b11*b20 - b21",
        "b02^2 + b02*b20 + b30",
        "b12*b20*b21 - 2*b11*b12*b30 - b11*b30^2",
        "b11*b20*b21 - b21^2 - b11^2*b30",
        "b12*b20^2 - 4*b12*b30 - b02*b20*b30 - 2*b30^2",
        "b11*b12*b20 - 2*b12*b21 + b11*b20*b30 - b21*b30",
        "-b12*b21^2 + b11^2*b12*b30 + b11^2*b30^2"),
        "reduced Kukles system, center types K_II and K_IV", literature_order=2, kukles=True),
    CenterCondition("I6", ("b21", "b12", "b11", "b02")),
    CenterCondition("I7", ("b21", "b12", "b30", "3*b02 + 5*b20", "5*a02 - b11", "6*b11^2 + 25*b20^2"),
                    "the real variety is the single point 0"),
)

CENTER_CAVEAT = ("The center list comes from modular computations and is stated as a sufficient "
                 "condition; it may be incomplete.")


def center_conditions() -> List[CenterCondition]:
    """The seven components I1..I7 of the center variety of the a03 = 0 family."""
    return list(_CENTER_CONDITIONS)


def center_condition(name: str) -> CenterCondition:
    for cc in _CENTER_CONDITIONS:
        if cc.name == name:
            return cc
    raise KeyError(f"Unknown center condition: {name}")


def linearizability_ideal(name: str, ring: Ring) -> Ideal:
    return Ideal([parse_poly(g, ring) for g in LINEARIZABILITY_IDEALS[name]], ring)


def linearizability_components(ring: Ring) -> List[Ideal]:
    return [linearizability_ideal(name, ring) for name in sorted(LINEARIZABILITY_IDEALS)]


def condition_bindings(name: str, ring: Ring) -> Dict[str, MPoly]:
    return {var: parse_poly(text, ring) for var, text in LINEARIZABILITY_BINDINGS[name].items()}
