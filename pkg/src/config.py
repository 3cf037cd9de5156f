"""Configuration management for the analysis pipeline."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from sympy import isprime, nextprime

REFERENCE_PRIME = 32452843


def default_primes(count: int = 4) -> Tuple[int, ...]:
    """The reference prime followed by the next primes above 2**24."""
    primes = [REFERENCE_PRIME]
    p = 2 ** 24
    while len(primes) < count:
        p = nextprime(p)
        primes.append(p)
    return tuple(primes)


@dataclass
class AnalysisConfig:
    """Configuration settings for symbolic and numeric computations."""
    primes: Tuple[int, ...] = field(default_factory=default_primes)
    max_pairs: int = 200000
    max_coeff_bits: int = 4096
    verify_bases: bool = False
    max_series_order: int = 10
    max_factor_degree: int = 3
    rtol: float = 1e-10
    atol: float = 1e-12
    escape_radius: float = 1e3
    max_time: float = 200.0
    sign_ratio: float = 1e-3
    sign_spacing: float = 0.02
    scan_points: int = 24
    max_workers: int = 4
    svg_size: int = 1000
    svg_radius: int = 480
    svg_stride: int = 4
    portrait_time: float = 30.0

    def __post_init__(self):
        """Validate configuration after initialization."""
        self.primes = tuple(int(p) for p in self.primes)
        if not self.primes:
            raise ValueError("At least one prime is required")
        for p in self.primes:
            if not isprime(p):
                raise ValueError(f"Not a prime: {p}")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError(f"Duplicate primes: {self.primes}")

        if self.max_pairs <= 0 or self.max_coeff_bits <= 0:
            raise ValueError("Groebner resource limits must be positive")
        if not 1 <= self.max_factor_degree <= 3:
            raise ValueError(f"Darboux factor degree cap must be in 1..3: {self.max_factor_degree}")
        if self.max_series_order < 1:
            raise ValueError(f"Series cap must be positive: {self.max_series_order}")
        if not (0 < self.rtol < 1 and 0 < self.atol < 1):
            raise ValueError(f"Invalid tolerances: rtol={self.rtol}, atol={self.atol}")
        if not 0 < self.sign_ratio < 1:
            raise ValueError(f"Sign ratio must lie in (0, 1): {self.sign_ratio}")
        if self.max_workers < 1:
            raise ValueError(f"max_workers must be at least 1: {self.max_workers}")
        if self.svg_radius * 2 > self.svg_size:
            raise ValueError("SVG equator does not fit the canvas")

    @classmethod
    def from_args(cls, args) -> "AnalysisConfig":
        """Overlay command-line flags on the defaults."""
        overrides = {}
        prime: Optional[int] = getattr(args, "prime", None)
        if prime:
            overrides["primes"] = (prime,) + tuple(p for p in default_primes() if p != prime)
        tol = getattr(args, "tol", None)
        if tol:
            overrides["rtol"] = tol
        cap = getattr(args, "series_cap", None)
        if cap:
            overrides["max_series_order"] = cap
        workers = getattr(args, "workers", None)
        if workers:
            overrides["max_workers"] = workers
        return cls(**overrides)
