"""File handling for system files, certificates, seed lists and outputs.

System files are plain text in four sections:

    [vars]    two state variables, x y or z w
    [params]  symbolic parameters
    [eqs]     dx = ..., dy = ... (or dz, dw)
    [bind]    optional numeric values, a02 = 1/2

Lines starting with '#' are comments.
"""

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple, Union

from ..algebra.parser import parse_poly
from ..dynamics.darboux import LinearizationCertificate
from ..dynamics.systems import COMPLEX_STATE, ComplexSystem, PlanarSystem, PolynomialField, analysis_ring
from ..errors import AnalysisError, SystemFileError

logger = logging.getLogger(__name__)

SECTIONS = ('vars', 'params', 'eqs', 'bind')
DATA_DIR = Path(__file__).resolve().parent.parent / 'data'


@dataclass
class SystemFile:
    """A parsed system file; `system` already carries the [bind] values."""
    path: Path
    system: Union[PlanarSystem, PolynomialField, ComplexSystem]
    unbound: Union[PlanarSystem, PolynomialField, ComplexSystem]
    bindings: Dict[str, Fraction] = field(default_factory=dict)
    digest: str = ''

    @property
    def name(self) -> str:
        return self.system.name

    def numeric_values(self) -> Dict[str, float]:
        return {k: float(v) for k, v in self.bindings.items()}


def resolve_path(path_or_name: Union[str, Path]) -> Path:
    """A path as given, or a file of that name in the bundled data directory."""
    path = Path(path_or_name)
    if path.exists():
        return path
    bundled = DATA_DIR / path.name
    if bundled.exists():
        return bundled
    raise SystemFileError("file not found", path)


class FileHandler:
    """Handles file operations for the analysis pipeline."""

    @staticmethod
    def digest(content: str) -> str:
        return hashlib.md5(content.encode()).hexdigest()

    @staticmethod
    def read_text(path: Path) -> str:
        try:
            with path.open('r', encoding='utf-8') as f:
                return f.read()
        except OSError as e:
            raise SystemFileError(f"cannot read: {e}", path) from e

    @staticmethod
    def _sections(path: Path, text: str) -> Dict[str, List[Tuple[int, str]]]:
        sections: Dict[str, List[Tuple[int, str]]] = {}
        current = None
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if line.startswith('[') and line.endswith(']'):
                current = line[1:-1].strip().lower()
                if current not in SECTIONS:
                    raise SystemFileError(f"unknown section [{current}]", path, number)
                sections.setdefault(current, [])
                continue
            if current is None:
                raise SystemFileError("content before the first section", path, number)
            sections[current].append((number, line))
        return sections

    @staticmethod
    def load_system(path_or_name: Union[str, Path]) -> SystemFile:
        """Parse a system file into a planar, general planar or complex system."""
        path = resolve_path(path_or_name)
        text = FileHandler.read_text(path)
        sections = FileHandler._sections(path, text)
        for required in ('vars', 'eqs'):
            if required not in sections:
                raise SystemFileError(f"missing section [{required}]", path)

        variables = tuple(name for _, line in sections['vars'] for name in line.replace(',', ' ').split())
        if len(variables) != 2:
            raise SystemFileError(f"expected two state variables, got {len(variables)}", path)
        params = tuple(name for _, line in sections.get('params', []) for name in line.replace(',', ' ').split())
        try:
            ring = analysis_ring(params, extra=variables)
        except (ValueError, AnalysisError) as e:
            raise SystemFileError(str(e), path) from e

        equations: Dict[str, object] = {}
        for number, line in sections['eqs']:
            lhs, sep, rhs = line.partition('=')
            lhs = lhs.strip()
            if not sep or not lhs.startswith('d') or lhs[1:] not in variables:
                raise SystemFileError(f"expected 'd<var> = <polynomial>': {line}", path, number)
            try:
                equations[lhs[1:]] = parse_poly(rhs, ring)
            except AnalysisError as e:
                raise SystemFileError(str(e), path, number) from e
        missing = [v for v in variables if v not in equations]
        if missing:
            raise SystemFileError(f"missing equation for {', '.join(missing)}", path)

        bindings: Dict[str, Fraction] = {}
        for number, line in sections.get('bind', []):
            name, sep, value = line.partition('=')
            name = name.strip()
            if not sep or name not in params:
                raise SystemFileError(f"binding of an undeclared parameter: {line}", path, number)
            try:
                bindings[name] = Fraction(value.strip())
            except ValueError as e:
                raise SystemFileError(f"not a rational value: {value.strip()}", path, number) from e

        first, second = (equations[v] for v in variables)
        name = path.stem
        try:
            if variables == COMPLEX_STATE:
                unbound = ComplexSystem.from_equations(first, second, params, name)
            elif _has_rotation_linear_part(first, second, variables):
                unbound = PlanarSystem(first, second, params, variables, name)
            else:
                unbound = PolynomialField(first, second, params, variables, name)
        except ValueError as e:
            raise SystemFileError(str(e), path) from e
        system = unbound.bind(bindings) if bindings else unbound
        logger.info(f"Loaded {type(unbound).__name__} '{name}' with {len(params)} parameters from {path}")
        return SystemFile(path, system, unbound, bindings, FileHandler.digest(text))

    @staticmethod
    def load_certificate(path_or_name: Union[str, Path], system: ComplexSystem) -> LinearizationCertificate:
        """JSON {"system": name, "z": [[poly, exponent], ...], "w": [...]}; entry 0 is the leading factor."""
        path = resolve_path(path_or_name)
        try:
            data = json.loads(FileHandler.read_text(path))
        except json.JSONDecodeError as e:
            raise SystemFileError(f"invalid JSON: {e.msg}", path, e.lineno) from e
        ring = system.ring
        sides = {}
        for side in ('z', 'w'):
            factors = []
            for entry in data.get(side, []):
                try:
                    text, exponent = entry
                    factors.append((parse_poly(text, ring), Fraction(str(exponent))))
                except (ValueError, TypeError, AnalysisError) as e:
                    raise SystemFileError(f"bad factor on side {side}: {entry!r} ({e})", path) from e
            if not factors:
                raise SystemFileError(f"no factors on side {side}", path)
            sides[side] = factors
        return LinearizationCertificate(sides['z'], sides['w'], data.get('system', path.stem))

    @staticmethod
    def load_seeds(path_or_name: Union[str, Path]) -> List[Tuple[float, float]]:
        """JSON {"seeds": [[x, y], ...]} or a bare list of pairs."""
        path = resolve_path(path_or_name)
        try:
            data = json.loads(FileHandler.read_text(path))
        except json.JSONDecodeError as e:
            raise SystemFileError(f"invalid JSON: {e.msg}", path, e.lineno) from e
        items = data.get('seeds', []) if isinstance(data, dict) else data
        seeds = []
        for item in items:
            try:
                x, y = item
                seeds.append((float(x), float(y)))
            except (TypeError, ValueError) as e:
                raise SystemFileError(f"bad seed {item!r}", path) from e
        return seeds

    @staticmethod
    def load_json(path_or_name: Union[str, Path]) -> dict:
        path = resolve_path(path_or_name)
        try:
            return json.loads(FileHandler.read_text(path))
        except json.JSONDecodeError as e:
            raise SystemFileError(f"invalid JSON: {e.msg}", path, e.lineno) from e

    @staticmethod
    def should_update_file(file_path: Path, new_content: str) -> bool:
        """False only when file_path already holds text with the digest of new_content."""
        if not file_path.exists():
            return True
        try:
            with file_path.open('r', encoding='utf-8') as f:
                existing_hash = FileHandler.digest(f.read())
            return existing_hash != FileHandler.digest(new_content)
        except OSError:
            return True

    @staticmethod
    def write_output(path: Union[str, Path], content: str) -> bool:
        """Write content unless the file already holds it; returns whether it was written."""
        path = Path(path)
        if not FileHandler.should_update_file(path, content):
            logger.info(f"Unchanged: {path}")
            return False
        if path.parent and not path.parent.exists():
            os.makedirs(path.parent, exist_ok=True)
        with path.open('w', encoding='utf-8') as f:
            f.write(content)
        logger.info(f"Wrote {path}")
        return True


def _has_rotation_linear_part(P, Q, variables) -> bool:
    ring = P.ring
    x, y = (ring.gen(v) for v in variables)
    p, q = P.homogeneous_components(variables), Q.homogeneous_components(variables)
    zero = ring.poly()
    constant = (p.get(0, zero), q.get(0, zero))
    return constant[0].is_zero() and constant[1].is_zero() and p.get(1, zero) == -y and q.get(1, zero) == x
