# src/__init__.py
"""Linearizability, Darboux certificates, period constants and compactification
for planar polynomial differential systems."""
from .config import AnalysisConfig
from .errors import AnalysisError

__version__ = '1.0.0'
__all__ = ['AnalysisConfig', 'AnalysisError']
