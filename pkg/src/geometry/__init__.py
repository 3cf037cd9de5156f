"""Poincare compactification, blow-ups and phase portraits."""
from .compactify import (CHARTS, BlowUpChain, ChartField, InfinitePoint, blow_up, chart_field,
                         divisor_equilibria, infinite_singulars, overlap_factor)
from .portrait import PortraitRenderer, Trajectory, from_chart, render_portrait, to_chart, to_disc

__all__ = [
    'CHARTS', 'BlowUpChain', 'ChartField', 'InfinitePoint', 'blow_up', 'chart_field',
    'divisor_equilibria', 'infinite_singulars', 'overlap_factor',
    'PortraitRenderer', 'Trajectory', 'from_chart', 'render_portrait', 'to_chart', 'to_disc',
]
