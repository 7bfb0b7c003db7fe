"""
Toolkit configuration (tolerances, limits, Monte Carlo defaults)
"""
from .settings import Settings, settings

__all__ = ['Settings', 'settings']
