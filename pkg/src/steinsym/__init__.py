"""Steiner symmetrization, exterior conformal maps and capacity inequalities for planar continua."""

from . import capacity, confmap, geometry, inequality, scene
from .errors import SteinsymError

__version__ = "0.1.0"

__all__ = ["SteinsymError", "capacity", "confmap", "geometry", "inequality", "scene"]
