"""Weak order on subsets of finite root systems: lattices, families, census."""

__version__ = "0.1.0"

from .rootsys import build_root_system, build_from_label, RootSystem  # noqa: F401
from .rootset import RootSet  # noqa: F401
