"""Exact spectral tools for Salem graphs and their enumeration."""
from __future__ import annotations

__version__ = "0.1.0"
