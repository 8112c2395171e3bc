"""Symmetric eigenvalue optimization on the sphere and the disk.

Closed-form equivariant maxima, Galerkin solvers for the Laplace and Steklov
problems with a conformal density, and algebraic tools for holomorphic maps
and binary polyhedral groups.
"""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

from .closed_form import lambda_equivariant_sphere, steklov_equivariant_disk
from .symmetry import GroupSpec, build_group

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

__all__ = ["GroupSpec", "build_group", "lambda_equivariant_sphere", "steklov_equivariant_disk", "__version__"]
