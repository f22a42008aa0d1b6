"""Coordinate models of Legendrian spheres in 1-jet spaces, the flat
Weinstein surgery hypersurfaces connecting them, and numerical certification
of every identity the constructions rest on."""

__version__ = "0.1.0"

from . import (  # noqa: F401
    constructions,
    grids,
    isotopy,
    jetspace,
    openbook,
    pages,
    suites,
    surgery,
    verifier,
)
