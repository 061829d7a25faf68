"""Silting and cosilting objects in derived categories of hereditary rings,
computed over the integers and over the Kronecker algebra."""

from __future__ import annotations

from .dercat import GradedComplex, derived_hom, plus_dual
from .fgab import FgAb
from .kronlat import HRS, KronChain, build_kron_cosilting, build_kron_silting
from .kronrep import KronExpr, KronRep
from .specz import Filtration, aisle_member, coaisle_member, truncate
from .zatoms import ZExpr
from .zchains import ZEpiChain, build_cosilting, build_silting, filtration_of_chain

__version__ = "0.1.0"

__all__ = [
    "FgAb", "Filtration", "GradedComplex", "HRS", "KronChain", "KronExpr", "KronRep", "ZEpiChain", "ZExpr",
    "aisle_member", "build_cosilting", "build_kron_cosilting", "build_kron_silting", "build_silting",
    "coaisle_member", "derived_hom", "filtration_of_chain", "plus_dual", "truncate",
]
