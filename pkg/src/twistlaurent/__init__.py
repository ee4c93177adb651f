"""Exact kernel for twisted iterated Laurent series rings."""

from .cyclo import CycloNum, const_root, cyclotomic_poly, embed, log_root_of_unity, omega
from .exponents import ExponentVec, RingSig, phase
from .series import TwistedSeries

__all__ = [
    "CycloNum",
    "ExponentVec",
    "RingSig",
    "TwistedSeries",
    "const_root",
    "cyclotomic_poly",
    "embed",
    "log_root_of_unity",
    "omega",
    "phase",
]
