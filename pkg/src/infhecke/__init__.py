"""Exact arithmetic in infinitesimal Hecke algebras over sl2, sp(2n) and gl_n."""

from .engine import KERNEL, Element, Presentation, commutator, normal_form
from .poly import Poly, T
from .sl2 import casimir, fg_pair, h0, hz_presentation, qz, t_element, tz, z0

__version__ = "0.1.0"

__all__ = [
    "KERNEL",
    "Element",
    "Presentation",
    "Poly",
    "T",
    "casimir",
    "commutator",
    "fg_pair",
    "h0",
    "hz_presentation",
    "normal_form",
    "qz",
    "t_element",
    "tz",
    "z0",
]
