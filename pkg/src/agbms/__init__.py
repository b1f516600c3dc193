"""Decoder toolkit for one-point AG codes: inverse-free BMS error location,
error evaluation, genericity analysis, and clock-accurate simulators of the
shift-register decoder architectures."""

from .agcode import CodeSpec, Word
from .bms import DIVISION, INVERSE_FREE, LocatorOutput
from .curve import CurveSpec, Point, elliptic_curve, hermitian_curve, klein_curve
from .decoder import DecodeResult, decode
from .gf import GF, ZERO, OpCounter

__all__ = [
    "GF",
    "ZERO",
    "OpCounter",
    "CurveSpec",
    "Point",
    "CodeSpec",
    "Word",
    "DecodeResult",
    "decode",
    "LocatorOutput",
    "INVERSE_FREE",
    "DIVISION",
    "elliptic_curve",
    "klein_curve",
    "hermitian_curve",
]
