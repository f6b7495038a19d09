"""Exact rational and cyclotomic arithmetic.

Rationals are :class:`fractions.Fraction`; cyclotomic field elements are
:class:`CycloNumber` (and the self-conjugate subclass :class:`CycloReal`).
"""

from fractions import Fraction

from .cyclo import CycloNumber, CycloReal, invert_root_difference, root_of_unity
from .poly import cyclotomic_polynomial, euler_phi
from .trig import cos_pi, inv_sin_pi, sin_pi

BigRational = Fraction


def embed(x: CycloNumber, target_order: int) -> CycloNumber:
    return x.embed(target_order)


def is_zero(x: CycloNumber) -> bool:
    return x.is_zero()


def as_rational(x: CycloNumber):
    return x.as_rational()


def to_float(x: CycloNumber) -> complex:
    return x.to_complex()


__all__ = [
    "BigRational",
    "CycloNumber",
    "CycloReal",
    "as_rational",
    "cos_pi",
    "cyclotomic_polynomial",
    "embed",
    "euler_phi",
    "inv_sin_pi",
    "invert_root_difference",
    "is_zero",
    "root_of_unity",
    "sin_pi",
    "to_float",
]
