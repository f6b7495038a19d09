"""Discriminant degrees, critical exponent r/s and string exponent."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sheets import Case, ThetaParam


@dataclass(frozen=True)
class ExponentResult:
    param: ThetaParam
    sheet_count: int
    disc_degree: int
    sqrt_cut_count: int
    collided_pairs: int
    critical_exponent: Fraction
    string_exponent: Fraction


def discriminant_degree(param: ThetaParam) -> int:
    m = param.m
    if param.case is Case.CASE1:
        return 2 * m * (2 * m - 1) - m
    return m * (m - 1) - (m - 1) // 2


def degree_decomposition(param: ThetaParam) -> tuple[int, int]:
    """(uncollided square-root cuts, weight of the collided branch point).

    The discriminant degree equals sqrt_cuts + (r/s) * collided_pairs.
    """
    m = param.m
    if param.case is Case.CASE1:
        return (2 * m - 2) // 2, 2 * m * (2 * m - 1)
    return (m - 1) // 2, m * (m - 1)


def critical_exponent(param: ThetaParam) -> Fraction:
    sqrt_cuts, collided = degree_decomposition(param)
    return Fraction(discriminant_degree(param) - sqrt_cuts, collided)


def string_exponent(param: ThetaParam) -> Fraction:
    # the resolvent singularity (z - z_c)^(1 - gamma_s) is the functional
    # inverse of the G-function one, (z - z_c)^(r/s)
    return 1 - 1 / critical_exponent(param)


def exponents(param: ThetaParam) -> ExponentResult:
    sqrt_cuts, collided = degree_decomposition(param)
    return ExponentResult(
        param=param,
        sheet_count=param.sheet_count,
        disc_degree=discriminant_degree(param),
        sqrt_cut_count=sqrt_cuts,
        collided_pairs=collided,
        critical_exponent=critical_exponent(param),
        string_exponent=string_exponent(param),
    )
