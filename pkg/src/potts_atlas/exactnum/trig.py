"""Exact sines and cosines of rational multiples of pi."""

from __future__ import annotations

from .cyclo import CycloReal, invert_root_difference


def _check_order(b: int, order: int | None) -> int:
    if b < 1:
        raise ValueError("denominator b must be >= 1")
    if order is None:
        return 4 * b
    if order % (2 * b) or order % 4:
        raise ValueError(f"order {order} must be a multiple of lcm(2*{b}, 4)")
    return order


def _sin_exponents(a: int, b: int, order: int) -> tuple[int, int]:
    # sin(a pi/b) = (zeta^(u-N/4) - zeta^(-u-N/4)) / 2 with u = a N / (2b)
    u = a * order // (2 * b)
    quarter = order // 4
    return u - quarter, -u - quarter


def sin_pi(a: int, b: int, order: int | None = None) -> CycloReal:
    """sin(a*pi/b) as an element of Q(zeta_order); order defaults to 4b."""
    n = _check_order(b, order)
    e1, e2 = _sin_exponents(a, b, n)
    return CycloReal.from_exponents(n, _pair(e1, e2, 1, -1)) / 2


def cos_pi(a: int, b: int, order: int | None = None) -> CycloReal:
    """cos(a*pi/b) as an element of Q(zeta_order); order defaults to 4b."""
    n = _check_order(b, order)
    u = a * n // (2 * b)
    return CycloReal.from_exponents(n, _pair(u, -u, 1, 1)) / 2


def inv_sin_pi(a: int, b: int, order: int | None = None) -> CycloReal:
    """1 / sin(a*pi/b), via the closed inverse of a difference of roots."""
    n = _check_order(b, order)
    e1, e2 = _sin_exponents(a, b, n)
    inv = invert_root_difference(n, e1, e2) * 2
    return CycloReal._raw(n, list(inv.numerators), inv.denominator)


def _pair(e1: int, e2: int, c1: int, c2: int) -> dict[int, int]:
    out: dict[int, int] = {}
    out[e1] = out.get(e1, 0) + c1
    out[e2] = out.get(e2, 0) + c2
    return out
