"""Exact elements of cyclotomic fields Q(zeta_N).

An element is stored as integer numerators over one positive common
denominator, in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo
the N-th cyclotomic polynomial.  The reduction is canonical, so two
elements of the same order are equal exactly when their stored data are.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Optional, Union

import mpmath

from .poly import (
    cyclotomic_polynomial,
    euler_phi,
    mobius,
    mul,
    reduce_cyclotomic,
    trim,
)

Scalar = Union[int, Fraction]

# Above this coefficient mass to_complex switches to multiprecision.
_FLOAT_MASS_LIMIT = 1e4


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


@lru_cache(maxsize=None)
def _unit_circle(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    ang = [2.0 * math.pi * k / order for k in range(euler_phi(order))]
    return tuple(math.cos(t) for t in ang), tuple(math.sin(t) for t in ang)


@lru_cache(maxsize=None)
def _trace_weights(order: int) -> tuple[int, ...]:
    # Ramanujan sums c_N(k) = Tr(z^k), followed by phi(N) itself
    phi = euler_phi(order)
    out = []
    for k in range(phi):
        d = order // math.gcd(k, order)
        mu = mobius(d)
        out.append(mu * phi // euler_phi(d))
    out.append(phi)
    return tuple(out)


class CycloNumber:
    """Exact element of Q(zeta_N), zeta_N = exp(2 pi i / N)."""

    __slots__ = ("order", "_num", "_den")

    order: int
    _num: tuple[int, ...]
    _den: int

    def __init__(self, order: int, coeffs: Iterable = ()) -> None:
        if order < 1:
            raise ValueError("order must be a positive integer")
        fr = [_as_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fr]
        self._set(order, reduce_cyclotomic(num, order), den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_num", tuple(num))
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("cyclotomic numbers are immutable")

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int, reduced: bool = True):
        obj = object.__new__(cls)
        if not reduced:
            num = reduce_cyclotomic(num, order)
        obj._set(order, num, den)
        return obj

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int):
        return cls._raw(order, [0] * euler_phi(order), 1)

    @classmethod
    def from_rational(cls, order: int, value: Scalar):
        v = _as_fraction(value)
        num = [0] * euler_phi(order)
        num[0] = v.numerator
        return cls._raw(order, num, v.denominator)

    @classmethod
    def from_exponents(cls, order: int, terms: Mapping[int, Scalar]):
        """Build sum(c * zeta^k) from a sparse {k: c} map; k may be any integer."""
        if all(type(c) is int for c in terms.values()):
            num = [0] * order
            for k, c in terms.items():
                num[k % order] += c
            return cls._raw(order, num, 1, reduced=False)
        fr = {k % order: Fraction(0) for k in terms}
        for k, c in terms.items():
            fr[k % order] += _as_fraction(c)
        den = 1
        for c in fr.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        top = max(fr) if fr else 0
        num = [0] * (top + 1)
        for k, c in fr.items():
            num[k] = c.numerator * (den // c.denominator)
        return cls._raw(order, num, den, reduced=False)

    # ---- accessors ----------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def as_rational(self) -> Optional[Fraction]:
        if any(self._num[1:]):
            return None
        return Fraction(self._num[0], self._den)

    def to_complex(self) -> complex:
        """Evaluate at zeta_N = exp(2 pi i / N)."""
        mass = sum(abs(c) for c in self._num) / self._den
        if mass > _FLOAT_MASS_LIMIT:
            with mpmath.workdps(60):
                acc = mpmath.mpc(0)
                n = self.order
                for k, c in enumerate(self._num):
                    if c:
                        acc += c * mpmath.expjpi(mpmath.mpf(2 * k) / n)
                return complex(acc / self._den)
        cos_t, sin_t = _unit_circle(self.order)
        re = math.fsum(c * x for c, x in zip(self._num, cos_t) if c)
        im = math.fsum(c * y for c, y in zip(self._num, sin_t) if c)
        return complex(re / self._den, im / self._den)

    # ---- field operations ---------------------------------------------

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.order != self.order:
                raise ValueError(
                    f"order mismatch: {self.order} vs {other.order}; embed first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloReal.from_rational(self.order, other)
        return NotImplemented

    def _result_cls(self, other) -> type:
        if isinstance(self, CycloReal) and isinstance(other, CycloReal):
            return CycloReal
        return CycloNumber

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._den, o._den
        g = math.gcd(d1, d2)
        f1, f2 = d2 // g, d1 // g
        num = [a * f1 + b * f2 for a, b in zip(self._num, o._num)]
        return self._result_cls(o)._raw(self.order, num, d1 * f1)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def _scale(self, s: Fraction):
        s = _as_fraction(s)
        return type(self)._raw(
            self.order, [c * s.numerator for c in self._num], self._den * s.denominator
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = mul(trim(list(self._num)), trim(list(o._num)))
        return self._result_cls(o)._raw(
            self.order, prod, self._den * o._den, reduced=False
        )

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse by the extended Euclidean algorithm over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        r = self.as_rational()
        if r is not None:
            return type(self).from_rational(self.order, 1 / r)
        # invariant: t_i * a == r_i  (mod Phi)
        r0 = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r1 = [Fraction(c) for c in trim(list(self._num))]
        t0: list[Fraction] = []
        t1 = [Fraction(1)]
        while len(r1) > 1:
            q, rem = _divmod_q(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, _sub_q(t0, _mul_q(q, t1))
        lead = r1[0]
        inv = [c / lead for c in t1]
        # self was scaled by its denominator
        inv = [c * self._den for c in inv]
        den = 1
        for c in inv:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in inv]
        return type(self)._raw(self.order, num, den, reduced=False)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self._scale(1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = type(self).from_rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        """Complex conjugate, zeta -> zeta^-1."""
        n = self.order
        num = [0] * n
        for k, c in enumerate(self._num):
            num[(-k) % n] += c
        return type(self)._raw(n, num, self._den, reduced=False)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def embed(self, target_order: int):
        """Same value represented in Q(zeta_target); needs order | target."""
        if target_order % self.order:
            raise ValueError(f"order {self.order} does not divide {target_order}")
        step = target_order // self.order
        num = [0] * (step * (len(self._num) - 1) + 1) if self._num else [0]
        for k, c in enumerate(self._num):
            num[k * step] = c
        return type(self)._raw(target_order, num, self._den, reduced=False)

    # ---- comparisons, hashing, display ---------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            r = self.as_rational()
            return r is not None and r == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if other.order != self.order:
            n = self.order * other.order // math.gcd(self.order, other.order)
            return self.embed(n) == other.embed(n)
        return self._num == other._num and self._den == other._den

    def trace_average(self) -> Fraction:
        """Tr(x) / phi(N): the mean of the Galois conjugates.

        It does not depend on the field the value is represented in, and
        equals the value itself for rationals.
        """
        weights = _trace_weights(self.order)
        return Fraction(sum(a * w for a, w in zip(self._num, weights)), self._den * weights[-1])

    def __hash__(self) -> int:
        # built from embedding-invariant data so that equal values of
        # different orders hash alike
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash(self.trace_average())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        r = self.as_rational()
        if r is not None:
            return str(r)
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                term = str(abs(c))
            elif abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return f"{text} [z=zeta_{self.order}]"

    def to_json(self) -> dict:
        z = self.to_complex()
        return {
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "approx_re": float(f"{z.real:.12g}"),
            "approx_im": float(f"{z.imag:.12g}"),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CycloNumber":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])


class CycloReal(CycloNumber):
    """A cyclotomic number equal to its own complex conjugate."""

    __slots__ = ()

    def __init__(self, order: int, coeffs: Iterable = ()) -> None:
        super().__init__(order, coeffs)
        if CycloNumber.conjugate(self) != self:
            raise ValueError("value is not real")

    @classmethod
    def from_number(cls, x: CycloNumber) -> "CycloReal":
        if x.conjugate() != x:
            raise ValueError("value is not real")
        return cls._raw(x.order, list(x._num), x._den)

    def conjugate(self):
        return self

    def __float__(self) -> float:
        return self.to_complex().real

    def sign(self) -> int:
        """Sign of the real value (exact zero test, float for the sign)."""
        if self.is_zero():
            return 0
        return 1 if float(self) > 0 else -1


# ---- polynomial helpers over Q, only used by inverse() --------------------


def _trim_q(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub_q(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]
    return _trim_q(out)


def _mul_q(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim_q(out)


def _divmod_q(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                if y:
                    a[i - db + j] -= c * y
    return _trim_q(q), _trim_q(a[:db])


def root_of_unity(order: int, k: int) -> CycloNumber:
    """zeta_order ** k, reduced."""
    return CycloNumber.from_exponents(order, {k: 1})


def invert_root_difference(order: int, a: int, b: int) -> CycloNumber:
    """1 / (zeta^a - zeta^b) without running Euclid.

    With x = zeta^(b-a) of exact order d > 1, sum_{k<d} k x^k = -d / (1 - x).
    """
    n = order
    diff = (b - a) % n
    if diff == 0:
        raise ZeroDivisionError("zeta^a - zeta^b vanishes")
    d = n // math.gcd(diff, n)
    num = [0] * n
    for k in range(1, d):
        num[(k * diff - a) % n] = -k
    return CycloNumber._raw(n, num, d, reduced=False)
