"""Sheet coefficients of the p-spin G-function.

Sheets are labelled by integers with the physical sheet at 0.  Going up
from 0 the cuts alternate C_F, C_inf, C_F, ...; going down they alternate
C_inf, C_F, ...  Every label K carries the coefficient of the cut that
leads *away* from sheet 0:

* K = 2M > 0      rho_{2M}       (C_F to 2M+1)
* K = 2M+1 > 0    delta_{2M+1}   (C_inf to 2M+2)
* K = -2M <= 0    delta_{-2M}    (C_inf to -2M-1)
* K = -2M-1 < 0   rho_{-2M-1}    (C_F to -2M-2)

Label 0 therefore carries delta_0 = p.  Its other discontinuity,
rho_0, is identically 1 and is only used as a recurrence seed.

All theta-dependent quantities for theta = n pi / m live in Q(zeta_{4m}).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Optional, Union

from .exactnum import CycloNumber, CycloReal, cos_pi, inv_sin_pi, root_of_unity, sin_pi

PValue = Union[CycloReal, int, Fraction]


class Case(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"


class Kind(str, enum.Enum):
    RHO = "rho"
    DELTA = "delta"


@dataclass(frozen=True)
class ThetaParam:
    """theta = n*pi/m with 0 < n < m coprime."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and isinstance(self.m, int)):
            raise TypeError("n and m must be integers")
        if not 0 < self.n < self.m:
            raise ValueError("need 0 < n < m")
        if math.gcd(self.n, self.m) != 1:
            raise ValueError("n and m must be coprime")

    @property
    def case(self) -> Case:
        return Case.CASE1 if self.n % 2 else Case.CASE2

    @property
    def order(self) -> int:
        return 4 * self.m

    @property
    def sheet_count(self) -> int:
        return 2 * self.m if self.case is Case.CASE1 else self.m

    @cached_property
    def q(self) -> CycloReal:
        """q = 2 (1 + cos theta), exact."""
        return 2 + 2 * cos_pi(self.n, self.m, self.order)

    @property
    def theta(self) -> float:
        return self.n * math.pi / self.m

    def __str__(self) -> str:
        return f"({self.n},{self.m})"


class _Trig:
    """Cached trigonometric tables for one theta.

    u(k) = sin(k theta)/sin(theta)                 (Chebyshev-U values)
    v(k) = sin((k+1/2) theta)/sin(theta/2)
    w(k) = cos((k+1/2) theta)/(2 sin(theta/2) sin(theta))
    w0   = cos(theta/2)/(2 sin(theta/2) sin(theta))

    Every table is periodic in k with period 2m (theta * 2m = 2 n pi).
    """

    def __init__(self, param: ThetaParam) -> None:
        self.param = param
        n, m = param.n, param.m
        self.N = 4 * m
        self._inv_s1 = inv_sin_pi(n, m, self.N)
        self._inv_h = inv_sin_pi(n, 2 * m, self.N)
        self._inv_wden = self._inv_s1 * self._inv_h / 2
        self.w0 = cos_pi(n, 2 * m, self.N) * self._inv_wden
        self._u: dict[int, CycloReal] = {}
        self._v: dict[int, CycloReal] = {}
        self._w: dict[int, CycloReal] = {}

    def sin_k(self, k: int) -> CycloReal:
        return sin_pi(k * self.param.n, self.param.m, self.N)

    def sin_half(self, k: int) -> CycloReal:
        return sin_pi((2 * k + 1) * self.param.n, 2 * self.param.m, self.N)

    def u(self, k: int) -> CycloReal:
        key = k % (2 * self.param.m)
        if key not in self._u:
            self._u[key] = self.sin_k(key) * self._inv_s1
        return self._u[key]

    def v(self, k: int) -> CycloReal:
        key = k % (2 * self.param.m)
        if key not in self._v:
            self._v[key] = self.sin_half(key) * self._inv_h
        return self._v[key]

    def w(self, k: int) -> CycloReal:
        key = k % (2 * self.param.m)
        if key not in self._w:
            c = cos_pi((2 * key + 1) * self.param.n, 2 * self.param.m, self.N)
            self._w[key] = c * self._inv_wden
        return self._w[key]


@lru_cache(maxsize=512)
def trig_table(param: ThetaParam) -> _Trig:
    return _Trig(param)


def as_field(param: ThetaParam, p: PValue) -> CycloReal:
    """Coerce p into Q(zeta_{4m}) as a real element."""
    if isinstance(p, CycloNumber):
        if p.order != param.order:
            p = p.embed(param.order) if param.order % p.order == 0 else None
            if p is None:
                raise ValueError("p lives in a field that does not embed in Q(zeta_4m)")
        if not isinstance(p, CycloReal):
            p = CycloReal.from_number(p)
        return p
    return CycloReal.from_rational(param.order, p)


def _one_minus(param: ThetaParam, p: PValue) -> Union[CycloReal, Fraction]:
    # keep rational p as a Fraction so products stay scalar multiplications
    if isinstance(p, CycloNumber):
        r = p.as_rational()
        return 1 - r if r is not None else 1 - as_field(param, p)
    return 1 - Fraction(p)


# ---- closed forms --------------------------------------------------------


def characteristic_roots(q: CycloReal, param: ThetaParam) -> list[CycloNumber]:
    """Roots 1, e^{i theta}, e^{-i theta} of x^3 - (q-1)(x^2 - x) - 1."""
    if as_field(param, q) != param.q:
        raise ValueError("q does not equal 2(1 + cos theta) for this theta")
    N = param.order
    return [
        CycloNumber.from_rational(N, 1),
        root_of_unity(N, 2 * param.n),
        root_of_unity(N, -2 * param.n),
    ]


def rho_pos(param: ThetaParam, p: PValue, M: int) -> CycloReal:
    """rho_{2M} = ((1-p) sin M theta + sin (M+1) theta) / sin theta."""
    t = trig_table(param)
    return _one_minus(param, p) * t.u(M) + t.u(M + 1)


def delta_pos(param: ThetaParam, p: PValue, M: int) -> CycloReal:
    """delta_{2M+1} = -((1-p) sin (M+1/2) theta + sin (M+3/2) theta) / sin(theta/2)."""
    t = trig_table(param)
    return -(_one_minus(param, p) * t.v(M) + t.v(M + 1))


def rho_neg(param: ThetaParam, p: PValue, M: int) -> CycloReal:
    """rho_{-2M-1} = ((1-p) sin (M+1) theta + sin M theta) / sin theta."""
    t = trig_table(param)
    return _one_minus(param, p) * t.u(M + 1) + t.u(M)


def delta_neg(param: ThetaParam, p: PValue, M: int) -> CycloReal:
    """delta_{-2M} = -((1-p) sin (M+1/2) theta + sin (M-1/2) theta) / sin(theta/2)."""
    t = trig_table(param)
    return -(_one_minus(param, p) * t.v(M) + t.v(M - 1))


def alpha(param: ThetaParam, p: PValue, K: int) -> CycloReal:
    """Coefficient of z on sheet K.

    Odd K = 2M+1 uses the closed form; an even label shares the value of
    the odd label just below it (alpha_{2M+2} = alpha_{2M+1}).
    """
    if K % 2 == 0:
        K -= 1
    M = (K - 1) // 2
    t = trig_table(param)
    om = _one_minus(param, p)
    # -(p-2) w0 + (p-1) w(M) - w(M+1), with p - 2 = -(1-p) - 1
    return (om + 1) * t.w0 - om * t.w(M) - t.w(M + 1)


def p1_closed_forms(param: ThetaParam, k: int) -> tuple[CycloReal, CycloReal]:
    """(rho_{2k}, delta_{2k}) at p = 1 from the x = e^{i theta} expressions.

    sqrt(q(q-4)) is taken as 2i sin(theta) = x - 1/x, the branch for which
    the expressions are real.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    N = param.order
    x = root_of_unity(N, 2 * param.n)
    x_inv = root_of_unity(N, -2 * param.n)
    one = CycloNumber.from_rational(N, 1)
    sqrt_qq4 = x - x_inv
    rho = x_inv ** (k + 1) * (x ** (2 * (k + 1)) - one) / sqrt_qq4
    q_minus_4 = param.q - 4
    delta = x_inv ** (k + 1) * (x - one) * (x ** (2 * k + 1) - one) / q_minus_4
    return CycloReal.from_number(rho), CycloReal.from_number(delta)


def kind_of(K: int) -> Kind:
    if K > 0:
        return Kind.RHO if K % 2 == 0 else Kind.DELTA
    return Kind.DELTA if K % 2 == 0 else Kind.RHO


class _Evaluator:
    """Outward coefficients for one (param, p) with (1-p) u(k), (1-p) v(k) cached.

    Neighbouring labels on both sides of 0 share these products, so a
    termination scan or a table needs about half the field multiplications.
    """

    def __init__(self, param: ThetaParam, p: PValue) -> None:
        self.t = trig_table(param)
        self.period = 2 * param.m
        self.om = _one_minus(param, p)
        self._ou: dict[int, CycloReal] = {}
        self._ov: dict[int, CycloReal] = {}
        self._alpha: dict[int, CycloReal] = {}
        self._alpha_base: Optional[CycloReal] = None

    def ou(self, k: int) -> CycloReal:
        key = k % self.period
        if key not in self._ou:
            self._ou[key] = self.om * self.t.u(key)
        return self._ou[key]

    def ov(self, k: int) -> CycloReal:
        key = k % self.period
        if key not in self._ov:
            self._ov[key] = self.om * self.t.v(key)
        return self._ov[key]

    def alpha(self, K: int) -> CycloReal:
        M = (K - 1) // 2 if K % 2 else (K - 2) // 2
        if M not in self._alpha:
            t = self.t
            if self._alpha_base is None:
                self._alpha_base = (self.om + 1) * t.w0
            self._alpha[M] = self._alpha_base - self.om * t.w(M) - t.w(M + 1)
        return self._alpha[M]

    def at(self, K: int) -> CycloReal:
        t = self.t
        if K > 0:
            M = K // 2 if K % 2 == 0 else (K - 1) // 2
            if K % 2 == 0:
                return self.ou(M) + t.u(M + 1)
            return -(self.ov(M) + t.v(M + 1))
        if K % 2 == 0:
            M = -K // 2
            return -(self.ov(M) + t.v(M - 1))
        M = (-K - 1) // 2
        return self.ou(M + 1) + t.u(M)


def coefficient(param: ThetaParam, p: PValue, K: int) -> CycloReal:
    """Outward discontinuity coefficient carried by label K."""
    if K > 0:
        if K % 2 == 0:
            return rho_pos(param, p, K // 2)
        return delta_pos(param, p, (K - 1) // 2)
    if K % 2 == 0:
        return delta_neg(param, p, -K // 2)
    return rho_neg(param, p, (-K - 1) // 2)


# ---- tables ----------------------------------------------------------------


@dataclass(frozen=True)
class SheetEntry:
    kind: Kind
    value: CycloReal
    alpha: CycloReal


@dataclass(frozen=True)
class SheetCoefficientTable:
    param: ThetaParam
    p: CycloReal
    entries: dict[int, SheetEntry] = field(repr=False)
    lo: int
    hi: int

    @property
    def labels(self) -> range:
        return range(self.lo, self.hi + 1)

    def __getitem__(self, K: int) -> SheetEntry:
        return self.entries[K]

    def same_values(self, other: "SheetCoefficientTable") -> bool:
        return (
            self.lo == other.lo
            and self.hi == other.hi
            and all(
                self.entries[K].value == other.entries[K].value
                and self.entries[K].alpha == other.entries[K].alpha
                for K in self.labels
            )
        )


def _check_range(lo: int, hi: int) -> None:
    if lo > 0 or hi < 0:
        raise ValueError("label range must contain the physical sheet 0")


def closed_form_table(param: ThetaParam, p: PValue, lo: int, hi: int) -> SheetCoefficientTable:
    _check_range(lo, hi)
    ev = _Evaluator(param, p)
    entries = {
        K: SheetEntry(kind_of(K), ev.at(K), ev.alpha(K))
        for K in range(lo, hi + 1)
    }
    return SheetCoefficientTable(param, as_field(param, p), entries, lo, hi)


@dataclass(frozen=True)
class RecurrenceSeeds:
    """Initial data for the four parity chains plus alpha.

    up[j] is the label-j value for j = 0..5 (rho_0, delta_1, rho_2, ...),
    down[j] the label -j value (delta_0, rho_-1, delta_-2, ...),
    alpha maps labels -5..5 to their z coefficients.
    """

    up: tuple[CycloReal, ...]
    down: tuple[CycloReal, ...]
    alpha: dict[int, CycloReal]


def recurrence_seeds(param: ThetaParam, p: PValue) -> RecurrenceSeeds:
    up = (rho_pos(param, p, 0),) + tuple(coefficient(param, p, K) for K in range(1, 6))
    down = tuple(coefficient(param, p, -j) for j in range(6))
    al = {K: alpha(param, p, K) for K in range(-5, 6)}
    return RecurrenceSeeds(up, down, al)


def _run(seeds: list[CycloReal], count: int, qm1: CycloReal) -> list[CycloReal]:
    # y_j = (q-1)(y_{j-1} - y_{j-2}) + y_{j-3} along one parity chain
    ys = list(seeds[:3])
    while len(ys) < count:
        ys.append(qm1 * (ys[-1] - ys[-2]) + ys[-3])
    return ys[:count]


def generate_by_recurrence(
    param: ThetaParam, p: PValue, seeds: RecurrenceSeeds, lo: int, hi: int
) -> SheetCoefficientTable:
    """Fill labels lo..hi with y_K = (q-1)(y_{K-2} - y_{K-4}) + y_{K-6}.

    Upward chains start from labels 0..5; downward chains from 0..-5.  The
    characteristic polynomial is reciprocal, so descending labels obey the
    same recurrence.
    """
    _check_range(lo, hi)
    qm1 = param.q - 1
    value: dict[int, CycloReal] = {}
    for parity in (0, 1):
        chain = _run([seeds.up[parity + 2 * j] for j in range(3)], hi // 2 + 2, qm1)
        for j, y in enumerate(chain):
            K = parity + 2 * j
            if 0 < K <= hi:
                value[K] = y
        chain = _run([seeds.down[parity + 2 * j] for j in range(3)], -lo // 2 + 2, qm1)
        for j, y in enumerate(chain):
            K = -(parity + 2 * j)
            if lo <= K <= 0:
                value[K] = y
    # alpha is one sequence over all integers; run both ways from -5..5
    al = dict(seeds.alpha)
    for K in range(6, hi + 1):
        al[K] = qm1 * (al[K - 2] - al[K - 4]) + al[K - 6]
    for K in range(-6, lo - 1, -1):
        al[K] = qm1 * (al[K + 2] - al[K + 4]) + al[K + 6]
    entries = {
        K: SheetEntry(kind_of(K), value[K], al[K]) for K in range(lo, hi + 1)
    }
    return SheetCoefficientTable(param, as_field(param, p), entries, lo, hi)


def termination_labels(param: ThetaParam, p: PValue) -> Optional[tuple[int, int]]:
    """(K_pos, K_neg): first vanishing outward coefficient above and below 0.

    One period in M is scanned on each side; nothing vanishing there means
    nothing ever vanishes, and None is returned.
    """
    span = 2 * param.m + 1
    ev = _Evaluator(param, p)
    k_pos = next((K for K in range(1, span + 1) if ev.at(K).is_zero()), None)
    if k_pos is None:
        return None
    k_neg = next((K for K in range(0, -span - 1, -1) if ev.at(K).is_zero()), None)
    if k_neg is None:
        return None
    return k_pos, k_neg


def sheet_table(param: ThetaParam, p: PValue) -> SheetCoefficientTable:
    """Closed-form table over the termination range of (param, p)."""
    labels = termination_labels(param, p)
    if labels is None:
        raise ValueError(f"p does not give a finite sheet structure at {param}")
    k_pos, k_neg = labels
    return closed_form_table(param, p, k_neg, k_pos)
