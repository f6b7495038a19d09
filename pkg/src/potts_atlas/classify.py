"""Allowed q and p values and the integer-p scanner."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .exactnum import CycloReal, inv_sin_pi, sin_pi
from .sheets import Case, ThetaParam

# float prefilter threshold for the scanner; every reported hit is exact
PREFILTER_TOL = 1e-9


class Series(str, enum.Enum):
    S1 = "S1"  # Case 1, terminates on the compact cut
    S2 = "S2"  # Case 1, terminates on the infinite cut
    C2 = "C2"  # Case 2

    @property
    def rank(self) -> int:
        return list(Series).index(self)


@dataclass(frozen=True)
class QEntry:
    param: ThetaParam
    q: CycloReal
    q_approx: float


@dataclass(frozen=True)
class BoundarySolution:
    param: ThetaParam
    p: CycloReal
    p_approx: float
    series: Series
    M: int
    termination_pos: int
    termination_neg: int

    @property
    def physical(self) -> bool:
        return self.p_approx > 0


def coprime_params(max_m: int):
    for m in range(2, max_m + 1):
        for n in range(1, m):
            if math.gcd(n, m) == 1:
                yield ThetaParam(n, m)


def allowed_q(max_m: int) -> list[QEntry]:
    """Every q = 2(1 + cos(n pi/m)) with coprime 0 < n < m <= max_m, by (m, n)."""
    if max_m < 2:
        raise ValueError("max_m must be >= 2")
    out = []
    for param in coprime_params(max_m):
        q = param.q
        out.append(QEntry(param, q, float(q)))
    return out


def series_for(param: ThetaParam) -> tuple[tuple[Series, range], ...]:
    m = param.m
    if param.case is Case.CASE1:
        return ((Series.S1, range(1, m)), (Series.S2, range(0, m)))
    return ((Series.C2, range(1, m)),)


def series_value(param: ThetaParam, series: Series, M: int) -> CycloReal:
    """p = 1 + sin((M+1) theta)/sin(M theta), or the half-integer shift for S2.

    Raises ZeroDivisionError if the denominator sine vanishes.
    """
    n, m, N = param.n, param.m, param.order
    if series is Series.S2:
        num = sin_pi((2 * M + 3) * n, 2 * m, N)
        inv = inv_sin_pi((2 * M + 1) * n, 2 * m, N)
    else:
        num = sin_pi((M + 1) * n, m, N)
        inv = inv_sin_pi(M * n, m, N)
    return 1 + num * inv


def expected_labels(param: ThetaParam, series: Series, M: int) -> tuple[int, int]:
    """Termination sheets (positive, negative) for a member of a series."""
    m = param.m
    if series is Series.S1:
        return 2 * M, -2 * (m - M) + 1
    if series is Series.S2:
        return 2 * M + 1, -2 * (m - M - 1)
    if M <= (m - 1) // 2:
        return 2 * M, -m + 2 * M + 1
    return 2 * M - m, -2 * (m - M) + 1


@lru_cache(maxsize=256)
def _allowed_p(param: ThetaParam) -> tuple[BoundarySolution, ...]:
    out = []
    by_series: dict[Series, set] = {}
    for series, Ms in series_for(param):
        seen = by_series.setdefault(series, set())
        for M in Ms:
            p = series_value(param, series, M)
            if p in seen:
                raise AssertionError(f"duplicate p in {series.value} at {param}")
            seen.add(p)
            pos, neg = expected_labels(param, series, M)
            out.append(BoundarySolution(param, p, float(p), series, M, pos, neg))
    if param.case is Case.CASE1 and by_series[Series.S1] & by_series[Series.S2]:
        raise AssertionError(f"S1 and S2 overlap at {param}")
    return tuple(out)


def allowed_p(param: ThetaParam) -> list[BoundarySolution]:
    """All finite-sheeted boundary values p for this theta.

    Non-positive values are kept and reported with ``physical == False``.
    """
    return list(_allowed_p(param))


def _condition(param: ThetaParam, series: Series, M: int, target: Fraction) -> CycloReal:
    # sin(top) - (target - 1) sin(bottom); vanishes iff p(series, M) == target
    n, m, N = param.n, param.m, param.order
    if series is Series.S2:
        top = sin_pi((2 * M + 3) * n, 2 * m, N)
        bottom = sin_pi((2 * M + 1) * n, 2 * m, N)
    else:
        top = sin_pi((M + 1) * n, m, N)
        bottom = sin_pi(M * n, m, N)
    return top - (target - 1) * bottom


def is_p_allowed(param: ThetaParam, target) -> Optional[BoundarySolution]:
    target = Fraction(target)
    for series, Ms in series_for(param):
        for M in Ms:
            if _condition(param, series, M, target).is_zero():
                return next(
                    s for s in _allowed_p(param) if s.series is series and s.M == M
                )
    return None


@dataclass(frozen=True)
class SpecialValues:
    """Where p = q, q/2, 2 and 1 sit for one theta.

    ``found`` comes from exact comparison against every allowed p;
    ``predicted`` from the closed placement rules.  Each entry is a
    (series, M) pair or None for "absent".
    """

    param: ThetaParam
    found: dict[str, Optional[tuple[Series, int]]]
    predicted: dict[str, Optional[tuple[Series, int]]]

    @property
    def consistent(self) -> bool:
        return self.found == self.predicted


def predicted_special(param: ThetaParam) -> dict[str, Optional[tuple[Series, int]]]:
    m = param.m
    if param.case is Case.CASE1:
        half = (Series.S1, m // 2) if m % 2 == 0 else (Series.S2, (m - 1) // 2)
        two = (Series.S1, (m - 1) // 2) if m % 2 else (Series.S2, m // 2 - 1)
        return {
            "q": (Series.S2, 0),
            "q/2": half,
            "2": two,
            "1": (Series.S1, m - 1),
        }
    return {
        "q": (Series.C2, (m + 1) // 2),
        "q/2": None,
        "2": None,
        "1": (Series.C2, m - 1),
    }


def special_values(param: ThetaParam) -> SpecialValues:
    targets = {"q": param.q, "q/2": param.q / 2, "2": 2, "1": 1}
    found: dict[str, Optional[tuple[Series, int]]] = {}
    sols = _allowed_p(param)
    for name, value in targets.items():
        hit = next((s for s in sols if s.p == value), None)
        found[name] = (hit.series, hit.M) if hit else None
    return SpecialValues(param, found, predicted_special(param))


# ---- scanner ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ScanHit:
    m: int
    n: int
    series_rank: int
    M: int

    @property
    def series(self) -> Series:
        return list(Series)[self.series_rank]


def _scan_m(m: int, target: int, prefilter: bool) -> list[ScanHit]:
    hits = []
    t = Fraction(target)
    c = float(target - 1)
    for n in range(1, m):
        if math.gcd(n, m) != 1:
            continue
        param = ThetaParam(n, m)
        theta = n * math.pi / m
        for series, Ms in series_for(param):
            idx = np.arange(Ms.start, Ms.stop, dtype=float)
            shift = 0.5 if series is Series.S2 else 0.0
            cond = np.sin((idx + 1 + shift) * theta) - c * np.sin((idx + shift) * theta)
            if prefilter:
                candidates = idx[np.abs(cond) < PREFILTER_TOL].astype(int)
            else:
                candidates = idx.astype(int)
            for M in candidates:
                if _condition(param, series, int(M), t).is_zero():
                    hits.append(ScanHit(m, n, series.rank, int(M)))
    return hits


def scan_integer_p(
    max_m: int, target: int, jobs: int = 1, prefilter: bool = True
) -> list[ScanHit]:
    """Every (theta, series, M) with m <= max_m whose p equals ``target`` exactly.

    Work is split by m across ``jobs`` processes; the result is sorted by
    (m, n, series, M) and so does not depend on the worker count.
    """
    if max_m < 2:
        raise ValueError("max_m must be >= 2")
    if target < 2:
        raise ValueError("target must be >= 2")
    ms = list(range(2, max_m + 1))
    if jobs <= 1:
        parts = [_scan_m(m, target, prefilter) for m in ms]
    else:
        # large m first so the pool drains evenly
        ms.reverse()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_m, ms, [target] * len(ms), [prefilter] * len(ms)))
    return sorted(h for part in parts for h in part)


def count_pairs(max_m: int) -> int:
    return sum(1 for _ in coprime_params(max_m))
