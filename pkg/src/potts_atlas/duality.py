"""Kramers-Wannier maps for q = 2, 3 and the mixed-boundary word algebra.

Words are tuples over the letters X, U and Ud (U dagger).  Under

    X  = sum_s M_s,   U = sum_s w^(s-1) M_s,   Ud = sum_s w^(1-s) M_s

with w = exp(2 pi i / 3), every word expands into spin strings
s_1 ... s_n over {1, 2, 3}; coefficients live in Q(zeta_3).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .exactnum import CycloNumber

X, U, UD = "X", "U", "Ud"
WORD_CAP = 14
EXPANSION_CAP = 12


class Model(str, enum.Enum):
    ISING = "ising"
    POTTS3 = "potts3"


def dual_beta(model: Model, beta: float) -> float:
    """Dual inverse temperature.

    Ising: tanh(beta_dual) = exp(-2 beta).
    Potts3: exp(beta_dual) = 1 + 3 / (exp(beta) - 1).
    """
    model = Model(model)
    if not beta > 0:
        raise ValueError("beta must be positive")
    if model is Model.ISING:
        # atanh(exp(-2b)) = -log(tanh(b)) / 2
        return -0.5 * math.log(math.tanh(beta))
    return math.log1p(3.0 / math.expm1(beta))


@dataclass(frozen=True)
class DualityMap:
    """Scalar data of the change of variables between a model and its dual.

    For Potts3 the quadratic weight of the original action is
    mu(c) = (1 - c) / ((1 + c)(1 - 2c)) with c = 1 / (e^beta + 1).
    """

    model: Model
    beta: float
    beta_dual: float
    c: Optional[float]
    lam: float
    coupling_scale: float
    g: float

    @property
    def g_dual(self) -> float:
        return self.coupling_scale * self.g

    @property
    def mu(self) -> Optional[float]:
        if self.c is None:
            return None
        c = self.c
        return (1 - c) / ((1 + c) * (1 - 2 * c))


def coupling_map(model: Model, beta: float, g: float = 1.0) -> DualityMap:
    model = Model(model)
    if not beta > 0:
        raise ValueError("beta must be positive")
    if g == 0:
        raise ValueError("g must be nonzero")
    bd = dual_beta(model, beta) if math.isfinite(beta) else 0.0
    if model is Model.ISING:
        lam = 1.0 + math.exp(-2.0 * beta)
        return DualityMap(model, beta, bd, None, lam, lam**-3 / math.sqrt(2.0), g)
    c = 1.0 / (math.exp(beta) + 1.0)
    lam = math.sqrt((1.0 - c) / (1.0 + c))
    return DualityMap(model, beta, bd, c, lam, lam**-3 / math.sqrt(3.0), g)


# ---- words -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _words(n: int) -> tuple[tuple[str, ...], ...]:
    if n == 0:
        return ((),)
    out = [(X,) + w for w in _words(n - 1)]
    for k in range(2, n + 1):
        head = (U,) + (X,) * (k - 2) + (UD,)
        out.extend(head + w for w in _words(n - k))
    return tuple(out)


def allowed_words(n: int, cap: int = WORD_CAP) -> list[tuple[str, ...]]:
    """Words of W_n = X W_{n-1} + sum_{k=2..n} U X^(k-2) Ud W_{n-k}, W_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap:
        raise ValueError(f"length cap is {cap}")
    return list(_words(n))


def spin_strings(n: int):
    return itertools.product((1, 2, 3), repeat=n)


@dataclass(frozen=True)
class WordExpansion:
    length: int
    coefficients: dict[tuple[int, ...], CycloNumber]


# phase exponent (power of w) picked up by each letter on spin s
_LETTER_PHASE = {X: (0, 0, 0), U: (0, 1, 2), UD: (0, 2, 1)}


def expand_word_sum(n: int, cap: int = EXPANSION_CAP) -> WordExpansion:
    """Brute-force expansion of the sum of allowed words into spin strings.

    Each word is substituted letter by letter; the product of phases on a
    spin string is w^E, so a coefficient is c0 + c1 w + c2 w^2 with c_r the
    number of words giving E = r (mod 3) on that string.
    """
    if n > cap:
        raise ValueError(f"length cap is {cap}")
    if n == 0:
        return WordExpansion(0, {(): CycloNumber.from_rational(3, 1)})
    strings = list(spin_strings(n))
    # digits[i, j] = s_i - 1 for string j
    digits = np.array(strings, dtype=np.int64).T - 1
    phase = {a: np.array(v, dtype=np.int64) for a, v in _LETTER_PHASE.items()}
    size = len(strings)
    counts = np.zeros(3 * size, dtype=np.int64)
    base = 3 * np.arange(size, dtype=np.int64)
    for word in _words(n):
        e = np.zeros(size, dtype=np.int64)
        for i, letter in enumerate(word):
            if letter != X:
                e += phase[letter][digits[i]]
        counts += np.bincount(base + e % 3, minlength=3 * size)
    counts = counts.reshape(size, 3)
    coeffs = {}
    for s, (c0, c1, c2) in zip(strings, counts.tolist()):
        # w^2 = -1 - w
        coeffs[s] = CycloNumber._raw(3, [c0 - c2, c1 - c2], 1)
    return WordExpansion(n, coeffs)


# 1 + w^d; for d = 0 this is 2
_OMEGA_PLUS = {d: 1 + CycloNumber.from_exponents(3, {d: 1}) for d in range(3)}


def coefficient_closed_form(sigma) -> CycloNumber:
    """prod_{k<n} (1 + w^(s_k - s_{k+1}))."""
    sigma = tuple(sigma)
    if not sigma:
        raise ValueError("sigma must be nonempty")
    out = CycloNumber.from_rational(3, 1)
    for a, b in zip(sigma, sigma[1:]):
        out = out * _OMEGA_PLUS[(a - b) % 3]
    return out


def new_weight(sigma) -> Fraction:
    """2^(n-1) (-1/2)^(number of unequal cyclic neighbours)."""
    sigma = tuple(sigma)
    n = len(sigma)
    if n == 0:
        raise ValueError("sigma must be nonempty")
    mismatches = sum(1 for k in range(n) if sigma[k] != sigma[(k + 1) % n])
    return Fraction(2) ** (n - 1) * Fraction(-1, 2) ** mismatches


def real_part(x: CycloNumber) -> Fraction:
    """Exact real part of an element of Q(zeta_3)."""
    if x.order != 3:
        raise ValueError("expected an element of Q(zeta_3)")
    a, b = x.coeffs
    # Re(a + b w) = a - b/2
    return a - b / 2


@dataclass(frozen=True)
class WordCheck:
    length: int
    strings: int
    ok: bool
    first_mismatch: Optional[tuple[int, ...]] = None


def verify_words(n: int) -> WordCheck:
    """Compare the brute-force expansion with the product formula and the
    boundary weights on all 3^n strings."""
    expansion = expand_word_sum(n)
    for sigma, coeff in expansion.coefficients.items():
        if n == 0:
            break
        if coeff != coefficient_closed_form(sigma) or real_part(coeff) != new_weight(sigma):
            return WordCheck(n, len(expansion.coefficients), False, sigma)
    return WordCheck(n, len(expansion.coefficients), True)
