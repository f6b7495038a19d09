"""Dense integer polynomial kernels used by the cyclotomic field code.

Polynomials are lists (or tuples) of Python ints, lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Above this many coefficients products go through Kronecker substitution.
KRONECKER_THRESHOLD = 12


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul_binomial(a: list[int], d: int) -> list[int]:
    # a(z) * (z^d - 1)
    out = [0] * (len(a) + d)
    for i, c in enumerate(a):
        out[i + d] += c
        out[i] -= c
    return out


def _div_binomial(a: list[int], d: int) -> list[int]:
    # exact a(z) / (z^d - 1); raises if the division leaves a remainder
    deg_q = len(a) - 1 - d
    q = [0] * (deg_q + 1)
    for i in range(deg_q + 1):
        q[i] = (q[i - d] if i >= d else 0) - a[i]
    if _mul_binomial(q, d) != list(a):
        raise ArithmeticError("inexact division by z^%d - 1" % d)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first.

    Built from the Moebius product over divisors, so only sparse
    multiplications and exact divisions by ``z^d - 1`` are needed.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    up, down = [], []
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            up.append(d)
        elif mu == -1:
            down.append(d)
    poly = [1]
    for d in up:
        poly = _mul_binomial(poly, d)
    for d in down:
        poly = _div_binomial(poly, d)
    return tuple(trim(poly))


def mul_schoolbook(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    bb = [(j, c) for j, c in enumerate(b) if c]
    for i, x in enumerate(a):
        if x:
            for j, y in bb:
                out[i + j] += x * y
    return out


@lru_cache(maxsize=4096)
def _bias(count: int, nbytes: int) -> int:
    # sum over digits of 2**(8*nbytes - 1), used to shift signed digits
    return int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * count, "little")


def _pack(a: list[int], nbytes: int) -> int:
    off = 1 << (8 * nbytes - 1)
    if nbytes <= 8:
        # two's-complement wraparound in uint64 yields c + off exactly
        u = np.array(a, dtype=np.int64).astype("<u8") + np.uint64(off)
        raw = u.view(np.uint8).reshape(-1, 8)[:, :nbytes].tobytes()
    else:
        raw = b"".join((c + off).to_bytes(nbytes, "little") for c in a)
    return int.from_bytes(raw, "little") - _bias(len(a), nbytes)


def _unpack(v: int, nbytes: int, count: int) -> list[int]:
    off = 1 << (8 * nbytes - 1)
    raw = (v + _bias(count, nbytes)).to_bytes(count * nbytes, "little")
    if nbytes <= 8:
        digits = np.zeros((count, 8), dtype=np.uint8)
        digits[:, :nbytes] = np.frombuffer(raw, dtype=np.uint8).reshape(count, nbytes)
        vals = digits.view("<u8").ravel() - np.uint64(off)
        return vals.view(np.int64).tolist()
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - off
        for i in range(0, count * nbytes, nbytes)
    ]


def mul_kronecker(a: list[int], b: list[int]) -> list[int]:
    """Product via a single big-integer multiplication (Kronecker substitution)."""
    if not a or not b:
        return []
    ma, mb = max(max(a), -min(a)), max(max(b), -min(b))
    # every digit (inputs included) must fit in a signed nbytes field
    bound = max(ma * mb * min(len(a), len(b)), ma, mb)
    nbytes = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack(prod, nbytes, len(a) + len(b) - 1)


def mul(a: list[int], b: list[int]) -> list[int]:
    if min(len(a), len(b)) > KRONECKER_THRESHOLD:
        return mul_kronecker(a, b)
    return mul_schoolbook(a, b)


@lru_cache(maxsize=None)
def _modulus_terms(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    return deg, tuple((j, c) for j, c in enumerate(phi[:-1]) if c)


def reduce_cyclotomic(a: list[int], n: int) -> list[int]:
    """Reduce an integer polynomial modulo Phi_n (it is monic, so no
    denominators appear). Returns a list of length deg Phi_n."""
    deg, terms = _modulus_terms(n)
    if len(a) > n:
        folded = [0] * n
        for k, c in enumerate(a):
            folded[k % n] += c
        a = folded
    else:
        a = list(a)
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            base = i - deg
            for j, t in terms:
                a[base + j] -= c * t
    if len(a) < deg:
        a.extend([0] * (deg - len(a)))
    return a[:deg]
