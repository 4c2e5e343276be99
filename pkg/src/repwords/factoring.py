"""Integer factorization tuned for values of cyclotomic polynomials.

The repunit-like quotient (b**(n*l) - 1) // (b**l - 1) splits as the
product of cyclotomic polynomial values Phi_d(b) over the divisors d of
n*l that do not divide l.  Factoring the small pieces instead of the
full quotient keeps the numbers near their square roots, and the prime
divisors of Phi_d(b) are known to satisfy p == 1 (mod d) or p | d, which
prunes trial division.

The factoring core is deterministic: staged trial division, a perfect
power reduction, Miller-Rabin with a fixed witness set (provably correct
below 3.3e24, extended by a strong Lucas test above), and Brent's cycle
finding with a fixed parameter schedule.  An optional wall clock budget
aborts cleanly so long range scans can record a base as unresolved
instead of stalling.
"""

from __future__ import annotations

import math
import threading
import time
from bisect import bisect_right
from dataclasses import dataclass

from .arith import iroot

_TRIAL_LIMIT = 10_000

# Deterministic Miller-Rabin witnesses: correct for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_BOUND = 3_317_044_064_679_887_385_961_981


class FactorBudgetError(RuntimeError):
    """Raised when a factorization exceeds its wall clock budget."""


class _Deadline:
    __slots__ = ("at",)

    def __init__(self, budget_ms: int | None):
        self.at = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0

    def check(self) -> None:
        if self.at is not None and time.monotonic() > self.at:
            raise FactorBudgetError("factoring budget exceeded")


_sieve_lock = threading.Lock()
_sieve_primes: list[int] = []
_sieve_limit = 0


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit, from a cached sieve grown on demand."""
    global _sieve_primes, _sieve_limit
    if limit > _sieve_limit:
        with _sieve_lock:
            if limit > _sieve_limit:
                size = max(limit, 2 * _sieve_limit, _TRIAL_LIMIT)
                flags = bytearray([1]) * (size + 1)
                flags[0:2] = b"\x00\x00"
                for p in range(2, math.isqrt(size) + 1):
                    if flags[p]:
                        flags[p * p :: p] = bytearray(len(range(p * p, size + 1, p)))
                _sieve_primes = [i for i in range(size + 1) if flags[i]]
                _sieve_limit = size
    if limit >= _sieve_limit:
        return _sieve_primes
    return _sieve_primes[: bisect_right(_sieve_primes, limit)]


def _miller_rabin(n: int, bases: tuple[int, ...]) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    Q = (1 - D) // 4
    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s
    # Lucas ladder for U_d, V_d with P = 1.
    U, V, qk = 1, 1, Q % n
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            U, V = (U + V) % n, (V + D * U) % n
            if U & 1:
                U += n
            if V & 1:
                V += n
            U, V = U // 2 % n, V // 2 % n
            qk = qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * qk) % n
        if V == 0:
            return True
        qk = qk * qk % n
    return False


def is_probable_prime(n: int) -> bool:
    """Deterministic below 3.3e24; Miller-Rabin plus strong Lucas above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if not _miller_rabin(n, _MR_BASES):
        return False
    if n < _MR_PROVEN_BOUND:
        return True
    r, exact = iroot(n, 2)
    if exact:
        return False
    return _strong_lucas_prp(n)


def _brent_cycle(n: int, c: int, deadline: _Deadline) -> int:
    """One Brent rho run on odd composite n; returns a factor or n."""
    y, r, q = 2, 1, 1
    g = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = (y * y + c) % n
                q = q * (x - y) % n
            g = math.gcd(q, n)
            k += 128
            deadline.check()
        r <<= 1
    if g == n:
        g = 1
        y = ys
        while g == 1:
            y = (y * y + c) % n
            g = math.gcd(x - y, n)
    return g


def _find_factor(n: int, deadline: _Deadline) -> int:
    """Nontrivial factor of an odd composite n, deterministic schedule."""
    c = 1
    while True:
        g = _brent_cycle(n, c, deadline)
        if 1 < g < n:
            return g
        c += 1
        deadline.check()


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ((p1, e1), ...) with p1 < p2 < ..."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        ps = [p for p, _ in self.factors]
        if ps != sorted(ps) or len(set(ps)) != len(ps):
            raise ValueError("factors must be sorted by distinct prime")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.factors:
            v *= p ** e
        return v

    def __mul__(self, other: Factorization) -> Factorization:
        merged: dict[int, int] = dict(self.factors)
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return Factorization(tuple(sorted(merged.items())))


def radical(f: Factorization) -> int:
    """Product of the distinct primes; 1 for the empty factorization."""
    v = 1
    for p, _ in f.factors:
        v *= p
    return v


_residue_primes_cache: dict[int, tuple[int, ...]] = {}


def _residue_primes(modulus: int) -> tuple[int, ...]:
    """Primes p <= trial limit with p == 1 (mod modulus) or p | modulus."""
    got = _residue_primes_cache.get(modulus)
    if got is None:
        got = tuple(
            p
            for p in primes_upto(_TRIAL_LIMIT)
            if p % modulus == 1 or modulus % p == 0
        )
        _residue_primes_cache[modulus] = got
    return got


def _factor_into(
    n: int,
    out: dict[int, int],
    deadline: _Deadline,
    trial_primes,
) -> None:
    for i, p in enumerate(trial_primes):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if i % 512 == 511:
            deadline.check()
    if n == 1:
        return
    if n < _TRIAL_LIMIT * _TRIAL_LIMIT or is_probable_prime(n):
        # no factor up to the trial limit, so below its square n is prime
        out[n] = out.get(n, 0) + 1
        return
    stack = [n]
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        reduced = False
        for q in primes_upto(m.bit_length()):
            root, exact = iroot(m, q)
            if exact:
                sub: dict[int, int] = {}
                _factor_into(root, sub, deadline, trial_primes)
                for p, e in sub.items():
                    out[p] = out.get(p, 0) + e * q
                reduced = True
                break
        if reduced:
            continue
        g = _find_factor(m, deadline)
        stack.append(g)
        stack.append(m // g)


def factor(
    x: int,
    *,
    budget_ms: int | None = None,
    residue_modulus: int | None = None,
) -> Factorization:
    """Full prime factorization of x >= 1.

    residue_modulus restricts trial division to primes p with
    p == 1 (mod m) or p | m; sound only when every prime factor of x is
    known to satisfy that, as cyclotomic values do.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    deadline = _Deadline(budget_ms)
    trial = (
        _residue_primes(residue_modulus)
        if residue_modulus and residue_modulus > 2
        else primes_upto(_TRIAL_LIMIT)
    )
    out: dict[int, int] = {}
    if x > 1:
        _factor_into(x, out, deadline, trial)
    return Factorization(tuple(sorted(out.items())))


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __mul__(self, other: IntPoly) -> IntPoly:
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def divexact(self, other: IntPoly) -> IntPoly:
        """Quotient self / other, which must divide with zero remainder."""
        rem = list(self.coeffs)
        out = [0] * (len(self.coeffs) - len(other.coeffs) + 1)
        for i in range(len(out) - 1, -1, -1):
            q, r = divmod(rem[i + other.degree], other.coeffs[-1])
            if r:
                raise ValueError("not an exact polynomial division")
            out[i] = q
            for j, b in enumerate(other.coeffs):
                rem[i + j] -= q * b
        if any(rem):
            raise ValueError("not an exact polynomial division")
        return IntPoly(tuple(out))


def _x_pow_minus_one(m: int) -> IntPoly:
    return IntPoly((-1,) + (0,) * (m - 1) + (1,))


_cyclo_lock = threading.Lock()
_cyclo_cache: dict[int, IntPoly] = {1: IntPoly((-1, 1))}


def cyclotomic(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial Phi_m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    got = _cyclo_cache.get(m)
    if got is not None:
        return got
    # Phi_m = (X^m - 1) / prod of Phi_d over proper divisors d of m.
    poly = _x_pow_minus_one(m)
    for d in range(1, m):
        if m % d == 0:
            poly = poly.divexact(cyclotomic(d))
    with _cyclo_lock:
        _cyclo_cache.setdefault(m, poly)
    return _cyclo_cache[m]


def divisors(m: int) -> list[int]:
    """Divisors of m >= 1 in increasing order."""
    small, large = [], []
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
    return small + large[::-1]


def cyclotomic_split(n: int, l: int) -> list[IntPoly]:
    """Cyclotomic factors of (X**(n*l) - 1) / (X**l - 1).

    These are Phi_d for the divisors d of n*l that do not divide l, in
    increasing order of d; their product is the quotient polynomial.
    """
    if n < 1 or l < 1:
        raise ValueError("n and l must be >= 1")
    return [cyclotomic(d) for d in divisors(n * l) if l % d != 0]


_piece_lock = threading.Lock()
_piece_cache: dict[tuple[int, int], Factorization] = {}


def factor_quotient(
    b: int, n: int, l: int, *, budget_ms: int | None = None
) -> Factorization:
    """Factor (b**(n*l) - 1) // (b**l - 1) piecewise via cyclotomic values.

    Piece results are memoized per (d, b), so range scans that share
    pieces across triples do not refactor them.
    """
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if n < 1 or l < 1:
        raise ValueError("n and l must be >= 1")
    result = Factorization(())
    for d in divisors(n * l):
        if l % d == 0:
            continue
        key = (d, b)
        piece = _piece_cache.get(key)
        if piece is None:
            piece = factor(cyclotomic(d)(b), budget_ms=budget_ms, residue_modulus=d)
            with _piece_lock:
                if len(_piece_cache) > 1_000_000:
                    _piece_cache.clear()
                _piece_cache[key] = piece
        result = result * piece
    return result
