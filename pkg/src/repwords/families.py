"""Infinite families of repeated-word powers, one generator per triple.

Each admissible triple has a parametric construction: the two-repetition
families come from explicit digit identities, the seven sporadic
triples from orbits of a fundamental unit acting on a fixed-norm
element of a real quadratic ring, sometimes thinned by a congruence so
a divisibility side condition holds.  Generators build each candidate,
then verify the full digit-string property before emitting it; members
that fail a side inequality (only finitely many can) are skipped.

Seeds are located by bounded brute force over small ring elements with
the required norm, parity, and congruence.  Unit-power steps are found
by iterating to the first power congruent to 1, never hard-coded.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources
from itertools import count as _count
from typing import Iterator

from .arith import QuadInt, unit_order
from .search import SolutionRecord, verify_solution
from .words import (
    Word,
    bijective_word,
    fibonacci,
    repeat_word,
    to_bijective,
    to_canonical,
    to_zeckendorf,
    word_value,
    zeckendorf_word,
)

# The only three rings that occur, with their fundamental units.
FUNDAMENTAL_UNITS = {
    2: QuadInt(1, 1, 2),
    3: QuadInt(2, -1, 3),
    7: QuadInt(8, -3, 7),
}


class FamilyError(ValueError):
    """A family's defining invariants do not hold."""


@dataclass(frozen=True)
class NormFamily:
    """Orbit seed * growth**(step * k) inside a fixed-norm fiber.

    congruence, when present, is (m, (ra, rb)): every member must be
    congruent to (ra, rb) mod m, which requires unit**step == 1 mod m.
    """

    d: int
    target_norm: int
    seed: QuadInt
    unit: QuadInt
    step: int
    congruence: tuple[int, tuple[int, int]] | None = None

    def __post_init__(self) -> None:
        if self.seed.d != self.d or self.unit.d != self.d:
            raise FamilyError("seed and unit must live in Z[sqrt(d)]")
        if self.seed.norm() != self.target_norm:
            raise FamilyError(
                f"seed norm {self.seed.norm()} != target {self.target_norm}"
            )
        if abs(self.unit.norm()) != 1:
            raise FamilyError("unit must have norm +-1")
        if self.step < 1:
            raise FamilyError("step must be >= 1")
        if self.congruence is not None:
            m, (ra, rb) = self.congruence
            one = QuadInt(1, 0, self.d)
            if not (self.unit**self.step).congruent(one, m):
                raise FamilyError(f"unit**{self.step} is not 1 mod {m}")
            if (self.seed.a - ra) % m or (self.seed.b - rb) % m:
                raise FamilyError(f"seed violates its congruence mod {m}")


def _growth_direction(unit: QuadInt) -> QuadInt:
    """The associate of the unit with both components positive.

    Exactly one of unit, -unit, and their inverses has a, b > 0, and
    multiplying by it strictly grows positive elements.
    """
    inv = unit.inverse()
    for cand in (unit, -unit, inv, -inv):
        if cand.a > 0 and cand.b > 0:
            return cand
    raise FamilyError("unit has no positive associate")


def _norm_family_stream(f: NormFamily) -> Iterator[QuadInt]:
    g = _growth_direction(f.unit) ** f.step
    if f.congruence is not None:
        m, (ra, rb) = f.congruence
        if not g.congruent(QuadInt(1, 0, f.d), m):
            raise FamilyError(f"growth step is not 1 mod {m}")
    x = f.seed
    if x.a < 0:
        x = -x
    while True:
        assert x.a > 0 and x.b > 0
        assert x.norm() == f.target_norm
        if f.congruence is not None:
            m, (ra, rb) = f.congruence
            assert (x.a - ra) % m == 0 and (x.b - rb) % m == 0
        yield x
        x = x * g


def norm_family_iter(f: NormFamily, count: int) -> list[QuadInt]:
    """First `count` members of the orbit, smallest first."""
    if count < 1:
        raise ValueError("count must be >= 1")
    stream = _norm_family_stream(f)
    return [next(stream) for _ in range(count)]


def find_seed(
    d: int,
    target_norm: int,
    *,
    a_odd: bool = False,
    b_multiple: int = 1,
    a_residues: frozenset[int] | None = None,
    modulus: int = 1,
    bound: int = 100_000,
) -> QuadInt:
    """Smallest (by b, then a) element of Z[sqrt(d)] with the given norm
    and side conditions.  Printed seed values are not trusted; this
    search plus the NormFamily checks are the source of truth.
    """
    from math import isqrt

    for b in range(1, bound):
        if b % b_multiple:
            continue
        t = target_norm + d * b * b
        if t < 1:
            continue
        a = isqrt(t)
        if a * a != t or a < 1:
            continue
        if a_odd and a % 2 == 0:
            continue
        if a_residues is not None and a % modulus not in a_residues:
            continue
        return QuadInt(a, b, d)
    raise FamilyError(f"no seed with norm {target_norm} below bound {bound}")


def _emit_verified(
    candidates: Iterator[SolutionRecord], count: int, slack: int = 64
) -> list[SolutionRecord]:
    """Collect `count` verified records, skipping early range failures."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out: list[SolutionRecord] = []
    skipped = 0
    for rec in candidates:
        if verify_solution(rec):
            out.append(rec)
            if len(out) == count:
                return out
        else:
            skipped += 1
            if skipped > slack:
                raise FamilyError("family keeps producing invalid candidates")
    raise FamilyError("family stream ended early")


def _rec(q: int, n: int, l: int, b: int, y: int, c: int) -> SolutionRecord:
    return SolutionRecord(q, n, l, b, y, c, to_canonical(c, b))


def _pell_stream() -> Iterator[QuadInt]:
    # odd powers of 1 + sqrt(2): solutions of a**2 - 2 b**2 = -1
    u = FUNDAMENTAL_UNITS[2]
    g = u * u
    x = u
    while True:
        yield x
        x = x * g


def gen_n21(q: int, count: int) -> list[SolutionRecord]:
    """(q, 2, 1) for any q: c = 1 and b = y**q - 1, so y**q = (1,1) base b."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")

    def stream():
        for y in _count(2):
            yield _rec(q, 2, 1, y**q - 1, y, 1)

    return _emit_verified(stream(), count)


def gen_231(count: int) -> list[SolutionRecord]:
    """(2, 3, 1): c = 3 with 3 y0**2 = x**2 + x + 1 from norm -3 in Z[sqrt(3)]."""
    fam = NormFamily(
        d=3,
        target_norm=-3,
        seed=find_seed(3, -3, a_odd=True, b_multiple=2),
        unit=FUNDAMENTAL_UNITS[3],
        step=2,
    )

    def stream():
        for el in _norm_family_stream(fam):
            x, y0 = (el.a - 1) // 2, el.b // 2
            if x < 2:
                continue
            yield _rec(2, 3, 1, x, 3 * y0, 3)

    return _emit_verified(stream(), count)


def gen_232(count: int) -> list[SolutionRecord]:
    """(2, 3, 2): members of the (2,3,1) fiber thinned to 49 | x**2 - x + 1.

    The congruence a == 39 (mod 98) forces the divisibility; the unit
    step is the order of the fundamental unit mod 98.
    """
    unit = FUNDAMENTAL_UNITS[3]
    seed = find_seed(
        3, -3, a_odd=True, b_multiple=2, a_residues=frozenset({39, 63}), modulus=98
    )
    fam = NormFamily(
        d=3,
        target_norm=-3,
        seed=seed,
        unit=unit,
        step=unit_order(unit, 98),
        congruence=(98, (seed.a % 98, seed.b % 98)),
    )

    def stream():
        for el in _norm_family_stream(fam):
            x, y0 = (el.a - 1) // 2, el.b // 2
            num = x * x - x + 1
            assert num % 49 == 0
            c = 3 * (num // 49)
            y = 3 * y0 * (num // 7)
            yield _rec(2, 3, 2, x, y, c)

    return _emit_verified(stream(), count)


def gen_322(count: int) -> list[SolutionRecord]:
    """(3, 2, 2): (2 y0)**3 = 4 y0 (x**2 + 1) along 2 y0**2 = x**2 + 1."""

    def stream():
        for el in _pell_stream():
            x, y0 = el.a, el.b
            if x < 2:
                continue
            yield _rec(3, 2, 2, x, 2 * y0, 4 * y0)

    return _emit_verified(stream(), count)


def gen_331(count: int) -> list[SolutionRecord]:
    """(3, 3, 1): 343 y0**2 = x**2 + x + 1 from norm -3 in Z[sqrt(7)]."""
    unit = FUNDAMENTAL_UNITS[7]
    seed = find_seed(7, -3, a_odd=True, b_multiple=14)
    fam = NormFamily(
        d=7,
        target_norm=-3,
        seed=seed,
        unit=unit,
        step=unit_order(unit, 14),
        congruence=(14, (seed.a % 14, seed.b % 14)),
    )

    def stream():
        for el in _norm_family_stream(fam):
            x, y0 = (el.a - 1) // 2, el.b // 14
            if x < 2:
                continue
            yield _rec(3, 3, 1, x, 7 * y0, y0)

    return _emit_verified(stream(), count)


def gen_323(count: int) -> list[SolutionRecord]:
    """(3, 2, 3): image of gen_331 under b, y, c -> b+1, y(b+2), c(b+2)**2."""
    out = []
    for rec in gen_331(count):
        b2 = rec.b + 1
        mapped = _rec(3, 2, 3, b2, rec.y * (rec.b + 2), rec.c * (rec.b + 2) ** 2)
        if not verify_solution(mapped):
            raise FamilyError("length-3 image of a valid member failed to verify")
        out.append(mapped)
    return out


def gen_241(count: int) -> list[SolutionRecord]:
    """(2, 4, 1): b = x, c = (x+1)/2, y = y0 (x+1) on 2 y0**2 = x**2 + 1."""

    def stream():
        for el in _pell_stream():
            x, y0 = el.a, el.b
            if x < 2:
                continue
            yield _rec(2, 4, 1, x, y0 * (x + 1), (x + 1) // 2)

    return _emit_verified(stream(), count)


def gen_422(count: int) -> list[SolutionRecord]:
    """(4, 2, 2): powers u**(14k+7) in Z[sqrt(2)], which force 13 | y0."""
    u = FUNDAMENTAL_UNITS[2]
    fam = NormFamily(d=2, target_norm=-1, seed=u**7, unit=u, step=14)

    def stream():
        for el in _norm_family_stream(fam):
            x, y0 = el.a, el.b
            assert y0 % 13 == 0
            c, rem = divmod(8 * 81 * y0 * y0, 13**4)
            assert rem == 0
            yield _rec(4, 2, 2, x, 6 * (y0 // 13), c)

    return _emit_verified(stream(), count)


def _two_adic_split(l: int) -> tuple[int, int]:
    t = (l & -l).bit_length() - 1
    return l >> t, t


def gen_22_by_length(l: int, count: int) -> list[SolutionRecord]:
    """(2, 2, l): one solution per prime p == 1 mod 2**(t+1), ascending p.

    Writes l = r * 2**t with r odd, takes the smallest base b with
    b**(2**t) == -1 mod p**2, and builds c = m v**2, y = m v p from
    m = (b**l + 1) / p**2 and the least v with v**2 b >= p**2.
    """
    from math import isqrt

    from .factoring import primes_upto

    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    _, t = _two_adic_split(l)
    residue_mod = 2 ** (t + 1)

    def stream():
        sieve_limit = 1 << 10
        emitted_from = 5
        while True:
            for p in primes_upto(sieve_limit):
                if p < max(5, emitted_from) or (p - 1) % residue_mod:
                    continue
                p2 = p * p
                witness = next(
                    b for b in range(2, p2) if pow(b, 2**t, p2) == p2 - 1
                )
                m = (witness**l + 1) // p2
                assert m * p2 == witness**l + 1
                v = isqrt(p2 // witness)
                while v * v * witness < p2:
                    v += 1
                yield _rec(2, 2, l, witness, m * v * p, m * v * v)
            emitted_from = sieve_limit
            sieve_limit *= 2

    return _emit_verified(stream(), count)


_SMALL_BASE_PT = {
    2: (5, 2),
    3: (5, 2),
    4: (5, 2),
    5: (7, 2),
    6: (7, 2),
    7: (5, 2),
    8: (5, 2),
    9: (5, 2),
    10: (7, 2),
    11: (13, 3),
    12: (5, 2),
    13: (5, 2),
    14: (5, 2),
    15: (13, 3),
}

_SMALL_BASE_E = {2: 10, 3: 10, 4: 5}


def _order_mod(b: int, m: int) -> int:
    v = b % m
    x = v
    for r in range(1, m + 1):
        if x == 1:
            return r
        x = x * v % m
    raise ArithmeticError("not a unit")


def _base_parameters(b: int) -> tuple[int, int, int]:
    """(p, e, t) for the fixed-base square family at base b.

    p is a prime >= 5 modulo whose square b has even order 2e, and t is
    an integer with t**4 b > p**2 and 100 t**4 < 81 p**2.  Small bases
    use a fixed table; from 16 upward the interval for t is longer than
    1, so the smallest suitable prime works.
    """
    from math import isqrt

    from .factoring import primes_upto

    if b < 16:
        p, t = _SMALL_BASE_PT[b]
        order = _order_mod(b, p * p)
        if order % 2:
            raise FamilyError(f"base {b}: order mod {p}**2 is odd")
        e = order // 2
        if b in _SMALL_BASE_E and e != _SMALL_BASE_E[b]:
            raise FamilyError(f"base {b}: expected half-order {_SMALL_BASE_E[b]}")
        return p, e, t
    limit = 64
    while True:
        for p in primes_upto(limit):
            if p < 5 or b % p == 0:
                continue
            order = _order_mod(b, p * p)
            if order % 2:
                continue
            t = isqrt(isqrt(p * p // b)) + 1
            while t**4 * b <= p * p:
                t += 1
            if 100 * t**4 < 81 * p * p:
                return p, order // 2, t
        limit *= 2


def gen_22_by_base(b: int, count: int) -> list[SolutionRecord]:
    """(2, 2, r*e) solutions at a fixed base b, one per odd r = 1, 3, 5, ...

    With b of order 2e mod p**2, b**(re) == -1 mod p**2 for odd r, and
    c = (t**4/p**2)(b**(re) + 1), y = (t**2/p)(b**(re) + 1) square to a
    two-fold repetition of the re-digit word of c.
    """
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    p, e, t = _base_parameters(b)
    p2 = p * p

    def stream():
        r = 1
        while True:
            block = b ** (r * e) + 1
            assert block % p2 == 0
            yield _rec(2, 2, r * e, b, t * t * (block // p), t**4 * (block // p2))
            r += 2

    return _emit_verified(stream(), count)


# ---------------------------------------------------------------------------
# bijective families


def gen_bijective_square(b: int, l: int) -> tuple[int, Word]:
    """y = b**l + 1, whose square is w w in bijective base b for the
    l-digit word w = ((b-1) repeated l-2 times, b, 1)."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if l < 2:
        raise ValueError(f"l must be >= 2, got {l}")
    y = b**l + 1
    w = bijective_word(b, (b - 1,) * (l - 2) + (b, 1))
    if to_bijective(y * y, b) != repeat_word(w, 2):
        raise FamilyError("square template failed to verify")
    return y, w


_PATTERN_TOKEN = re.compile(r"\((\d+):(\d*)n(?:\+(\d+))?\)|(\d)")


def _parse_pattern(text: str) -> list[tuple[tuple[int, ...], int, int]]:
    """Parse e.g. '(12:3n+3)212' into (block, coef, const) runs, where
    the block repeats coef*n + const times."""
    out = []
    pos = 0
    for m in _PATTERN_TOKEN.finditer(text):
        if m.start() != pos:
            raise ValueError(f"bad pattern {text!r} at offset {pos}")
        pos = m.end()
        if m.group(4) is not None:
            out.append(((int(m.group(4)),), 0, 1))
        else:
            block = tuple(int(ch) for ch in m.group(1))
            coef = int(m.group(2)) if m.group(2) else 1
            const = int(m.group(3)) if m.group(3) else 0
            out.append((block, coef, const))
    if pos != len(text):
        raise ValueError(f"bad pattern {text!r} at offset {pos}")
    return out


def _instantiate_pattern(runs, n: int) -> tuple[int, ...]:
    digits: tuple[int, ...] = ()
    for block, coef, const in runs:
        digits += block * (coef * n + const)
    return digits


_bijective_rows_cache: dict[tuple[int, int], tuple[str, str]] | None = None


def bijective_family_rows() -> dict[tuple[int, int], tuple[str, str]]:
    """The per-base square-family pattern table, keyed by (base, row)."""
    global _bijective_rows_cache
    if _bijective_rows_cache is None:
        rows: dict[tuple[int, int], tuple[str, str]] = {}
        data = resources.files("repwords.tables").joinpath("bijective_families.csv")
        with data.open() as fh:
            for row in csv.DictReader(r for r in fh if not r.startswith("#")):
                key = (int(row["b"]), int(row["row"]))
                rows[key] = (row["y_pattern"], row["w_pattern"])
        _bijective_rows_cache = rows
    return _bijective_rows_cache


def gen_bijective_table_family(b: int, row: int, n: int) -> tuple[int, Word]:
    """Instantiate one pattern-table family at parameter n >= 0."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rows = bijective_family_rows()
    if (b, row) not in rows:
        raise FamilyError(f"no bijective family for base {b} row {row}")
    y_pat, w_pat = rows[(b, row)]
    y_digits = _instantiate_pattern(_parse_pattern(y_pat), n)
    w_digits = _instantiate_pattern(_parse_pattern(w_pat), n)
    y = word_value(bijective_word(b, y_digits))
    w = bijective_word(b, w_digits)
    if to_bijective(y * y, b) != repeat_word(w, 2):
        raise FamilyError(f"bijective family ({b},{row}) fails at n={n}")
    return y, w


# ---------------------------------------------------------------------------
# Zeckendorf families


def gen_fibonacci_family(n: int) -> tuple[int, Word]:
    """y = F(4n+3) + F(4n+6) + F(8n+8) + F(8n+11); its square is w w in
    Zeckendorf for an explicit word w of length 8n + 10."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    y = (
        fibonacci(4 * n + 3)
        + fibonacci(4 * n + 6)
        + fibonacci(8 * n + 8)
        + fibonacci(8 * n + 11)
    )
    digits = (
        (1, 0, 0, 0, 0)
        + (1, 0, 0, 0) * (n - 1)
        + (1, 0, 1, 0, 0, 1, 0, 0, 1)
        + (0,) * (4 * n)
    )
    w = zeckendorf_word(digits)
    if to_zeckendorf(y * y) != repeat_word(w, 2):
        raise FamilyError(f"square family fails at n={n}")
    return y, w


def gen_fibonacci_family2(n: int) -> tuple[int, Word]:
    """Second Zeckendorf square family: y has digit word (100)**(4n+2)
    followed by 101000."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    y = word_value(zeckendorf_word((1, 0, 0) * (4 * n + 2) + (1, 0, 1, 0, 0, 0)))
    digits = (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0) * n + (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0)
    w = zeckendorf_word(digits)
    if to_zeckendorf(y * y) != repeat_word(w, 2):
        raise FamilyError(f"second square family fails at n={n}")
    return y, w
