"""Exhaustive search for repeated-word powers, plus Zeckendorf scans.

For a triple (q, n, l) and a base b, every solution of

    y**q = c * (b**(n*l) - 1) // (b**l - 1),   b**(l-1) <= c < b**l

arises as c = k**q * d where d is the defect of the factored quotient
(the least multiplier making it a perfect q-th power) and k runs over a
short integer interval.  That reduces a base to one factorization plus
a handful of root extractions.  A brute-force oracle enumerating every
c directly backs the fast path in tests.

Range scans persist progress to a line-delimited checkpoint file so
they can be interrupted, resumed, and partitioned across workers with a
deterministic final result.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt

from .arith import iroot
from .factoring import Factorization, FactorBudgetError, factor_quotient
from .triples import Triple
from .words import (
    System,
    Word,
    fibonacci,
    repeat_word,
    split_repetition,
    to_canonical,
    to_zeckendorf,
    word_value,
)

_BRUTE_LIMIT = 10**7


class CheckpointError(RuntimeError):
    """Checkpoint file is corrupt or belongs to a different search."""


@dataclass(frozen=True)
class SolutionRecord:
    """One solution (y, c, w) of the power equation at base b."""

    q: int
    n: int
    l: int
    b: int
    y: int
    c: int
    w: Word

    @property
    def triple(self) -> Triple:
        return Triple(self.q, self.n, self.l)


def check_solution(rec: SolutionRecord) -> str | None:
    """Name of the first failing invariant, or None when all hold."""
    try:
        Triple(rec.q, rec.n, rec.l)
    except ValueError:
        return "triple"
    if rec.b < 2:
        return "base"
    if rec.y < 2:
        return "y-range"
    if (
        rec.w.system is not System.CANONICAL
        or rec.w.base != rec.b
        or len(rec.w) != rec.l
    ):
        return "word-shape"
    if word_value(rec.w) != rec.c:
        return "word-value"
    if not rec.b ** (rec.l - 1) <= rec.c < rec.b**rec.l:
        return "c-range"
    r = (rec.b ** (rec.n * rec.l) - 1) // (rec.b**rec.l - 1)
    if rec.y**rec.q != rec.c * r:
        return "power-equation"
    if to_canonical(rec.y**rec.q, rec.b) != repeat_word(rec.w, rec.n):
        return "digit-string"
    return None


def verify_solution(rec: SolutionRecord) -> bool:
    """Recompute every invariant from scratch, digits included."""
    return check_solution(rec) is None


def compute_defect(f: Factorization, q: int) -> int:
    """Least d >= 1 such that d * f.value is a perfect q-th power."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    d = 1
    for p, e in f.factors:
        d *= p ** (-e % q)
    return d


def _record(t: Triple, b: int, y: int, c: int) -> SolutionRecord:
    return SolutionRecord(t.q, t.n, t.l, b, y, c, to_canonical(c, b))


def solutions_for_base(
    t: Triple, b: int, *, factor_budget_ms: int | None = None
) -> list[SolutionRecord]:
    """All solutions at base b, ascending in y.

    Complete and sound: c * r is a q-th power exactly when c = k**q * d,
    so scanning integer k with k**q * d inside the c-range finds every
    solution once.  Interval endpoints come from exact root extraction
    with a direct power check on both candidates.
    """
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    f = factor_quotient(b, t.n, t.l, budget_ms=factor_budget_ms)
    r = f.value
    d = compute_defect(f, t.q)
    s, exact = iroot(d * r, t.q)
    assert exact, "defect times quotient must be a perfect power"
    c_lo, c_hi = b ** (t.l - 1), b**t.l
    k, _ = iroot((c_lo - 1) // d + 1, t.q)
    while k**t.q * d < c_lo:
        k += 1
    while k > 1 and (k - 1) ** t.q * d >= c_lo:
        k -= 1
    out = []
    while k**t.q * d < c_hi:
        c = k**t.q * d
        rec = _record(t, b, k * s, c)
        assert verify_solution(rec), "defect scan produced a bad record"
        out.append(rec)
        k += 1
    return out


def brute_solutions_for_base(t: Triple, b: int) -> list[SolutionRecord]:
    """Independent oracle: test every c in the range by root extraction.

    Never touches factorization or defects, so it cross-checks
    solutions_for_base from first principles.
    """
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if b**t.l > _BRUTE_LIMIT:
        raise ValueError(f"b**l exceeds the brute-force guard {_BRUTE_LIMIT}")
    r = (b ** (t.n * t.l) - 1) // (b**t.l - 1)
    out = []
    for c in range(b ** (t.l - 1), b**t.l):
        y, exact = iroot(c * r, t.q)
        if exact:
            rec = _record(t, b, y, c)
            assert verify_solution(rec), "oracle produced a bad record"
            out.append(rec)
    return out


# ---------------------------------------------------------------------------
# checkpointing


@dataclass(frozen=True)
class Checkpoint:
    """Progress of one range search: what is done and what was found."""

    triple: Triple
    completed: tuple[tuple[int, int], ...]
    solutions: tuple[SolutionRecord, ...]
    unresolved: tuple[int, ...]

    def normalized(self) -> Checkpoint:
        """Canonical form: merged ranges, records sorted and deduplicated."""
        merged: list[list[int]] = []
        for lo, hi in sorted(self.completed):
            if merged and lo <= merged[-1][1] + 1:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        sols = sorted(set(self.solutions), key=lambda s: (s.b, s.y))
        return Checkpoint(
            self.triple,
            tuple((lo, hi) for lo, hi in merged),
            tuple(sols),
            tuple(sorted(set(self.unresolved))),
        )

    def gaps(self, lo: int, hi: int) -> list[tuple[int, int]]:
        """Subranges of [lo, hi] not yet covered by completed ranges."""
        out = []
        cur = lo
        for a, b in self.normalized().completed:
            if b < cur:
                continue
            if a > hi:
                break
            if a > cur:
                out.append((cur, min(a - 1, hi)))
            cur = max(cur, b + 1)
            if cur > hi:
                break
        if cur <= hi:
            out.append((cur, hi))
        return out


def _int(s) -> int:
    if isinstance(s, str):
        return int(s, 10)
    raise CheckpointError(f"expected decimal string, got {s!r}")


def _solution_to_json(rec: SolutionRecord) -> dict:
    return {
        "solution": {
            "q": str(rec.q),
            "n": str(rec.n),
            "l": str(rec.l),
            "b": str(rec.b),
            "y": str(rec.y),
            "c": str(rec.c),
            "w": [str(d) for d in rec.w.digits],
        }
    }


def _solution_from_json(obj: dict) -> SolutionRecord:
    b = _int(obj["b"])
    digits = tuple(_int(d) for d in obj["w"])
    return SolutionRecord(
        _int(obj["q"]),
        _int(obj["n"]),
        _int(obj["l"]),
        b,
        _int(obj["y"]),
        _int(obj["c"]),
        Word(System.CANONICAL, b, digits),
    )


def checkpoint_lines(cp: Checkpoint) -> list[str]:
    cp = cp.normalized()
    lines = [json.dumps({"triple": [str(cp.triple.q), str(cp.triple.n), str(cp.triple.l)]})]
    for lo, hi in cp.completed:
        lines.append(json.dumps({"range": [str(lo), str(hi)]}))
    for rec in cp.solutions:
        lines.append(json.dumps(_solution_to_json(rec)))
    for b in cp.unresolved:
        lines.append(json.dumps({"unresolved": str(b)}))
    return lines


def write_checkpoint(path: str, cp: Checkpoint) -> None:
    """Atomic rewrite: never leaves a partial file behind."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(checkpoint_lines(cp)) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str, expect: Triple | None = None) -> Checkpoint:
    triple: Triple | None = None
    completed: list[tuple[int, int]] = []
    solutions: list[SolutionRecord] = []
    unresolved: list[int] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict) or len(obj) != 1:
                    raise CheckpointError("each line must be a one-key object")
                key, val = next(iter(obj.items()))
                if key == "triple":
                    got = Triple(_int(val[0]), _int(val[1]), _int(val[2]))
                    if triple is not None and got != triple:
                        raise CheckpointError("conflicting triple lines")
                    triple = got
                elif key == "range":
                    lo, hi = _int(val[0]), _int(val[1])
                    if lo > hi:
                        raise CheckpointError(f"empty range [{lo},{hi}]")
                    completed.append((lo, hi))
                elif key == "solution":
                    rec = _solution_from_json(val)
                    bad = check_solution(rec)
                    if bad:
                        raise CheckpointError(f"stored solution fails: {bad}")
                    solutions.append(rec)
                elif key == "unresolved":
                    unresolved.append(_int(val))
                else:
                    raise CheckpointError(f"unknown record kind {key!r}")
            except CheckpointError as e:
                raise CheckpointError(f"{path}:{lineno}: {e}") from None
            except (ValueError, KeyError, IndexError, TypeError) as e:
                raise CheckpointError(f"{path}:{lineno}: {e}") from None
    if triple is None:
        raise CheckpointError(f"{path}: missing triple line")
    if expect is not None and triple != expect:
        raise CheckpointError(
            f"{path}: checkpoint is for triple {triple}, expected {expect}"
        )
    for rec in solutions:
        if rec.triple != triple:
            raise CheckpointError(f"{path}: solution for foreign triple {rec.triple}")
    return Checkpoint(
        triple, tuple(completed), tuple(solutions), tuple(unresolved)
    ).normalized()


def _scan_bases(
    t: Triple, lo: int, hi: int, factor_budget_ms: int | None
) -> tuple[list[SolutionRecord], list[int]]:
    sols: list[SolutionRecord] = []
    unresolved: list[int] = []
    for b in range(lo, hi + 1):
        try:
            sols.extend(solutions_for_base(t, b, factor_budget_ms=factor_budget_ms))
        except FactorBudgetError:
            unresolved.append(b)
    return sols, unresolved


def _scan_chunk(args) -> tuple[list[SolutionRecord], list[int]]:
    t, lo, hi, budget = args
    return _scan_bases(t, lo, hi, budget)


def search_range(
    t: Triple,
    b_lo: int,
    b_hi: int,
    checkpoint_path: str | None = None,
    *,
    workers: int = 1,
    factor_budget_ms: int | None = None,
    flush_every: int = 256,
) -> Checkpoint:
    """Scan bases b_lo..b_hi, resuming from and updating the checkpoint.

    The final checkpoint is deterministic: independent of worker count,
    chunking, and any interrupt/resume history.
    """
    if b_lo < 2 or b_lo > b_hi:
        raise ValueError("need 2 <= b_lo <= b_hi")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if checkpoint_path and os.path.exists(checkpoint_path):
        cp = load_checkpoint(checkpoint_path, expect=t)
    else:
        cp = Checkpoint(t, (), (), ())
    gaps = cp.gaps(b_lo, b_hi)
    new_solutions: list[SolutionRecord] = list(cp.solutions)
    new_unresolved: list[int] = list(cp.unresolved)
    completed: list[tuple[int, int]] = list(cp.completed)

    appender = None
    if checkpoint_path:
        if not os.path.exists(checkpoint_path):
            write_checkpoint(checkpoint_path, cp)
        appender = open(checkpoint_path, "a")

    def note(sols: list[SolutionRecord], unres: list[int], lo: int, hi: int) -> None:
        new_solutions.extend(sols)
        new_unresolved.extend(unres)
        completed.append((lo, hi))
        if appender:
            for rec in sols:
                appender.write(json.dumps(_solution_to_json(rec)) + "\n")
            for b in unres:
                appender.write(json.dumps({"unresolved": str(b)}) + "\n")
            appender.write(json.dumps({"range": [str(lo), str(hi)]}) + "\n")
            appender.flush()

    try:
        if workers == 1:
            for lo, hi in gaps:
                for start in range(lo, hi + 1, flush_every):
                    end = min(start + flush_every - 1, hi)
                    sols, unres = _scan_bases(t, start, end, factor_budget_ms)
                    note(sols, unres, start, end)
        else:
            chunks = []
            for lo, hi in gaps:
                step = max(1, min(flush_every, (hi - lo + 1) // (4 * workers) + 1))
                for start in range(lo, hi + 1, step):
                    chunks.append((t, start, min(start + step - 1, hi), factor_budget_ms))
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for (_, lo, hi, _), (sols, unres) in zip(
                    chunks, pool.map(_scan_chunk, chunks)
                ):
                    note(sols, unres, lo, hi)
    finally:
        if appender:
            appender.close()

    final = Checkpoint(
        t, tuple(completed), tuple(new_solutions), tuple(new_unresolved)
    ).normalized()
    if checkpoint_path:
        write_checkpoint(checkpoint_path, final)
    return final


# ---------------------------------------------------------------------------
# Zeckendorf repetition scans


def _fib_square_candidates_py(y_lo: int, y_hi: int) -> list[int]:
    out = []
    for y in range(y_lo, y_hi):
        digits = to_zeckendorf(y * y).digits
        half, rem = divmod(len(digits), 2)
        if rem == 0 and digits[:half] == digits[half:]:
            out.append(y)
    return out


def _fib_square_candidates_np(y_lo: int, y_hi: int) -> list[int]:
    """Vectorized greedy Zeckendorf of y**2 for every y in [y_lo, y_hi).

    Digit words are packed into two 36-bit lanes per value, so the scan
    is valid while y**2 stays below Fibonacci number 74; the caller
    guards that.  Matches are re-verified exactly by the caller.
    """
    import numpy as np

    out: list[int] = []
    chunk = 1 << 20
    for start in range(y_lo, y_hi, chunk):
        stop = min(start + chunk, y_hi)
        ys = np.arange(start, stop, dtype=np.int64)
        residual = ys * ys
        top = 2
        while fibonacci(top + 1) <= int(residual[-1]):
            top += 1
        low = np.zeros(len(ys), dtype=np.uint64)
        high = np.zeros(len(ys), dtype=np.uint64)
        for i in range(top, 1, -1):
            f = fibonacci(i)
            mask = residual >= f
            residual -= f * mask
            bit = mask.astype(np.uint64)
            if i >= 38:
                high |= bit << np.uint64(i - 38)
            else:
                low |= bit << np.uint64(i - 2)
        # word length of each Zeckendorf string, via exact float exponents
        len_low = np.frexp(low.astype(np.float64))[1].astype(np.int64)
        len_high = np.frexp(high.astype(np.float64))[1].astype(np.int64)
        total = np.where(high > 0, 36 + len_high, len_low)
        even = (total & 1) == 0
        half = (total >> 1).astype(np.uint64)
        ones = np.uint64(1)
        bottom = low & ((ones << half) - ones)
        upper = (high << (np.uint64(36) - half)) | (low >> half)
        match = even & (bottom == upper) & (total > 0)
        out.extend(int(y) for y in ys[match])
    return out


def _numpy_scan_limit() -> int:
    # two 36-bit lanes hold words up to index 73, i.e. y*y < F(74)
    return isqrt(fibonacci(74) - 1)


def search_fib_squares(y_max: int) -> list[tuple[int, Word]]:
    """All y with 2 <= y < y_max whose square has Zeckendorf word u u.

    Returns (y, u) pairs ascending in y.  Candidates come from a packed
    numpy scan when available and in range; every candidate is then
    re-encoded exactly before being reported.
    """
    if y_max <= 2:
        return []
    candidates: list[int]
    try:
        import numpy  # noqa: F401

        have_numpy = True
    except ImportError:
        have_numpy = False
    if have_numpy and y_max - 1 <= _numpy_scan_limit():
        candidates = _fib_square_candidates_np(2, y_max)
    else:
        candidates = _fib_square_candidates_py(2, y_max)
    out = []
    for y in candidates:
        u = split_repetition(to_zeckendorf(y * y), 2)
        if u is not None:
            out.append((y, u))
    return out


def search_fib_powers(q: int, n: int, y_max: int) -> list[tuple[int, Word]]:
    """All y < y_max with the Zeckendorf word of y**q an n-fold repeat."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    out = []
    for y in range(2, y_max):
        u = split_repetition(to_zeckendorf(y**q), n)
        if u is not None:
            out.append((y, u))
    return out
