"""Bundled golden tables of known solutions, and their verification.

Each corpus is a CSV file: comment lines start with '#', the header row
names the columns, and every integer is kept as a decimal string so the
files stay diffable at any magnitude.  Three layouts exist:

  q,n,l,b,y,c,w            full solution records
  y,w                      Zeckendorf squares, w a bit word
  b,row,y_pattern,w_pattern   parametric bijective families

verify_corpus recomputes every row from scratch and reports the first
violated invariant per row, never stopping at the first bad row.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .families import _instantiate_pattern, _parse_pattern
from .search import SolutionRecord, check_solution
from .words import (
    MalformedWordError,
    Word,
    bijective_word,
    canonical_word,
    repeat_word,
    to_bijective,
    to_zeckendorf,
    word_value,
    zeckendorf_word,
)


class MalformedCorpusError(ValueError):
    """A corpus file that cannot even be parsed into rows."""


@dataclass(frozen=True)
class PatternRow:
    """One parametric family: digit patterns for y and w, linear in n."""

    base: int
    row: int
    y_pattern: str
    w_pattern: str


@dataclass(frozen=True)
class TableCorpus:
    name: str
    kind: str  # "solutions" | "zeckendorf-squares" | "bijective-patterns"
    rows: tuple
    source: str


@dataclass(frozen=True)
class RowResult:
    index: int  # 1-based data-row number
    label: str
    failure: str | None


@dataclass(frozen=True)
class CorpusReport:
    corpus: str
    results: tuple[RowResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.failure is None for r in self.results)

    @property
    def failures(self) -> tuple[RowResult, ...]:
        return tuple(r for r in self.results if r.failure is not None)


_HEADERS = {
    ("q", "n", "l", "b", "y", "c", "w"): "solutions",
    ("y", "w"): "zeckendorf-squares",
    ("b", "row", "y_pattern", "w_pattern"): "bijective-patterns",
}

_WORD_CELL = re.compile(r"\(([0-9]+(?:,[0-9]+)*)\)")


def _tables_dir():
    return resources.files("repwords.tables")


def builtin_corpora() -> tuple[str, ...]:
    """Names of the corpora shipped inside the package."""
    names = [
        entry.name[:-4]
        for entry in _tables_dir().iterdir()
        if entry.name.endswith(".csv")
    ]
    return tuple(sorted(names))


def _parse_solution(cells: list[str], where: str) -> SolutionRecord:
    q, n, l, b, y, c = (int(v) for v in cells[:6])
    m = _WORD_CELL.fullmatch(cells[6].strip())
    if not m:
        raise MalformedCorpusError(f"{where}: bad word cell {cells[6]!r}")
    digits = tuple(int(d) for d in m.group(1).split(","))
    return SolutionRecord(q, n, l, b, y, c, canonical_word(b, digits))


def _parse_rows(kind: str, numbered, name: str):
    rows = []
    for lineno, cells in numbered:
        where = f"{name}:{lineno}"
        try:
            if kind == "solutions":
                if len(cells) != 7:
                    raise MalformedCorpusError(f"{where}: expected 7 columns")
                rows.append(_parse_solution(cells, where))
            elif kind == "zeckendorf-squares":
                if len(cells) != 2:
                    raise MalformedCorpusError(f"{where}: expected 2 columns")
                y = int(cells[0])
                digits = tuple(int(ch) for ch in cells[1].strip())
                rows.append((y, zeckendorf_word(digits)))
            else:
                if len(cells) != 4:
                    raise MalformedCorpusError(f"{where}: expected 4 columns")
                row = PatternRow(
                    int(cells[0]), int(cells[1]), cells[2].strip(), cells[3].strip()
                )
                for pat in (row.y_pattern, row.w_pattern):
                    for block, _, _ in _parse_pattern(pat):
                        bad = [d for d in block if not 1 <= d <= row.base]
                        if bad:
                            raise MalformedCorpusError(
                                f"{where}: digit {bad[0]} outside 1..{row.base}"
                            )
                rows.append(row)
        except MalformedCorpusError:
            raise
        except (ValueError, MalformedWordError) as exc:
            raise MalformedCorpusError(f"{where}: {exc}") from exc
    return tuple(rows)


def load_corpus(name_or_path: str | Path) -> TableCorpus:
    """Load a corpus by bundled name or by file path.

    A path wins when the file exists; otherwise the name (with or
    without .csv) is looked up among the bundled tables.
    """
    path = Path(name_or_path)
    if path.is_file():
        name = path.stem
        text = path.read_text()
    else:
        base = str(name_or_path)
        if base.endswith(".csv"):
            base = base[:-4]
        entry = _tables_dir().joinpath(base + ".csv")
        if not entry.is_file():
            raise MalformedCorpusError(
                f"no such corpus {name_or_path!r}; bundled: {', '.join(builtin_corpora())}"
            )
        name = base
        text = entry.read_text()

    comments: list[str] = []
    numbered: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.lstrip().startswith("#"):
            comments.append(line.lstrip().lstrip("#").strip())
        else:
            numbered.append((lineno, line))
    if not numbered:
        return TableCorpus(name, "solutions", (), " ".join(comments))

    parsed = list(zip((n for n, _ in numbered), csv.reader(l for _, l in numbered)))
    header_lineno, header = parsed[0]
    kind = _HEADERS.get(tuple(h.strip() for h in header))
    if kind is None:
        raise MalformedCorpusError(f"{name}:{header_lineno}: unrecognized header {header}")
    rows = _parse_rows(kind, parsed[1:], name)
    return TableCorpus(name, kind, rows, " ".join(comments))


def _check_zeckendorf_row(y: int, w: Word) -> str | None:
    if y < 2:
        return "y-range"
    if to_zeckendorf(y * y) != repeat_word(w, 2):
        return "square-digits"
    return None


def _check_pattern_row(row: PatternRow, n_max: int) -> str | None:
    y_runs = _parse_pattern(row.y_pattern)
    w_runs = _parse_pattern(row.w_pattern)
    for n in range(n_max + 1):
        try:
            y = word_value(bijective_word(row.base, _instantiate_pattern(y_runs, n)))
            w = bijective_word(row.base, _instantiate_pattern(w_runs, n))
        except (ValueError, MalformedWordError) as exc:
            return f"n={n}: {exc}"
        if to_bijective(y * y, row.base) != repeat_word(w, 2):
            return f"square-digits at n={n}"
    return None


def verify_corpus(corpus: TableCorpus, *, pattern_n_max: int = 50) -> CorpusReport:
    """Recheck every row of a corpus, one result per row."""
    results = []
    for i, row in enumerate(corpus.rows, start=1):
        if corpus.kind == "solutions":
            label = f"q={row.q} n={row.n} l={row.l} b={row.b} y={row.y}"
            failure = check_solution(row)
        elif corpus.kind == "zeckendorf-squares":
            y, w = row
            label = f"y={y}"
            failure = _check_zeckendorf_row(y, w)
        else:
            label = f"b={row.base} row={row.row}"
            failure = _check_pattern_row(row, pattern_n_max)
        results.append(RowResult(i, label, failure))
    return CorpusReport(corpus.name, tuple(results))


def format_report(report: CorpusReport) -> str:
    lines = []
    for r in report.results:
        if r.failure is None:
            lines.append(f"ok   {r.label}")
        else:
            lines.append(f"FAIL {r.label}: {r.failure}")
    passed = sum(r.failure is None for r in report.results)
    lines.append(f"corpus {report.corpus}: {passed}/{len(report.results)} rows pass")
    return "\n".join(lines)
