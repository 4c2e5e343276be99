"""Powers whose digit strings are a word repeated n times.

A power y**q can have a base-b representation that is some word w
written n times in a row; equivalently y**q = c * (b**(n*l) - 1) /
(b**l - 1) where c is the value of the l-digit word w.  This package
searches base ranges exhaustively for such solutions, generates the
known infinite families, and verifies golden tables of results, in
three digit systems: canonical base b, bijective base b (digits 1..b),
and the Fibonacci-based Zeckendorf system.
"""

from .arith import QuadInt, ceil_root, iroot, quad_pow_mod, unit_order
from .corpus import (
    CorpusReport,
    MalformedCorpusError,
    RowResult,
    TableCorpus,
    builtin_corpora,
    format_report,
    load_corpus,
    verify_corpus,
)
from .factoring import (
    FactorBudgetError,
    Factorization,
    cyclotomic,
    cyclotomic_split,
    divisors,
    factor,
    factor_quotient,
    is_probable_prime,
    primes_upto,
    radical,
)
from .families import (
    FUNDAMENTAL_UNITS,
    FamilyError,
    NormFamily,
    bijective_family_rows,
    find_seed,
    gen_22_by_base,
    gen_22_by_length,
    gen_231,
    gen_232,
    gen_241,
    gen_322,
    gen_323,
    gen_331,
    gen_422,
    gen_bijective_square,
    gen_bijective_table_family,
    gen_fibonacci_family,
    gen_fibonacci_family2,
    gen_n21,
    norm_family_iter,
)
from .search import (
    Checkpoint,
    CheckpointError,
    SolutionRecord,
    brute_solutions_for_base,
    check_solution,
    compute_defect,
    load_checkpoint,
    search_fib_powers,
    search_fib_squares,
    search_range,
    solutions_for_base,
    verify_solution,
    write_checkpoint,
)
from .triples import F_value, Triple, is_admissible
from .words import (
    MalformedWordError,
    System,
    Word,
    bijective_word,
    canonical_word,
    fibonacci,
    parse_word,
    render_word,
    repeat_word,
    split_repetition,
    to_bijective,
    to_canonical,
    to_zeckendorf,
    word_value,
    zeckendorf_word,
)

__version__ = "0.1.0"

__all__ = [
    "CheckpointError",
    "Checkpoint",
    "CorpusReport",
    "F_value",
    "FUNDAMENTAL_UNITS",
    "FactorBudgetError",
    "Factorization",
    "FamilyError",
    "MalformedCorpusError",
    "MalformedWordError",
    "NormFamily",
    "QuadInt",
    "RowResult",
    "SolutionRecord",
    "System",
    "TableCorpus",
    "Triple",
    "Word",
    "bijective_family_rows",
    "bijective_word",
    "brute_solutions_for_base",
    "builtin_corpora",
    "canonical_word",
    "ceil_root",
    "check_solution",
    "compute_defect",
    "cyclotomic",
    "cyclotomic_split",
    "divisors",
    "factor",
    "factor_quotient",
    "fibonacci",
    "find_seed",
    "format_report",
    "gen_22_by_base",
    "gen_22_by_length",
    "gen_231",
    "gen_232",
    "gen_241",
    "gen_322",
    "gen_323",
    "gen_331",
    "gen_422",
    "gen_bijective_square",
    "gen_bijective_table_family",
    "gen_fibonacci_family",
    "gen_fibonacci_family2",
    "gen_n21",
    "is_admissible",
    "is_probable_prime",
    "iroot",
    "load_checkpoint",
    "load_corpus",
    "norm_family_iter",
    "parse_word",
    "primes_upto",
    "quad_pow_mod",
    "radical",
    "render_word",
    "repeat_word",
    "search_fib_powers",
    "search_fib_squares",
    "search_range",
    "solutions_for_base",
    "split_repetition",
    "to_bijective",
    "to_canonical",
    "to_zeckendorf",
    "unit_order",
    "verify_corpus",
    "verify_solution",
    "word_value",
    "write_checkpoint",
    "zeckendorf_word",
]
