"""Family generators: first members against the golden tables, and
structural invariants along each orbit."""

import pytest

from repwords.arith import QuadInt
from repwords.families import (
    FUNDAMENTAL_UNITS,
    FamilyError,
    NormFamily,
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
from repwords.search import verify_solution
from repwords.words import repeat_word, to_bijective, to_zeckendorf, word_value


def test_fundamental_units_have_unit_norm():
    assert FUNDAMENTAL_UNITS[2].norm() == -1
    assert FUNDAMENTAL_UNITS[3].norm() == 1
    assert FUNDAMENTAL_UNITS[7].norm() == 1


def test_find_seed():
    assert find_seed(3, -3, a_odd=True, b_multiple=2) == QuadInt(3, 2, 3)
    assert find_seed(7, -3, a_odd=True, b_multiple=14) == QuadInt(37, 14, 7)
    with pytest.raises(FamilyError):
        find_seed(3, -5, bound=100)


def test_norm_family_iter_pell():
    u = FUNDAMENTAL_UNITS[2]
    fam = NormFamily(d=2, target_norm=-1, seed=u, unit=u, step=2)
    members = norm_family_iter(fam, 4)
    assert [(m.a, m.b) for m in members] == [(1, 1), (7, 5), (41, 29), (239, 169)]
    assert all(m.norm() == -1 for m in members)
    assert norm_family_iter(fam, 1) == [u]


def test_norm_family_norm_preserved_100():
    u3 = FUNDAMENTAL_UNITS[3]
    fam = NormFamily(3, -3, QuadInt(3, 2, 3), u3, 2)
    for m in norm_family_iter(fam, 100):
        assert m.norm() == -3 and m.a > 0 and m.b > 0


def test_norm_family_validation():
    u = FUNDAMENTAL_UNITS[2]
    with pytest.raises(FamilyError):
        NormFamily(2, -3, u, u, 2)  # seed norm mismatch
    with pytest.raises(FamilyError):
        NormFamily(2, -1, u, QuadInt(2, 1, 2), 2)  # not a unit
    with pytest.raises(FamilyError):
        NormFamily(2, -1, u, u, 3, congruence=(13, (1, 1)))  # u^3 != 1 mod 13


# golden first members, straight from the solution tables
FIRST_MEMBERS = [
    (gen_322, (7, 10, (2, 6))),
    (gen_331, (18, 7, (1,))),
    (gen_323, (19, 140, (1, 2, 1))),
    (gen_241, (7, 40, (4,))),
    (gen_422, (239, 78, (2, 170))),
    (gen_231, (22, 39, (3,))),
    (gen_232, (313, 7575393, (19, 32))),
]


@pytest.mark.parametrize("gen,expect", FIRST_MEMBERS)
def test_first_members(gen, expect):
    r = gen(1)[0]
    assert (r.b, r.y, r.w.digits) == expect


def test_all_family_records_verify_25():
    for gen in (gen_231, gen_322, gen_331, gen_323, gen_241, gen_422):
        for r in gen(25):
            assert verify_solution(r)


def test_gen_232_deep_members_verify():
    # each step multiplies by a unit power of order 56: keep the count low
    for r in gen_232(4):
        assert verify_solution(r)
        assert (r.b * r.b - r.b + 1) % 49 == 0
        assert (2 * r.b + 1) % 98 == 39


def test_gen_232_second_member():
    b1 = gen_232(2)[1].b
    assert b1 == 33519770429365238471302383574583401


def test_gen_231_members_in_table_window():
    # family members landing under b <= 500 must be exactly the c=3 table rows
    got = [(r.b, r.y) for r in gen_231(3) if r.b <= 500]
    assert got == [(22, 39), (313, 543)]


def test_gen_331_congruence():
    for r in gen_331(3):
        assert r.y % 7 == 0
        assert r.c * 7 == r.y
        assert 343 * r.c * r.c == r.b * r.b + r.b + 1


def test_gen_422_divisibility():
    u7 = FUNDAMENTAL_UNITS[2] ** 7
    fam = NormFamily(2, -1, u7, FUNDAMENTAL_UNITS[2], 14)
    for m in norm_family_iter(fam, 5):
        assert m.b % 13 == 0


def test_gen_n21():
    rows = gen_n21(2, 3)
    assert [(r.b, r.y, r.c) for r in rows] == [(3, 2, 1), (8, 3, 1), (15, 4, 1)]
    rows = gen_n21(3, 2)
    assert [(r.b, r.y) for r in rows] == [(7, 2), (26, 3)]
    with pytest.raises(ValueError):
        gen_n21(1, 3)


def test_gen_22_by_length_worked_example():
    r = gen_22_by_length(12, 1)[0]
    assert r.b == 110
    assert r.y == 369226867849529411764706
    assert r.w.digits == (1, 57, 52, 15, 108, 52, 57, 94, 1, 57, 52, 16)


def test_gen_22_by_length_small():
    for l in (1, 2, 3, 4, 6):
        for r in gen_22_by_length(l, 3):
            assert r.l == l and len(r.w) == l
            assert verify_solution(r)
    with pytest.raises(ValueError):
        gen_22_by_length(0, 1)


def test_gen_22_by_base():
    ys = [r.y for r in gen_22_by_base(2, 2)]
    assert ys[0] == 820  # first constructed member at base 2
    for b in range(2, 20):
        for r in gen_22_by_base(b, 2):
            assert r.b == b
            assert verify_solution(r)
    # word length is always an odd multiple of the half-order
    rows = gen_22_by_base(7, 3)
    assert [r.l for r in rows] == [2, 6, 10]


def test_gen_22_by_base_large_base_branch():
    for b in (16, 100, 3600):
        for r in gen_22_by_base(b, 2):
            assert verify_solution(r)


def test_gen_22_deep_members_verify():
    # emission already verifies; this pins the 25-member contract visibly
    assert len(gen_22_by_length(2, 25)) == 25
    assert len(gen_22_by_base(5, 25)) == 25


def test_gen_bijective_square():
    y, w = gen_bijective_square(2, 2)
    assert (y, w.digits) == (5, (2, 1))
    y, w = gen_bijective_square(10, 3)
    assert (y, w.digits) == (1001, (9, 10, 1))
    for b in (2, 3, 7, 12):
        for l in (2, 3, 5, 9):
            y, w = gen_bijective_square(b, l)
            assert y == b**l + 1 and len(w.digits) == l
    with pytest.raises(ValueError):
        gen_bijective_square(2, 1)


def test_gen_bijective_table_rows():
    y, w = gen_bijective_table_family(7, 1, 0)
    assert y == 172 and w.digits == (1, 5, 2)
    assert word_value(to_bijective(172 * 172, 7)) == 172 * 172
    y, w = gen_bijective_table_family(8, 1, 0)
    assert to_bijective(y, 8).digits == (5, 2, 6)
    with pytest.raises(FamilyError):
        gen_bijective_table_family(2, 9, 0)
    with pytest.raises(ValueError):
        gen_bijective_table_family(7, 1, -1)


def test_gen_bijective_table_deep():
    from repwords.families import bijective_family_rows

    for b, row in bijective_family_rows():
        for n in (0, 1, 7, 20):
            y, w = gen_bijective_table_family(b, row, n)
            assert to_bijective(y * y, b) == repeat_word(w, 2)


def test_gen_fibonacci_family():
    y, w = gen_fibonacci_family(1)
    assert y == 5236
    assert w.digits == (1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0)
    y2, w2 = gen_fibonacci_family(2)
    assert y2 == 243252
    for n in range(1, 40):
        y, w = gen_fibonacci_family(n)
        assert to_zeckendorf(y * y) == repeat_word(w, 2)
        assert len(w.digits) == 8 * n + 10
    with pytest.raises(ValueError):
        gen_fibonacci_family(0)


def test_gen_fibonacci_family2():
    y, w = gen_fibonacci_family2(1)
    assert y == 98210
    assert "".join(map(str, w.digits)) == "100100000000100100000010"
    for n in range(1, 30):
        y, w = gen_fibonacci_family2(n)
        assert to_zeckendorf(y * y) == repeat_word(w, 2)
    with pytest.raises(ValueError):
        gen_fibonacci_family2(0)


def test_family_members_found_by_search():
    # members inside a searchable window must also come out of the search
    from repwords.search import search_range
    from repwords.triples import Triple

    cp = search_range(Triple(3, 2, 2), 2, 50)
    assert [(r.b, r.y) for r in cp.solutions if (r.b, r.y) == (7, 10)] == [(7, 10)]
