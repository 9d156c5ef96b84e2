import random

import pytest

from laumon.localization import (FixedPoint, brute_force_Z, check_ranks,
                                 enumerate_fixed_points, fixed_point_morse_index,
                                 fixed_points_of_size, invariant_part,
                                 morse_index_formula, morse_index_oracle,
                                 poincare_polynomial, sector_index,
                                 tangent_character, tangent_count)
from laumon.partitions import Partition
from laumon.series import to_json


def mus_of(fp):
    return tuple(mu.to_list() for mu in fp.mus)


def test_check_ranks():
    assert check_ranks([2, 1]) == (2, 1)
    with pytest.raises(ValueError):
        check_ranks([3])
    with pytest.raises(ValueError):
        check_ranks([1, -1])
    with pytest.raises(ValueError):
        check_ranks([0, 0])


def test_sector_index():
    assert sector_index(1, (1, 1)) == 0
    assert sector_index(2, (1, 1)) == 1
    assert sector_index(3, (2, 2, 1)) == 1
    assert sector_index(5, (2, 2, 1)) == 2
    with pytest.raises(ValueError):
        sector_index(0, (1, 1))
    with pytest.raises(ValueError):
        sector_index(6, (2, 2, 1))


def test_enumerate_fixed_points():
    assert [mus_of(fp) for fp in enumerate_fixed_points((1, 1), (0, 0))] == [([], [])]
    got = [mus_of(fp) for fp in enumerate_fixed_points((1, 1), (1, 1))]
    assert got == [([1, 1], []), ([1], [1]), ([], [1, 1])]
    assert [mus_of(fp) for fp in enumerate_fixed_points((1, 1), (1, 0))] == [([1], [])]
    with pytest.raises(ValueError):
        enumerate_fixed_points((1, 1), (1,))


def test_tangent_character_hand_case():
    fp = FixedPoint([(1,), ()])
    tc = tangent_character(fp, (1, 1))
    by_sector = {e.sector: e.terms for e in tc}
    assert by_sector[(1, 1)] == {(0, 1, 1): 1, (1, 0, 0): 1}
    assert by_sector[(1, 2)] == {(1, 1, 0): 1}
    assert by_sector[(2, 1)] == {(0, 0, 1): 1}
    assert by_sector[(2, 2)] == {}
    assert tangent_count(tc) == 4
    assert tangent_count(invariant_part(tc, 2)) == 2


def test_tangent_character_empty_is_empty():
    fp = FixedPoint([(), (), ()])
    tc = tangent_character(fp, (1, 1, 1))
    assert all(e.terms == {} for e in tc)


def test_tangent_dimension_count():
    rng = random.Random(17)
    for r in ((1, 1), (2, 1), (1, 1, 1)):
        for total in range(4):
            for fp in fixed_points_of_size(r, total):
                tc = tangent_character(fp, r)
                assert tangent_count(tc) == 2 * sum(r) * total
    # invariant count constant across each component
    for r in ((1, 1), (2, 1)):
        seen = {}
        for fp in fixed_points_of_size(r, 3):
            inv = tangent_count(invariant_part(tangent_character(fp, r), len(r)))
            seen.setdefault(fp.occupation(r), set()).add(inv)
        assert all(len(v) == 1 for v in seen.values())
    del rng


def test_morse_index_formula_examples():
    assert morse_index_formula(Partition(()), 2, (1, 1)) == 0
    assert morse_index_formula(Partition((1, 1)), 1, (1, 1)) == 1
    assert morse_index_formula(Partition((1,)), 2, (1, 1)) == 0


def test_morse_oracle_examples():
    assert morse_index_oracle(FixedPoint([(), ()]), (1, 1)) == 0
    assert morse_index_oracle(FixedPoint([(1, 1), ()]), (1, 1)) == 1
    assert morse_index_oracle(FixedPoint([(1,), (1,)]), (1, 1)) == 0


def test_morse_formula_matches_oracle():
    rng = random.Random(18)
    ranks = [(1, 1), (2, 1), (1, 1, 1)]
    for _ in range(40):
        r = ranks[rng.randrange(len(ranks))]
        total = rng.randint(0, 3)
        fps = fixed_points_of_size(r, total)
        fp = fps[rng.randrange(len(fps))]
        assert fixed_point_morse_index(fp, r) == morse_index_oracle(fp, r)


def test_poincare_polynomial():
    assert poincare_polynomial((1, 1), (0, 0)) == {0: 1}
    assert poincare_polynomial((1, 1), (1, 1)) == {0: 1, 2: 2}
    assert poincare_polynomial((1, 1), (2, 0)) == {0: 1}
    p = poincare_polynomial((2, 1), (2, 1))
    assert all(e >= 0 and e % 2 == 0 and c > 0 for e, c in p.items())
    assert sum(p.values()) == len(enumerate_fixed_points((2, 1), (2, 1)))


def test_brute_force_Z_small():
    one = brute_force_Z((1, 1), 0)
    assert one.terms == {(0, 0, 0): 1}
    z = brute_force_Z((1, 1), 2)
    assert z.coefficient((2, 1, 1)) == 2
    assert z.coefficient((0, 1, 1)) == 1
    assert z.coefficient((0, 2, 0)) == 1


def test_brute_force_Z_truncation_coherence():
    z3 = brute_force_Z((2, 1), 3)
    z2 = brute_force_Z((2, 1), 2)
    assert z3.truncate(2) == z2


def test_brute_force_Z_thread_determinism():
    a = brute_force_Z((1, 1, 1), 3, threads=1)
    b = brute_force_Z((1, 1, 1), 3, threads=4)
    assert a == b
    assert to_json(a) == to_json(b)


def test_occupation_roundtrip():
    rng = random.Random(19)
    for _ in range(30):
        r = ((1, 1), (2, 1))[rng.randrange(2)]
        total = rng.randint(0, 4)
        for fp in fixed_points_of_size(r, total):
            n = fp.occupation(r)
            assert sum(n) == total
            assert fp in enumerate_fixed_points(r, n)
