import random

import pytest

from laumon import characters as ch
from laumon.closed_form import theorem_Z
from laumon.series import Series, render_text


def test_blockdata_validation():
    with pytest.raises(ValueError):
        ch.BlockData((), ())
    with pytest.raises(ValueError):
        ch.BlockData((1, 1), (1,))
    with pytest.raises(ValueError):
        ch.BlockData((0, 1), (1, 2))
    with pytest.raises(ValueError):
        ch.BlockData((1, 1), (2, 2))
    with pytest.raises(ValueError):
        ch.BlockData((1, 1), (2, 1))
    b = ch.BlockData((2, 1), (1, 2))
    assert (b.L, b.ell, b.N) == (2, 3, 4)
    assert b.block(1) == [1, 2]
    assert b.block(2) == [3]


def test_rank_vector_examples():
    assert ch.rank_vector_from(ch.BlockData((2,), (1,))) == (1, 1)
    assert ch.rank_vector_from(ch.BlockData((1, 1), (1, 2))) == (2, 1)
    assert ch.rank_vector_from(ch.BlockData((2, 1), (1, 2))) == (2, 1, 1)


def test_rank_vector_block_property():
    rng = random.Random(21)
    for _ in range(25):
        big_l = rng.randint(1, 4)
        m = tuple(rng.randint(1, 3) for _ in range(big_l))
        s = tuple(sorted(rng.sample(range(1, 9), big_l)))
        b = ch.BlockData(m, s)
        r = ch.rank_vector_from(b)
        for i in range(1, big_l + 1):
            for c in b.block(i):
                assert r[b.ell - c] == s[i - 1]


def test_X_i_examples():
    b = ch.BlockData((2,), (1,))
    assert ch.X_i(b, 1, 0) == Series.one(ch.X_i(b, 1, 0).space)
    b2 = ch.BlockData((1, 1), (1, 2))
    s = ch.X_i(b2, 1, 1)
    assert s == Series.one(s.space)


def test_X_ij_small_value():
    b = ch.BlockData((1, 1), (1, 2))
    s = ch.X_ij(b, 1, 2, 1)
    assert render_text(s) == "q0 + q1 + 1"
    with pytest.raises(ValueError):
        ch.X_ij(b, 2, 1, 1)


def test_X_ij_truncation_consistency():
    b = ch.BlockData((1, 1), (1, 2))
    assert ch.X_ij(b, 1, 2, 3).truncate(2) == ch.X_ij(b, 1, 2, 2)


def test_B_character_small_value():
    b = ch.BlockData((1, 1), (1, 2))
    s = ch.B_character(b, 1, 2, 1)
    assert render_text(s) == "y^2*q0 + 1"
    with pytest.raises(ValueError):
        ch.B_character(b, 1, 1, 1)


def test_betagamma_contains_B_factors():
    b = ch.BlockData((1, 2), (1, 2))
    bf = ch.b_character_factors(b, 1, 2)
    full = ch.betagamma_factors(b, 1, 2)
    assert full[:len(bf)] == bf
    assert len(full) == 2 * len(bf)


def test_character_coefficients_nonnegative():
    b = ch.BlockData((1, 1), (1, 2))
    for s in (ch.X_i(b, 1, 3), ch.X_i(b, 2, 3), ch.X_ij(b, 1, 2, 3),
              ch.B_character(b, 1, 2, 3), ch.betagamma_refined(b, 1, 2, 3)):
        assert all(c > 0 for c in s.terms.values())


def test_w_refined_verma():
    b = ch.BlockData((2,), (1,))
    assert ch.w_refined_verma(b, 0).terms == {(0, 0, 0): 1}
    # L=1 with s=1: no B factors, so this is the whole generating function
    assert ch.w_refined_verma(b, 4) == theorem_Z((1, 1), 4)


def test_w_refined_verma_factorwise():
    b = ch.BlockData((1, 1), (1, 2))
    prod = ch.X_i(b, 1, 3) * ch.X_i(b, 2, 3) * ch.X_ij(b, 1, 2, 3)
    assert ch.w_refined_verma(b, 3) == prod


def test_verify_WZ():
    rep = ch.verify_WZ(ch.BlockData((1, 1), (1, 2)), 4)
    assert rep["equal"] and rep["brute_checked"] and rep["brute_equal"]
    rep = ch.verify_WZ(ch.BlockData((2, 1), (1, 2)), 3)
    assert rep["equal"]
    rep = ch.verify_WZ(ch.BlockData((1, 1), (1, 2)), 2, brute=False)
    assert rep["equal"] and not rep["brute_checked"]


def test_spin_decomposition_examples():
    ents = ch.spin_decomposition(ch.BlockData((2,), (1,)))
    assert ents == [((1, 1), 1, 4)]
    ents = ch.spin_decomposition(ch.BlockData((1, 1), (1, 2)))
    assert ents == [((1, 1), 1, 1), ((2, 2), 1, 1), ((2, 2), 3, 1),
                    ((1, 2), 2, 2)]
    assert ch.spin_total_dimension(ents) == 9
    ents = ch.spin_decomposition(ch.BlockData((1, 1, 1), (1, 2, 3)))
    assert ch.spin_total_dimension(ents) == 36


def test_spin_total_random():
    rng = random.Random(22)
    for _ in range(40):
        big_l = rng.randint(1, 4)
        m = tuple(rng.randint(1, 3) for _ in range(big_l))
        s = tuple(sorted(rng.sample(range(1, 7), big_l)))
        b = ch.BlockData(m, s)
        assert ch.spin_total_dimension(ch.spin_decomposition(b)) == b.N ** 2


def test_free_field_counts():
    ff = ch.free_field_counts(ch.BlockData((2,), (1,)))
    assert ff["diagonal"] == [{"i": 1, "fermions": 0}]
    assert ff["pairs"] == []

    ff = ch.free_field_counts(ch.BlockData((1, 1), (1, 2)))
    pair = ff["pairs"][0]
    assert pair["direct"] == {"fermions": 4, "betagamma": 1}
    assert pair["iterated"] == {"fermions": 0, "betagamma": 0}

    ff = ch.free_field_counts(ch.BlockData((1, 1), (1, 3)))
    pair = ff["pairs"][0]
    assert pair["direct"] == {"fermions": 4, "betagamma": 0}
    # difference between the two first-branch counts is 2*m_i*m_j*(s_j-s_i)
    assert pair["direct"]["fermions"] - pair["iterated"]["fermions"] == 4

    ff = ch.free_field_counts(ch.BlockData((1, 1), (2, 4)))
    pair = ff["pairs"][0]
    assert pair["direct"] == {"fermions": 12, "betagamma": 0}
    assert pair["iterated"] == {"fermions": 16, "betagamma": 4}


def test_affine_verma_denominator_partition_numbers():
    s = ch.affine_verma_denominator(1, 6, 4)
    assert [s.coefficient((k, 0)) for k in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_affine_verma_denominator_order_zero():
    s = ch.affine_verma_denominator(2, 0, 2)
    want = {(0, 0, 0): 1, (0, -1, 1): 1, (0, -2, 2): 1}
    assert s.terms == want


def test_verify_verma_vs_X1():
    for n in (1, 2, 3):
        rep = ch.verify_verma_vs_X1(n, 4, 4)
        assert rep["equal"], rep
        assert [c["name"] for c in rep["checks"]] == [
            "substituted_vs_X1", "direct_zu_vs_denominator"]


def test_render_factor():
    f = ch.UZFactor(-2, 1, (1, -1, 0))
    assert ch.render_factor(f) == "(y^-2*z*u1*u2^-1)_inf^-1"
    assert ch.render_factor(ch.UZFactor(0, 0, (0, 0, 0))) == "(1)_inf^-1"
