import random

import pytest

from origamis.sl2z import (CongruenceSubgroup, ID2, J_MAT, LETTER_MATS, NEG_ID,
                           S_MAT, T_MAT, congruence_generators, eval_letters,
                           mat_mod, mat_mul, mat_neg, mat_pow, sl2z_word)


def random_matrix(rng, length=14):
    m = ID2
    for _ in range(length):
        m = mat_mul(m, LETTER_MATS[rng.choice(["S", "S-", "T", "T-"])])
    return m


def test_word_identity():
    word = sl2z_word(ID2)
    assert word.letters == () and word.sign == 1


def test_word_j_is_pinned():
    assert sl2z_word(J_MAT).exact_letters() == ("T-", "S", "T-")


def test_word_s_power():
    word = sl2z_word(mat_pow(S_MAT, 120))
    assert word.letters == ("S",) * 120 and word.sign == 1


def test_word_neg_id():
    word = sl2z_word(NEG_ID)
    assert word.sign == -1
    assert eval_letters(word.exact_letters()) == NEG_ID


@pytest.mark.parametrize("seed", range(8))
def test_word_roundtrip_random(seed):
    rng = random.Random(seed)
    for _ in range(25):
        m = random_matrix(rng)
        assert eval_letters(sl2z_word(m).exact_letters()) == m


def test_congruence_indices():
    assert CongruenceSubgroup(2).index == 6
    assert CongruenceSubgroup(3).index == 24
    assert CongruenceSubgroup(4).index == 48


def test_congruence_generators_reduce_to_identity():
    for level in (2, 3, 4):
        for word in congruence_generators(level):
            assert mat_mod(word.matrix(), level) == mat_mod(ID2, level)


def test_gamma2_contains_standard_generators():
    sub = CongruenceSubgroup(2)
    for m in (mat_pow(S_MAT, 2), mat_pow(T_MAT, 2), NEG_ID):
        word = sl2z_word(m)
        pieces = sub.rewrite(word.exact_letters())
        product = ID2
        for piece in pieces:
            product = mat_mul(product, piece.matrix())
        assert product == m


def test_gamma4_contains_named_matrices():
    sub = CongruenceSubgroup(4)
    named = [
        mat_pow(S_MAT, 4),
        mat_pow(T_MAT, 4),
        mat_pow(mat_mul(T_MAT, S_MAT), 3),
        mat_neg(mat_pow(mat_mul(mat_pow(S_MAT, 2), T_MAT), 2)),
        mat_mul(mat_mul(mat_pow(S_MAT, 2), mat_pow(T_MAT, 4)), mat_pow(S_MAT, 2)),
    ]
    assert named[2] == ((13, 8), (8, 5))
    for m in named:
        pieces = sub.rewrite(sl2z_word(m).exact_letters())
        product = ID2
        for piece in pieces:
            product = mat_mul(product, piece.matrix())
        assert product == m


def test_rewrite_rejects_non_members():
    sub = CongruenceSubgroup(2)
    with pytest.raises(ValueError):
        sub.rewrite(("S",))
