import random

import pytest

from teichgap import group_words as G
from teichgap.group_words import Mat2


def test_eval_word_examples():
    assert G.eval_word("x") == Mat2(1, 2, 0, 1)
    assert G.eval_word("") == G.IDENTITY
    assert G.eval_word("xyxy") == Mat2(29, 12, 12, 5)


def test_mat2_rejects_bad_determinant():
    with pytest.raises(ValueError):
        Mat2(2, 0, 0, 1)


def test_parse_word_notations():
    assert G.parse_word("x^-1 y^2") == "Xyy"
    assert G.parse_word("x⁻¹y²") == "Xyy"
    assert G.parse_word("(x^-1 y)^3") == "XyXyXy"
    assert G.parse_word("x x^-1 y") == "y"
    assert G.format_word("Xyy") == "x^-1 y^2"


def test_decompose_examples():
    assert G.decompose_gamma2(Mat2(1, 2, 0, 1)) == (1, "x")
    assert G.decompose_gamma2(G.MINUS_I) == (-1, "")
    assert G.decompose_gamma2(Mat2(29, 12, 12, 5)) == (1, "xyxy")


@pytest.mark.parametrize("m", [Mat2(1, 1, 0, 1), Mat2(0, -1, 1, 0), Mat2(2, 1, 1, 1)])
def test_decompose_rejects_outside_gamma2(m):
    with pytest.raises(ValueError):
        G.decompose_gamma2(m)


def test_gamma_examples():
    assert G.gamma_auto("x") == "y"
    assert G.gamma_auto("y") == "Xy"
    assert G.gamma_auto("yxyx") == G.parse_word("x^-1 y^2 x^-1 y^2")
    assert G.gamma_inv("x") == "xY"
    assert G.gamma_inv("y") == "x"


def test_gen_to_xy_examples():
    assert G.gen_to_xy("A") == "yxyx"
    assert G.gen_to_xy("L1") == "xxx"
    assert G.gen_to_xy("AA⁻¹") == ""
    assert G.gen_to_xy("L6") == G.parse_word("y^-1 (x^-1 y)^3 y")


def test_generators_lie_in_pgamma6():
    for name, word in G.GEN_WORDS.items():
        assert G.in_pgamma6(word), name


def test_lemma_rows_all_pass():
    rows = G.verify_lemma_change(3)
    assert len(rows) == 13
    assert all(r.passed for r in rows), [r for r in rows if not r.passed]
    l5 = next(r for r in rows if r.generator == "L5")
    assert l5.rewrite == "L1^-1"


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_m_and_m2_on_generators(k):
    for name, word in G.GEN_WORDS.items():
        assert G.m_value(word, k) == G.M_VALUES[name] % (2 * k), name
        assert G.m2_value(word, k) == G.M2_VALUES[name] % (2 * k), name


def test_m_rejects_words_outside_pgamma6():
    with pytest.raises(ValueError):
        G.m_value("x", 3)


def test_coset_action_examples():
    assert G.coset_action("x", (4, 0), 3) == (8, 1)
    assert G.apply_word_to_coset("xxx", (1, 0), 3) == (1, 0)
    assert G.coset_action("y", (1, 0), 3) == (6, 0)
    assert G.apply_word_to_coset("", (7, 2), 3) == (7, 2)
    assert G.apply_word_to_coset("yxyx", (1, 0), 3) == (1, G.m2_value("yxyx", 3))


def test_coset_action_inverse_letters():
    for k in (1, 3):
        for i in range(1, 13):
            for j in range(2 * k):
                for ch in "xy":
                    p = G.coset_action(ch, (i, j), k)
                    assert G.coset_action(ch.upper(), p, k) == (i, j)


def test_coset_action_forgets_to_mod6_action():
    """Dropping j gives right multiplication on PGamma_2 / PGamma_6, read off mod 6."""
    for i, word in enumerate(G.COSET_REPS, start=1):
        for ch in "xXyY":
            image = G.coset_index_mod6(G.eval_word(G.reduce_word(word + ch)))
            assert G.coset_action(ch, (i, 0), 1)[0] == image


def test_coset_rep_table():
    table = G.coset_rep_table()
    assert len(table) == 12
    assert table[0][1] == G.IDENTITY
    assert table[1][2] == (1, 2, 0, 1)
    a4 = table[3][1]
    assert (1, 2, 4, 3) in {a4.mod(6), (-a4).mod(6)}
    assert sorted(G.coset_index_mod6(m) for _, m, _ in table) == list(range(1, 13))


def test_membership_examples():
    rho = Mat2(29, 12, 12, 5)
    assert G.membership(rho, "PGamma_6")
    assert G.membership(rho, "PGamma_6(2k)", k=3)
    assert not G.membership(G.eval_word("yxyx"), "PGamma_6(2k)", k=3)
    assert G.membership(G.eval_word("yxyx"), "PGamma_6(2k)", k=1) is False
    assert G.membership(G.MINUS_I, "+-Gamma_N", n=5)
    assert not G.membership(G.MINUS_I, "Gamma_N", n=5)
    assert not G.membership(G.T, "PGamma_2")
    assert G.membership(G.T ** 12, "PGamma_6(2k)", k=3)


def test_membership_unknown_group():
    with pytest.raises(ValueError):
        G.membership(G.IDENTITY, "Gamma_0")


def test_stabilizer_of_base_coset_has_trivial_m2():
    rng = random.Random(7)
    k = 3
    found = 0
    for _ in range(4000):
        w = G.reduce_word(rng.choice("xXyY") for _ in range(rng.randint(1, 14)))
        if G.apply_word_to_coset(w, (1, 0), k) == (1, 0):
            found += 1
            assert G.m2_value(w, k) == 0
    assert found > 0
