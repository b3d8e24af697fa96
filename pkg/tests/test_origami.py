import random

import pytest

from teichgap import origami as O
from teichgap.group_words import IDENTITY, L, MINUS_I, S, T, Mat2

E2 = O.Origami((1, 0, 3, 2), (2, 3, 0, 1))
L3 = O.Origami((1, 0, 2), (2, 1, 0))  # sigma_a = (1,2), sigma_b = (1,3)


def test_origami_validation():
    with pytest.raises(ValueError):
        O.Origami((0, 0), (0, 1))
    with pytest.raises(ValueError):
        O.Origami((0, 1), (0, 1)).check()  # disconnected


def test_perm_helpers():
    p = O.perm_from_cycles([(1, 2, 3)], 4)
    assert p == (1, 2, 0, 3)
    assert O.perm_compose(p, O.perm_inverse(p)) == (0, 1, 2, 3)
    assert O.perm_cycles(p) == [(0, 1, 2), (3,)]


def test_torus_invariants():
    assert O.genus(E2) == 1
    assert O.stratum(E2) == ()
    assert [v.order for v in O.vertices(E2)] == [1, 1, 1, 1]
    assert O.cylinders(E2, "horizontal") == [(2, 2)]
    assert len(O.translations(E2)) == 4


def test_l_origami_invariants():
    assert O.genus(L3) == 2
    assert O.stratum(L3) == (2,)
    assert sum(v.order for v in O.vertices(L3)) == 3


def test_isomorphism_under_conjugation():
    pi = (3, 1, 2, 0)  # the transposition (1 4)
    assert O.is_isomorphic(E2, E2.relabel(pi)) is not None
    assert O.is_isomorphic(E2, E2) is not None
    assert O.is_isomorphic(L3, O.sl2_action("T", L3)) is None


def test_canonical_form_invariance_small():
    rng = random.Random(1)
    base = O.canonical_form(L3)
    for _ in range(20):
        pi = list(range(3))
        rng.shuffle(pi)
        assert O.canonical_form(L3.relabel(pi)) == base
        assert O.canonical_form(L3.relabel(pi), exhaustive=True) == O.canonical_form(L3, exhaustive=True)


def test_sl2_word_round_trip():
    rng = random.Random(3)
    for _ in range(500):
        m = IDENTITY
        for _ in range(rng.randint(0, 12)):
            m = m @ rng.choice([T, L, S, T.inverse(), L.inverse()])
        assert O.word_matrix(O.sl2_word(m)) == m


def test_action_on_torus_cover_is_trivial():
    for m in (T, L, S, MINUS_I, Mat2(2, 1, 1, 1)):
        assert O.veech_contains(m, E2)


def test_action_is_left_action():
    rng = random.Random(5)
    gens = [T, L, S, T.inverse()]
    for _ in range(20):
        m1, m2 = rng.choice(gens) @ rng.choice(gens), rng.choice(gens)
        lhs = O.matrix_action(m1 @ m2, L3)
        rhs = O.matrix_action(m1, O.matrix_action(m2, L3))
        assert O.is_isomorphic(lhs, rhs) is not None


def test_minus_i_action():
    o = O.sl2_action("-I", L3)
    assert o.sig_a == O.perm_inverse(L3.sig_a)
    assert o.sig_b == O.perm_inverse(L3.sig_b)


def test_veech_orbit_l_origami():
    res = O.veech_orbit(L3)
    assert res.complete and res.size == 3
    assert MINUS_I in res.stabilizer
    for m in res.stabilizer:
        assert O.veech_contains(m, L3)
    # every orbit representative maps L3 to the recorded orbit point
    assert not O.veech_contains(T, L3)


def test_veech_orbit_budget_flags_incomplete():
    res = O.veech_orbit(L3, max_orbit=2)
    assert not res.complete and "limit" in res.reason


def test_veech_orbit_independent_of_workers():
    a = O.veech_orbit(L3, workers=1)
    b = O.veech_orbit(L3, workers=3)
    assert (a.size, a.stabilizer) == (b.size, b.stabilizer)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("ORIGAMI_THREADS", "2")
    assert O.worker_count() == 2
    monkeypatch.setenv("ORIGAMI_THREADS", "junk")
    assert O.worker_count() >= 1


def test_covering_validation():
    # E2 -> one-square torus
    torus = O.Origami((0,), (0,))
    c = O.Covering(E2, torus, (0, 0, 0, 0)).validate()
    assert c.degree == 4 and O.rh_check(c)
    assert O.ram_data(c, 0) == (1, 1, 1, 1)
    with pytest.raises(ValueError):
        O.Covering(L3, E2, (0, 1, 2)).validate()


def test_text_format_round_trip():
    text = O.dumps(L3, ["an L"])
    assert text.splitlines()[1] == "origami n=3"
    assert text.splitlines()[2] == "a 2 1 3"
    assert text.splitlines()[3] == "b 3 2 1"
    assert O.loads(text) == L3


@pytest.mark.parametrize("bad", ["", "origami n=2\na 1 2\n", "origami n=2\na 1 2\nc 1 2\n",
                                 "origami n=2\na 1\nb 1 2\n"])
def test_text_format_errors(bad):
    with pytest.raises(ValueError):
        O.loads(bad)
