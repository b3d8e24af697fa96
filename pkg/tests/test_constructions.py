from collections import Counter

import pytest

from teichgap import constructions as C
from teichgap import origami as O


def test_e2_labels(E2):
    assert O.genus(E2.origami) == 1
    assert sorted(E2.vertex_labels.values()) == ["P", "Q", "R", "S"]
    assert E2.vertex_of("R") == E2.vertex_at(3)


def test_x_census(X):
    c = C.x_census(X)
    assert c["genus"] == 13 and c["stratum"] == (2,) * 12
    assert c["horizontal_cylinders"] == [(6, 8)]
    assert c["vertical_cylinders"] == [(6, 8)]
    assert c["element_orders"] == {1: 1, 2: 3, 3: 8}


def test_x_labels(X):
    names = X.vertex_labels.values()
    assert Counter(n[0] for n in names) == {"R": 12, "P": 4, "Q": 4, "S": 4}
    assert X.vertex_of("P1") == X.vertex_at(1, 1)
    assert X.vertex_of("Q1") == X.vertex_at(1, 2)
    assert X.vertex_of("R7") == X.vertex_at(7, 3)


def test_covering_p(X, E2):
    p = C.covering_p(X)
    rm = {n: O.ram_data(p, v) for v, n in E2.vertex_labels.items()}
    assert rm["R"] == (1,) * 12
    assert rm["P"] == rm["Q"] == rm["S"] == (3, 3, 3, 3)
    assert O.rh_check(p)


def test_x_lemmas(X):
    checks = C.verify_x_lemmas(X)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_y_basic(k, build_y):
    y = build_y(k)
    c = C.y_census(k, y)
    assert c["connected"] and c["unramified"] and c["has_cyclic_deck_2k"] and c["rh"]
    assert c["genus"] == 24 * k + 1
    assert c["vertex_orders"] == {1: 24 * k, 3: 24 * k}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_y_forgets_to_x(k, build_y, X):
    """j-forgetting of Y(k) reproduces X square by square."""
    y = build_y(k)
    q = C.covering_q(y, X)
    for s, (i, h, j) in enumerate(y.square_labels):
        assert q.phi[s] == X.square(i, h)
        ia, ha, _ = y.square_labels[y.origami.sig_a[s]]
        assert X.square(ia, ha) == X.origami.sig_a[X.square(i, h)]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_y_slits(k, build_y):
    slits = C.y_slits(build_y(k), k)
    assert slits == {(4, 1): -1, (4, 3): 1, (5, 1): 1, (5, 3): -1,
                     (6, 1): -1, (6, 3): 1, (7, 1): 1, (7, 3): -1}


def test_slit_gauge_keeps_position_three():
    for k in (1, 2, 3):
        g = C.slit_gauge(k)
        assert all(g[i, 3] == 0 for i in range(1, 13))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_actiony(k, build_y):
    checks = C.verify_actiony(k, build_y(k))
    assert all(c.passed for c in checks), checks


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_z_coverings(k, build_y, build_z):
    y, z = build_y(k), build_z(k)
    r = C.covering_r(z, y)
    assert r.degree == 2 and O.rh_check(r)
    qr = r.then(C.covering_q(y))
    assert O.rh_check(qr.validate())
    assert O.genus(z.origami) == 48 * k + 3
    assert z.origami.n == 192 * k


@pytest.mark.parametrize("k", [1, 2, 3])
def test_z_ramification_census(k, build_y, build_z):
    ram = C.r_ramified_vertices(k, build_y(k), build_z(k))
    assert ram == C.expected_ramified_vertices(k)
    assert "R1^1" in ram
    assert sum(n.startswith("Q") for n in ram) == 2
    assert [n for n in ram if n.startswith("P")] == [f"P1^{2 * k}"]


def test_zero_cocycles_disconnect():
    assert not C.build_Z(2, cocycles=False).origami.is_connected()


def test_mainprop_k3():
    cert = C.mainprop_check(3)
    assert cert.conclusion and cert.multisets_match and cert.riemann_hurwitz
    assert cert.multisets["S"] == (3,) * 48
    assert cert.multisets == C.expected_multisets(3)


def test_z3_reference():
    ref = C.z3_reference()
    assert ref.n == 576
    assert ref.sig_a[0] == 12 and ref.sig_b[0] == 264  # 1 -> 13, 1 -> 265
    assert dict(O.cycle_type(ref.sig_a)) == {12: 1, 6: 94}
    assert dict(O.cycle_type(ref.sig_b)) == {12: 2, 6: 92}


def test_corollary_z3():
    checks = C.verify_corollary_z3()
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_labels_sidecar_round_trip(X):
    text = C.dumps_labels(X)
    squares, verts = C.loads_labels(text)
    assert squares[1] == (1, 1)
    assert len(squares) == 48
    assert X.vertex_at(*squares[verts["R5"]]) == X.vertex_of("R5")


def test_build_y_rejects_bad_k():
    with pytest.raises(ValueError):
        C.build_Y(0)
