from fractions import Fraction

import pytest

import symtrans

ZERO_CUBIC = "cubicform v1 dim=2\n"
# sigma(e2, e2, e2) = 1 on R^2, so S_(x, y)(u, v) = (y v, 0).
N1_CUBIC = "cubicform v1 dim=2\n1 1 1 1\n"
ISOTROPIC_11 = "potential v1 n=2 p=1 q=1\n3 0  1  0\n2 1  3  0\n1 2  3  0\n0 3  1  0\n"


def test_zero_cubic_is_in_variety():
    r = symtrans.check(ZERO_CUBIC)
    assert r["in_variety"] and r["k"] == 0 and r["translation_dim"] == 2


def test_n1_example_stratum():
    r = symtrans.check(N1_CUBIC)
    assert r["in_variety"] and r["isotropic"]
    assert r["k"] == 1 and r["translation_dim"] == 1
    assert r["support"] == [[Fraction(1), Fraction(0)]]


def test_orbit_map_round_trip():
    x = [Fraction(1, 2), Fraction(-3)]
    y = symtrans.orbit_map(N1_CUBIC, x)
    assert y == [Fraction(1, 2) + Fraction(9, 2), Fraction(-3)]
    assert symtrans.orbit_map_inverse(N1_CUBIC, y) == x


def test_exp_element_is_unipotent():
    linear, translation = symtrans.exp_element(N1_CUBIC, [0, 2])
    assert linear == [[1, 2], [0, 1]]
    assert translation == [2, 2]


def test_sampled_cubic_round_trips_through_check():
    text = symtrans.sample_cubic(3, 2, seed=11)
    assert text == symtrans.sample_cubic(3, 2, seed=11)
    r = symtrans.check(text)
    assert r["in_variety"] and r["k"] == 2


def test_isotropic_potential_is_flat_special_kahler():
    assert all(symtrans.sk_verify(ISOTROPIC_11, points=3).values())


def test_definite_potential_fails():
    r = symtrans.sk_verify("potential v1 n=2 p=2 q=0\n3 0  1  0\n", points=2)
    assert not r["commutators"] and not r["curvature"]


def test_geodesic_closed_form_matches_rk4():
    g = symtrans.geodesic(ISOTROPIC_11, [0, 0, 0, 0], [1, 0, 0, 1], t_end=1.0, dt=1e-3)
    assert g["sup_deviation"] < 1e-8
    assert len(g["times"]) == 1001


def test_max_isotropic_dim_and_rigidity():
    assert symtrans.max_isotropic_dim(3, 2) == 2
    assert symtrans.rigidity(2, 0)["trivial"]
    assert not symtrans.rigidity(1, 1)["trivial"]


def test_bad_file_raises():
    with pytest.raises(ValueError):
        symtrans.check("cubicform v1 dim=2\n1 0 0 1\n")


def test_cli_run_is_deterministic(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(symtrans.sample_cubic(2, 1, seed=3))
    first = symtrans.run("group", [str(path)], seed=9, trials=20)
    second = symtrans.run("group", [str(path)], seed=9, trials=20)
    assert first == second and first[0] == 0
