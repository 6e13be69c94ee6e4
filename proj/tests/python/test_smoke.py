import math

import numpy as np
import pytest

import speccomm as sc

BM2 = """
n = 300
k = 2
p = [0.9, 0.1, 0.1, 0.9]
model = "bm"
"""

DCBM2 = """
n = 400
k = 2
p = [1.0, 0.5, 0.5, 1.0]
model = "dcbm"

[theta]
kind = "uniform"
params = [0.15, 1.0]
"""


def test_generate_shape_and_determinism():
    g = sc.generate(BM2, seed=4)
    a = g["adjacency"]
    assert a.shape == (300, 300)
    assert np.array_equal(a, a.T)
    assert set(np.unique(a)) <= {0.0, 1.0}
    assert np.all(np.diag(a) == 1.0)
    assert sorted(set(g["labels"])) == [1, 2]
    again = sc.generate(BM2, seed=4)
    assert np.array_equal(a, again["adjacency"])
    assert not np.array_equal(a, sc.generate(BM2, seed=5)["adjacency"])


def test_population_matches_rank_k():
    p = sc.population(BM2, seed=4)
    assert p["expected_adjacency"].shape == (300, 300)
    assert p["eigenvalues"].shape == (2,)
    assert p["scale"] == 300.0
    # leading population eigenvalues live on the rank-K expansion exactly
    w = np.linalg.eigvalsh(p["expected_adjacency"])
    top = sorted(np.abs(w))[-2:]
    assert np.allclose(sorted(np.abs(p["eigenvalues"])), top, atol=1e-8)


def test_eig_sym_orthonormal():
    a = sc.generate(BM2, seed=9)["adjacency"]
    values, vectors = sc.eig_sym(a)
    assert np.all(np.diff(np.abs(values)) <= 1e-12)
    assert np.allclose(vectors.T @ vectors, np.eye(a.shape[0]), atol=1e-9)


def test_estimate_k_recovers_planted_count():
    a = sc.generate(DCBM2, seed=11)["adjacency"]
    est = sc.estimate_k(a, delta=0.03)
    assert est.k_hat == 2
    assert est.threshold == pytest.approx(0.03 * 400 ** 0.75)
    assert est.ratios.shape == (400,)

    sweep = sc.delta_sweep(a, [0.01, 0.03, 0.2, 0.9])
    ks = [k for _, k in sweep]
    assert ks == sorted(ks, reverse=True)


def test_detect_recovers_planted_labels():
    g = sc.generate(BM2, seed=21)
    res = sc.detect(g["adjacency"], method="scdre", k=2, seed=3)
    assert res.k_used == 2
    rep = sc.relative_error_rate(res.labels, g["labels"])
    assert rep.error_rate == 0.0
    assert rep.confusion.sum() == 300

    auto = sc.detect(g["adjacency"], method="scdre", seed=3)
    assert auto.k_used == 2


def test_theta_profiles_and_membership():
    th = sc.theta_power(100, 0.015, 0.8, 2.0)
    assert th[0] == pytest.approx(0.015 + (0.8 - 0.015) / 100 ** 2)
    assert th[-1] == 0.8
    assert np.all(np.diff(th) >= 0)
    assert sc.theta_constant(5, 0.2).tolist() == [0.2] * 5
    labels = sc.sample_membership(50, 3, seed=1)
    assert sorted(set(labels)) == [1, 2, 3]
    assert math.isclose(sc.default_threshold(1000, 0.03),
                        5.3348382301167681, rel_tol=0, abs_tol=1e-12)


def test_read_edge_list_roundtrip(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# toy\n0 1\n1 2\n")
    a = sc.read_edge_list(str(path))
    assert a.shape == (3, 3)
    assert a[0, 1] == a[1, 0] == 1.0
    assert a[0, 2] == 0.0
    assert np.all(np.diag(a) == 1.0)


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        sc.generate("n = 5\n", seed=1)  # missing keys
    with pytest.raises(ValueError):
        sc.detect(np.eye(10), method="bogus", k=2, seed=1)
