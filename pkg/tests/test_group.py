import numpy as np
import pytest

from lieparallel import group
from lieparallel.algebra import coords_to_matrix

from conftest import random_se3_element


def series_expm(m, terms=30):
    """Truncated Taylor series with scaling and squaring."""
    squarings = max(0, int(np.ceil(np.log2(max(np.linalg.norm(m, 1), 1e-300)))) + 1)
    a = m / 2**squarings
    out, term = np.eye(len(m)), np.eye(len(m))
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def rz(deg):
    c, s = np.cos(np.radians(deg)), np.sin(np.radians(deg))
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])


def test_compose_examples(rng):
    g = random_se3_element(rng)
    np.testing.assert_array_equal(group.compose(np.eye(4), g), g)
    R, t = g[:3, :3], g[:3, 3]
    np.testing.assert_allclose(group.compose(g, group.make_se3(R.T, -R.T @ t)), np.eye(4), atol=1e-14)
    out = group.compose(group.make_se3(rz(90), [1, 0, 0]), group.make_se3(np.eye(3), [0, 1, 0]))
    np.testing.assert_allclose(out[:3, :3], rz(90), atol=1e-15)
    np.testing.assert_allclose(out[:3, 3], [0, 0, 0], atol=1e-15)
    with pytest.raises(ValueError):
        group.compose(np.eye(4), np.eye(3))


def test_semidirect_product_law(rng):
    a, b = random_se3_element(rng), random_se3_element(rng)
    ab = group.compose(a, b)
    np.testing.assert_allclose(ab[:3, :3], a[:3, :3] @ b[:3, :3], atol=1e-15)
    np.testing.assert_allclose(ab[:3, 3], a[:3, 3] + a[:3, :3] @ b[:3, 3], atol=1e-14)


def test_inverse(rng):
    np.testing.assert_array_equal(group.inverse(np.eye(4)), np.eye(4))
    g = random_se3_element(rng)
    np.testing.assert_allclose(group.compose(g, group.inverse(g)), np.eye(4), atol=1e-12)
    np.testing.assert_allclose(group.inverse(group.inverse(g)), g, atol=1e-15)
    t = group.make_se3(np.eye(3), [1.0, -2.0, 3.0])
    np.testing.assert_array_equal(group.inverse(t), group.make_se3(np.eye(3), [-1.0, 2.0, -3.0]))


def test_associativity(rng):
    for _ in range(100):
        a, b, c = (random_se3_element(rng) for _ in range(3))
        np.testing.assert_allclose(group.compose(group.compose(a, b), c),
                                   group.compose(a, group.compose(b, c)), atol=1e-12)


def test_orthogonality_drift_over_many_compositions(rng):
    g = np.eye(4)
    for _ in range(10_000):
        g = group.compose(g, random_se3_element(rng, max_angle=0.5))
        g[:3, 3] *= 0.5  # keep translations bounded
    R = g[:3, :3]
    assert np.abs(R.T @ R - np.eye(3)).max() < 1e-8


def test_group_exp_examples(se3, rng):
    np.testing.assert_array_equal(group.group_exp(se3, np.zeros(6)), np.eye(4))
    g = group.group_exp(se3, np.sqrt(2) * np.pi * se3.unit(2))
    np.testing.assert_allclose(g[:3, :3], np.diag([-1.0, -1.0, 1.0]), atol=1e-15)
    np.testing.assert_allclose(g[:3, 3], 0, atol=1e-15)
    np.testing.assert_allclose(g, series_expm(coords_to_matrix(se3, np.sqrt(2) * np.pi * se3.unit(2))),
                               atol=1e-12)
    x = rng.normal(size=6)
    np.testing.assert_allclose(group.group_exp(se3, x) @ group.group_exp(se3, -x), np.eye(4),
                               atol=1e-12)


def test_group_exp_matches_series(se3, rng):
    for scale in (1e-7, 1e-5, 1e-3, 0.1, 1.0, 3.0):
        for _ in range(20):
            x = scale * rng.normal(size=6)
            np.testing.assert_allclose(group.group_exp(se3, x),
                                       series_expm(coords_to_matrix(se3, x)), atol=1e-11)


def test_group_exp_so3(so3, rng):
    x = rng.normal(size=3)
    np.testing.assert_allclose(group.group_exp(so3, x), series_expm(coords_to_matrix(so3, x)),
                               atol=1e-12)


def test_group_log_examples(se3, rng):
    np.testing.assert_array_equal(group.group_log(se3, np.eye(4)), 0)
    x = 0.1 * rng.normal(size=6)
    np.testing.assert_allclose(group.group_log(se3, group.group_exp(se3, x)), x, atol=1e-14)
    with pytest.raises(ValueError, match="pi"):
        group.group_log(se3, group.make_se3(rz(180), [1, 2, 3]))


def test_exp_log_round_trip(se3, rng):
    done = 0
    while done < 1000:
        x = rng.normal(size=6)
        x[:3] *= rng.uniform(0, 0.9 * np.pi * np.sqrt(2)) / np.linalg.norm(x[:3])
        g = group.group_exp(se3, x)
        np.testing.assert_allclose(group.group_exp(se3, group.group_log(se3, g)), g, atol=1e-10)
        done += 1


def test_maurer_cartan_and_left_translate(se3, rng):
    g = random_se3_element(rng)
    x = rng.normal(size=6)
    for i in range(6):
        np.testing.assert_allclose(group.maurer_cartan(se3, np.eye(4), se3.basis[i]), se3.unit(i),
                                   atol=1e-15)
        np.testing.assert_allclose(group.maurer_cartan(se3, g, g @ se3.basis[i]), se3.unit(i),
                                   atol=1e-12)
    np.testing.assert_array_equal(group.maurer_cartan(se3, g, np.zeros((4, 4))), 0)
    np.testing.assert_array_equal(group.left_translate(se3, np.eye(4), x), coords_to_matrix(se3, x))
    np.testing.assert_allclose(group.maurer_cartan(se3, g, group.left_translate(se3, g, x)), x,
                               atol=1e-12)
    rot = group.make_se3(g[:3, :3], np.zeros(3))
    assert np.linalg.norm(group.left_translate(se3, rot, x)) == pytest.approx(
        np.linalg.norm(coords_to_matrix(se3, x)), rel=1e-14)


def test_maurer_cartan_rejects_non_tangent(se3):
    with pytest.raises(ValueError):
        group.maurer_cartan(se3, np.eye(4), np.eye(4))


def test_project_to_group(rng):
    g = random_se3_element(rng)
    noisy = g + 1e-6 * rng.normal(size=(4, 4))
    snapped = group.project_to_group(noisy)
    R = snapped[:3, :3]
    np.testing.assert_allclose(R.T @ R, np.eye(3), atol=1e-14)
    np.testing.assert_allclose(snapped[3], [0, 0, 0, 1])
    np.testing.assert_allclose(snapped, g, atol=1e-5)
