import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nslct import (
    BadParam,
    SingularB,
    SymplecticViolation,
    compose,
    inverse,
    preset,
    random_free_matrix,
    validate,
)


def test_fourier_preset_blocks():
    m = preset("fourier", 1)
    assert np.array_equal(m.a, [[0.0]])
    assert np.array_equal(m.b, [[1.0]])
    assert np.array_equal(m.c, [[-1.0]])
    assert np.array_equal(m.d, [[0.0]])
    assert m.det_b == 1.0
    assert m.sigma_min_b == pytest.approx(1.0)


def test_frft_preset_entries():
    alpha = 0.7
    m = preset("frft", 1, alpha=alpha)
    assert m.a[0, 0] == pytest.approx(np.cos(alpha))
    assert m.b[0, 0] == pytest.approx(np.sin(alpha))
    assert m.c[0, 0] == pytest.approx(-np.sin(alpha))
    assert m.d[0, 0] == pytest.approx(np.cos(alpha))


def test_frft_degenerate_angle_rejected():
    with pytest.raises(SingularB):
        preset("frft", 1, alpha=0.0)
    with pytest.raises(SingularB):
        preset("frft", 2, alpha=np.pi)


def test_fresnel_scalar_and_matrix_b():
    m = preset("fresnel", 2, b=1.5)
    assert np.array_equal(m.b, 1.5 * np.eye(2))
    assert np.array_equal(m.a, np.eye(2))
    assert np.array_equal(m.c, np.zeros((2, 2)))
    coupled = np.array([[1.2, 0.2], [0.2, 0.9]])
    m2 = preset("fresnel", 2, b=coupled)
    assert np.array_equal(m2.b, coupled)


def test_fresnel_asymmetric_b_rejected():
    # A B^T = B must be symmetric when A = I
    with pytest.raises(SymplecticViolation):
        preset("fresnel", 2, b=np.array([[1.0, 0.3], [0.0, 1.0]]))


def test_separable_accepts_valid_per_axis_quadruples():
    m = preset("separable", 2, a=(1.0, 2.0), b=(2.0, 1.0), c=(0.0, 1.0), d=(1.0, 1.0))
    assert m.n == 2
    assert np.allclose(m.a @ m.d.T - m.b @ m.c.T, np.eye(2))


def test_separable_non_unimodular_axis_rejected():
    # a*d - b*c = 0.5 on the only axis; the defect is named in the message
    with pytest.raises(SymplecticViolation) as exc:
        preset("separable", 1, a=1.0, b=2.0, c=0.0, d=0.5)
    assert "A D^T - B C^T" in str(exc.value)


def test_unknown_preset():
    with pytest.raises(BadParam):
        preset("laplace", 1)


def test_validate_rejects_singular_b():
    with pytest.raises(SingularB):
        validate([[1.0]], [[0.0]], [[0.0]], [[1.0]])


def test_validate_rejects_asymmetric_abt():
    a = np.array([[1.0, 0.5], [0.0, 1.0]])
    b = np.eye(2)
    c = np.zeros((2, 2))
    d = np.linalg.inv(a).T
    with pytest.raises(SymplecticViolation):
        validate(a, b, c, d)


def test_inverse_blocks_and_involution():
    rng = np.random.default_rng(7)
    m = random_free_matrix(rng, 2)
    mi = inverse(m)
    assert np.array_equal(mi.a, m.d.T)
    assert np.array_equal(mi.b, -m.b.T)
    assert np.array_equal(mi.c, -m.c.T)
    assert np.array_equal(mi.d, m.a.T)
    back = inverse(mi)
    assert np.allclose(back.as_matrix(), m.as_matrix(), atol=0.0)


def test_inverse_is_matrix_inverse():
    rng = np.random.default_rng(11)
    for n in (1, 2):
        m = random_free_matrix(rng, n)
        prod = m.as_matrix() @ inverse(m).as_matrix()
        assert np.allclose(prod, np.eye(2 * n), atol=1e-12)


def test_compose_matches_matrix_product():
    rng = np.random.default_rng(3)
    m = random_free_matrix(rng, 2)
    k = preset("fresnel", 2, b=1.5)
    prod = compose(m, k)
    assert np.allclose(prod.as_matrix(), m.as_matrix() @ k.as_matrix(), atol=1e-14)


def test_compose_rejects_products_with_singular_b():
    m = preset("fourier", 1)
    # fourier o fourier = -identity, whose B block vanishes
    with pytest.raises(SingularB):
        compose(m, m)


def test_frft_angle_addition():
    a1, a2 = 0.6, 0.5
    got = compose(preset("frft", 1, alpha=a1), preset("frft", 1, alpha=a2))
    want = preset("frft", 1, alpha=a1 + a2)
    assert np.allclose(got.as_matrix(), want.as_matrix(), atol=1e-15)


def test_sigma_min_against_svd_oracle():
    rng = np.random.default_rng(2024)
    for i in range(1000):
        m = random_free_matrix(rng, 1 + i % 2)
        want = np.linalg.svd(m.b, compute_uv=False).min()
        assert m.sigma_min_b == pytest.approx(want, rel=1e-9, abs=1e-12)


def test_random_free_matrix_is_conditioned_and_seeded():
    rng = np.random.default_rng(5)
    seen = []
    for n in (1, 2, 1, 2):
        m = random_free_matrix(rng, n)
        svals = np.linalg.svd(m.b, compute_uv=False)
        assert svals.min() >= 0.2 - 1e-12
        assert svals.max() <= 4.0 + 1e-12
        seen.append(m.as_matrix())
    again = np.random.default_rng(5)
    assert np.array_equal(random_free_matrix(again, 1).as_matrix(), seen[0])


@settings(max_examples=60, deadline=None)
@given(alpha=st.floats(0.05, np.pi - 0.05), shear=st.floats(-2.0, 2.0))
def test_random_compositions_stay_symplectic(alpha, shear):
    m = compose(preset("fresnel", 1, b=1.0 + abs(shear)), preset("frft", 1, alpha=alpha))
    full = m.as_matrix()
    n = m.n
    j = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
    assert np.allclose(full @ j @ full.T, j, atol=1e-12)
