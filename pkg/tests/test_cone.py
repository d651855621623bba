"""Cone membership, duality, and homogeneity checks."""

import numpy as np
import pytest

from symcone import (
    Element,
    cone_contains,
    dual_cone_contains,
    format_descriptor,
    jordan_product,
    make_algebra,
    min_eigenvalue,
    random_element,
    random_interior_point,
    to_matrix,
    trace_form,
    unit,
)
from symcone.cone import (
    adjoint,
    automorphism_to_point,
    boundary_margin,
    check_adjoint_automorphism,
    check_homogeneity,
    check_membership_agreement,
    check_order_unit,
    check_self_duality,
    effect_interval_check,
    is_interior,
    sample_off_boundary,
)
from symcone.spectral import eigenvalues_batch

FAMILIES = [
    make_algebra("real", 3),
    make_algebra("complex", 2),
    make_algebra("quaternion", 2),
    make_algebra("spin", 4),
    make_algebra("albert"),
]


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_squares_are_members(desc):
    rng = np.random.default_rng(51)
    for _ in range(10):
        a = random_element(desc, rng)
        sq = jordan_product(a, a)
        assert cone_contains(sq)
        assert dual_cone_contains(sq)
        if np.linalg.norm(sq.coords) > 1e-6:
            assert not cone_contains(Element(desc, -sq.coords))


def test_unit_and_negative_unit():
    desc = make_algebra("complex", 3)
    assert cone_contains(unit(desc))
    assert is_interior(unit(desc))
    neg = Element(desc, -unit(desc).coords)
    assert not cone_contains(neg)
    assert not dual_cone_contains(neg)


def test_min_eigenvalue_shift_lands_on_boundary():
    desc = make_algebra("quaternion", 2)
    a = random_element(desc, seed=52)
    shifted = Element(desc, a.coords - min_eigenvalue(a) * unit(desc).coords)
    assert min_eigenvalue(shifted) == pytest.approx(0.0, abs=1e-10)
    assert cone_contains(shifted)
    assert not is_interior(shifted)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_dual_agrees_with_spectral_membership(desc):
    rng = np.random.default_rng(53)
    rows = sample_off_boundary(desc, 100, rng)
    for row in rows:
        a = Element(desc, row)
        assert dual_cone_contains(a) == cone_contains(a)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_cone_pairings_nonnegative(desc):
    rng = np.random.default_rng(54)
    for _ in range(20):
        x = random_element(desc, rng)
        y = random_element(desc, rng)
        assert trace_form(jordan_product(x, x), jordan_product(y, y)) >= -1e-10


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_self_duality_certificate(desc):
    cert = check_self_duality(desc, samples=100, seed=55)
    assert cert.passed, cert.details


def test_self_duality_fails_for_lopsided_cone():
    # A non-orthogonal change of basis destroys self-duality in the trace
    # metric; the certificate must notice and carry a witness.
    desc = make_algebra("complex", 2)
    cert = check_self_duality(desc, samples=200, seed=56, transform=np.diag([1.0, 1.0, 4.0, 1.0]))
    assert not cert.passed
    assert cert.witnesses


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_membership_agreement_certificate(desc):
    cert = check_membership_agreement(desc, samples=200, seed=57)
    assert cert.passed
    assert cert.details["disagreements"] == 0


def test_dim_one_cone_is_a_half_line():
    desc = make_algebra("real", 1)
    assert check_self_duality(desc, samples=50, seed=58).passed
    assert cone_contains(Element(desc, np.array([0.5])))
    assert not cone_contains(Element(desc, np.array([-0.5])))


def test_transport_identity_and_scaling():
    desc = make_algebra("complex", 2)
    g = automorphism_to_point(unit(desc))
    np.testing.assert_allclose(g.matrix, np.eye(desc.dim), atol=1e-10)
    g2 = automorphism_to_point(Element(desc, 2.0 * unit(desc).coords))
    np.testing.assert_allclose(g2.matrix, 2.0 * np.eye(desc.dim), atol=1e-10)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_transport_moves_unit_to_target(desc):
    rng = np.random.default_rng(59)
    for _ in range(5):
        w = random_interior_point(desc, rng)
        g = automorphism_to_point(w)
        np.testing.assert_allclose(g(unit(desc)).coords, w.coords, atol=1e-9)


def test_transport_requires_interior_point():
    desc = make_algebra("real", 2)
    boundary = Element(desc, np.zeros(desc.dim))
    with pytest.raises(ValueError, match="interior"):
        automorphism_to_point(boundary)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_homogeneity_certificate(desc):
    cert = check_homogeneity(desc, samples=20, seed=60, directions=40)
    assert cert.passed, cert.details


def test_adjoint_in_trace_metric():
    desc = make_algebra("quaternion", 2)
    rng = np.random.default_rng(61)
    g = automorphism_to_point(random_interior_point(desc, rng))
    gd = adjoint(desc, g)
    for _ in range(10):
        a = random_element(desc, rng)
        b = random_element(desc, rng)
        assert trace_form(g(a), b) == pytest.approx(trace_form(a, gd(b)), rel=1e-9)


def test_point_transport_is_self_adjoint():
    desc = make_algebra("complex", 3)
    g = automorphism_to_point(random_interior_point(desc, seed=62))
    gd = adjoint(desc, g)
    np.testing.assert_allclose(g.matrix, gd.matrix, atol=1e-9)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_adjoint_automorphism_certificate(desc):
    rng = np.random.default_rng(63)
    g1 = automorphism_to_point(random_interior_point(desc, rng))
    g2 = automorphism_to_point(random_interior_point(desc, rng))
    product = type(g1)(g1.matrix @ g2.matrix, desc, desc)
    cert = check_adjoint_automorphism(desc, product, samples=60, seed=64)
    assert cert.passed, cert.details


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_order_unit_certificate(desc):
    assert check_order_unit(desc, samples=100, seed=65).passed


def test_effect_interval_examples():
    desc = make_algebra("complex", 2)
    assert effect_interval_check(unit(desc))
    assert effect_interval_check(Element(desc, 0.5 * unit(desc).coords))
    e = from_first_diag(desc)
    assert effect_interval_check(e)
    assert not effect_interval_check(Element(desc, 2.0 * e.coords))
    assert not effect_interval_check(Element(desc, -e.coords))


def from_first_diag(desc):
    from symcone import from_matrix

    mat = np.zeros((desc.size, desc.size), dtype=complex)
    mat[0, 0] = 1.0
    return from_matrix(desc, mat)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_off_boundary_sampler_avoids_band(desc):
    rng = np.random.default_rng(66)
    rows = sample_off_boundary(desc, 100, rng)
    lam_min = eigenvalues_batch(desc, rows)[:, 0]
    margin = boundary_margin(desc)
    assert np.all((lam_min >= 0.0) | (lam_min <= -margin))


def test_interior_point_spectrum_within_bounds():
    desc = make_algebra("spin", 6)
    w = random_interior_point(desc, seed=67, low=0.25, high=0.75)
    lams = eigenvalues_batch(desc, w.coords[None, :])[0]
    assert lams.min() >= 0.25 - 1e-9
    assert lams.max() <= 0.75 + 1e-9
