"""Spectral decomposition against eigensolver and closed-form oracles."""

import numpy as np
import pytest

from symcone import (
    Element,
    canonical_frame,
    format_descriptor,
    from_matrix,
    jordan_product,
    make_algebra,
    random_element,
    random_jordan_frame,
    spectral_decompose,
    to_matrix,
    trace_of,
    unit,
)
from symcone.hypercomplex import embed_quat_matrix
from symcone.spectral import (
    canonical_regular_element,
    eigenvalues_batch,
    frame_pool,
    is_idempotent,
    is_primitive,
    spectral_reconstruction_residual,
)

ATOL = 1e-9

FAMILIES = [
    make_algebra("real", 3),
    make_algebra("complex", 3),
    make_algebra("quaternion", 2),
    make_algebra("spin", 5),
    make_algebra("albert"),
]


def _full_spectrum(decomp):
    """Eigenvalues repeated by multiplicity (trace of each idempotent)."""
    out = []
    for lam, p in zip(decomp.eigenvalues, decomp.idempotents):
        out.extend([lam] * round(trace_of(p)))
    return np.sort(out)


def test_eigenvalues_match_hermitian_eigensolver():
    rng = np.random.default_rng(31)
    for desc in (make_algebra("real", 4), make_algebra("complex", 3)):
        a = random_element(desc, rng)
        want = np.linalg.eigvalsh(to_matrix(a))
        np.testing.assert_allclose(_full_spectrum(spectral_decompose(a)), want, atol=1e-8)


def test_quaternion_eigenvalues_via_complex_embedding():
    # The complex embedding doubles each quaternionic eigenvalue.
    desc = make_algebra("quaternion", 3)
    a = random_element(desc, seed=32)
    doubled = np.linalg.eigvalsh(embed_quat_matrix(to_matrix(a)))
    np.testing.assert_allclose(
        _full_spectrum(spectral_decompose(a)), doubled[::2], atol=1e-8
    )
    np.testing.assert_allclose(doubled[::2], doubled[1::2], atol=1e-8)


def test_spin_eigenvalues_closed_form():
    rng = np.random.default_rng(33)
    desc = make_algebra("spin", 7)
    coords = rng.standard_normal(8)
    t, x = coords[0], coords[1:]
    decomp = spectral_decompose(Element(desc, coords))
    want = np.sort([t - np.linalg.norm(x), t + np.linalg.norm(x)])
    np.testing.assert_allclose(np.sort(decomp.eigenvalues), want, atol=1e-10)
    # Idempotents are (1/2)(1, +-x/|x|).
    for lam, p in zip(decomp.eigenvalues, decomp.idempotents):
        sign = 1.0 if lam == max(decomp.eigenvalues) else -1.0
        want_p = 0.5 * np.concatenate([[1.0], sign * x / np.linalg.norm(x)])
        np.testing.assert_allclose(p.coords, want_p, atol=1e-10)


def test_sigma_z_decomposition():
    desc = make_algebra("complex", 2)
    a = from_matrix(desc, np.diag([1.0, -1.0]).astype(complex))
    decomp = spectral_decompose(a)
    by_val = dict(zip(np.round(decomp.eigenvalues, 12), decomp.idempotents))
    np.testing.assert_allclose(
        to_matrix(by_val[1.0]), np.diag([1.0, 0.0]), atol=ATOL
    )
    np.testing.assert_allclose(
        to_matrix(by_val[-1.0]), np.diag([0.0, 1.0]), atol=ATOL
    )


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_decomposition_properties(desc):
    rng = np.random.default_rng(34)
    for _ in range(5):
        a = random_element(desc, rng)
        decomp = spectral_decompose(a)
        recon = np.zeros(desc.dim)
        total = np.zeros(desc.dim)
        for lam, p in zip(decomp.eigenvalues, decomp.idempotents):
            assert is_idempotent(p, tol=1e-8)
            recon += lam * p.coords
            total += p.coords
        np.testing.assert_allclose(recon, a.coords, atol=1e-8)
        np.testing.assert_allclose(total, unit(desc).coords, atol=1e-8)
        # Distinct idempotents multiply to zero.
        for i, p in enumerate(decomp.idempotents):
            for q in decomp.idempotents[i + 1:]:
                assert np.linalg.norm(jordan_product(p, q).coords) < 1e-8


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_generic_route_agrees_with_family_route(desc):
    rng = np.random.default_rng(35)
    for _ in range(5):
        a = random_element(desc, rng)
        fam = _full_spectrum(spectral_decompose(a))
        gen = _full_spectrum(spectral_decompose(a, method="generic"))
        np.testing.assert_allclose(fam, gen, atol=1e-7)


def test_unknown_method_rejected():
    with pytest.raises(ValueError, match="unknown spectral method"):
        spectral_decompose(unit(make_algebra("real", 2)), method="fancy")


def test_unit_is_degenerate_single_eigenvalue():
    decomp = spectral_decompose(unit(make_algebra("complex", 3)))
    assert decomp.degenerate
    np.testing.assert_allclose(decomp.eigenvalues, [1.0], atol=ATOL)
    assert len(decomp.idempotents) == 1


def test_primitivity_examples():
    rank1 = make_algebra("real", 1)
    assert is_primitive(unit(rank1))
    qubit = make_algebra("complex", 2)
    u = unit(qubit)
    assert is_idempotent(u) and not is_primitive(u)
    sigma_x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    p = from_matrix(qubit, 0.5 * (np.eye(2) + sigma_x))
    assert is_primitive(p)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_random_frames(desc):
    frame = random_jordan_frame(desc, seed=36)
    assert len(frame) == desc.rank
    total = np.zeros(desc.dim)
    for i, p in enumerate(frame):
        assert is_primitive(p, tol=1e-7)
        total += p.coords
        for q in frame[i + 1:]:
            assert np.linalg.norm(jordan_product(p, q).coords) < 1e-8
    np.testing.assert_allclose(total, unit(desc).coords, atol=1e-8)


def test_rank_one_frame_is_unit():
    frame = random_jordan_frame(make_algebra("real", 1), seed=0)
    assert len(frame) == 1
    np.testing.assert_allclose(frame[0].coords, [1.0], atol=ATOL)


def test_albert_frame_traces_sum_to_rank():
    frame = random_jordan_frame(make_algebra("albert"), seed=37)
    assert sum(trace_of(p) for p in frame) == pytest.approx(3.0, abs=1e-8)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_canonical_frame_and_regular_element(desc):
    frame = canonical_frame(desc)
    assert len(frame) == desc.rank
    reg = canonical_regular_element(desc)
    decomp = spectral_decompose(reg)
    assert len(decomp.eigenvalues) == desc.rank
    assert not decomp.degenerate


def test_frame_pool_rows_are_primitive():
    desc = make_algebra("quaternion", 2)
    pool = frame_pool(desc, 8, seed=38)
    assert pool.shape == (8 * desc.rank, desc.dim)
    for row in pool:
        assert is_primitive(Element(desc, row), tol=1e-7)


def test_frame_pool_deterministic():
    desc = make_algebra("spin", 4)
    np.testing.assert_array_equal(frame_pool(desc, 4, seed=5), frame_pool(desc, 4, seed=5))


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_batch_eigenvalues_match_decompositions(desc):
    rng = np.random.default_rng(39)
    coords = rng.standard_normal((20, desc.dim))
    batch = eigenvalues_batch(desc, coords)
    assert batch.shape == (20, desc.rank)
    for row, lams in zip(coords, batch):
        want = _full_spectrum(spectral_decompose(Element(desc, row)))
        np.testing.assert_allclose(np.sort(lams), want, atol=1e-7)


def test_albert_idempotent_eigenvalues_are_clean():
    # Regression guard: double roots of the minimal polynomial must not
    # smear frame eigenvalues away from {0, 1}.
    desc = make_algebra("albert")
    rows = frame_pool(desc, 16, seed=40)
    lams = eigenvalues_batch(desc, rows)
    want = np.tile([0.0, 0.0, 1.0], (len(rows), 1))
    np.testing.assert_allclose(np.sort(lams, axis=1), want, atol=1e-11)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_reconstruction_residuals(desc):
    a = random_element(desc, seed=41)
    res = spectral_reconstruction_residual(a)
    assert max(res.values()) < 1e-8
