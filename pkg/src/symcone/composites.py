"""Candidate composites of two cone models and their audit certificates.

Two matrix-family systems of the same ground field combine into a candidate
carrier of that family whose size is the product of the part sizes. The
embedding sends a pair of effects to the (symmetrized, entrywise) Kronecker
product of their representing matrices. Over the reals and the complexes
this is the familiar tensor product and the embedding is a bijection on
coordinates; over the quaternions the dimensions already refuse to match,
and the audits below quantify exactly which composite requirements survive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hypercomplex as hc
from .algebra import (
    AlgebraDescriptor,
    Element,
    Family,
    _complex_from_rep,
    _complex_to_rep,
    _context,
    _product_batch,
    _quat_from_rep,
    _quat_to_rep,
    _real_from_rep,
    _real_to_rep,
    format_descriptor,
    make_algebra,
    norm,
    trace_form,
    unit,
)
from .certificates import ConeCertificate
from .cone import random_interior_point
from .models import ProbModel, State, make_model, uniform_state
from .spectral import eigenvalues_batch

__all__ = [
    "CompositeSystem",
    "candidate_composite",
    "product_effect",
    "product_state",
    "product_test",
    "local_tomography_audit",
    "product_tests_check",
    "nonsignaling_check",
    "factorization_check",
    "tensor_adjoint_check",
    "tensor_lmap_check",
    "check_unit_factor_products",
    "maximally_entangled_state",
    "spin_qubit_isomorphism",
    "qubit_witness",
]

EMBED_RANK_TOL = 1e-9


@dataclass
class CompositeSystem:
    part_a: ProbModel
    part_b: ProbModel
    carrier: AlgebraDescriptor
    carrier_model: ProbModel
    embed: np.ndarray  # (dim_carrier, dim_a * dim_b)
    embed_rank: int

    @property
    def locally_tomographic(self) -> bool:
        product = self.part_a.algebra.dim * self.part_b.algebra.dim
        return self.carrier.dim == product and self.embed_rank == product

    def pair_coords(self, coords_a: np.ndarray, coords_b: np.ndarray) -> np.ndarray:
        """Carrier coordinates of elementwise pairs; batched over axis 0."""
        coords_a = np.atleast_2d(coords_a)
        coords_b = np.atleast_2d(coords_b)
        kron = coords_a[:, :, None] * coords_b[:, None, :]
        return kron.reshape(coords_a.shape[0], -1) @ self.embed.T


_SYM_QUAT_TABLE = 0.5 * (
    hc.QUATERNION_TABLE + np.swapaxes(hc.QUATERNION_TABLE, 0, 1)
)


def _kron_columns(fam: Family, size_a: int, size_b: int) -> np.ndarray:
    """Embedding matrix columns: carrier coordinates of basis pair products."""
    mn = size_a * size_b
    if fam is Family.REAL_SYM:
        dim_a = size_a * (size_a + 1) // 2
        dim_b = size_b * (size_b + 1) // 2
        ra = _real_to_rep(np.eye(dim_a), size_a)
        rb = _real_to_rep(np.eye(dim_b), size_b)
        prod = np.einsum("aik,bjl->abijkl", ra, rb).reshape(-1, mn, mn)
        return _real_from_rep(prod, mn).T
    if fam is Family.COMPLEX_HERM:
        dim_a = size_a**2
        dim_b = size_b**2
        ra = _complex_to_rep(np.eye(dim_a), size_a)
        rb = _complex_to_rep(np.eye(dim_b), size_b)
        prod = np.einsum("aik,bjl->abijkl", ra, rb).reshape(-1, mn, mn)
        return _complex_from_rep(prod, mn).T
    if fam is Family.QUAT_HERM:
        dim_a = size_a * (2 * size_a - 1)
        dim_b = size_b * (2 * size_b - 1)
        ra = _quat_to_rep(np.eye(dim_a), size_a)
        rb = _quat_to_rep(np.eye(dim_b), size_b)
        prod = np.einsum(
            "aikp,bjlq,pqr->abijklr", ra, rb, _SYM_QUAT_TABLE
        ).reshape(-1, mn, mn, 4)
        return _quat_from_rep(prod, mn).T
    raise ValueError(f"no entrywise product rule for family {fam.value!r}")


def candidate_composite(
    part_a: ProbModel, part_b: ProbModel, carrier_seed: int = 0
) -> CompositeSystem:
    """Same-family candidate carrier with the entrywise product embedding.

    A trivial (one-dimensional) part leaves the other algebra as carrier.
    Mixed families, spin factors, octonionic algebras and direct sums have
    no same-family matrix carrier and are rejected.
    """
    A = part_a.algebra
    B = part_b.algebra
    if A.dim == 1 or B.dim == 1:
        other = B if A.dim == 1 else A
        embed = np.eye(other.dim)
        carrier = other
    else:
        if A.family is not B.family:
            raise ValueError(
                "no candidate carrier for mixed families "
                f"({format_descriptor(A)} and {format_descriptor(B)})"
            )
        if A.family not in (Family.REAL_SYM, Family.COMPLEX_HERM, Family.QUAT_HERM):
            raise ValueError(
                f"family {A.family.value!r} has no entrywise matrix composite"
            )
        carrier = make_algebra(A.family, A.size * B.size)
        embed = _kron_columns(A.family, A.size, B.size)
    sv = np.linalg.svd(embed, compute_uv=False)
    rank = int((sv > EMBED_RANK_TOL * sv[0]).sum())
    carrier_model = make_model(carrier, count=2, seed=carrier_seed)
    return CompositeSystem(part_a, part_b, carrier, carrier_model, embed, rank)


def product_effect(cs: CompositeSystem, a: Element, b: Element) -> Element:
    coords = cs.pair_coords(a.coords, b.coords)[0]
    return Element(cs.carrier, coords)


def product_state(cs: CompositeSystem, sa: State, sb: State) -> State:
    w = product_effect(cs, sa.representer, sb.representer)
    return State(cs.carrier_model, w)


def product_test(cs: CompositeSystem, test_a, test_b) -> tuple[Element, ...]:
    return tuple(
        product_effect(cs, x, y) for x in tuple(test_a) for y in tuple(test_b)
    )


def local_tomography_audit(cs: CompositeSystem, seed: int = 0) -> ConeCertificate:
    """Exact dimension count: the composite is locally tomographic when the
    carrier dimension equals the product of part dimensions and the
    embedding has full product rank."""
    dim_a = cs.part_a.algebra.dim
    dim_b = cs.part_b.algebra.dim
    product = dim_a * dim_b
    passed = cs.carrier.dim == product and cs.embed_rank == product
    return ConeCertificate(
        check_name="local_tomography",
        passed=passed,
        samples=0,
        seed=seed,
        tol=0.0,
        worst_residual=float(abs(cs.carrier.dim - product) + (product - cs.embed_rank)),
        details={
            "dim_part_a": dim_a,
            "dim_part_b": dim_b,
            "dim_product": product,
            "dim_carrier": cs.carrier.dim,
            "embed_rank": cs.embed_rank,
        },
    )


def product_tests_check(
    cs: CompositeSystem, tol: float = 1e-9, seed: int = 0
) -> ConeCertificate:
    """Product tests must consist of carrier effects resolving the unit."""
    ctx = _context(cs.carrier)
    u = unit(cs.carrier)
    worst = 0.0
    witnesses: list[list[float]] = []
    n_outcomes = 0
    for ta in cs.part_a.tests:
        for tb in cs.part_b.tests:
            outcomes = product_test(cs, ta, tb)
            n_outcomes += len(outcomes)
            stack = np.stack([x.coords for x in outcomes])
            lam = eigenvalues_batch(cs.carrier, stack)
            scale = 1.0 + np.abs(lam).max(axis=1)
            neg = float((lam[:, 0] / scale).min())
            if -neg > worst and -neg > tol and not witnesses:
                witnesses.append(list(stack[int(np.argmin(lam[:, 0] / scale))]))
            worst = max(worst, -neg)
            total = stack.sum(axis=0)
            worst = max(
                worst, float(np.abs(total - u.coords).max()) / (1.0 + cs.carrier.rank)
            )
    return ConeCertificate(
        check_name="product_tests_resolve_unit",
        passed=worst <= tol,
        samples=n_outcomes,
        seed=seed,
        tol=tol,
        worst_residual=worst,
        witnesses=witnesses,
    )


def nonsignaling_check(
    cs: CompositeSystem,
    states: list[State] | None = None,
    tol: float = 1e-10,
    seed: int = 0,
) -> ConeCertificate:
    """Marginal outcome probabilities do not depend on the far-side test.

    Runs over every pair of tests of the far side, for each supplied carrier
    state (uniform plus an interior sample by default, plus the maximally
    entangled state when the carrier is complex with equal parts).
    """
    if states is None:
        states = [uniform_state(cs.carrier_model)]
        w = random_interior_point(cs.carrier, seed=seed + 1)
        states.append(State(cs.carrier_model, Element(cs.carrier, w.coords / np.dot(
            w.coords * _context(cs.carrier).gram, _context(cs.carrier).unit_coords
        ))))
        if (
            cs.carrier.family is Family.COMPLEX_HERM
            and cs.part_a.algebra.size == cs.part_b.algebra.size
            and cs.part_a.algebra.dim > 1
        ):
            states.append(maximally_entangled_state(cs))
    gram = _context(cs.carrier).gram
    n_a, n_b = len(cs.part_a.tests), len(cs.part_b.tests)
    far_pairs = n_a * (n_a - 1) // 2 + n_b * (n_b - 1) // 2
    worst = 0.0
    pairs = 0
    for state in states:
        wvec = cs.embed.T @ (gram * state.representer.coords)
        wmat = wvec.reshape(cs.part_a.algebra.dim, cs.part_b.algebra.dim)
        # marginals of side A across tests of side B, and vice versa
        for tests_near, tests_far, mat in (
            (cs.part_a.tests, cs.part_b.tests, wmat),
            (cs.part_b.tests, cs.part_a.tests, wmat.T),
        ):
            far_sums = [
                sum(y.coords for y in far_test) for far_test in tests_far
            ]
            for near_test in tests_near:
                stack = np.stack([x.coords for x in near_test])
                margins = np.stack([stack @ mat @ s for s in far_sums])
                spread = margins.max(axis=0) - margins.min(axis=0)
                worst = max(worst, float(spread.max()))
                pairs += len(tests_far) * (len(tests_far) - 1) // 2
    return ConeCertificate(
        check_name="nonsignaling_marginals",
        passed=worst <= tol,
        samples=pairs,
        seed=seed,
        tol=tol,
        worst_residual=worst,
        details={"states": len(states), "far_test_pairs": far_pairs},
    )


def factorization_check(
    cs: CompositeSystem, samples: int = 500, seed: int = 0, tol: float = 1e-10
) -> ConeCertificate:
    """Trace pairings of pair products factor into part pairings."""
    ctx_a = _context(cs.part_a.algebra)
    ctx_b = _context(cs.part_b.algebra)
    gram_c = _context(cs.carrier).gram
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((samples, cs.part_a.algebra.dim))
    B = rng.standard_normal((samples, cs.part_b.algebra.dim))
    C = rng.standard_normal((samples, cs.part_a.algebra.dim))
    D = rng.standard_normal((samples, cs.part_b.algebra.dim))
    left = cs.pair_coords(A, B)
    right = cs.pair_coords(C, D)
    lhs = np.sum(left * gram_c * right, axis=1)
    rhs = np.sum(A * ctx_a.gram * C, axis=1) * np.sum(B * ctx_b.gram * D, axis=1)
    rel = np.abs(lhs - rhs) / (1.0 + np.abs(rhs))
    worst = float(rel.max())
    witnesses = []
    if worst > tol:
        k = int(np.argmax(rel))
        witnesses = [list(A[k]), list(B[k]), list(C[k]), list(D[k])]
    return ConeCertificate(
        check_name="pairing_factorization",
        passed=worst <= tol,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=worst,
        witnesses=witnesses,
    )


def _sample_automorphism(algebra: AlgebraDescriptor, rng) -> np.ndarray:
    """A generically non-self-adjoint cone automorphism (two-point product)."""
    from .cone import automorphism_to_point

    w1 = random_interior_point(algebra, seed=int(rng.integers(2**31)))
    w2 = random_interior_point(algebra, seed=int(rng.integers(2**31)))
    return automorphism_to_point(w1).matrix @ automorphism_to_point(w2).matrix


def tensor_adjoint_check(
    cs: CompositeSystem, samples: int = 10, seed: int = 0, tol: float = 1e-9
) -> ConeCertificate:
    """Adjoints pass through the tensor factors: (g x id)^* = g^* x id.

    Requires a locally tomographic composite, where the embedding is a
    change of coordinates and the lifted map is defined on all of the
    carrier. The adjoint is also verified to preserve the carrier cone on
    sampled squares.
    """
    if not cs.locally_tomographic:
        raise ValueError("adjoint lifting needs a locally tomographic composite")
    rng = np.random.default_rng(seed)
    gram_c = _context(cs.carrier).gram
    ctx_c = _context(cs.carrier)
    dim_a = cs.part_a.algebra.dim
    dim_b = cs.part_b.algebra.dim
    inv_embed = np.linalg.inv(cs.embed)
    worst = 0.0
    min_eig = 0.0
    for _ in range(samples):
        for side in ("a", "b"):
            if side == "a":
                g = _sample_automorphism(cs.part_a.algebra, rng)
                gram_part = _context(cs.part_a.algebra).gram
                g_adj = (g.T * gram_part[None, :]) / gram_part[:, None]
                lift = np.kron(g, np.eye(dim_b))
                lift_adj_parts = np.kron(g_adj, np.eye(dim_b))
            else:
                g = _sample_automorphism(cs.part_b.algebra, rng)
                gram_part = _context(cs.part_b.algebra).gram
                g_adj = (g.T * gram_part[None, :]) / gram_part[:, None]
                lift = np.kron(np.eye(dim_a), g)
                lift_adj_parts = np.kron(np.eye(dim_a), g_adj)
            big = cs.embed @ lift @ inv_embed
            big_adj = (big.T * gram_c[None, :]) / gram_c[:, None]
            lifted = cs.embed @ lift_adj_parts @ inv_embed
            scale = 1.0 + float(np.abs(big).max())
            worst = max(worst, float(np.abs(big_adj - lifted).max()) / scale)
            xs = rng.standard_normal((8, cs.carrier.dim))
            squares = _product_batch(ctx_c.table, xs, xs)
            lam = eigenvalues_batch(cs.carrier, squares @ big_adj.T)
            rel = lam[:, 0] / (1.0 + np.abs(lam).max(axis=1))
            min_eig = min(min_eig, float(rel.min()))
    passed = worst <= tol and min_eig >= -tol
    return ConeCertificate(
        check_name="tensor_adjoint",
        passed=passed,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=max(worst, -min_eig),
        details={"adjoint_identity": worst, "adjoint_cone_min_eig": min_eig},
    )


def tensor_lmap_check(
    cs: CompositeSystem, samples: int = 50, seed: int = 0, tol: float = 1e-9
) -> ConeCertificate:
    """Multiplication by an embedded one-sided element acts factorwise.

    On the embedded subspace, L(a x u) composed with the embedding must
    agree with the embedding composed with L(a) x id, and symmetrically for
    the right factor. For a tomographic composite this determines the whole
    operator; otherwise the identity is only tested on the embedded
    subspace and the certificate says so in its name.
    """
    ctx_c = _context(cs.carrier)
    rng = np.random.default_rng(seed)
    dim_a = cs.part_a.algebra.dim
    dim_b = cs.part_b.algebra.dim
    ctx_a = _context(cs.part_a.algebra)
    ctx_b = _context(cs.part_b.algebra)
    u_a = ctx_a.unit_coords
    u_b = ctx_b.unit_coords
    worst = 0.0
    for _ in range(samples):
        a = rng.standard_normal(dim_a)
        c = cs.pair_coords(a, u_b)[0]
        l_big = np.einsum("i,ijk->kj", c, ctx_c.table)
        l_a = np.einsum("i,ijk->kj", a, ctx_a.table)
        lhs = l_big @ cs.embed
        rhs = cs.embed @ np.kron(l_a, np.eye(dim_b))
        worst = max(worst, float(np.abs(lhs - rhs).max()) / (1.0 + float(np.abs(a).max())))
        b = rng.standard_normal(dim_b)
        c = cs.pair_coords(u_a, b)[0]
        l_big = np.einsum("i,ijk->kj", c, ctx_c.table)
        l_b = np.einsum("i,ijk->kj", b, ctx_b.table)
        lhs = l_big @ cs.embed
        rhs = cs.embed @ np.kron(np.eye(dim_a), l_b)
        worst = max(worst, float(np.abs(lhs - rhs).max()) / (1.0 + float(np.abs(b).max())))
    name = "tensor_lmap" if cs.locally_tomographic else "tensor_lmap_embedded"
    return ConeCertificate(
        check_name=name,
        passed=worst <= tol,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=worst,
    )


def check_unit_factor_products(
    cs: CompositeSystem, samples: int = 500, seed: int = 0, tol: float = 1e-9
) -> ConeCertificate:
    """Products against one-sided units act on a single factor:
    (a x u) o (b x v) = (a o b) x v and (u x v) o (a x w) = a x (v o w)."""
    ctx_a = _context(cs.part_a.algebra)
    ctx_b = _context(cs.part_b.algebra)
    ctx_c = _context(cs.carrier)
    rng = np.random.default_rng(seed)
    n = samples
    A = rng.standard_normal((n, cs.part_a.algebra.dim))
    B = rng.standard_normal((n, cs.part_a.algebra.dim))
    V = rng.standard_normal((n, cs.part_b.algebra.dim))
    W = rng.standard_normal((n, cs.part_b.algebra.dim))
    u_a = np.broadcast_to(ctx_a.unit_coords, A.shape)
    u_b = np.broadcast_to(ctx_b.unit_coords, V.shape)

    lhs1 = _product_batch(ctx_c.table, cs.pair_coords(A, u_b), cs.pair_coords(B, V))
    rhs1 = cs.pair_coords(_product_batch(ctx_a.table, A, B), V)
    scale1 = 1.0 + np.abs(rhs1).max(axis=1)
    res1 = (np.abs(lhs1 - rhs1).max(axis=1) / scale1).max()

    lhs2 = _product_batch(ctx_c.table, cs.pair_coords(u_a, V), cs.pair_coords(A, W))
    rhs2 = cs.pair_coords(A, _product_batch(ctx_b.table, V, W))
    scale2 = 1.0 + np.abs(rhs2).max(axis=1)
    res2 = (np.abs(lhs2 - rhs2).max(axis=1) / scale2).max()

    worst = float(max(res1, res2))
    witnesses = []
    if worst > tol:
        k = int(np.argmax(np.abs(lhs1 - rhs1).max(axis=1) / scale1))
        witnesses = [list(A[k]), list(V[k])]
    return ConeCertificate(
        check_name="unit_factor_products",
        passed=worst <= tol,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=worst,
        witnesses=witnesses,
        details={"left_unit_residual": float(res2), "right_unit_residual": float(res1)},
    )


def maximally_entangled_state(cs: CompositeSystem) -> State:
    """Rank-one carrier state |psi><psi| with psi = sum_i |ii> / sqrt(m)."""
    if cs.carrier.family is not Family.COMPLEX_HERM:
        raise ValueError("maximally entangled construction needs a complex carrier")
    m = cs.part_a.algebra.size
    n = cs.part_b.algebra.size
    if m != n:
        raise ValueError("maximally entangled construction needs equal part sizes")
    psi = np.zeros(m * n)
    for i in range(m):
        psi[i * n + i] = 1.0
    psi /= np.sqrt(m)
    rho = np.outer(psi, psi).astype(complex)
    coords = _complex_from_rep(rho, m * n)
    return State(cs.carrier_model, Element(cs.carrier, coords))


def spin_qubit_isomorphism() -> tuple[np.ndarray, float]:
    """Coordinate isomorphism from the three-dimensional spin factor onto
    complex hermitian 2x2 matrices, with its worst product-table residual.

    The unit maps to the identity and the three vector units map to the
    hermitian involutions sigma_x, sigma_y, sigma_z; both sides have the
    same trace form, so the table residual is the whole story.
    """
    spin = make_algebra("spin", 3)
    qubit = make_algebra("complex", 2)
    sigma = [
        np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
        np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
        np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
    ]
    images = [np.eye(2, dtype=complex)] + sigma
    mat = np.stack([_complex_from_rep(im, 2) for im in images], axis=1)  # (4, 4)
    ctx_s = _context(spin)
    ctx_q = _context(qubit)
    # push the spin product table through the map and compare
    mapped = np.einsum("ijk,lk->ijl", ctx_s.table, mat)
    direct = np.einsum("ai,bj,ijk->abk", mat.T, mat.T, ctx_q.table)
    residual = float(np.abs(mapped - direct).max())
    # trace forms must agree as well
    gram_push = mat.T @ np.diag(ctx_q.gram) @ mat
    residual = max(residual, float(np.abs(gram_push - np.diag(ctx_s.gram)).max()))
    return mat, residual


def qubit_witness(theory, tol: float = 1e-9) -> bool:
    """Whether some system in the theory is a qubit in disguise: natively
    complex of size two, or a three-dimensional spin factor (exhibited by an
    explicit product-preserving isomorphism).

    Accepts a single algebra descriptor or model, or an iterable of them.
    """
    if isinstance(theory, AlgebraDescriptor) or hasattr(theory, "algebra"):
        theory = [theory]
    for entry in theory:
        algebra = entry.algebra if hasattr(entry, "algebra") else entry
        if algebra.family is Family.COMPLEX_HERM and algebra.size == 2:
            return True
        if algebra.family is Family.SPIN and algebra.size == 3:
            _, residual = spin_qubit_isomorphism()
            if residual <= tol:
                return True
    return False
