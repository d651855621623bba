"""Recovering the Jordan product from the cone's symmetry group.

The automorphism group of a homogeneous self-dual cone has a Lie algebra
that splits, with respect to the trace metric, into a symmetric part p and a
skew part k. The skew part is exactly the stabilizer direction (X u = 0),
the map X -> X u identifies p with the algebra carrier, and pulling the
symmetric generators back through that map recovers multiplication
operators, hence the product itself: a o b = L_a b where L_a is the unique
symmetric generator with L_a u = a.

Everything here is numerical: the group is represented by the structure Lie
algebra generated by left-multiplications and their commutators, closed
under bracket to a stable span, and all memberships are certified by rank
and residual thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .algebra import (
    AlgebraDescriptor,
    _context,
    _left_mult_matrix,
    _product_batch,
)
from .certificates import ConeCertificate
from .spectral import eigenvalues_batch

__all__ = [
    "STRUCTURE_RANK_TOL",
    "CONDITION_LIMIT",
    "MAX_CLOSURE_ROUNDS",
    "LieAlgebraBasis",
    "PEIsomorphism",
    "ReconstructionReport",
    "group_lie_generators",
    "lie_closure",
    "structure_lie_basis",
    "check_unit_stabilizer_split",
    "check_p_bracket",
    "p_to_E_isomorphism",
    "reconstruct_product",
    "check_exp_preserves_cone",
]

STRUCTURE_RANK_TOL = 1e-8
CONDITION_LIMIT = 1e6
MAX_CLOSURE_ROUNDS = 10


@dataclass
class LieAlgebraBasis:
    """Orthonormal basis of the closed Lie span, split by metric symmetry."""

    algebra: AlgebraDescriptor
    basis: np.ndarray       # (g, d, d)
    sym_basis: np.ndarray   # (p, d, d)
    skew_basis: np.ndarray  # (k, d, d)
    rounds: int
    split_residual: float

    @property
    def dims(self) -> dict[str, int]:
        return {
            "lie_algebra": int(self.basis.shape[0]),
            "symmetric_part": int(self.sym_basis.shape[0]),
            "skew_part": int(self.skew_basis.shape[0]),
        }


@dataclass
class PEIsomorphism:
    """The evaluation X -> X u restricted to the symmetric part."""

    matrix: np.ndarray
    condition_number: float
    invertible: bool


@dataclass
class ReconstructionReport:
    algebra: AlgebraDescriptor
    dims: dict[str, int]
    condition_number: float
    residuals: dict[str, float] = field(default_factory=dict)
    max_deviation: float = float("nan")
    table: np.ndarray | None = None

    def passed(self, tol: float = 1e-6) -> bool:
        worst = max(self.residuals.values(), default=float("inf"))
        return max(worst, self.max_deviation) <= tol


def group_lie_generators(algebra: AlgebraDescriptor) -> np.ndarray:
    """Left multiplications by the basis plus their pairwise commutators."""
    ctx = _context(algebra)
    dim = algebra.dim
    lefts = np.stack(
        [_left_mult_matrix(ctx.table, row) for row in np.eye(dim)]
    )
    comms = []
    for i in range(dim):
        for j in range(i + 1, dim):
            comms.append(lefts[i] @ lefts[j] - lefts[j] @ lefts[i])
    if comms:
        return np.concatenate([lefts, np.stack(comms)], axis=0)
    return lefts


def _orthonormal_rows(
    stack: np.ndarray, tol: float, scale: float | None = None
) -> np.ndarray:
    """Orthonormal basis (as operator stack) of the row span of ``stack``.

    Rank is cut at ``tol`` times ``scale`` when given, else times the largest
    singular value. An explicit scale matters when the stack is a projection
    residual whose own largest singular value may already be noise.
    """
    k, d, _ = stack.shape
    flat = stack.reshape(k, d * d)
    u_, sv, vt = np.linalg.svd(flat, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        return np.empty((0, d, d))
    keep = sv > tol * (sv[0] if scale is None else scale)
    return vt[keep].reshape(-1, d, d)


def lie_closure(
    generators: np.ndarray,
    tol: float = STRUCTURE_RANK_TOL,
    max_rounds: int = MAX_CLOSURE_ROUNDS,
) -> tuple[np.ndarray, int]:
    """Close a set of operators under commutators up to numerical rank.

    Returns the orthonormalized basis and the number of rounds that added
    new directions. Raises if the span keeps growing past the ambient
    operator dimension or past ``max_rounds`` (a tolerance misconfiguration:
    bracket closure of a finite-dimensional Lie algebra must stabilize).
    """
    if tol <= 0.0:
        raise ValueError("closure rank tolerance must be positive")
    generators = np.asarray(generators, dtype=float)
    d = generators.shape[-1]
    basis = _orthonormal_rows(generators, tol)
    rounds = 0
    for _ in range(max_rounds):
        g = basis.shape[0]
        if g > d * d:
            raise ValueError("closure exceeded the ambient operator dimension")
        prods = np.einsum("aij,bjk->abik", basis, basis)
        comms = (prods - np.swapaxes(prods, 0, 1)).reshape(-1, d, d)
        flat = comms.reshape(-1, d * d)
        scale = float(np.linalg.norm(flat, ord=2)) if flat.size else 0.0
        if scale == 0.0:
            return basis, rounds
        proj = flat - (flat @ basis.reshape(g, -1).T) @ basis.reshape(g, -1)
        fresh = _orthonormal_rows(proj.reshape(-1, d, d), tol, scale=scale)
        if fresh.shape[0] == 0:
            return basis, rounds
        rounds += 1
        basis = _orthonormal_rows(np.concatenate([basis, fresh]), tol)
    raise ValueError(f"Lie closure did not stabilize within {max_rounds} rounds")


def _metric_adjoint(gram: np.ndarray, mats: np.ndarray) -> np.ndarray:
    """Adjoint rows of an operator stack with respect to a diagonal Gram."""
    return np.swapaxes(mats, -1, -2) * gram[None, None, :] / gram[None, :, None]


_LIE_CACHE: dict[AlgebraDescriptor, LieAlgebraBasis] = {}


def structure_lie_basis(algebra: AlgebraDescriptor) -> LieAlgebraBasis:
    cached = _LIE_CACHE.get(algebra)
    if cached is not None:
        return cached
    ctx = _context(algebra)
    basis, rounds = lie_closure(group_lie_generators(algebra))
    adj = _metric_adjoint(ctx.gram, basis)
    sym = _orthonormal_rows(0.5 * (basis + adj), STRUCTURE_RANK_TOL)
    skew_raw = 0.5 * (basis - adj)
    if np.abs(skew_raw).max() < 1e-13:
        skew = np.empty((0, algebra.dim, algebra.dim))
    else:
        skew = _orthonormal_rows(skew_raw, STRUCTURE_RANK_TOL)
    split_residual = abs(sym.shape[0] + skew.shape[0] - basis.shape[0])
    result = LieAlgebraBasis(
        algebra, basis, sym, skew, rounds, float(split_residual)
    )
    _LIE_CACHE[algebra] = result
    return result


def check_unit_stabilizer_split(
    lie: LieAlgebraBasis, tol: float = 1e-9, seed: int = 0
) -> ConeCertificate:
    """Skew generators are exactly the unit stabilizer, both directions.

    Forward: every skew basis operator kills the unit. Converse: the kernel
    of the evaluation X -> X u on the whole Lie span has no symmetric
    component.
    """
    ctx = _context(lie.algebra)
    u = ctx.unit_coords
    skew_res = 0.0
    if lie.skew_basis.shape[0]:
        skew_res = float(np.abs(lie.skew_basis @ u).max())

    g = lie.basis.shape[0]
    eval_map = lie.basis @ u  # (g, d)
    u_, sv, vt = np.linalg.svd(eval_map.T, full_matrices=True)
    rank = int((sv > STRUCTURE_RANK_TOL * max(sv[0], 1e-300)).sum())
    kernel = vt[rank:]  # combinations of basis ops killing u
    converse_res = 0.0
    for c in kernel:
        op = np.tensordot(c, lie.basis, axes=(0, 0))
        adj = (op.T * ctx.gram[None, :]) / ctx.gram[:, None]
        converse_res = max(converse_res, float(np.abs(0.5 * (op + adj)).max()))
    passed = skew_res <= tol and converse_res <= tol
    return ConeCertificate(
        check_name="unit_stabilizer_split",
        passed=passed,
        samples=g,
        seed=seed,
        tol=tol,
        worst_residual=max(skew_res, converse_res),
        details={
            "skew_kills_unit": skew_res,
            "kernel_is_skew": converse_res,
            "kernel_dim": int(kernel.shape[0]),
        },
    )


def check_p_bracket(
    lie: LieAlgebraBasis, samples: int = 50, seed: int = 0, tol: float = 1e-9
) -> ConeCertificate:
    """Commutators of symmetric generators land in the skew part."""
    rng = np.random.default_rng(seed)
    p = lie.sym_basis.shape[0]
    d = lie.algebra.dim
    skew_flat = lie.skew_basis.reshape(-1, d * d)
    worst = 0.0
    for _ in range(samples):
        x = np.tensordot(rng.standard_normal(p), lie.sym_basis, axes=(0, 0))
        y = np.tensordot(rng.standard_normal(p), lie.sym_basis, axes=(0, 0))
        comm = (x @ y - y @ x).reshape(-1)
        scale = max(float(np.linalg.norm(comm)), 1e-30)
        if skew_flat.shape[0]:
            resid = comm - skew_flat.T @ (skew_flat @ comm)
        else:
            resid = comm
        worst = max(worst, float(np.linalg.norm(resid)) / scale)
    return ConeCertificate(
        check_name="sym_bracket_in_skew",
        passed=worst <= tol,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=worst,
    )


def p_to_E_isomorphism(lie: LieAlgebraBasis) -> PEIsomorphism:
    """Evaluation matrix of X -> X u on the symmetric part, with condition."""
    ctx = _context(lie.algebra)
    phi = (lie.sym_basis @ ctx.unit_coords).T  # (d, p)
    if phi.shape[0] != phi.shape[1]:
        return PEIsomorphism(phi, float("inf"), False)
    sv = np.linalg.svd(phi, compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
    return PEIsomorphism(phi, cond, cond < CONDITION_LIMIT)


def reconstruct_product(
    algebra: AlgebraDescriptor,
    lie: LieAlgebraBasis | None = None,
    samples: int = 200,
    seed: int = 0,
) -> ReconstructionReport:
    """Rebuild the product table from the symmetric generators alone.

    For each basis element b the unique symmetric generator with X u = b is
    found through the evaluation map; the recovered multiplication operators
    define a candidate product, which is then checked for commutativity, the
    unit law, the defining quartic identity, and trace associativity, and
    finally compared against the native table.
    """
    ctx = _context(algebra)
    if lie is None:
        lie = structure_lie_basis(algebra)
    iso = p_to_E_isomorphism(lie)
    if not iso.invertible:
        raise ValueError(
            "evaluation map is not invertible; the symmetric part does not "
            f"match the carrier (condition {iso.condition_number:.3e})"
        )
    d = algebra.dim
    coeffs = np.linalg.solve(iso.matrix, np.eye(d))  # (p, d)
    lefts = np.einsum("pb,pij->bij", coeffs, lie.sym_basis)  # (d, d, d)
    table = np.swapaxes(lefts, 1, 2)  # table[i, j, k] = (L_i)_{k j}

    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((samples, d))
    ys = rng.standard_normal((samples, d))

    commutativity = float(np.abs(table - np.swapaxes(table, 0, 1)).max())
    unit_law = float(
        np.abs(np.tensordot(ctx.unit_coords, table, axes=(0, 0)) - np.eye(d)).max()
    )
    asq = _product_batch(table, xs, xs)
    lhs = _product_batch(table, asq, _product_batch(table, xs, ys))
    rhs = _product_batch(table, xs, _product_batch(table, asq, ys))
    nx = np.sqrt(np.sum(xs**2 * ctx.gram, axis=1))
    ny = np.sqrt(np.sum(ys**2 * ctx.gram, axis=1))
    jordan = float(
        (np.sqrt(np.sum((lhs - rhs) ** 2 * ctx.gram, axis=1)) / (1.0 + nx**3 * ny)).max()
    )
    zs = rng.standard_normal((samples, d))
    t_lhs = np.sum(_product_batch(table, xs, ys) * ctx.gram * zs, axis=1)
    t_rhs = np.sum(ys * ctx.gram * _product_batch(table, xs, zs), axis=1)
    nz = np.sqrt(np.sum(zs**2 * ctx.gram, axis=1))
    trace_assoc = float((np.abs(t_lhs - t_rhs) / (1.0 + nx * ny * nz)).max())

    deviation = float(np.abs(table - ctx.table).max())
    return ReconstructionReport(
        algebra=algebra,
        dims=lie.dims,
        condition_number=iso.condition_number,
        residuals={
            "commutativity": commutativity,
            "unit_law": unit_law,
            "jordan_identity": jordan,
            "trace_associativity": trace_assoc,
        },
        max_deviation=deviation,
        table=table,
    )


def check_exp_preserves_cone(
    algebra: AlgebraDescriptor,
    lie: LieAlgebraBasis | None = None,
    samples: int = 40,
    seed: int = 0,
    tol: float = 1e-9,
    magnitude: float = 0.5,
) -> ConeCertificate:
    """One-parameter subgroups from the symmetric part map the cone into
    itself (scaling-and-squaring exponential, accuracy far below tol)."""
    ctx = _context(algebra)
    if lie is None:
        lie = structure_lie_basis(algebra)
    rng = np.random.default_rng(seed)
    p = lie.sym_basis.shape[0]
    worst = 0.0
    witnesses: list[list[float]] = []
    for _ in range(samples):
        direction = rng.standard_normal(p)
        direction *= magnitude / max(np.linalg.norm(direction), 1e-30)
        g = expm(np.tensordot(direction, lie.sym_basis, axes=(0, 0)))
        xs = rng.standard_normal((16, algebra.dim))
        squares = _product_batch(ctx.table, xs, xs)
        lam = eigenvalues_batch(algebra, squares @ g.T)
        rel = lam[:, 0] / (1.0 + np.abs(lam).max(axis=1))
        m = float(rel.min())
        if m < worst:
            worst = m
            if m < -tol and not witnesses:
                witnesses.append(squares[int(np.argmin(rel))].tolist())
    return ConeCertificate(
        check_name="exp_preserves_cone",
        passed=worst >= -tol,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=worst,
        witnesses=witnesses,
        details={"generator_magnitude": magnitude},
    )
