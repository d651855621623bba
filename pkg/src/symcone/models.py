"""Measurement models over a symmetric cone: tests, states, sharpness.

A model fixes a finite set of tests. Each test is a tuple of outcome
effects, elements of the positive cone that sum to the order unit, so every
state (normalized cone element) assigns it a probability vector. The
default construction samples spectral frames, whose outcomes are primitive
idempotents, but explicitly supplied tests may use any effects; that is how
degenerate outcome designs enter the checks below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .algebra import (
    AlgebraDescriptor,
    Element,
    _context,
    _product_batch,
    norm,
    trace_form,
    trace_of,
    unit,
)
from .certificates import ConeCertificate
from .cone import cone_contains
from .spectral import (
    canonical_frame,
    frame_pool,
    is_primitive,
    random_jordan_frame,
    spectral_decompose,
)

__all__ = [
    "MODEL_TOL",
    "ProbModel",
    "State",
    "make_model",
    "model_from_tests",
    "uniform_state",
    "pure_state_of",
    "state_from_coords",
    "random_state",
    "mix",
    "evaluate",
    "certify_unital_sharp",
    "check_unital_outcomes_primitive",
    "check_cauchy_schwarz",
    "check_reversible_stabilizer",
]

MODEL_TOL = 1e-8


@dataclass
class ProbModel:
    algebra: AlgebraDescriptor
    tests: tuple[tuple[Element, ...], ...]
    outcomes: tuple[Element, ...]  # pooled across tests, deduplicated


@dataclass
class State:
    model: ProbModel
    representer: Element


def _dedup_outcomes(tests: tuple[tuple[Element, ...], ...]) -> tuple[Element, ...]:
    pool: list[Element] = []
    for test in tests:
        for x in test:
            if not any(
                np.allclose(x.coords, y.coords, atol=MODEL_TOL, rtol=0.0)
                for y in pool
            ):
                pool.append(x)
    return tuple(pool)


def model_from_tests(
    algebra: AlgebraDescriptor,
    tests,
    tol: float = MODEL_TOL,
) -> ProbModel:
    """Build a model from explicit tests, validating each one.

    Every outcome must lie in the positive cone and each test must resolve
    the order unit. Effects need not be idempotents.
    """
    u = unit(algebra)
    checked = []
    for idx, test in enumerate(tests):
        test = tuple(test)
        if not test:
            raise ValueError(f"test {idx} has no outcomes")
        for x in test:
            if x.algebra != algebra:
                raise ValueError(f"test {idx} mixes algebras")
            if not cone_contains(x, tol):
                raise ValueError(f"test {idx} has an outcome outside the cone")
        total = test[0]
        for x in test[1:]:
            total = total + x
        if norm(total - u) > tol * (1.0 + norm(u)):
            raise ValueError(f"test {idx} does not resolve the order unit")
        checked.append(test)
    return ProbModel(algebra, tuple(checked), _dedup_outcomes(tuple(checked)))


def make_model(
    algebra: AlgebraDescriptor, count: int = 8, seed: int = 0
) -> ProbModel:
    """Model whose tests are ``count`` sampled frames plus a canonical one."""
    tests = [tuple(canonical_frame(algebra))]
    for i in range(count):
        tests.append(tuple(random_jordan_frame(algebra, seed=seed + i)))
    return model_from_tests(algebra, tests)


def state_from_coords(model: ProbModel, coords, tol: float = MODEL_TOL) -> State:
    w = Element(model.algebra, np.asarray(coords, dtype=float))
    if not cone_contains(w, tol):
        raise ValueError("state representer is outside the cone")
    if abs(trace_of(w) - 1.0) > tol * model.algebra.rank:
        raise ValueError("state representer is not normalized")
    return State(model, w)


def uniform_state(model: ProbModel) -> State:
    u = unit(model.algebra)
    return State(model, Element(model.algebra, u.coords / model.algebra.rank))


def pure_state_of(model: ProbModel, e: Element, tol: float = MODEL_TOL) -> State:
    if not is_primitive(e, tol):
        raise ValueError("pure states are represented by primitive idempotents")
    return State(model, e)


def random_state(model: ProbModel, seed: int = 0) -> State:
    rng = np.random.default_rng(seed)
    ctx = _context(model.algebra)
    x = rng.standard_normal(model.algebra.dim)
    sq = _product_batch(ctx.table, x[None, :], x[None, :])[0]
    sq = sq + 1e-6 * ctx.unit_coords  # keep clear of the boundary
    tr = float(np.dot(sq * ctx.gram, ctx.unit_coords))
    return State(model, Element(model.algebra, sq / tr))


def mix(a: State, b: State, weight: float) -> State:
    if a.model is not b.model:
        raise ValueError("cannot mix states of different models")
    if not 0.0 <= weight <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    coords = weight * a.representer.coords + (1.0 - weight) * b.representer.coords
    return State(a.model, Element(a.model.algebra, coords))


def _find_test(model: ProbModel, test) -> tuple[Element, ...]:
    test = tuple(test)
    for candidate in model.tests:
        if candidate is test or (
            len(candidate) == len(test)
            and all(
                np.array_equal(x.coords, y.coords)
                for x, y in zip(candidate, test)
            )
        ):
            return candidate
    raise ValueError("test does not belong to the state's model")


def evaluate(state: State, test) -> np.ndarray:
    """Probability vector of a model test in the given state."""
    test = _find_test(state.model, test)
    return np.array([trace_form(state.representer, x) for x in test])


def certify_unital_sharp(
    model: ProbModel, tol: float = 1e-9, seed: int = 0
) -> ConeCertificate:
    """Each pooled outcome attains probability one on exactly one state.

    An outcome is unital when its largest eigenvalue is 1; the states
    certifying it are supported on the top eigenspace, so the certifying
    state is unique precisely when the top idempotent is primitive. The
    certificate fails on the first outcome that is either not unital or
    whose certifying face is bigger than a point.
    """
    worst = 0.0
    witnesses: list[list[float]] = []
    n_sharp = 0
    for x in model.outcomes:
        dec = spectral_decompose(x)
        lam_max = dec.eigenvalues[-1]
        gap = abs(lam_max - 1.0)
        worst = max(worst, gap)
        top = dec.idempotents[-1]
        if gap > tol * model.algebra.rank or not is_primitive(top, max(tol, 1e-8)):
            if not witnesses:
                witnesses.append(list(x.coords))
            continue
        # the unique certifying state is the top idempotent itself
        attained = trace_form(top, x)
        worst = max(worst, abs(attained - 1.0))
        n_sharp += 1
    passed = n_sharp == len(model.outcomes)
    return ConeCertificate(
        check_name="unital_sharp_outcomes",
        passed=passed,
        samples=len(model.outcomes),
        seed=seed,
        tol=tol,
        worst_residual=worst,
        witnesses=witnesses,
        details={"outcomes": len(model.outcomes), "certified": n_sharp},
    )


def check_unital_outcomes_primitive(
    model: ProbModel, tol: float = 1e-9, seed: int = 0
) -> ConeCertificate:
    """In a uniform model every unital outcome must be a primitive idempotent.

    Precondition (raises when violated): the uniform state weights each test
    evenly, i.e. tr(x) = rank / len(test) for every outcome. Outcomes whose
    largest eigenvalue stays below 1 are merely counted; they make no claim.
    """
    rank = model.algebra.rank
    for idx, test in enumerate(model.tests):
        expected = rank / len(test)
        for x in test:
            if abs(trace_of(x) - expected) > 1e-7 * rank:
                raise ValueError(
                    f"model is not uniform: test {idx} has an outcome with "
                    f"trace {trace_of(x):.6f}, expected {expected:.6f}"
                )
    worst = 0.0
    witnesses: list[list[float]] = []
    unital = 0
    non_unital = 0
    failures = 0
    for x in model.outcomes:
        dec = spectral_decompose(x)
        lam_max = dec.eigenvalues[-1]
        if lam_max < 1.0 - 1e-6:
            non_unital += 1
            continue
        unital += 1
        worst = max(worst, abs(lam_max - 1.0))
        if not is_primitive(x, max(tol, 1e-8)):
            failures += 1
            if not witnesses:
                witnesses.append(list(x.coords))
    return ConeCertificate(
        check_name="uniform_unital_outcomes_primitive",
        passed=failures == 0 and worst <= tol * rank,
        samples=len(model.outcomes),
        seed=seed,
        tol=tol,
        worst_residual=worst,
        witnesses=witnesses,
        details={
            "unital_outcomes": unital,
            "non_unital_outcomes": non_unital,
            "non_primitive_unital": failures,
        },
    )


def check_cauchy_schwarz(
    algebra: AlgebraDescriptor,
    samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-10,
) -> ConeCertificate:
    """Pairings of primitive idempotents stay within [0, 1].

    The distance identity |e - f|^2 = 2 (1 - <e, f>) pins the equality case
    to e = f; its sampled residual is reported alongside the bounds.
    """
    ctx = _context(algebra)
    n_frames = max(2, (samples // max(algebra.rank, 1)) + 1)
    pool = frame_pool(algebra, n_frames, seed=seed)
    rng = np.random.default_rng(seed + 1)
    i = rng.integers(0, pool.shape[0], size=samples)
    j = rng.integers(0, pool.shape[0], size=samples)
    vals = np.sum(pool[i] * ctx.gram * pool[j], axis=1)
    dist_sq = np.sum((pool[i] - pool[j]) ** 2 * ctx.gram, axis=1)
    identity_gap = float(np.abs(dist_sq - 2.0 * (1.0 - vals)).max())
    upper = float(vals.max() - 1.0)
    lower = float(-vals.min())
    worst = max(upper, lower, 0.0)
    witnesses = []
    if worst > tol:
        k = int(np.argmax(np.maximum(vals - 1.0, -vals)))
        witnesses = [list(pool[i[k]]), list(pool[j[k]])]
    return ConeCertificate(
        check_name="primitive_pairing_bounds",
        passed=worst <= tol,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=worst,
        witnesses=witnesses,
        details={
            "max_pairing": float(vals.max()),
            "min_pairing": float(vals.min()),
            "distance_identity_gap": identity_gap,
        },
    )


def check_reversible_stabilizer(
    algebra: AlgebraDescriptor,
    samples: int = 20,
    seed: int = 0,
    tol: float = 1e-9,
) -> ConeCertificate:
    """Skew generators exponentiate to metric isometries fixing the uniform
    state; symmetric generators demonstrably do neither."""
    from .reconstruction import structure_lie_basis

    ctx = _context(algebra)
    lie = structure_lie_basis(algebra)
    rng = np.random.default_rng(seed)
    u = ctx.unit_coords
    g_diag = ctx.gram
    worst = 0.0
    moved_floor = float("inf")
    for _ in range(samples):
        if lie.skew_basis.shape[0]:
            c = rng.standard_normal(lie.skew_basis.shape[0])
            c /= max(np.linalg.norm(c), 1e-30)
            k = expm(np.tensordot(c, lie.skew_basis, axes=(0, 0)))
            worst = max(worst, float(np.abs(k @ u - u).max()))
            worst = max(
                worst, float(np.abs(k.T @ np.diag(g_diag) @ k - np.diag(g_diag)).max())
            )
        c = rng.standard_normal(lie.sym_basis.shape[0])
        c /= max(np.linalg.norm(c), 1e-30)
        s = expm(np.tensordot(c, lie.sym_basis, axes=(0, 0)))
        moved = float(np.linalg.norm(s @ u - u))
        non_iso = float(np.abs(s.T @ np.diag(g_diag) @ s - np.diag(g_diag)).max())
        moved_floor = min(moved_floor, max(moved, non_iso))
    passed = worst <= tol and moved_floor > 1e-6
    return ConeCertificate(
        check_name="reversible_stabilizer",
        passed=passed,
        samples=samples,
        seed=seed,
        tol=tol,
        worst_residual=worst,
        details={
            "skew_fix_residual": worst,
            "sym_displacement_floor": moved_floor,
            "skew_dim": int(lie.skew_basis.shape[0]),
            "sym_dim": int(lie.sym_basis.shape[0]),
        },
    )
