"""Probabilistic models built on algebra frames: states, tests, outcomes."""

import numpy as np
import pytest

from symcone import (
    Element,
    direct_sum,
    format_descriptor,
    make_algebra,
    make_model,
    mix,
    model_from_tests,
    pure_state_of,
    random_state,
    trace_of,
    uniform_state,
    unit,
)
from symcone.models import (
    State,
    certify_unital_sharp,
    check_cauchy_schwarz,
    check_reversible_stabilizer,
    check_unital_outcomes_primitive,
    evaluate,
    state_from_coords,
)
from symcone.spectral import random_jordan_frame

FAMILIES = [
    make_algebra("real", 3),
    make_algebra("complex", 2),
    make_algebra("quaternion", 2),
    make_algebra("spin", 4),
    make_algebra("albert"),
]

PROB_ATOL = 1e-10


def _frame_test(desc, seed):
    return tuple(random_jordan_frame(desc, seed=seed))


def test_model_tests_resolve_unit():
    desc = make_algebra("complex", 2)
    model = make_model(desc, count=50, seed=81)
    assert len(model.tests) == 51  # canonical frame plus the sampled ones
    for test in model.tests:
        total = sum(x.coords for x in test)
        np.testing.assert_allclose(total, unit(desc).coords, atol=1e-9)


def test_classical_bit_tests_are_basis_idempotents():
    bit = direct_sum(make_algebra("real", 1), make_algebra("real", 1))
    model = make_model(bit, count=1, seed=82)
    for test in model.tests:
        rows = sorted(tuple(x.coords) for x in test)
        np.testing.assert_allclose(rows, [(0.0, 1.0), (1.0, 0.0)], atol=1e-12)


def test_trivial_rank_one_model():
    desc = make_algebra("real", 1)
    model = make_model(desc, count=1, seed=83)
    state = uniform_state(model)
    for test in model.tests:
        assert len(test) == 1
        np.testing.assert_allclose(evaluate(state, test), [1.0], atol=PROB_ATOL)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_uniform_state_is_flat(desc):
    model = make_model(desc, count=5, seed=84)
    state = uniform_state(model)
    for test in model.tests:
        probs = evaluate(state, test)
        np.testing.assert_allclose(probs, 1.0 / desc.rank, atol=PROB_ATOL)


def test_pure_state_is_an_indicator():
    desc = make_algebra("complex", 2)
    test = _frame_test(desc, 85)
    model = model_from_tests(desc, [test])
    state = pure_state_of(model, test[0])
    np.testing.assert_allclose(evaluate(state, test), [1.0, 0.0], atol=PROB_ATOL)


def test_orthogonal_idempotent_gets_zero_probability():
    desc = make_algebra("complex", 2)
    e1, e2 = _frame_test(desc, 86)
    model = model_from_tests(desc, [(e1, e2)])
    state = pure_state_of(model, e2)
    assert evaluate(state, (e1, e2))[0] == pytest.approx(0.0, abs=PROB_ATOL)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_random_states_are_normalized(desc):
    model = make_model(desc, count=6, seed=87)
    rng = np.random.default_rng(88)
    for _ in range(5):
        state = random_state(model, rng)
        for test in model.tests:
            probs = evaluate(state, test)
            assert probs.min() >= -PROB_ATOL
            assert probs.sum() == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_frame_models_are_unital_and_sharp(desc):
    model = make_model(desc, count=4, seed=89)
    cert = certify_unital_sharp(model)
    assert cert.passed, cert.details
    assert cert.details["certified"] == cert.details["outcomes"]


def test_subnormalized_outcome_breaks_unitality():
    desc = make_algebra("complex", 2)
    e1, e2 = _frame_test(desc, 90)
    half_test = (
        Element(desc, 0.5 * e1.coords),
        Element(desc, 0.5 * e2.coords),
        Element(desc, 0.5 * (e1.coords + e2.coords)),
    )
    model = model_from_tests(desc, [(e1, e2), half_test])
    cert = certify_unital_sharp(model)
    assert not cert.passed
    assert cert.witnesses


def test_mixed_outcome_is_flagged_nonunital_not_a_counterexample():
    # A three-outcome uniform test (each outcome has trace 2/3) built from
    # scaled idempotents: every outcome has top eigenvalue below one, so none
    # is unital. That does not challenge the claim that unital outcomes are
    # primitive; the certificate counts them separately and still passes.
    desc = make_algebra("complex", 2)
    e1, e2 = _frame_test(desc, 91)
    blunt_test = (
        Element(desc, (2.0 / 3.0) * e1.coords),
        Element(desc, (2.0 / 3.0) * e2.coords),
        Element(desc, (1.0 / 3.0) * (e1.coords + e2.coords)),
    )
    model = model_from_tests(desc, [(e1, e2), blunt_test])
    cert = check_unital_outcomes_primitive(model)
    assert cert.passed
    assert cert.details["non_unital_outcomes"] == 3
    assert cert.details["non_primitive_unital"] == 0


def test_nonuniform_model_is_rejected_by_precondition():
    desc = make_algebra("complex", 3)
    frame = random_jordan_frame(desc, seed=92)
    lopsided = (frame[0], Element(desc, frame[1].coords + frame[2].coords))
    model = model_from_tests(desc, [lopsided])
    with pytest.raises(ValueError, match="uniform"):
        check_unital_outcomes_primitive(model)


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_unital_outcomes_primitive_on_frame_models(desc):
    model = make_model(desc, count=4, seed=93)
    cert = check_unital_outcomes_primitive(model)
    assert cert.passed
    assert cert.details["non_primitive_unital"] == 0


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_cauchy_schwarz_pairings(desc):
    cert = check_cauchy_schwarz(desc, samples=300, seed=94)
    assert cert.passed, cert.details
    assert cert.details["max_pairing"] <= 1.0 + 1e-10
    assert cert.details["min_pairing"] >= -1e-10
    assert cert.details["distance_identity_gap"] < 1e-9


@pytest.mark.parametrize("desc", FAMILIES, ids=format_descriptor)
def test_reversible_transformations_stabilize_uniform_state(desc):
    cert = check_reversible_stabilizer(desc, samples=8, seed=95)
    assert cert.passed, cert.details
    assert cert.details["sym_displacement_floor"] > 1e-6


def test_state_from_coords_validation():
    desc = make_algebra("complex", 2)
    model = make_model(desc, count=2, seed=96)
    with pytest.raises(ValueError, match="outside the cone"):
        state_from_coords(model, -unit(desc).coords)
    with pytest.raises(ValueError, match="not normalized"):
        state_from_coords(model, unit(desc).coords)
    state = state_from_coords(model, 0.5 * unit(desc).coords)
    assert isinstance(state, State)


def test_pure_state_requires_primitive():
    desc = make_algebra("complex", 2)
    model = make_model(desc, count=2, seed=97)
    with pytest.raises(ValueError, match="primitive"):
        pure_state_of(model, unit(desc))


def test_mixing_states():
    desc = make_algebra("quaternion", 2)
    model = make_model(desc, count=3, seed=98)
    a = uniform_state(model)
    b = random_state(model, np.random.default_rng(99))
    mixed = mix(a, b, 0.25)
    for test in model.tests:
        want = 0.25 * evaluate(a, test) + 0.75 * evaluate(b, test)
        np.testing.assert_allclose(evaluate(mixed, test), want, atol=1e-12)
    with pytest.raises(ValueError, match="weight"):
        mix(a, b, 1.5)
    other = make_model(make_algebra("real", 2), count=2, seed=100)
    with pytest.raises(ValueError, match="different models"):
        mix(a, uniform_state(other), 0.5)


def test_evaluate_rejects_foreign_tests():
    desc = make_algebra("complex", 2)
    model = make_model(desc, count=2, seed=101)
    state = uniform_state(model)
    foreign = _frame_test(desc, 12345)
    with pytest.raises(ValueError, match="belong"):
        evaluate(state, foreign)


def test_model_from_tests_validation():
    desc = make_algebra("complex", 2)
    e1, e2 = _frame_test(desc, 102)
    with pytest.raises(ValueError, match="resolve"):
        model_from_tests(desc, [(e1, e1)])
    with pytest.raises(ValueError, match="outside the cone"):
        bad = Element(desc, -e1.coords)
        model_from_tests(desc, [(bad, e1, e2)])
    with pytest.raises(ValueError, match="no outcomes"):
        model_from_tests(desc, [()])


def test_outcome_pool_is_deduplicated():
    desc = make_algebra("complex", 2)
    e1, e2 = _frame_test(desc, 103)
    model = model_from_tests(desc, [(e1, e2), (e1, e2), (e2, e1)])
    assert len(model.outcomes) == 2


def test_uniform_state_trace():
    desc = make_algebra("albert")
    model = make_model(desc, count=2, seed=104)
    state = uniform_state(model)
    assert trace_of(state.representer) == pytest.approx(1.0, abs=1e-12)
