"""Operator construction and evaluation: the classic operator, the two
integer-coefficient variants, derivative models, and proximity gaps."""

import random
from fractions import Fraction as F

import numpy as np
import pytest

import bernint.corpus as corpus
from bernint import (
    HypothesisViolation,
    OperatorKind,
    TiePolicy,
    binomial,
    build_model,
    builtin,
    derivative_model,
    evaluate,
    evaluate_exact,
    finite_difference,
    proximity_gap,
    proximity_gap_exact,
)

CLASSIC = OperatorKind.CLASSIC
FLOOR = OperatorKind.FLOOR_INT
NEAREST = OperatorKind.NEAREST_INT

X2 = builtin("monomial(2)")
X3 = builtin("monomial(3)")


def test_classic_coeffs_x2_n2():
    m = build_model(X2, 2, CLASSIC)
    assert m.coeffs == (F(0), F(1, 4), F(1))
    assert m.coeffs_exact


def test_floor_coeffs_x2_n2():
    # f(1/2)*C(2,1) = 1/2, floor -> 0
    m = build_model(X2, 2, FLOOR)
    assert m.coeffs == (F(0), F(0), F(1))


def test_nearest_coeffs_x2_n2_tie_policies():
    up = build_model(X2, 2, NEAREST, tie=TiePolicy.HALF_UP)
    assert up.coeffs == (F(0), F(1, 2), F(1))
    down = build_model(X2, 2, NEAREST, tie=TiePolicy.HALF_DOWN)
    assert down.coeffs == (F(0), F(0), F(1))
    away = build_model(X2, 2, NEAREST)  # default tie
    assert away.coeffs == (F(0), F(1, 2), F(1))


def test_integer_variant_weighted_coeffs_are_integers():
    for kind in (FLOOR, NEAREST):
        for n in (3, 7, 20):
            m = build_model(X3, n, kind)
            for k, c in enumerate(m.coeffs):
                assert (c * binomial(n, k)).denominator == 1


def test_evaluate_exact_frozen():
    m = build_model(X2, 2, CLASSIC)
    assert evaluate_exact(m, F(1, 2)) == F(3, 8)
    mf = build_model(X2, 2, FLOOR)
    assert evaluate_exact(mf, F(1, 2)) == F(1, 4)


def test_evaluate_scalar_and_array():
    m = build_model(X2, 4, CLASSIC)
    v = evaluate(m, 0.5)
    assert isinstance(v, float)
    arr = evaluate(m, np.array([0.0, 0.5, 1.0]))
    assert arr.shape == (3,)
    assert arr[0] == 0.0 and arr[2] == 1.0
    with pytest.raises(ValueError):
        evaluate(m, 1.5)


def test_endpoint_interpolation_all_kinds():
    """Integer endpoint values survive rounding, so every model interpolates."""
    for entry in corpus.entries():
        f = entry.spec
        for kind in (CLASSIC, FLOOR, NEAREST):
            m = build_model(f, 7, kind)
            assert evaluate_exact(m, F(0)) == f.eval_exact(F(0))
            assert evaluate_exact(m, F(1)) == f.eval_exact(F(1))


def test_integer_linear_is_fixed_point_of_all_kinds():
    f = builtin("integer_linear(3,2)")
    for n in range(1, 17):
        samples = tuple(f.eval_exact(F(k, n)) for k in range(n + 1))
        for kind in (CLASSIC, FLOOR, NEAREST):
            m = build_model(f, n, kind)
            assert m.coeffs == samples
            assert evaluate_exact(m, F(1, 3)) == F(3)


def test_float_exact_agreement():
    # float path within 2^-40 of the exact rational value: 1000 points total
    rng = random.Random(20260814)
    cases = [
        ("monomial(3)", 25, 400),
        ("poly_boundary_flat(2)", 60, 300),
        ("monomial(2)", 200, 300),
    ]
    for name, n, npts in cases:
        m = build_model(builtin(name), n, NEAREST)
        for _ in range(npts):
            x = F(rng.randrange(0, 1025), 1024)
            got = evaluate(m, float(x))
            want = float(evaluate_exact(m, x))
            assert abs(got - want) <= 2.0**-40


def test_kantorovich_gap_bounds_subsample():
    for name in ("monomial(3)", "abs_shift"):
        f = builtin(name)
        for n in (3, 17, 64):
            assert proximity_gap(f, n, FLOOR).value <= (1.0 / n) * (1 + 1e-12)
            assert proximity_gap(f, n, NEAREST).value <= (0.5 / n) * (1 + 1e-12)


def test_kantorovich_gap_bounds_every_n_up_to_200():
    # dense-n version on one representative entry (the power-of-two sweep over
    # the whole corpus lives in the acceptance suite)
    from bernint import GridConfig

    f = builtin("monomial(3)")
    grid = GridConfig(points=513, refine=20)
    for n in range(1, 201):
        assert proximity_gap(f, n, FLOOR, grid=grid).value <= (1.0 / n) * (1 + 1e-12)
        assert proximity_gap(f, n, NEAREST, grid=grid).value <= (0.5 / n) * (1 + 1e-12)


def test_proximity_gap_frozen_x2_n2():
    # floor drops the middle weighted coefficient 1/2 -> 0: gap = x(1-x)/2
    est = proximity_gap(X2, 2, FLOOR)
    assert abs(est.value - 0.125) <= 1e-12
    # nearest under HALF_UP rounds 1/2 -> 1: gap = x(1-x)/2 again, sup 1/8
    est2 = proximity_gap(X2, 2, NEAREST, tie=TiePolicy.HALF_UP)
    assert abs(est2.value - 0.125) <= 1e-12


def test_proximity_gap_exact_frozen():
    pairs = proximity_gap_exact(X2, 2, FLOOR, [F(0), F(1, 2), F(1)])
    assert pairs[0] == (F(0), F(0))
    assert pairs[1] == (F(-1, 8), F(-1, 8))  # floor model sits below the classic
    assert pairs[2] == (F(0), F(0))


def test_proximity_gap_exact_brackets_irrational_nodes():
    f = builtin("holder_interior(1/2)")
    for n in (4, 9):
        for lo, hi in proximity_gap_exact(f, n, NEAREST, [F(1, 3), F(2, 5)]):
            assert lo <= hi
            assert max(abs(lo), abs(hi)) <= F(1, 2 * n) + (hi - lo)


def test_non_integer_endpoint_rejected():
    bad = corpus._polynomial_spec("half_shift", [F(1, 2), F(1)])
    with pytest.raises(HypothesisViolation):
        proximity_gap(bad, 4, FLOOR)


# ---------------------------------------------------------------------------
# finite differences and derivative models


def test_finite_difference_frozen():
    dt = finite_difference([0, 1, 4], 2)
    assert tuple(dt.values) == (2,)
    assert dt.order == 2 and dt.step == "index"
    mf = build_model(X2, 2, FLOOR)
    assert tuple(finite_difference(mf.coeffs, 1).values) == (F(0), F(1))


def test_finite_difference_matches_iterated_differences():
    rng = random.Random(7)
    vals = [F(rng.randrange(-50, 50), rng.randrange(1, 9)) for _ in range(12)]
    work = list(vals)
    for s in range(1, 5):
        work = [b - a for a, b in zip(work, work[1:])]
        assert tuple(finite_difference(vals, s).values) == tuple(work)


def test_derivative_model_frozen_x2():
    m = build_model(X2, 2, CLASSIC)
    dm = derivative_model(m, 1)
    assert dm.coeffs == (F(1, 2), F(3, 2))
    assert dm.n == 1 and dm.derivative_order == 1


def test_derivative_model_s_equals_n():
    # third derivative of the degree-3 model is the constant 3! * Delta^3
    m = build_model(X3, 3, CLASSIC)
    dm = derivative_model(m, 3)
    assert dm.coeffs == (F(4, 3),)
    assert dm.n == 0


def test_derivative_model_degenerate():
    m = build_model(X2, 2, CLASSIC)
    with pytest.raises(ValueError):
        derivative_model(m, 3)
    dm = derivative_model(m, 3, allow_degenerate=True)
    assert evaluate_exact(dm, F(1, 3)) == 0


def test_derivative_model_matches_scaled_samples():
    """Coefficient k of the s-th derivative model equals
    n!/(n-s)! * Delta^s f(k/n) for the classic operator."""
    f = builtin("monomial(5)")
    for n, s in [(8, 1), (8, 2), (12, 3)]:
        m = build_model(f, n, CLASSIC)
        dm = derivative_model(m, s)
        scale = 1
        for i in range(s):
            scale *= n - i
        samples = [f.eval_exact(F(k, n)) for k in range(n + 1)]
        for _ in range(s):
            samples = [b - a for a, b in zip(samples, samples[1:])]
        assert dm.coeffs == tuple(scale * v for v in samples)


def test_derivative_model_endpoint_values_are_coeffs():
    m = build_model(X2, 16, NEAREST)
    dm = derivative_model(m, 1)
    assert evaluate_exact(dm, F(0)) == dm.coeffs[0]
    assert evaluate_exact(dm, F(1)) == dm.coeffs[-1]
