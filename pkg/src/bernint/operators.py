"""Classical and integer-coefficient Bernstein models.

A model of degree n is a coefficient sequence (c_0, ..., c_n) in the
Bernstein basis p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k):

* Classic:    c_k = f(k/n)
* FloorInt:   c_k = floor(f(k/n) C(n,k)) / C(n,k)
* NearestInt: c_k = nearest(f(k/n) C(n,k)) / C(n,k)   (tie policy applies)

so the integer kinds are exactly the polynomials with integer coefficients
in the scaled basis.  Evaluation has two paths: a stable float path using
the de Casteljau convex-combination recurrence (compiled kernel when
available) and an exact rational path for oracle work.  Derivatives of a
model are again models, one degree lower per order, with coefficients
n!/(n-s)! * (s-th forward difference of the coefficient sequence at unit
index step); for the classic kind this is the same thing as the usual
divided-difference formula with real step 1/n, the prefactor absorbing the
scaling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from bernint._kernels import decasteljau_batch
from bernint.exact import (
    DEFAULT_TIE,
    PrecisionExhausted,
    TiePolicy,
    binomial_row,
    floor_int,
    nearest_int,
    round_with_escalation,
)


class HypothesisViolation(Exception):
    """Input breaks a theorem hypothesis (e.g. non-integer endpoint values)."""


class OperatorKind(enum.Enum):
    CLASSIC = "classic"
    FLOOR_INT = "floor"
    NEAREST_INT = "nearest"


@dataclass(frozen=True)
class BernsteinModel:
    """Degree-n polynomial in Bernstein form with exact rational coefficients.

    ``tie`` records the tie policy for NearestInt models (None otherwise).
    ``coeffs_exact`` is False only when a Classic model of a function without
    exact rational values stores certified high-precision midpoints instead.
    ``derivative_order`` counts how many times derivative_model was applied.
    """

    kind: OperatorKind
    n: int
    coeffs: tuple
    tie: Optional[TiePolicy] = None
    coeffs_exact: bool = True
    derivative_order: int = 0

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError(
                f"coefficient count {len(self.coeffs)} != degree {self.n} + 1"
            )

    @cached_property
    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=np.float64)


@dataclass(frozen=True)
class DiffTable:
    """Forward finite differences of a sequence.

    ``step`` describes the abscissa spacing the differences refer to: the
    string "index" for unit index step on coefficient sequences, or an exact
    Fraction (e.g. 1/n) for real-step differences of function samples.
    """

    order: int
    step: Union[str, Fraction]
    values: tuple


def build_model(
    f,
    n: int,
    kind: OperatorKind,
    tie: TiePolicy = DEFAULT_TIE,
    approx_bits: int = 192,
) -> BernsteinModel:
    """Construct the degree-n model of corpus function ``f``.

    Integer kinds round f(k/n)*C(n,k) exactly: rational values directly,
    irrational ones through certified enclosures with escalating precision
    (hard PrecisionExhausted naming the node if the cap is hit).  A Classic
    model of an irrational-valued f stores approx_bits-wide midpoints and is
    flagged coeffs_exact=False.
    """
    if n < 1:
        raise ValueError("build_model: n must be >= 1")
    if kind is OperatorKind.NEAREST_INT:
        mode = "nearest"
    elif kind is OperatorKind.FLOOR_INT:
        mode = "floor"
    else:
        mode = None
    row = binomial_row(n)
    coeffs = []
    exact = True
    for k in range(n + 1):
        node = Fraction(k, n)
        v = f.eval_exact(node)
        if mode is None:
            if v is not None:
                coeffs.append(v)
            else:
                lo, hi = f.eval_bounds(node, approx_bits)
                coeffs.append((lo + hi) / 2)
                exact = False
            continue
        c = row[k]
        if v is not None:
            scaled = v * c
            m = floor_int(scaled) if mode == "floor" else nearest_int(scaled, tie)
        else:

            def enclose(bits, _node=node, _c=c):
                lo, hi = f.eval_bounds(_node, bits)
                return lo * _c, hi * _c

            try:
                m = round_with_escalation(enclose, mode, tie)
            except PrecisionExhausted as e:
                raise PrecisionExhausted(
                    f"build_model({getattr(f, 'name', f)!r}, n={n}): "
                    f"cannot round coefficient at node k={k}: {e}"
                ) from None
        coeffs.append(Fraction(m, c))
    return BernsteinModel(
        kind=kind,
        n=n,
        coeffs=tuple(coeffs),
        tie=tie if kind is OperatorKind.NEAREST_INT else None,
        coeffs_exact=exact,
    )


def evaluate(model: BernsteinModel, x):
    """Stable float evaluation at a point or array of points in [0, 1]."""
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise ValueError("evaluate: points must lie in [0, 1]")
    out = decasteljau_batch(model.float_coeffs, np.ascontiguousarray(xs))
    return float(out[0]) if scalar else out


def evaluate_exact(model: BernsteinModel, x) -> Fraction:
    """Exact rational evaluation at rational x; no rounding anywhere."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("evaluate_exact: point must lie in [0, 1]")
    n = model.n
    a, b = x.numerator, x.denominator
    c = b - a
    row = binomial_row(n)
    pa = [1] * (n + 1)
    pc = [1] * (n + 1)
    for i in range(1, n + 1):
        pa[i] = pa[i - 1] * a
        pc[i] = pc[i - 1] * c
    acc = Fraction(0)
    for k, ck in enumerate(model.coeffs):
        w = row[k] * pa[k] * pc[n - k]
        if w:
            acc += ck * w
    return acc / b ** n


def finite_difference(values: Sequence, s: int, step: Union[str, Fraction] = "index") -> DiffTable:
    """Forward differences: entry k is sum_i (-1)^i C(s,i) values[k+s-i]."""
    if s < 1:
        raise ValueError("finite_difference: order must be >= 1")
    vals = [Fraction(v) for v in values]
    if len(vals) < s + 1:
        raise ValueError(
            f"finite_difference: need at least {s + 1} values, got {len(vals)}"
        )
    srow = binomial_row(s)
    out = []
    for k in range(len(vals) - s):
        acc = Fraction(0)
        for i in range(s + 1):
            term = srow[i] * vals[k + s - i]
            acc = acc + term if i % 2 == 0 else acc - term
        out.append(acc)
    return DiffTable(order=s, step=step, values=tuple(out))


def derivative_model(
    model: BernsteinModel, s: int, allow_degenerate: bool = False
) -> BernsteinModel:
    """The s-th derivative as a degree n-s Bernstein model.

    Coefficient k equals n!/(n-s)! * (s-th unit-index forward difference of
    the model coefficients at k).  s > n is an error unless allow_degenerate,
    in which case the identically-zero model is returned (harness use).
    """
    if s < 1:
        raise ValueError("derivative_model: order must be >= 1")
    if s > model.n:
        if not allow_degenerate:
            raise ValueError(
                f"derivative_model: order {s} exceeds degree {model.n}"
            )
        return BernsteinModel(
            kind=model.kind,
            n=0,
            coeffs=(Fraction(0),),
            tie=model.tie,
            coeffs_exact=model.coeffs_exact,
            derivative_order=model.derivative_order + s,
        )
    diffs = finite_difference(model.coeffs, s).values
    scale = 1
    for i in range(s):
        scale *= model.n - i
    return BernsteinModel(
        kind=model.kind,
        n=model.n - s,
        coeffs=tuple(d * scale for d in diffs),
        tie=model.tie,
        coeffs_exact=model.coeffs_exact,
        derivative_order=model.derivative_order + s,
    )


def proximity_gap(
    f,
    n: int,
    kind: OperatorKind,
    grid=None,
    tie: TiePolicy = DEFAULT_TIE,
):
    """Sup-norm estimate of |integer-kind model - classic model| on [0, 1].

    Requires integer endpoint values f(0), f(1) (hypothesis of the 1/n and
    1/(2n) proximity bounds).  Returns the analysis.SupEstimate.
    """
    if kind is OperatorKind.CLASSIC:
        raise ValueError("proximity_gap: kind must be FloorInt or NearestInt")
    for end in (Fraction(0), Fraction(1)):
        v = f.eval_exact(end)
        if v is None:
            if not getattr(f, "integer_endpoints", False):
                raise HypothesisViolation(
                    f"{getattr(f, 'name', f)}: endpoint value at {end} not certified integer"
                )
        elif v.denominator != 1:
            raise HypothesisViolation(
                f"{getattr(f, 'name', f)}: f({end}) = {v} is not an integer"
            )
    classic = build_model(f, n, OperatorKind.CLASSIC)
    other = build_model(f, n, kind, tie)
    gap = BernsteinModel(
        kind=kind,
        n=n,
        coeffs=tuple(a - b for a, b in zip(other.coeffs, classic.coeffs)),
        tie=other.tie,
        coeffs_exact=classic.coeffs_exact,
    )
    from bernint.analysis import DEFAULT_GRID, sup_norm

    return sup_norm(lambda xs: evaluate(gap, xs), (0.0, 1.0),
                    DEFAULT_GRID if grid is None else grid)


def proximity_gap_exact(
    f,
    n: int,
    kind: OperatorKind,
    xs: Sequence,
    tie: TiePolicy = DEFAULT_TIE,
    bits: int = 192,
):
    """Certified rational enclosures of (integer model - B_n f)(x) at each x.

    Returns a list of Fraction pairs (lo, hi) with lo <= gap(x) <= hi; the
    pair collapses to a point for functions with exact rational node values.
    The basis weights are nonnegative, so interval endpoints are just the
    sums against the per-node coefficient enclosures — fully rigorous, which
    is what lets tests verify the 1/n and 1/(2n) bounds without floats.
    """
    if kind is OperatorKind.CLASSIC:
        raise ValueError("proximity_gap_exact: kind must be FloorInt or NearestInt")
    other = build_model(f, n, kind, tie)
    row = binomial_row(n)
    d_lo = []
    d_hi = []
    for k in range(n + 1):
        node = Fraction(k, n)
        v = f.eval_exact(node)
        if v is not None:
            vlo = vhi = v
        else:
            vlo, vhi = f.eval_bounds(node, bits)
        d_lo.append(other.coeffs[k] - vhi)
        d_hi.append(other.coeffs[k] - vlo)
    out = []
    for x in xs:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("proximity_gap_exact: points must lie in [0, 1]")
        a, b = x.numerator, x.denominator
        c = b - a
        pa = [1] * (n + 1)
        pc = [1] * (n + 1)
        for i in range(1, n + 1):
            pa[i] = pa[i - 1] * a
            pc[i] = pc[i - 1] * c
        glo = Fraction(0)
        ghi = Fraction(0)
        for k in range(n + 1):
            w = row[k] * pa[k] * pc[n - k]
            if w:
                glo += d_lo[k] * w
                ghi += d_hi[k] * w
        den = Fraction(1, b ** n)
        out.append((glo * den, ghi * den))
    return out


__all__ = [
    "HypothesisViolation",
    "OperatorKind",
    "BernsteinModel",
    "DiffTable",
    "build_model",
    "evaluate",
    "evaluate_exact",
    "finite_difference",
    "derivative_model",
    "proximity_gap",
    "proximity_gap_exact",
]
