"""Exact integer and rational arithmetic for integer-coefficient Bernstein forms.

Python's int is already an arbitrary-precision integer and fractions.Fraction
already keeps rationals reduced with positive denominators, so those two types
are used directly throughout the package.  This module adds the pieces they
lack:

* cached binomial rows (multiplicative recurrence, exact),
* floor and nearest-integer rounding with an explicit tie policy,
* integer q-th roots and exact/certified rational powers u**(p/q),
* interval-guarded rounding: round a value known only through an enclosure
  [v-eps, v+eps], escalating the working precision until the answer is
  provably unambiguous.

The guarded rounding is what lets non-polynomial corpus functions (whose
values at the Bernstein nodes are usually irrational) be rounded *correctly*,
not merely plausibly: floor and nearest-integer are monotone step functions,
so if both endpoints of an enclosure round to the same integer, the true
value does too.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable

_HALF = Fraction(1, 2)

DEFAULT_START_BITS = 128
DEFAULT_MAX_BITS = 4096


class TiePolicy(enum.Enum):
    """How nearest-integer rounding resolves exact half-integers."""

    HALF_UP = "half_up"
    HALF_DOWN = "half_down"
    HALF_AWAY_FROM_ZERO = "half_away"
    HALF_TO_EVEN = "half_even"


DEFAULT_TIE = TiePolicy.HALF_AWAY_FROM_ZERO


class PrecisionInsufficient(ArithmeticError):
    """An enclosure was too wide to round unambiguously; retry with more bits."""


class PrecisionExhausted(ArithmeticError):
    """Escalation hit the precision cap without resolving the rounding."""


@lru_cache(maxsize=None)
def binomial_row(n: int) -> tuple[int, ...]:
    """Row n of Pascal's triangle, (C(n,0), ..., C(n,n)), computed exactly.

    Uses the multiplicative recurrence C(n,k) = C(n,k-1)*(n-k+1)/k, in which
    every division is exact.
    """
    if n < 0:
        raise ValueError("binomial_row: n must be >= 0")
    row = [1]
    for k in range(1, n + 1):
        row.append(row[-1] * (n - k + 1) // k)
    return tuple(row)


def binomial(n: int, k: int) -> int:
    """C(n, k) for 0 <= k <= n."""
    if not 0 <= k <= n:
        raise ValueError(f"binomial: need 0 <= k <= n, got n={n}, k={k}")
    return binomial_row(n)[k]


def floor_int(q) -> int:
    """Largest integer <= q."""
    q = Fraction(q)
    return q.numerator // q.denominator


def nearest_int(q, policy: TiePolicy = DEFAULT_TIE) -> int:
    """Integer nearest to q; exact halves resolved by ``policy``."""
    q = Fraction(q)
    lo = q.numerator // q.denominator
    frac = q - lo
    if frac < _HALF:
        return lo
    if frac > _HALF:
        return lo + 1
    if policy is TiePolicy.HALF_UP:
        return lo + 1
    if policy is TiePolicy.HALF_DOWN:
        return lo
    if policy is TiePolicy.HALF_AWAY_FROM_ZERO:
        return lo + 1 if q > 0 else lo
    # HALF_TO_EVEN
    return lo if lo % 2 == 0 else lo + 1


def guarded_round(value, radius, mode: str, policy: TiePolicy = DEFAULT_TIE) -> int:
    """Round a value known only to lie in [value-radius, value+radius].

    mode is "floor" or "nearest".  Both roundings are monotone step
    functions, so endpoint agreement certifies the result; disagreement
    raises PrecisionInsufficient.
    """
    value = Fraction(value)
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError("guarded_round: radius must be >= 0")
    lo, hi = value - radius, value + radius
    if mode == "floor":
        a, b = floor_int(lo), floor_int(hi)
    elif mode == "nearest":
        a, b = nearest_int(lo, policy), nearest_int(hi, policy)
    else:
        raise ValueError(f"guarded_round: unknown mode {mode!r}")
    if a != b:
        raise PrecisionInsufficient(
            f"enclosure of width {float(2 * radius):.3g} straddles a {mode} boundary"
        )
    return a


def round_with_escalation(
    enclose: Callable[[int], tuple[Fraction, Fraction]],
    mode: str,
    policy: TiePolicy = DEFAULT_TIE,
    start_bits: int = DEFAULT_START_BITS,
    max_bits: int = DEFAULT_MAX_BITS,
) -> int:
    """Drive guarded_round with ever-tighter enclosures until it resolves.

    ``enclose(bits)`` must return a rational interval (lo, hi) containing the
    true value, with width shrinking as ``bits`` grows.  Precision doubles
    from start_bits up to max_bits; if the rounding is still ambiguous at the
    cap (e.g. the true value sits exactly on a boundary and the oracle cannot
    say so), PrecisionExhausted is raised.
    """
    bits = start_bits
    while True:
        lo, hi = enclose(bits)
        if lo > hi:
            raise ValueError("round_with_escalation: enclosure has lo > hi")
        mid = (lo + hi) / 2
        try:
            return guarded_round(mid, (hi - lo) / 2, mode, policy)
        except PrecisionInsufficient:
            if bits >= max_bits:
                raise PrecisionExhausted(
                    f"rounding still ambiguous at {bits} bits "
                    f"(enclosure [{float(lo)!r}, {float(hi)!r}])"
                ) from None
            bits = min(2 * bits, max_bits)


def iroot(a: int, q: int) -> tuple[int, bool]:
    """Integer q-th root: largest r with r**q <= a, plus exactness flag.

    Newton iteration on integers; exact for any size of a.
    """
    if a < 0:
        raise ValueError("iroot: a must be >= 0")
    if q < 1:
        raise ValueError("iroot: q must be >= 1")
    if a in (0, 1) or q == 1:
        return a, True
    # initial guess from bit length, then integer Newton steps
    r = 1 << -(-a.bit_length() // q)
    while True:
        nr = ((q - 1) * r + a // r ** (q - 1)) // q
        if nr >= r:
            break
        r = nr
    while r ** q > a:
        r -= 1
    while (r + 1) ** q <= a:
        r += 1
    return r, r ** q == a


def rational_pow_exact(u, p: int, q: int) -> Fraction | None:
    """u**(p/q) as an exact Fraction, or None when the value is irrational.

    Requires u >= 0 and q >= 1 in lowest terms p/q.  Rational iff both the
    numerator and denominator of u**p are perfect q-th powers.
    """
    u = Fraction(u)
    if u < 0:
        raise ValueError("rational_pow_exact: base must be >= 0")
    if q < 1:
        raise ValueError("rational_pow_exact: q must be >= 1")
    if u == 0:
        if p <= 0:
            raise ZeroDivisionError("0 raised to a non-positive power")
        return Fraction(0)
    v = u ** p  # exact Fraction power, p may be negative
    rn, okn = iroot(v.numerator, q)
    if not okn:
        return None
    rd, okd = iroot(v.denominator, q)
    if not okd:
        return None
    return Fraction(rn, rd)


def rational_pow_bounds(u, p: int, q: int, bits: int) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of u**(p/q) with width <= 2**-bits scale.

    Writes u**p = A/B (A, B positive ints) and brackets (A/B)**(1/q) between
    s/(2**bits) and (s+1)/(2**bits) scaled by B, where s is the integer q-th
    root of A * B**(q-1) * 2**(q*bits).  Every step is integer arithmetic, so
    the enclosure is rigorous, and it collapses to a point when the value is
    an exact dyadic-scaled rational.
    """
    u = Fraction(u)
    if u < 0:
        raise ValueError("rational_pow_bounds: base must be >= 0")
    if q < 1:
        raise ValueError("rational_pow_bounds: q must be >= 1")
    if bits < 1:
        raise ValueError("rational_pow_bounds: bits must be >= 1")
    if u == 0:
        if p <= 0:
            raise ZeroDivisionError("0 raised to a non-positive power")
        return Fraction(0), Fraction(0)
    v = u ** p
    a, b = v.numerator, v.denominator
    # value = (a/b)**(1/q) = (a * b**(q-1))**(1/q) / b
    big = a * b ** (q - 1) * (1 << (q * bits))
    s, exactflag = iroot(big, q)
    den = b << bits
    lo = Fraction(s, den)
    hi = lo if exactflag else Fraction(s + 1, den)
    return lo, hi


__all__ = [
    "TiePolicy",
    "DEFAULT_TIE",
    "DEFAULT_START_BITS",
    "DEFAULT_MAX_BITS",
    "PrecisionInsufficient",
    "PrecisionExhausted",
    "binomial_row",
    "binomial",
    "floor_int",
    "nearest_int",
    "guarded_round",
    "round_with_escalation",
    "iroot",
    "rational_pow_exact",
    "rational_pow_bounds",
]
