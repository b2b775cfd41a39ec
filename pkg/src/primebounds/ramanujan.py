"""Stepping verification of the prime-counting inequality pi(x)^2 < (e x/log x) pi(x/e).

With z = log x the inequality follows, wherever |pi - li| < a sqrt(x) log x
is known, from f(z) - g(z) > 0 for

    f(z) = e^{z+1}/z * li(e^{z-1}),
    g(z) = a (z-1)/z * e^{(3z+1)/2} + (li(e^z) + a z e^{z/2})^2.

Both are increasing for z > 1, so f(z0) > g(z0 + delta) proves f > g on the
whole step (z0, z0 + delta): marching a delta-grid across an interval proves
the inequality there.  A regime ladder switches (a, delta) as z grows, each
rung staying below the height where its constant a is valid.

Everything is computed in extended precision straight from z; x = e^z is
never materialized as an integer.  The two leading terms of f and g agree
to relative order ~1/z, so margins are small relative to f; the default
precision keeps >= 15 trustworthy digits of margin with a wide cushion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from mpmath import mp, mpf

from .hiprec import ei, get_default_precision, working_precision
from . import published

__all__ = [
    "Regime",
    "StepReport",
    "CounterexampleVerdict",
    "f",
    "g",
    "step_verify",
    "regime_schedule",
    "counterexample_check",
    "counterexample_check_direct",
    "MIN_STEP_PRECISION",
]

MIN_STEP_PRECISION = 192
DELTA_FLOOR = 1e-9

# 1/(8 pi) rounded up in the last decimal: the sharp bound constant must be
# covered from above when g is evaluated with a plain float
A_SHARP_UP = 0.03978873577297384


class ParameterError(ValueError):
    pass


def _step_precision(prec: int | None) -> int:
    return max(MIN_STEP_PRECISION, get_default_precision() if prec is None else int(prec))


def f(z, prec: int | None = None) -> mpf:
    """f(z) = e^{z+1}/z * li(e^{z-1}) for z > 1."""
    prec = _step_precision(prec)
    with working_precision(prec):
        z = mpf(z)
        if not z > 1:
            raise ParameterError("f requires z > 1 (li(e^{z-1}) hits the singularity)")
        return +(mp.exp(z + 1) / z * ei(z - 1, prec=prec))


def g(z, a, prec: int | None = None) -> mpf:
    """g(z) = a(z-1)/z e^{(3z+1)/2} + (li(e^z) + a z e^{z/2})^2 for z > 1, a > 0."""
    prec = _step_precision(prec)
    with working_precision(prec):
        z = mpf(z)
        a = mpf(a)
        if not (z > 1 and a > 0):
            raise ParameterError("g requires z > 1 and a > 0")
        return +(
            a * (z - 1) / z * mp.exp((3 * z + 1) / 2)
            + (ei(z, prec=prec) + a * z * mp.exp(z / 2)) ** 2
        )


@dataclass(frozen=True)
class Regime:
    """One rung of the verification ladder.

    ``floor_valid`` is the largest x where the constant a's bound is known,
    so the rung may not extend past log(floor_valid).
    """

    z_lo: float
    z_hi: float
    a: float
    delta: float
    floor_valid: float

    def __post_init__(self):
        if not (self.z_lo >= 43):
            raise ParameterError("rungs start at z >= 43; below is covered elsewhere")
        if not (self.z_hi > self.z_lo and self.delta > 0 and self.a > 0):
            raise ParameterError("regime needs z_hi > z_lo, delta > 0, a > 0")
        if math.exp(self.z_hi) > self.floor_valid * (1 + 1e-9):
            raise ParameterError(
                f"rung top e^{self.z_hi} exceeds the bound's validity ceiling {self.floor_valid:g}"
            )

    @property
    def n_steps(self) -> int:
        return int(math.ceil((self.z_hi - self.z_lo) / self.delta))


@dataclass(frozen=True)
class StepReport:
    regime: Regime
    steps_checked: int
    min_margin: mpf
    min_margin_at: float
    first_failure: Optional[float]
    precision_bits: int

    @property
    def passed(self) -> bool:
        return self.first_failure is None and self.min_margin > 0

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "z_lo": self.regime.z_lo,
            "z_hi": self.regime.z_hi,
            "a": self.regime.a,
            "delta": self.regime.delta,
            "steps_checked": self.steps_checked,
            "min_margin": float(self.min_margin),
            "min_margin_at": self.min_margin_at,
            "first_failure": self.first_failure,
            "precision_bits": self.precision_bits,
            "passed": self.passed,
        }


def step_verify(
    regime: Regime,
    max_steps: Optional[int] = None,
    from_end: bool = False,
    prec: int | None = None,
) -> StepReport:
    """March the delta-grid checking f(z_k) > g(z_k + delta) at every step.

    ``max_steps`` restricts to a window at the start (or, with ``from_end``,
    the tail) of the rung -- full rungs run for days at the published deltas
    and belong to the extended profile.  A nonpositive margin is recorded in
    the report, not raised.

    The exponentials advance multiplicatively (one multiply per step); over
    the largest windows used here the accumulated rounding stays ~50 decimal
    orders below the margins.
    """
    prec = _step_precision(prec)
    total = regime.n_steps
    n = total if max_steps is None else min(int(max_steps), total)
    with working_precision(prec):
        d = mpf(regime.delta)
        a = mpf(regime.a)
        k0 = total - n if from_end else 0
        z = mpf(regime.z_lo) + k0 * d
        z_top = mpf(regime.z_hi)
        exp_f = mp.exp(z + 1)          # e^{z_k + 1}
        exp_gh = mp.exp((z + d) / 2)   # e^{(z_k + delta)/2}
        step_f = mp.exp(d)
        step_gh = mp.exp(d / 2)
        sqrt_e = mp.sqrt(mp.e)
        min_margin = None
        min_at = None
        first_failure = None
        checked = 0
        for k in range(k0, k0 + n):
            y = z + d
            if y > z_top:
                y = z_top  # final step lands exactly on the rung top
            fz = exp_f / z * ei(z - 1, prec=prec)
            gz = a * (y - 1) / y * exp_gh ** 3 * sqrt_e + (
                ei(y, prec=prec) + a * y * exp_gh
            ) ** 2
            margin = fz - gz
            checked += 1
            if min_margin is None or margin < min_margin:
                min_margin = margin
                min_at = float(z)
            if margin <= 0 and first_failure is None:
                first_failure = float(z)
            z += d
            exp_f *= step_f
            exp_gh *= step_gh
        return StepReport(
            regime=regime,
            steps_checked=checked,
            min_margin=+min_margin if min_margin is not None else mpf(0),
            min_margin_at=min_at if min_at is not None else regime.z_lo,
            first_failure=first_failure,
            precision_bits=prec,
        )


def regime_schedule(table2_rows=None, strong_x_max: float | None = None) -> list:
    """The ladder covering z in (43, 103].

    First rung under the sharp constant 1/8pi up to z = 59, then a = 1, then
    one rung per weak-table row, each ending at floor(log(row x_max)).  The
    published deltas cover the first two rungs; later rungs scale delta by
    sqrt(a_prev/a_next) with a 1e-9 floor -- an engineering reconstruction
    (margins shrink as a grows), validated by the margin-scaling checks.
    """
    if table2_rows is None:
        table2_rows = published.TABLE2
    if strong_x_max is None:
        strong_x_max = published.STRONG_X_MAX
    rows = sorted((float(a), float(K), float(xm)) for a, K, xm in table2_rows)
    if not rows or rows[0][0] != 1.0:
        raise ParameterError("schedule needs the a = 1 row to anchor the second rung")
    rungs = [Regime(43.0, 59.0, A_SHARP_UP, 5e-8, strong_x_max)]
    a_prev, delta_prev = 1.0, 2.5e-8
    z_prev = 59.0
    for a, _, x_max in rows:
        z_hi = float(math.floor(math.log(x_max)))
        if a == 1.0:
            delta = 2.5e-8
        else:
            delta = max(delta_prev * math.sqrt(a_prev / a), DELTA_FLOOR)
        if z_hi <= z_prev:
            continue
        rungs.append(Regime(z_prev, z_hi, a, delta, x_max))
        z_prev, a_prev, delta_prev = z_hi, a, delta
    return rungs


@dataclass(frozen=True)
class CounterexampleVerdict:
    x: int
    holds: Optional[bool]     # None when skipped
    lhs: Optional[mpf]        # pi(x)^2
    rhs: Optional[mpf]        # (e x / log x) * pi(x/e)
    skipped_reason: str = ""

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "holds": self.holds,
            "lhs": None if self.lhs is None else float(self.lhs),
            "rhs": None if self.rhs is None else float(self.rhs),
            "skipped_reason": self.skipped_reason,
        }


def _verdict_from_counts(x: int, pi_x: int, pi_xe: int, prec: int) -> CounterexampleVerdict:
    with working_precision(prec):
        xm = mpf(x)
        lhs = mpf(pi_x) ** 2
        rhs = mp.e * xm / mp.log(xm) * pi_xe
        return CounterexampleVerdict(x=x, holds=bool(lhs < rhs), lhs=+lhs, rhs=+rhs)


def counterexample_check(x: int, tables, prec: int | None = None) -> CounterexampleVerdict:
    """Evaluate pi(x)^2 < (e x/log x) pi(x/e) exactly from prime tables.

    The inequality concerns the plain (unnormalized) counting function.
    Skips (with a reason) when the tables do not reach x; the interesting
    neighborhood x ~ 3.84e10 needs the count-only path below.
    """
    import numpy as np

    prec = _step_precision(prec)
    x = int(x)
    if tables is None or tables.limit < x:
        have = 0 if tables is None else tables.limit
        return CounterexampleVerdict(
            x=x, holds=None, lhs=None, rhs=None,
            skipped_reason=f"tables reach {have}, need {x}; use the count-only direct check",
        )
    with working_precision(prec):
        primes = tables.primes
        pi_x = int(np.searchsorted(primes, x, side="right"))
        xe_floor = int(mp.floor(mpf(x) / mp.e))  # x/e is irrational, so flooring is safe
        pi_xe = int(np.searchsorted(primes, xe_floor, side="right"))
    return _verdict_from_counts(x, pi_x, pi_xe, prec)


def counterexample_check_direct(
    x: int, segment_size: int = 1 << 24, prec: int | None = None, progress=None
) -> CounterexampleVerdict:
    """Count-only check via segmented sieving; minutes of work near 3.84e10."""
    from .primes import segmented_prime_count

    prec = _step_precision(prec)
    x = int(x)
    with working_precision(prec):
        xe_floor = int(mp.floor(mpf(x) / mp.e))
    pi_xe = segmented_prime_count(xe_floor, segment_size=segment_size, progress=progress)
    pi_x = segmented_prime_count(x, segment_size=segment_size, progress=progress)
    return _verdict_from_counts(x, pi_x, pi_xe, prec)
