"""Signed adaptive Simpson integration of expression functions.

Each panel is judged by a Richardson-style local estimate: the difference
between one Simpson step and two half-width steps, divided by 15.  A panel
is accepted when that estimate fits the share of the tolerance proportional
to the panel's width; otherwise the panel is bisected.  Accepted panel
values carry the extrapolation correction and are summed in ascending
interval order with math.fsum, so results are deterministic.

Float64 caveat: a panel is also accepted once its estimate sinks to the
rounding noise of the panel sum itself (a few eps times the panel
magnitude).  For tolerance requests below that noise the reported
error_bound may exceed the request by a machine-precision term
proportional to the integral of |f|; above it the bound honours the
request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, QuadratureError
from .exprlang import FunctionSpec, evaluate

__all__ = ["IntegralResult", "integrate"]

_EPS = math.ulp(1.0)
_NOISE_FACTOR = 8.0 * _EPS

DEFAULT_TOL = 1e-10
MAX_PANELS = 10**6


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_bound: float
    subdivisions: int


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def integrate(
    f: FunctionSpec,
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    max_panels: int = MAX_PANELS,
) -> IntegralResult:
    """Signed integral of f from a to b with an absolute tolerance.

    Orientation follows the limits: integrate(f, a, b) == -integrate(f, b, a),
    and a == b gives exactly (0.0, 0.0).  Evaluation errors inside the
    interval propagate; a panel that cannot reach its tolerance share within
    max_panels raises QuadratureError.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InputError(f"integration limits must be finite, got [{a!r}, {b!r}]")
    if not (a > 0.0 and b > 0.0):
        raise InputError(f"integration limits must be positive, got [{a!r}, {b!r}]")
    if not (tol > 0.0):
        raise InputError(f"tolerance must be positive, got {tol!r}")
    if a == b:
        return IntegralResult(0.0, 0.0, 0)

    lo, hi = (a, b) if a < b else (b, a)
    span = hi - lo

    flo = evaluate(f, lo)
    fmid = evaluate(f, 0.5 * (lo + hi))
    fhi = evaluate(f, hi)
    whole = _simpson(flo, fmid, fhi, span)

    values: list[float] = []
    errors: list[float] = []
    # (left, right, f(left), f(mid), f(right), simpson estimate)
    stack = [(lo, hi, flo, fmid, fhi, whole)]
    inspected = 0

    while stack:
        pa, pb, fa, fm, fb, s_whole = stack.pop()
        inspected += 1
        if inspected > max_panels:
            raise QuadratureError(
                f"tolerance {tol!r} not reached within {max_panels} panels"
                f" on [{lo!r}, {hi!r}]"
            )
        m = 0.5 * (pa + pb)
        lm = 0.5 * (pa + m)
        rm = 0.5 * (m + pb)
        flm = evaluate(f, lm)
        frm = evaluate(f, rm)
        s_left = _simpson(fa, flm, fm, m - pa)
        s_right = _simpson(fm, frm, fb, pb - m)
        s2 = s_left + s_right
        est = (s2 - s_whole) / 15.0

        share = tol * (pb - pa) / span
        noise = _NOISE_FACTOR * (abs(s_left) + abs(s_right))
        splittable = lm > pa and rm < pb and lm < m < rm
        if abs(est) <= share or abs(est) <= noise or not splittable:
            values.append(s2 + est)
            errors.append(abs(est))
        else:
            stack.append((m, pb, fm, frm, fb, s_right))
            stack.append((pa, m, fa, flm, fm, s_left))

    value = math.fsum(values)
    bound = math.fsum(errors)
    if a > b:
        value = -value
    return IntegralResult(value, bound, len(values))
