"""Runtime invariant suites for the special-function kernel and the quadrature engine."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from math import factorial
from typing import Callable

from . import specfun as sf
from .quadrature import (
    Algebraic,
    DoubleExponential,
    EndpointHint,
    Exponential,
    FiniteOpen,
    FullLine,
    IntegralSpec,
    LogPower,
    PowerExponent,
    SemiInfinite,
    integrate,
    integrate_at_level,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    limit: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark}  {self.name:<44} worst={self.worst:.3e}  limit={self.limit:.1e}"


def _check(name: str, residuals, limit: float) -> CheckResult:
    worst = max(residuals)
    return CheckResult(name, worst <= limit, worst, limit)


def _log_uniform(rng: random.Random, lo: float, hi: float, count: int) -> list[float]:
    return [math.exp(rng.uniform(math.log(lo), math.log(hi))) for _ in range(count)]


def check_constants() -> CheckResult:
    ulp_pi = math.ulp(math.pi)
    res = [
        abs(sf.EULER_GAMMA + sf.digamma(1.0)) / math.ulp(sf.EULER_GAMMA) / 2,
        abs(sf.SQRT_PI**2 - math.pi) / ulp_pi / 4,
    ]
    return _check("constants (gamma vs -psi(1), sqrt_pi^2 vs pi)", res, 1.0)


def check_recurrence(seed: int = 0) -> CheckResult:
    xs = _log_uniform(random.Random(seed), 1e-2, 50.0, 200)
    return _check("gamma recurrence", [abs(sf.gamma(a + 1) / (a * sf.gamma(a)) - 1) for a in xs], 1e-12)


def check_duplication(seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    xs = [rng.uniform(0.1, 30.0) for _ in range(100)]
    res = [
        abs(sf.gamma(x + 0.5) * sf.gamma(x) * 2.0 ** (2 * x - 1) / (sf.gamma(2 * x) * sf.SQRT_PI) - 1)
        for x in xs
    ]
    return _check("duplication", res, 1e-11)


def check_reflection() -> CheckResult:
    res = [
        abs(sf.gamma(j / 100) * sf.gamma(1 - j / 100) * sf.sinpi(j / 100) / math.pi - 1) for j in range(1, 100)
    ]
    return _check("reflection", res, 1e-11)


def check_gammahalf() -> CheckResult:
    res = [
        abs(sf.gamma(m + 0.5) / (sf.SQRT_PI * factorial(2 * m) / (4**m * factorial(m))) - 1) for m in range(16)
    ]
    return _check("half-integer values", res, 1e-12)


def check_digamma_difference() -> CheckResult:
    h = 1e-5
    grid = [0.5 + 19.5 * k / 99 for k in range(100)]
    res = [abs((sf.ln_gamma(a + h) - sf.ln_gamma(a - h)) / (2 * h) - sf.digamma(a)) for a in grid]
    return _check("digamma vs difference of ln_gamma", res, 1e-6)


def check_polygamma_zeta() -> CheckResult:
    res = []
    for n in range(1, 7):
        lhs = sf.polygamma(n, 1.0)
        other = sf.polygamma_asymptotic(n, 1.0)
        res.append(abs(lhs - other) / abs(lhs))
    return _check("polygamma(n, 1): zeta route vs series", res, 1e-11)


def check_hurwitz_shift() -> CheckResult:
    res = []
    for z in (1.5, 2.0, 3.0, 5.0, 9.0):
        for q in (0.3, 0.5, 1.0, 2.7, 10.0):
            lhs = sf.hurwitz_zeta(z, q) - sf.hurwitz_zeta(z, q + 1)
            res.append(abs(lhs - q**-z) / q**-z)
    return _check("hurwitz zeta index shift", res, 1e-11)


# integrands with known values, one per transform path
_KNOWN: tuple[tuple[str, Callable, IntegralSpec, float], ...] = (
    ("e^-t on (0,inf)", lambda t: math.exp(-t), IntegralSpec(SemiInfinite(), EndpointHint(right=Exponential(1.0))), 1.0),
    (
        "1/sqrt(-ln x) on (0,1)",
        lambda x, d: 1 / math.sqrt(-math.log1p(d) if d < 0 else -math.log(x)),
        IntegralSpec(FiniteOpen(0, 1), EndpointHint(left=LogPower(-0.5)), with_offset=True),
        sf.SQRT_PI,
    ),
    ("e^-t^2 on (0,inf)", lambda t: math.exp(-t * t), IntegralSpec(SemiInfinite(), EndpointHint(right=PowerExponent(2))), sf.SQRT_PI / 2),
    (
        "exp(-e^x) e^2x on R",
        lambda x: 0.0 if x > 700 else math.exp(2 * x - math.exp(x)),
        IntegralSpec(FullLine(), EndpointHint(right=DoubleExponential())),
        1.0,
    ),
    (
        "x^-1/2 e^-x on (0,inf)",
        lambda t: math.exp(-0.5 * math.log(t) - t),
        IntegralSpec(SemiInfinite(), EndpointHint(left=Algebraic(-0.5), right=Exponential(1.0))),
        sf.SQRT_PI,
    ),
    (
        "exp(-sqrt x) on (0,inf)",
        lambda t: math.exp(-math.sqrt(t)),
        IntegralSpec(SemiInfinite(), EndpointHint(right=PowerExponent(0.5))),
        2.0,
    ),
    ("1/(1+x^2) on R", lambda x: 1 / (1 + x * x), IntegralSpec(FullLine(), EndpointHint(right=Algebraic(-2))), math.pi),
)


def check_known_integrals() -> CheckResult:
    res = []
    for _, f, spec, exact in _KNOWN:
        r = integrate(f, spec)
        allowed = max(1e-12, 1e-11 * abs(exact))
        res.append(abs(r.value - exact) / allowed if r.converged else math.inf)
    return _check("quadrature known values (error / tolerance)", res, 1.0)


def check_constant_levels() -> CheckResult:
    spec = IntegralSpec(FiniteOpen(0.0, 1.0))
    res = [abs(integrate_at_level(lambda x: 1.0, spec, level) - 1) for level in range(2, 13)]
    return _check("constant on (0,1), levels 2..12", res, 1e-14)


def check_even_symmetry() -> CheckResult:
    f = lambda x: math.exp(-x * x)
    full = integrate(f, IntegralSpec(FullLine(), EndpointHint(right=PowerExponent(2))))
    half = integrate(f, IntegralSpec(SemiInfinite(), EndpointHint(right=PowerExponent(2))))
    return _check("even integrand: full line vs 2 x half line", [abs(full.value - 2 * half.value)], 2e-12)


SUITES: dict[str, tuple[Callable[[], CheckResult], ...]] = {
    "specfun": (
        check_constants,
        check_recurrence,
        check_duplication,
        check_reflection,
        check_gammahalf,
        check_digamma_difference,
        check_polygamma_zeta,
        check_hurwitz_shift,
    ),
    "quadrature": (check_known_integrals, check_constant_levels, check_even_symmetry),
}


def run_all() -> list[tuple[str, CheckResult]]:
    return [(suite, check()) for suite, checks in SUITES.items() for check in checks]
