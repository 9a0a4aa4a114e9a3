"""Catalog of gamma-function integral identities.

Every entry pairs a left-hand side (usually a definite integral handed to
:mod:`grv.quadrature`) with a closed form built from :mod:`grv.specfun`,
together with the parameter domain the identity holds on.  Entry ids are
G&R table numbers where the identity appears in the table,
``MOLL:*`` for intermediate formulas of the derivation, ``FUNC:*`` for
functional equations of gamma, and ``#suffix`` for variants.
"""

from __future__ import annotations

import difflib
import math
import random
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Union

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
)

Number = Union[int, float]

EULER = sf.EULER_GAMMA
SQRT_PI = sf.SQRT_PI
PI = math.pi

CATEGORIES = ("integral", "functional", "transformation", "limit")

SAMPLE_MARGIN = 0.05
MAX_REJECTIONS = 10_000

_LABELS = {"mu": "μ", "nu": "ν", "rho": "ρ", "beta": "β", "mu_exp": "μ", "delta": "δ"}


class UnknownEntryError(KeyError):
    def __init__(self, entry_id: str, suggestions: list[str]) -> None:
        self.entry_id = entry_id
        self.suggestions = suggestions
        hint = f"; did you mean {', '.join(suggestions)}?" if suggestions else ""
        super().__init__(f"unknown catalog id {entry_id!r}{hint}")

    def __str__(self) -> str:
        return self.args[0]


class InfeasibleDomainError(RuntimeError):
    pass


# --- parameters -------------------------------------------------------------


class ParameterAssignment(Mapping):
    """Concrete values for an entry's symbols (a, mu, nu, s, rho, p, b, m, n, beta, ...)."""

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[str, Number] | None = None, **kwargs: Number) -> None:
        merged = dict(values or {})
        merged.update(kwargs)
        self._values = merged

    def __getitem__(self, key: str) -> Number:
        return self._values[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v!r}" for k, v in self._values.items())
        return f"ParameterAssignment({inner})"

    def gamma4_exponent(self) -> float:
        """a = (m + 1) / b for the stretched-exponential family."""
        return (self["m"] + 1.0) / self["b"]

    def delta(self) -> float:
        """psi(a) - ln(mu)."""
        return sf.digamma(self["a"]) - math.log(self["mu"])


@dataclass(frozen=True)
class Range:
    """Constraint on one symbol plus the finite window it is sampled from.

    ``lo``/``hi`` are the true bounds (possibly infinite); ``sample_lo`` and
    ``sample_hi`` default to them.  Integer symbols take every integer in
    the closed sampling window.
    """

    name: str
    lo: float = -math.inf
    hi: float = math.inf
    lo_open: bool = True
    hi_open: bool = True
    integer: bool = False
    sample_lo: float | None = None
    sample_hi: float | None = None

    @property
    def label(self) -> str:
        return _LABELS.get(self.name, self.name)

    def window(self) -> tuple[float, float]:
        lo = self.lo if self.sample_lo is None else self.sample_lo
        hi = self.hi if self.sample_hi is None else self.sample_hi
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InfeasibleDomainError(f"symbol {self.name!r} has no finite sampling window")
        return lo, hi

    def contains(self, value: Number) -> bool:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return False
        if not math.isfinite(value):
            return False
        if self.integer and float(value) != math.floor(value):
            return False
        above = value > self.lo if self.lo_open else value >= self.lo
        below = value < self.hi if self.hi_open else value <= self.hi
        return above and below

    def draw(self, rng: random.Random) -> Number:
        lo, hi = self.window()
        if self.integer:
            return rng.randint(math.ceil(lo), math.floor(hi))
        log_scale = lo > 0 and hi / lo >= 100.0
        if log_scale:
            lo, hi = math.log(lo), math.log(hi)
        width = hi - lo
        # keep clear of open boundaries that the window touches
        if self.lo_open and self.sample_lo in (None, self.lo):
            lo += SAMPLE_MARGIN * width
        if self.hi_open and self.sample_hi in (None, self.hi):
            hi -= SAMPLE_MARGIN * width
        u = rng.uniform(lo, hi)
        return math.exp(u) if log_scale else u

    def describe(self) -> str:
        if self.integer:
            hi = "∞" if math.isinf(self.hi) else str(int(self.hi))
            return f"{self.label} ∈ {{{int(self.lo)}, …, {hi}}}"
        lo_sym = "<" if self.lo_open else "≤"
        hi_sym = "<" if self.hi_open else "≤"
        if math.isinf(self.lo) and math.isinf(self.hi):
            return f"{self.label} real"
        if math.isinf(self.lo):
            return f"{self.label} {hi_sym} {_fmt(self.hi)}"
        if math.isinf(self.hi):
            return f"{self.label} {'>' if self.lo_open else '≥'} {_fmt(self.lo)}"
        return f"{_fmt(self.lo)} {lo_sym} {self.label} {hi_sym} {_fmt(self.hi)}"


@dataclass(frozen=True)
class CrossConstraint:
    """lo < expr(values) < hi, with an optional tighter sampling window."""

    text: str
    expr: Callable[[Mapping[str, Number]], float]
    lo: float = -math.inf
    hi: float = math.inf
    sample_lo: float | None = None
    sample_hi: float | None = None

    def holds(self, values: Mapping[str, Number]) -> bool:
        v = self.expr(values)
        return self.lo < v < self.hi

    def holds_with_margin(self, values: Mapping[str, Number]) -> bool:
        lo, hi = self.lo, self.hi
        if math.isfinite(lo) and math.isfinite(hi):
            pad = SAMPLE_MARGIN * (hi - lo)
            lo, hi = lo + pad, hi - pad
        if self.sample_lo is not None:
            lo = max(lo, self.sample_lo)
        if self.sample_hi is not None:
            hi = min(hi, self.sample_hi)
        v = self.expr(values)
        return lo < v < hi


@dataclass(frozen=True)
class ParameterDomain:
    symbols: tuple[Range, ...] = ()
    constraints: tuple[CrossConstraint, ...] = ()
    # True when the constraints were worked out from convergence of the
    # integral rather than stated with the table entry
    derived: bool = False

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.symbols)

    def violations(self, values: Mapping[str, Number]) -> list[str]:
        problems = []
        for r in self.symbols:
            if r.name not in values:
                problems.append(f"missing parameter {r.name!r}")
            elif not r.contains(values[r.name]):
                problems.append(f"{r.name}={values[r.name]!r} violates {r.describe()}")
        extra = sorted(set(values) - set(self.names))
        problems += [f"unexpected parameter {k!r}" for k in extra]
        if not problems:
            problems += [c.text for c in self.constraints if not c.holds(values)]
        return problems

    def contains(self, values: Mapping[str, Number]) -> bool:
        return not self.violations(values)

    def describe(self) -> str:
        parts = [r.describe() for r in self.symbols] + [c.text for c in self.constraints]
        return ", ".join(parts) if parts else "no parameters"


def sample_parameters(domain: ParameterDomain, seed: int, count: int) -> list[ParameterAssignment]:
    """Draw ``count`` in-domain assignments, deterministic in (domain, seed, count)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    samples: list[ParameterAssignment] = []
    rejected = 0
    while len(samples) < count:
        values = {r.name: r.draw(rng) for r in domain.symbols}
        if all(c.holds_with_margin(values) for c in domain.constraints):
            samples.append(ParameterAssignment(values))
            continue
        rejected += 1
        if rejected >= MAX_REJECTIONS:
            raise InfeasibleDomainError(
                f"no admissible sample after {MAX_REJECTIONS} draws: {domain.describe()}"
            )
    return samples


# --- entries ----------------------------------------------------------------


@dataclass(frozen=True)
class Integral:
    integrand: Callable[..., float]
    spec: IntegralSpec


@dataclass(frozen=True)
class Limit:
    """A one-parameter family whose value at ``approach(0)`` is wanted."""

    approach: Callable[[float], float]
    symbol: str


Side = Union[Integral, Limit, float]


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    category: str
    domain: ParameterDomain
    lhs: Callable[[ParameterAssignment], Side]
    rhs: Callable[[ParameterAssignment], Side]
    formula: str
    provenance: str
    note: str = ""

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")


def _fmt(x: float) -> str:
    return f"{x:g}"


# --- numerics shared by integrands ------------------------------------------


def _neg_log(x: float, d: float) -> float:
    """-ln x on (0, 1) from the node and its signed offset to the nearer end."""
    return -math.log1p(d) if d < 0 else -math.log(x)


def _scaled_power(log_scale: float, p: float, log_x: float) -> float:
    """exp(log_scale + p log_x), saturating at inf instead of raising."""
    e = log_scale + p * log_x
    return math.inf if e > 709.0 else math.exp(e)


def _xpow_exp(x: float, power: float, rate: float) -> float:
    """x**power * exp(-rate x) for x > 0."""
    return math.exp(power * math.log(x) - rate * x)


def _semi(left: float | None = None, right=None, lo: float = 0.0, offset: bool = False) -> IntegralSpec:
    return IntegralSpec(
        SemiInfinite(lo),
        EndpointHint(left=None if left is None else Algebraic(left), right=right),
        with_offset=offset,
    )


def _unit(left=None) -> IntegralSpec:
    return IntegralSpec(FiniteOpen(0.0, 1.0), EndpointHint(left=left), with_offset=True)


def _full_double_exp() -> IntegralSpec:
    return IntegralSpec(FullLine(), EndpointHint(right=DoubleExponential()))


def scaled_gamma_derivative(n: int, a: float, mu: float) -> float:
    """(d/da)**n [mu**-a Gamma(a)] through F' = (psi(a) - ln mu) F.

    Same recurrence shape as :func:`grv.specfun.gamma_derivative`, applied
    to F directly so no binomial sum in ln(mu) appears.
    """
    base = mu**-a * sf.gamma(a)
    derivs = [base]
    if n == 0:
        return base
    logd = [sf.digamma(a) - math.log(mu)] + [sf.polygamma(j, a) for j in range(1, n)]
    for k in range(n):
        derivs.append(sum(comb(k, j) * derivs[j] * logd[k - j] for j in range(k + 1)))
    return derivs[n]


def leibniz_scaled_gamma_derivative(n: int, a: float, mu: float) -> float:
    """mu**-a sum_k (-1)**k C(n,k) (ln mu)**k Gamma^(n-k)(a)."""
    lm = math.log(mu)
    total = math.fsum(
        (-1) ** k * comb(n, k) * lm**k * sf.gamma_derivative(n - k, a) for k in range(n + 1)
    )
    return mu**-a * total


def _delta_moment(n: int, a: float, mu: float) -> float:
    """Closed forms for the n = 2, 3, 4 log-moments written with delta and zeta(k, a)."""
    d = ParameterAssignment(a=a, mu=mu).delta()
    z2 = sf.hurwitz_zeta(2, a)
    z3 = sf.hurwitz_zeta(3, a)
    if n == 2:
        brace = d * d + z2
    elif n == 3:
        brace = d**3 + 3 * z2 * d - 2 * z3
    elif n == 4:
        z4 = sf.hurwitz_zeta(4, a)
        brace = d**4 + 6 * z2 * d * d - 8 * z3 * d + 3 * z2 * z2 + 6 * z4
    else:
        raise ValueError("delta form only for n = 2, 3, 4")
    return sf.gamma(a) / mu**a * brace


def _explicit_gamma_derivative(n: int, a: float) -> float:
    # delta forms at mu = 1, plus n = 1
    if n == 1:
        return sf.gamma(a) * sf.digamma(a)
    return _delta_moment(n, a, 1.0)


# --- domain shorthands ------------------------------------------------------


def _pos(name: str, hi: float = 10.0, lo: float = 0.1) -> Range:
    """Positive scale symbol sampled over [lo, hi]."""
    return Range(name, 0.0, math.inf, sample_lo=lo, sample_hi=hi)


def _exponent(name: str = "a", hi: float = 6.0) -> Range:
    """Positive exponent sampled over (0, hi]."""
    return Range(name, 0.0, math.inf, sample_hi=hi)


def _nat(name: str = "n", lo: int = 1, hi: int = 5) -> Range:
    return Range(name, lo, math.inf, lo_open=False, integer=True, sample_hi=hi)


def _dom(*symbols: Range, constraints: tuple[CrossConstraint, ...] = (), derived: bool = False) -> ParameterDomain:
    return ParameterDomain(tuple(symbols), constraints, derived)


NO_PARAMS = ParameterDomain()


# --- the entries ------------------------------------------------------------


def _section_basic() -> list[IdentityEntry]:
    E = IdentityEntry
    return [
        E(
            "gamma-def",
            "integral",
            _dom(_exponent("a", 8.0)),
            lambda p: Integral(lambda x: _xpow_exp(x, p["a"] - 1, 1.0), _semi(p["a"] - 1, Exponential(1.0))),
            lambda p: sf.gamma(p["a"]),
            "∫₀^∞ x^(a-1) e^(-x) dx = Γ(a)",
            "Euler integral for Γ(a); defining integral",
        ),
        E(
            "normal",
            "integral",
            NO_PARAMS,
            lambda p: Integral(lambda t: math.exp(-t * t), _semi(right=PowerExponent(2.0))),
            lambda p: 0.5 * sf.gamma(0.5),
            "∫₀^∞ exp(-t²) dt = ½ Γ(½)",
            "normal integral; equivalent to Γ(½) = √π",
        ),
        E(
            "3.371",
            "integral",
            _dom(_nat("m", 0, 6), _pos("mu")),
            lambda p: Integral(
                lambda t: _xpow_exp(t, p["m"] - 0.5, p["mu"]), _semi(p["m"] - 0.5, Exponential(p["mu"]))
            ),
            lambda p: SQRT_PI / 4.0 ** p["m"] * factorial(2 * p["m"]) / factorial(p["m"]) * p["mu"] ** (-p["m"] - 0.5),
            "∫₀^∞ t^(m-½) e^(-μt) dt = √π (2m)! / (2^(2m) m!) μ^(-m-½)",
            "G&R 3.371; half-integer exponent with scale",
        ),
        E(
            "3.371#unit",
            "integral",
            _dom(_nat("m", 0, 6)),
            lambda p: Integral(lambda t: _xpow_exp(t, p["m"] - 0.5, 1.0), _semi(p["m"] - 0.5, Exponential(1.0))),
            lambda p: SQRT_PI / 4.0 ** p["m"] * factorial(2 * p["m"]) / factorial(p["m"]),
            "∫₀^∞ t^(m-½) e^(-t) dt = Γ(m+½) = √π (2m)! / (2^(2m) m!)",
            "G&R 3.371; Γ at half-integers via the duplication formula",
        ),
        E(
            "3.381.4",
            "integral",
            _dom(_exponent("a", 8.0), _pos("mu")),
            lambda p: Integral(
                lambda t: _xpow_exp(t, p["a"] - 1, p["mu"]), _semi(p["a"] - 1, Exponential(p["mu"]))
            ),
            lambda p: sf.gamma(p["a"]) * p["mu"] ** -p["a"],
            "∫₀^∞ t^(a-1) e^(-μt) dt = Γ(a) μ^(-a)",
            "G&R 3.381.4; substitution x = μt in the Euler integral",
        ),
        E(
            "3.351.3",
            "integral",
            _dom(_nat("n"), _pos("mu")),
            lambda p: Integral(lambda t: _xpow_exp(t, p["n"], p["mu"]), _semi(right=Exponential(p["mu"]))),
            lambda p: factorial(p["n"]) * p["mu"] ** (-p["n"] - 1),
            "∫₀^∞ t^n e^(-μt) dt = n! μ^(-n-1)",
            "G&R 3.351.3; integer case a = n + 1 of 3.381.4",
        ),
    ]


def _exp_difference(slow: float, fast: float, x: float) -> float:
    """e^(-slow x) - e^(-fast x), accurate near x = 0 and for either ordering."""
    lo, hi = min(slow, fast), max(slow, fast)
    diff = math.exp(-lo * x) * -math.expm1(-(hi - lo) * x)
    return diff if slow <= fast else -diff


def _frullani_integrand(p: Mapping[str, Number]) -> Callable[[float], float]:
    mu, nu, rho = p["mu"], p["nu"], p["rho"]
    lo, hi = min(mu, nu), max(mu, nu)
    sign = 1.0 if nu <= mu else -1.0

    def f(x: float) -> float:
        if hi == lo:
            return 0.0
        lx = math.log(x)
        y = (hi - lo) * x
        # ln(1 - e^(-y)), which is ln y to full precision for tiny y
        log_diff = math.log(-math.expm1(-y)) if y > 1e-200 else math.log(hi - lo) + lx
        return sign * math.exp(-lo * x + log_diff - (rho + 1.0) * lx)

    return f


def _frullani_rhs(mu: float, nu: float, rho: float) -> float:
    # (mu^rho - nu^rho) / rho written with expm1 so small rho keeps its digits
    num = math.expm1(rho * math.log(mu)) - math.expm1(rho * math.log(nu))
    return num / rho * sf.gamma(1.0 - rho)


def _log_ratio_integrand(p: Mapping[str, Number]) -> Callable[[float], float]:
    mu, nu = p["mu"], p["nu"]

    def f(x: float) -> float:
        return _exp_difference(mu, nu, x) / x

    return f


def _stretched_integrand(p: Mapping[str, Number]) -> Callable[[float], float]:
    nu, mu, power = p["nu"], p["mu"], p["p"]
    log_mu = math.log(mu)

    def f(x: float) -> float:
        lx = math.log(x)
        return math.exp((nu - 1.0) * lx - _scaled_power(log_mu, power, lx))

    return f


def _stretched_complement(p: Mapping[str, Number]) -> Callable[[float], float]:
    nu, mu, power = p["nu"], p["mu"], p["p"]
    log_mu = math.log(mu)

    def f(x: float) -> float:
        lx = math.log(x)
        log_y = log_mu + power * lx
        # ln(1 - e^(-y)); below e^-40 the first-order term is exact in binary64
        if log_y < -40.0:
            log_factor = log_y
        else:
            log_factor = math.log(-math.expm1(-_scaled_power(log_mu, power, lx)))
        return math.exp((nu - 1.0) * lx + log_factor)

    return f


def _section_parameter() -> list[IdentityEntry]:
    E = IdentityEntry
    frullani_domain = _dom(
        _pos("mu"),
        _pos("nu"),
        Range("rho", -math.inf, 1.0, sample_lo=-1.5),
        constraints=(CrossConstraint("ρ ≠ 0", lambda v: abs(v["rho"]), 0.0, math.inf, sample_lo=0.05),),
    )
    return [
        E(
            "3.434.1",
            "integral",
            frullani_domain,
            lambda p: Integral(_frullani_integrand(p), _semi(-p["rho"], Exponential(min(p["mu"], p["nu"])))),
            lambda p: _frullani_rhs(p["mu"], p["nu"], p["rho"]),
            "∫₀^∞ (e^(-νx) - e^(-μx)) / x^(ρ+1) dx = (μ^ρ - ν^ρ)/ρ · Γ(1-ρ)",
            "G&R 3.434.1; convergence needs μ, ν > 0 and ρ < 1",
        ),
        E(
            "3.434.2",
            "integral",
            _dom(_pos("mu"), _pos("nu")),
            lambda p: Integral(_log_ratio_integrand(p), _semi(right=Exponential(min(p["mu"], p["nu"])))),
            lambda p: math.log(p["nu"] / p["mu"]),
            "∫₀^∞ (e^(-μx) - e^(-νx)) / x dx = ln(ν/μ)",
            "G&R 3.434.2; exponential Frullani integral",
        ),
        E(
            "3.434.2#limit",
            "limit",
            _dom(_pos("mu"), _pos("nu")),
            lambda p: Limit(lambda rho: _frullani_rhs(p["nu"], p["mu"], rho), "rho"),
            lambda p: math.log(p["nu"] / p["mu"]),
            "lim_(ρ→0) (ν^ρ - μ^ρ)/ρ · Γ(1-ρ) = ln(ν/μ)",
            "G&R 3.434.1 → 3.434.2 as ρ → 0",
        ),
        E(
            "3.478.1",
            "integral",
            _dom(_exponent("nu"), _pos("mu"), Range("p", 0.0, math.inf, sample_lo=0.3, sample_hi=4.0)),
            lambda p: Integral(_stretched_integrand(p), _semi(p["nu"] - 1, PowerExponent(p["p"]))),
            lambda p: 1.0 / p["p"] * p["mu"] ** (-p["nu"] / p["p"]) * sf.gamma(p["nu"] / p["p"]),
            "∫₀^∞ x^(ν-1) exp(-μ x^p) dx = (1/p) μ^(-ν/p) Γ(ν/p)",
            "G&R 3.478.1; stretched exponential",
        ),
        E(
            "3.478.2",
            "integral",
            _dom(
                _pos("mu"),
                Range("p", sample_lo=-3.0, sample_hi=3.0),
                Range("nu", sample_lo=-3.0, sample_hi=3.0),
                constraints=(
                    CrossConstraint("-1 < ν/p < 0", lambda v: v["nu"] / v["p"], -1.0, 0.0),
                    # sampling only: keep both algebraic tails clear of the
                    # ±1e300 abscissa clip
                    CrossConstraint("|p| > 0", lambda v: abs(v["p"]), 0.0, math.inf, sample_lo=0.5),
                    CrossConstraint("ν ≠ 0", lambda v: abs(v["nu"]), 0.0, math.inf, sample_lo=0.15),
                    CrossConstraint("ν + p ≠ 0", lambda v: abs(v["nu"] + v["p"]), 0.0, math.inf, sample_lo=0.15),
                ),
                derived=True,
            ),
            lambda p: Integral(
                _stretched_complement(p),
                _semi(right=Algebraic(p["nu"] - 1 if p["p"] > 0 else p["nu"] + p["p"] - 1)),
            ),
            lambda p: -1.0 / abs(p["p"]) * p["mu"] ** (-p["nu"] / p["p"]) * sf.gamma(p["nu"] / p["p"]),
            "∫₀^∞ x^(ν-1) [1 - exp(-μ x^p)] dx = -(1/|p|) μ^(-ν/p) Γ(ν/p)",
            "G&R 3.478.2; both signs of p, domain from convergence at 0 and ∞",
            note="domain derived from convergence: p > 0 with -p < ν < 0, or p < 0 with 0 < ν < -p",
        ),
    ]


def _log_moment_integrand(a: float, mu: float, n: int) -> Callable[[float], float]:
    def f(x: float) -> float:
        lx = math.log(x)
        return math.exp((a - 1.0) * lx - mu * x) * lx**n

    return f


def _section_derivatives() -> list[IdentityEntry]:
    E = IdentityEntry

    def moment(p, a_key="a", mu=1.0, n=None):
        a = p[a_key] if a_key else 1.0
        order = p["n"] if n is None else n
        return Integral(_log_moment_integrand(a, mu, order), _semi(a - 1, Exponential(mu)))

    return [
        E(
            "MOLL:gamma-deriv-n",
            "integral",
            _dom(_exponent("a"), _nat("n")),
            lambda p: moment(p),
            lambda p: sf.gamma_derivative(p["n"], p["a"]),
            "∫₀^∞ x^(a-1) e^(-x) (ln x)^n dx = Γ^(n)(a)",
            "n-fold differentiation of the Euler integral in a",
        ),
        E(
            "MOLL:logn-at-1",
            "integral",
            _dom(_nat("n")),
            lambda p: moment(p, a_key=None),
            lambda p: sf.gamma_derivative(p["n"], 1.0),
            "∫₀^∞ (ln x)^n e^(-x) dx = Γ^(n)(1)",
            "the a = 1 case of MOLL:gamma-deriv-n",
        ),
        E(
            "MOLL:gammaprime1",
            "integral",
            NO_PARAMS,
            lambda p: moment(p, a_key=None, n=1),
            lambda p: -EULER,
            "∫₀^∞ e^(-x) ln x dx = Γ'(1) = -γ",
            "Γ'(1) = -γ",
        ),
        E(
            "4.358.5",
            "integral",
            _dom(_exponent("a"), _pos("mu"), _nat("n")),
            lambda p: Integral(_log_moment_integrand(p["a"], p["mu"], p["n"]), _semi(p["a"] - 1, Exponential(p["mu"]))),
            lambda p: leibniz_scaled_gamma_derivative(p["n"], p["a"], p["mu"]),
            "∫₀^∞ x^(a-1) e^(-μx) (ln x)^n dx = (∂/∂a)^n [μ^(-a) Γ(a)] = μ^(-a) Σ_k (-1)^k C(n,k) (ln μ)^k Γ^(n-k)(a)",
            "G&R 4.358.5; Leibniz rule on μ^(-a) Γ(a)",
        ),
        E(
            "4.331.1",
            "integral",
            _dom(_pos("mu")),
            lambda p: Integral(_log_moment_integrand(1.0, p["mu"], 1), _semi(right=Exponential(p["mu"]))),
            lambda p: -(EULER + math.log(p["mu"])) / p["mu"],
            "∫₀^∞ e^(-μx) ln x dx = -(γ + ln μ)/μ",
            "G&R 4.331.1; n = 1 at a = 1",
        ),
        E(
            "4.335.1",
            "integral",
            _dom(_pos("mu")),
            lambda p: Integral(_log_moment_integrand(1.0, p["mu"], 2), _semi(right=Exponential(p["mu"]))),
            lambda p: (PI**2 / 6.0 + (EULER + math.log(p["mu"])) ** 2) / p["mu"],
            "∫₀^∞ e^(-μx) ln²x dx = (1/μ) [π²/6 + (γ + ln μ)²]",
            "G&R 4.335.1; n = 2 at a = 1",
        ),
        E(
            "4.335.3",
            "integral",
            _dom(_pos("mu")),
            lambda p: Integral(_log_moment_integrand(1.0, p["mu"], 3), _semi(right=Exponential(p["mu"]))),
            lambda p: -(
                (EULER + math.log(p["mu"])) ** 3
                + PI**2 / 2.0 * (EULER + math.log(p["mu"]))
                + 2.0 * sf.hurwitz_zeta(3, 1.0)
            )
            / p["mu"],
            "∫₀^∞ e^(-μx) ln³x dx = -(1/μ) [(γ + ln μ)³ + (π²/2)(γ + ln μ) + 2ζ(3)]",
            "G&R 4.335.3; n = 3 at a = 1",
        ),
        E(
            "4.358.2",
            "integral",
            _dom(_exponent("a"), _pos("mu")),
            lambda p: Integral(_log_moment_integrand(p["a"], p["mu"], 2), _semi(p["a"] - 1, Exponential(p["mu"]))),
            lambda p: _delta_moment(2, p["a"], p["mu"]),
            "∫₀^∞ x^(a-1) e^(-μx) ln²x dx = Γ(a)/μ^a {δ² + ζ(2,a)},  δ = ψ(a) - ln μ",
            "G&R 4.358.2",
        ),
        E(
            "4.358.3",
            "integral",
            _dom(_exponent("a"), _pos("mu")),
            lambda p: Integral(_log_moment_integrand(p["a"], p["mu"], 3), _semi(p["a"] - 1, Exponential(p["mu"]))),
            lambda p: _delta_moment(3, p["a"], p["mu"]),
            "∫₀^∞ x^(a-1) e^(-μx) ln³x dx = Γ(a)/μ^a {δ³ + 3ζ(2,a)δ - 2ζ(3,a)}",
            "G&R 4.358.3",
        ),
        E(
            "4.358.4",
            "integral",
            _dom(_exponent("a"), _pos("mu")),
            lambda p: Integral(_log_moment_integrand(p["a"], p["mu"], 4), _semi(p["a"] - 1, Exponential(p["mu"]))),
            lambda p: _delta_moment(4, p["a"], p["mu"]),
            "∫₀^∞ x^(a-1) e^(-μx) ln⁴x dx = Γ(a)/μ^a {δ⁴ + 6ζ(2,a)δ² - 8ζ(3,a)δ + 3ζ(2,a)² + 6ζ(4,a)}",
            "G&R 4.358.4",
        ),
    ]


def _power_exp_log(m: float, s: float, b: float, with_log: bool) -> Callable[[float], float]:
    log_s = math.log(s)

    def f(x: float) -> float:
        lx = math.log(x)
        v = math.exp(m * lx - _scaled_power(log_s, b, lx))
        return v * lx if with_log else v

    return f


def _gamma4_rhs(p) -> float:
    a = p.gamma4_exponent()
    return sf.gamma(a) / (p["s"] ** a * p["b"])


def _gamma7_rhs(m: float, s: float, b: float) -> float:
    a = (m + 1.0) / b
    return sf.gamma(a) / (b * b * s**a) * (sf.digamma(a) - math.log(s))


def _exp_scale_integrand(m: float, s: float, b: float) -> Callable[[float], float]:
    def f(t: float) -> float:
        bt = b * t
        if bt > 700.0:
            return 0.0
        return t * math.exp(m * t - s * math.exp(bt))

    return f


def _bracketed_moment(coef: float, shift: float, power: int, mu: float) -> Callable[[float], float]:
    """(coef x² - shift) x^power e^(-mu x²) ln x."""

    def f(x: float) -> float:
        lx = math.log(x)
        return (coef * x * x - shift) * math.exp(power * lx - mu * x * x) * lx

    return f


def _section_changes() -> list[IdentityEntry]:
    E = IdentityEntry
    m_range = Range("m", -1.0, math.inf, sample_hi=5.0)
    b_range = Range("b", 0.0, math.inf, sample_lo=0.3, sample_hi=4.0)
    return [
        E(
            "3.326.1",
            "integral",
            _dom(Range("b", 0.0, math.inf, sample_lo=0.3, sample_hi=5.0)),
            lambda p: Integral(_power_exp_log(0.0, 1.0, p["b"], False), _semi(right=PowerExponent(p["b"]))),
            lambda p: sf.gamma(1.0 / p["b"]) / p["b"],
            "∫₀^∞ exp(-t^b) dt = (1/b) Γ(1/b)",
            "G&R 3.326.1; substitution x = t^b",
        ),
        E(
            "3.326.2",
            "integral",
            _dom(m_range, b_range, _pos("s")),
            lambda p: Integral(_power_exp_log(p["m"], p["s"], p["b"], False), _semi(p["m"], PowerExponent(p["b"]))),
            _gamma4_rhs,
            "∫₀^∞ x^m exp(-s x^b) dx = Γ(a)/(s^a b),  a = (m+1)/b",
            "G&R 3.326.2 (same formula as 3.462.9, 3.478.1)",
        ),
        E(
            "3.462.9",
            "integral",
            _dom(m_range, _pos("s")),
            lambda p: Integral(_power_exp_log(p["m"], p["s"], 2.0, False), _semi(p["m"], PowerExponent(2.0))),
            lambda p: sf.gamma((p["m"] + 1) / 2.0) / (2.0 * p["s"] ** ((p["m"] + 1) / 2.0)),
            "∫₀^∞ x^m exp(-s x²) dx = Γ((m+1)/2) / (2 s^((m+1)/2))",
            "G&R 3.462.9; Gaussian (b = 2) case of 3.326.2",
        ),
        E(
            "3.473",
            "integral",
            _dom(_nat("m", 0, 6), Range("n", 0.0, math.inf, sample_lo=0.5, sample_hi=4.0), derived=True),
            lambda p: Integral(
                _power_exp_log((p["m"] + 0.5) * p["n"] - 1.0, 1.0, p["n"], False),
                _semi((p["m"] + 0.5) * p["n"] - 1.0, PowerExponent(p["n"])),
            ),
            lambda p: sf.double_factorial(2 * p["m"] - 1) / (2.0 ** p["m"] * p["n"]) * SQRT_PI,
            "∫₀^∞ exp(-x^n) x^((m+½)n - 1) dx = (2m-1)!! / (2^m n) √π",
            "G&R 3.473; s = 1, b = n in 3.326.2",
            note="integer m ≥ 0 with (−1)!! = 1, real n > 0",
        ),
        E(
            "MOLL:gamma-7",
            "integral",
            _dom(m_range, b_range, _pos("s")),
            lambda p: Integral(_power_exp_log(p["m"], p["s"], p["b"], True), _semi(p["m"], PowerExponent(p["b"]))),
            lambda p: _gamma7_rhs(p["m"], p["s"], p["b"]),
            "∫₀^∞ x^m e^(-s x^b) ln x dx = Γ(a)/(b² s^a) [ψ(a) - ln s],  a = (m+1)/b",
            "3.326.2 differentiated in m",
        ),
        E(
            "MOLL:gamma-7a",
            "integral",
            _dom(m_range, _pos("s")),
            lambda p: Integral(_power_exp_log(p["m"], p["s"], 1.0, True), _semi(p["m"], Exponential(p["s"]))),
            lambda p: sf.gamma(p["m"] + 1) / p["s"] ** (p["m"] + 1) * (sf.digamma(p["m"] + 1) - math.log(p["s"])),
            "∫₀^∞ x^m e^(-s x) ln x dx = Γ(m+1)/s^(m+1) [ψ(m+1) - ln s]",
            "MOLL:gamma-7 at b = 1",
        ),
        E(
            "4.333",
            "integral",
            _dom(_pos("s")),
            lambda p: Integral(_power_exp_log(0.0, p["s"], 2.0, True), _semi(right=PowerExponent(2.0))),
            lambda p: -SQRT_PI / (4.0 * math.sqrt(p["s"])) * (EULER + math.log(4.0 * p["s"])),
            "∫₀^∞ e^(-s x²) ln x dx = -√π/(4√s) (γ + ln 4s)",
            "G&R 4.333; MOLL:gamma-7 at m = 0, b = 2 with ψ(½) = -γ - 2 ln 2",
        ),
        E(
            "4.355.1",
            "integral",
            _dom(_pos("s")),
            lambda p: Integral(_power_exp_log(2.0, p["s"], 2.0, True), _semi(right=PowerExponent(2.0))),
            lambda p: (2.0 - math.log(4.0 * p["s"]) - EULER) / (8.0 * p["s"]) * math.sqrt(PI / p["s"]),
            "∫₀^∞ x² e^(-s x²) ln x dx = (1/(8s)) (2 - ln 4s - γ) √(π/s)",
            "G&R 4.355.1; MOLL:gamma-7 at m = b = 2 with ψ(3/2) = 2 - 2 ln 2 - γ",
        ),
        E(
            "4.355.3",
            "integral",
            _dom(_pos("mu"), _nat("n")),
            lambda p: Integral(
                _bracketed_moment(p["mu"], p["n"], 2 * p["n"] - 1, p["mu"]), _semi(right=PowerExponent(2.0))
            ),
            lambda p: factorial(p["n"] - 1) / (4.0 * p["mu"] ** p["n"]),
            "∫₀^∞ (μx² - n) x^(2n-1) e^(-μx²) ln x dx = (n-1)! / (4 μ^n)",
            "G&R 4.355.3; difference of two MOLL:gamma-7 cases",
        ),
        E(
            "4.355.4",
            "integral",
            _dom(_pos("mu"), _nat("n")),
            lambda p: Integral(
                _bracketed_moment(2.0 * p["mu"], 2 * p["n"] + 1, 2 * p["n"], p["mu"]), _semi(right=PowerExponent(2.0))
            ),
            lambda p: sf.double_factorial(2 * p["n"] - 1) / (2.0 * (2.0 * p["mu"]) ** p["n"]) * math.sqrt(PI / p["mu"]),
            "∫₀^∞ (2μx² - 2n - 1) x^(2n) e^(-μx²) ln x dx = (2n-1)!! / (2 (2μ)^n) √(π/μ)",
            "G&R 4.355.4; difference of two MOLL:gamma-7 cases",
        ),
        E(
            "4.369.1",
            "integral",
            _dom(_exponent("a"), _pos("mu")),
            lambda p: Integral(_psi_minus_log(p["a"], p["mu"]), _semi(p["a"] - 1, Exponential(p["mu"]))),
            lambda p: sf.gamma(p["a"]) * math.log(p["mu"]) / p["mu"] ** p["a"],
            "∫₀^∞ x^(a-1) e^(-μx) [ψ(a) - ln x] dx = Γ(a) ln μ / μ^a",
            "G&R 4.369.1",
        ),
        E(
            "4.369.2",
            "integral",
            _dom(_nat("n"), _pos("mu")),
            lambda p: Integral(_centred_square(p["n"], p["mu"]), _semi(p["n"] - 1, Exponential(p["mu"]))),
            lambda p: factorial(p["n"] - 1)
            / p["mu"] ** p["n"]
            * ((math.log(p["mu"]) - 0.5 * sf.digamma(p["n"])) ** 2 + 0.5 * sf.polygamma(1, p["n"])),
            "∫₀^∞ x^(n-1) e^(-μx) {[ln x - ½ψ(n)]² - ½ψ'(n)} dx = (n-1)!/μ^n {[ln μ - ½ψ(n)]² + ½ψ'(n)}",
            "G&R 4.369.2",
        ),
        E(
            "MOLL:exp-scale",
            "integral",
            _dom(
                Range("m", 0.0, math.inf, sample_hi=4.0),
                Range("b", 0.0, math.inf, sample_lo=0.5, sample_hi=3.0),
                _pos("s"),
            ),
            lambda p: Integral(_exp_scale_integrand(p["m"], p["s"], p["b"]), _full_double_exp()),
            lambda p: _gamma7_rhs(p["m"] - 1.0, p["s"], p["b"]),
            "∫_-∞^∞ t e^(mt) exp(-s e^(bt)) dt = Γ(m/b)/(b² s^(m/b)) (ψ(m/b) - ln s)",
            "MOLL:gamma-7 after x = e^t",
        ),
        E(
            "3.481.1",
            "integral",
            _dom(_pos("s")),
            lambda p: Integral(_exp_scale_integrand(1.0, p["s"], 1.0), _full_double_exp()),
            lambda p: -(EULER + math.log(p["s"])) / p["s"],
            "∫_-∞^∞ t e^t exp(-s e^t) dt = -(γ + ln s)/s",
            "G&R 3.481.1; MOLL:exp-scale at b = m = 1",
        ),
        E(
            "3.481.2",
            "integral",
            _dom(_pos("s")),
            lambda p: Integral(_exp_scale_integrand(1.0, p["s"], 2.0), _full_double_exp()),
            lambda p: -SQRT_PI * (EULER + math.log(4.0 * p["s"])) / (4.0 * math.sqrt(p["s"])),
            "∫_-∞^∞ t e^t exp(-s e^(2t)) dt = -√π (γ + ln 4s) / (4√s)",
            "G&R 3.481.2; MOLL:exp-scale at b = 2, m = 1",
        ),
        E(
            "3.328",
            "integral",
            _dom(_exponent("a", 8.0)),
            lambda p: Integral(_exp_scale_integrand_plain(p["a"]), _full_double_exp()),
            lambda p: sf.gamma(p["a"]),
            "∫_-∞^∞ exp(-e^x) e^(ax) dx = Γ(a)",
            "G&R 3.328; Euler integral after x = e^t",
        ),
        E(
            "3.471.3",
            "integral",
            _dom(
                Range("a", 0.0, math.inf, sample_lo=0.1, sample_hi=5.0),
                Range("mu_exp", 0.0, math.inf, sample_hi=4.0),
                Range("beta", 0.0, math.inf, sample_lo=0.1, sample_hi=5.0),
            ),
            lambda p: Integral(
                _inverse_scale_integrand(p["a"], p["mu_exp"], p["beta"]),
                IntegralSpec(
                    FiniteOpen(0.0, p["a"]),
                    EndpointHint(right=Algebraic(p["mu_exp"] - 1.0)),
                    with_offset=True,
                ),
            ),
            lambda p: p["beta"] ** -p["mu_exp"]
            * p["a"] ** (p["mu_exp"] - 1.0)
            * sf.gamma(p["mu_exp"])
            * math.exp(-p["beta"] / p["a"]),
            "∫₀^a x^(-μ-1) (a-x)^(μ-1) e^(-β/x) dx = β^(-μ) a^(μ-1) Γ(μ) exp(-β/a)",
            "G&R 3.471.3 (upper limit written a; exponent stored as mu_exp)",
        ),
        E(
            "3.324.2",
            "integral",
            _dom(Range("b", 0.0, math.inf, sample_hi=4.0), _nat("n", 1, 4)),
            lambda p: Integral(
                _inverse_shift_integrand(p["b"], p["n"], 1.0),
                IntegralSpec(FullLine(), breakpoints=(0.0,)),
            ),
            lambda p: sf.gamma(1.0 / (2 * p["n"])) / p["n"],
            "∫_-∞^∞ exp(-(x - b/x)^(2n)) dx = (1/n) Γ(1/(2n)),  b > 0",
            "G&R 3.324.2; needs b > 0 so that x - b/x is increasing",
        ),
        E(
            "3.324.2#bneg",
            "transformation",
            _dom(Range("b", -math.inf, 0.0, sample_lo=-2.0), _nat("n", 1, 3)),
            lambda p: Integral(_inverse_shift_integrand(p["b"], p["n"], 2.0), _semi()),
            lambda p: Integral(_shifted_square_integrand(p["b"], p["n"]), _semi()),
            "2∫₀^∞ exp(-(x - b/x)^(2n)) dx = 2∫₀^∞ exp(-(z² - 4b)^n) dz,  b < 0 (no closed form)",
            "G&R 3.324.2 with b < 0; two-branch substitution u = x - b/x, then z = √(u² + 4b)",
        ),
    ]


def _psi_minus_log(a: float, mu: float) -> Callable[[float], float]:
    psi = sf.digamma(a)

    def f(x: float) -> float:
        lx = math.log(x)
        return math.exp((a - 1.0) * lx - mu * x) * (psi - lx)

    return f


def _centred_square(n: int, mu: float) -> Callable[[float], float]:
    half_psi = 0.5 * sf.digamma(n)
    half_trigamma = 0.5 * sf.polygamma(1, n)

    def f(x: float) -> float:
        lx = math.log(x)
        return math.exp((n - 1) * lx - mu * x) * ((lx - half_psi) ** 2 - half_trigamma)

    return f


def _exp_scale_integrand_plain(a: float) -> Callable[[float], float]:
    def f(x: float) -> float:
        if x > 700.0:
            return 0.0
        return math.exp(a * x - math.exp(x))

    return f


def _inverse_scale_integrand(upper: float, mu: float, beta: float) -> Callable[[float, float], float]:
    def f(x: float, d: float) -> float:
        log_gap = math.log(-d) if d < 0 else math.log(upper - x)
        return math.exp((-mu - 1.0) * math.log(x) + (mu - 1.0) * log_gap - beta / x)

    return f


def _inverse_shift_integrand(b: float, n: int, factor: float) -> Callable[[float], float]:
    def f(x: float) -> float:
        u = x - b / x
        if abs(u) > 1e3:
            return 0.0
        return factor * math.exp(-(u ** (2 * n)))

    return f


def _shifted_square_integrand(b: float, n: int) -> Callable[[float], float]:
    def f(z: float) -> float:
        w = z * z - 4.0 * b
        if w > 1e3:
            return 0.0
        return 2.0 * math.exp(-(w**n))

    return f


def _log_scale_integrand(mu_exp: float, nu: float, with_loglog: bool) -> Callable[[float, float], float]:
    """(-ln x)^(mu_exp-1) x^(nu-1), optionally times ln(-ln x), on (0, 1)."""

    def f(x: float, d: float) -> float:
        big_l = _neg_log(x, d)
        log_l = math.log(big_l)
        v = math.exp((mu_exp - 1.0) * log_l - (nu - 1.0) * big_l)
        return v * log_l if with_loglog else v

    return f


def _section_log_scale() -> list[IdentityEntry]:
    E = IdentityEntry

    def unit(mu_exp, nu=1.0, loglog=False):
        return Integral(_log_scale_integrand(mu_exp, nu, loglog), _unit(LogPower(mu_exp - 1.0)))

    return [
        E(
            "4.215.1",
            "integral",
            _dom(_exponent("a")),
            lambda p: unit(p["a"]),
            lambda p: sf.gamma(p["a"]),
            "∫₀¹ (-ln x)^(a-1) dx = Γ(a)",
            "G&R 4.215.1; Euler's logarithmic form of Γ",
        ),
        E(
            "4.215.2",
            "integral",
            _dom(Range("mu", 0.0, 1.0)),
            lambda p: unit(1.0 - p["mu"]),
            lambda p: PI / (sf.gamma(p["mu"]) * sf.sinpi(p["mu"])),
            "∫₀¹ dx / (-ln x)^μ = π/(Γ(μ) sin μπ) = Γ(1-μ)",
            "G&R 4.215.2; reflection Γ(μ)Γ(1-μ) = π/sin πμ",
        ),
        E(
            "4.215.3",
            "integral",
            NO_PARAMS,
            lambda p: unit(1.5),
            lambda p: SQRT_PI / 2.0,
            "∫₀¹ √(-ln x) dx = √π/2",
            "G&R 4.215.3",
        ),
        E(
            "4.215.4",
            "integral",
            NO_PARAMS,
            lambda p: unit(0.5),
            lambda p: SQRT_PI,
            "∫₀¹ dx / √(-ln x) = √π",
            "G&R 4.215.4",
        ),
        E(
            "4.269.3",
            "integral",
            _dom(_pos("p")),
            lambda p: unit(1.5, p["p"]),
            lambda p: 0.5 * math.sqrt(PI / p["p"] ** 3),
            "∫₀¹ x^(p-1) √(-ln x) dx = ½ √(π/p³)",
            "G&R 4.269.3",
        ),
        E(
            "4.269.4",
            "integral",
            _dom(_pos("p")),
            lambda p: unit(0.5, p["p"]),
            lambda p: math.sqrt(PI / p["p"]),
            "∫₀¹ x^(p-1) / √(-ln x) dx = √(π/p)",
            "G&R 4.269.4",
        ),
        E(
            "4.272.5",
            "integral",
            _dom(Range("p", -1.0, math.inf, sample_hi=5.0)),
            lambda p: Integral(_log_over_square(p["p"]), _semi(p["p"], Algebraic(-2.0), lo=1.0, offset=True)),
            lambda p: sf.gamma(1.0 + p["p"]),
            "∫₁^∞ (ln x)^p dx / x² = Γ(1+p)",
            "G&R 4.272.5",
        ),
        E(
            "4.272.6",
            "integral",
            _dom(_exponent("mu"), _pos("nu")),
            lambda p: unit(p["mu"], p["nu"]),
            lambda p: sf.gamma(p["mu"]) / p["nu"] ** p["mu"],
            "∫₀¹ (-ln x)^(μ-1) x^(ν-1) dx = Γ(μ)/ν^μ",
            "G&R 4.272.6",
        ),
        E(
            "4.272.7",
            "integral",
            _dom(_nat("n"), _pos("nu")),
            lambda p: unit(p["n"] + 0.5, p["nu"]),
            lambda p: sf.double_factorial(2 * p["n"] - 1) / (2.0 * p["nu"]) ** p["n"] * math.sqrt(PI / p["nu"]),
            "∫₀¹ (-ln x)^(n-½) x^(ν-1) dx = (2n-1)!!/(2ν)^n √(π/ν)",
            "G&R 4.272.7",
        ),
        E(
            "4.229.4",
            "integral",
            _dom(_exponent("a")),
            lambda p: unit(p["a"], loglog=True),
            lambda p: sf.digamma(p["a"]) * sf.gamma(p["a"]),
            "∫₀¹ ln(-ln x) (-ln x)^(a-1) dx = Γ'(a) = ψ(a) Γ(a)",
            "G&R 4.229.4; 4.215.1 differentiated in a",
        ),
        E(
            "4.229.1",
            "integral",
            NO_PARAMS,
            lambda p: unit(1.0, loglog=True),
            lambda p: -EULER,
            "∫₀¹ ln(-ln x) dx = -γ",
            "G&R 4.229.1",
        ),
        E(
            "4.229.3",
            "integral",
            NO_PARAMS,
            lambda p: unit(0.5, loglog=True),
            lambda p: -(EULER + 2.0 * sf.LN2) * SQRT_PI,
            "∫₀¹ ln(-ln x) dx / √(-ln x) = -(γ + 2 ln 2) √π",
            "G&R 4.229.3",
        ),
        E(
            "4.325.11",
            "integral",
            _dom(_pos("mu")),
            lambda p: unit(0.5, p["mu"], loglog=True),
            lambda p: -(EULER + math.log(4.0 * p["mu"])) * math.sqrt(PI / p["mu"]),
            "∫₀¹ ln(-ln x) x^(μ-1) dx / √(-ln x) = -(γ + ln 4μ) √(π/μ)",
            "G&R 4.325.11",
        ),
        E(
            "4.325.12",
            "integral",
            _dom(_exponent("mu"), _pos("nu")),
            lambda p: unit(p["mu"], p["nu"], loglog=True),
            lambda p: sf.gamma(p["mu"]) / p["nu"] ** p["mu"] * (sf.digamma(p["mu"]) - math.log(p["nu"])),
            "∫₀¹ ln(-ln x) (-ln x)^(μ-1) x^(ν-1) dx = Γ(μ)/ν^μ [ψ(μ) - ln ν]",
            "G&R 4.325.12",
        ),
        E(
            "4.325.8",
            "integral",
            _dom(_pos("nu")),
            lambda p: unit(1.0, p["nu"], loglog=True),
            lambda p: -(EULER + math.log(p["nu"])) / p["nu"],
            "∫₀¹ ln(-ln x) x^(ν-1) dx = -(γ + ln ν)/ν",
            "G&R 4.325.8; 4.325.12 at μ = 1",
        ),
    ]


def _log_over_square(power: float) -> Callable[[float, float], float]:
    def f(x: float, d: float) -> float:
        return math.exp(power * math.log(math.log1p(d)) - 2.0 * math.log(x))

    return f


def _section_fake() -> list[IdentityEntry]:
    E = IdentityEntry
    return [
        E(
            "3.461.2",
            "integral",
            _dom(_nat("n"), _pos("p")),
            lambda p: Integral(_power_exp_log(2 * p["n"], p["p"], 2.0, False), _semi(right=PowerExponent(2.0))),
            lambda p: sf.double_factorial(2 * p["n"] - 1) / (2.0 * (2.0 * p["p"]) ** p["n"]) * math.sqrt(PI / p["p"]),
            "∫₀^∞ x^(2n) e^(-p x²) dx = (2n-1)!!/(2 (2p)^n) √(π/p)",
            "G&R 3.461.2; p removable by t = p x²",
        ),
        E(
            "3.461.3",
            "integral",
            _dom(_nat("n"), _pos("p")),
            lambda p: Integral(_power_exp_log(2 * p["n"] + 1, p["p"], 2.0, False), _semi(right=PowerExponent(2.0))),
            lambda p: factorial(p["n"]) / (2.0 * p["p"] ** (p["n"] + 1)),
            "∫₀^∞ x^(2n+1) e^(-p x²) dx = n!/(2 p^(n+1))",
            "G&R 3.461.3; p removable by t = p x²",
        ),
        E(
            "MOLL:gamma8",
            "integral",
            _dom(_nat("n")),
            lambda p: Integral(lambda t: _xpow_exp(t, p["n"] - 0.5, 1.0), _semi(p["n"] - 0.5, Exponential(1.0))),
            lambda p: sf.double_factorial(2 * p["n"] - 1) / 2.0 ** p["n"] * SQRT_PI,
            "∫₀^∞ t^(n-½) e^(-t) dt = (2n-1)!!/2^n √π",
            "3.461.2 with the scale parameter removed",
        ),
        E(
            "3.382.2",
            "integral",
            _dom(_exponent("a"), _pos("mu"), Range("b", sample_lo=-2.0, sample_hi=3.0), derived=True),
            lambda p: Integral(_shifted_gamma(p["a"], p["mu"], p["b"]), _semi(p["a"] - 1, Exponential(p["mu"]), lo=p["b"], offset=True)),
            lambda p: p["mu"] ** -p["a"] * math.exp(-p["mu"] * p["b"]) * sf.gamma(p["a"]),
            "∫_b^∞ (s-b)^(a-1) e^(-sμ) ds = μ^(-a) e^(-μb) Γ(a)",
            "G&R 3.382.2; shift s = t + b",
            note="holds for every real b",
        ),
    ]


def _shifted_gamma(a: float, mu: float, b: float) -> Callable[[float, float], float]:
    def f(s: float, d: float) -> float:
        return math.exp((a - 1.0) * math.log(d) - mu * s)

    return f


def _section_functional() -> list[IdentityEntry]:
    E = IdentityEntry
    return [
        E(
            "FUNC:recurrence",
            "functional",
            _dom(Range("a", 0.0, math.inf, sample_lo=0.01, sample_hi=50.0)),
            lambda p: sf.gamma(p["a"] + 1.0),
            lambda p: p["a"] * sf.gamma(p["a"]),
            "Γ(a+1) = a Γ(a)",
            "recurrence from differentiating the scaled Euler integral in μ",
        ),
        E(
            "FUNC:duplication",
            "functional",
            _dom(Range("x", 0.0, math.inf, sample_lo=0.1, sample_hi=30.0)),
            lambda p: sf.gamma(p["x"] + 0.5),
            lambda p: sf.gamma(2.0 * p["x"]) * SQRT_PI / (sf.gamma(p["x"]) * 2.0 ** (2.0 * p["x"] - 1.0)),
            "Γ(x+½) = Γ(2x) √π / (Γ(x) 2^(2x-1))",
            "Legendre duplication formula",
        ),
        E(
            "FUNC:reflection",
            "functional",
            _dom(Range("mu", 0.0, 1.0)),
            # both factors reached through Γ(z) = Γ(z+1)/z so no reflected value enters
            lambda p: sf.gamma(1.0 + p["mu"]) / p["mu"] * sf.gamma(2.0 - p["mu"]) / (1.0 - p["mu"]) * sf.sinpi(p["mu"]) / PI,
            lambda p: 1.0,
            "Γ(μ) Γ(1-μ) sin(πμ) / π = 1",
            "reflection formula Γ(μ)Γ(1-μ) = π/sin πμ",
        ),
        E(
            "FUNC:gammahalf",
            "functional",
            _dom(_nat("m", 0, 15)),
            lambda p: sf.gamma(p["m"] + 0.5),
            lambda p: SQRT_PI * factorial(2 * p["m"]) / (4.0 ** p["m"] * factorial(p["m"])),
            "Γ(m+½) = √π (2m)! / (2^(2m) m!)",
            "Γ at half-integers from the duplication formula",
        ),
        E(
            "FUNC:derpsi",
            "functional",
            _dom(_nat("n", 1, 6), Range("x", 0.0, math.inf, sample_lo=0.1, sample_hi=20.0)),
            lambda p: sf.polygamma_asymptotic(p["n"], p["x"]),
            lambda p: (-1) ** (p["n"] + 1) * factorial(p["n"]) * sf.hurwitz_zeta(p["n"] + 1, p["x"]),
            "ψ^(n)(x) = (-1)^(n+1) n! ζ(n+1, x)",
            "polygamma through the Hurwitz zeta function (left side from the asymptotic series)",
        ),
        E(
            "FUNC:gamma-deriv-recurrence",
            "functional",
            _dom(_nat("n", 1, 4), _exponent("a")),
            lambda p: sf.gamma_derivative(p["n"], p["a"]),
            lambda p: _explicit_gamma_derivative(p["n"], p["a"]),
            "Γ^(n+1) = Σ_k C(n,k) Γ^(k) ψ^(n-k)  vs the explicit δ/ζ forms at μ = 1",
            "recurrence from Γ' = ψ Γ",
        ),
    ]


_ID_KEY = re.compile(r"(\d+)")


def _natural_key(entry_id: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in _ID_KEY.split(entry_id))


@lru_cache(maxsize=1)
def _catalog() -> tuple[IdentityEntry, ...]:
    items = (
        _section_basic()
        + _section_parameter()
        + _section_derivatives()
        + _section_changes()
        + _section_log_scale()
        + _section_fake()
        + _section_functional()
    )
    ids = [e.id for e in items]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        raise RuntimeError(f"duplicate catalog ids: {sorted(dupes)}")
    return tuple(sorted(items, key=lambda e: _natural_key(e.id)))


def entries() -> list[IdentityEntry]:
    """All catalog entries in natural id order."""
    return list(_catalog())


def entry(entry_id: str) -> IdentityEntry:
    for e in _catalog():
        if e.id == entry_id:
            return e
    ids = [e.id for e in _catalog()]
    raise UnknownEntryError(entry_id, difflib.get_close_matches(entry_id, ids, n=3, cutoff=0.5))


def provenance_table() -> list[dict[str, str]]:
    return [
        {
            "id": e.id,
            "category": e.category,
            "reference": e.provenance,
            "domain": e.domain.describe(),
        }
        for e in _catalog()
    ]
