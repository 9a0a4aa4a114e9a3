"""Double-exponential quadrature for the integrals in the catalog.

Finite intervals use tanh-sinh, half-lines exp-sinh and the real line
sinh-sinh.  Level L uses step 2**-(L+1) in the transformed variable.  Each
run starts at level 1, fixes the truncation window from that level, then halves the
step until two successive levels agree.

Integrands are plain ``f(x) -> float``.  With ``IntegralSpec.with_offset``
they are called as ``f(x, d)`` where ``d`` is the signed distance to the
nearest finite endpoint (``x - lo`` or ``x - hi``), exact even where ``x``
itself has rounded onto the endpoint.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Union

DEFAULT_ABS_TOL = 1e-12
DEFAULT_REL_TOL = 1e-11
DEFAULT_MAX_EVALS = 200_000

MIN_LEVEL = 1
MAX_LEVEL = 12
# first level at which two successive estimates are compared
_FIRST_CHECK_LEVEL = 2

# nodes nearer a finite endpoint than this are dropped
_CLIP = 1e-300
_FAR = 1e300
# truncation: a side stops after two consecutive terms this small (relative)
_NEGLIGIBLE = 1e-20

_HALF_PI = 0.5 * math.pi


class NonFiniteSampleError(ArithmeticError):
    """The integrand produced NaN/inf (or raised) at an interior node."""

    def __init__(self, x: float, detail: str = "") -> None:
        self.x = x
        msg = f"integrand is not finite at x = {x!r}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


# --- interval taxonomy ------------------------------------------------------


@dataclass(frozen=True)
class FiniteOpen:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("FiniteOpen bounds must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"FiniteOpen needs lo < hi, got ({self.lo}, {self.hi})")


@dataclass(frozen=True)
class SemiInfinite:
    lo: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.lo):
            raise ValueError("SemiInfinite lower bound must be finite")


@dataclass(frozen=True)
class FullLine:
    pass


IntervalKind = Union[FiniteOpen, SemiInfinite, FullLine]


# --- endpoint descriptors ---------------------------------------------------


@dataclass(frozen=True)
class Algebraic:
    """Behaves like |x - endpoint|**exponent (left) or x**exponent (right)."""

    exponent: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.exponent):
            raise ValueError("algebraic exponent must be finite")


@dataclass(frozen=True)
class LogPower:
    """Behaves like (-ln x)**power near the left endpoint."""

    power: float


@dataclass(frozen=True)
class Exponential:
    rate: float

    def __post_init__(self) -> None:
        if not self.rate > 0:
            raise ValueError("exponential decay rate must be positive")


@dataclass(frozen=True)
class PowerExponent:
    """Decay like exp(-c x**b)."""

    b: float

    def __post_init__(self) -> None:
        if not self.b > 0:
            raise ValueError("power in the exponent must be positive")


@dataclass(frozen=True)
class DoubleExponential:
    """Decay like exp(-e**x)."""


LeftHint = Union[Algebraic, LogPower, None]
RightHint = Union[Algebraic, Exponential, PowerExponent, DoubleExponential, None]


@dataclass(frozen=True)
class EndpointHint:
    left: LeftHint = None
    right: RightHint = None

    def __post_init__(self) -> None:
        if isinstance(self.left, Algebraic) and not self.left.exponent > -1:
            raise ValueError("left algebraic exponent must exceed -1 to be integrable")


@dataclass(frozen=True)
class IntegralSpec:
    interval: IntervalKind
    hint: EndpointHint = field(default_factory=EndpointHint)
    with_offset: bool = False
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        bps = tuple(float(b) for b in self.breakpoints)
        if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        iv = self.interval
        if isinstance(iv, FiniteOpen) and any(not iv.lo < b < iv.hi for b in bps):
            raise ValueError("breakpoints must lie inside the interval")
        if isinstance(iv, SemiInfinite) and any(b <= iv.lo for b in bps):
            raise ValueError("breakpoints must lie inside the interval")
        if bps and isinstance(self.hint.right, DoubleExponential):
            raise ValueError("breakpoints cannot be combined with a double-exponential pre-map")
        object.__setattr__(self, "breakpoints", bps)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool
    # (level, estimate, error estimate) per completed level, summed over pieces
    levels: tuple[tuple[int, float, float], ...] = ()


# --- abscissa tables --------------------------------------------------------
#
# Each table entry is (t, a, w) for the canonical map:
#   tanh-sinh: a = 1 - tanh|s| (distance to the nearer of -1/+1),
#              w = d x / d t on (-1, 1)
#   exp-sinh:  a = exp(s),  w = d a / d t
#   sinh-sinh: a = sinh(s), w = d a / d t
# with s = (pi/2) sinh t.  Level 1 holds every node k/4; level L > 1 only the
# odd multiples of level_step(L), i.e. the nodes new at that level.


def _tanh_sinh_node(t: float) -> tuple[float, float, float] | None:
    s = _HALF_PI * math.sinh(t)
    e = math.exp(-2.0 * abs(s))
    comp = 2.0 * e / (1.0 + e)
    if comp < _CLIP:
        return None
    sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e))
    return (t, comp, _HALF_PI * math.cosh(t) * sech2)


def _exp_sinh_node(t: float) -> tuple[float, float, float] | None:
    s = _HALF_PI * math.sinh(t)
    if abs(s) > 690.0:
        return None
    u = math.exp(s)
    if not (_CLIP <= u <= _FAR):
        return None
    return (t, u, _HALF_PI * math.cosh(t) * u)


def _sinh_sinh_node(t: float) -> tuple[float, float, float] | None:
    s = _HALF_PI * math.sinh(t)
    if abs(s) > 690.0:
        return None
    x = math.sinh(s)
    if abs(x) > _FAR:
        return None
    return (t, x, _HALF_PI * math.cosh(t) * math.cosh(s))


_NODE_MAKERS = {
    "tanh_sinh": (_tanh_sinh_node, 6.6),
    "exp_sinh": (_exp_sinh_node, 7.0),
    "sinh_sinh": (_sinh_sinh_node, 7.0),
}


def level_step(level: int) -> float:
    """Trapezoid step in the transformed variable at ``level``."""
    return 2.0 ** -(level + 1)


@lru_cache(maxsize=None)
def abscissae(rule: str, level: int) -> tuple[tuple[float, float, float], ...]:
    """Node table for ``rule`` at ``level`` (cached, immutable)."""
    if not MIN_LEVEL <= level <= MAX_LEVEL:
        raise ValueError(f"level must be in [{MIN_LEVEL}, {MAX_LEVEL}]")
    make, tmax = _NODE_MAKERS[rule]
    h = level_step(level)
    kmax = int(tmax / h)
    nodes = []
    for k in range(-kmax, kmax + 1):
        if level > MIN_LEVEL and k % 2 == 0:
            continue
        node = make(k * h)
        if node is not None:
            nodes.append(node)
    return tuple(nodes)


# --- pieces ----------------------------------------------------------------


class _Piece:
    """One sub-integral handled by a single transform.

    ``point(t, a, w)`` turns a canonical node into (x, offset, weight) or
    None when the node must be dropped.
    """

    rule: str

    def point(self, a: float, w: float, t: float) -> tuple[float, float, float] | None:
        raise NotImplementedError


class _Finite(_Piece):
    rule = "tanh_sinh"

    def __init__(self, lo: float, hi: float, keep_rounded: bool) -> None:
        self.lo, self.hi = lo, hi
        self.half = 0.5 * (hi - lo)
        self.keep_rounded = keep_rounded

    def point(self, a, w, t):
        d = self.half * a
        if d < _CLIP:
            return None
        if t > 0:
            x, off = self.hi - d, -d
            if x >= self.hi and not self.keep_rounded:
                return None
        else:
            x, off = self.lo + d, d
            if x <= self.lo and not self.keep_rounded:
                return None
        return x, off, self.half * w


class _HalfLine(_Piece):
    """(lo, inf) or, with ``sign = -1``, (-inf, lo)."""

    rule = "exp_sinh"

    def __init__(self, lo: float, sign: float, keep_rounded: bool, power: float | None = None,
                 log_map: bool = False) -> None:
        self.lo = lo
        self.sign = sign
        self.keep_rounded = keep_rounded
        self.power = power
        self.log_map = log_map

    def point(self, a, w, t):
        if self.power is not None:
            # x - lo = v**(1/b)
            inv = 1.0 / self.power
            d = a**inv
            w = w * inv * d / a
        elif self.log_map:
            # x - lo = log(1 + v)
            d = math.log1p(a)
            w = w / (1.0 + a)
        else:
            d = a
        if not (_CLIP <= d <= _FAR):
            return None
        x = self.lo + self.sign * d
        if x == self.lo and not self.keep_rounded:
            return None
        return x, self.sign * d, w


class _LogLine(_Piece):
    """Real line through x = log(v), v on (0, inf): for exp(-e**x) decay."""

    rule = "exp_sinh"

    def point(self, a, w, t):
        return math.log(a), math.inf, w / a


class _Line(_Piece):
    rule = "sinh_sinh"

    def point(self, a, w, t):
        return a, math.inf, w


def _pieces(spec: IntegralSpec) -> list[_Piece]:
    iv = spec.interval
    keep = spec.with_offset
    right = spec.hint.right
    bps = spec.breakpoints
    if isinstance(iv, FiniteOpen):
        edges = (iv.lo, *bps, iv.hi)
        return [_Finite(lo, hi, keep) for lo, hi in zip(edges, edges[1:])]
    if isinstance(iv, SemiInfinite):
        edges = (iv.lo, *bps)
        pieces: list[_Piece] = [_Finite(lo, hi, keep) for lo, hi in zip(edges, edges[1:])]
        power = right.b if isinstance(right, PowerExponent) and right.b < 1 and not bps else None
        log_map = isinstance(right, DoubleExponential)
        pieces.append(_HalfLine(edges[-1], 1.0, keep, power=power, log_map=log_map))
        return pieces
    if isinstance(right, DoubleExponential):
        return [_LogLine()]
    if not bps:
        return [_Line()]
    pieces = [_HalfLine(bps[0], -1.0, keep)]
    pieces += [_Finite(lo, hi, keep) for lo, hi in zip(bps, bps[1:])]
    pieces.append(_HalfLine(bps[-1], 1.0, keep))
    return pieces


# --- driver -----------------------------------------------------------------


class _Exhausted(Exception):
    pass


class _Budget:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.used = 0

    def take(self) -> bool:
        if self.used >= self.limit:
            return False
        self.used += 1
        return True


def _sample(f: Callable, x: float, off: float, with_offset: bool) -> float:
    try:
        y = f(x, off) if with_offset else f(x)
    except (OverflowError, ZeroDivisionError, ValueError) as exc:
        raise NonFiniteSampleError(x, f"{type(exc).__name__}: {exc}") from exc
    y = float(y)
    if not math.isfinite(y):
        raise NonFiniteSampleError(x, repr(y))
    return y


class _PieceRun:
    """Level-by-level state of one piece."""

    def __init__(self, piece: _Piece, f: Callable, with_offset: bool) -> None:
        self.piece = piece
        self.f = f
        self.with_offset = with_offset
        self.t_lo = -math.inf
        self.t_hi = math.inf
        self.estimate = 0.0

    def _term(self, node, budget: _Budget) -> float | None:
        """Weighted sample at ``node``; None if dropped.  Raises _Exhausted."""
        t, a, w = node
        pt = self.piece.point(a, w, t)
        if pt is None:
            return None
        if not budget.take():
            raise _Exhausted
        x, off, wx = pt
        return wx * _sample(self.f, x, off, self.with_offset)

    def first_level(self, budget: _Budget) -> bool:
        """Walk outward from t = 0 at level 1, fixing the truncation window."""
        try:
            self._walk(budget)
        except _Exhausted:
            return False
        return True

    def _walk(self, budget: _Budget) -> None:
        nodes = abscissae(self.piece.rule, MIN_LEVEL)
        centre = min(range(len(nodes)), key=lambda i: abs(nodes[i][0]))
        terms: list[float] = []
        biggest = 0.0
        y = self._term(nodes[centre], budget)
        if y is not None:
            terms.append(y)
            biggest = abs(y)
        for direction in (1, -1):
            quiet = 0
            i = centre + direction
            last_t = nodes[centre][0]
            while 0 <= i < len(nodes):
                y = self._term(nodes[i], budget)
                last_t = nodes[i][0]
                if y is not None:
                    terms.append(y)
                    biggest = max(biggest, abs(y))
                    quiet = quiet + 1 if biggest > 0 and abs(y) <= _NEGLIGIBLE * biggest else 0
                    if quiet >= 2:
                        break
                i += direction
            if direction == 1:
                self.t_hi = last_t if 0 <= i < len(nodes) else math.inf
            else:
                self.t_lo = last_t if 0 <= i < len(nodes) else -math.inf
        self.estimate = level_step(MIN_LEVEL) * math.fsum(terms)

    def new_nodes(self, level: int):
        return [n for n in abscissae(self.piece.rule, level) if self.t_lo < n[0] < self.t_hi]

    def refine(self, level: int, budget: _Budget) -> bool:
        nodes = self.new_nodes(level)
        if budget.used + len(nodes) > budget.limit:
            return False
        terms = []
        for node in nodes:
            y = self._term(node, budget)
            if y is not None:
                terms.append(y)
        self.estimate = 0.5 * self.estimate + level_step(level) * math.fsum(terms)
        return True


def integrate(
    f: Callable[..., float],
    spec: IntegralSpec,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    max_evals: int = DEFAULT_MAX_EVALS,
) -> QuadratureResult:
    """Integrate ``f`` over ``spec.interval``.

    Returns the best estimate even when the budget runs out first, with
    ``converged=False``.  Raises :class:`NonFiniteSampleError` if ``f`` is
    not finite at a node that is kept.
    """
    if not (abs_tol > 0 and rel_tol > 0):
        raise ValueError("tolerances must be positive")
    if max_evals < 1:
        raise ValueError("max_evals must be positive")
    budget = _Budget(int(max_evals))
    runs = [_PieceRun(p, f, spec.with_offset) for p in _pieces(spec)]

    for run in runs:
        if not run.first_level(budget):
            return QuadratureResult(_total(runs), math.inf, max(budget.used, 1), False)

    levels = [(MIN_LEVEL, _total(runs), math.inf)]
    previous = levels[0][1]
    for level in range(MIN_LEVEL + 1, MAX_LEVEL + 1):
        for run in runs:
            if not run.refine(level, budget):
                value, err = levels[-1][1], levels[-1][2]
                return QuadratureResult(value, err, budget.used, False, tuple(levels))
        value = _total(runs)
        err = abs(value - previous)
        levels.append((level, value, err))
        previous = value
        if level >= _FIRST_CHECK_LEVEL and err <= max(abs_tol, rel_tol * abs(value)):
            return QuadratureResult(value, err, budget.used, True, tuple(levels))
    return QuadratureResult(levels[-1][1], levels[-1][2], budget.used, False, tuple(levels))


def _total(runs: list[_PieceRun]) -> float:
    return math.fsum(r.estimate for r in runs)


def integrate_at_level(f: Callable[..., float], spec: IntegralSpec, level: int) -> float:
    """Fixed-level estimate, no convergence test (diagnostics and tests)."""
    runs = [_PieceRun(p, f, spec.with_offset) for p in _pieces(spec)]
    budget = _Budget(sys.maxsize)
    for run in runs:
        run.first_level(budget)
        for lev in range(MIN_LEVEL + 1, level + 1):
            run.refine(lev, budget)
    return _total(runs)


def finite_difference_derivative(
    g: Callable[[float], float], a: float, order: int = 1, step: float | None = None
) -> float:
    """Central difference for g' or g'' at ``a`` with one Richardson pass."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    eps = sys.float_info.epsilon
    if step is None:
        step = eps ** (1.0 / 3.0 if order == 1 else 0.25) * max(1.0, abs(a))
    if not step > 0:
        raise ValueError("step must be positive")

    def value(x: float) -> float:
        try:
            y = float(g(x))
        except (OverflowError, ZeroDivisionError, ValueError) as exc:
            raise NonFiniteSampleError(x, f"{type(exc).__name__}: {exc}") from exc
        if not math.isfinite(y):
            raise NonFiniteSampleError(x, repr(y))
        return y

    if order == 1:
        def diff(h: float) -> float:
            return (value(a + h) - value(a - h)) / (2.0 * h)
    else:
        centre = value(a)

        def diff(h: float) -> float:
            return (value(a + h) - 2.0 * centre + value(a - h)) / (h * h)

    return (4.0 * diff(0.5 * step) - diff(step)) / 3.0
