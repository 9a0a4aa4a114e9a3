"""Numerical verification of catalog identities.

Each record compares the two sides of one identity at one parameter
assignment.  Reports are ordered by catalog id, then sample index, so the
serialized output does not depend on how the work was scheduled.
"""

from __future__ import annotations

import csv
import io
import json
import math
import zlib
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from . import __version__
from . import specfun as sf
from .catalog import (
    IdentityEntry,
    Integral,
    Limit,
    ParameterAssignment,
    entries,
    entry,
    leibniz_scaled_gamma_derivative,
    sample_parameters,
)
from .quadrature import (
    DEFAULT_ABS_TOL,
    DEFAULT_MAX_EVALS,
    DEFAULT_REL_TOL,
    NonFiniteSampleError,
    finite_difference_derivative,
    integrate,
)

STATUSES = ("pass", "fail", "quad_no_converge", "skipped")

# approach sequence for limit entries, extrapolated before comparison
LIMIT_SEQUENCE = (1e-2, 1e-3, 1e-4)

# share of the allowed comparison error a quadrature estimate may use
ESTIMATE_SHARE = 0.1


class OutOfDomainError(ValueError):
    pass


@dataclass(frozen=True)
class ToleranceConfig:
    rel_pass: float = 1e-8
    abs_floor: float = 1e-10
    quad_abs: float = DEFAULT_ABS_TOL
    quad_rel: float = DEFAULT_REL_TOL
    quad_budget: int = DEFAULT_MAX_EVALS

    def __post_init__(self) -> None:
        for name in ("rel_pass", "abs_floor", "quad_abs", "quad_rel"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.quad_budget < 1:
            raise ValueError("quad_budget must be positive")
        if self.quad_abs * 10 > self.abs_floor or self.quad_rel * 10 > self.rel_pass:
            raise ValueError("quadrature tolerances must be at least 10x tighter than the pass tolerances")

    def allowed(self, rhs: float) -> float:
        return max(self.abs_floor, self.rel_pass * abs(rhs))

    def as_dict(self) -> dict:
        return {
            "rel_pass": self.rel_pass,
            "abs_floor": self.abs_floor,
            "quad_abs": self.quad_abs,
            "quad_rel": self.quad_rel,
            "quad_budget": self.quad_budget,
        }

    def with_pass(self, rel_pass: float | None = None, abs_floor: float | None = None) -> ToleranceConfig:
        """Change the pass thresholds, tightening quadrature to keep the 10x gap."""
        rel = self.rel_pass if rel_pass is None else rel_pass
        floor = self.abs_floor if abs_floor is None else abs_floor
        return replace(
            self,
            rel_pass=rel,
            abs_floor=floor,
            quad_rel=min(self.quad_rel, rel / 10),
            quad_abs=min(self.quad_abs, floor / 10),
        )


@dataclass(frozen=True)
class VerificationRecord:
    entry_id: str
    params: ParameterAssignment
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    status: str
    evaluations: int
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "id": self.entry_id,
            "params": dict(self.params),
            "lhs": _json_number(self.lhs),
            "rhs": _json_number(self.rhs),
            "abs_err": _json_number(self.abs_err),
            "rel_err": _json_number(self.rel_err),
            "status": self.status,
            "evaluations": self.evaluations,
        }


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    tolerances: ToleranceConfig
    records: tuple[VerificationRecord, ...]
    version: str = __version__
    summary: dict[str, int] = field(init=False)

    def __post_init__(self) -> None:
        counts = {s: 0 for s in STATUSES}
        for r in self.records:
            counts[r.status] += 1
        object.__setattr__(self, "summary", counts)

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "seed": self.seed,
            "tolerances": self.tolerances.as_dict(),
            "records": [r.as_dict() for r in self.records],
            "summary": dict(self.summary),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "param_json", "lhs", "rhs", "abs_err", "rel_err", "status", "evaluations"])
        for r in self.records:
            writer.writerow(
                [
                    r.entry_id,
                    json.dumps(dict(r.params), sort_keys=False),
                    repr(r.lhs),
                    repr(r.rhs),
                    repr(r.abs_err),
                    repr(r.rel_err),
                    r.status,
                    r.evaluations,
                ]
            )
        return buf.getvalue()


def _json_number(x: float) -> float | None:
    return x if math.isfinite(x) else None


# --- single records ---------------------------------------------------------


@dataclass
class _Side:
    value: float
    evaluations: int = 0
    converged: bool = True
    error_estimate: float = 0.0


def _evaluate(side, tol: ToleranceConfig) -> _Side:
    if isinstance(side, Integral):
        res = integrate(side.integrand, side.spec, tol.quad_abs, tol.quad_rel, tol.quad_budget)
        return _Side(res.value, res.evaluations, res.converged, res.error_estimate)
    if isinstance(side, Limit):
        return _Side(richardson_limit(side.approach, LIMIT_SEQUENCE))
    return _Side(float(side))


def richardson_limit(g, sequence: Sequence[float] = LIMIT_SEQUENCE) -> float:
    """Limit of g(t) as t -> 0 from samples on a geometric sequence.

    Neville extrapolation to t = 0 of the polynomial through the samples,
    which removes the c1 t, c2 t^2, ... terms of g(t) = L + c1 t + ...
    """
    ts = list(sequence)
    if len(ts) < 2:
        return g(ts[0])
    table = [g(t) for t in ts]
    for order in range(1, len(ts)):
        nxt = []
        for i in range(len(table) - 1):
            ratio = ts[i] / ts[i + order]
            nxt.append((ratio * table[i + 1] - table[i]) / (ratio - 1.0))
        table = nxt
    return table[0]


def verify_entry(
    item: IdentityEntry, params: Mapping[str, float], tol: ToleranceConfig | None = None
) -> VerificationRecord:
    """Evaluate both sides of ``item`` at ``params`` and classify the result.

    Raises :class:`OutOfDomainError` when ``params`` is not in the entry's
    domain; every numerical failure becomes a record status instead.
    """
    tol = tol or ToleranceConfig()
    params = params if isinstance(params, ParameterAssignment) else ParameterAssignment(params)
    problems = item.domain.violations(params)
    if problems:
        raise OutOfDomainError(f"{item.id}: " + "; ".join(problems))

    def record(lhs, rhs, status, evaluations, detail=""):
        abs_err = abs(lhs - rhs) if math.isfinite(lhs) and math.isfinite(rhs) else math.nan
        if rhs != 0 and math.isfinite(abs_err):
            rel_err = abs_err / abs(rhs)
        else:
            rel_err = 0.0 if abs_err == 0 else math.inf
        if not math.isfinite(abs_err):
            rel_err = math.nan
        return VerificationRecord(item.id, params, lhs, rhs, abs_err, rel_err, status, evaluations, detail)

    try:
        left = _evaluate(item.lhs(params), tol)
        right = _evaluate(item.rhs(params), tol)
    except OverflowError as exc:
        return record(math.nan, math.nan, "skipped", 0, f"overflow: {exc}")
    except (NonFiniteSampleError, ArithmeticError, ValueError) as exc:
        return record(math.nan, math.nan, "fail", 0, f"{type(exc).__name__}: {exc}")

    evaluations = left.evaluations + right.evaluations
    lhs, rhs = left.value, right.value
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return record(lhs, rhs, "fail", evaluations, "non-finite side")
    allowed = tol.allowed(rhs)
    if not (left.converged and right.converged):
        return record(lhs, rhs, "quad_no_converge", evaluations, "budget exhausted")
    if max(left.error_estimate, right.error_estimate) > ESTIMATE_SHARE * allowed:
        return record(lhs, rhs, "quad_no_converge", evaluations, "error estimate too large for the comparison")
    status = "pass" if abs(lhs - rhs) <= allowed else "fail"
    return record(lhs, rhs, status, evaluations)


# --- whole-catalog runs -----------------------------------------------------


def entry_seed(seed: int, entry_id: str) -> int:
    """Per-entry seed so adding an entry does not reshuffle the others."""
    return zlib.crc32(f"{seed}:{entry_id}".encode())


def planned_samples(item: IdentityEntry, seed: int, count: int) -> list[ParameterAssignment]:
    if not item.domain.symbols:
        # nothing to sample; one record stands for the entry
        return [ParameterAssignment()] * count
    return sample_parameters(item.domain, entry_seed(seed, item.id), count)


def _verify_task(args: tuple[str, dict, ToleranceConfig]) -> VerificationRecord:
    entry_id, values, tol = args
    return verify_entry(entry(entry_id), values, tol)


def verify_all(
    seed: int,
    samples_per_entry: int,
    tol: ToleranceConfig | None = None,
    ids: Iterable[str] | None = None,
    workers: int = 1,
) -> VerificationReport:
    if samples_per_entry < 1:
        raise ValueError("samples_per_entry must be >= 1")
    tol = tol or ToleranceConfig()
    chosen = entries() if ids is None else [entry(i) for i in dict.fromkeys(ids)]
    order = {e.id: i for i, e in enumerate(entries())}
    chosen = sorted(chosen, key=lambda e: order[e.id])
    tasks = [
        (item.id, dict(p), tol)
        for item in chosen
        for p in planned_samples(item, seed, samples_per_entry)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves task order, so the merge is deterministic
            records = list(pool.map(_verify_task, tasks, chunksize=8))
    else:
        records = [_verify_task(t) for t in tasks]
    return VerificationReport(seed, tol, tuple(records))


# --- independent derivative check -------------------------------------------

DERIVATIVE_GRID_A = (0.5, 1.0, 2.5, 4.0)
DERIVATIVE_GRID_MU = (0.5, 1.0, 2.0, 5.0)
DERIVATIVE_REL_TOL = 1e-4


def cross_check_derivative_formulas(tol: ToleranceConfig | None = None) -> VerificationReport:
    """Finite differences of mu**-a Gamma(a) against the 4.358.5 closed form.

    The left side only calls :func:`grv.specfun.gamma`, so it does not share
    code with the derivative recurrence used on the right.
    """
    base = tol or ToleranceConfig()
    tol = base.with_pass(rel_pass=max(base.rel_pass, DERIVATIVE_REL_TOL))
    records = []
    for n in (1, 2):
        for a in DERIVATIVE_GRID_A:
            for mu in DERIVATIVE_GRID_MU:
                params = ParameterAssignment(n=n, a=a, mu=mu)
                g = lambda x, mu=mu: mu**-x * sf.gamma(x)
                try:
                    lhs = finite_difference_derivative(g, a, order=n)
                    rhs = leibniz_scaled_gamma_derivative(n, a, mu)
                except (ArithmeticError, ValueError) as exc:
                    records.append(
                        VerificationRecord("4.358.5#fd", params, math.nan, math.nan, math.nan, math.nan, "fail", 0, str(exc))
                    )
                    continue
                abs_err = abs(lhs - rhs)
                rel_err = abs_err / abs(rhs) if rhs else (0.0 if abs_err == 0 else math.inf)
                status = "pass" if abs_err <= tol.allowed(rhs) else "fail"
                records.append(VerificationRecord("4.358.5#fd", params, lhs, rhs, abs_err, rel_err, status, 0))
    return VerificationReport(0, tol, tuple(records))
