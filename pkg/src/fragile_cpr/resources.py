"""Closed families of failure-probability and rate-of-return functions.

Each family carries exact analytic first and second derivatives, so the
solvers and bound computations downstream never touch numerical
differentiation.  Failure probabilities live on [0, 1] and are clamped to 1
for total investment at or above 1 (certain failure).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EQUALITY_TOL = 1e-9
DEFAULT_GRID_N = 1000


class DomainError(ValueError):
    """Evaluation outside a function's valid domain, or invalid parameters."""


def _check_unit_interval(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x={x!r} outside [0, 1]")


# ---------------------------------------------------------------------------
# Failure probability families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerLaw:
    """Failure probability p(x) = x**gamma with gamma >= 1."""

    gamma: float

    def eval(self, x: float) -> tuple[float, float, float]:
        """Return (p, p', p'') at x in [0, 1]."""
        _check_unit_interval(x)
        g = self.gamma
        if x == 0.0:
            d1 = 1.0 if g == 1.0 else 0.0
            if g == 1.0 or g >= 2.0:
                d2 = 2.0 if g == 2.0 else 0.0
            else:
                d2 = math.inf  # limit of g(g-1)x^(g-2) as x -> 0 for 1 < g < 2
            return 0.0, d1, d2
        u = x ** g
        return u, g * u / x, g * (g - 1.0) * u / (x * x)

    def value(self, x):
        """Vectorised p(x) with the certain-failure clamp for x >= 1."""
        return np.minimum(np.asarray(x, dtype=float), 1.0) ** self.gamma

    @property
    def degree(self) -> float:
        return self.gamma

    def structural_issues(self) -> list[str]:
        if not self.gamma >= 1.0:
            return [f"failure.gamma: must be >= 1, got {self.gamma}"]
        return []


@dataclass(frozen=True)
class Polynomial:
    """Failure probability p(x) = sum_j coeffs[j] * x**j.

    Coefficients are in ascending degree order, must be nonnegative and sum
    to 1 so that p(1) = 1 exactly.
    """

    coeffs: tuple[float, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in coeffs))

    def eval(self, x: float) -> tuple[float, float, float]:
        """Return (p, p', p'') at x in [0, 1] via a Horner recurrence."""
        _check_unit_interval(x)
        p = dp = d2p = 0.0
        for c in reversed(self.coeffs):
            d2p = d2p * x + 2.0 * dp
            dp = dp * x + p
            p = p * x + c
        return p, dp, d2p

    def value(self, x):
        xc = np.minimum(np.asarray(x, dtype=float), 1.0)
        return np.polyval(self.coeffs[::-1], xc)

    @property
    def degree(self) -> int:
        deg = 0
        for j, c in enumerate(self.coeffs):
            if c > 0.0:
                deg = j
        return deg

    def structural_issues(self) -> list[str]:
        issues = []
        if not self.coeffs:
            return ["failure.coeffs: must be nonempty"]
        if any(c < 0.0 for c in self.coeffs):
            issues.append("failure.coeffs: all coefficients must be >= 0")
        if not any(c > 0.0 for c in self.coeffs[1:]):
            issues.append("failure.coeffs: needs a positive coefficient of positive degree")
        total = math.fsum(self.coeffs)
        if abs(total - 1.0) > EQUALITY_TOL:
            issues.append(f"failure.coeffs: must sum to 1 so p(1)=1, got {total}")
        return issues


# ---------------------------------------------------------------------------
# Rate-of-return families
# ---------------------------------------------------------------------------
#
# Two modes exist.  In "r-mode" the raw rate of return r(x) is stored and the
# player-facing form is rbar(x) = (r(x) - 1)**alpha, so rbar depends on the
# player's sensitivity alpha.  In direct mode (DirectRbar) rbar itself is
# given and alpha is ignored for evaluation; games using it must share one
# alpha because the per-player decomposition is undefined.

@dataclass(frozen=True)
class Affine:
    """Rate of return r(x) = c0 + c1*x; needs r > 1 on [0, 1]."""

    c0: float
    c1: float

    @property
    def trend(self) -> str:
        if self.c1 < 0.0:
            return "decreasing"
        if self.c1 > 0.0:
            return "increasing"
        return "constant"

    def rbar(self, alpha: float, x: float) -> tuple[float, float, float]:
        s = self.c0 - 1.0 + self.c1 * x
        if s <= 0.0:
            raise DomainError(f"r(x)={s + 1.0} <= 1 at x={x}; excess return undefined")
        if alpha == 1.0:
            return s, self.c1, 0.0
        v = s ** alpha
        d1 = alpha * self.c1 * v / s
        return v, d1, (alpha - 1.0) * self.c1 * d1 / s

    def rbar_value(self, alpha, x):
        s = self.c0 - 1.0 + self.c1 * np.asarray(x, dtype=float)
        return np.maximum(s, 0.0) ** alpha

    def structural_issues(self) -> list[str]:
        issues = []
        if not self.c0 > 1.0:
            issues.append(f"rate.c0: r(0) = {self.c0} must exceed the safe return 1")
        if not self.c0 + self.c1 > 1.0:
            issues.append(f"rate.c1: r(1) = {self.c0 + self.c1} must exceed the safe return 1")
        return issues


@dataclass(frozen=True)
class Constant:
    """Rate of return r(x) = 1 + b with b > 0."""

    b: float

    trend = "constant"

    def rbar(self, alpha: float, x: float) -> tuple[float, float, float]:
        if self.b <= 0.0:
            raise DomainError(f"r(x)={1.0 + self.b} <= 1; excess return undefined")
        return self.b ** alpha, 0.0, 0.0

    def rbar_value(self, alpha, x):
        return np.full(np.shape(np.asarray(x, dtype=float)), self.b ** alpha)

    def structural_issues(self) -> list[str]:
        if not self.b > 0.0:
            return [f"rate.b: must be > 0, got {self.b}"]
        return []


@dataclass(frozen=True)
class AffineRbar:
    """Directly-specified rbar(x) = a*x + b."""

    a: float
    b: float

    @property
    def trend(self) -> str:
        if self.a < 0.0:
            return "decreasing"
        if self.a > 0.0:
            return "increasing"
        return "constant"

    def eval(self, x: float) -> tuple[float, float, float]:
        return self.a * x + self.b, self.a, 0.0

    def value(self, x):
        return self.a * np.asarray(x, dtype=float) + self.b

    def structural_issues(self) -> list[str]:
        # A zero exactly at x = 1 is tolerated: equilibrium totals stay
        # strictly below 1, so only positivity on [0, 1) is load-bearing.
        issues = []
        if not self.b > 0.0:
            issues.append(f"rate.b: rbar(0) = {self.b} must be > 0")
        if not self.a + self.b >= 0.0:
            issues.append(f"rate.a: rbar(1) = {self.a + self.b} must be >= 0")
        return issues


@dataclass(frozen=True)
class PowerShift:
    """Directly-specified rbar(x) = (x + c)**e with c >= 0 and e in (0, 1]."""

    c: float
    e: float

    trend = "increasing"

    def eval(self, x: float) -> tuple[float, float, float]:
        s = x + self.c
        if s <= 0.0:
            raise DomainError(f"rbar undefined at x={x} (x + c = {s})")
        v = s ** self.e
        d1 = self.e * v / s
        return v, d1, (self.e - 1.0) * d1 / s

    def value(self, x):
        return (np.asarray(x, dtype=float) + self.c) ** self.e

    def structural_issues(self) -> list[str]:
        issues = []
        if self.c < 0.0:
            issues.append(f"rate.c: must be >= 0, got {self.c}")
        if self.c == 0.0:
            issues.append("rate.c: must be > 0 so rbar(0) > 0")
        if not 0.0 < self.e <= 1.0:
            issues.append(f"rate.e: must lie in (0, 1], got {self.e}")
        return issues


@dataclass(frozen=True)
class DirectRbar:
    """Rate of return given directly as rbar; alpha is ignored on evaluation."""

    family: AffineRbar | PowerShift

    @property
    def trend(self) -> str:
        return self.family.trend

    def rbar(self, alpha: float, x: float) -> tuple[float, float, float]:
        return self.family.eval(x)

    def rbar_value(self, alpha, x):
        return self.family.value(x)

    def structural_issues(self) -> list[str]:
        return self.family.structural_issues()


FailureProb = PowerLaw | Polynomial
RateOfReturn = Affine | Constant | DirectRbar


# ---------------------------------------------------------------------------
# Spec-level operations
# ---------------------------------------------------------------------------

def eval_p(p: FailureProb, x: float) -> tuple[float, float, float]:
    """Value and first two derivatives of the failure probability at x."""
    return p.eval(x)


def eval_rbar(r: RateOfReturn, alpha: float, x: float) -> tuple[float, float, float]:
    """Value and first two derivatives of the excess-return form rbar at x."""
    return r.rbar(alpha, x)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    first_violation: float | None = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            where = "" if c.first_violation is None else f" at x={c.first_violation:.6g}"
            detail = f" ({c.detail})" if c.detail else ""
            lines.append(f"{status}: {c.name}{where}{detail}")
        return "\n".join(lines)


def validate_assumption1(r: RateOfReturn, p: FailureProb, grid_n: int = DEFAULT_GRID_N,
                         tol: float = EQUALITY_TOL) -> ValidationReport:
    """Check the structural requirements on (r, p) over a uniform grid in [0, 1).

    Verifies that p is strictly increasing and convex with p(1) = 1, and that
    rbar is positive, monotone of a single sign, and concave.  Failures are
    reported, never raised.
    """
    if grid_n < 100:
        raise ValueError(f"grid_n must be >= 100, got {grid_n}")
    checks: list[CheckResult] = []

    for issue in p.structural_issues():
        checks.append(CheckResult("failure_structure", False, issue))
    for issue in r.structural_issues():
        checks.append(CheckResult("rate_structure", False, issue))

    xs = [i / grid_n for i in range(grid_n)]

    def grid_check(name, points, fn, predicate, detail):
        for x in points:
            try:
                values = fn(x)
            except DomainError as exc:
                checks.append(CheckResult(name, False, str(exc), x))
                return
            if not predicate(values):
                checks.append(CheckResult(name, False, detail, x))
                return
        checks.append(CheckResult(name, True))

    grid_check("p_strictly_increasing", [x for x in xs if x > 0.0], p.eval,
               lambda v: v[1] > 0.0, "p'(x) > 0 required on (0, 1)")
    grid_check("p_convex", xs, p.eval,
               lambda v: v[2] >= -tol, "p''(x) >= 0 required on [0, 1)")

    p1 = p.eval(1.0)[0]
    checks.append(CheckResult("p_certain_failure_at_1", abs(p1 - 1.0) <= tol,
                              "" if abs(p1 - 1.0) <= tol else f"p(1) = {p1} != 1", None))

    # rbar checked at alpha = 1; (r-1)**alpha inherits positivity, monotone
    # direction and concavity from r - 1 for every alpha in (0, 1].
    grid_check("rbar_positive", xs, lambda x: r.rbar(1.0, x),
               lambda v: v[0] > 0.0, "rbar(x) > 0 required on [0, 1) (r(x) > 1 in r-mode)")
    try:
        rbar_end_ok = r.rbar(1.0, 1.0)[0] >= 0.0
    except DomainError:
        rbar_end_ok = False
    checks.append(CheckResult("rbar_nonnegative_at_1", rbar_end_ok,
                              "" if rbar_end_ok else "rbar(1) >= 0 required", None))
    grid_check("rbar_concave", xs, lambda x: r.rbar(1.0, x),
               lambda v: v[2] <= tol, "rbar''(x) <= 0 required on [0, 1)")

    slope_signs = set()
    sign_ok = True
    first_bad = None
    for x in xs:
        try:
            d1 = r.rbar(1.0, x)[1]
        except DomainError:
            sign_ok = False
            first_bad = x
            break
        if d1 > tol:
            slope_signs.add(1)
        elif d1 < -tol:
            slope_signs.add(-1)
        if len(slope_signs) > 1:
            sign_ok = False
            first_bad = x
            break
    checks.append(CheckResult("rbar_monotone", sign_ok,
                              "" if sign_ok else "rbar' changes sign on [0, 1)", first_bad))

    return ValidationReport(tuple(checks))
