"""Floating-point Magnus and Fer integrators for x'(t) = A(t) x(t).

A(t) is restricted to matrix polynomials, so every inner integral in the
expansions is exact and the only error sources are series truncation and
floating point (quadrature design is deliberately out of scope).  Each step
over [t0, t0+h] shifts A to the local variable s, runs the same pre-Lie
Magnus / Fer recursions as the exact half of the package, with
integration as the weight-zero operator (rhd(x, y) = [I(x), y] keeps
polynomials polynomial), and exponentiates the integrated truncation.

Grade-to-order bookkeeping: the grade-d term of the step exponent scales at
least as h^d, so keeping grade 1 gives a second-order method and grades up
to 3 a fourth-order one.  The grade-2 term is a commutator with an inner
integral and is actually O(h^3), not O(h^2), which is why "order 2" needs
only grade 1; the same cancellation makes the two-exponential Fer variant
fourth order.

Reference solutions are self-consistent (the order-4 method on a 64x finer
grid), not an external solver.  Errors are max-norm differences at the
horizon; convergence slopes come from a least-squares fit of log(error)
against log(h).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .magnus_fer import fer, magnus
from .series import CoeffSpace

__all__ = [
    "NonFinite",
    "DegenerateFit",
    "matrix_exp",
    "FloatMatrixPoly",
    "StepResult",
    "magnus_step",
    "fer_step",
    "integrate",
    "METHODS",
    "reference_solution",
    "convergence_rows",
    "convergence_order",
    "rows_to_csv",
    "liouville_defect",
    "default_test_problem",
]


class NonFinite(FloatingPointError):
    """A matrix operation produced inf or nan."""


class DegenerateFit(ValueError):
    """Errors sit at machine precision; a log-log slope is meaningless."""


# Diagonal Pade approximant of degree 13 with scaling and squaring.
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)
_PADE13_BOUND = 5.371920351148152


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring with the fixed degree-13 diagonal approximant."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix_exp input has non-finite entries")
    norm = float(np.linalg.norm(a, 1))
    squarings = 0
    if norm > _PADE13_BOUND:
        squarings = max(0, int(math.ceil(math.log2(norm / _PADE13_BOUND))))
        a = a / (2.0**squarings)
    n = a.shape[0]
    ident = np.eye(n)
    b = _PADE13
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6
        + b[5] * a4
        + b[3] * a2
        + b[1] * ident
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6
        + b[4] * a4
        + b[2] * a2
        + b[0] * ident
    )
    r = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        r = r @ r
    if not np.all(np.isfinite(r)):
        raise NonFinite("matrix_exp overflowed")
    return r


class FloatMatrixPoly:
    """A(t) = sum_j A_j t^j with square float matrix coefficients."""

    __slots__ = ("coeffs", "n")

    def __init__(self, coeffs: Sequence[np.ndarray]):
        cs = [np.array(c, dtype=float) for c in coeffs]
        if not cs:
            raise ValueError("need at least one coefficient")
        n = cs[0].shape[0]
        for c in cs:
            if c.shape != (n, n):
                raise ValueError("coefficients must be square matrices of one size")
            if not np.all(np.isfinite(c)):
                raise NonFinite("polynomial coefficient has non-finite entries")
        while len(cs) > 1 and not cs[-1].any():
            cs.pop()
        self.coeffs = cs
        self.n = n

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "FloatMatrixPoly") -> "FloatMatrixPoly":
        k = max(len(self.coeffs), len(other.coeffs))
        z = np.zeros((self.n, self.n))
        out = [
            (self.coeffs[i] if i < len(self.coeffs) else z)
            + (other.coeffs[i] if i < len(other.coeffs) else z)
            for i in range(k)
        ]
        return FloatMatrixPoly(out)

    def scale(self, c) -> "FloatMatrixPoly":
        return FloatMatrixPoly([float(c) * a for a in self.coeffs])

    def __neg__(self) -> "FloatMatrixPoly":
        return self.scale(-1.0)

    def __mul__(self, other: "FloatMatrixPoly") -> "FloatMatrixPoly":
        out = [
            np.zeros((self.n, self.n))
            for _ in range(len(self.coeffs) + len(other.coeffs) - 1)
        ]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a @ b
        return FloatMatrixPoly(out)

    def integrate(self) -> "FloatMatrixPoly":
        out = [np.zeros((self.n, self.n))]
        out.extend(c / (j + 1) for j, c in enumerate(self.coeffs))
        return FloatMatrixPoly(out)

    def eval_at(self, t: float) -> np.ndarray:
        acc = np.zeros((self.n, self.n))
        power = 1.0
        for c in self.coeffs:
            acc = acc + power * c
            power *= t
        return acc

    def shifted(self, t0: float) -> "FloatMatrixPoly":
        """The polynomial s -> A(t0 + s)."""
        d = self.degree
        out = [np.zeros((self.n, self.n)) for _ in range(d + 1)]
        for j, c in enumerate(self.coeffs):
            for k in range(j + 1):
                out[k] += math.comb(j, k) * (t0 ** (j - k)) * c
        return FloatMatrixPoly(out)

    def is_zero(self) -> bool:
        return not any(c.any() for c in self.coeffs)


class _FloatPolySpace(CoeffSpace):
    def __init__(self, n: int):
        self.n = n

    def zero(self) -> FloatMatrixPoly:
        return FloatMatrixPoly([np.zeros((self.n, self.n))])

    def add(self, x, y):
        return x + y

    def scale(self, c: Fraction, x):
        return x.scale(float(c))

    def is_zero(self, x) -> bool:
        return x.is_zero()


class _IntegralPreLieOps:
    """rhd(x, y) = [I(x), y]: weight-zero integration pre-Lie on float polys."""

    def __init__(self, n: int):
        self.space = _FloatPolySpace(n)

    def rhd(self, x: FloatMatrixPoly, y: FloatMatrixPoly) -> FloatMatrixPoly:
        ix = x.integrate()
        return ix * y + (-(y * ix))


def _step_exponent(series, h: float) -> np.ndarray:
    """Integrate each grade over [0, h] and sum."""
    total = None
    for coeff in series.coeffs:
        val = coeff.integrate().eval_at(h)
        total = val if total is None else total + val
    return total


def magnus_step(a: FloatMatrixPoly, t0: float, h: float, order: int = 4) -> np.ndarray:
    """One Magnus step over [t0, t0+h]; order 2 keeps grade 1, order 4 grades 1..3."""
    if h <= 0:
        raise ValueError("step size must be positive")
    if order not in (2, 4):
        raise ValueError("supported orders are 2 and 4")
    local = a.shifted(t0)
    ops = _IntegralPreLieOps(a.n)
    w = magnus(ops, local, order - 1)
    return matrix_exp(_step_exponent(w, h))


def fer_step(a: FloatMatrixPoly, t0: float, h: float, exponentials: int = 2) -> np.ndarray:
    """One Fer step: exp(I(U_0)) alone (order 2) or followed by the first
    correction truncated at grade 3 (order 4)."""
    if h <= 0:
        raise ValueError("step size must be positive")
    if exponentials not in (1, 2):
        raise ValueError("supported exponential counts are 1 and 2")
    local = a.shifted(t0)
    if exponentials == 1:
        return matrix_exp(local.integrate().eval_at(h))
    ops = _IntegralPreLieOps(a.n)
    u0, u1 = fer(ops, local, 3)[:2]
    return matrix_exp(_step_exponent(u0, h)) @ matrix_exp(_step_exponent(u1, h))


METHODS: dict[str, Callable[[FloatMatrixPoly, float, float], np.ndarray]] = {
    "magnus2": lambda a, t0, h: magnus_step(a, t0, h, order=2),
    "magnus4": lambda a, t0, h: magnus_step(a, t0, h, order=4),
    "fer1": lambda a, t0, h: fer_step(a, t0, h, exponentials=1),
    "fer2": lambda a, t0, h: fer_step(a, t0, h, exponentials=2),
}

_METHOD_META = {  # method -> (convergence order, exponentials per step)
    "magnus2": (2, 1),
    "magnus4": (4, 1),
    "fer1": (2, 1),
    "fer2": (4, 2),
}


@dataclass
class StepResult:
    final: np.ndarray
    transitions: list[np.ndarray] = field(default_factory=list)
    method: str = ""
    order: int = 0
    exponentials_per_step: int = 1


def integrate(
    a: FloatMatrixPoly, horizon: float, steps: int, method: str = "magnus4", t_start: float = 0.0
) -> StepResult:
    """Compose uniform steps of the chosen method from t_start to t_start+horizon."""
    if steps < 1:
        raise ValueError("need at least one step")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(METHODS)}")
    stepper = METHODS[method]
    h = horizon / steps
    phi = np.eye(a.n)
    transitions = []
    for k in range(steps):
        u = stepper(a, t_start + k * h, h)
        transitions.append(u)
        phi = u @ phi
    order, nexp = _METHOD_META[method]
    return StepResult(phi, transitions, method, order, nexp)


def reference_solution(
    a: FloatMatrixPoly, horizon: float, finest_steps: int, refinement: int = 64
) -> np.ndarray:
    """Order-4 Magnus on a grid ``refinement`` times finer than the finest sweep."""
    return integrate(a, horizon, finest_steps * refinement, "magnus4").final


def convergence_rows(
    a: FloatMatrixPoly,
    horizon: float,
    method: str,
    step_counts: Sequence[int],
    reference: np.ndarray | None = None,
) -> list[tuple[int, float, float, float | None]]:
    """(steps, h, error, slope_window) per step count, against the fine reference."""
    counts = sorted(step_counts)
    if reference is None:
        reference = reference_solution(a, horizon, counts[-1])
    rows: list[tuple[int, float, float, float | None]] = []
    prev: tuple[float, float] | None = None
    for steps in counts:
        h = horizon / steps
        err = float(np.max(np.abs(integrate(a, horizon, steps, method).final - reference)))
        window = None
        if prev is not None and err > 0 and prev[1] > 0:
            window = math.log(prev[1] / err) / math.log(prev[0] / h)
        rows.append((steps, h, err, window))
        prev = (h, err)
    return rows


def convergence_order(
    a: FloatMatrixPoly,
    horizon: float,
    method: str,
    step_counts: Sequence[int],
    reference: np.ndarray | None = None,
) -> float:
    """Least-squares slope of log(error) vs log(h) over the sweep."""
    if len(step_counts) < 4:
        raise ValueError("need at least 4 step counts for a stable fit")
    rows = convergence_rows(a, horizon, method, step_counts, reference)
    errors = [r[2] for r in rows]
    if any(e < 1e-13 for e in errors):
        raise DegenerateFit(f"errors at machine precision: {errors}")
    hs = [r[1] for r in rows]
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)


def rows_to_csv(rows: Sequence[tuple[int, float, float, float | None]]) -> str:
    lines = ["steps,h,error,slope_window"]
    for steps, h, err, window in rows:
        lines.append(f"{steps},{h!r},{err!r},{'' if window is None else repr(window)}")
    return "\n".join(lines) + "\n"


def liouville_defect(a: FloatMatrixPoly, horizon: float, steps: int, method: str) -> float:
    """Relative mismatch of det(Phi(T)) against exp of the integrated trace.

    The step exponents' higher grades are nested commutators, hence
    traceless, so the determinant identity survives truncation exactly and
    only floating point shows up here.
    """
    phi = integrate(a, horizon, steps, method).final
    trace_poly = FloatMatrixPoly([np.array([[np.trace(c)]]) for c in a.coeffs])
    expected = math.exp(trace_poly.integrate().eval_at(horizon)[0, 0])
    return abs(float(np.linalg.det(phi)) - expected) / abs(expected)


def default_test_problem() -> FloatMatrixPoly:
    """A fixed noncommuting 2x2 polynomial family: rotation plus t-scaled shear."""
    a0 = np.array([[0.0, 1.0], [-1.0, 0.0]])
    a1 = np.array([[0.6, 0.3], [0.0, -0.6]])
    a2 = np.array([[0.0, 0.0], [0.5, 0.0]])
    return FloatMatrixPoly([a0, a1, a2])
