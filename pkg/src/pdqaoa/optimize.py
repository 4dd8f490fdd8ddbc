"""Derivative-free angle optimization: a self-contained Nelder-Mead simplex.

The iteration budget counts objective evaluations (the unit cost-trace plots
use).  The run stops when the simplex's value spread drops below f_tol or the
budget is exhausted, whichever comes first.  The seed perturbs the initial
simplex step sizes, so distinct seeds explore distinct starts while each run
stays fully reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .engine import QaoaAngles

_REFLECT = 1.0
_EXPAND = 2.0
_CONTRACT = 0.5
_SHRINK = 0.5
_BASE_STEP = 0.25

METHODS = ("simplex",)


class ObjectiveError(RuntimeError):
    """The objective returned a non-finite value."""


@dataclass(frozen=True)
class OptimizerConfig:
    max_evals: int
    f_tol: float = 1e-6
    method: str = "simplex"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be >= 1, got {self.max_evals}")
        if self.f_tol <= 0:
            raise ValueError(f"f_tol must be positive, got {self.f_tol}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; available: {METHODS}")


@dataclass
class OptTrace:
    evaluations: list[tuple[np.ndarray, float]] = field(default_factory=list)
    best_angles: np.ndarray | None = None
    best_value: float = math.inf
    n_evals: int = 0
    terminated_by: str = ""

    def prefix_minimum(self) -> list[float]:
        out = []
        best = math.inf
        for _, value in self.evaluations:
            best = min(best, value)
            out.append(best)
        return out


def init_angles(q: int, delta: float) -> QaoaAngles:
    """Linear ramp start: gammas rise delta/q .. delta, betas fall delta .. delta/q."""
    if q < 1:
        raise ValueError(f"layer count must be >= 1, got {q}")
    if not (0 < delta <= math.pi):
        raise ValueError(f"delta must be in (0, pi] to keep angles in range, got {delta}")
    gammas = tuple(delta * k / q for k in range(1, q + 1))
    betas = tuple(delta * (1 - (k - 1) / q) for k in range(1, q + 1))
    return QaoaAngles(gammas=gammas, betas=betas)


def pack_angles(angles: QaoaAngles) -> np.ndarray:
    return np.asarray(angles.gammas + angles.betas, dtype=np.float64)


def unpack_angles(x: Sequence[float], q: int) -> QaoaAngles:
    x = np.asarray(x, dtype=np.float64)
    if x.size != 2 * q:
        raise ValueError(f"expected {2 * q} angles, got {x.size}")
    return QaoaAngles(gammas=tuple(x[:q]), betas=tuple(x[q:]))


def wrap_angles(angles: QaoaAngles) -> QaoaAngles:
    """Reduce to the canonical ranges for reporting (never during search)."""
    two_pi = 2.0 * math.pi
    return QaoaAngles(
        gammas=tuple(g % two_pi for g in angles.gammas),
        betas=tuple(b % math.pi for b in angles.betas),
    )


class _BudgetExhausted(Exception):
    pass


def minimize(objective: Callable[[np.ndarray], float], x0, config: OptimizerConfig) -> OptTrace:
    """Nelder-Mead over the angle vector; returns the full evaluation trace."""
    x0 = np.asarray(x0, dtype=np.float64).copy()
    n = x0.size
    if n < 1:
        raise ValueError("x0 must be non-empty")
    trace = OptTrace()

    def feval(x: np.ndarray) -> float:
        if trace.n_evals >= config.max_evals:
            raise _BudgetExhausted
        value = float(objective(x))
        if not math.isfinite(value):
            raise ObjectiveError(f"objective returned non-finite value {value!r} at x={x.tolist()}")
        trace.evaluations.append((x.copy(), value))
        trace.n_evals += 1
        return value

    rng = np.random.default_rng(config.seed)
    steps = _BASE_STEP * (0.5 + rng.random(n))

    simplex: list[np.ndarray] = [x0]
    for i in range(n):
        point = x0.copy()
        point[i] += steps[i]
        simplex.append(point)

    try:
        values = [feval(p) for p in simplex]
        while True:
            order = sorted(range(n + 1), key=lambda i: (values[i], i))
            simplex = [simplex[i] for i in order]
            values = [values[i] for i in order]
            if values[-1] - values[0] < config.f_tol:
                trace.terminated_by = "tolerance"
                break
            if trace.n_evals >= config.max_evals:
                raise _BudgetExhausted
            centroid = np.mean(simplex[:-1], axis=0)
            reflected = centroid + _REFLECT * (centroid - simplex[-1])
            f_reflected = feval(reflected)
            if f_reflected < values[0]:
                expanded = centroid + _EXPAND * (reflected - centroid)
                f_expanded = feval(expanded)
                if f_expanded < f_reflected:
                    simplex[-1], values[-1] = expanded, f_expanded
                else:
                    simplex[-1], values[-1] = reflected, f_reflected
            elif f_reflected < values[-2]:
                simplex[-1], values[-1] = reflected, f_reflected
            else:
                if f_reflected < values[-1]:
                    contracted = centroid + _CONTRACT * (reflected - centroid)
                    f_contracted = feval(contracted)
                    accept = f_contracted <= f_reflected
                else:
                    contracted = centroid + _CONTRACT * (simplex[-1] - centroid)
                    f_contracted = feval(contracted)
                    accept = f_contracted < values[-1]
                if accept:
                    simplex[-1], values[-1] = contracted, f_contracted
                else:
                    for i in range(1, n + 1):
                        simplex[i] = simplex[0] + _SHRINK * (simplex[i] - simplex[0])
                        values[i] = feval(simplex[i])
    except _BudgetExhausted:
        trace.terminated_by = "budget"

    if not trace.evaluations:
        raise RuntimeError("optimizer made no evaluations")  # unreachable: max_evals >= 1
    best_idx = min(range(trace.n_evals), key=lambda i: (trace.evaluations[i][1], i))
    trace.best_angles = trace.evaluations[best_idx][0].copy()
    trace.best_value = trace.evaluations[best_idx][1]
    return trace
