import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger("IsoKin.search")

# Defaults for the multi-start compass search
starts_per_dim = 3
max_starts = 243
initial_step = math.pi / 8
min_step = 1e-10
max_evaluations = 10_000
gradient_step = 1e-6

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True, eq=False)
class StartResult:
    start: np.ndarray
    x: np.ndarray
    value: float
    evaluations: int


def wrap_angle(angle):
    # (-pi, pi], elementwise
    return math.pi - np.mod(math.pi - angle, 2.0 * math.pi)


def grid_starts(dim: int, per_dim: int = starts_per_dim, cap: int = max_starts) -> np.ndarray:
    """
    Regular grid over (-pi, pi]^dim with per_dim cell-centred values per axis.
    When the full grid is larger than cap, evenly strided grid points are kept.
    """
    if dim == 0:
        return np.zeros((1, 0))
    axis = -math.pi + 2.0 * math.pi * (np.arange(per_dim) + 0.5) / per_dim
    total = per_dim ** dim
    if total <= cap:
        return np.array(list(itertools.product(axis, repeat=dim)))
    picks = np.unique(np.round(np.linspace(0, total - 1, cap)).astype(int))
    starts = []
    for flat in picks:
        digits = []
        for _ in range(dim):
            flat, digit = divmod(int(flat), per_dim)
            digits.append(digit)
        starts.append(axis[digits[::-1]])
    return np.array(starts)


def random_starts(dim: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return wrap_angle(rng.uniform(-math.pi, math.pi, size=(count, dim)))


def iterative_explore(objective: Objective, start: Sequence[float],
                      step: float = initial_step, smallest_step: float = min_step,
                      max_evals: int = max_evaluations) -> StartResult:
    """
    Compass search from one start over periodic angle variables.

    Each pass tries +step and -step along every coordinate and moves to the
    first improvement; a pass without improvement halves the step. Stops once
    the step drops below smallest_step or max_evals objective calls were made.
    """
    x = wrap_angle(np.asarray(start, dtype=float))
    # Remember evaluated points so revisits cost nothing
    visited = {}
    evaluations = 0

    def evaluate(point):
        nonlocal evaluations
        key = tuple(point)
        if key not in visited:
            visited[key] = objective(point)
            evaluations += 1
        return visited[key]

    best_value = evaluate(x)
    if x.size == 0:
        return StartResult(np.asarray(start, dtype=float), x, best_value, evaluations)

    while step >= smallest_step and evaluations < max_evals:
        improved = False
        for i in range(x.size):
            for sign in (1.0, -1.0):
                candidate = x.copy()
                candidate[i] = wrap_angle(candidate[i] + sign * step)
                value = evaluate(candidate)
                if value < best_value:
                    x, best_value = candidate, value
                    improved = True
                    break
            if evaluations >= max_evals:
                break
        if not improved:
            step /= 2.0

    return StartResult(np.asarray(start, dtype=float), x, best_value, evaluations)


def explore_starts(objective: Objective, starts: np.ndarray, **options) -> List[StartResult]:
    """Run iterative_explore from every start, in order."""
    results = []
    for start in starts:
        result = iterative_explore(objective, start, **options)
        if not math.isfinite(result.value):
            logger.debug(f"Start {np.round(start, 4).tolist()} found no valid posture")
        results.append(result)
    return results


def finite_difference_gradient(objective: Objective, x: Sequence[float],
                               h: float = gradient_step) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    gradient = np.zeros_like(x)
    for i in range(x.size):
        forward, backward = x.copy(), x.copy()
        forward[i] += h
        backward[i] -= h
        gradient[i] = (objective(forward) - objective(backward)) / (2.0 * h)
    return gradient


def best_of(candidates: Sequence[Tuple[float, float, Tuple[float, ...]]], tie: float = 1e-12) -> int:
    """
    Index of the best (residual, length, posture) candidate: smallest residual,
    residuals within tie of it broken by smallest length, then by posture.
    """
    lowest = min(c[0] for c in candidates)
    tied = [i for i, c in enumerate(candidates) if c[0] <= lowest + tie]
    return min(tied, key=lambda i: (candidates[i][1], candidates[i][2]))
