"""Real-coded genetic algorithm with coordinate-wise golden-section polish.

Maximizes a black-box objective over a box. Points where the objective
raises or returns a non-finite value score ``-inf`` and are never selected
over a feasible point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class GAResult:
    x: np.ndarray
    fun: float
    n_eval: int
    trace: list = field(default_factory=list)


class _Budgeted:
    def __init__(self, func, budget):
        self.func = func
        self.budget = budget
        self.n_eval = 0
        self.best_x = None
        self.best_f = -math.inf

    @property
    def exhausted(self) -> bool:
        return self.n_eval >= self.budget

    def __call__(self, x: np.ndarray) -> float:
        self.n_eval += 1
        try:
            f = float(self.func(x))
        except (ArithmeticError, ValueError, np.linalg.LinAlgError):
            f = -math.inf
        if not math.isfinite(f):
            f = -math.inf
        if f > self.best_f:
            self.best_f, self.best_x = f, np.array(x, dtype=float)
        return f


def genetic_maximize(
    func: Callable[[np.ndarray], float],
    lower: Sequence[float],
    upper: Sequence[float],
    *,
    budget: int,
    seed: int = 0,
    initial: Sequence[Sequence[float]] = (),
    pop_size: int = 64,
    tournament: int = 3,
    blend_alpha: float = 0.5,
    mutation_sigma: float = 0.1,
    mutation_rate: float = 0.2,
    elitism: int = 2,
    refine_fraction: float = 0.2,
    refine_tol: float = 1e-9,
) -> GAResult:
    """Maximize ``func`` inside the box ``[lower, upper]``.

    ``budget`` counts objective evaluations across both phases. Roughly
    ``1 - refine_fraction`` of it goes to the GA (BLX-alpha crossover,
    tournament selection, Gaussian mutation with sigma given as a fraction of
    the box width, elitism); the remainder polishes the best point one
    coordinate at a time. Points in ``initial`` are placed in the first
    generation as-is. Results depend only on the arguments.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    lo = np.asarray(lower, dtype=float)
    hi = np.asarray(upper, dtype=float)
    dim = lo.size
    width = hi - lo
    rng = np.random.default_rng(seed)
    f = _Budgeted(func, budget)
    trace: list[tuple[int, float]] = []

    pop_size = max(2, pop_size)
    seeded = [np.clip(np.asarray(p, dtype=float), lo, hi) for p in initial][:pop_size]
    pop = np.vstack(seeded + [lo + rng.random(dim) * width
                              for _ in range(pop_size - len(seeded))])
    ga_budget = max(1, int(round(budget * (1.0 - refine_fraction))))

    fit = np.full(pop_size, -math.inf)
    for i in range(pop_size):
        if f.n_eval >= ga_budget:
            break
        fit[i] = f(pop[i])
    trace.append((f.n_eval, f.best_f))

    def pick() -> np.ndarray:
        idx = rng.integers(0, pop_size, size=tournament)
        return pop[idx[np.argmax(fit[idx])]]

    while f.n_eval + 1 <= ga_budget:
        order = np.argsort(-fit, kind="stable")
        children = [pop[i].copy() for i in order[:elitism]]
        child_fit = [fit[i] for i in order[:elitism]]
        while len(children) < pop_size and f.n_eval < ga_budget:
            a, b = pick(), pick()
            cmin, cmax = np.minimum(a, b), np.maximum(a, b)
            span = cmax - cmin
            child = rng.uniform(cmin - blend_alpha * span, cmax + blend_alpha * span)
            mask = rng.random(dim) < mutation_rate
            child = child + mask * rng.normal(0.0, mutation_sigma * width)
            child = np.clip(child, lo, hi)
            children.append(child)
            child_fit.append(f(child))
        if len(children) < pop_size:
            break
        pop = np.vstack(children)
        fit = np.asarray(child_fit)
        trace.append((f.n_eval, f.best_f))

    if f.best_x is None:
        return GAResult(pop[0], -math.inf, f.n_eval, trace)

    x = f.best_x.copy()
    best = f.best_f
    step = 0.1 * width
    while not f.exhausted and np.any(step > 1e-7):
        start = best
        for j in range(dim):
            if f.exhausted:
                break
            x, best = _golden_coordinate(f, x, best, j, max(lo[j], x[j] - step[j]),
                                         min(hi[j], x[j] + step[j]))
        trace.append((f.n_eval, best))
        if best - start < refine_tol:
            step = step * 0.5
    return GAResult(f.best_x, f.best_f, f.n_eval, trace)


def _golden_coordinate(f: _Budgeted, x: np.ndarray, best: float, j: int,
                       a: float, b: float, iters: int = 24) -> tuple[np.ndarray, float]:
    def at(t):
        y = x.copy()
        y[j] = t
        return y

    if b - a <= 0:
        return x, best
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(at(c)), f(at(d))
    for _ in range(iters):
        if f.exhausted or b - a < 1e-10:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(at(c))
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(at(d))
    t, ft = (c, fc) if fc >= fd else (d, fd)
    if ft > best:
        return at(t), ft
    return x, best
