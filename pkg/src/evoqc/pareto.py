"""Pareto dominance, non-dominated sorting and rank-based selection weights."""
from __future__ import annotations

import numpy as np

from . import _kernels


def dominates(a, b) -> bool:
    """True if fitness a is no worse than b everywhere and better somewhere."""
    better = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            better = True
    return better


def nondominated_sort(fitnesses) -> np.ndarray:
    """Ranks for minimized objective vectors: 0 for the non-dominated front,
    r for entries dominated only by entries of ranks < r."""
    f = np.ascontiguousarray(np.asarray(fitnesses, dtype=np.float64))
    if f.ndim != 2:
        raise ValueError("expected a 2-D array of fitness vectors")
    if f.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return _kernels.nds_ranks(f)


def selection_probabilities(ranks, pressure: float = 1.0) -> np.ndarray:
    """Parent-selection weights p_i proportional to exp(-pressure * rank_i)."""
    ranks = np.asarray(ranks, dtype=np.float64)
    if pressure < 0:
        raise ValueError("selection pressure must be >= 0")
    w = np.exp(-pressure * ranks)
    return w / w.sum()
