"""scikit-learn style facade over the evolutionary circuit search."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .evolve import EvolutionParams, Threshold, best_by_overall, evolve
from .problems import make_problem, total_gates
from .simulator import run
from .validation import check_basis_indices, check_rng, check_states


class CircuitSearch(BaseEstimator):
    """Multi-objective evolutionary search for quantum circuits.

    The target is fixed by the constructor (`problem`, `n_qubits`), so `fit`
    takes no training data; X and y are accepted and ignored for pipeline
    compatibility. After fitting, `transform` applies the best discovered
    circuit: for the Fourier problem X holds basis indices (or explicit state
    vectors), for the Grover problem X holds oracle bindings and the circuit
    runs from |0...0>. `predict` returns the most probable measured basis
    index per row; a perfect Grover circuit satisfies predict(x) == x.
    """

    def __init__(
        self,
        problem: str = "fourier",
        n_qubits: int = 3,
        generations: int = 200,
        population_size: int = 1000,
        elite_capacity: int = 100,
        emc: float = 2.0,
        esl: float = 2.0,
        selection_pressure: float = 1.0,
        init_length_mean: float = 30.0,
        dedup_distance: float = 0.1,
        fourier_overall: str = "sum-outside",
        thresholds: tuple[Threshold, ...] = (),
        random_state=None,
    ):
        self.problem = problem
        self.n_qubits = n_qubits
        self.generations = generations
        self.population_size = population_size
        self.elite_capacity = elite_capacity
        self.emc = emc
        self.esl = esl
        self.selection_pressure = selection_pressure
        self.init_length_mean = init_length_mean
        self.dedup_distance = dedup_distance
        self.fourier_overall = fourier_overall
        self.thresholds = thresholds
        self.random_state = random_state

    def fit(self, X=None, y=None):
        """Run the configured search; X and y are ignored."""
        problem = make_problem(self.problem, self.n_qubits, self.fourier_overall)
        params = EvolutionParams(
            population_size=self.population_size,
            elite_capacity=self.elite_capacity,
            emc=self.emc,
            esl=self.esl,
            selection_pressure=self.selection_pressure,
            init_length_mean=self.init_length_mean,
            dedup_distance=self.dedup_distance,
        )
        rng = check_rng(self.random_state)
        result = evolve(
            problem, params, self.generations, rng, thresholds=tuple(self.thresholds)
        )
        best = best_by_overall(result.final.members)
        self.problem_ = problem
        self.result_ = result
        self.pareto_front_ = sorted(
            ((m.genome, m.fitness.copy()) for m in result.front),
            key=lambda pair: (pair[1][0], total_gates(pair[1])),
        )
        self.best_genome_ = best.genome
        self.best_fitness_ = best.fitness.copy()
        self.objective_names_ = tuple(problem.objective_names)
        self.first_hit_ = dict(result.first_hit)
        return self

    def transform(self, X) -> np.ndarray:
        """Output state vectors of the best circuit, one row per input."""
        check_is_fitted(self, "best_genome_")
        n = self.problem_.n_qubits
        if self.problem_.name == "grover":
            bindings = check_basis_indices(X, n)
            return np.stack(
                [run(self.best_genome_, n, 0, binding=int(x)) for x in bindings]
            )
        arr = np.asarray(X)
        if arr.ndim <= 1 and (arr.size == 0 or np.issubdtype(arr.dtype, np.integer)):
            indices = check_basis_indices(arr, n)
            return np.stack(
                [run(self.best_genome_, n, int(j)) for j in indices]
            )
        states = check_states(arr, n)
        return np.stack([run(self.best_genome_, n, initial=row) for row in states])

    def predict(self, X) -> np.ndarray:
        """Most probable measured basis index per input row."""
        amplitudes = self.transform(X)
        return np.argmax(np.abs(amplitudes) ** 2, axis=1)

    def score(self, X=None, y=None) -> float:
        """1 - overall error of the best circuit (higher is better)."""
        check_is_fitted(self, "best_genome_")
        return float(1.0 - self.best_fitness_[0])
