"""Command line batch runner and circuit evaluator."""
from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from .evolve import (
    EvolutionParams,
    EvolutionResult,
    Threshold,
    best_by_overall,
    best_by_worst,
    evolve,
)
from .gates import parse, serialize
from .problems import Problem, make_problem, total_gates


def default_thresholds(problem: Problem) -> tuple[Threshold, ...]:
    """Success criteria recorded per run: error bounds, plus the bound with
    the smallest known circuit size for the register."""
    n = problem.n_qubits
    if problem.name == "fourier":
        compact = 2 * n + n * (n - 1) // 2 + n // 2  # textbook circuit size
        return (
            Threshold("err_1e3", 1e-3, 1e-3),
            Threshold("err_1e3_compact", 1e-3, 1e-3, max_gates=compact),
        )
    iterations = max(1, round(math.pi / (4 * math.asin(2 ** (-n / 2))) - 0.5))
    optimal = n + iterations * (2 * n + 2)
    return (
        Threshold("err_1e2", 1e-2, 1e-2),
        Threshold("err_1e3", 1e-3, 1e-3),
        Threshold(
            "err_1e3_optimal",
            1e-3,
            1e-3,
            max_gates=optimal,
            max_oracles=iterations,
        ),
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="evoqc",
        description="Evolve quantum circuits against a Fourier or Grover target, "
        "or evaluate a circuit file.",
    )
    p.add_argument("--problem", required=True, choices=("fourier", "grover"))
    p.add_argument("--qubits", required=True, type=int, metavar="N")
    p.add_argument("--pop", type=int, default=1000, help="population size")
    p.add_argument("--gens", type=int, default=3000, help="generations per run")
    p.add_argument("--runs", type=int, default=1, help="independent runs")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--emc", type=float, default=2.0, help="expected mutation count")
    p.add_argument("--esl", type=float, default=2.0, help="expected stretch length")
    p.add_argument("--alpha", type=float, default=1.0, help="selection pressure")
    p.add_argument("--elite", type=int, default=100, help="elite capacity")
    p.add_argument("--init-len", type=float, default=30.0, help="mean initial length")
    p.add_argument("--dedup-dist", type=float, default=0.1, help="elite spacing")
    p.add_argument("--out", default="runs", metavar="DIR", help="output directory")
    p.add_argument("--evaluate", metavar="FILE", help="evaluate a circuit file and exit")
    p.add_argument(
        "--fourier-overall",
        choices=("sum-outside", "sum-inside"),
        default="sum-outside",
        help="overall-error formula for the Fourier problem",
    )
    return p


def _format_value(x: float) -> str:
    return repr(float(x))


def _circuit_header(problem: Problem, fitness: np.ndarray) -> str:
    pairs = ", ".join(
        f"{name}={_format_value(v) if i < 2 else int(round(v))}"
        for i, (name, v) in enumerate(zip(problem.objective_names, fitness))
    )
    return f"# problem={problem.name} qubits={problem.n_qubits}\n# {pairs}\n"


def _write_run_artifacts(
    run_dir: Path, problem: Problem, result: EvolutionResult
) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    front = sorted(
        result.front, key=lambda m: (m.fitness[0], total_gates(m.fitness))
    )
    with open(run_dir / "pareto.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(list(problem.objective_names) + ["total_gates", "circuit"])
        for m in front:
            row = [_format_value(m.fitness[0]), _format_value(m.fitness[1])]
            row += [str(int(round(v))) for v in m.fitness[2:]]
            row.append(str(total_gates(m.fitness)))
            row.append(serialize(m.genome).strip().replace("\n", ";"))
            w.writerow(row)
    with open(run_dir / "stats.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["generation", "best_overall_error", "best_worst_error", "wall_ms"])
        for s in result.stats:
            w.writerow(
                [
                    s.generation,
                    _format_value(s.best_overall),
                    _format_value(s.best_worst),
                    f"{s.wall_ms:.3f}",
                ]
            )
    members = result.final.members
    for fname, pick in (
        ("best_overall.qc", best_by_overall(members)),
        ("best_worst.qc", best_by_worst(members)),
    ):
        with open(run_dir / fname, "w") as f:
            f.write(_circuit_header(problem, pick.fitness))
            f.write(serialize(pick.genome))


def _run_batch(args: argparse.Namespace) -> int:
    problem = make_problem(args.problem, args.qubits, args.fourier_overall)
    params = EvolutionParams(
        population_size=args.pop,
        elite_capacity=args.elite,
        emc=args.emc,
        esl=args.esl,
        selection_pressure=args.alpha,
        init_length_mean=args.init_len,
        dedup_distance=args.dedup_dist,
    )
    thresholds = default_thresholds(problem)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(
        f"problem={problem.name} qubits={problem.n_qubits} pop={args.pop} "
        f"gens={args.gens} runs={args.runs} seed={args.seed}"
    )
    hits: dict[str, int] = {t.name: 0 for t in thresholds}
    summary_rows = []
    for r in range(args.runs):
        rng = np.random.default_rng(np.random.SeedSequence(args.seed, spawn_key=(r,)))
        result = evolve(problem, params, args.gens, rng, thresholds=thresholds)
        _write_run_artifacts(out / f"run_{r}", problem, result)
        row = {"run": r}
        notes = []
        for t in thresholds:
            hit = result.first_hit[t.name]
            row[t.name] = "" if hit is None else hit
            if hit is not None:
                hits[t.name] += 1
                notes.append(f"{t.name}@{hit}")
        summary_rows.append(row)
        best = best_by_overall(result.final.members)
        ms = np.mean([s.wall_ms for s in result.stats[1:]]) if len(result.stats) > 1 else 0.0
        print(
            f"run {r}: best overall {best.fitness[0]:.2e} worst {best.fitness[1]:.2e} "
            f"gates {total_gates(best.fitness)} front {len(result.front)} "
            f"avg {ms:.1f} ms/gen"
            + (" [" + " ".join(notes) + "]" if notes else "")
        )
        sys.stdout.flush()
    with open(out / "summary.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["run"] + [t.name for t in thresholds])
        for row in summary_rows:
            w.writerow([row["run"]] + [row[t.name] for t in thresholds])
    for t in thresholds:
        print(f"{t.name}: {hits[t.name]}/{args.runs} runs")
    return 0


def _evaluate_file(args: argparse.Namespace) -> int:
    problem = make_problem(args.problem, args.qubits, args.fourier_overall)
    text = Path(args.evaluate).read_text()
    genome = parse(text, problem.n_qubits)
    fitness = problem.evaluate(genome)
    for i, (name, value) in enumerate(zip(problem.objective_names, fitness)):
        print(f"{name} = {_format_value(value) if i < 2 else int(round(value))}")
    print(f"total_gates = {total_gates(fitness)}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.evaluate is not None:
            return _evaluate_file(args)
        if args.runs < 1:
            raise ValueError("--runs must be >= 1")
        if args.gens < 0:
            raise ValueError("--gens must be >= 0")
        return _run_batch(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
