from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

import numpy as np
import yaml
from pydantic import BaseModel, Field
from tabulate import tabulate
from tqdm import tqdm

from src.netpart.config import Config
from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import ContractViolation, CustomException, InputError, SolverFailure
from src.netpart.logger import logging
from src.netpart.modules.cutting.driver import Driver, SolveMode, SolveStatus, solve_with_cuts
from src.netpart.tools.generator import generate_instance
from src.netpart.tools.scenarios import ScenarioBatch


class ModeResults(BaseModel):
    """Per-scenario arrays for one solve mode."""
    times: list[float] = Field(default_factory=list)
    objectives: list[float | None] = Field(default_factory=list)
    radial_cuts: list[int] = Field(default_factory=list)
    leader_cuts: list[int] = Field(default_factory=list)
    iterations: list[int] = Field(default_factory=list)
    nodes: list[int] = Field(default_factory=list)


class Aggregate(BaseModel):
    avg: float
    min: float
    max: float

    @classmethod
    def of(cls, values: Sequence[float]) -> "Aggregate":
        arr = np.asarray(values, dtype=float)
        if arr.size == 0:
            return cls(avg=0.0, min=0.0, max=0.0)
        return cls(avg=float(arr.mean()), min=float(arr.min()), max=float(arr.max()))


class ModeAggregates(BaseModel):
    time: Aggregate
    radial_cuts: Aggregate
    leader_cuts: Aggregate
    iterations: Aggregate


class Speedup(BaseModel):
    """full-mode time over this mode's time; > 1 means this mode is faster."""
    median: float
    p95: float


class LoadServed(BaseModel):
    mode: SolveMode
    energized_blocks: int
    blocks_with_demand: int
    served: float
    shed: float
    percent_served: float
    closed_switches: int


class BenchmarkReport(BaseModel):
    blocks: int
    switches: int
    eligible_leaders: int
    driver: Driver
    scenarios: int
    rho: float
    seed: int
    modes: dict[str, ModeResults]
    aggregates: dict[str, ModeAggregates] = Field(default_factory=dict)
    speedups: dict[str, Speedup] = Field(default_factory=dict)
    load_served: LoadServed | None = None


def _solve_task(problem: PartitionProblem, mode: SolveMode, driver: Driver,
                demands: dict[str, float]) -> tuple[float, float | None, int, int, int, int, SolveStatus]:
    report = solve_with_cuts(problem, mode, driver, demands=demands)
    return (report.wall_time, report.objective, report.radial_cuts, report.leader_cuts,
            report.iterations, report.node_count, report.status)


def aggregate(results: ModeResults) -> ModeAggregates:
    return ModeAggregates(
        time=Aggregate.of(results.times),
        radial_cuts=Aggregate.of(results.radial_cuts),
        leader_cuts=Aggregate.of(results.leader_cuts),
        iterations=Aggregate.of(results.iterations),
    )


def speedup(full_times: Sequence[float], mode_times: Sequence[float]) -> Speedup:
    full, other = np.asarray(full_times, dtype=float), np.asarray(mode_times, dtype=float)
    ratios = full / np.maximum(other, 1e-12)
    return Speedup(median=float(np.median(full) / max(float(np.median(other)), 1e-12)),
                   p95=float(np.percentile(ratios, 95)))


def _check_agreement(modes: Sequence[SolveMode], results: dict[str, ModeResults], index: int) -> None:
    values = [results[m.value].objectives[index] for m in modes]
    if all(v is None for v in values):
        return
    if any(v is None for v in values) or max(values) - min(values) > Config.objective_tol:
        detail = ", ".join(f"{m.value}={v}" for m, v in zip(modes, values))
        raise ContractViolation(f"scenario {index}: modes disagree on the optimum ({detail})")


def load_served(problem: PartitionProblem, mode: SolveMode, driver: Driver) -> LoadServed:
    """Service summary for the nominal demand."""
    report = solve_with_cuts(problem, mode, driver)
    total = problem.total_demand
    served = report.served_total
    return LoadServed(
        mode=mode,
        energized_blocks=sum(1 for p, b in enumerate(problem.blocks) if b.demand > 0 and report.block_state
                             and report.block_state[p]),
        blocks_with_demand=sum(1 for b in problem.blocks if b.demand > 0),
        served=served,
        shed=total - served,
        percent_served=100.0 * served / total if total > 0 else 100.0,
        closed_switches=sum(report.switch_state),
    )


def run_benchmark(problem: PartitionProblem, modes: Sequence[SolveMode | str], batch: ScenarioBatch,
                  driver: Driver | str = Driver.CALLBACK, workers: int = 1,
                  progress: bool = False) -> BenchmarkReport:
    """Solve every scenario of `batch` in every mode and cross-check the optima."""
    if not modes:
        raise InputError("a benchmark needs at least one mode")
    modes = [SolveMode(m) for m in modes]
    driver = Driver(driver)
    try:
        demands = batch.demand_vectors()
        results = {m.value: ModeResults() for m in modes}
        tasks = [(i, m) for i in range(len(demands)) for m in modes]
        logging.info(f"benchmark: {len(demands)} scenarios x {len(modes)} modes, driver {driver.value}")

        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_solve_task, problem, m, driver, demands[i]) for i, m in tasks]
                outcomes = [f.result() for f in tqdm(futures, desc="scenarios", disable=not progress)]
        else:
            outcomes = [_solve_task(problem, m, driver, demands[i])
                        for i, m in tqdm(tasks, desc="scenarios", disable=not progress)]

        for (i, mode), (elapsed, objective, radial, leader, rounds, nodes, status) in zip(tasks, outcomes):
            if status is SolveStatus.INTERNAL_ERROR:
                raise SolverFailure(f"scenario {i} in mode {mode.value} hit the iteration cap")
            entry = results[mode.value]
            entry.times.append(elapsed)
            entry.objectives.append(objective)
            entry.radial_cuts.append(radial)
            entry.leader_cuts.append(leader)
            entry.iterations.append(rounds)
            entry.nodes.append(nodes)
        for i in range(len(demands)):
            _check_agreement(modes, results, i)

        report = BenchmarkReport(
            blocks=problem.block_count,
            switches=problem.switch_count,
            eligible_leaders=len(problem.eligible_leaders),
            driver=driver,
            scenarios=len(demands),
            rho=batch.rho,
            seed=batch.seed,
            modes=results,
            aggregates={name: aggregate(r) for name, r in results.items()},
        )
        if SolveMode.FULL in modes:
            full = results[SolveMode.FULL.value].times
            report.speedups = {m.value: speedup(full, results[m.value].times)
                               for m in modes if m is not SolveMode.FULL}
        report.load_served = load_served(problem, SolveMode.FULL if SolveMode.FULL in modes else modes[0], driver)
        logging.info(f"benchmark done: {cut_table(report)}")
        return report
    except CustomException:
        raise
    except Exception as e:
        logging.error(f"Error in benchmark: {e}")
        raise CustomException(e, sys) from e


def sweep_switches(blocks: int, switch_counts: Sequence[int], modes: Sequence[SolveMode | str], samples: int,
                   rho: float = 0.2, seed: int = 0, providers: int | None = None, kappa: int = 1,
                   driver: Driver | str = Driver.CALLBACK, workers: int = 1, progress: bool = False,
                   density: float = 0.3, nu: float = Config.default_nu,
                   gamma: float = Config.default_gamma) -> list[BenchmarkReport]:
    """One benchmark per switch count on instances sharing the same block data."""
    reports = []
    for count in switch_counts:
        problem = generate_instance(blocks, density, providers, seed, switches=count, kappa=kappa,
                                    nu=nu, gamma=gamma)
        batch = ScenarioBatch(base=problem, samples=samples, rho=rho, seed=seed)
        reports.append(run_benchmark(problem, modes, batch, driver, workers, progress))
    return reports


def cut_table(report: BenchmarkReport) -> str:
    """Method x (radial avg/min/max, GF avg/min/max, median time)."""
    rows = []
    for name, agg in report.aggregates.items():
        rows.append([name, agg.radial_cuts.avg, agg.radial_cuts.min, agg.radial_cuts.max,
                     agg.leader_cuts.avg, agg.leader_cuts.min, agg.leader_cuts.max,
                     float(np.median(report.modes[name].times)) if report.modes[name].times else 0.0])
    headers = ["method", "radial avg", "radial min", "radial max", "GF avg", "GF min", "GF max", "median s"]
    return "\n" + tabulate(rows, headers=headers, tablefmt="github", floatfmt=".3g")


def write_report(reports: BenchmarkReport | Sequence[BenchmarkReport], path: str | Path) -> None:
    items = [reports] if isinstance(reports, BenchmarkReport) else list(reports)
    data = [r.model_dump(mode="json") for r in items]
    Path(path).write_text(yaml.safe_dump(data[0] if len(data) == 1 else {"sweep": data}, sort_keys=False),
                          encoding="utf-8")
