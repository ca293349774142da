import argparse
import os
import sys
import traceback
from typing import Optional, Sequence

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

# Load environment variables first
load_dotenv()

# Add project path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.netpart.config import Config
from src.netpart.core.problem import PartitionProblem
from src.netpart.exception import CustomException, InfeasibleProblemError, InputError, SolverFailure
from src.netpart.logger import logging
from src.netpart.modules.cutting.driver import Driver, SolveMode, SolveStatus, solve_with_cuts
from src.netpart.modules.oracle.enumerate import enumerate_optimal
from src.netpart.tools.benchmark import cut_table, run_benchmark, sweep_switches, write_report
from src.netpart.tools.generator import generate_instance
from src.netpart.tools.network_file import parse_network, serialize_network, write_network
from src.netpart.tools.scenarios import ScenarioBatch

USAGE_ERROR = 1


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _instance_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--network", help="network file (YAML); a random instance is generated when omitted")
    parser.add_argument("--blocks", type=int, default=6, help="blocks of a generated instance")
    parser.add_argument("--density", type=float, default=0.3, help="extra switch density of a generated instance")
    parser.add_argument("--providers", type=int, default=None, help="providers of a generated instance")
    parser.add_argument("--seed", type=int, default=0, help="instance and scenario seed")
    parser.add_argument("--kappa", type=int, default=None, help="leader limit per component")
    parser.add_argument("--nu", type=float, default=None, help="load-shedding weight")
    parser.add_argument("--gamma", type=float, default=None, help="priority scale")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="netpart", description="Optimal network partitioning with controllable switches")
    parser.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="logging level for the log file")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="solve one instance")
    _instance_arguments(solve)
    solve.add_argument("--mode", choices=[m.value for m in SolveMode], default=SolveMode.CP_BOTH.value)
    solve.add_argument("--driver", choices=[d.value for d in Driver], default=Driver.CALLBACK.value)
    solve.add_argument("--out", help="write the solve report here")

    bench = commands.add_parser("bench", help="solve demand scenarios in several modes")
    _instance_arguments(bench)
    bench.add_argument("--mode", action="append", choices=[m.value for m in SolveMode],
                       help="mode to benchmark; repeat for several (default: all)")
    bench.add_argument("--driver", choices=[d.value for d in Driver], default=Driver.CALLBACK.value)
    bench.add_argument("--scenarios", type=int, default=20)
    bench.add_argument("--rho", type=float, default=0.2, help="demand perturbation fraction")
    bench.add_argument("--switches", type=int, action="append",
                       help="switch count of a generated instance; repeat to sweep")
    bench.add_argument("--workers", type=int, default=Config.workers)
    bench.add_argument("--out", help="write the benchmark report here")

    oracle = commands.add_parser("oracle", help="brute-force optimum of a small instance")
    _instance_arguments(oracle)
    oracle.add_argument("--workers", type=int, default=Config.workers)
    oracle.add_argument("--out", help="write the oracle result here")

    generate = commands.add_parser("generate", help="write a random instance")
    _instance_arguments(generate)
    generate.add_argument("--switches", type=int, default=None)
    generate.add_argument("--out", help="network file to write (stdout when omitted)")

    validate = commands.add_parser("validate", help="check a network file")
    validate.add_argument("--network", required=True)
    return parser


def _with_parameters(problem: PartitionProblem, args: argparse.Namespace) -> PartitionProblem:
    try:
        return problem.with_parameters(kappa=args.kappa, nu=args.nu, gamma=args.gamma)
    except ValidationError as e:
        raise InputError(f"invalid parameters: {e.errors()[0]['msg']}") from e


def _load_problem(args: argparse.Namespace, switches: Optional[int] = None) -> PartitionProblem:
    if args.network:
        problem = parse_network(args.network)
    else:
        problem = generate_instance(args.blocks, args.density, args.providers, args.seed, switches=switches)
    return _with_parameters(problem, args)


def _emit(data: dict, out: Optional[str]) -> None:
    text = yaml.safe_dump(data, sort_keys=False)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        print(text, end="")


def cmd_solve(args: argparse.Namespace) -> int:
    problem = _load_problem(args)
    report = solve_with_cuts(problem, args.mode, args.driver)
    _emit(report.model_dump(mode="json"), args.out)
    if report.status is SolveStatus.INFEASIBLE:
        raise InfeasibleProblemError("the instance has no feasible configuration")
    if report.status is SolveStatus.INTERNAL_ERROR:
        raise SolverFailure("cutting-plane iteration cap reached")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    modes = args.mode or [m.value for m in SolveMode]
    if args.switches:
        try:
            reports = sweep_switches(
                args.blocks, args.switches, modes, args.scenarios, args.rho, args.seed, args.providers,
                Config.default_kappa if args.kappa is None else args.kappa, args.driver, args.workers,
                progress=True, density=args.density,
                nu=Config.default_nu if args.nu is None else args.nu,
                gamma=Config.default_gamma if args.gamma is None else args.gamma,
            )
        except ValidationError as e:
            raise InputError(f"invalid parameters: {e.errors()[0]['msg']}") from e
    else:
        problem = _load_problem(args)
        batch = ScenarioBatch(base=problem, samples=args.scenarios, rho=args.rho, seed=args.seed)
        reports = [run_benchmark(problem, modes, batch, args.driver, args.workers, progress=True)]
    for report in reports:
        print(f"{report.blocks} blocks, {report.switches} switches, {report.scenarios} scenarios")
        print(cut_table(report))
        for mode, s in report.speedups.items():
            print(f"  speedup full/{mode}: median {s.median:.2f}x, p95 {s.p95:.2f}x")
        if report.load_served:
            ls = report.load_served
            print(f"  nominal load served: {ls.served:.2f} of {ls.served + ls.shed:.2f} "
                  f"({ls.percent_served:.1f}%), {ls.energized_blocks}/{ls.blocks_with_demand} blocks energized")
    if args.out:
        write_report(reports, args.out)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    problem = _load_problem(args)
    result = enumerate_optimal(problem, workers=args.workers)
    _emit(result.model_dump(mode="json"), args.out)
    if not result.is_feasible:
        raise InfeasibleProblemError("the instance has no feasible configuration")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    problem = _with_parameters(
        generate_instance(args.blocks, args.density, args.providers, args.seed, switches=args.switches), args)
    if args.out:
        write_network(problem, args.out)
    else:
        print(serialize_network(problem), end="")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    problem = parse_network(args.network)
    print(f"{args.network}: {problem.block_count} blocks, {problem.switch_count} switches, "
          f"{len(problem.eligible_leaders)} eligible leaders, kappa={problem.kappa}")
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "bench": cmd_bench,
    "oracle": cmd_oracle,
    "generate": cmd_generate,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench" and args.network and args.switches:
        parser.error("--switches generates instances and cannot be combined with --network")
    if args.log_level:
        logging.getLogger().setLevel(args.log_level)
    logging.info(f"netpart {args.command} ...................")
    try:
        return COMMANDS[args.command](args)
    except CustomException as e:
        logging.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logging.error(f"Unhandled exception: {e}")
        logging.error(f"Full traceback: {traceback.format_exc()}")
        print(f"internal error: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
