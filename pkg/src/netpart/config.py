from dotenv import load_dotenv
import os

load_dotenv()


def _float(name: str, default: float) -> float:
    return float(os.getenv(name, default))


def _int(name: str, default: int) -> int:
    return int(os.getenv(name, default))


class Config:
    # tolerances
    feasibility_tol = _float("NETPART_FEASIBILITY_TOL", 1e-7)
    integrality_tol = _float("NETPART_INTEGRALITY_TOL", 1e-6)
    objective_tol = _float("NETPART_OBJECTIVE_TOL", 1e-6)
    pivot_tol = _float("NETPART_PIVOT_TOL", 1e-9)
    optimality_tol = _float("NETPART_OPTIMALITY_TOL", 1e-9)
    harris_tol = _float("NETPART_HARRIS_TOL", 1e-9)

    # simplex
    lp_iteration_factor = _int("NETPART_LP_ITERATION_FACTOR", 50)
    bland_stall_threshold = _int("NETPART_BLAND_STALL_THRESHOLD", 50)
    # pivots between refactorizations of the basis from the original rows
    refresh_interval = _int("NETPART_REFRESH_INTERVAL", 50)
    # bound and rhs shift for the retry after a failed residual check
    lp_perturbation = _float("NETPART_LP_PERTURBATION", 1e-7)

    # branch and bound
    node_limit = _int("NETPART_NODE_LIMIT", 200_000)

    # objective defaults
    default_nu = _float("NETPART_NU", 0.9)
    default_gamma = _float("NETPART_GAMMA", 1.0)
    default_cost = _float("NETPART_COST", 1.0)
    default_kappa = _int("NETPART_KAPPA", 1)

    # oracle guard rail on switches, blocks and eligible leaders
    oracle_max_dimension = _int("NETPART_ORACLE_MAX_DIMENSION", 12)

    # process pool size for scenario solves and oracle chunks
    workers = _int("NETPART_WORKERS", 1)

    log_dir = os.getenv("NETPART_LOG_DIR", os.path.join(os.getcwd(), "logs"))
    log_level = os.getenv("NETPART_LOG_LEVEL", "INFO")
