from src.netpart.modules.oracle.enumerate import (
    OracleConfiguration, OracleResult, check_configuration, check_dimensions, enumerate_optimal, iter_feasible,
)

__all__ = [
    "OracleConfiguration", "OracleResult", "check_configuration", "check_dimensions", "enumerate_optimal",
    "iter_feasible",
]
