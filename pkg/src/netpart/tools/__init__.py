from src.netpart.tools.network_file import (
    NetworkFile, network_document, parse_network, parse_network_text, serialize_network, write_network,
)
from src.netpart.tools.generator import generate_instance
from src.netpart.tools.scenarios import ScenarioBatch
from src.netpart.tools.benchmark import (
    BenchmarkReport, ModeResults, cut_table, run_benchmark, sweep_switches, write_report,
)

__all__ = [
    "BenchmarkReport", "ModeResults", "NetworkFile", "ScenarioBatch", "cut_table", "generate_instance",
    "network_document", "parse_network", "parse_network_text", "run_benchmark", "serialize_network",
    "sweep_switches", "write_network", "write_report",
]
