import pytest
import yaml

from main import main
from src.netpart.tools import ScenarioBatch, generate_instance, parse_network, run_benchmark, write_network
from tests.helpers import block, problem


@pytest.fixture
def network(tmp_path):
    path = tmp_path / "pair.yaml"
    write_network(problem([block(1, [(0.0, 10.0, True)]), block(2, demands=[4.0])], [(1, 2)]), path)
    return path


def test_validate(network, capsys):
    assert main(["validate", "--network", str(network)]) == 0
    assert "2 blocks, 1 switches, 1 eligible leaders, kappa=1" in capsys.readouterr().out


def test_validate_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("blocks:\n  - id: 1\nswitches:\n  - {id: x, from: 1, to: 4, r_max: 1}\n")
    assert main(["validate", "--network", str(bad)]) == 2
    assert "switch x references unknown block 4" in capsys.readouterr().err


def test_usage_error_exits_with_one():
    with pytest.raises(SystemExit) as info:
        main(["solve", "--mode", "fastest"])
    assert info.value.code == 1


def test_invalid_parameter_is_an_input_error(network):
    assert main(["solve", "--network", str(network), "--kappa", "0"]) == 2


def test_solve_writes_a_report(network, tmp_path):
    out = tmp_path / "report.yaml"
    assert main(["solve", "--network", str(network), "--mode", "cp-both", "--driver", "restart",
                 "--out", str(out)]) == 0
    report = yaml.safe_load(out.read_text())
    assert report["status"] == "optimal"
    assert report["objective"] == pytest.approx(0.4)
    assert report["switch_state"] == [1]


def test_oracle(network, capsys):
    assert main(["oracle", "--network", str(network)]) == 0
    assert yaml.safe_load(capsys.readouterr().out)["objective"] == pytest.approx(0.4)


def test_generate(tmp_path):
    out = tmp_path / "gen.yaml"
    assert main(["generate", "--blocks", "4", "--seed", "3", "--kappa", "2", "--out", str(out)]) == 0
    p = parse_network(out)
    assert p.block_count == 4 and p.kappa == 2


def test_bench(network, tmp_path, capsys):
    out = tmp_path / "bench.yaml"
    assert main(["bench", "--network", str(network), "--scenarios", "2", "--mode", "full",
                 "--mode", "cp-both", "--out", str(out)]) == 0
    assert "speedup full/cp-both" in capsys.readouterr().out
    assert len(yaml.safe_load(out.read_text())["modes"]["cp-both"]["times"]) == 2


def test_bench_sweep_keeps_objective_parameters(tmp_path):
    out = tmp_path / "sweep.yaml"
    assert main(["bench", "--blocks", "5", "--seed", "3", "--switches", "5", "--nu", "0.2", "--gamma", "5",
                 "--scenarios", "2", "--mode", "full", "--out", str(out)]) == 0
    written = yaml.safe_load(out.read_text())["modes"]["full"]["objectives"]

    base = generate_instance(5, seed=3, switches=5, nu=0.2, gamma=5.0)
    batch = ScenarioBatch(base=base, samples=2, rho=0.2, seed=3)
    expected = run_benchmark(base, ["full"], batch).modes["full"].objectives
    assert written == pytest.approx(expected)
    default = generate_instance(5, seed=3, switches=5)
    assert run_benchmark(default, ["full"], ScenarioBatch(base=default, samples=2, rho=0.2, seed=3)) \
        .modes["full"].objectives != pytest.approx(expected)


def test_bench_rejects_a_network_with_switch_counts(network):
    with pytest.raises(SystemExit) as info:
        main(["bench", "--network", str(network), "--switches", "3"])
    assert info.value.code == 1
