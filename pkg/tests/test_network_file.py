import pytest

from src.netpart.exception import InputError, NetworkParseError
from src.netpart.tools import (
    generate_instance, network_document, parse_network, parse_network_text, serialize_network, write_network,
)
from tests.helpers import bare

MINIMAL = "blocks:\n  - id: 1\n"

UNKNOWN_BLOCK = """\
blocks:
  - id: 1
  - id: 2
switches:
  - {id: s7, from: 1, to: 9, r_max: 5}
"""

FULL = """\
parameters: {kappa: 2, nu: 0.8, gamma: 1.5}
blocks:
  - id: 2
    consumers: [{id: m2, demand: 1.5}]
  - id: 1
    providers: [{id: 7, c_min: 0, c_max: 5, leader: true, cost: 2}]
    consumers: [{id: m1, demand: 3}]
    intermediaries: [n1]
switches:
  - {id: s1, from: 1, to: 2, r_max: 10}
"""


def test_minimal_file():
    p = parse_network_text(MINIMAL)
    assert p.block_ids == (1,)
    assert p.switch_count == 0
    assert p.kappa == 1


def test_full_file():
    p = parse_network_text(FULL)
    assert p.block_ids == (1, 2)
    assert (p.kappa, p.nu, p.gamma) == (2, 0.8, 1.5)
    provider = p.blocks[0].providers[0]
    assert provider.id == "7"
    assert provider.leader_eligible and provider.cost == 2.0
    assert p.blocks[0].intermediaries == ("n1",)
    assert p.switches[0].label == "s1"
    assert p.endpoints == ((0, 1),)


def test_unknown_block_names_the_switch_and_position():
    with pytest.raises(NetworkParseError, match="switch s7 references unknown block 9") as info:
        parse_network_text(UNKNOWN_BLOCK, "net.yaml")
    assert (info.value.path, info.value.line, info.value.column) == ("net.yaml", 5, 27)
    assert str(info.value).startswith("net.yaml:5:27: ")
    assert isinstance(info.value, InputError)


def test_missing_field_points_at_its_entry():
    text = UNKNOWN_BLOCK.replace("to: 9, r_max: 5", "to: 2")
    with pytest.raises(NetworkParseError, match="r_max") as info:
        parse_network_text(text)
    assert info.value.line == 5


def test_unknown_field_rejected():
    with pytest.raises(NetworkParseError, match="colour"):
        parse_network_text("blocks:\n  - id: 1\n    colour: red\n")


def test_duplicates_rejected():
    with pytest.raises(NetworkParseError, match="duplicate block id 1") as info:
        parse_network_text("blocks:\n  - id: 1\n  - id: 1\n")
    assert info.value.line == 3
    text = "blocks: [{id: 1}, {id: 2}]\nswitches:\n  - {id: a, from: 1, to: 2, r_max: 1}\n" \
           "  - {id: a, from: 2, to: 1, r_max: 1}\n"
    with pytest.raises(NetworkParseError, match="duplicate switch id a"):
        parse_network_text(text)


def test_problem_level_errors_are_parse_errors():
    text = "blocks:\n  - id: 1\n    providers: [{id: g, c_min: 4, c_max: 1}]\n"
    with pytest.raises(NetworkParseError, match="exceeds c_max"):
        parse_network_text(text)


def test_yaml_syntax_error_has_a_position():
    with pytest.raises(NetworkParseError) as info:
        parse_network_text("blocks: [1, 2\n")
    assert info.value.line is not None


def test_top_level_must_be_a_mapping():
    with pytest.raises(NetworkParseError, match="mapping"):
        parse_network_text("- 1\n- 2\n")


def test_missing_file(tmp_path):
    with pytest.raises(NetworkParseError, match="cannot read"):
        parse_network(tmp_path / "absent.yaml")


def test_generated_instance_round_trips(tmp_path):
    p = generate_instance(10, seed=3)
    path = tmp_path / "net.yaml"
    write_network(p, path)
    parsed = parse_network(path)
    assert serialize_network(parsed) == serialize_network(p)
    assert parsed == p


def test_unlabelled_switches_are_named_by_position():
    doc = network_document(bare(2, [(1, 2)]))
    assert doc["switches"][0]["id"] == "s0"
    p = parse_network_text("blocks: [{id: 1}, {id: 2}]\nswitches: [{from: 1, to: 2, r_max: 1}]\n")
    assert network_document(p)["switches"][0]["id"] == "0"
