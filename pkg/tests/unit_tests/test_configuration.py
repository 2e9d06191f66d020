import json

from hyperext.configuration import Configuration


def test_configuration_empty() -> None:
    Configuration.from_mapping({})


def test_unknown_keys_are_ignored() -> None:
    config = Configuration.from_mapping({"trials": 2, "colour": "red"})
    assert config.trials == 2


def test_project_json_is_found_upwards(tmp_path) -> None:
    (tmp_path / "hyperext.json").write_text(json.dumps({"defaults": {"seed": 42, "count_budget": 99}}))
    nested = tmp_path / "a" / "b"
    nested.mkdir(parents=True)
    config = Configuration.load_from_project_json(str(nested))
    assert config.seed == 42
    assert config.count_budget == 99


def test_project_json_without_defaults(tmp_path) -> None:
    (tmp_path / "hyperext.json").write_text("{}")
    assert Configuration.load_from_project_json(str(tmp_path)) == Configuration()
