import json

from mock import patch

from ncbvkit.logsetup import load_configuration, replace_item, setup_logging


def test_replace_item_is_recursive():
    config = {"level": "INFO", "handlers": {"console": {"level": "INFO", "class": "x"}}, "other": [1]}
    replace_item(config, "level", "DEBUG")
    assert config == {"level": "DEBUG", "handlers": {"console": {"level": "DEBUG", "class": "x"}}, "other": [1]}


def test_bundled_configuration():
    config = load_configuration()
    assert config["loggers"]["ncbvkit"]["propagate"] is False
    assert config["disable_existing_loggers"] is False


@patch("logging.config.dictConfig")
def test_levels_are_applied_everywhere(mock_dict_config):
    config = setup_logging("ERROR")
    mock_dict_config.assert_called_once_with(config)
    assert config["handlers"]["console"]["level"] == "ERROR"
    assert config["loggers"]["ncbvkit"]["level"] == "ERROR"
    assert config["root"]["level"] == "ERROR"
    assert config["handlers"]["console"]["formatter"] == "simple"


@patch("logging.config.dictConfig")
def test_debug_shows_logger_names(mock_dict_config):
    config = setup_logging("DEBUG")
    assert config["handlers"]["console"]["formatter"] == "detailed"


@patch("logging.config.dictConfig")
def test_alternative_configuration_file(mock_dict_config, tmp_path):
    path = tmp_path / "logging.json"
    path.write_text(json.dumps({
        "version": 1,
        "handlers": {"console": {"class": "logging.StreamHandler", "level": "INFO"}},
        "root": {"handlers": ["console"], "level": "INFO"},
    }))
    config = setup_logging("WARNING", str(path))
    assert config["root"]["level"] == "WARNING"
    mock_dict_config.assert_called_once_with(config)
