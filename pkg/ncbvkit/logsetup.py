"""
Centralized logging configuration
"""
import json
import logging
import logging.config
import os.path

CONFIGURATION_NAME = "logging.json"


def replace_item(obj, key, replace_value):
    """
    Replaces the dictionary value of key with replace_value in the obj dictionary, recursively
    """
    if key in obj:
        obj[key] = replace_value

    for value in obj.values():
        if isinstance(value, dict):
            replace_item(value, key, replace_value)


def load_configuration(path=None):
    """
    Read the logging configuration, by default the one bundled with the package
    """
    if path is None:
        path = os.path.join(os.path.dirname(os.path.abspath(__file__)), CONFIGURATION_NAME)
    with open(path) as configuration_file:
        return json.load(configuration_file)


def setup_logging(level="WARNING", path=None):
    """
    Apply the logging configuration with every level set to level

    :param level: Level name applied to all handlers and loggers
    :param path: Alternative configuration file
    :return: The configuration dictionary that was applied
    """
    config_dict = load_configuration(path)
    replace_item(config_dict, "level", level)
    # Logger names are only shown when debugging
    config_dict["handlers"]["console"]["formatter"] = "detailed" if level == "DEBUG" else "simple"
    logging.config.dictConfig(config_dict)
    return config_dict
