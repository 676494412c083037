# -*- encoding: utf-8 -*-
"""The suspended_circuits logger."""
import logging
import logging.config
import os

import yaml

LOGGER_NAME = "suspended_circuits"
_CONF_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "conf.yaml")


def create_logger(log_level: str = "WARNING") -> logging.Logger:
    with open(_CONF_PATH) as conf_file:
        conf = yaml.safe_load(conf_file)
    conf["loggers"][LOGGER_NAME]["level"] = log_level.upper()
    logging.config.dictConfig(conf)

    logger = logging.getLogger(LOGGER_NAME)
    # handlers log through children of the package logger
    logger.setLevel(logging.getLevelName(log_level.upper()))
    return logger
