"""Centralized logging configuration."""

import logging

ROOT_LOGGER_NAME = "tabimage"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def get_logger(name: str, level: str = "INFO") -> logging.Logger:
    """Get a configured logger instance."""
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level))

    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)

    return logger


def configure_logging(level: str = "INFO") -> logging.Logger:
    """Configure the package root logger; module loggers propagate to it."""
    return get_logger(ROOT_LOGGER_NAME, level.upper())
