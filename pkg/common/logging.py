# election-matching-solvers/common/logging.py
from __future__ import annotations
import logging, os
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

ROOT_LOGGER = "ems"

_LEVELS = {
    "CRITICAL": logging.CRITICAL,
    "ERROR": logging.ERROR,
    "WARNING": logging.WARNING,
    "INFO": logging.INFO,
    "DEBUG": logging.DEBUG,
}

def _level_from_env(default: str = "INFO") -> int:
    return _LEVELS.get(os.getenv("LOG_LEVEL", default).upper(), logging.INFO)

def get_logger(name: str) -> logging.Logger:
    """
    Module logger under the shared 'ems' parent.
    Handlers live on the parent only (see configure_logging), so library
    modules can call this at import time without touching the filesystem.
    """
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")

def configure_logging(log_dir: Optional[str] = "logs", level: Optional[str] = None) -> logging.Logger:
    """
    Rotating file + console logger on the 'ems' parent.
    - logs/ems.log (5 MB x 5 files); log_dir=None => console only
    - honors LOG_LEVEL env or provided level
    - idempotent (safe to call multiple times)
    """
    logger = logging.getLogger(ROOT_LOGGER)
    if logger.handlers:  # already configured
        return logger

    log_level = _LEVELS.get(level.upper(), _level_from_env()) if level else _level_from_env()

    fmt = logging.Formatter(
        fmt="%(asctime)s %(levelname)s %(name)s - %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S%z",
    )

    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        fh = RotatingFileHandler(
            filename=str(Path(log_dir) / f"{ROOT_LOGGER}.log"),
            maxBytes=5_000_000,
            backupCount=5,
            encoding="utf-8",
        )
        fh.setFormatter(fmt)
        fh.setLevel(log_level)
        logger.addHandler(fh)

    # Console (stderr; stdout is reserved for reports)
    ch = logging.StreamHandler()
    ch.setFormatter(fmt)
    ch.setLevel(log_level)
    logger.addHandler(ch)

    logger.setLevel(log_level)
    logger.propagate = False
    return logger
