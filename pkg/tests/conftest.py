# tests/conftest.py
import logging
from pathlib import Path

import pytest

from common.config import CONFIG_ENV_VAR, get_settings
from common.logging import ROOT_LOGGER
from solvers.cli.problem_file import ProblemFile, parse_problem

INSTANCES = Path(__file__).resolve().parents[1] / "data" / "instances"


@pytest.fixture(autouse=True)
def quiet_settings(tmp_path, monkeypatch):
    """Console-only logging and default caps; no logs/ directory."""
    cfg = tmp_path / "config.yaml"
    cfg.write_text("runtime:\n  log_level: WARNING\n  log_dir: null\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(cfg))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    logger = logging.getLogger(ROOT_LOGGER)
    for h in list(logger.handlers):
        logger.removeHandler(h)
        h.close()


def load_instance(name: str) -> ProblemFile:
    return parse_problem((INSTANCES / name).read_text(encoding="utf-8"))


@pytest.fixture
def ex1() -> ProblemFile:
    return load_instance("ex1.election")


@pytest.fixture
def ex2() -> ProblemFile:
    return load_instance("ex2.election")


@pytest.fixture
def instances_dir() -> Path:
    return INSTANCES
