# election-matching-solvers/common/config.py
from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, Field

# --------------------------------------------------------------------
# Config loading
# --------------------------------------------------------------------

ROOT = Path(__file__).resolve().parents[1]
CONFIG_ENV_VAR = "EMS_CONFIG"
DEFAULT_CONFIG_PATH = ROOT / "config" / "config.yaml"

Backend = Literal["auto", "tutte", "milp"]


class RuntimeSettings(BaseModel):
    log_level: str = "INFO"
    log_dir: Optional[str] = "logs"


class MatchingSettings(BaseModel):
    backend: Backend = "auto"
    tutte_vertex_limit: int = Field(160, ge=0)
    brute_force_edge_cap: int = Field(20, ge=0)
    weight_limit: int = Field(2**31 - 1, gt=0)


class OracleSettings(BaseModel):
    ccrv_voter_cap: int = Field(14, ge=0)
    bribery_voter_cap: int = Field(10, ge=0)
    bribery_candidate_cap: int = Field(6, ge=0)


class VetoBriberySettings(BaseModel):
    exact_voter_cap: int = Field(22, ge=0)
    rx3c_set_cap: int = Field(24, ge=0)


class CoverAuditSettings(BaseModel):
    nmts_cap: int = Field(8, ge=0)
    brute_force_edge_cap: int = Field(16, ge=0)


class PoolSettings(BaseModel):
    workers: int = Field(1, ge=1)


class Settings(BaseModel):
    """
    Validated view of config.yaml. Every section is optional; absent keys
    fall back to the defaults above.
    """

    runtime: RuntimeSettings = Field(default_factory=RuntimeSettings)
    matching: MatchingSettings = Field(default_factory=MatchingSettings)
    oracles: OracleSettings = Field(default_factory=OracleSettings)
    veto_bribery: VetoBriberySettings = Field(default_factory=VetoBriberySettings)
    cover_audit: CoverAuditSettings = Field(default_factory=CoverAuditSettings)
    pool: PoolSettings = Field(default_factory=PoolSettings)


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    cfg_path = Path(path or os.getenv(CONFIG_ENV_VAR, str(DEFAULT_CONFIG_PATH)))
    if not cfg_path.exists():
        if path is not None:
            raise RuntimeError(f"Config file not found at {cfg_path!s}")
        return {}
    with cfg_path.open("r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def load_settings(path: Optional[str] = None) -> Settings:
    return Settings.model_validate(load_config(path))


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
