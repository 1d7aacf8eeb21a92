import tomllib
from functools import cached_property
from importlib import metadata
from pathlib import Path
from typing import Literal

from pydantic import Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict

from pimlang.log import DebugLevels, get_logger

log = get_logger(__name__)


def _load_poetry_toml(project_dir: Path) -> dict:
    try:
        with open(f"{project_dir}/pyproject.toml", "rb") as f:
            data = tomllib.load(f)["tool"]["poetry"]
        log.debug("Loaded pyproject.toml")
        return data
    except FileNotFoundError:
        log.debug("pyproject.toml not found, using distribution metadata")
    try:
        dist = metadata.metadata("pimlang")
        return {
            "name": dist["Name"],
            "version": dist["Version"],
            "description": dist["Summary"] or "",
        }
    except metadata.PackageNotFoundError:
        return {"name": "pimlang", "version": "0.0.0", "description": ""}


PROJECT_DIR = Path(__file__).parent.parent
PYPROJECT_CONTENT = _load_poetry_toml(PROJECT_DIR)


class Settings(BaseSettings):
    ENVIRONMENT: Literal["DEV", "TEST", "PROD"] = "DEV"
    LOG_LEVEL: str | None = None

    PROJECT_NAME: str = PYPROJECT_CONTENT["name"]
    VERSION: str = PYPROJECT_CONTENT["version"]
    DESCRIPTION: str = PYPROJECT_CONTENT["description"]

    SAMPLE_TIME: float = Field(10.0, gt=0)
    SAMPLE_POINTS: int = Field(20, ge=1)
    POPULATION: int = Field(1000, ge=0)
    STATE_CAP: int = Field(2**16, ge=1)

    REPLICATES: int = Field(1, ge=1)
    DIFF_REPLICATES: int = Field(200, ge=2)
    WORKERS: int = Field(4, ge=1)
    Z_THRESHOLD: float = Field(3.0, gt=0)

    @computed_field
    @cached_property
    def DEFAULT_LOG_LEVEL(self) -> str:
        return "INFO" if self.ENVIRONMENT == "DEV" else "WARNING"

    def resolve_log_level(self) -> str:
        log.debug("Resolving log level based on ENVIRONMENT %s", self.ENVIRONMENT)
        if self.LOG_LEVEL is None:
            return self.DEFAULT_LOG_LEVEL
        if self.LOG_LEVEL.upper() in DebugLevels:
            return self.LOG_LEVEL.upper()
        log.debug("Invalid log level %s. Available: %s", self.LOG_LEVEL, DebugLevels)
        raise ValueError("Invalid log level")

    model_config = SettingsConfigDict(
        env_file=f"{PROJECT_DIR}/.env",
        env_prefix="PIMLANG_",
        case_sensitive=True,
        extra="ignore",
    )


settings: Settings = Settings()
