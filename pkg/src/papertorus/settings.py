"""Runtime settings.

All tunable constants default to the values used for the pup tent and can be
overridden through ``PTX_*`` environment variables (or a ``.env`` file).
CLI options take their defaults from here.
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

DEFAULT_PRECISION = 64
DEFAULT_GRID = 300
DEFAULT_SCALE_EXPONENT = 32
DEFAULT_DIHEDRAL_FLOOR = 1e-5
DEFAULT_MIN_ANGLE_FLOOR = 1e-5


class Settings(BaseModel):
    """Effective configuration for a run."""

    precision: int = Field(DEFAULT_PRECISION, ge=16, description="Working precision in decimal digits")
    seed: int = 0
    threads: int = Field(1, ge=1)
    output_dir: Path = Path("output")
    grid: int = Field(DEFAULT_GRID, ge=1, description="Separation direction grid radius")
    scale_exponent: int = Field(DEFAULT_SCALE_EXPONENT, ge=1, description="Integer scaling is 10**scale_exponent")
    dihedral_floor: float = Field(DEFAULT_DIHEDRAL_FLOOR, gt=0)
    min_angle_floor: float = Field(DEFAULT_MIN_ANGLE_FLOOR, gt=0)
    log_mode: str = "auto"
    log_level: str = "INFO"
    log_file: Optional[Path] = None

    @property
    def scale(self) -> int:
        return 10**self.scale_exponent


def _env(name: str, default: str) -> str:
    return os.getenv(f"PTX_{name}", default)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build settings from the environment (cached for the process)."""
    log_file = os.getenv("PTX_LOG_FILE")
    return Settings(
        precision=int(_env("PRECISION", str(DEFAULT_PRECISION))),
        seed=int(_env("SEED", "0")),
        threads=int(_env("THREADS", "1")),
        output_dir=Path(_env("OUTPUT_DIR", "output")),
        grid=int(_env("GRID", str(DEFAULT_GRID))),
        scale_exponent=int(_env("SCALE_EXPONENT", str(DEFAULT_SCALE_EXPONENT))),
        dihedral_floor=float(_env("DIHEDRAL_FLOOR", str(DEFAULT_DIHEDRAL_FLOOR))),
        min_angle_floor=float(_env("MIN_ANGLE_FLOOR", str(DEFAULT_MIN_ANGLE_FLOOR))),
        log_mode=_env("LOG_MODE", "auto"),
        log_level=_env("LOG_LEVEL", "INFO"),
        log_file=Path(log_file) if log_file else None,
    )
