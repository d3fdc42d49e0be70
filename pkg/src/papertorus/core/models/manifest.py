"""Run manifest written next to every CLI output."""

from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from papertorus import __version__


class RunManifest(BaseModel):
    """Everything needed to rerun a subcommand and reproduce its outputs."""

    subcommand: str
    input_paths: List[str] = Field(default_factory=list)
    seed: int = 0
    precision: int = 64
    threads: int = 1
    output_dir: str = "output"
    tool_version: str = __version__
    config: Dict[str, Any] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=list)
    exit_code: Optional[int] = None

    def write(self, out_dir: Path) -> Path:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{self.subcommand}.manifest.json"
        path.write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")
        return path
