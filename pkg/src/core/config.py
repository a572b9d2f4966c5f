"""Defaults and environment-backed settings."""

import os
from dataclasses import dataclass
from typing import Optional

# Distance defaults shared by the CLI and the bench.
DEFAULT_P = 2.0
DEFAULT_EPSILON = 0.2
DEFAULT_DIRECTIONS = 1000
DEFAULT_N_ALPHA = 20
DEFAULT_DEPTH_NOTION = "halfspace"
DEFAULT_SEED = 0

DEFAULT_MC_POINTS = 100_000
DEFAULT_BOX_INFLATION = 0.10

# Upper bound on the number of float64 entries a projection block may hold.
DEFAULT_CHUNK_ELEMENTS = 1 << 22

DEPTH_NOTIONS = ("halfspace", "projection")
ALPHA_MODES = ("random", "grid")

ENV_SEED = "DRW_SEED"
ENV_THREADS = "DRW_THREADS"
ENV_CHUNK_ELEMENTS = "DRW_CHUNK_ELEMENTS"
ENV_LOG_LEVEL = "DRW_LOG_LEVEL"


@dataclass(frozen=True)
class Settings:
    """Process-wide knobs read from the environment."""

    seed: int = DEFAULT_SEED
    threads: int = 1
    chunk_elements: int = DEFAULT_CHUNK_ELEMENTS
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> "Settings":
        env = os.environ if environ is None else environ
        try:
            return cls(
                seed=int(env.get(ENV_SEED, DEFAULT_SEED)),
                threads=max(1, int(env.get(ENV_THREADS, os.cpu_count() or 1))),
                chunk_elements=max(1, int(env.get(ENV_CHUNK_ELEMENTS, DEFAULT_CHUNK_ELEMENTS))),
                log_level=str(env.get(ENV_LOG_LEVEL, "WARNING")).upper(),
            )
        except ValueError as e:
            raise ValueError(f"Invalid environment setting: {e}") from e
