"""Application configuration management."""
import os
from pathlib import Path
from typing import Final

from dotenv import load_dotenv


class AppConfig:
    """Initialize application configuration from environment variables."""

    def __init__(self) -> None:
        """Initialize application configuration from environment variables."""
        load_dotenv()
        self.base_dir: Final[Path] = Path(__file__).resolve().parent.parent
        self.kl_max_n: Final[int] = int(os.getenv("KL_MAX_N", "9"))
        self.kl_memory_limit_mb: Final[int] = int(
            os.getenv(
                "KL_MEMORY_LIMIT_MB",
                "2048",
            ))
        self.threads: Final[int] = max(1, int(os.getenv("THREADS", "1")))
        self.cache_dir: Final[Path] = Path(
            os.getenv(
                "CACHE_DIR",
                str(self.base_dir / ".cache"),
            ))
        self.search_progress_every: Final[int] = int(
            os.getenv(
                "SEARCH_PROGRESS_EVERY",
                "1000",
            ))

        _debug_env = os.getenv("DEBUG", "0").lower()
        self.debug: Final[bool] = _debug_env in {"1", "true", "yes", "on"}


config = AppConfig()
