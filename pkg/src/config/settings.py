"""
Process-level settings for hapticstroke, read from the environment / .env
"""
import logging
import os
from dataclasses import dataclass
from typing import Optional, List
from dotenv import load_dotenv

load_dotenv()


@dataclass
class Config:
    """Application configuration"""

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: str = "hapticstroke.log"  # Empty disables the file handler

    # Device configuration file (geometry, motor, PID, control rate)
    DEVICE_CONFIG: str = "config/device.ini"

    # Where commands write artifacts when no explicit path is given
    OUTPUT_DIR: str = "./data"

    # Seed used by `plan` and `run` when --seed is omitted
    DEFAULT_SEED: int = 7

    # Crash reporting (disabled when URL is empty)
    CRASH_REPORT_URL: Optional[str] = None
    CRASH_REPORT_SECRET: Optional[str] = None

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables"""
        return cls(
            LOG_LEVEL=os.getenv("LOG_LEVEL", "INFO").upper(),
            LOG_FILE=os.getenv("LOG_FILE", "hapticstroke.log"),
            DEVICE_CONFIG=os.getenv("DEVICE_CONFIG", "config/device.ini"),
            OUTPUT_DIR=os.getenv("OUTPUT_DIR", "./data"),
            DEFAULT_SEED=int(os.getenv("DEFAULT_SEED", "7")),
            CRASH_REPORT_URL=os.getenv("CRASH_REPORT_URL") or None,
            CRASH_REPORT_SECRET=os.getenv("CRASH_REPORT_SECRET") or None,
        )

    def validate(self) -> List[str]:
        """Validate configuration and return list of errors"""
        errors = []

        if logging.getLevelName(self.LOG_LEVEL) == f"Level {self.LOG_LEVEL}":
            errors.append(f"LOG_LEVEL '{self.LOG_LEVEL}' is not a logging level")

        if self.CRASH_REPORT_URL and not self.CRASH_REPORT_URL.startswith(("http://", "https://")):
            errors.append("CRASH_REPORT_URL must be an http(s) URL")

        return errors

    def is_valid(self) -> bool:
        """Check if configuration is valid"""
        return len(self.validate()) == 0


# Global config instance
config = Config.from_env()
