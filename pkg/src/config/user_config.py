"""
User Configuration Management

Toolkit defaults stored in JSON: explorer sampling, SVG rendering and log
level. Following the project conventions:
- Fail-fast validation in __post_init__
- Structured logging
- Atomic saves
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import structlog

from ..geometry.errors import InputError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class ExplorerSettings:
    """Sampling defaults for the generators and searches"""

    coordinate_bound: int = 50
    retry_budget: int = 64
    trials: int = 1000
    seed: int = 42
    workers: int = 1
    max_recorded: int = 100

    def __post_init__(self) -> None:
        """Validate explorer values"""
        if self.coordinate_bound < 2:
            raise ValueError("coordinate_bound must be at least 2")
        if self.retry_budget < 1:
            raise ValueError("retry_budget must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.max_recorded < 0:
            raise ValueError("max_recorded cannot be negative")


@dataclass
class RenderSettings:
    """SVG output settings"""

    width_px: int = 800
    margin: str = "1/10"
    label_offset_px: int = 6
    marker_radius_px: int = 3
    decimals: int = 6

    def __post_init__(self) -> None:
        """Validate render values"""
        if self.width_px < 50:
            raise ValueError("width_px must be at least 50")
        try:
            margin = self.margin_fraction
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"margin must be a rational string, got {self.margin!r}") from e
        if margin < 0:
            raise ValueError("margin cannot be negative")
        if not 0 <= self.decimals <= 12:
            raise ValueError("decimals must be between 0 and 12")
        if self.label_offset_px < 0 or self.marker_radius_px < 1:
            raise ValueError("label_offset_px must be >= 0 and marker_radius_px >= 1")

    @property
    def margin_fraction(self) -> Fraction:
        return Fraction(self.margin)


@dataclass
class LoggingSettings:
    level: str = "WARNING"

    def __post_init__(self) -> None:
        self.level = self.level.upper()
        if self.level not in LOG_LEVELS:
            raise ValueError(f"Log level must be one of {', '.join(LOG_LEVELS)}")

    @property
    def numeric_level(self) -> int:
        return logging.getLevelNamesMapping()[self.level]


@dataclass
class ToolkitConfig:
    """All persisted settings"""

    explorer: ExplorerSettings = field(default_factory=ExplorerSettings)
    render: RenderSettings = field(default_factory=RenderSettings)
    logging: LoggingSettings = field(default_factory=LoggingSettings)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            "explorer": asdict(self.explorer),
            "render": asdict(self.render),
            "logging": asdict(self.logging),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ToolkitConfig":
        """Create from dictionary (JSON deserialization)"""
        return cls(
            explorer=ExplorerSettings(**data.get("explorer", {})),
            render=RenderSettings(**data.get("render", {})),
            logging=LoggingSettings(**data.get("logging", {})),
        )


class UserConfig:
    """
    User configuration management with JSON persistence.

    A missing or malformed file at the default location falls back to
    defaults. With strict=True (an explicitly requested file) the same
    problems raise InputError instead.
    """

    CONFIG_VERSION = "1.0"
    DEFAULT_CONFIG_DIR = Path.home() / ".config" / "trihomology"
    DEFAULT_CONFIG_FILE = "config.json"

    def __init__(self, config_path: Path | None = None, strict: bool = False):
        self.logger = structlog.get_logger(__name__)
        self.config_path = config_path or self.DEFAULT_CONFIG_DIR / self.DEFAULT_CONFIG_FILE
        self.strict = strict

        self.config = ToolkitConfig()
        self._version = self.CONFIG_VERSION

        self.load()

        self.logger.info(
            "User configuration initialized",
            config_event="user_config_init",
            module=__name__,
            config_path=str(self.config_path),
            version=self._version,
        )

    def _fallback(self, event: str, message: str, error: Exception | None = None) -> None:
        if self.strict:
            raise InputError(f"{message}: {self.config_path}" + (f" ({error})" if error else ""))
        log = self.logger.info if error is None else self.logger.error
        log(
            message,
            config_event=event,
            module=__name__,
            config_path=str(self.config_path),
            error=str(error) if error else None,
        )

    def load(self) -> None:
        """
        Load configuration from JSON file.

        Raises:
            InputError: In strict mode, if the file is missing or invalid
        """
        if not self.config_path.exists():
            self._fallback("config_file_not_found", "Configuration file not found, using defaults")
            return

        try:
            with open(self.config_path, encoding="utf-8") as f:
                data = json.load(f)
            self._version = data.get("version", self.CONFIG_VERSION)
            self.config = ToolkitConfig.from_dict(data)
        except json.JSONDecodeError as e:
            self._fallback("config_json_invalid", "Invalid JSON in configuration file", e)
            return
        except (AttributeError, KeyError, TypeError, ValueError) as e:
            self._fallback("config_data_invalid", "Invalid configuration data structure", e)
            return
        except OSError as e:
            self._fallback("config_os_error", "File system error reading configuration", e)
            return

        self.logger.info(
            "User configuration loaded",
            config_event="config_loaded",
            module=__name__,
            config_path=str(self.config_path),
            version=self._version,
        )

    def save(self) -> None:
        """
        Save configuration to JSON file.

        Raises:
            OSError: If unable to write configuration file
        """
        try:
            self.config_path.parent.mkdir(parents=True, exist_ok=True)
            config_data = {"version": self._version, **self.config.to_dict()}

            # Write atomically using temporary file
            temp_path = self.config_path.with_suffix(".tmp")
            with open(temp_path, "w", encoding="utf-8") as f:
                json.dump(config_data, f, indent=2, ensure_ascii=False)
            temp_path.replace(self.config_path)

            self.logger.info(
                "User configuration saved",
                config_event="config_saved",
                module=__name__,
                config_path=str(self.config_path),
            )
        except OSError as e:
            self.logger.error(
                "File system error saving configuration",
                config_event="config_save_os_error",
                module=__name__,
                config_path=str(self.config_path),
                error=str(e),
            )
            raise OSError(f"File system error saving configuration: {e}") from e

    def reset_to_defaults(self) -> None:
        self.config = ToolkitConfig()
        self.save()

        self.logger.info(
            "Configuration reset to defaults",
            config_event="config_reset",
            module=__name__,
        )

    def get_config_info(self) -> dict[str, Any]:
        """Get configuration information for debugging"""
        return {
            "version": self._version,
            "config_path": str(self.config_path),
            "config_exists": self.config_path.exists(),
            **self.config.to_dict(),
        }


# Export only necessary symbols
__all__ = [
    "LOG_LEVELS",
    "ExplorerSettings",
    "LoggingSettings",
    "RenderSettings",
    "ToolkitConfig",
    "UserConfig",
]
