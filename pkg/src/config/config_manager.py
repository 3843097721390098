"""
Configuration Manager

Main configuration interface for the toolkit. Command-line flags override
stored values per invocation and are never persisted.
Following the project conventions:
- Single responsibility
- Fail-fast validation
- Structured logging
"""

from dataclasses import replace
from pathlib import Path
from typing import Any

import structlog

from .user_config import (
    ExplorerSettings,
    LoggingSettings,
    RenderSettings,
    UserConfig,
)


class ConfigManager:
    """
    Facade over the persisted user configuration.

    Accessors return the stored settings; the *_with overrides build
    per-invocation copies.
    """

    def __init__(self, config_path: Path | None = None):
        self.logger = structlog.get_logger(__name__)
        # An explicit path must exist and parse; the default location may not.
        self.user_config = UserConfig(config_path=config_path, strict=config_path is not None)

        self.logger.info(
            "Configuration manager initialized",
            config_event="config_manager_init",
            module=__name__,
            config_path=str(self.user_config.config_path),
            log_level=self.logging.level,
        )

    @property
    def explorer(self) -> ExplorerSettings:
        return self.user_config.config.explorer

    @property
    def render(self) -> RenderSettings:
        return self.user_config.config.render

    @property
    def logging(self) -> LoggingSettings:
        return self.user_config.config.logging

    def explorer_with(self, **overrides: Any) -> ExplorerSettings:
        """
        Explorer settings with the non-None overrides applied.

        Raises:
            ValueError: If an override fails validation
        """
        values = {key: value for key, value in overrides.items() if value is not None}
        if not values:
            return self.explorer
        self.logger.debug(
            "Explorer settings overridden",
            config_event="explorer_override",
            module=__name__,
            overrides=values,
        )
        return replace(self.explorer, **values)

    def get_status_summary(self) -> dict[str, Any]:
        """Get a summary of current configuration status"""
        return self.user_config.get_config_info()

    def reset_user_config(self) -> None:
        """Reset user configuration to defaults"""
        self.user_config.reset_to_defaults()

        self.logger.info(
            "User configuration reset via config manager",
            config_event="user_config_reset",
            module=__name__,
        )


# Global instance
_config_manager: ConfigManager | None = None


def get_config_manager(config_path: Path | None = None) -> ConfigManager:
    """Get the global configuration manager instance"""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager(config_path)
    return _config_manager


def reset_config_manager() -> None:
    """Drop the global instance so the next access reloads"""
    global _config_manager
    _config_manager = None


# Export only necessary symbols
__all__ = [
    "ConfigManager",
    "get_config_manager",
    "reset_config_manager",
]
