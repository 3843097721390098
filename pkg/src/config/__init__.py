"""
Configuration Management Package

This package provides:
- User configuration (explorer, render and logging defaults) in JSON
- Runtime configuration management with per-invocation overrides
"""

# Main configuration interface
from .config_manager import ConfigManager, get_config_manager, reset_config_manager
from .user_config import (
    ExplorerSettings,
    LoggingSettings,
    RenderSettings,
    ToolkitConfig,
    UserConfig,
)

__all__ = [
    "ConfigManager",
    "ExplorerSettings",
    "LoggingSettings",
    "RenderSettings",
    "ToolkitConfig",
    "UserConfig",
    "get_config_manager",
    "reset_config_manager",
]
