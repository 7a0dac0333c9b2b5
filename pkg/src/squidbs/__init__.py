"""Numerical simulator of a differentially-driven-SQUID parametric beamsplitter."""

from .device import (
    CircuitGeometry,
    ConfigError,
    DeviceParams,
    DriveConfig,
    DriveTone,
    load_device,
)

__version__ = "0.1.0"

__all__ = [
    "CircuitGeometry",
    "ConfigError",
    "DeviceParams",
    "DriveConfig",
    "DriveTone",
    "load_device",
    "__version__",
]
