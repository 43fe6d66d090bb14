"""Configuration package"""
from .settings import config, Config
from .device import DeviceConfig, DEVICE_FORMAT_VERSION

__all__ = ["config", "Config", "DeviceConfig", "DEVICE_FORMAT_VERSION"]
