"""Run configuration for Poissonize."""

from .manager import ConfigManager, dump
from .schema import RunConfig, parse_float_list
from .units import db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm

__all__ = [
    "ConfigManager",
    "RunConfig",
    "dump",
    "parse_float_list",
    "db_to_linear",
    "dbm_to_watts",
    "linear_to_db",
    "watts_to_dbm",
]
