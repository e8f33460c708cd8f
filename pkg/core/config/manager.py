"""Reading and writing run configurations."""

import logging
from pathlib import Path

import yaml

from ..errors import ConfigError, OutputError
from .schema import RunConfig

logger = logging.getLogger(__name__)

YAML_SUFFIXES = {".yaml", ".yml"}


class ConfigManager:
    """Loads ``key = value`` or YAML run configurations and saves effective ones."""

    def __init__(self, config_path: Path | str | None = None):
        self.config_path = Path(config_path) if config_path is not None else None

    def load(self, overrides: dict | None = None) -> RunConfig:
        """Read the file (defaults when there is none) and apply ``overrides`` on top."""
        data, lines = {}, {}
        if self.config_path is not None:
            if not self.config_path.exists():
                raise ConfigError("config file does not exist", str(self.config_path))
            if self.config_path.suffix in YAML_SUFFIXES:
                data = self._read_yaml()
            else:
                data, lines = self._read_key_values()
            logger.info("loaded %d settings from %s", len(data), self.config_path)

        for key, value in (overrides or {}).items():
            if value is not None:
                data[key] = value
                lines.pop(key, None)
        path = str(self.config_path) if self.config_path is not None else None
        return RunConfig.from_dict(data, path, lines)

    def _read_yaml(self) -> dict:
        try:
            with open(self.config_path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML: {e}", str(self.config_path)) from None
        if not isinstance(data, dict):
            raise ConfigError("expected a mapping at top level", str(self.config_path))
        return data

    def _read_key_values(self) -> tuple[dict, dict]:
        data, lines = {}, {}
        path = str(self.config_path)
        with open(self.config_path, encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                key = key.strip()
                if not sep or not key:
                    raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", path, lineno)
                if key in data:
                    raise ConfigError(f"duplicate key {key!r}", path, lineno)
                try:
                    data[key] = yaml.safe_load(value.strip()) if value.strip() else None
                except yaml.YAMLError:
                    raise ConfigError(f"cannot parse value of {key}", path, lineno) from None
                lines[key] = lineno
        return data, lines

    def save(self, config: RunConfig, path: Path | str | None = None) -> None:
        """Write ``config`` as YAML."""
        target = Path(path) if path is not None else self.config_path
        if target is None:
            raise ConfigError("no path to save the configuration to")
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "w", encoding="utf-8") as f:
                f.write(dump(config))
        except OSError as e:
            raise OutputError(f"cannot write {target}: {e.strerror or e}") from e


def dump(config: RunConfig) -> str:
    """Effective configuration as a YAML document."""
    return yaml.dump(config.to_dict(), default_flow_style=None, sort_keys=False)
