import ast
import configparser
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from .logger import get_logger
from ..system.storage import StorageManager

# Setup Logger
logger = get_logger(__name__)

# Keys are routed to INI sections by their prefix
PREFIX_SECTION_MAP = {
    "tor": "toric_settings",
    "ms": "multistat_settings",
    "pho": "phospho_settings",
    "out": "output_settings",
    "log": "logging_settings",
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

@dataclass(frozen=True)
class SettingRule:
    """Expected type of a known setting and a check on its value."""
    kind: type | tuple[type, ...]
    check: Callable[[Any], bool] = lambda value: True
    description: str = ""

    def accepts(self, value: Any) -> bool:
        if isinstance(value, bool) and self.kind is not bool:
            return False
        return isinstance(value, self.kind) and self.check(value)

def _positive_ints(value: tuple) -> bool:
    return len(value) > 0 and all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in value)

SETTING_RULES: dict[str, SettingRule] = {
    "tor_enlarge_bound": SettingRule(int, lambda v: v >= 0, "non-negative integer"),
    "tor_max_multiplier_rows": SettingRule(int, lambda v: v >= 1, "positive integer"),
    "tor_float_residual": SettingRule((int, float), lambda v: 0 < v < 1, "number in (0, 1)"),
    "ms_tolerance": SettingRule((int, float), lambda v: 0 < v < 1, "number in (0, 1)"),
    "ms_max_image_rank": SettingRule(int, lambda v: 1 <= v <= 16, "integer between 1 and 16"),
    "ms_probe_seed": SettingRule(int),
    "ms_probe_draws": SettingRule(int, lambda v: v >= 0, "non-negative integer"),
    "pho_sample_t": SettingRule(tuple, _positive_ints, "tuple of positive integers"),
    "out_save_reports": SettingRule(bool),
    "log_to_file": SettingRule(bool),
    "log_to_console": SettingRule(bool),
    "log_level": SettingRule(str, lambda v: v.upper() in LOG_LEVELS, "log level name"),
}

def _parse(raw: str) -> Any:
    try:
        return ast.literal_eval(raw)
    except (ValueError, SyntaxError):
        return raw

class Settings:
    """
    toricrn settings, layered: the user file over the defaults shipped with the package.

    Known keys (SETTING_RULES) are type-checked on read; a user value that fails
    its check is reported and the shipped default is used instead.
    """
    def __init__(self, config_path: Path | None = None, default_path: Path | None = None):
        """
        Args:
            config_path (Path | None): User settings file; created from the defaults when missing.
                Defaults to the file in the StorageManager config directory.
            default_path (Path | None): Defaults shipped with the package.
        """
        if config_path is None or default_path is None:
            storage = StorageManager()
            config_path = config_path or storage.CONFIG_FILE
            default_path = default_path or storage.DEFAULT_CONFIG_FILE

        self.config_path = Path(config_path)
        self.default_path = Path(default_path)
        self.defaults = configparser.ConfigParser()
        self.config = configparser.ConfigParser()

        if not self.default_path.exists():
            logger.critical(f"Default settings file not found: {self.default_path}")
            raise FileNotFoundError(f"Default config file not found: {self.default_path}")
        self.defaults.read(self.default_path)

        if not self.config_path.exists():
            logger.warning(f"Settings file not found: {self.config_path}. Creating it from the defaults.")
            self.load_defaults(read_after=False)
        self.config.read(self.config_path)

    def _lookup(self, parser: configparser.ConfigParser, section: str, setting_key: str) -> Any:
        if section in parser and setting_key in parser[section]:
            return _parse(parser[section][setting_key])
        return None

    def get(self, setting_key: str, default: Any = None) -> Any:
        """
        Value of a setting, from the user file or else the shipped defaults.

        Args:
            setting_key (str): Prefixed key, e.g. "ms_tolerance".
            default (Any, optional): Returned when neither file has the key.

        Returns:
            Any: The parsed value.
        """
        section = get_section(setting_key)
        value = self._lookup(self.config, section, setting_key)
        fallback = self._lookup(self.defaults, section, setting_key)
        rule = SETTING_RULES.get(setting_key)

        if value is not None and rule is not None and not rule.accepts(value):
            logger.warning(
                f"Invalid value {value!r} for '{setting_key}' in {self.config_path} "
                f"(expected {rule.description or rule.kind}); using the default {fallback!r}"
            )
            value = None
        if value is None:
            value = fallback
        if value is None:
            logger.debug(f"Setting '{setting_key}' not found; returning {default!r}")
            return default
        return value

    def set(self, setting_key: str, value: Any) -> None:
        """
        Store a setting in the user file.

        Raises:
            ValueError: If the key has no known prefix or the value fails its check.
        """
        section = get_section(setting_key)
        rule = SETTING_RULES.get(setting_key)
        if rule is not None and not rule.accepts(value):
            logger.error(f"Refusing {value!r} for '{setting_key}'")
            raise ValueError(f"Invalid value for {setting_key}: {value!r} (expected {rule.description or rule.kind})")
        if section not in self.config:
            self.config[section] = {}
        self.config[section][setting_key] = repr(value) if isinstance(value, str) else str(value)
        with open(self.config_path, "w") as configfile:
            self.config.write(configfile)
        logger.debug(f"Saved {setting_key} = {value!r} to {self.config_path}")

    def load_defaults(self, read_after: bool = True) -> None:
        """
        Overwrite the user settings file with the shipped defaults.

        Args:
            read_after (bool): Re-read the user file afterwards. Defaults to True.
        """
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, "w") as dst:
            self.defaults.write(dst)
        if read_after:
            self.config = configparser.ConfigParser()
            self.config.read(self.config_path)

    def as_dict(self) -> dict[str, Any]:
        """Every known setting with its effective value."""
        return {key: self.get(key) for key in SETTING_RULES}

def get_section(setting_key: str) -> str:
    """
    INI section of a prefixed setting key.

    Raises:
        ValueError: If the key's prefix is not in PREFIX_SECTION_MAP.
    """
    prefix = setting_key.split("_", 1)[0]
    if prefix not in PREFIX_SECTION_MAP:
        logger.error(f"Setting key without a known prefix: {setting_key}")
        raise ValueError(
            f"Key does not correspond to a known section: {setting_key}. "
            f"Known prefixes: {', '.join(PREFIX_SECTION_MAP)}"
        )
    return PREFIX_SECTION_MAP[prefix]
