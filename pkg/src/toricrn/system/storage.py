"""
Where toricrn keeps its logs, saved reports and user settings.

Everything goes under one output root: `$TORICRN_HOME` when set, otherwise
`~/toricrn_output`.

Typical usage example:
    storage = StorageManager()
    path = storage.save_report("analyze", render_report(report, indent=2))
"""

import os
from datetime import datetime
from pathlib import Path

ROOT_ENV_VAR = "TORICRN_HOME"

class StorageManager:
    """
    Output directories of toricrn.

    Attributes:
        BASE_DIR (Path): Installed package directory.
        DEFAULT_CONFIG_FILE (Path): Settings shipped with the package.
        USER_ROOT (Path): Output root.
        LOG_DIR (Path): Log files.
        REPORT_DIR (Path): Saved JSON reports.
        CONFIG_DIR (Path): User settings.
    """

    def __init__(self, root: str | Path | None = None):
        """
        Args:
            root (str | Path | None): Output root; overrides $TORICRN_HOME and ~/toricrn_output.
        """
        self.BASE_DIR = Path(__file__).resolve().parent.parent
        self.DEFAULT_CONFIG_FILE = self.BASE_DIR / "config" / "default_settings.ini"

        env_root = os.environ.get(ROOT_ENV_VAR)
        self.USER_ROOT = Path(root or env_root or Path.home() / "toricrn_output").expanduser()

        self.LOG_DIR = self.USER_ROOT / "logs"
        self.REPORT_DIR = self.USER_ROOT / "reports"
        self.CONFIG_DIR = self.USER_ROOT / "config"

        for path in (self.LOG_DIR, self.REPORT_DIR, self.CONFIG_DIR):
            path.mkdir(parents=True, exist_ok=True)

    @property
    def LOG_FILE(self) -> Path:
        return self.LOG_DIR / "toricrn.log"

    @property
    def CONFIG_FILE(self) -> Path:
        return self.CONFIG_DIR / "toricrn_settings.ini"

    def report_file_path(self, command: str, use_timestamp: bool = True) -> Path:
        """
        Free path for a JSON report of `command`.

        Timestamped names get a counter suffix when a report of the same
        command was already saved within the same second.

        Args:
            command (str): CLI subcommand that produced the report (e.g. "analyze").
            use_timestamp (bool): Append the current time to the name. Defaults to True.
        """
        stem = f"{command}_report_{get_timestamp()}" if use_timestamp else f"{command}_report"
        path = self.REPORT_DIR / f"{stem}.json"
        counter = 1
        while use_timestamp and path.exists():
            path = self.REPORT_DIR / f"{stem}_{counter}.json"
            counter += 1
        return path

    def save_report(self, command: str, text: str) -> Path:
        """Write a rendered report and return its path."""
        path = self.report_file_path(command)
        path.write_text(text + "\n", encoding="utf-8")
        return path

    def saved_reports(self, command: str | None = None) -> list[Path]:
        """Saved reports, oldest first, optionally of one command only."""
        pattern = f"{command}_report*.json" if command else "*_report*.json"
        return sorted(self.REPORT_DIR.glob(pattern), key=lambda p: (p.stat().st_mtime, p.name))

def get_timestamp() -> str:
    """Current local time as 2023-10-31_14-30-00."""
    return datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
