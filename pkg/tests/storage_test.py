import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.core.logger import get_logger, set_log_level
from toricrn.system.storage import StorageManager, get_timestamp

import re

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def test_directories_are_created(tmp_path):
    storage = StorageManager(root=tmp_path / "out")
    for path in (storage.LOG_DIR, storage.REPORT_DIR, storage.CONFIG_DIR):
        assert path.is_dir()
    assert storage.LOG_FILE.parent == storage.LOG_DIR
    assert storage.CONFIG_FILE.name == "toricrn_settings.ini"
    assert storage.DEFAULT_CONFIG_FILE.exists()

def test_report_file_path(tmp_path):
    storage = StorageManager(root=tmp_path)
    assert storage.report_file_path("rays", use_timestamp=False) == tmp_path / "reports" / "rays_report.json"
    stamped = storage.report_file_path("analyze").name
    assert re.fullmatch(r"analyze_report_\d{4}-\d{2}-\d{2}_\d{2}-\d{2}-\d{2}\.json", stamped)

def test_timestamp_format():
    assert re.fullmatch(r"\d{4}-\d{2}-\d{2}_\d{2}-\d{2}-\d{2}", get_timestamp())

def test_root_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("TORICRN_HOME", str(tmp_path / "env_root"))
    assert StorageManager().USER_ROOT == tmp_path / "env_root"
    assert StorageManager(root=tmp_path / "explicit").USER_ROOT == tmp_path / "explicit"

def test_saved_reports_do_not_overwrite(tmp_path):
    storage = StorageManager(root=tmp_path)
    first = storage.save_report("multistat", '{"schema":"toric-crn/1","results":{}}')
    second = storage.save_report("multistat", '{"schema":"toric-crn/1","results":{}}')
    storage.save_report("rays", "{}")
    assert first != second
    assert first.read_text().endswith("\n")
    assert set(storage.saved_reports("multistat")) == {first, second}
    assert len(storage.saved_reports()) == 3
