import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

import toricrn
from toricrn.core.logger import get_logger, set_log_level
from toricrn.core.settings import Settings, get_section

import pytest

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

DEFAULTS = Path(toricrn.__file__).resolve().parent / "config" / "default_settings.ini"

def test_missing_config_is_created_from_defaults(tmp_path):
    config = tmp_path / "nested" / "settings.ini"
    settings = Settings(config_path=config, default_path=DEFAULTS)
    assert config.exists()
    assert settings.get("tor_enlarge_bound") == 0
    assert settings.get("ms_tolerance") == 1e-9
    assert settings.get("pho_sample_t") == (2, 3, 5)
    assert settings.get("out_save_reports") is False
    assert settings.get("log_level") == "WARNING"

def test_set_persists(tmp_path):
    config = tmp_path / "settings.ini"
    settings = Settings(config_path=config, default_path=DEFAULTS)
    settings.set("ms_probe_draws", 5)
    assert Settings(config_path=config, default_path=DEFAULTS).get("ms_probe_draws") == 5

def test_unknown_setting_returns_default(tmp_path):
    settings = Settings(config_path=tmp_path / "settings.ini", default_path=DEFAULTS)
    assert settings.get("tor_unknown", 7) == 7

def test_sections():
    assert get_section("tor_enlarge_bound") == "toric_settings"
    assert get_section("ms_tolerance") == "multistat_settings"
    assert get_section("pho_sample_t") == "phospho_settings"
    with pytest.raises(ValueError):
        get_section("camera_resolution")

def test_missing_default_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        Settings(config_path=tmp_path / "settings.ini", default_path=tmp_path / "absent.ini")

def test_invalid_user_value_falls_back_to_default(tmp_path):
    config = tmp_path / "settings.ini"
    config.write_text("[toric_settings]\ntor_enlarge_bound = -3\n\n[multistat_settings]\nms_tolerance = 'tight'\n")
    settings = Settings(config_path=config, default_path=DEFAULTS)
    assert settings.get("tor_enlarge_bound") == 0
    assert settings.get("ms_tolerance") == 1e-9

def test_keys_missing_from_user_file_use_defaults(tmp_path):
    config = tmp_path / "settings.ini"
    config.write_text("[multistat_settings]\nms_probe_draws = 4\n")
    settings = Settings(config_path=config, default_path=DEFAULTS)
    assert settings.get("ms_probe_draws") == 4
    assert settings.get("tor_max_multiplier_rows") == 6
    assert settings.get("log_to_console") is True

def test_set_rejects_invalid_values(tmp_path):
    settings = Settings(config_path=tmp_path / "settings.ini", default_path=DEFAULTS)
    with pytest.raises(ValueError):
        settings.set("ms_max_image_rank", 0)
    with pytest.raises(ValueError):
        settings.set("out_save_reports", "yes")
    with pytest.raises(ValueError):
        settings.set("pho_sample_t", (2, 0))
    settings.set("log_level", "DEBUG")
    assert settings.get("log_level") == "DEBUG"

def test_load_defaults_restores_user_file(tmp_path):
    config = tmp_path / "settings.ini"
    settings = Settings(config_path=config, default_path=DEFAULTS)
    settings.set("tor_enlarge_bound", 2)
    settings.load_defaults()
    assert settings.get("tor_enlarge_bound") == 0

def test_as_dict_lists_every_known_setting(tmp_path):
    values = Settings(config_path=tmp_path / "settings.ini", default_path=DEFAULTS).as_dict()
    assert values["pho_sample_t"] == (2, 3, 5)
    assert values["ms_probe_seed"] == 2010
    assert set(values) >= {"tor_float_residual", "log_to_file", "out_save_reports"}
