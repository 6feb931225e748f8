import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from toricrn.core import logger as logger_module
from toricrn.core.logger import get_logger, set_log_level

import logging

# Setup Logger
logger = get_logger(__name__)
set_log_level("DEBUG")

def _handler_types():
    return [type(h) for h in logger_module.logger.handlers]

def test_package_modules_keep_their_names():
    assert get_logger("toricrn.analysis.toric").name == "toricrn.analysis.toric"
    assert get_logger("logger_test").name == "toricrn.logger_test"

def test_invalid_level_falls_back_to_info():
    set_log_level("LOUD")
    assert logger_module.logger.level == logging.INFO
    set_log_level("debug")
    assert logger_module.logger.level == logging.DEBUG

def test_configure_file_and_console(tmp_path):
    log_file = tmp_path / "toricrn.log"
    logger_module.configure("INFO", to_console=False, log_file=log_file)
    try:
        assert logging.StreamHandler not in _handler_types()
        assert logging.FileHandler in _handler_types()
        logger.info("written to the file only")
        for handler in logger_module.logger.handlers:
            handler.flush()
        assert "written to the file only" in log_file.read_text()
    finally:
        logger_module.configure("DEBUG")
    assert logging.FileHandler not in _handler_types()
    assert _handler_types().count(logging.StreamHandler) == 1

def test_stream_handler_is_not_duplicated():
    logger_module.set_stream_handler()
    logger_module.set_stream_handler()
    assert _handler_types().count(logging.StreamHandler) == 1
