"""
Unit tests for logging utilities.
"""

import json
import logging
import sys

import pytest

from src.utils.logging import (
    JSONFormatter,
    PrettyJSONFormatter,
    error,
    get_logger,
    info,
    input_context,
    log_with_context,
    setup_logging,
    warning,
)


def _record(level=logging.INFO, msg="Checked formula", exc_info=None):
    return logging.LogRecord(
        name="stratkit.stratify",
        level=level,
        pathname="stratify.py",
        lineno=42,
        msg=msg,
        args=(),
        exc_info=exc_info,
        func="check_stratified",
    )


@pytest.fixture
def clean_root():
    """Remove and close root handlers around a test."""

    def clear():
        root_logger = logging.getLogger()
        for handler in root_logger.handlers[:]:
            handler.close()
            root_logger.removeHandler(handler)

    clear()
    yield
    clear()


class TestJSONFormatter:
    """Test the JSON formatter."""

    def test_basic_formatting(self):
        """Test basic JSON log formatting."""
        log_data = json.loads(JSONFormatter().format(_record()))

        assert log_data["level"] == "INFO"
        assert log_data["logger"] == "stratkit.stratify"
        assert log_data["message"] == "Checked formula"
        assert log_data["module"] == "stratify"
        assert log_data["function"] == "check_stratified"
        assert log_data["line"] == 42
        assert "timestamp" in log_data
        assert "process" in log_data
        assert "thread" not in log_data

    def test_exclude_fields(self):
        """Test excluding specific fields."""
        formatter = JSONFormatter(exclude_fields={"timestamp", "process", "line"})
        log_data = json.loads(formatter.format(_record()))

        assert "timestamp" not in log_data
        assert "process" not in log_data
        assert "line" not in log_data
        assert "message" in log_data

    def test_exception_formatting(self):
        """Test exception information formatting."""
        try:
            raise ValueError("bad payload")
        except ValueError:
            exc_info = sys.exc_info()

        record = _record(logging.ERROR, "Input failed", exc_info)
        log_data = json.loads(JSONFormatter().format(record))

        assert log_data["exception"]["type"] == "ValueError"
        assert log_data["exception"]["message"] == "bad payload"
        assert isinstance(log_data["exception"]["traceback"], list)

    def test_extra_data(self):
        """Test that extra_data fields are merged into the object."""
        record = _record()
        record.extra_data = {"dialect": "plain", "nodes": 3}

        log_data = json.loads(JSONFormatter().format(record))

        assert log_data["dialect"] == "plain"
        assert log_data["nodes"] == 3

    def test_input_context(self):
        """Test that the current input identifier is attached."""
        token = input_context.set("formulas.txt:7")
        try:
            log_data = json.loads(JSONFormatter().format(_record()))
        finally:
            input_context.reset(token)

        assert log_data["input"] == "formulas.txt:7"

    def test_no_input_outside_context(self):
        """Test that no input key is written when none is set."""
        log_data = json.loads(JSONFormatter().format(_record()))

        assert "input" not in log_data

    def test_configuration_options(self):
        """Test formatter configuration options."""
        formatter = JSONFormatter(
            include_timestamp=False,
            include_location=False,
            include_context=False,
        )
        token = input_context.set("cat.json")
        try:
            log_data = json.loads(formatter.format(_record()))
        finally:
            input_context.reset(token)

        assert "timestamp" not in log_data
        assert "module" not in log_data
        assert "function" not in log_data
        assert "input" not in log_data


class TestPrettyJSONFormatter:
    """Test the pretty JSON formatter."""

    def test_pretty_formatting(self):
        """Test pretty JSON formatting."""
        output = PrettyJSONFormatter().format(_record())

        assert "\n" in output
        assert json.loads(output)["message"] == "Checked formula"


@pytest.mark.usefixtures("clean_root")
class TestSetupLogging:
    """Test the setup_logging function."""

    def test_basic_setup(self):
        """Test basic logging setup."""
        logger = setup_logging("INFO")

        assert logger.name == "stratkit"
        assert logger.level == logging.INFO
        root_logger = logging.getLogger()
        assert len(root_logger.handlers) == 1
        assert isinstance(root_logger.handlers[0], logging.StreamHandler)

    def test_log_level(self):
        """Test setting log level with a string or an int."""
        assert setup_logging("debug").level == logging.DEBUG
        assert setup_logging(logging.ERROR).level == logging.ERROR

    def test_unknown_level_falls_back(self):
        """Test that an unknown level name means WARNING."""
        assert setup_logging("CHATTY").level == logging.WARNING

    def test_formatter_choice(self):
        """Test JSON, pretty JSON and text formatting."""
        setup_logging("INFO", use_json=True)
        assert type(logging.getLogger().handlers[0].formatter) is JSONFormatter

        setup_logging("INFO", use_json=True, pretty_json=True)
        assert isinstance(logging.getLogger().handlers[0].formatter, PrettyJSONFormatter)

        setup_logging("INFO", use_json=False)
        formatter = logging.getLogger().handlers[0].formatter
        assert not isinstance(formatter, JSONFormatter)

    def test_logs_go_to_stderr(self, capsys):
        """Test that log lines never reach stdout."""
        logger = setup_logging("INFO")
        logger.info("Sweep finished")

        captured = capsys.readouterr()
        assert captured.out == ""
        assert json.loads(captured.err.strip().splitlines()[-1])["message"] == (
            "Sweep finished"
        )

    def test_file_logging(self, tmp_path):
        """Test file logging configuration."""
        log_file = tmp_path / "logs" / "stratkit.log"
        logger = setup_logging("INFO", log_file=log_file)

        assert len(logging.getLogger().handlers) == 2
        logger.info("Written to file")
        assert "Written to file" in log_file.read_text(encoding="utf-8")


class TestLoggerFunctions:
    """Test logger utility functions."""

    def test_get_logger(self):
        """Test the stratkit namespace."""
        assert get_logger().name == "stratkit"
        assert get_logger("categories").name == "stratkit.categories"

    def test_log_with_context(self, mocker):
        """Test logging with additional context."""
        logger = get_logger("test")
        mock_log = mocker.patch.object(logger, "log")

        log_with_context(logger, logging.INFO, "Verdict", verdict="stratified")

        mock_log.assert_called_once_with(
            logging.INFO, "Verdict", extra={"extra_data": {"verdict": "stratified"}}
        )

    def test_log_without_context(self, mocker):
        """Test that no extra is passed when there is no context."""
        logger = get_logger("test")
        mock_log = mocker.patch.object(logger, "log")

        log_with_context(logger, logging.INFO, "Plain")

        mock_log.assert_called_once_with(logging.INFO, "Plain", extra={})

    def test_convenience_functions(self, mocker):
        """Test the module-level helpers."""
        mock_log = mocker.patch("src.utils.logging.log_with_context")

        info("Info message", key="value")
        mock_log.assert_called_with(get_logger(), logging.INFO, "Info message", key="value")

        warning("Cap reached", limit=5)
        mock_log.assert_called_with(get_logger(), logging.WARNING, "Cap reached", limit=5)

        error("Error message", error_code="E001")
        mock_log.assert_called_with(
            get_logger(), logging.ERROR, "Error message", error_code="E001"
        )


@pytest.mark.usefixtures("clean_root")
class TestIntegration:
    """Integration tests for logging functionality."""

    def test_end_to_end_logging(self, tmp_path):
        """Test the complete flow from setup to file."""
        log_file = tmp_path / "run.log"
        logger = setup_logging("INFO", log_file=log_file)
        child = get_logger("model")

        token = input_context.set("structure.json")
        try:
            child.info("Loaded structure", extra={"extra_data": {"carrier": 4}})
            try:
                raise KeyError("a")
            except KeyError:
                logger.error("Evaluation failed", exc_info=True)
        finally:
            input_context.reset(token)

        lines = log_file.read_text(encoding="utf-8").strip().split("\n")
        entries = [json.loads(line) for line in lines]

        loaded = entries[-2]
        assert loaded["logger"] == "stratkit.model"
        assert loaded["carrier"] == 4
        assert loaded["input"] == "structure.json"
        assert entries[-1]["exception"]["type"] == "KeyError"
