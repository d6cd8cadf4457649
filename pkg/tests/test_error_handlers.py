import io
import json

import click
import pytest
from pydantic import ValidationError as PydanticValidationError

from tubespec.core.config.app_config import AppConfig
from tubespec.core.error_handlers import (
    EXIT_DOMAIN_ERROR,
    EXIT_USAGE_ERROR,
    as_domain_error,
    diagnostic,
    exit_code_for,
    handle_command_error,
)
from tubespec.core.exceptions import (
    BadConfig,
    ConfigurationError,
    GridTooCoarse,
    NoConvergence,
    ZeroMode,
)
from tubespec.core.logging import error_context, error_logger
from tubespec.core.logging.error_logger import StructuredErrorLogger

pytestmark = pytest.mark.unit


def _pydantic_error():
    with pytest.raises(PydanticValidationError) as info:
        AppConfig(_env_file=None, jobs=0)
    return info.value


class TestDiagnostic:
    def test_domain_error_uses_its_code(self):
        assert diagnostic(ZeroMode()) == "error[ZeroMode]: Operation is undefined for the zero mode"

    def test_diagnostic_is_a_single_line(self):
        text = diagnostic(BadConfig("Window must\n   be bounded", field="window"))
        assert text == "error[BadConfig]: Window must be bounded"

    def test_foreign_exception_uses_its_type(self):
        assert diagnostic(RuntimeError("boom")) == "error[RuntimeError]: boom"


class TestExitCodes:
    def test_usage_error(self):
        assert exit_code_for(click.UsageError("bad flag")) == EXIT_USAGE_ERROR

    def test_domain_error(self):
        assert exit_code_for(NoConvergence("epsilon ladder")) == EXIT_DOMAIN_ERROR

    def test_click_exit_keeps_its_code(self):
        assert exit_code_for(click.exceptions.Exit(0)) == 0


class TestHandleCommandError:
    def test_prints_one_diagnostic_line(self, app_config):
        stream = io.StringIO()
        code = handle_command_error(NoConvergence("epsilon ladder", steps=40), stream)
        assert code == EXIT_DOMAIN_ERROR
        assert stream.getvalue() == "error[NoConvergence]: epsilon ladder did not converge after 40 steps\n"

    def test_usage_error_is_shown_by_click(self, app_config):
        stream = io.StringIO()
        assert handle_command_error(click.UsageError("missing --window"), stream) == EXIT_USAGE_ERROR
        assert "missing --window" in stream.getvalue()

    def test_pydantic_failure_becomes_a_configuration_error(self, app_config):
        stream = io.StringIO()
        assert handle_command_error(_pydantic_error(), stream) == EXIT_DOMAIN_ERROR
        assert stream.getvalue().startswith("error[ConfigurationError]: Invalid value for 'jobs'")

    def test_numerical_failure_is_logged_as_json(self, app_config, capsys):
        with error_context(run_id="run-1", command="oracle-compare"):
            handle_command_error(GridTooCoarse(0, 2, 8), io.StringIO())
        record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert record["level"] == "ERROR"
        assert record["error"]["error_code"] == "GridTooCoarse"
        assert record["error"]["numerical_error"] is True
        assert record["context"]["run_id"] == "run-1"
        assert record["context"]["command"] == "oracle-compare"

    def test_validation_failure_stays_below_the_default_level(self, app_config, capsys):
        handle_command_error(ZeroMode(), io.StringIO())
        assert capsys.readouterr().err == ""


class TestErrorLogger:
    @pytest.mark.parametrize(
        ("exception", "severity"),
        [
            (ZeroMode(), "WARNING"),
            (ConfigurationError("jobs"), "WARNING"),
            (NoConvergence("epsilon ladder"), "ERROR"),
            (RuntimeError("boom"), "CRITICAL"),
        ],
    )
    def test_severity_follows_the_exception_family(self, exception, severity):
        assert StructuredErrorLogger().severity_for(exception) == severity

    def test_error_context_is_reset_on_exit(self):
        with error_context(run_id="inner"):
            assert error_logger._get_context_data()["run_id"] == "inner"
        assert error_logger._get_context_data()["run_id"] is None


def test_as_domain_error_names_the_location():
    error = as_domain_error(_pydantic_error())
    assert isinstance(error, ConfigurationError)
    assert error.config_key == "jobs"
    assert "jobs must be at least 1" in error.message
