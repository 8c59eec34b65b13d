import logging

import pytest

from structdiag.utils.config import Config
from structdiag.utils.exceptions import ConfigurationError
from structdiag.utils.logger import Logger, get_logger


class TestConfig:
    def test_singleton(self):
        assert Config() is Config()

    def test_defaults(self):
        config = Config()
        assert config.oracle_bound == 16
        assert config.log_level == "WARNING"
        assert config.default_operator == "plus"
        assert config.output_format == "table"
        assert config.enable_subset_cache

    def test_reset(self):
        Config().set_oracle_bound(5)
        Config.reset()
        assert Config().oracle_bound == 16

    @pytest.mark.parametrize("bound", [0, -3, True, "8"])
    def test_invalid_oracle_bound(self, bound):
        with pytest.raises(ConfigurationError):
            Config().set_oracle_bound(bound)

    def test_log_level_is_case_insensitive(self):
        Config().set_log_level("debug")
        assert Config().log_level == "DEBUG"
        with pytest.raises(ConfigurationError):
            Config().set_log_level("LOUD")

    def test_output_format(self):
        Config().set_output_format("json")
        assert Config().output_format == "json"
        with pytest.raises(ConfigurationError):
            Config().set_output_format("xml")

    def test_default_operator(self):
        with pytest.raises(ConfigurationError):
            Config().set_default_operator("")

    def test_subset_cache_entries(self):
        config = Config()
        config.set_subset_cache_entries(0)
        assert not config.enable_subset_cache
        with pytest.raises(ConfigurationError):
            config.set_subset_cache_entries(-1)

    def test_environment(self):
        config = Config()
        config.load_environment({"STRUCTDIAG_ORACLE_BOUND": "12", "STRUCTDIAG_LOG_LEVEL": "info"})
        assert config.oracle_bound == 12
        assert config.log_level == "INFO"

    def test_malformed_environment(self):
        with pytest.raises(ConfigurationError):
            Config().load_environment({"STRUCTDIAG_ORACLE_BOUND": "many"})

    def test_empty_environment_keeps_defaults(self):
        Config().load_environment({"STRUCTDIAG_ORACLE_BOUND": " "})
        assert Config().oracle_bound == 16

    def test_to_dict(self):
        data = Config().to_dict()
        assert data["oracle_bound"] == 16
        assert data["log_file"] is None


class TestLogger:
    def test_singleton(self):
        assert get_logger() is Logger()

    def test_reconfigure_applies_level(self):
        Config().set_log_level("DEBUG")
        Logger().reconfigure()
        assert get_logger().is_enabled_for(logging.DEBUG)

        Config().set_log_level("ERROR")
        Logger().reconfigure()
        assert not get_logger().is_enabled_for(logging.WARNING)

    def test_single_console_handler(self):
        Logger().reconfigure()
        Logger().reconfigure()
        assert len(logging.getLogger("structdiag").handlers) == 1

    def test_log_file(self, tmp_path):
        path = tmp_path / "logs" / "structdiag.log"
        Config().set_log_file(str(path))
        Logger().reconfigure()
        get_logger().warning("written to file")
        for handler in logging.getLogger("structdiag").handlers:
            handler.flush()
        assert "written to file" in path.read_text()
        Config().set_log_file(None)
        Logger().reconfigure()
