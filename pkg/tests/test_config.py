import os
from importlib.resources import path
from unittest import TestCase
from unittest.mock import MagicMock, PropertyMock, patch

from environs import Env
from path import Path
from yaml.parser import ParserError

from hermcodes.config import (
    DEFAULTS,
    AutoEnv,
    Config,
    ConfigInvalidError,
    ConfigNotFoundError,
    ConfigParseError,
    create_config_file,
    create_logger,
    load_config,
    set_loglevel,
)


class AutoEnvTestCase(TestCase):
    """Test the `AutoEnv` class."""

    def test_auto(self):
        """Test to parse some valid types."""
        env = AutoEnv()

        with patch.object(Env, "int") as mocked_int:
            env.auto(int, "aaa")
            mocked_int.assert_called_with("aaa")

        with patch.object(Env, "bool") as mocked_bool:
            env.auto(bool, "aaa")
            mocked_bool.assert_called_with("aaa")

    def test_auto_invalid(self):
        """Test to parse an invalid type."""
        env = AutoEnv()

        with self.assertRaises(AttributeError):
            env.auto(type(None), "aaa")


class ConfigTestCase(TestCase):
    """Test the `Config` class."""

    def test_return_env_var(self):
        """Test the environment variable wins over the stored value."""
        config = Config("HERMCODES")
        config["results"] = "results"

        self.assertEqual(config.get("results"), "results")

        with patch.dict(os.environ, {"HERMCODES_RESULTS": "elsewhere"}, clear=True):
            self.assertEqual(config.get("results"), "elsewhere")
            self.assertEqual(config["results"], "elsewhere")

    def test_create_from_dict(self):
        """Test nested dictionaries get an accumulated prefix."""
        config = Config("HERMCODES", {"scan": {"chunk": 1024}})

        self.assertIsInstance(config["scan"], Config)

        with patch.dict(os.environ, {"HERMCODES_SCAN_CHUNK": "2048"}, clear=True):
            self.assertEqual(config.get("scan").get("chunk", 0), 2048)

    def test_cast(self):
        """Test to cast values from the environment after the default."""
        config = Config("HERMCODES")

        with patch.dict(
            os.environ,
            {"HERMCODES_PROGRESS": "no", "HERMCODES_THREADS": "8"},
            clear=True,
        ):
            self.assertFalse(config.get("progress", True))
            self.assertEqual(config.get("threads", 0), 8)

    def test_set_defaults(self):
        """Test defaults do not replace stored values."""
        config = Config("HERMCODES", {"threads": 4})
        config.set_defaults({"threads": 0, "seed": 0})

        self.assertEqual(config["threads"], 4)
        self.assertEqual(config["seed"], 0)

    def test_set_debug(self):
        """Test to set debug mode."""
        config = Config("HERMCODES", {"loglevel": "INFO"})
        config.set_debug()
        self.assertEqual(config["loglevel"], "DEBUG")

    def test_check_mandatory_key_missing(self):
        """Test to check a config without a required key."""
        config = Config("HERMCODES")

        with self.assertRaisesRegex(
            ConfigInvalidError, "Invalid config file, missing 'not-present'"
        ):
            config.check_mandatory_key("not-present")

    def test_load_file_success(self):
        """Test to load a config file."""
        config = Config("HERMCODES")

        with self.assertLogs("hermcodes.config", "DEBUG") as logger:
            with path("tests.resources", "config.yaml") as file:
                config.load_file(Path(file))

        self.assertEqual(config["key"]["subkey"], "value")
        self.assertListEqual(
            logger.output,
            ["INFO:hermcodes.config:Loading config file '{}'".format(Path(file))],
        )

    def test_load_file_fail_not_found(self):
        """Test to load a config file that does not exist."""
        config = Config("HERMCODES")

        with self.assertLogs("hermcodes.config", "DEBUG"):
            with self.assertRaisesRegex(ConfigNotFoundError, "No config file found"):
                config.load_file(Path("nowhere"))

    @patch("hermcodes.config.yaml.safe_load", autospec=True)
    def test_load_file_fail_parser_error(self, mocked_safe_load):
        """Test to load an invalid config file."""
        mocked_safe_load.side_effect = ParserError("parser error")
        config = Config("HERMCODES")

        with self.assertLogs("hermcodes.config", "DEBUG"):
            with path("tests.resources", "config.yaml") as file:
                with self.assertRaisesRegex(
                    ConfigParseError, "Unable to parse config file"
                ):
                    config.load_file(Path(file))

    @patch("hermcodes.config.yaml.safe_load", autospec=True)
    def test_load_file_fail_not_mapping(self, mocked_safe_load):
        """Test to load a config file that is not a mapping."""
        mocked_safe_load.return_value = ["threads"]
        config = Config("HERMCODES")

        with self.assertLogs("hermcodes.config", "DEBUG"):
            with path("tests.resources", "config.yaml") as file:
                with self.assertRaisesRegex(ConfigParseError, "must contain a mapping"):
                    config.load_file(Path(file))

    def test_cache_directory_from_env(self):
        """Test the cache directory follows the environment."""
        config = Config("HERMCODES", {"cache": ""})

        with patch.dict(os.environ, {"HERMCODES_CACHE": "my/cache"}, clear=True):
            self.assertEqual(config.cache_directory, Path("my/cache"))

    @patch(
        "hermcodes.directory.AppDirsPath.user_cache_dir",
        new_callable=PropertyMock(return_value=Path("user") / "cache"),
    )
    def test_cache_directory_default(self, mocked_user_cache_dir):
        """Test the cache directory defaults to the user cache directory."""
        config = Config("HERMCODES", {"cache": ""})

        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(config.cache_directory, Path("user") / "cache" / "spectra")


class LoadConfigTestCase(TestCase):
    """Test the `load_config` function."""

    @patch.object(Path, "exists", return_value=False)
    def test_defaults(self, mocked_exists):
        """Test a config without file only has the defaults."""
        with patch.dict(os.environ, {}, clear=True):
            config = load_config()

        self.assertEqual(set(config), set(DEFAULTS))
        self.assertEqual(config["loglevel"], "INFO")

    def test_file_and_debug(self):
        """Test to load a given file in debug mode."""
        with self.assertLogs("hermcodes.config", "DEBUG"):
            with path("tests.resources", "config.yaml") as file:
                config = load_config(Path(file), debug=True)

        self.assertEqual(config["key"]["subkey"], "value")
        self.assertEqual(config["loglevel"], "DEBUG")
        self.assertEqual(config["representatives"], 64)


@patch("hermcodes.config.LOG_FORMAT", "my format")
@patch("hermcodes.config.LOG_LEVEL", "my level")
class CreateLoggerTestCase(TestCase):
    """Test the `create_logger` function."""

    @patch("hermcodes.config.progressbar.streams.wrap_stderr")
    @patch("hermcodes.config.coloredlogs.install", autospec=True)
    def test_normal(self, mocked_install, mocked_wrap_stderr):
        """Test to call the function normally."""
        create_logger()

        mocked_install.assert_called_with(fmt="my format", level="my level")
        mocked_wrap_stderr.assert_not_called()

    @patch("hermcodes.config.progressbar.streams.wrap_stderr")
    @patch("hermcodes.config.coloredlogs.install", autospec=True)
    def test_wrap(self, mocked_install, mocked_wrap_stderr):
        """Test to wrap the standard error stream for the progress bars."""
        create_logger(wrap=True)

        mocked_install.assert_called_with(fmt="my format", level="my level")
        mocked_wrap_stderr.assert_called_with()


class SetLoglevelTestCase(TestCase):
    """Test the `set_loglevel` function."""

    @patch("hermcodes.config.coloredlogs.set_level", autospec=True)
    def test_configure_logger(self, mocked_set_level):
        """Test to configure the logger."""
        set_loglevel({"loglevel": "DEBUG"})

        mocked_set_level.assert_called_with("DEBUG")

    @patch("hermcodes.config.coloredlogs.set_level", autospec=True)
    def test_configure_logger_no_level(self, mocked_set_level):
        """Test to configure the logger with no log level."""
        set_loglevel({})

        mocked_set_level.assert_called_with("INFO")


@patch.object(Path, "copyfile")
@patch.object(Path, "exists")
@patch.object(Path, "mkdir_p")
@patch(
    "hermcodes.directory.AppDirsPath.user_config_dir",
    new_callable=PropertyMock(return_value=Path("path") / "to" / "directory"),
)
@patch("hermcodes.config.files")
@patch("hermcodes.config.as_file")
class CreateConfigFileTestCase(TestCase):
    """Test the config file creator."""

    def setUp(self):
        self.destination = Path("path") / "to" / "directory" / "hermcodes.yaml"

    def set_origin(self, mocked_as_file):
        context = MagicMock()
        context.__enter__.return_value = "origin.yaml"
        mocked_as_file.return_value = context

    def test_create_empty(
        self,
        mocked_as_file,
        mocked_files,
        mocked_user_config_dir,
        mocked_mkdir_p,
        mocked_exists,
        mocked_copyfile,
    ):
        """Test to create the config file in an empty directory."""
        self.set_origin(mocked_as_file)
        mocked_exists.return_value = False

        with self.assertLogs("hermcodes.config") as logger:
            create_config_file("hermcodes.resources", "hermcodes.yaml")

        mocked_files.assert_called_with("hermcodes.resources")
        mocked_mkdir_p.assert_called_with()
        mocked_copyfile.assert_called_with(self.destination)
        self.assertListEqual(
            logger.output,
            ["INFO:hermcodes.config:Config created in '{}'".format(self.destination)],
        )

    @patch("hermcodes.config.input")
    def test_create_existing_no(
        self,
        mocked_input,
        mocked_as_file,
        mocked_files,
        mocked_user_config_dir,
        mocked_mkdir_p,
        mocked_exists,
        mocked_copyfile,
    ):
        """Test to refuse to overwrite an existing config file."""
        self.set_origin(mocked_as_file)
        mocked_exists.return_value = True
        mocked_input.return_value = "no"

        create_config_file("hermcodes.resources", "hermcodes.yaml")

        mocked_copyfile.assert_not_called()
        mocked_input.assert_called_with(
            "{} already exists, overwrite? [y/N] ".format(self.destination)
        )

    @patch("hermcodes.config.input")
    def test_create_existing_force(
        self,
        mocked_input,
        mocked_as_file,
        mocked_files,
        mocked_user_config_dir,
        mocked_mkdir_p,
        mocked_exists,
        mocked_copyfile,
    ):
        """Test to overwrite an existing config file without asking."""
        self.set_origin(mocked_as_file)

        with self.assertLogs("hermcodes.config"):
            create_config_file("hermcodes.resources", "hermcodes.yaml", force=True)

        mocked_exists.assert_not_called()
        mocked_input.assert_not_called()
        mocked_copyfile.assert_called_with(self.destination)
