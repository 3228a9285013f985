"""Config module.

This module gives the class `Config`, a dictionary filled from a YAML file
whose values can be overridden by environment variables:

>>> config = load_config(Path("hermcodes.yaml"))
>>> config.get("threads", 0)
4

When the variable `HERMCODES_THREADS` is set, its value wins over the file,
and is parsed to the type of the default given to `get`. Missing keys take the
values of `DEFAULTS`.

The module also installs the loggers. `create_logger` is called first, with
`wrap=True` as scans display progress bars, then `set_loglevel` once the
config is known:

>>> create_logger(wrap=True)
>>> config = load_config()
>>> set_loglevel(config)

`create_config_file` copies the packaged config file to the user config
directory:

>>> create_config_file("hermcodes.resources", "hermcodes.yaml")
"""

import logging
from collections import UserDict
from importlib.resources import as_file, files

import coloredlogs
import progressbar
import yaml
from environs import Env, EnvError
from path import Path

from hermcodes.directory import directories
from hermcodes.exceptions import HermcodesError

LOG_FORMAT = "[%(asctime)s] %(name)s %(levelname)s %(message)s"
LOG_LEVEL = "INFO"

CONFIG_PREFIX = "HERMCODES"
CONFIG_RESOURCE = "hermcodes.resources"
CONFIG_FILE = "hermcodes.yaml"

DEFAULTS = {
    "loglevel": LOG_LEVEL,
    "threads": 0,
    "cache": "",
    "results": "results",
    "representatives": 64,
    "argmax_cap": 10000,
    "chunk_size": 65536,
    "seed": 0,
    "progress": True,
}

logger = logging.getLogger(__name__)


class AutoEnv(Env):
    """Environment variable reader dispatching on a type."""

    def auto(self, type, *args, **kwargs):
        return getattr(self, type.__name__)(*args, **kwargs)


class Config(UserDict):
    """Configuration object.

    Looking up a key first checks the upper case environment variable
    `<PREFIX>_<KEY>`, then the stored value. Nested dictionaries become nested
    `Config` objects whose prefix is accumulated:

    >>> config = Config("HERMCODES", {"scan": {"chunk": 1024}})
    >>> # with HERMCODES_SCAN_CHUNK=2048 in the environment
    >>> config.get("scan").get("chunk", 0)
    2048

    A value read from the environment is a string, unless a default is given
    to `get`, in which case it is parsed to the type of the default.

    Attributes:
        prefix (str): Prefix of the environment variables.
        env (AutoEnv): Environment parser.

    Args:
        prefix (str): Prefix of the environment variables.
        iterable (dict): Values to store.
    """

    def __init__(self, prefix, iterable=None):
        super().__init__()

        self.prefix = prefix
        self.env = AutoEnv()

        if iterable:
            self.set_iterable(iterable)

    def set_iterable(self, iterable):
        """Replace the values of the config.

        Args:
            iterable (dict): Values, dictionaries are converted to `Config`
                objects with a sub-prefix.
        """
        iterable = {
            key: (
                self.__class__("{}_{}".format(self.prefix, key), val)
                if isinstance(val, dict)
                else val
            )
            for key, val in iterable.items()
        }

        self.data.clear()
        self.data.update(iterable)

    def set_defaults(self, defaults):
        """Store default values for the missing keys.

        Args:
            defaults (dict): Default values.
        """
        for key, value in defaults.items():
            self.data.setdefault(key, value)

    def set_debug(self, debug=True):
        """Set the log level to debug.

        Args:
            debug (bool): If True, set the log level to "DEBUG".
        """
        if debug:
            self.data["loglevel"] = "DEBUG"

    def check_mandatory_keys(self, keys):
        for key in keys:
            self.check_mandatory_key(key)

    def check_mandatory_key(self, key):
        """Check that a key is present.

        Raises:
            ConfigInvalidError: If the key is missing.
        """
        if key not in self.data:
            raise ConfigInvalidError("Invalid config file, missing '{}'".format(key))

    def load_file(self, config_path):
        """Load the config from a YAML file.

        Previous values are discarded.

        Args:
            config_path (path.Path): Path to the file.

        Raises:
            ConfigNotFoundError: If the file cannot be opened.
            ConfigParseError: If the file is not valid YAML or not a mapping.
        """
        logger.info("Loading config file '%s'", config_path)

        try:
            with config_path.open() as file:
                content = yaml.safe_load(file)

        except yaml.YAMLError as error:
            raise ConfigParseError("Unable to parse config file") from error

        except FileNotFoundError as error:
            raise ConfigNotFoundError(
                "No config file found at '{}'".format(config_path)
            ) from error

        if content is None:
            content = {}

        if not isinstance(content, dict):
            raise ConfigParseError("Config file must contain a mapping")

        self.set_iterable(content)

    def get_value_from_env(self, key, type=None):
        """Get a value from the prefixed upper case environment variable.

        Args:
            key (str): Name of the variable without prefix.
            type (type): Type of the value, string if not given.

        Returns:
            any: Value from the environment.

        Raises:
            environs.EnvError: If the variable is not set.
        """
        with self.env.prefixed("{}_".format(self.prefix.upper())):
            if type:
                return self.env.auto(type, key.upper())

            return self.env(key.upper())

    def __getitem__(self, key):
        try:
            return self.get_value_from_env(key)

        except EnvError:
            return super().__getitem__(key)

    def get(self, key, default=None):
        """Give the value of a key.

        Args:
            key (str): Key to look up.
            default (any): Value if the key is missing. Its type is used to
                parse the value of the environment variable.

        Returns:
            any: Value.
        """
        cast = None
        if default is not None:
            cast = type(default)

        try:
            return self.get_value_from_env(key, cast)

        except EnvError:
            return super().get(key, default)

    @property
    def cache_directory(self):
        """path.Path: Directory of the spectrum cache."""
        cache = self.get("cache", "")
        if cache:
            return Path(cache)

        return directories.user_cache_dir / "spectra"


def load_config(config_path=None, debug=False):
    """Create the config of the command line front end.

    Args:
        config_path (path.Path): Config file. If not given, the file of the
            user config directory is used if it exists, the defaults otherwise.
        debug (bool): Force the debug log level.

    Returns:
        Config: The config, completed with `DEFAULTS`.
    """
    config = Config(CONFIG_PREFIX)

    if config_path is None:
        user_path = directories.user_config_dir / CONFIG_FILE
        if user_path.exists():
            config_path = user_path

    if config_path is not None:
        config.load_file(Path(config_path))

    config.set_defaults(DEFAULTS)
    config.set_debug(debug)
    return config


def create_logger(wrap=False, custom_log_format=None, custom_log_level=None):
    """Install the loggers.

    Args:
        wrap (bool): If True, wrap the standard error stream so that logs and
            progress bars do not overlap.
        custom_log_format (str): Format of the logs.
        custom_log_level (str): Level of the logs.
    """
    if wrap:
        progressbar.streams.wrap_stderr()

    coloredlogs.install(
        fmt=custom_log_format or LOG_FORMAT, level=custom_log_level or LOG_LEVEL
    )


def set_loglevel(config):
    """Set the log level from the config.

    Args:
        config (Config): The config.
    """
    coloredlogs.set_level(config.get("loglevel", LOG_LEVEL))


def create_config_file(resource, filename, force=False):
    """Copy a packaged config file to the user config directory.

    Args:
        resource (str): Package containing the file.
        filename (str): Name of the file.
        force (bool): If True, overwrite an existing file without asking.
    """
    with as_file(files(resource) / filename) as file:
        origin = Path(file)
        destination = directories.user_config_dir / filename

        destination.dirname().mkdir_p()

        if not force and destination.exists():
            answer = input("{} already exists, overwrite? [y/N] ".format(destination))
            if answer.strip().lower() not in ("y", "yes"):
                return

        origin.copyfile(destination)
        logger.info("Config created in '%s'", destination)


class ConfigError(HermcodesError):
    """Generic error raised for invalid configuration file."""


class ConfigNotFoundError(ConfigError):
    """Unable to read configuration file."""


class ConfigParseError(ConfigError):
    """Unable to parse config file."""


class ConfigInvalidError(ConfigError):
    """Config has missing mandatory keys."""
