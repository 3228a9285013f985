"""Application directories.

The cache of spectra and the user config file live in platform directories,
given as `path.Path` objects:

>>> directories.user_cache_dir / "spectra"
Path('/home/user/.cache/hermcodes/spectra')
"""

from path import Path
from platformdirs import PlatformDirs

APP_NAME = "hermcodes"


class AppDirsPath(PlatformDirs):
    """Platform directories returning `path.Path` objects."""

    @property
    def user_cache_dir(self):
        return Path(super().user_cache_dir)

    @property
    def user_config_dir(self):
        return Path(super().user_config_dir)


directories = AppDirsPath(APP_NAME, appauthor=False)
