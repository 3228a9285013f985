"""Result files module.

Every command of the front end writes its results in its own directory:

>>> directory = result_directory(Path("results"), "spectrum", "parabolic4", 3, 2)
>>> directory
Path('results/spectrum/parabolic4-q3-h2')

Data files are written deterministically, rows sorted and keys sorted, so
that running a command again gives identical files. Each directory gets a
`manifest.json` describing the run and giving the checksum of every data
file:

>>> write_csv(directory / "data.csv", ["weight", "multiplicity"], rows)
>>> manifest = RunManifest("spectrum", {"q": 3}, (3, 1), "parabolic4", "exhaustive")
>>> manifest.add_file(directory / "data.csv")
>>> manifest.write(directory)

Spectra are also kept in a cache, so that verifications can be run again
without enumerating the code:

>>> cache = SpectrumCache(config.cache_directory)
>>> spectrum = cache.load("parabolic4", code, "exhaustive")
"""

import csv
import json
import logging
import time
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Optional, Tuple

from path import Path

from hermcodes.codes import WeightSpectrum
from hermcodes.exceptions import HermcodesError
from hermcodes.utils import array_checksum, file_checksum
from hermcodes.version import __version__

logger = logging.getLogger(__name__)


def result_directory(root, command, preset, q, h=None):
    """Create the directory of the results of a command.

    Args:
        root (path.Path): Root of the result tree.
        command (str): Name of the command.
        preset (str): Name of the variety.
        q (int): Order of the field.
        h (int): Degree of the forms, left out of the name if None.

    Returns:
        path.Path: The directory, created if needed.
    """
    name = "{}-q{}".format(preset, q)
    if h is not None:
        name += "-h{}".format(h)

    directory = Path(root) / command / name
    directory.makedirs_p()
    return directory


def write_csv(file_path, header, rows):
    """Write rows in a CSV file, sorted.

    Args:
        file_path (path.Path): Path of the file.
        header (list of str): Names of the columns.
        rows (list of tuple): Rows.
    """
    with open(file_path, "w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(sorted(tuple(row) for row in rows))

    logger.debug("Wrote %i rows in '%s'", len(rows), file_path)


def dump_json(data):
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(file_path, data):
    """Write data in a JSON file with sorted keys."""
    Path(file_path).write_text(dump_json(data), encoding="utf-8")
    logger.debug("Wrote '%s'", file_path)


def read_json(file_path):
    """Read a JSON file.

    Raises:
        ResultFileError: If the file cannot be read or parsed.
    """
    try:
        with open(file_path, encoding="utf-8") as file:
            return json.load(file)

    except (OSError, ValueError) as error:
        raise ResultFileError(
            "Unable to read result file '{}'".format(file_path)
        ) from error


@dataclass
class RunManifest:
    """Description of a run of a command.

    Attributes:
        command (str): Name of the command.
        parameters (dict): Parameters of the command.
        field (tuple): Characteristic and degree of the field.
        preset (str): Name of the variety.
        mode (str): Enumeration mode, None if not relevant.
        started (float): Start time, from `time.perf_counter`.
        wall_time (float): Duration of the run in seconds, set by `finish` or
            on writing.
        files (dict): SHA-256 digest of every data file, by file name.
        version (str): Version of the package.
    """

    command: str
    parameters: Dict[str, object]
    field: Tuple[int, int]
    preset: Optional[str] = None
    mode: Optional[str] = None
    started: float = dataclass_field(default_factory=time.perf_counter)
    wall_time: Optional[float] = None
    files: Dict[str, str] = dataclass_field(default_factory=dict)
    version: str = __version__

    def add_file(self, file_path):
        """Reference a data file by its name and checksum."""
        file_path = Path(file_path)
        if file_path.name in self.files:
            raise ResultFileError(
                "File '{}' is already in the manifest".format(file_path.name)
            )

        self.files[file_path.name] = file_checksum(file_path)

    def as_dict(self):
        return {
            "command": self.command,
            "parameters": self.parameters,
            "field": {"p": self.field[0], "e": self.field[1]},
            "preset": self.preset,
            "mode": self.mode,
            "wall_time": self.wall_time,
            "files": self.files,
            "version": self.version,
        }

    def finish(self):
        """Stop the clock of the run, if not already stopped."""
        if self.wall_time is None:
            self.wall_time = round(time.perf_counter() - self.started, 3)

    def write(self, directory):
        """Write the manifest in a result directory.

        The clock of the run is stopped if `finish` was not called.

        Returns:
            path.Path: Path of the manifest.
        """
        self.finish()
        file_path = Path(directory) / "manifest.json"
        write_json(file_path, self.as_dict())
        logger.info("Results written in '%s'", directory)
        return file_path


def verify_manifest(directory):
    """Check the checksums of the data files of a result directory.

    Returns:
        list of str: Names of the files whose checksum differs or which are
        missing.
    """
    directory = Path(directory)
    manifest = read_json(directory / "manifest.json")
    return [
        name
        for name, digest in sorted(manifest["files"].items())
        if not (directory / name).exists() or file_checksum(directory / name) != digest
    ]


class SpectrumCache:
    """Weight spectra stored on disk.

    A spectrum is stored under the name of its variety, the order of its
    field, its degree and its mode, together with the checksum of the
    generator matrix of its code. A stored spectrum is only given back for
    the same generator matrix and, in sampled mode, the same sample size and
    seed.

    Args:
        directory (path.Path): Directory of the cache.
    """

    def __init__(self, directory):
        self.directory = Path(directory)

    def path_for(self, preset, q, h, mode):
        return self.directory / "{}-q{}-h{}-{}.json".format(preset, q, h, mode)

    def load(self, preset, code, mode, samples=None, seed=0):
        """Give a stored spectrum.

        Args:
            preset (str): Name of the variety.
            code (hermcodes.codes.FunctionalCode): Code of the spectrum.
            mode (str): "exhaustive" or "sampled".
            samples (int): Sample size of the sampled mode.
            seed (int): Seed of the sampled mode.

        Returns:
            hermcodes.codes.WeightSpectrum: The spectrum, None if it is not in
            the cache.
        """
        file_path = self.path_for(preset, code.q, code.h, mode)
        if not file_path.exists():
            return None

        data = read_json(file_path)
        if data.get("generator") != array_checksum(code.generator):
            logger.warning("Cached spectrum '%s' is for another code", file_path)
            return None

        spectrum = WeightSpectrum.from_dict(data["spectrum"])
        if mode == "sampled" and (spectrum.samples, spectrum.seed) != (samples, seed):
            return None

        logger.info("Spectrum loaded from cache '%s'", file_path)
        return spectrum

    def store(self, preset, code, spectrum):
        """Store a spectrum.

        Returns:
            path.Path: Path of the stored file.
        """
        self.directory.makedirs_p()
        file_path = self.path_for(preset, code.q, code.h, spectrum.mode)
        write_json(
            file_path,
            {
                "generator": array_checksum(code.generator),
                "spectrum": spectrum.as_dict(),
            },
        )
        logger.debug("Spectrum stored in cache '%s'", file_path)
        return file_path


class ResultFileError(HermcodesError):
    """Unable to read or write a result file."""
