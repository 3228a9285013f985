"""Exceptions module.

Every known error of the package inherits from `HermcodesError`:

>>> class ScanCapError(HermcodesError, ValueError):
...     pass

Known errors are bad parameters given by the user (a field order that is not a
prime power, a scan above its cap, a malformed coefficient list). Anything
else reaching the command line front end is a bug.

`generate_exception_handler` creates context managers that add a line of help
to an expected error, for instance to suggest the sampled mode when an
exhaustive enumeration is refused. `handle_all_exceptions` wraps the command
line front end and converts errors into exit values.
"""

import logging
from contextlib import contextmanager
from enum import IntEnum

logger = logging.getLogger(__name__)


class HermcodesError(Exception):
    """Base class of the known errors of the package."""


class HermcodesHandledError(Exception):
    """Mixin for errors that received an extra message.

    Must be used in multiple inheritance.
    """


def handled_class(error_class):
    """Give the handled counterpart of an error class.

    The class derives from `error_class` and `HermcodesHandledError` and keeps
    the name of `error_class`, so that logs and tracebacks show the original
    name. Classes are created once per error class.

    >>> handled_class(KeyError).__name__
    'KeyError'
    >>> handled_class(KeyError) is handled_class(KeyError)
    True
    """
    if issubclass(error_class, HermcodesHandledError):
        return error_class

    if error_class not in _HANDLED_CLASSES:
        _HANDLED_CLASSES[error_class] = type(
            error_class.__name__,
            (error_class, HermcodesHandledError),
            {"__module__": error_class.__module__},
        )

    return _HANDLED_CLASSES[error_class]


_HANDLED_CLASSES = {}


def generate_exception_handler(exception_class, error_message):
    """Generate a context manager adding a message to an expected error.

    The caught error is raised again as an instance of its handled class (see
    `handled_class`), its message being followed by `error_message` on a new
    line.

    >>> class CapError(Exception):
    ...     pass
    >>> handle_cap_error = generate_exception_handler(CapError, "use sampling")
    >>> try:
    ...     with handle_cap_error():
    ...         raise CapError("too many codewords")
    ... except CapError as error:
    ...     pass
    >>> str(error).splitlines()
    ['too many codewords', 'use sampling']
    >>> isinstance(error, HermcodesHandledError)
    True

    Args:
        exception_class (Exception or tuple of Exception): Class of the errors
            to catch.
        error_message (str): Extra message.

    Returns:
        function: Context manager function.
    """

    @contextmanager
    def function():
        try:
            yield None

        except exception_class as error:
            raise handled_class(type(error))(
                "{}\n{}".format(error, error_message)
            ) from error

    return function


class ExitStatus(IntEnum):
    """Exit values of the command line front end."""

    SUCCESS = 0
    KNOWN_ERROR = 1
    BUG = 2
    INTERRUPTED = 255

    @classmethod
    def of(cls, error):
        """Give the exit status caused by an error."""
        if isinstance(error, KeyboardInterrupt):
            return cls.INTERRUPTED

        if isinstance(error, HermcodesError):
            return cls.KNOWN_ERROR

        return cls.BUG


class ExitValue:
    """Container for the exit value of the program.

    Attributes:
        value (int): Exit value, `ExitStatus.SUCCESS` by default.
    """

    def __init__(self):
        self.value = ExitStatus.SUCCESS


@contextmanager
def handle_all_exceptions(bugtracker_url, logger=logger, debug=False):
    """Catch every error and yield an exit value.

    >>> import sys
    >>> with handle_all_exceptions(
    ...    "https://www.example.com/issues"
    ... ) as exit_value:
    ...    run_experiment()
    >>> sys.exit(exit_value.value)

    Args:
        bugtracker_url (str): Address where bugs are reported, shown on
            unexpected errors.
        logger (logging.Logger): Logger, the one of this module by default.
        debug (bool): If True, errors other than Ctrl+C are raised again.

    Yields:
        ExitValue: Container whose `value` is an `ExitStatus`.
    """
    container = ExitValue()

    try:
        yield container

    except BaseException as error:
        container.value = ExitStatus.of(error)

        if container.value == ExitStatus.INTERRUPTED:
            logger.info("Quit by user")
            return

        if debug:
            raise

        if container.value == ExitStatus.KNOWN_ERROR:
            logger.critical(error)
            return

        logger.exception("Unexpected error: %s", error)
        logger.critical("Please fill a bug report at '%s'", bugtracker_url)
