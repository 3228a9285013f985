from unittest import TestCase
from unittest.mock import ANY

from hermcodes.exceptions import (
    ExitStatus,
    HermcodesError,
    HermcodesHandledError,
    generate_exception_handler,
    handle_all_exceptions,
    handled_class,
)
from hermcodes.gf_arith import FieldParameterError, field_from_order


class GenerateExceptionHandlerTestCase(TestCase):
    """Test the generation of exception handlers."""

    def test_handler(self):
        """Test an error receives the extra message."""
        handler = generate_exception_handler(FieldParameterError, "try q=4")

        with self.assertRaisesRegex(
            FieldParameterError, r"Order 6 is not a prime power\ntry q=4"
        ) as cm:
            with handler():
                field_from_order(6)

        self.assertIsInstance(cm.exception, HermcodesError)
        self.assertIsInstance(cm.exception, HermcodesHandledError)

    def test_handler_other_error(self):
        """Test an unexpected error class goes through untouched."""
        handler = generate_exception_handler(FieldParameterError, "try q=4")

        with self.assertRaises(KeyError) as cm:
            with handler():
                raise KeyError("key")

        self.assertNotIsInstance(cm.exception, HermcodesHandledError)

    def test_handled_class(self):
        """Test a handled class keeps the name of the caught class."""
        handled = handled_class(FieldParameterError)

        self.assertEqual(handled.__name__, "FieldParameterError")
        self.assertTrue(issubclass(handled, FieldParameterError))
        self.assertIs(handled_class(FieldParameterError), handled)
        self.assertIs(handled_class(handled), handled)


class HandleAllExceptionsTestCase(TestCase):
    """Test the conversion of errors into exit values."""

    def test_normal_exit(self):
        """Test a normal exit."""
        with handle_all_exceptions("url") as exit_value:
            pass

        self.assertEqual(exit_value.value, 0)

    def test_keyboard_interrupt(self):
        """Test a Ctrl+C exit."""
        with self.assertLogs("hermcodes.exceptions") as logger:
            with handle_all_exceptions("url") as exit_value:
                raise KeyboardInterrupt

        self.assertEqual(exit_value.value, 255)
        self.assertListEqual(logger.output, ["INFO:hermcodes.exceptions:Quit by user"])

    def test_known_error(self):
        """Test a known error exit."""
        with self.assertLogs("hermcodes.exceptions") as logger:
            with handle_all_exceptions("url") as exit_value:
                field_from_order(6)

        self.assertEqual(exit_value.value, 1)
        self.assertListEqual(
            logger.output,
            ["CRITICAL:hermcodes.exceptions:Order 6 is not a prime power"],
        )

    def test_known_error_debug(self):
        """Test a known error is raised again in debug mode."""
        with self.assertRaisesRegex(HermcodesError, "error"):
            with handle_all_exceptions("url", debug=True) as exit_value:
                raise HermcodesError("error")

        self.assertEqual(exit_value.value, 1)

    def test_unknown_error(self):
        """Test an unknown error exit."""
        with self.assertLogs("hermcodes.exceptions") as logger:
            with handle_all_exceptions("url") as exit_value:
                raise Exception("error")

        self.assertEqual(exit_value.value, 2)
        self.assertListEqual(
            logger.output,
            [ANY, "CRITICAL:hermcodes.exceptions:Please fill a bug report at 'url'"],
        )

    def test_unknown_error_debug(self):
        """Test an unknown error is raised again in debug mode."""
        with self.assertRaisesRegex(Exception, "error"):
            with handle_all_exceptions("url", debug=True) as exit_value:
                raise Exception("error")

        self.assertEqual(exit_value.value, 2)


class ExitStatusTestCase(TestCase):
    """Test the exit status of errors."""

    def test_of(self):
        """Test the status of each kind of error."""
        self.assertEqual(ExitStatus.of(KeyboardInterrupt()), 255)
        self.assertEqual(ExitStatus.of(HermcodesError("error")), 1)
        self.assertEqual(ExitStatus.of(RuntimeError("error")), 2)

    def test_handled_error(self):
        """Test a handled known error is still a known error."""
        handler = generate_exception_handler(FieldParameterError, "try q=4")

        with self.assertLogs("hermcodes.exceptions") as logger:
            with handle_all_exceptions("url") as exit_value:
                with handler():
                    field_from_order(6)

        self.assertEqual(exit_value.value, ExitStatus.KNOWN_ERROR)
        self.assertListEqual(
            logger.output,
            ["CRITICAL:hermcodes.exceptions:Order 6 is not a prime power\ntry q=4"],
        )
