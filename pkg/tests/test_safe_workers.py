from queue import Queue
from threading import Event
from unittest import TestCase
from unittest.mock import MagicMock, patch

from hermcodes.safe_workers import (
    BaseWorker,
    NoErrorCaughtError,
    SafeThread,
    ShardPool,
    Worker,
    resolve_threads,
    run_shards,
    safe,
)


class MyError(Exception):
    """Dummy error class."""


class BaseTestCase(TestCase):
    """Generic test case with a stop event and an errors queue."""

    def setUp(self):
        self.stop = Event()
        self.errors = Queue()

    @staticmethod
    def function_error(*args):
        raise MyError("test error")


class SafeTestCase(BaseTestCase):
    """Test the `safe` decorator."""

    def test_worker_function_error(self):
        """Test a failing method of a worker fills the queue."""

        class MyWorker(BaseWorker):
            @safe
            def work(self2):
                self.function_error()

        worker = MyWorker(self.stop, self.errors)
        worker.work()

        self.assertTrue(self.stop.is_set())
        _, error, _ = self.errors.get_nowait()
        self.assertIsInstance(error, MyError)

    def test_worker_function_safe(self):
        """Test a working method of a worker returns its value."""

        class MyWorker(BaseWorker):
            @safe
            def work(self2):
                return 3

        worker = MyWorker(self.stop, self.errors)

        self.assertEqual(worker.work(), 3)
        self.assertFalse(self.stop.is_set())
        self.assertTrue(self.errors.empty())

    def test_other(self):
        """Test the decorator refuses other classes."""

        class Other:
            @safe
            def work(self2):
                pass

        with self.assertRaisesRegex(AssertionError, "is not a BaseSafeThread"):
            Other().work()


class SafeThreadTestCase(BaseTestCase):
    """Test the `SafeThread` class."""

    def test_function_safe(self):
        """Test a thread without error."""
        thread = SafeThread(self.stop, self.errors, target=lambda: None)
        thread.start()
        thread.join()

        self.assertFalse(self.stop.is_set())
        self.assertTrue(self.errors.empty())

    def test_function_error(self):
        """Test a failing thread sets the stop event."""
        thread = SafeThread(self.stop, self.errors, target=self.function_error)
        thread.start()
        thread.join()

        self.assertTrue(self.stop.is_set())
        _, error, _ = self.errors.get_nowait()
        self.assertIsInstance(error, MyError)

    def test_bad_arguments(self):
        """Test the stop event and errors queue are checked."""
        with self.assertRaisesRegex(AssertionError, "Stop argument"):
            SafeThread(None, self.errors)

        with self.assertRaisesRegex(AssertionError, "Errors argument"):
            SafeThread(self.stop, None)


class WorkerTestCase(BaseTestCase):
    """Test the `Worker` class."""

    def test_init_and_exit(self):
        """Test the custom init and exit of a worker."""
        exit_worker = MagicMock()

        class MyWorker(Worker):
            def init_worker(self2, value):
                self2.value = value

            def exit_worker(self2, *args, **kwargs):
                exit_worker()

        with MyWorker(self.stop, self.errors, 5) as worker:
            self.assertEqual(worker.value, 5)
            self.assertFalse(self.stop.is_set())

        self.assertTrue(self.stop.is_set())
        exit_worker.assert_called_once_with()

    def test_create_thread(self):
        """Test created threads share the event and the queue."""
        worker = Worker(self.stop, self.errors)
        thread = worker.create_thread(target=self.function_error)
        thread.start()
        thread.join()

        self.assertTrue(self.stop.is_set())
        self.assertFalse(self.errors.empty())


class ResolveThreadsTestCase(TestCase):
    """Test the number of threads."""

    def test_given(self):
        """Test a positive number is kept."""
        self.assertEqual(resolve_threads(3), 3)

    @patch("hermcodes.safe_workers.os.cpu_count", return_value=6)
    def test_cpu_count(self, mocked_cpu_count):
        """Test zero means one thread per CPU."""
        self.assertEqual(resolve_threads(0), 6)

    @patch("hermcodes.safe_workers.os.cpu_count", return_value=None)
    def test_cpu_count_unknown(self, mocked_cpu_count):
        """Test an unknown number of CPUs gives one thread."""
        self.assertEqual(resolve_threads(0), 1)


class ShardPoolTestCase(BaseTestCase):
    """Test the pool of shards."""

    def test_order(self):
        """Test results are in shard order whatever the number of threads."""
        shards = [list(range(index)) for index in range(20)]

        for threads in (1, 3, 8):
            self.assertListEqual(
                run_shards(sum, shards, threads=threads),
                [sum(shard) for shard in shards],
            )

    def test_empty(self):
        """Test a pool without shards."""
        self.assertListEqual(run_shards(sum, [], threads=2), [])

    def test_error(self):
        """Test the error of a shard is raised again."""
        with self.assertRaisesRegex(MyError, "test error"):
            run_shards(self.function_error, [1, 2, 3], threads=2)

    def test_bar(self):
        """Test the bar receives the shards and the text."""
        bar = MagicMock(side_effect=lambda iterator, **kwargs: iterator)

        run_shards(sum, [[1], [2]], bar=bar, text="summing")

        bar.assert_called_once()
        self.assertEqual(bar.call_args.kwargs["text"], "summing")
        self.assertEqual(bar.call_args.kwargs["unit"], "shards")

    def test_stopped_without_error(self):
        """Test a pool stopped from outside."""
        pool = ShardPool(self.stop, self.errors, sum, threads=1)
        self.stop.set()

        with self.assertRaises(NoErrorCaughtError):
            pool.map([[1]])
