"""Safe workers module.

This module runs enumerations on several threads in a way that a failure in
one thread stops the whole run and is raised again in the calling thread.

The classes share a stop event and an errors queue. A `SafeThread` puts any
exception of its target in the queue and sets the stop event; a `Worker`
creates such threads bound to its own event and queue:

>>> from threading import Event
>>> from queue import Queue
>>> stop = Event()
>>> errors = Queue()
>>> worker = Worker(stop, errors)
>>> thread = worker.create_thread(target=print, args=("shard",))

`ShardPool` is the worker used by the scans and spectra. It applies a function
to a list of shards and gives the results in shard order, whatever the number
of threads, so that merging them is deterministic:

>>> run_shards(sum, [[1, 2], [3, 4]], threads=2)
[3, 7]
"""

import logging
import os
import sys
from functools import wraps
from queue import Empty, Queue
from threading import Event, Thread

from hermcodes.progress_bar import null_bar

logger = logging.getLogger(__name__)


def safe(fun):
    """Decorator making a method safe.

    Any exception is put in the errors queue and sets the stop event.

    The decorated function must be a method of a `BaseSafeThread` or a
    `BaseWorker`.
    """

    @wraps(fun)
    def call(self, *args, **kwargs):
        assert isinstance(self, (BaseSafeThread, BaseWorker)), (
            "The class '{}' of method '{}' is not a "
            "BaseSafeThread or a BaseWorker".format(
                self.__class__.__name__, fun.__name__
            )
        )

        try:
            return fun(self, *args, **kwargs)

        except BaseException:
            self.errors.put_nowait(sys.exc_info())
            self.stop.set()

    return call


class BaseSafeThread:
    """Base class for threads reporting their failure.

    An exception raised by the thread is put in the errors queue and sets the
    stop event, instead of being printed.

    Must be inherited along with `threading.Thread`.

    Attributes:
        stop (threading.Event): Event stopping the run when set.
        errors (queue.Queue): Queue passing exceptions to the calling thread.

    Args:
        stop (threading.Event): Event stopping the run when set.
        errors (queue.Queue): Queue passing exceptions to the calling thread.
    """

    def __init__(self, stop, errors, *args, **kwargs):
        assert isinstance(stop, Event), "Stop argument must be of type Event"
        assert isinstance(errors, Queue), "Errors argument must be of type Queue"

        self.stop = stop
        self.errors = errors

        super().__init__(*args, **kwargs)

    @safe
    def run(self):
        return super().run()


class SafeThread(BaseSafeThread, Thread):
    """Thread reporting its failure to the errors queue.

    See `threading.Thread` for the other arguments.
    """


class BaseWorker:
    """Base worker class.

    The worker holds the stop event and the errors queue and creates safe
    threads bound to them. It is a context manager setting the stop event on
    exit.

    Attributes:
        stop (threading.Event): Event stopping the run when set.
        errors (queue.Queue): Queue passing exceptions to the calling thread.

    Args:
        stop (threading.Event): Event stopping the run when set.
        errors (queue.Queue): Queue passing exceptions to the calling thread.

    Raises:
        AssertionError: If the arguments are not an Event and a Queue.
    """

    def __init__(self, stop, errors):
        assert isinstance(stop, Event), "Stop attribute must be of type Event"
        self.stop = stop

        assert isinstance(errors, Queue), "Errors attribute must be of type Queue"
        self.errors = errors

    def init_worker(self):
        """Custom init method stub."""

    def __enter__(self):
        self.enter_worker()
        return self

    def enter_worker(self):
        """Custom enter method stub."""

    def __exit__(self, *args, **kwargs):
        self.stop.set()

    def exit_worker(self, *args, **kwargs):
        """Custom exit method stub."""

    def create_thread(self, *args, **kwargs):
        """Create a safe thread bound to the worker.

        Args:
            See `threading.Thread`.

        Returns:
            SafeThread: The thread, not started.
        """
        return SafeThread(self.stop, self.errors, *args, **kwargs)


class Worker(BaseWorker):
    """Worker with custom initialization and exit.

    Extra initialization goes in `init_worker`, which receives the extra
    arguments, and extra exit actions in `exit_worker`.
    """

    def __init__(self, stop, errors, *args, **kwargs):
        super().__init__(stop, errors)
        self.init_worker(*args, **kwargs)

    def __exit__(self, *args, **kwargs):
        super().__exit__()

        logger.debug("Exiting worker (%s)", self.__class__.__name__)
        self.exit_worker(*args, **kwargs)


def resolve_threads(threads):
    """Give the number of threads to use, 0 meaning one per CPU."""
    if threads and threads > 0:
        return threads

    return os.cpu_count() or 1


class ShardPool(Worker):
    """Worker applying a function to shards on several threads.

    Threads take shards from a common queue until it is empty or the stop event
    is set. Results are stored by shard index. The first failure sets the stop
    event, the other threads finish their current shard and stop, and the
    error is raised again by `map`.

    A pool runs `map` once, as its stop event is set on exit.

    Args:
        stop (threading.Event): Event stopping the run when set.
        errors (queue.Queue): Queue passing exceptions to the calling thread.
        function (callable): Function applied to each shard.
        threads (int): Number of threads, 0 for one per CPU.
        bar (callable): Progress bar, `null_bar` by default.
        text (str): Description of the task, for the bar.
    """

    POLLING_INTERVAL = 0.5

    def init_worker(self, function, threads=1, bar=null_bar, text=None):
        self.function = function
        self.threads = resolve_threads(threads)
        self.bar = bar
        self.text = text

    def consume(self, shards, tasks, done, results):
        while not self.stop.is_set():
            try:
                index = tasks.get_nowait()

            except Empty:
                return

            results[index] = self.function(shards[index])
            done.put(index)

    def wait_shard(self, done):
        """Wait for the next finished shard.

        Returns:
            bool: False if the stop event was set meanwhile.
        """
        while True:
            try:
                done.get(timeout=self.POLLING_INTERVAL)
                return True

            except Empty:
                if self.stop.is_set():
                    return False

    def map(self, shards):
        """Apply the function to every shard.

        Args:
            shards (list): Shard descriptions.

        Returns:
            list: Results, in the order of the shards.

        Raises:
            NoErrorCaughtError: If the run stopped without any error.
        """
        shards = list(shards)
        results = [None] * len(shards)
        tasks = Queue()
        for index in range(len(shards)):
            tasks.put(index)

        done = Queue()
        count = max(1, min(self.threads, len(shards)))
        logger.debug("Running %i shards on %i threads", len(shards), count)

        threads = [
            self.create_thread(
                target=self.consume,
                args=(shards, tasks, done, results),
                name="shard-{}".format(number),
            )
            for number in range(count)
        ]
        for thread in threads:
            thread.start()

        try:
            for _ in self.bar(range(len(shards)), text=self.text, unit="shards"):
                if not self.wait_shard(done):
                    break

        except BaseException:
            self.stop.set()
            raise

        finally:
            for thread in threads:
                thread.join()

        if not self.errors.empty():
            _, error, traceback = self.errors.get_nowait()
            raise error.with_traceback(traceback)

        if self.stop.is_set():
            raise NoErrorCaughtError("Shard pool stopped without error")

        return results


def run_shards(function, shards, threads=1, bar=null_bar, text=None):
    """Apply a function to shards with a fresh `ShardPool`.

    Args:
        function (callable): Function applied to each shard.
        shards (list): Shard descriptions.
        threads (int): Number of threads, 0 for one per CPU.
        bar (callable): Progress bar.
        text (str): Description of the task.

    Returns:
        list: Results, in the order of the shards.
    """
    with ShardPool(Event(), Queue(), function, threads, bar, text) as pool:
        return pool.map(shards)


class NoErrorCaughtError(RuntimeError):
    """Stop event set without any error in the queue.

    This is unexpected and hence does not inherit from HermcodesError.
    """
