"""Progress bars for long enumerations.

Scans and spectra report their progress shard after shard. `progress_bar`
displays a bar with a descriptive text and a shard counter, when the logs go
to a terminal:

>>> for shard in progress_bar(shards, text="Scanning quadrics", unit="shards"):
...     pass

The stderr stream must be wrapped with `hermcodes.config.create_logger` called
with `wrap=True` for logs and bars to coexist.

`null_bar` has the same interface but only logs the text, for batch runs.
`select_bar` picks one of them from a flag:

>>> bar = select_bar(config.get("progress", True))
"""

import logging

import progressbar
from progressbar.widgets import WidgetBase

logger = logging.getLogger(__name__)


class ShrinkableTextWidget(WidgetBase):
    """Text taking a fraction of the terminal width.

    A text too long is cut in its middle.

    Args:
        text (str): Text to display.
        ratio (float): Fraction of the terminal width used by the text.
    """

    def __init__(self, text, ratio=0.25):
        super().__init__()

        assert len(text) > 5, "Text too short"
        self.text = text
        self.ratio = ratio

    def __call__(self, progress, data):
        width = int(progress.term_width * self.ratio)
        if len(self.text) <= width:
            return self.text.ljust(width)

        half = width // 2
        head = self.text[: half - 2].strip()
        tail = self.text[-half + 1 :].strip()
        return "{}...{}".format(head, tail).ljust(width)


def get_widgets(text=None, unit=None):
    """Give the widgets of a bar.

    Args:
        text (str): Description of the task, left out if None.
        unit (str): Name of the counted items, the counter is left out if
            None.

    Returns:
        list: Widgets and separators.
    """
    widgets = []
    if text:
        widgets.extend([ShrinkableTextWidget(text), " "])

    if unit:
        counter = "%(value_s)s/%(max_value_s)s {}".format(unit)
        widgets.extend([progressbar.SimpleProgress(format=counter), " "])

    widgets.extend(
        [
            progressbar.Percentage(),
            " ",
            progressbar.Bar(),
            " ",
            progressbar.AdaptiveETA(),
        ]
    )
    return widgets


def progress_bar(iterator, *args, text=None, unit=None, **kwargs):
    """Iterate with a progress bar.

    Args:
        iterator (iterable): Items to iterate over. Give `max_value` when it
            has no length.
        text (str): Description of the task.
        unit (str): Name of the items, to display a counter.

    Yields:
        any: Items of the iterator.
    """
    widgets = get_widgets(text, unit)
    with progressbar.ProgressBar(*args, widgets=widgets, **kwargs) as progress:
        yield from progress(iterator)


def null_bar(iterator, *args, text=None, unit=None, **kwargs):
    """Iterate without displaying progress.

    The text is logged once, with the number of items when known.
    """
    if text:
        try:
            logger.info("%s (%i %s)", text, len(iterator), unit or "items")

        except TypeError:
            logger.info(text)

    with progressbar.NullBar(*args, **kwargs) as progress:
        yield from progress(iterator)


def select_bar(enabled):
    """Give `progress_bar` if enabled, `null_bar` otherwise."""
    return progress_bar if enabled else null_bar
