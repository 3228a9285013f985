"""Utils module.

`truncate_message` shortens long strings, such as forms printed in logs:

>>> truncate_message("x0x1 + x2x3 + x4^2 over GF(3)", limit=15)
'x0x1 + x2x3...'

`file_checksum` and `array_checksum` give the SHA-256 digests referenced by
the run manifests:

>>> len(array_checksum(np.zeros((2, 2), dtype=np.int64)))
64
"""

import hashlib

import numpy as np

CHUNK_SIZE = 2**16


def truncate_message(message, limit=100):
    """Give the first characters of a message.

    The message is cut and ended with an ellipsis, without blank spaces before
    it.

    Args:
        message (str): Message to truncate.
        limit (int): Maximum size of the message.

    Returns:
        str: Truncated message.
    """
    assert limit - 3 > 0, "Limit too short"

    if len(message) <= limit:
        return message

    return message[: limit - 3].strip() + "..."


def file_checksum(file_path):
    """Give the SHA-256 hexadecimal digest of a file.

    Args:
        file_path (path.Path): Path of the file.

    Returns:
        str: Digest.
    """
    digest = hashlib.sha256()
    with open(file_path, "rb") as file:
        for chunk in iter(lambda: file.read(CHUNK_SIZE), b""):
            digest.update(chunk)

    return digest.hexdigest()


def array_checksum(array):
    """Give the SHA-256 hexadecimal digest of an integer array.

    The digest depends on the shape and on the values, stored as 64 bits
    little endian integers.
    """
    array = np.ascontiguousarray(array, dtype="<i8")
    digest = hashlib.sha256(str(array.shape).encode())
    digest.update(array.tobytes())
    return digest.hexdigest()
