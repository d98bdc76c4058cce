import hashlib
import logging
import sys
from pathlib import Path
from typing import Optional, Union

from core.exceptions import ParseError

logger = logging.getLogger(__name__)

STDIO = "-"


def as_text(stream: Union[bytes, str]) -> str:
    if isinstance(stream, bytes):
        try:
            return stream.decode("utf-8")
        except UnicodeDecodeError as e:
            line = stream.count(b"\n", 0, e.start) + 1
            raise ParseError(f"invalid UTF-8 byte 0x{stream[e.start]:02x}", line=line) from e
    return stream


def read_input(path: Optional[str]) -> bytes:
    if path is None or path == STDIO:
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def write_output(data: bytes, path: Optional[str] = None, algorithm: str = "sha256") -> str:
    """Write `data` to `path` (stdout when absent) and return its checksum."""
    hash_func = getattr(hashlib, algorithm)()
    hash_func.update(data)
    if path is None or path == STDIO:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        file_path = Path(path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_bytes(data)
    checksum = hash_func.hexdigest()
    logger.info("Wrote %d bytes to %s (%s %s)", len(data), path or "stdout", algorithm, checksum)
    return checksum
