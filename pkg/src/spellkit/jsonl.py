"""Line-delimited JSON helpers with file/line error context."""

from __future__ import annotations

import json
from typing import IO, Iterable, Iterator

from .errors import DataFormatError


def dumps(obj) -> str:
    """One-line JSON with a fixed, deterministic rendering."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_records(stream: IO[str], records: Iterable[dict]) -> None:
    for record in records:
        stream.write(dumps(record))
        stream.write("\n")


def read_records(stream: IO[str], source_name: str = "<stream>") -> Iterator[dict]:
    """Yield one parsed object per nonempty line; bad lines carry context."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFormatError(
                f"{source_name}:{lineno}: malformed JSON record: {exc.msg}"
            ) from exc
        if not isinstance(obj, dict):
            raise DataFormatError(
                f"{source_name}:{lineno}: expected a JSON object"
            )
        yield obj
