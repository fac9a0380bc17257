"""JSON-lines event log: one object per line, keys sorted, so equal runs give
byte-identical files."""

from __future__ import annotations

import json
from contextlib import contextmanager
from typing import IO, Iterator

import click


def encode(event: dict) -> str:
    return json.dumps(event, sort_keys=True, ensure_ascii=False, default=str)


class EventLog:
    """Writes nothing when it has no stream."""

    def __init__(self, stream: IO[str] | None = None):
        self.stream = stream

    def emit(self, event: str, **body) -> None:
        if self.stream is None:
            return
        self.stream.write(encode({"event": event, **body}) + "\n")

    def records(self, records: list[dict]) -> None:
        for record in records:
            self.emit("stage", **record)


@contextmanager
def open_log(path: str | None) -> Iterator[EventLog]:
    if path is None:
        yield EventLog()
        return
    with open(path, "w", encoding="utf-8") as stream:
        yield EventLog(stream)


def diagnostic(message: str) -> None:
    click.echo(message, err=True)
