"""Append-only JSON-lines results store with an index sidecar.

Each record is keyed by (knot, p, kind, convention). Outputs are serialized
canonically (sorted keys, compact separators), so re-running a computation
with identical inputs reproduces the same ``outputs`` bytes. Single writer,
any number of readers.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, Optional, Tuple, Union

from . import __version__
from .invariant import CONVENTION

Key = Tuple[str, int, str, str]


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def inputs_hash(inputs: dict) -> str:
    return hashlib.sha256(canonical_json(inputs).encode()).hexdigest()


@dataclass(frozen=True)
class Record:
    knot: str
    p: int
    kind: str
    convention: str
    inputs_hash: str
    outputs: str
    timestamp: float
    version: str

    @property
    def key(self) -> Key:
        return (self.knot, self.p, self.kind, self.convention)

    def output_json(self):
        return json.loads(self.outputs)

    def to_line(self) -> str:
        return canonical_json(
            {
                "knot": self.knot,
                "p": self.p,
                "kind": self.kind,
                "convention": self.convention,
                "inputs_hash": self.inputs_hash,
                "outputs": self.outputs,
                "timestamp": self.timestamp,
                "version": self.version,
            }
        )

    @classmethod
    def from_line(cls, line: str) -> "Record":
        d = json.loads(line)
        return cls(
            d["knot"], int(d["p"]), d["kind"], d["convention"], d["inputs_hash"],
            d["outputs"], float(d["timestamp"]), d["version"],
        )


class ResultsStore:
    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.index_path = self.path.with_suffix(self.path.suffix + ".idx")
        self._index: Dict[str, int] = {}
        self._load_index()

    @staticmethod
    def _index_key(key: Key, ihash: str) -> str:
        knot, p, kind, conv = key
        return "%s|%d|%s|%s|%s" % (knot, p, kind, conv, ihash)

    def _load_index(self) -> None:
        if self.index_path.exists() and self.path.exists():
            try:
                data = json.loads(self.index_path.read_text())
                size = data.get("size")
                if size == self.path.stat().st_size:
                    self._index = {k: int(v) for k, v in data["offsets"].items()}
                    return
            except (ValueError, KeyError):
                pass
        self._rebuild_index()

    def _rebuild_index(self) -> None:
        self._index = {}
        if not self.path.exists():
            return
        with self.path.open("rb") as fh:
            offset = 0
            for raw in fh:
                if raw.strip():
                    rec = Record.from_line(raw.decode())
                    self._index[self._index_key(rec.key, rec.inputs_hash)] = offset
                offset += len(raw)
        self._write_index()

    def _write_index(self) -> None:
        size = self.path.stat().st_size if self.path.exists() else 0
        self.index_path.write_text(canonical_json({"size": size, "offsets": self._index}))

    def get(self, knot: str, p: int, kind: str, inputs: dict, convention: str = CONVENTION) -> Optional[Record]:
        off = self._index.get(self._index_key((knot, p, kind, convention), inputs_hash(inputs)))
        if off is None:
            return None
        with self.path.open("rb") as fh:
            fh.seek(off)
            return Record.from_line(fh.readline().decode())

    def put(self, knot: str, p: int, kind: str, inputs: dict, outputs, convention: str = CONVENTION) -> Record:
        rec = Record(knot, p, kind, convention, inputs_hash(inputs), canonical_json(outputs), time.time(), __version__)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        offset = self.path.stat().st_size if self.path.exists() else 0
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(rec.to_line() + "\n")
        self._index[self._index_key(rec.key, rec.inputs_hash)] = offset
        self._write_index()
        return rec

    def get_or_compute(self, knot: str, p: int, kind: str, inputs: dict, compute) -> Tuple[Record, bool]:
        """Cached record and True, or a freshly computed one and False."""
        rec = self.get(knot, p, kind, inputs)
        if rec is not None:
            return rec, True
        return self.put(knot, p, kind, inputs, compute()), False

    def records(self) -> Iterator[Record]:
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    yield Record.from_line(line)
