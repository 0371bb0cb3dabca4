"""Run manifests: provenance sidecars for CLI outputs.

A manifest records what produced an output file (argv, seed, library
versions, input content hashes) so a run can be reproduced exactly.  The
data outputs themselves carry no timestamps; reruns of the same command
are expected to be bit-identical, and the manifest is where the
when/with-what lives.
"""

from __future__ import annotations

import hashlib
import json
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import metadata
from typing import Optional, Sequence

import numpy

from . import __version__


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def library_versions() -> dict[str, str]:
    return {
        "tilestat": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "click": metadata.version("click"),
    }


@dataclass(slots=True)
class RunManifest:
    command: list[str]
    seed: Optional[int]
    versions: dict[str, str]
    timestamp: str
    input_hashes: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)

    @classmethod
    def create(cls, command: Sequence[str], seed: Optional[int] = None,
               inputs: Sequence[str] = (), outputs: Sequence[str] = ()) -> "RunManifest":
        return cls(
            command=list(command),
            seed=seed,
            versions=library_versions(),
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            input_hashes={p: sha256_file(p) for p in inputs},
            outputs=list(outputs),
        )

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "versions": self.versions,
            "timestamp": self.timestamp,
            "inputHashes": self.input_hashes,
            "outputs": self.outputs,
        }

    def write_sidecar(self, out_path: str) -> str:
        sidecar = out_path + ".manifest.json"
        with open(sidecar, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, sort_keys=True, indent=2)
            fh.write("\n")
        return sidecar
