"""Schema loading and payload validation for the JSON outputs."""

from __future__ import annotations

import json
from importlib import resources

_CACHE: dict[str, dict] = {}


def schema_names() -> list[str]:
    root = resources.files("tilestat") / "schemas"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_schema(name: str) -> dict:
    if name not in _CACHE:
        path = resources.files("tilestat") / "schemas" / (name + ".json")
        _CACHE[name] = json.loads(path.read_text(encoding="utf-8"))
    return _CACHE[name]


def validate_payload(name: str, payload: dict) -> None:
    """Validate payload against the named shipped schema.  Needs the
    jsonschema package (a test extra, not a runtime dependency)."""
    import jsonschema

    jsonschema.validate(payload, load_schema(name))
