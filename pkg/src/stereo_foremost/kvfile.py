"""Plain-text key=value files (calibration, scene specs, configs, reports).

One `key=value` pair per line, `#` starts a comment, blank lines ignored.
Keys keep insertion order on write so files diff cleanly.
"""

from __future__ import annotations

from .errors import MalformedHeader


def parse_kv(text: str) -> dict[str, str]:
    """Parse key=value text into an ordered dict of strings."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedHeader(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise MalformedHeader(f"line {lineno}: empty key")
        out[key] = value.strip()
    return out


def format_kv(items: dict[str, object]) -> str:
    return "".join(f"{k}={v}\n" for k, v in items.items())


def read_kv(path) -> dict[str, str]:
    with open(path, "r", encoding="ascii") as f:
        return parse_kv(f.read())


def write_kv(path, items: dict[str, object]) -> None:
    with open(path, "w", encoding="ascii") as f:
        f.write(format_kv(items))
