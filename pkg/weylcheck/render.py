"""Terminal rendering helpers -- report highlighting, tables and progress."""

from __future__ import annotations

import itertools
import json
import os
import sys
import threading
import time
from typing import Dict, List

# Enable ANSI escape codes on Windows 10+ cmd.exe
if os.name == "nt":
    try:
        import ctypes
        kernel32 = ctypes.windll.kernel32
        kernel32.SetConsoleMode(kernel32.GetStdHandle(-11), 7)
    except Exception:
        pass

try:
    from pygments import highlight as _pyg_highlight
    from pygments.lexers import JsonLexer
    from pygments.formatters import Terminal256Formatter

    _HAS_PYGMENTS = True
except ImportError:
    _HAS_PYGMENTS = False

_PASS = "\033[32mPASS\033[0m"
_FAIL = "\033[31mFAIL\033[0m"


def dumps(payload: Dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _highlight_json(text: str) -> str:
    if _HAS_PYGMENTS:
        return _pyg_highlight(text, JsonLexer(), Terminal256Formatter(style="monokai")).rstrip("\n")
    return text


def highlight(text: str) -> str:
    """Colour a JSON document when stdout is a terminal."""
    if not text or not sys.stdout.isatty():
        return text
    return _highlight_json(text)


def _cell(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def format_text(payload: Dict, color: bool = False) -> str:
    """Aligned plain-text rendering of a report payload."""
    results: List[Dict] = payload.get("results", [])
    lines = [f"weylcheck {payload.get('tool_version', '')}  {payload.get('config', {}).get('command', '')}"]
    if results:
        width = max(len(r["name"]) for r in results)
        for r in results:
            mark = ("PASS" if r["pass"] else "FAIL") if not color else (_PASS if r["pass"] else _FAIL)
            line = f"  {mark}  {r['name'].ljust(width)}  expected={_cell(r['expected'])}  got={_cell(r['got'])}"
            lines.append(line)
    for name, value in sorted(payload.get("objects", {}).items()):
        lines.append(f"  {name}:")
        if isinstance(value, list) and value and all(isinstance(row, list) for row in value):
            for row in value:
                lines.append("    " + "  ".join(str(v) for v in row))
        else:
            lines.append("    " + _cell(value))
    passed = sum(1 for r in results if r["pass"])
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)


def status(message: str, enabled: bool = True):
    """Progress line on stderr, dimmed on a terminal."""
    if not enabled:
        return
    if sys.stderr.isatty():
        sys.stderr.write("\033[2m" + message + "\033[0m\n")
    else:
        sys.stderr.write(message + "\n")
    sys.stderr.flush()


def error(message: str):
    if sys.stderr.isatty():
        sys.stderr.write("\033[31mweylcheck:\033[0m " + message + "\n")
    else:
        sys.stderr.write("weylcheck: " + message + "\n")
    sys.stderr.flush()


class Spinner:
    """Minimal terminal spinner used while a suite runs."""

    def __init__(self, label: str):
        self.label = label
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    def __enter__(self):
        if not sys.stderr.isatty():
            return self

        def _run():
            for frame in itertools.cycle("⠋⠙⠹⠸⠼⠴⠦⠧⠇⠏"):
                if self._stop.is_set():
                    break
                sys.stderr.write(
                    "\r\033[36m" + frame + "\033[0m \033[2m"
                    + self.label + "\033[0m  "
                )
                sys.stderr.flush()
                time.sleep(0.08)

        self._thread = threading.Thread(target=_run, daemon=True)
        self._thread.start()
        return self

    def __exit__(self, exc_type, exc, tb):
        if self._thread:
            self._stop.set()
            self._thread.join(timeout=0.2)
            sys.stderr.write("\r" + " " * (len(self.label) + 4) + "\r")
            sys.stderr.flush()
        return False
