import os
import sys
from datetime import datetime
from typing import Any, List, Sequence


def _ts() -> str:
    return datetime.now().strftime("%H:%M:%S")


def ts_print(*args, sep: str = " ", end: str = "\n", file=None, flush: bool = True):
    """Print with a HH:MM:SS timestamp prefix.

    Usage mirrors built-in print; the progress grid does not use this.
    SEPGD_QUIET=1 silences it (tests, batch jobs).
    """
    if os.environ.get("SEPGD_QUIET") == "1":
        return
    prefix = f"[{_ts()}]"
    msg = sep.join(str(a) for a in args)
    print(f"{prefix} {msg}", end=end, file=file or sys.stdout, flush=flush)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Left-aligned plain-text table (measured values vs bounds)."""
    cells: List[List[str]] = [[_cell(v) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)))
    return "\n".join(lines)
