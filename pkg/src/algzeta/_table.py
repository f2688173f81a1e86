"""Small helpers for ordered parallel maps and table rendering."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence


def ordered_map(fn: Callable, items: Iterable, jobs: int = 1, chunksize: int = 8) -> list:
    """``[fn(x) for x in items]``, optionally on a process pool; order is preserved."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


def render(header: Sequence[str], rows: Iterable[Sequence], fmt: str = "csv") -> str:
    """CSV with a header line, or a JSON list of objects; cells are stringified."""
    rows = [[_cell(c, fmt) for c in r] for r in rows]
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _cell(c, fmt: str):
    if isinstance(c, bool):
        return c if fmt == "json" else str(c).lower()
    if isinstance(c, int) and fmt == "json":
        return c
    return str(c)
