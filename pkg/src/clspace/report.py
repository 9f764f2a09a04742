"""report.json, summary.csv and the plain-text table."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from . import __version__
from .indices import GridSpec
from .witnesses import jsonable


def provenance(command: str, grid: GridSpec | None, tol: float | None, seed: int | None, **extra) -> dict:
    out = {"package": "clspace", "version": __version__, "command": command,
           "grid": asdict(grid) if grid is not None else None, "tol": tol, "seed": seed}
    out.update(extra)
    return out


def dumps(report: Mapping[str, Any]) -> str:
    # sorted keys and no NaN literals keep the bytes stable across runs
    return json.dumps(jsonable(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _cell(v) -> str:
    v = jsonable(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def csv_text(rows: Sequence[Mapping[str, Any]], columns: Sequence[str] | None = None) -> str:
    columns = list(columns or _columns(rows))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c, "")) for c in columns])
    return buf.getvalue()


def _columns(rows: Iterable[Mapping[str, Any]]) -> list[str]:
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    return cols


def table(rows: Sequence[Mapping[str, Any]], columns: Sequence[str] | None = None) -> str:
    columns = list(columns or _columns(rows))
    cells = [[_cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    line = "  ".join(c.ljust(w) for c, w in zip(columns, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(s.rstrip() for s in out) + "\n"


def write_outputs(out_dir: str | Path, report: Mapping[str, Any], rows: Sequence[Mapping[str, Any]],
                  columns: Sequence[str] | None = None) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rj, sc = out / "report.json", out / "summary.csv"
    rj.write_text(dumps(report))
    sc.write_text(csv_text(rows, columns))
    return rj, sc


def key_value_rows(result: Mapping[str, Any], prefix: str = "") -> list[dict]:
    """Flatten scalars of a nested mapping into ``key, value`` rows."""
    rows = []
    for k, v in result.items():
        name = f"{prefix}{k}"
        if isinstance(v, Mapping):
            rows += key_value_rows(v, name + ".")
        elif isinstance(v, (list, tuple)) and any(isinstance(i, (Mapping, list, tuple)) for i in v):
            continue
        else:
            rows.append({"key": name, "value": v})
    return rows
