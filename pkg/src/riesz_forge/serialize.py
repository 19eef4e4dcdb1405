"""JSON schemas for domains, spectra and stacks; deterministic JSON/CSV output.

Rationals travel as ``"p/q"`` strings.  Floats are written with 17
significant digits in CSV and with Python's shortest round-trip repr in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import RieszForgeError
from .geometry import Interval, Rect, SignedCell, SignedDomain, rect, tri
from .lift import StackRect, StackSpec
from .rational import fmt, frac
from .spectra import Branch, Exclusion, FrequencySet


class InputError(RieszForgeError):
    """Malformed or unreadable input file."""


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------


def domain_to_json(d: SignedDomain) -> dict:
    cells = []
    for c in d.cells:
        s = c.shape
        if isinstance(s, Interval):
            cells.append({"kind": "interval", "x": [fmt(s.left), fmt(s.right)], "w": c.weight})
        elif isinstance(s, Rect):
            cells.append({"kind": "rect", "x": [fmt(s.x.left), fmt(s.x.right)],
                          "y": [fmt(s.y.left), fmt(s.y.right)], "w": c.weight})
        else:
            cells.append({"kind": "tri", "vertex": [fmt(v) for v in s.vertex],
                          "legs": [fmt(v) for v in s.legs], "w": c.weight})
    return {"dimension": d.dimension, "cells": cells}


def domain_from_json(obj: dict, name: str = "") -> SignedDomain:
    try:
        dim = int(_field(obj, "dimension", "domain"))
        cells = []
        for i, c in enumerate(_field(obj, "cells", "domain")):
            where = f"domain cell {i}"
            kind = _field(c, "kind", where)
            w = int(c.get("w", 1))
            if kind == "interval":
                a, b = _field(c, "x", where)
                cells.append(SignedCell(Interval(a, b), w))
            elif kind == "rect":
                (x0, x1), (y0, y1) = _field(c, "x", where), _field(c, "y", where)
                cells.append(rect(x0, x1, y0, y1, w))
            elif kind == "tri":
                cells.append(tri(_field(c, "vertex", where), _field(c, "legs", where), w))
            else:
                raise InputError(f"{where}: unknown kind {kind!r}")
        return SignedDomain(tuple(cells), dim, name)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid domain: {exc}") from exc


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


def _excl_to_json(e: Exclusion) -> dict:
    return {"modulus": e.modulus, "residues": [list(r) for r in sorted(e.residues)]}


def spectrum_to_json(f: FrequencySet) -> dict:
    branches = []
    for b in f.branches:
        item = {"offset": [fmt(v) for v in b.offset], "scale": [fmt(v) for v in b.scale]}
        if b.exclude is not None:
            item["exclude"] = _excl_to_json(b.exclude)
        branches.append(item)
    return {"dimension": f.dimension, "branches": branches}


def spectrum_from_json(obj: dict) -> FrequencySet:
    try:
        dim = int(_field(obj, "dimension", "spectrum"))
        shared = obj.get("exclude")
        branches = []
        for i, b in enumerate(_field(obj, "branches", "spectrum")):
            where = f"spectrum branch {i}"
            ex = b.get("exclude", shared)
            excl = None
            if ex is not None:
                excl = Exclusion(int(_field(ex, "modulus", where)),
                                 frozenset(tuple(r) for r in _field(ex, "residues", where)))
            branches.append(Branch(tuple(frac(v) for v in _field(b, "offset", where)),
                                   tuple(frac(v) for v in _field(b, "scale", where)), excl))
        return FrequencySet(dim, tuple(branches))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid spectrum: {exc}") from exc


# ---------------------------------------------------------------------------
# stacks
# ---------------------------------------------------------------------------


def stack_to_json(T: StackSpec) -> dict:
    return {"N": T.width, "rects": [{"alpha": fmt(r.alpha), "beta": fmt(r.beta), "v": r.v,
                                     "slot": r.slot} for r in T.rects]}


def stack_from_json(obj: dict) -> StackSpec:
    try:
        rects = [StackRect(_field(r, "alpha", "stack rect"), _field(r, "beta", "stack rect"),
                           int(_field(r, "v", "stack rect")), r.get("slot"))
                 for r in _field(obj, "rects", "stack")]
        return StackSpec(int(_field(obj, "N", "stack")), tuple(rects))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid stack: {exc}") from exc


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def plain(obj: Any) -> Any:
    """Recursively convert to JSON-native values (rationals become ``"p/q"``)."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return obj


def to_json(obj: Any) -> str:
    return json.dumps(plain(obj), indent=2) + "\n"


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def to_csv(columns: Sequence[str], rows: Iterable[Sequence | dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        vals = [r.get(c) for c in columns] if isinstance(r, dict) else list(r)
        writer.writerow([_cell(v) for v in vals])
    return buf.getvalue()
