"""JSON/CSV formats and the quaternion literal grammar used on the command line.

Quaternions are ``[w, x, y, z]`` arrays in JSON; plain numbers are accepted
as real quaternions.  Literals on the command line follow
``a(+|-)bi(+|-)cj(+|-)dk`` with every term optional, e.g. ``-1+1j``, ``2i``,
``0.25-0.25j``, ``-k``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .hmatrix import QMatrix
from .qpoly import QPoly
from .quat import Quat
from .realization import StateSpace

FORMAT_VERSION = 1

_TERM = re.compile(
    r"\s*([+-])?\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*([ijk])?\s*"
)


class ParseError(ValueError):
    pass


def parse_quat(text: str) -> Quat:
    s = text.strip()
    if not s:
        raise ParseError("empty quaternion literal")
    comps = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    seen = set()
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, unit = m.group(1), m.group(2), m.group(3) or ""
        if m.end() == pos or (num is None and not unit):
            raise ParseError(f"cannot parse quaternion literal {text!r}")
        if sign is None and not first:
            raise ParseError(f"missing sign before term in {text!r}")
        if unit in seen:
            raise ParseError(f"repeated {unit or 'real'} term in {text!r}")
        seen.add(unit)
        value = float(num) if num is not None else 1.0
        comps[unit] = -value if sign == "-" else value
        pos = m.end()
        first = False
    return Quat(comps[""], comps["i"], comps["j"], comps["k"])


def parse_quat_list(text: str) -> list[Quat]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError("empty list")
    return [parse_quat(p) for p in parts]


def quat_from_json(value) -> Quat:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return Quat(float(value))
    if isinstance(value, str):
        return parse_quat(value)
    if isinstance(value, list) and len(value) == 4 and all(isinstance(v, (int, float)) for v in value):
        return Quat(*value)
    raise ParseError(f"not a quaternion: {value!r}")


def _vector(values, what: str) -> list[Quat]:
    if not isinstance(values, list):
        raise ParseError(f"{what} must be a list")
    # a row written as a nested [[...]] is flattened
    if len(values) == 1 and isinstance(values[0], list) and values[0] and isinstance(values[0][0], list):
        values = values[0]
    return [quat_from_json(v) for v in values]


def system_from_dict(obj: dict) -> StateSpace:
    try:
        rows = obj["A"]
        A = QMatrix.from_quats([[quat_from_json(v) for v in row] for row in rows])
        n = A.rows
        C = QMatrix.row(_vector(obj["C"], "C"))
        B = QMatrix.column(_vector(obj["B"], "B")) if obj.get("B") is not None else QMatrix.zeros(n, 1)
        D = quat_from_json(obj.get("D", 0.0))
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    try:
        return StateSpace(A, B, C, D)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_system(path) -> StateSpace:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return system_from_dict(obj)


def system_to_dict(sys: StateSpace) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "A": sys.A.to_list(),
        "B": [q.to_list() for q in sys.B.column_entries()],
        "C": [sys.C[0, j].to_list() for j in range(sys.n)],
        "D": sys.D.to_list(),
    }


def poly_from_json(values) -> QPoly:
    return QPoly(tuple(quat_from_json(v) for v in values))


def design_to_dict(design, report) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "method": design.method,
        "gain": [q.to_list() for q in design.L.column_entries()],
        "gain_companion_coords": [q.to_list() for q in design.L_o.column_entries()],
        "target_coeffs": design.target.to_list(),
        "achieved_classes": design.achieved.to_list(),
        "expected_classes": report.expected.to_list(),
        "stable": bool(report.stable),
        "matched": bool(report.matched),
        "forced": bool(design.extras.get("forced", False)),
        "residuals": {k: float(v) for k, v in report.residuals.items()},
    }


def load_gain(path) -> QMatrix:
    try:
        obj = json.loads(Path(path).read_text())
        return QMatrix.column([quat_from_json(v) for v in obj["gain"]])
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    except KeyError as exc:
        raise ParseError(f"{path}: missing field 'gain'") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Quat):
        return o.to_list()
    raise TypeError(f"cannot serialize {type(o).__name__}")
