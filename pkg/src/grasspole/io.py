"""JSON encodings for fields, elements, polynomials, matrices and systems.

Elements are strings in the field's own notation ("3", "1+a", "-2/3");
polynomials are ascending lists of element strings; matrices are nested
lists.  Big integers are written as decimal strings.
"""

from __future__ import annotations

import json
from typing import Any

from .fields import Field, Scalar, make_field
from .grassmann import PluckerVector
from .matrix import ConstMatrix, PolyMatrix
from .poly import Poly
from .systems import FactoredSystem, StateSpace


def element_to_json(field: Field, raw) -> str:
    return field.format(raw)


def scalar_to_json(x: Scalar) -> str:
    return x.field.format(x.value)


def poly_to_json(f: Poly) -> list[str]:
    return [f.field.format(v) for v in f.c]


def poly_from_json(field: Field, data) -> Poly:
    return Poly(field, [str(x) for x in data])


def const_matrix_to_json(M: ConstMatrix) -> list[list[str]]:
    return [[M.field.format(v) for v in r] for r in M.rows]


def const_matrix_from_json(field: Field, data) -> ConstMatrix:
    return ConstMatrix(field, [[str(x) for x in r] for r in data])


def poly_matrix_to_json(M: PolyMatrix) -> list[list[list[str]]]:
    return [[poly_to_json(g) for g in r] for r in M.rows]


def poly_matrix_from_json(field: Field, data) -> PolyMatrix:
    return PolyMatrix._raw(field, [[poly_from_json(field, g) for g in r] for r in data])


def plucker_to_json(v: PluckerVector) -> dict:
    return {
        "field": str(v.field.spec),
        "m": v.size,
        "N": v.ambient,
        "coords": [v.field.format(c) for c in v.coords],
    }


def plucker_from_json(data: dict) -> PluckerVector:
    f = make_field(data["field"])
    return PluckerVector.from_values(f, int(data["m"]), int(data["N"]), [str(c) for c in data["coords"]])


def system_to_json(sys: StateSpace | FactoredSystem) -> dict:
    if isinstance(sys, StateSpace):
        return {
            "field": str(sys.field.spec),
            "kind": "state_space",
            "A": const_matrix_to_json(sys.A),
            "B": const_matrix_to_json(sys.B),
            "C": const_matrix_to_json(sys.C),
        }
    return {
        "field": str(sys.field.spec),
        "kind": "factored",
        "N": poly_matrix_to_json(sys.N),
        "D": poly_matrix_to_json(sys.D),
    }


def system_from_json(data: dict, field: Field | None = None) -> StateSpace | FactoredSystem:
    if field is None:
        field = make_field(data["field"])
    kind = data.get("kind")
    if kind == "state_space":
        return StateSpace(
            const_matrix_from_json(field, data["A"]),
            const_matrix_from_json(field, data["B"]),
            const_matrix_from_json(field, data["C"]),
        )
    if kind == "factored":
        return FactoredSystem(
            poly_matrix_from_json(field, data["N"]),
            poly_matrix_from_json(field, data["D"]),
        )
    raise ValueError(f"unknown system kind {kind!r}")


def jsonable(obj: Any) -> Any:
    """Recursively convert library values to JSON-ready data."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 2**53 else obj
    if isinstance(obj, Scalar):
        return scalar_to_json(obj)
    if isinstance(obj, Poly):
        return poly_to_json(obj)
    if isinstance(obj, ConstMatrix):
        return const_matrix_to_json(obj)
    if isinstance(obj, PolyMatrix):
        return poly_matrix_to_json(obj)
    if isinstance(obj, PluckerVector):
        return plucker_to_json(obj)
    if isinstance(obj, (StateSpace, FactoredSystem)):
        return system_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return jsonable(obj.item())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
