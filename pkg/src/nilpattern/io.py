"""JSON encodings of the core objects and the workspace format."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exactnum import RationalSubspace, SymScalar, fraction_str, parse_assignment, span_subspace
from .forms import LinearFormSystem
from .nilalg import Filtration, NilLieAlgebra, PolySeq, lower_central_filtration


class InputError(ValueError):
    pass


def subspace_to_json(s: RationalSubspace) -> dict:
    return {"ambient": s.ambient, "basis": [list(b) for b in s.basis]}


def subspace_from_json(data: dict) -> RationalSubspace:
    d = int(data["ambient"])
    vecs = [[Fraction(x) for x in v] for v in data.get("basis", [])]
    if any(len(v) != d for v in vecs):
        raise InputError("basis vector length differs from the ambient dimension")
    return span_subspace(vecs, d)


def filtration_to_json(f: Filtration) -> list:
    return [subspace_to_json(s) for s in f]


def filtration_from_json(data: list) -> Filtration:
    return Filtration(tuple(subspace_from_json(x) for x in data))


def scalar_to_json(x) -> dict | str:
    return x.to_json() if isinstance(x, SymScalar) else fraction_str(Fraction(x))


def jsonable(obj):
    """Recursively convert report objects to JSON-friendly values."""
    if isinstance(obj, RationalSubspace):
        return subspace_to_json(obj)
    if isinstance(obj, Filtration):
        return filtration_to_json(obj)
    if isinstance(obj, PolySeq):
        return obj.to_json()
    if isinstance(obj, SymScalar):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    if hasattr(obj, "item"):
        return obj.item()
    return obj


@dataclass
class Workspace:
    symbols: list
    algebra: NilLieAlgebra | None = None
    filtration: Filtration | None = None
    S: list | None = None
    forms: LinearFormSystem | None = None
    poly: PolySeq | None = None
    assignment: dict | None = None
    extra: dict = field(default_factory=dict)


def _assignment(data, symbols):
    if data is None:
        return None
    if isinstance(data, str):
        out = parse_assignment(data)
    else:
        out = parse_assignment(",".join(f"{k}={v}" for k, v in data.items()))
    unknown = set(out) - set(symbols)
    if unknown:
        raise InputError(f"assignment names undeclared symbols {sorted(unknown)}")
    return out


def load_workspace(data: dict) -> Workspace:
    """Read a workspace dict.  A bare forms object is also accepted."""
    if "forms" in data and isinstance(data["forms"], list):
        return Workspace([], forms=LinearFormSystem.from_json(data))
    try:
        symbols = list(data.get("symbols", []))
        ws = Workspace(symbols)
        if "algebra" in data:
            ws.algebra = NilLieAlgebra.from_json(data["algebra"])
        if "filtration" in data:
            ws.filtration = filtration_from_json(data["filtration"])
        elif ws.algebra is not None:
            ws.filtration = lower_central_filtration(ws.algebra)
        if "S" in data:
            ws.S = [subspace_from_json(x) for x in data["S"]]
        elif ws.filtration is not None:
            ws.S = list(ws.filtration.spaces)
        if "forms" in data:
            ws.forms = LinearFormSystem.from_json(data["forms"])
        if "poly" in data:
            if ws.algebra is None:
                raise InputError("a polynomial needs an algebra")
            ws.poly = PolySeq.from_json(data["poly"], ws.algebra.dim, registry=symbols)
        ws.assignment = _assignment(data.get("assignment"), symbols)
        ws.extra = {k: v for k, v in data.items()
                    if k not in {"symbols", "algebra", "filtration", "S", "forms", "poly", "assignment"}}
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    d = ws.algebra.dim if ws.algebra else None
    for name, spaces in (("filtration", ws.filtration), ("S", ws.S)):
        if spaces is not None and d is not None and any(s.ambient != d for s in spaces):
            raise InputError(f"{name} lives in the wrong ambient dimension")
    return ws


def load_path(path: str | Path) -> Workspace:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return load_workspace(data)


def workspace_to_json(ws: Workspace) -> dict:
    out: dict = {"symbols": ws.symbols}
    if ws.algebra is not None:
        out["algebra"] = ws.algebra.to_json()
    if ws.filtration is not None:
        out["filtration"] = filtration_to_json(ws.filtration)
    if ws.S is not None:
        out["S"] = [subspace_to_json(s) for s in ws.S]
    if ws.forms is not None:
        out["forms"] = ws.forms.to_json()
    if ws.poly is not None:
        out["poly"] = ws.poly.to_json()
    if ws.assignment is not None:
        out["assignment"] = {k: repr(v) for k, v in ws.assignment.items()}
    out.update(ws.extra)
    return out
