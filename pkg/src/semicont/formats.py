"""Reading and writing model files.

A model file is YAML.  Finite models list points, open sets and values::

    kind: finite
    points: [a, b]
    opens: [[], [a], [a, b]]
    values: {a: 1, b: 0}

Piecewise models on the real line list a domain and pieces.  A piece is
``[interval, c]`` for a constant or ``[interval, slope, intercept]``::

    kind: piecewise
    domain: "(-inf,+inf)"
    pieces:
      - ["(-inf,0)", 0]
      - ["[0,+inf)", 1]
    staircase: {start: 1, n_max: 20}   # optional: 1/n on (n-1, n]

Numbers may be integers, decimals, ``"p/q"`` strings or ``"+inf"``/``"-inf"``.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import yaml

from .extreal import ExtReal, parse_extreal
from .piecewise import DomainError, PiecewiseFn, Staircase, piecewise
from .topology import FiniteModel, FiniteSpace, validate


class ModelFormatError(ValueError):
    """The model text does not parse or does not describe a valid model."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def number(value, where: str = "") -> ExtReal:
    """An extended real from a YAML scalar."""
    if isinstance(value, bool):
        raise ModelFormatError(f"expected a number, got {value!r}", where)
    if isinstance(value, float):
        if value != value:
            raise ModelFormatError("NaN is not an extended real", where)
        if value in (float("inf"), float("-inf")):
            return parse_extreal("+inf" if value > 0 else "-inf")
        value = Fraction(str(value))
    try:
        return parse_extreal(value if not isinstance(value, int) else Fraction(value))
    except (TypeError, ValueError) as exc:
        raise ModelFormatError(str(exc), where) from None


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ModelFormatError(f"missing key {key!r}", where)
    return data[key]


def finite_from_dict(data: dict, where: str = "model") -> FiniteModel:
    points = _require(data, "points", where)
    if not isinstance(points, list) or not points:
        raise ModelFormatError("points must be a nonempty list", f"{where}.points")
    points = [str(p) for p in points]
    opens = _require(data, "opens", where)
    if not isinstance(opens, list):
        raise ModelFormatError("opens must be a list of point lists", f"{where}.opens")
    try:
        space = FiniteSpace(tuple(points), frozenset(frozenset(str(p) for p in (o or [])) for o in opens))
    except (TypeError, ValueError) as exc:
        raise ModelFormatError(str(exc), f"{where}.opens") from None
    report = validate(space)
    if not report:
        raise ModelFormatError(f"not a topology: {report.message}", f"{where}.opens")
    values = _require(data, "values", where)
    if isinstance(values, dict):
        vals = {str(k): number(v, f"{where}.values.{k}") for k, v in values.items()}
    elif isinstance(values, list):
        if len(values) != len(points):
            raise ModelFormatError(f"expected {len(points)} values, got {len(values)}", f"{where}.values")
        vals = {p: number(v, f"{where}.values[{i}]") for i, (p, v) in enumerate(zip(points, values))}
    else:
        raise ModelFormatError("values must be a mapping or a list", f"{where}.values")
    try:
        return FiniteModel(space, vals)  # type: ignore[arg-type]
    except ValueError as exc:
        raise ModelFormatError(str(exc), f"{where}.values") from None


def piecewise_from_dict(data: dict, where: str = "model") -> PiecewiseFn:
    domain = _require(data, "domain", where)
    domain = [domain] if isinstance(domain, str) else domain
    pieces = []
    for i, spec in enumerate(_require(data, "pieces", where) or []):
        loc = f"{where}.pieces[{i}]"
        if not isinstance(spec, list) or len(spec) not in (2, 3) or not isinstance(spec[0], str):
            raise ModelFormatError("a piece is [interval, c] or [interval, slope, intercept]", loc)
        nums = [number(v, loc) for v in spec[1:]]
        if not all(n.is_finite for n in nums):
            raise ModelFormatError("piece coefficients must be finite", loc)
        pieces.append((spec[0], *(n.fraction for n in nums)))
    stair = None
    if data.get("staircase") is not None:
        st = data["staircase"]
        try:
            stair = Staircase(int(st.get("start", 1)), int(st.get("n_max", 50)))
        except (AttributeError, TypeError, ValueError) as exc:
            raise ModelFormatError(str(exc), f"{where}.staircase") from None
    try:
        return piecewise(domain, pieces, stair, str(data.get("name", "")))
    except (DomainError, ValueError) as exc:
        raise ModelFormatError(str(exc), where) from None


def model_from_dict(data, where: str = "model") -> FiniteModel | PiecewiseFn:
    if not isinstance(data, dict):
        raise ModelFormatError("a model is a mapping", where)
    kind = data.get("kind")
    if kind is None:
        kind = "finite" if "points" in data else "piecewise" if "pieces" in data else None
    if kind == "finite":
        return finite_from_dict(data, where)
    if kind == "piecewise":
        return piecewise_from_dict(data, where)
    raise ModelFormatError(f"unknown model kind {kind!r}; expected finite or piecewise", where)


def load_model_text(text: str, where: str = "model") -> FiniteModel | PiecewiseFn:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ModelFormatError(f"YAML error: {exc}", where) from None
    return model_from_dict(data, where)


def load_model(path: str | Path) -> FiniteModel | PiecewiseFn:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(str(exc), str(path)) from None
    return load_model_text(text, str(path))


def model_to_dict(model: FiniteModel | PiecewiseFn) -> dict:
    """Inverse of :func:`model_from_dict` (numbers come back as strings)."""
    if isinstance(model, FiniteModel):
        sp = model.space
        opens = sorted((sorted(o, key=sp.index) for o in sp.opens), key=lambda o: (len(o), [sp.index(p) for p in o]))
        return {
            "kind": "finite",
            "points": list(sp.points),
            "opens": opens,
            "values": {p: str(v) for p, v in zip(sp.points, model.values)},
        }
    pieces = []
    for p in model.pieces:
        e = p.expr
        pieces.append([str(p.interval), str(e.intercept)] if e.slope == 0 else [str(p.interval), str(e.slope), str(e.intercept)])
    out = {"kind": "piecewise", "domain": [str(d) for d in model.domain], "pieces": pieces}
    if model.staircase is not None:
        out["staircase"] = {"start": model.staircase.start, "n_max": model.staircase.n_max}
    if model.name:
        out["name"] = model.name
    return out
