"""JSON section files: strict schema, parsing into validated sections."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import linalg as la
from .errors import ParseError, SchemaError
from .poly import parse_poly
from .quadratic import QuadSpace, preset
from .routes import SpinData
from .section import IsoSection, TorusData, validate

ROUTES = ("rh3", "rh7", "rh4", "rh5", "oh5", "oh8", "rh8", "oh3", "oh1", "rh6", "segre")

_TOP = {
    "name",
    "base_variables",
    "quadratic_form",
    "fiber_names",
    "orientation",
    "components",
    "torus",
    "spin",
    "routes",
    "seed",
    "samples",
    "step_budget",
}
_REQUIRED = ("base_variables", "quadratic_form", "components")
_TORUS = {"base_weights", "fiber_weights"}
_SPIN = {"m_plus_weights", "m_minus_weights", "F", "v"}
_FORM = {"gram", "names"}


@dataclass
class SectionSpec:
    name: str
    variables: tuple
    space: QuadSpace
    components: tuple  # polynomial strings
    torus: TorusData | None = None
    spin: dict | None = None
    routes: tuple = ("all",)
    seed: int = 0
    samples: int = 200_000
    step_budget: int | None = None
    raw: dict = field(default_factory=dict, repr=False)

    def section(self) -> IsoSection:
        return validate(self.variables, self.space, self.components, self.torus)

    def spin_data(self) -> SpinData | None:
        if self.spin is None:
            return None
        base = self.torus.base if self.torus else None
        if base is None:
            raise SchemaError("spin block needs torus.base_weights", "spin")
        return SpinData.parse(
            self.variables, base, self.spin["m_plus_weights"], self.spin["m_minus_weights"], self.spin["F"], self.spin["v"]
        )


def _strict(obj, allowed: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", where)
    for k in obj:
        if k not in allowed:
            raise SchemaError(f"unknown key {k!r}", f"{where}.{k}" if where else k)


def _int_list(v, where: str, length: int | None = None) -> tuple:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise SchemaError("expected a list of integers", where)
    if length is not None and len(v) != length:
        raise SchemaError(f"expected {length} entries", where)
    return tuple(v)


def _poly_strings(v, variables, where: str, length: int | None = None) -> tuple:
    if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
        raise SchemaError("expected a list of polynomial strings", where)
    if length is not None and len(v) != length:
        raise SchemaError(f"expected {length} entries", where)
    for k, text in enumerate(v):
        try:
            parse_poly(text, variables)
        except ParseError as exc:
            raise ParseError(f"{where}[{k}]: {exc}", exc.line, exc.column) from None
    return tuple(v)


def _form(data, names) -> QuadSpace:
    if isinstance(data, str):
        try:
            return preset(data, names)
        except ValueError as exc:
            raise SchemaError(str(exc), "quadratic_form") from None
    _strict(data, _FORM, "quadratic_form")
    if "gram" not in data:
        raise SchemaError("missing key 'gram'", "quadratic_form")
    rows = data["gram"]
    try:
        gram = la.mat([[x if not isinstance(x, str) else parse_poly(x, ()).constant_value() for x in r] for r in rows])
    except (TypeError, ValueError, ParseError) as exc:
        raise SchemaError(f"bad Gram matrix: {exc}", "quadratic_form.gram") from None
    names = names or data.get("names")
    try:
        return QuadSpace(gram, tuple(names or ()))
    except ValueError as exc:
        raise SchemaError(str(exc), "quadratic_form") from None


def spec_from_dict(data: dict, default_name: str = "section") -> SectionSpec:
    _strict(data, _TOP, "")
    for key in _REQUIRED:
        if key not in data:
            raise SchemaError("required key is missing", key)
    variables = data["base_variables"]
    if not isinstance(variables, list) or not all(isinstance(v, str) and v.isidentifier() for v in variables):
        raise SchemaError("expected a list of identifiers", "base_variables")
    variables = tuple(variables)
    names = data.get("fiber_names")
    if names is not None and (not isinstance(names, list) or not all(isinstance(v, str) for v in names)):
        raise SchemaError("expected a list of names", "fiber_names")
    space = _form(data["quadratic_form"], names)
    unit = data.get("orientation", 1)
    if unit not in (1, -1):
        raise SchemaError("must be 1 or -1", "orientation")
    space = space.with_orientation(unit)
    comps = _poly_strings(data["components"], variables, "components", space.rank)
    torus = None
    if "torus" in data:
        t = data["torus"]
        _strict(t, _TORUS, "torus")
        base = _int_list(t.get("base_weights"), "torus.base_weights", len(variables))
        fiber = _int_list(t.get("fiber_weights", [0] * space.rank), "torus.fiber_weights", space.rank)
        torus = TorusData(base, fiber)
    spin = None
    if "spin" in data:
        sp = data["spin"]
        _strict(sp, _SPIN, "spin")
        for key in _SPIN:
            if key not in sp:
                raise SchemaError("required key is missing", f"spin.{key}")
        spin = {
            "m_plus_weights": _int_list(sp["m_plus_weights"], "spin.m_plus_weights", 2),
            "m_minus_weights": _int_list(sp["m_minus_weights"], "spin.m_minus_weights", 2),
            "F": _poly_strings(sp["F"], variables, "spin.F", 2),
            "v": _poly_strings(sp["v"], variables, "spin.v", 2),
        }
        if torus is None:
            raise SchemaError("spin block needs torus.base_weights", "spin")
    routes = data.get("routes", ["all"])
    if not isinstance(routes, list) or any(r not in ROUTES + ("all",) for r in routes):
        raise SchemaError(f"routes must be drawn from {list(ROUTES)} or 'all'", "routes")
    seed = data.get("seed", 0)
    samples = data.get("samples", 200_000)
    budget = data.get("step_budget")
    for key, val in (("seed", seed), ("samples", samples)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise SchemaError("expected an integer", key)
    if budget is not None and (not isinstance(budget, int) or budget <= 0):
        raise SchemaError("expected a positive integer", "step_budget")
    name = data.get("name", default_name)
    return SectionSpec(name, variables, space, comps, torus, spin, tuple(routes), seed, samples, budget, data)


def parse_spec(path: str | Path) -> SectionSpec:
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return spec_from_dict(data, path.stem)


def fixture_path(name: str) -> Path:
    """Path of a bundled example file (``eg``, ``eg2``, ``run_d3_i2_j1``, ``x0y0``)."""
    fname = name if name.endswith(".json") else name + ".json"
    return Path(str(resources.files("isohopf") / "fixtures" / fname))


def list_fixtures() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files("isohopf").joinpath("fixtures").iterdir() if p.name.endswith(".json"))
