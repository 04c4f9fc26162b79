"""Cross-validation of all applicable routes, and the regression grid of worked examples."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import IsoHopfError, NoRationalSplitting, NotIsotropic, ZeroLocusNotOriginOnly
from .groebner import BUDGET_ENV
from .poly import QQ, MultiPoly
from .quadratic import Subspace, coordinate_plane, hyperbolic, is_maximal_isotropic
from .routes import (
    RefinedIndex,
    route_oh3_factored,
    route_oh5_incidence,
    route_oh8_torus,
    route_rh3,
    route_rh5_homogeneous,
    route_rh7_clifford,
    route_rh8_spin,
)
from .section import IsoSection, TorusData, validate
from .specfile import ROUTES, SectionSpec

EXACT = ("rh3", "rh7", "rh5", "oh5", "oh8", "rh8", "oh3", "rh6")
NUMERIC = ("rh4", "oh1")


class NotApplicable(Exception):
    pass


@dataclass
class IndexReport:
    name: str
    section: str
    routes: dict  # route -> RefinedIndex | Exception | NotApplicable
    segre: int | None = None
    colength: int | None = None
    mismatches: list = field(default_factory=list)

    @property
    def sqrt_e(self) -> int | None:
        vals = [r.sqrt_e for k, r in self.routes.items() if k in EXACT and isinstance(r, RefinedIndex)]
        return vals[0] if vals and len(set(vals)) == 1 else None

    @property
    def refined(self) -> tuple | None:
        vals = {r.refined for r in self.routes.values() if isinstance(r, RefinedIndex) and r.refined is not None}
        return vals.pop() if len(vals) == 1 else None

    @property
    def passed(self) -> bool:
        exact = [r for k, r in self.routes.items() if k in EXACT and isinstance(r, RefinedIndex)]
        return bool(exact) and not self.mismatches

    def as_dict(self) -> dict:
        routes = {}
        for k, r in self.routes.items():
            if isinstance(r, RefinedIndex):
                routes[k] = r.as_dict()
            elif isinstance(r, NotApplicable):
                routes[k] = {"route": k, "skipped": str(r)}
            else:
                routes[k] = {"route": k, "error": type(r).__name__, "message": str(r)}
        ref = self.refined
        return {
            "name": self.name,
            "section": self.section,
            "colength": self.colength,
            "sqrt_e": self.sqrt_e,
            "d1": ref[0] if ref else None,
            "d2": ref[1] if ref else None,
            "segre": self.segre,
            "verdict": "pass" if self.passed else "fail",
            "mismatches": self.mismatches,
            "routes": routes,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, default=str)

    def table(self) -> str:
        lines = [f"{self.name}: s = {self.section}", f"  {'route':<6} {'sqrt_e':>7} {'d1':>4} {'d2':>4}  notes"]
        for k, r in self.routes.items():
            if isinstance(r, RefinedIndex):
                d1 = "" if r.d1 is None else str(r.d1)
                d2 = "" if r.d2 is None else str(r.d2)
                lines.append(f"  {k:<6} {r.sqrt_e:>7} {d1:>4} {d2:>4}  {_brief(r.diagnostics)}")
            elif isinstance(r, NotApplicable):
                lines.append(f"  {k:<6} {'-':>7} {'':>4} {'':>4}  skipped: {r}")
            else:
                lines.append(f"  {k:<6} {'ERR':>7} {'':>4} {'':>4}  {type(r).__name__}: {r}")
        lines.append(f"  colength = {self.colength}, segre = {self.segre}")
        for m in self.mismatches:
            lines.append(f"  MISMATCH: {m}")
        lines.append(f"  verdict: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines)


def _brief(diag: dict) -> str:
    keep = {k: v for k, v in diag.items() if isinstance(v, (int, float, str)) and k not in ("f", "g")}
    return ", ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in keep.items())


def find_factor_plane(s: IsoSection) -> Subspace | None:
    """A coordinate (or the reference) maximal isotropic plane containing every value of s."""
    E = s.space
    cands = []
    if E.reference is not None:
        cands.append(E.reference)
    for S in itertools.combinations(range(E.rank), E.n):
        cands.append(coordinate_plane(E.rank, S))
    monos = set()
    for p in s.components:
        monos.update(p.terms)
    vecs = [[p.terms.get(e, 0) for p in s.components] for e in monos]
    for L in cands:
        if is_maximal_isotropic(E, L) and all(L.contains(v) for v in vecs):
            return L
    return None


def _run(name: str, s: IsoSection, spec: SectionSpec | None, seed: int, samples: int):
    from .cone import cone_bidegree_n2
    from .deform import route_rh4_deform
    from .winding import oh1_check

    n2 = s.n == 2
    homog = s.homogeneous_degree() is not None
    if name == "rh3":
        if not n2:
            raise NotApplicable("refined lengths need rank 4")
        return route_rh3(s, seed=seed)
    if name == "rh7":
        return route_rh7_clifford(s)
    if name == "rh4":
        if not n2:
            raise NotApplicable("deformation is implemented for rank 4")
        return route_rh4_deform(s, seed=seed)
    if name == "rh5":
        if not (n2 and homog):
            raise NotApplicable("needs a homogeneous rank-4 section")
        return route_rh5_homogeneous(s)
    if name == "oh5":
        if not homog:
            raise NotApplicable("needs a homogeneous section")
        return route_oh5_incidence(s)
    if name == "oh8":
        if s.torus is None:
            raise NotApplicable("no torus weights")
        return route_oh8_torus(s)
    if name == "rh8":
        data = spec.spin_data() if spec is not None else None
        if data is None:
            raise NotApplicable("no spin-model data")
        return route_rh8_spin(data)
    if name == "oh3":
        L = find_factor_plane(s)
        if L is None:
            raise NotApplicable("no constant maximal isotropic plane contains the section")
        return route_oh3_factored(s, L)
    if name == "oh1":
        if not n2:
            raise NotApplicable("winding verifier runs on S^3")
        return oh1_check(s, samples=samples, seed=seed)
    if name == "rh6":
        if not n2:
            raise NotApplicable("cone bidegree is defined for rank 4")
        return cone_bidegree_n2(s)
    raise ValueError(f"unknown route {name}")


def cross_validate(
    s: IsoSection,
    routes: Sequence[str] = ("all",),
    spec: SectionSpec | None = None,
    seed: int = 0,
    samples: int = 200_000,
    name: str = "section",
) -> IndexReport:
    """Run routes one after another and compare their answers."""
    from .cone import segre_class

    wanted = [r for r in ROUTES if r != "segre"] if "all" in routes else [r for r in routes if r != "segre"]
    want_segre = "all" in routes or "segre" in routes
    results: dict = {}
    for r in wanted:
        try:
            results[r] = _run(r, s, spec, seed, samples)
        except NotApplicable as exc:
            results[r] = exc
        except NoRationalSplitting as exc:
            results[r] = NotApplicable(f"needs a rational splitting ({exc})")
        except IsoHopfError as exc:
            results[r] = exc
    report = IndexReport(name, str(s), results, colength=s.colength)
    if want_segre:
        try:
            report.segre = segre_class(s)
        except IsoHopfError as exc:
            report.mismatches.append(f"segre failed: {type(exc).__name__}: {exc}")
    _compare(report)
    return report


def _compare(report: IndexReport) -> None:
    ok = {k: r for k, r in report.routes.items() if isinstance(r, RefinedIndex)}
    exact = {k: r for k, r in ok.items() if k in EXACT}
    vals = {r.sqrt_e for r in exact.values()}
    if len(vals) > 1:
        report.mismatches.append("exact routes disagree on sqrt_e: " + ", ".join(f"{k}={r.sqrt_e}" for k, r in exact.items()))
    refined = {k: r.refined for k, r in ok.items() if r.refined is not None}
    if len(set(refined.values())) > 1:
        report.mismatches.append("refined degrees disagree: " + ", ".join(f"{k}={v}" for k, v in refined.items()))
    if len(vals) == 1:
        target = vals.pop()
        for k in NUMERIC:
            r = ok.get(k)
            if r is not None and r.sqrt_e != target:
                report.mismatches.append(f"verifier-mismatch: {k} gives {r.sqrt_e}, exact routes give {target}")
        if report.segre is not None and abs(target) > report.segre:
            report.mismatches.append(f"Segre bound violated: |{target}| > {report.segre}")
    for k, r in report.routes.items():
        if isinstance(r, IsoHopfError) and k in EXACT + NUMERIC:
            report.mismatches.append(f"{k} failed: {type(r).__name__}: {r}")


def compute_spec(spec: SectionSpec, routes: Sequence[str] | None = None, seed: int | None = None, samples: int | None = None) -> IndexReport:
    saved = os.environ.get(BUDGET_ENV)
    if spec.step_budget:
        os.environ[BUDGET_ENV] = str(spec.step_budget)
    try:
        return cross_validate(
            spec.section(),
            routes or spec.routes,
            spec,
            spec.seed if seed is None else seed,
            spec.samples if samples is None else samples,
            spec.name,
        )
    finally:
        if saved is None:
            os.environ.pop(BUDGET_ENV, None)
        else:
            os.environ[BUDGET_ENV] = saved


# -- the regression grid --------------------------------------------------------------------


def running_example(d: int, i: int, j: int, orientation: int = 1) -> IsoSection:
    """(x^d, y^d, x^i y^j, -x^{d-i} y^{d-j}) in q = XY + ZW with its torus weights."""
    comps = [f"x^{d}", f"y^{d}", f"x^{i}*y^{j}", f"-x^{d - i}*y^{d - j}"]
    E = hyperbolic(2).with_orientation(orientation)
    return validate(("x", "y"), E, comps, TorusData((1, -1), (d, -d, i - j, j - i)))


def grid_instances(max_d: int = 4):
    """Valid (d, i, j) with the zero locus inside the origin."""
    for d in range(1, max_d + 1):
        for i in range(d + 1):
            for j in range(d + 1):
                try:
                    yield (d, i, j), running_example(d, i, j)
                except ZeroLocusNotOriginOnly:
                    continue


@dataclass
class SuiteRow:
    instance: str
    route: str
    expected: object
    got: object
    ok: bool


def paper_suite(
    routes: Sequence[str] = ("rh3", "rh7", "rh4", "oh8"),
    max_d: int = 4,
    winding_spots: Sequence[tuple] = ((2, 1, 0), (2, 0, 1), (3, 2, 1)),
    samples: int = 200_000,
    orientation: int = 1,
    progress: Callable[[str], None] | None = None,
    expected_orientation: int | None = None,
) -> list[SuiteRow]:
    """Worked examples: running-example grid, flagship example, homogeneous subgrid, eg2, cone.

    Grid sections carry ``orientation``; expectations are derived for
    ``expected_orientation`` (default: the same unit). A mismatch between the
    two is a deliberately injected fault that the grid rows must expose.
    """
    expect = orientation if expected_orientation is None else expected_orientation
    from .cone import cone_bidegree_n2, segre_class
    from .deform import route_rh4_deform
    from .quadratic import eg2_form
    from .winding import oh1_check

    rows: list[SuiteRow] = []

    def add(inst, route, expected, fn):
        try:
            got = fn()
        except IsoHopfError as exc:
            got = f"{type(exc).__name__}: {exc}"
        rows.append(SuiteRow(inst, route, expected, got, got == expected))
        if progress:
            progress(f"{inst:<16} {route:<8} expected={expected} got={got}")

    fns = {
        "rh3": lambda s: route_rh3(s).refined,
        "rh7": lambda s: route_rh7_clifford(s).refined,
        "rh4": lambda s: route_rh4_deform(s).refined,
        "oh8": lambda s: route_oh8_torus(s).sqrt_e,
    }
    for (d, i, j), s in grid_instances(max_d):
        if orientation != 1:
            s = s.with_space(s.space.with_orientation(orientation))
        inst = f"run d={d} i={i} j={j}"
        d1, d2 = i * (d - j), j * (d - i)
        if expect != 1:
            d1, d2 = d2, d1
        for r in routes:
            expected = (d1, d2) if r != "oh8" else d1 - d2
            add(inst, r, expected, lambda r=r, s=s: fns[r](s))
        if d == i + j:
            dm, dp = (i, j) if expect == 1 else (j, i)
            add(inst, "rh5", (dm, dp), lambda s=s: (lambda r: (r.diagnostics["d_minus"], r.diagnostics["d_plus"]))(route_rh5_homogeneous(s)))
            add(inst, "oh5", (dp, dm), lambda s=s: (lambda r: (r.diagnostics["d_plus"], r.diagnostics["d_minus"]))(route_oh5_incidence(s)))
    eg = running_example(2, 1, 1)
    add("eg", "colength", 3, lambda: eg.colength)
    add("eg", "segre", 4, lambda: segre_class(eg))
    add("eg", "rh6", (2, 2), lambda: (lambda r: (r.diagnostics["alpha"], r.diagnostics["beta"]))(cone_bidegree_n2(eg)))
    s2 = validate(("x", "y", "z"), eg2_form(), ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"])
    add("eg2", "oh5", 4, lambda: abs(route_oh5_incidence(s2).sqrt_e))
    add("eg2", "oh5 {d+,d-}", [1, 3], lambda: sorted((lambda r: [r.diagnostics["d_plus"], r.diagnostics["d_minus"]])(route_oh5_incidence(s2))))
    add("eg2", "segre", 8, lambda: segre_class(s2))
    for d, i, j in winding_spots:
        s = running_example(d, i, j)
        add(f"run d={d} i={i} j={j}", "oh1", d * (i - j), lambda s=s: oh1_check(s, samples=samples).sqrt_e)
    add("eg", "oh1", 0, lambda: oh1_check(eg, samples=samples).sqrt_e)
    return rows


# -- random sections for property checks ------------------------------------------------------


def _rand_homogeneous(V, deg: int, rng) -> MultiPoly:
    p = MultiPoly.zero(V)
    while p.is_zero():
        for a in range(deg + 1):
            p = p + MultiPoly.monomial(V, (a, deg - a), rng.randint(-3, 3))
    return p


def random_n2_section(rng, max_degree: int = 4, attempts: int = 50) -> IsoSection:
    """Random isotropic (f*sigma0, g*(sigma0 contracted with omega)) in q = XY + ZW,
    followed by a random linear change of base coordinates."""
    V = ("x", "y")
    x, y = MultiPoly.var(V, "x"), MultiPoly.var(V, "y")
    one = MultiPoly.constant(V, 1)
    for _ in range(attempts):
        kind = rng.choice(("unit", "pair", "triangular"))
        if kind == "unit":
            s0 = (one * rng.choice((1, -2, 3)), MultiPoly.zero(V)) if rng.random() < 0.5 else (MultiPoly.zero(V), one)
            ds = 0
        elif kind == "pair":
            a, b = rng.randint(1, 2), rng.randint(1, 2)
            s0 = (_rand_homogeneous(V, a, rng), _rand_homogeneous(V, b, rng))
            ds = max(a, b)
        else:
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            h = _rand_homogeneous(V, a - 1, rng) if a > 1 else one * rng.randint(-2, 2)
            s0 = (x**a + y * h, y**b * rng.choice((1, -1, 2)))
            ds = max(a, b)
        room = max_degree - ds

        def factor():
            if room <= 0 or rng.random() < 0.3:
                return one * rng.choice((1, -1, 2))
            return _rand_homogeneous(V, rng.randint(1, min(room, 2)), rng)

        f, g = factor(), factor()
        t0 = (-s0[1], s0[0])
        X, W = f * s0[0], f * s0[1]
        Y, Z = g * t0[0], g * t0[1]
        m = [[QQ(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
            m = [[QQ(1), QQ(rng.randint(-2, 2))], [QQ(0), QQ(1)]]
        sub = {"x": x * m[0][0] + y * m[0][1], "y": x * m[1][0] + y * m[1][1]}
        comps = [p.substitute(sub, V) for p in (X, Y, Z, W)]
        try:
            return validate(V, hyperbolic(2), comps)
        except (ZeroLocusNotOriginOnly, NotIsotropic):
            continue
    raise RuntimeError("could not draw a valid random section")
