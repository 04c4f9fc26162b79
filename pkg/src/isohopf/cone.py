"""Normal cone of the zero scheme, its class on the quadric of isotropic lines, Segre numbers."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyFailure, DegenerateSlice, EmptyScheme, WrongDimension
from .groebner import PolyIdeal, intersect, projective_dimension_and_degree, saturate
from .poly import QQ, MultiPoly
from .quadratic import hyperbolic_splitting
from .routes import RefinedIndex
from .section import IsoSection

SEEDS = (11, 23, 37)


@dataclass
class ConeData:
    ideal: PolyIdeal
    base: tuple
    fiber: tuple

    def generators(self) -> list[str]:
        return self.ideal.dump()


def _fiber_names(s: IsoSection) -> tuple:
    names = tuple(s.space.names)
    if set(names) & set(s.variables):
        names = tuple(f"{v}_" for v in names)
    return names


def normal_cone_ideal(s: IsoSection, budget: int | None = None) -> ConeData:
    """Flat limit of the graphs of t*s as t -> infinity: saturate (u*E_i - s_i) by u, set u = 0."""
    fiber = _fiber_names(s)
    u = "_u"
    V = s.variables + fiber + (u,)
    U = MultiPoly.var(V, u)
    gens = [U * MultiPoly.var(V, e) - p.embed(V) for e, p in zip(fiber, s.components)]
    sat = saturate(PolyIdeal(V, gens), U, budget=budget)
    W = s.variables + fiber
    limit = [g.substitute({u: MultiPoly.zero(V)}, V) for g in sat.gens]
    I = PolyIdeal(W, [MultiPoly._raw(W, {e[:-1]: c for e, c in g.terms.items()}) for g in limit])
    data = ConeData(I, s.variables, fiber)
    qv = s.space.q_poly([MultiPoly.var(W, e) for e in fiber])
    if not I.contains(qv):
        raise ConsistencyFailure("the cone does not lie on the quadric of isotropic lines")
    return data


def _degree_or_zero(I: PolyIdeal, hv: Sequence[str]) -> tuple[int, int]:
    try:
        return projective_dimension_and_degree(I, hv)
    except EmptyScheme:
        return 0, 0


def segre_class(s: IsoSection, cone: ConeData | None = None) -> int:
    """Degree of the projectivized normal cone against H^{n-1}."""
    C = cone or normal_cone_ideal(s)
    dim, deg = _degree_or_zero(C.ideal, C.fiber)
    if deg and dim != s.n - 1:
        raise WrongDimension(f"projectivized cone has dimension {dim}, expected {s.n - 1}")
    return deg


def local_length(J: PolyIdeal) -> int:
    """Length of the quotient localized at the origin."""
    total = J.colength()
    away = None
    for v in J.variables:
        part = saturate(J, MultiPoly.var(J.variables, v))
        away = part if away is None else intersect(away, part)
    rest = 0 if away.is_unit() else away.colength()
    return total - rest


def samuel_multiplicity(s: IsoSection, seed: int = 5) -> int:
    """Local colength of n generic combinations of the components (a minimal reduction)."""
    rng = random.Random(seed)
    gens = []
    for _ in range(s.n):
        p = MultiPoly.zero(s.variables)
        for c in s.components:
            p = p + c * QQ(rng.randint(-9, 9) or 1, rng.randint(1, 5))
        gens.append(p)
    return local_length(PolyIdeal(s.variables, gens))


def cone_bidegree_n2(s: IsoSection, cone: ConeData | None = None, seeds: Sequence[int] = SEEDS) -> RefinedIndex:
    """Bidegree (alpha, beta) of P(C) on Q = P^1 x P^1, by slicing with ruling lines."""
    if s.n != 2:
        raise ValueError("the bidegree is defined for rank 4")
    C = cone or normal_cone_ideal(s)
    dim, _ = _degree_or_zero(C.ideal, C.fiber)
    if dim != 1:
        raise WrongDimension(f"projectivized cone has dimension {dim}, expected 1")
    W = C.ideal.variables
    S = hyperbolic_splitting(s.space)
    (Xs, Ws), (Ys, Zs) = S.to_split([MultiPoly.var(W, e) for e in C.fiber])
    found = set()
    for seed in seeds:
        rng = random.Random(f"ruling:{seed}")
        a, b, c, d = (QQ(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1)) for _ in range(4))
        # fibre of P(C) -> P(Lambda+) over [a:b], and of P(C) -> P(Lambda-) over [c:d]
        plus_line = [Xs * b - Ws * a, Zs * b + Ys * a]
        minus_line = [Xs * d - Zs * c, Ws * d + Ys * c]
        counts = []
        for line in (plus_line, minus_line):
            k, deg = _degree_or_zero(C.ideal + line, C.fiber)
            if deg and k:
                raise DegenerateSlice("a ruling line meets the cone in a curve")
            counts.append(deg)
        found.add(tuple(counts))
    if len(found) != 1:
        raise DegenerateSlice(f"ruling slices disagree: {sorted(found)}")
    alpha, beta = found.pop()
    return RefinedIndex(alpha - beta, "rh6", diagnostics={"alpha": alpha, "beta": beta})
