"""Validated isotropic sections and the rank-4 factorization sigma = f*sigma0, tau = g*tau0."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BadWeights,
    ConsistencyFailure,
    NotIsotropic,
    PerturbationFailed,
    ZeroBaseWeight,
    ZeroLocusNotOriginOnly,
)
from .groebner import PolyIdeal
from .poly import MultiPoly, divide_exact, gcd_list, parse_poly
from .quadratic import (
    QuadSpace,
    Splitting,
    contract_omega,
    hyperbolic_splitting,
    random_special_orthogonal,
)


@dataclass(frozen=True)
class TorusData:
    """Weights of a C* action: base coordinates x_k have weight base[k],
    component s_i has weight fiber[i]."""

    base: tuple
    fiber: tuple

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(int(w) for w in self.base))
        object.__setattr__(self, "fiber", tuple(int(a) for a in self.fiber))


@dataclass(frozen=True)
class IsoSection:
    variables: tuple
    space: QuadSpace
    components: tuple
    torus: TorusData | None = None
    colength: int = 0

    @property
    def n(self) -> int:
        return len(self.variables)

    def ideal(self) -> PolyIdeal:
        return PolyIdeal(self.variables, self.components)

    def scaled(self, c) -> "IsoSection":
        return IsoSection(self.variables, self.space, tuple(p * c for p in self.components), self.torus, self.colength)

    def with_space(self, space: QuadSpace) -> "IsoSection":
        return IsoSection(self.variables, space, self.components, self.torus, self.colength)

    def homogeneous_degree(self) -> int | None:
        """Common degree when all nonzero components are homogeneous of one degree."""
        degs = set()
        for p in self.components:
            if p.is_zero():
                continue
            ok, d = p.is_homogeneous()
            if not ok:
                return None
            degs.add(d)
        return degs.pop() if len(degs) == 1 else None

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.components) + ")"


def _origin_only(I: PolyIdeal) -> int:
    """Colength of I, raising unless its zero set is contained in the origin."""
    if I.is_unit():
        return 0
    if not I.is_zero_dimensional():
        raise ZeroLocusNotOriginOnly("zero locus of the section is positive-dimensional")
    c = I.colength()
    # a local Artinian quotient of length c kills m^c
    for v in I.variables:
        if not I.contains(MultiPoly.var(I.variables, v) ** c):
            raise ZeroLocusNotOriginOnly(f"zero locus has points with {v} != 0")
    return c


def validate(
    variables: Sequence[str],
    space: QuadSpace,
    components: Sequence,
    torus: TorusData | None = None,
) -> IsoSection:
    variables = tuple(variables)
    comps = tuple(
        parse_poly(c, variables) if isinstance(c, str) else c.embed(variables) if c.variables != variables else c
        for c in components
    )
    if len(variables) != space.n:
        raise ValueError(f"base dimension {len(variables)} does not match rank {space.rank} / 2")
    if len(comps) != space.rank:
        raise ValueError(f"expected {space.rank} components, got {len(comps)}")
    residual = space.q_poly(comps)
    if not residual.is_zero():
        raise NotIsotropic(f"q(s,s) = {residual} is not zero", residual)
    if torus is not None:
        _check_weights(space, comps, torus)
    c = _origin_only(PolyIdeal(variables, comps))
    return IsoSection(variables, space, comps, torus, c)


def _check_weights(space: QuadSpace, comps: tuple, torus: TorusData) -> None:
    if len(torus.base) != len(comps[0].variables) or len(torus.fiber) != len(comps):
        raise BadWeights("weight vectors have the wrong length")
    if any(w == 0 for w in torus.base):
        raise ZeroBaseWeight("a base weight is zero, so the fixed locus is not just the origin")
    for i, (p, a) in enumerate(zip(comps, torus.fiber)):
        if not p.is_weight_homogeneous(torus.base, a):
            raise BadWeights(f"component {i + 1} is not of weight {a}")
    B = space.gram
    for i in range(space.rank):
        for j in range(space.rank):
            if B[i][j] and torus.fiber[i] + torus.fiber[j] != 0:
                raise BadWeights(f"fiber weights {i + 1} and {j + 1} do not pair to zero")


def split_sigma_tau(s: IsoSection, splitting: Splitting | None = None) -> tuple[tuple, tuple]:
    S = splitting or hyperbolic_splitting(s.space)
    sigma, tau = S.to_split(s.components)
    pairing = sum((a * b for a, b in zip(sigma, tau)), MultiPoly.zero(s.variables))
    if not pairing.is_zero():
        raise ConsistencyFailure("<sigma, tau> is not zero")
    return sigma, tau


@dataclass(frozen=True)
class N2Factorization:
    f: MultiPoly
    g: MultiPoly
    sigma0: tuple
    tau0: tuple
    splitting: Splitting = field(repr=False)
    perturbed: bool = False

    @property
    def sigma(self) -> tuple:
        return tuple(self.f * p for p in self.sigma0)

    @property
    def tau(self) -> tuple:
        return tuple(self.g * p for p in self.tau0)


def factorize_n2(s: IsoSection, seed: int = 0, retries: int = 8) -> N2Factorization:
    if s.n != 2:
        raise ValueError("the factorization applies to rank 4")
    base = hyperbolic_splitting(s.space)
    S = base
    for attempt in range(retries + 1):
        sigma, tau = split_sigma_tau(s, S)
        if any(not p.is_zero() for p in sigma) and any(not p.is_zero() for p in tau):
            break
        S = base.transformed(random_special_orthogonal(s.space, seed=seed * 1000 + attempt))
    else:
        raise PerturbationFailed("could not make both halves of the section nonzero")
    f = gcd_list(sigma)
    sigma0 = tuple(divide_exact(p, f) for p in sigma)
    tau0 = contract_omega(sigma0)
    k = next(k for k in range(2) if not tau0[k].is_zero())
    try:
        g = divide_exact(tau[k], tau0[k])
    except ArithmeticError:
        raise ConsistencyFailure("tau is not a multiple of sigma0 contracted with omega") from None
    if any(g * t != u for t, u in zip(tau0, tau)):
        raise ConsistencyFailure("tau is not a multiple of sigma0 contracted with omega")
    return N2Factorization(f, g, sigma0, tau0, S, S is not base)
