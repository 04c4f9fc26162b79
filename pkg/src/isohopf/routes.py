"""Independent computations of the square-root Euler multiplicity and its rank-4 refinement."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .errors import (
    BadWeights,
    ComplexNotExact2Periodic,
    ConsistencyFailure,
    DegenerateSlice,
    EmptyScheme,
    NoInvariantIsotropic,
    NonIntegerRatio,
    NotHomogeneous,
    SectionNotInSubspace,
    WeightConstraintViolated,
    ZeroBaseWeight,
)
from .gaussian import im_part, is_real, re_part
from .groebner import (
    PolyIdeal,
    matrix_image,
    module_kernel,
    projective_dimension_and_degree,
    subquotient_length,
)
from .poly import MultiPoly, divide_exact, gcd_list, parse_poly
from .quadratic import (
    Subspace,
    coordinate_plane,
    hyperbolic,
    hyperbolic_splitting,
    is_maximal_isotropic,
    isotropic_sign,
    negative_plane_basis,
    positive_plane_basis,
    random_special_orthogonal,
)
from .section import IsoSection, factorize_n2, split_sigma_tau, validate


@dataclass
class RefinedIndex:
    sqrt_e: int
    route: str
    d1: int | None = None
    d2: int | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.d1 is None) != (self.d2 is None):
            raise ValueError("d1 and d2 come together")
        if self.d1 is not None:
            if self.d1 < 0 or self.d2 < 0:
                raise ValueError("refined degrees are nonnegative")
            if self.sqrt_e != self.d1 - self.d2:
                raise ConsistencyFailure(f"sqrt_e {self.sqrt_e} != d1 - d2 = {self.d1 - self.d2}")

    @property
    def refined(self) -> tuple | None:
        return None if self.d1 is None else (self.d1, self.d2)

    def as_dict(self) -> dict:
        out = {"route": self.route, "sqrt_e": self.sqrt_e}
        if self.d1 is not None:
            out["d1"] = self.d1
            out["d2"] = self.d2
        out["diagnostics"] = self.diagnostics
        return out


def _length(variables: tuple, gens) -> int:
    I = PolyIdeal(variables, gens)
    if I.is_unit():
        return 0
    return I.colength()


def classical_hopf_length(components: Sequence[MultiPoly]) -> int:
    """Colength of (s_1, ..., s_n) for a map C^n -> C^n with isolated zero."""
    comps = list(components)
    if not comps:
        raise ValueError("empty map")
    return PolyIdeal(comps[0].variables, comps).colength()


# -- lengths of the factorization --------------------------------------------------


def route_rh3(s: IsoSection, seed: int = 0) -> RefinedIndex:
    fac = factorize_n2(s, seed=seed)
    d1 = _length(s.variables, fac.sigma0)
    d2 = _length(s.variables, [fac.f, fac.g])
    return RefinedIndex(
        d1 - d2,
        "rh3",
        d1,
        d2,
        {
            "f": str(fac.f),
            "g": str(fac.g),
            "sigma0": [str(p) for p in fac.sigma0],
            "tau0": [str(p) for p in fac.tau0],
            "perturbed": fac.perturbed,
        },
    )


def route_oh3_factored(s: IsoSection, L: Subspace) -> RefinedIndex:
    """Section whose values all lie in one constant maximal isotropic subspace L."""
    E = s.space
    if not is_maximal_isotropic(E, L):
        raise ValueError("L must be maximal isotropic")
    monos = set()
    for p in s.components:
        monos.update(p.terms)
    for e in monos:
        v = [p.terms.get(e, 0) for p in s.components]
        if not L.contains(v):
            raise SectionNotInSubspace("a coefficient vector of the section leaves L")
    sign = isotropic_sign(E, L)
    length = s.ideal().colength()
    return RefinedIndex(sign * length, "oh3", diagnostics={"sign": sign, "length": length})


# -- homogeneous sections ---------------------------------------------------------


def _reduced_degree(a: MultiPoly, b: MultiPoly) -> int:
    g = gcd_list([a, b])
    return max(divide_exact(a, g).total_degree(), divide_exact(b, g).total_degree())


def _pair(p: tuple, q: tuple) -> tuple:
    return p if not (p[0].is_zero() and p[1].is_zero()) else q


def route_rh5_homogeneous(s: IsoSection) -> RefinedIndex:
    if s.n != 2:
        raise ValueError("this route is for rank 4")
    d = s.homogeneous_degree()
    if d is None:
        raise NotHomogeneous("components are not homogeneous of a common degree")
    (X, W), (Y, Z) = split_sigma_tau(s, hyperbolic_splitting(s.space))
    # [X:W] = [-Z:Y] lands in P(Lambda+), [X:Z] = [-W:Y] in P(Lambda-)
    d_minus = _reduced_degree(*_pair((X, W), (-Z, Y)))
    d_plus = _reduced_degree(*_pair((X, Z), (-W, Y)))
    if d_plus + d_minus != d:
        raise ConsistencyFailure(f"d+ + d- = {d_plus + d_minus} but the degree is {d}")
    return RefinedIndex(
        d_minus**2 - d_plus**2,
        "rh5",
        d_minus**2,
        d_plus**2,
        {"d_plus": d_plus, "d_minus": d_minus, "degree": d},
    )


_IOTA = "_iota"


def _incidence_ideal(s: IsoSection, plane: Sequence[Sequence]) -> tuple[PolyIdeal, bool]:
    """Ideal of {x : s(x) in plane}; Gaussian planes get a formal unit with iota^2 = -1."""
    B = s.space.gram
    rows = [la.matvec(B, lam) for lam in plane]
    gaussian = any(not is_real(c) for r in rows for c in r)
    variables = s.variables + ((_IOTA,) if gaussian else ())
    comps = [p.embed(variables) for p in s.components]
    gens = []
    iota = MultiPoly.var(variables, _IOTA) if gaussian else None
    for r in rows:
        eq = MultiPoly.zero(variables)
        for c, p in zip(r, comps):
            if c == 0:
                continue
            eq = eq + p * re_part(c)
            if gaussian and im_part(c) != 0:
                eq = eq + p * iota * im_part(c)
        gens.append(eq)
    if gaussian:
        gens.append(iota * iota + 1)
    return PolyIdeal(variables, gens), gaussian


def incidence_degree(s: IsoSection, plane: Sequence[Sequence]) -> int:
    """Number of points of P^{n-1} (with multiplicity) where s lands in the given plane."""
    I, gaussian = _incidence_ideal(s, plane)
    try:
        slices, deg = projective_dimension_and_degree(I, s.variables)
    except EmptyScheme:
        return 0
    if slices:
        raise DegenerateSlice("the incidence locus is not finite; the plane is not generic")
    return deg // 2 if gaussian else deg


def _incidence_pair(s: IsoSection, seed: int, attempts: int = 5) -> tuple[int, int]:
    E = s.space
    for k in range(attempts):
        G = random_special_orthogonal(E, seed=seed if k == 0 else f"{seed}/{k}")
        try:
            return tuple(
                incidence_degree(s, [la.matvec(G, v) for v in basis])
                for basis in (positive_plane_basis(E), negative_plane_basis(E))
            )
        except DegenerateSlice:
            continue
    raise DegenerateSlice(f"no generic plane found from seed {seed}")


def route_oh5_incidence(s: IsoSection, seeds: Sequence[int] = (11, 23, 37)) -> RefinedIndex:
    d = s.homogeneous_degree()
    if d is None:
        raise NotHomogeneous("components are not homogeneous of a common degree")
    n = s.n
    found = set()
    for seed in seeds:
        found.add(_incidence_pair(s, seed))
    if len(found) != 1:
        raise DegenerateSlice(f"incidence degrees disagree across seeds: {sorted(found)}")
    d_plus, d_minus = found.pop()
    if d_plus + d_minus != d ** (n - 1):
        raise ConsistencyFailure(f"d+ + d- = {d_plus + d_minus} but d^(n-1) = {d ** (n - 1)}")
    sqrt_e = (-1) ** (n - 1) * d * (d_plus - d_minus)
    return RefinedIndex(sqrt_e, "oh5", diagnostics={"d_plus": d_plus, "d_minus": d_minus, "degree": d})


# -- Clifford complex ---------------------------------------------------------------


def _subsets(n: int, parity: int) -> list[tuple]:
    return [S for k in range(parity, n + 1, 2) for S in itertools.combinations(range(n), k)]


def clifford_matrices(sigma: Sequence[MultiPoly], tau: Sequence[MultiPoly]) -> tuple[list, list]:
    """Matrices of tau-wedge plus sigma-contraction on even and odd forms.

    Returns (even_to_odd, odd_to_even) as lists of rows.
    """
    n = len(sigma)
    zero = sigma[0] * 0
    even, odd = _subsets(n, 0), _subsets(n, 1)

    def apply(S: tuple) -> dict:
        out: dict = {}
        for k in range(n):
            if k in S:
                continue
            sign = (-1) ** sum(1 for l in S if l < k)
            T = tuple(sorted(S + (k,)))
            out[T] = out.get(T, zero) + tau[k] * sign
        for pos, k in enumerate(S):
            T = S[:pos] + S[pos + 1:]
            out[T] = out.get(T, zero) + sigma[k] * ((-1) ** pos)
        return out

    def matrix(src: list, dst: list) -> list:
        cols = [apply(S) for S in src]
        return [[c.get(T, zero) for c in cols] for T in dst]

    return matrix(even, odd), matrix(odd, even)


def _matmul_poly(A: list, B: list) -> list:
    zero = A[0][0] * 0
    return [
        [sum((A[i][k] * B[k][j] for k in range(len(B))), zero) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def route_rh7_clifford(s: IsoSection) -> RefinedIndex:
    sigma, tau = split_sigma_tau(s, hyperbolic_splitting(s.space))
    d_eo, d_oe = clifford_matrices(sigma, tau)
    for comp in (_matmul_poly(d_oe, d_eo), _matmul_poly(d_eo, d_oe)):
        if any(not p.is_zero() for row in comp for p in row):
            raise ComplexNotExact2Periodic("the Clifford composite is not zero")
    V = s.variables
    h_plus = subquotient_length(module_kernel(d_eo, V), matrix_image(d_oe, V))
    h_minus = subquotient_length(module_kernel(d_oe, V), matrix_image(d_eo, V))
    diag = {"H_plus": h_plus, "H_minus": h_minus, "size": len(d_eo)}
    if s.n == 2:
        return RefinedIndex(h_plus - h_minus, "rh7", h_plus, h_minus, diag)
    return RefinedIndex(h_plus - h_minus, "rh7", diagnostics=diag)


# -- torus localization ----------------------------------------------------------------


def _exact_int(num: int, den: int, what: str) -> int:
    r = Fraction(num, den)
    if r.denominator != 1:
        raise NonIntegerRatio(f"{what} = {r} is not an integer")
    return int(r)


def route_oh8_torus(s: IsoSection) -> RefinedIndex:
    if s.torus is None:
        raise BadWeights("torus weights are required")
    E = s.space
    w = s.torus.base
    if any(x == 0 for x in w):
        raise ZeroBaseWeight("a base weight is zero")
    tangent = 1
    for x in w:
        tangent *= -x
    values = {}
    for S in itertools.combinations(range(E.rank), E.n):
        L = coordinate_plane(E.rank, S)
        if not is_maximal_isotropic(E, L) or isotropic_sign(E, L) != 1:
            continue
        num = 1
        for k in S:
            num *= s.torus.fiber[k]
        values[S] = _exact_int(num, tangent, "weight ratio")
    if not values:
        raise NoInvariantIsotropic("no coordinate positive maximal isotropic subspace")
    if len(set(values.values())) != 1:
        raise ConsistencyFailure(f"invariant planes disagree: {values}")
    S, val = next(iter(values.items()))
    names = [E.names[k] for k in S]
    return RefinedIndex(val, "oh8", diagnostics={"plane": names, "tangent_euler": tangent})


@dataclass(frozen=True)
class SpinData:
    """Section F (x) v of Hom(M+, M-) with the determinant form.

    Weights of M+ are (a, b), weights of M- are (i', j'); F is a section of (M+)*
    and v a section of M-.
    """

    base_weights: tuple
    m_plus: tuple
    m_minus: tuple
    F: tuple
    v: tuple
    variables: tuple = ("x", "y")

    @classmethod
    def parse(cls, variables, base_weights, m_plus, m_minus, F, v) -> "SpinData":
        variables = tuple(variables)
        conv = lambda ps: tuple(parse_poly(p, variables) if isinstance(p, str) else p for p in ps)
        return cls(tuple(base_weights), tuple(m_plus), tuple(m_minus), conv(F), conv(v), variables)

    def section(self) -> IsoSection:
        F1, F2 = self.F
        v1, v2 = self.v
        comps = (v1 * F1, v2 * F2, v1 * F2, -(v2 * F1))
        return validate(self.variables, hyperbolic(2), comps)


def route_rh8_spin(data: SpinData, check_section: bool = True) -> RefinedIndex:
    a, b = data.m_plus
    i2, j2 = data.m_minus
    if a + b != i2 + j2:
        raise WeightConstraintViolated("determinants of M+ and M- carry different weights")
    w = data.base_weights
    if len(w) != 2 or any(x == 0 for x in w):
        raise ZeroBaseWeight("two nonzero base weights are required")
    for p, wt in zip(data.v, data.m_minus):
        if not p.is_zero() and not p.is_weight_homogeneous(w, wt):
            raise BadWeights(f"v component {p} does not have weight {wt}")
    for p, wt in zip(data.F, data.m_plus):
        if not p.is_zero() and not p.is_weight_homogeneous(w, -wt):
            raise BadWeights(f"F component {p} does not have weight {-wt}")
    tangent = w[0] * w[1]  # product of the two tangent weights -w_k
    d1 = _exact_int(i2 * j2, tangent, "e(M-)/e(N)")
    d2 = _exact_int(a * b, tangent, "e((M+)*)/e(N)")
    if d1 < 0 or d2 < 0:
        raise ConsistencyFailure("weight ratios must be nonnegative")
    len_v = _length(data.variables, data.v)
    len_F = _length(data.variables, data.F)
    if (len_v, len_F) != (d1, d2):
        raise ConsistencyFailure(f"weight ratios {(d1, d2)} differ from lengths {(len_v, len_F)}")
    diag = {"length_v": len_v, "length_F": len_F}
    if check_section:
        r = route_rh3(data.section())
        if (r.d1, r.d2) != (d1, d2):
            raise ConsistencyFailure(f"assembled section gives {(r.d1, r.d2)}")
        diag["rh3"] = [r.d1, r.d2]
    return RefinedIndex(d1 - d2, "rh8", d1, d2, diag)
