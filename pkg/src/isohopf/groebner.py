"""Groebner bases for ideals and submodules of free modules over Q[x1..xn].

Terms inside the engine are tuples ``(position, e1, ..., en)``; an ideal is a
module of rank one. Module orders are position-over-term with position 0 the
largest, layered on a base monomial order.
"""

from __future__ import annotations

import heapq
import os
import random
from typing import Iterable, Sequence

from .errors import (
    DegenerateSlice,
    EmptyScheme,
    NotContained,
    NotFiniteLength,
    NotZeroDimensional,
    ResourceError,
)
from .poly import GREVLEX, QQ, ExponentOrder, MultiPoly, block_order

DEFAULT_STEP_BUDGET = 10**6
BUDGET_ENV = "ISOHOPF_STEP_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_STEP_BUDGET


class _Elem:
    __slots__ = ("terms", "lt", "sugar")

    def __init__(self, terms: dict, lt: tuple, sugar: int):
        self.terms = terms
        self.lt = lt
        self.sugar = sugar


def _divides(a: tuple, b: tuple) -> bool:
    if a[0] != b[0]:
        return False
    for x, y in zip(a[1:], b[1:]):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return (a[0],) + tuple(max(x, y) for x, y in zip(a[1:], b[1:]))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a[1:], b[1:]))


def _deg(t: tuple) -> int:
    return sum(t[1:])


class Engine:
    """Buchberger's algorithm with the sugar strategy and the Gebauer-Moeller criteria."""

    def __init__(self, order: ExponentOrder = GREVLEX, module: bool = False, budget: int | None = None):
        self.order = order
        self.module = module
        self.budget = default_budget() if budget is None else budget
        self.steps = 0
        self._keys: dict = {}

    # ordering -------------------------------------------------------------
    def key(self, t: tuple) -> tuple:
        k = self._keys.get(t)
        if k is None:
            k = (-t[0],) + self.order.key(t[1:])
            self._keys[t] = k
        return k

    def neg_key(self, t: tuple) -> tuple:
        return tuple(-x for x in self.key(t))

    def leading(self, terms: dict) -> tuple:
        return max(terms, key=self.key)

    # reduction ------------------------------------------------------------
    def reduce(self, terms: dict, basis: Sequence[_Elem], full: bool = True) -> dict:
        """Normal form of ``terms`` modulo ``basis`` (top reduction only if not full)."""
        f = dict(terms)
        heap = [(self.neg_key(t), t) for t in f]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            div = None
            for g in basis:
                if _divides(g.lt, t):
                    div = g
                    break
            if div is None:
                if not full:
                    f[t] = c
                    f.update(rem)
                    return f
                rem[t] = c
                continue
            lt = div.lt
            shift = tuple(a - b for a, b in zip(t[1:], lt[1:]))
            coef = c / div.terms[lt]
            for u, cu in div.terms.items():
                if u == lt:
                    continue
                v = (u[0],) + tuple(a + b for a, b in zip(u[1:], shift))
                old = f.get(v)
                if old is None:
                    f[v] = -coef * cu
                    heapq.heappush(heap, (self.neg_key(v), v))
                else:
                    nv = old - coef * cu
                    if nv:
                        f[v] = nv
                    else:
                        del f[v]
        return rem

    def _make(self, terms: dict, sugar: int | None = None) -> _Elem:
        lt = self.leading(terms)
        c = terms[lt]
        if c != 1:
            inv = 1 / c
            terms = {t: v * inv for t, v in terms.items()}
        if sugar is None:
            sugar = max(_deg(t) for t in terms)
        return _Elem(terms, lt, sugar)

    def _spoly(self, a: _Elem, b: _Elem, lcm: tuple) -> dict:
        out: dict = {}
        for elem, sign in ((a, 1), (b, -1)):
            shift = tuple(x - y for x, y in zip(lcm[1:], elem.lt[1:]))
            for u, cu in elem.terms.items():
                v = (u[0],) + tuple(x + y for x, y in zip(u[1:], shift))
                nv = out.get(v, QQ(0)) + sign * cu
                if nv:
                    out[v] = nv
                else:
                    out.pop(v, None)
        return out

    # main loop ------------------------------------------------------------
    def groebner(self, gens: Iterable[dict]) -> list[dict]:
        elems: list[_Elem] = []
        active: list[int] = []
        pairs: list[tuple] = []  # (sugar, key(lcm), i, j, lcm)

        def update(h: int) -> None:
            nonlocal active, pairs
            eh = elems[h]
            cands = []
            for i in active:
                if elems[i].lt[0] == eh.lt[0]:
                    cands.append((i, _lcm(elems[i].lt, eh.lt)))
            kept = []
            for idx, (i, m) in enumerate(cands):
                if not self.module and _coprime(elems[i].lt, eh.lt):
                    kept.append((i, m))
                    continue
                others = [m2 for _, m2 in cands[idx + 1:]] + [m2 for _, m2 in kept]
                if not any(_divides(m2, m) for m2 in others):
                    kept.append((i, m))
            new_pairs = [
                (i, m) for i, m in kept if self.module or not _coprime(elems[i].lt, eh.lt)
            ]
            survivors = []
            for p in pairs:
                _, _, i, j, m = p
                if (
                    _divides(eh.lt, m)
                    and eh.lt[0] == m[0]
                    and _lcm(elems[i].lt, eh.lt) != m
                    and _lcm(elems[j].lt, eh.lt) != m
                ):
                    continue
                survivors.append(p)
            for i, m in new_pairs:
                ei = elems[i]
                sugar = max(ei.sugar + _deg(m) - _deg(ei.lt), eh.sugar + _deg(m) - _deg(eh.lt))
                survivors.append((sugar, self.neg_key(m), i, h, m))
            pairs = survivors
            active = [g for g in active if not _divides(eh.lt, elems[g].lt)] + [h]

        for g in gens:
            if not g:
                continue
            r = self.reduce(g, [elems[k] for k in active])
            if r:
                elems.append(self._make(r))
                update(len(elems) - 1)

        while pairs:
            best = min(range(len(pairs)), key=lambda k: (pairs[k][0], pairs[k][1]))
            sugar, _, i, j, m = pairs.pop(best)
            self.steps += 1
            if self.steps > self.budget:
                raise ResourceError(
                    f"Groebner step budget of {self.budget} S-pair reductions exceeded"
                )
            s = self._spoly(elems[i], elems[j], m)
            if not s:
                continue
            r = self.reduce(s, [elems[k] for k in active])
            if r:
                elems.append(self._make(r, sugar))
                update(len(elems) - 1)

        basis = [elems[k] for k in active]
        reduced = []
        for idx, e in enumerate(basis):
            others = basis[:idx] + basis[idx + 1:]
            tail = {t: c for t, c in e.terms.items() if t != e.lt}
            r = self.reduce(tail, others) if tail else {}
            r[e.lt] = QQ(1)
            reduced.append(_Elem(r, e.lt, e.sugar))
        reduced.sort(key=lambda e: self.key(e.lt), reverse=True)
        return [e.terms for e in reduced]


# ---------------------------------------------------------------------------
# conversions


def _poly_to_terms(p: MultiPoly, pos: int = 0) -> dict:
    return {(pos,) + e: c for e, c in p.terms.items()}


def _vector_to_terms(v: Sequence[MultiPoly]) -> dict:
    out = {}
    for pos, p in enumerate(v):
        for e, c in p.terms.items():
            out[(pos,) + e] = c
    return out


def _terms_to_poly(terms: dict, variables: tuple) -> MultiPoly:
    return MultiPoly._raw(variables, {t[1:]: c for t, c in terms.items()})


def _terms_to_vector(terms: dict, rank: int, variables: tuple, offset: int = 0) -> tuple:
    parts: list[dict] = [dict() for _ in range(rank)]
    for t, c in terms.items():
        parts[t[0] - offset][t[1:]] = c
    return tuple(MultiPoly._raw(variables, p) for p in parts)


def count_standard_monomials(leading: Iterable[tuple], nvars: int, limit: int | None = None) -> int:
    """Number of monomials outside the monomial ideal generated by ``leading`` exponents."""
    leading = [tuple(e) for e in leading]
    if any(not any(e) for e in leading):
        return 0
    for k in range(nvars):
        if not any(e[k] > 0 and all(e[i] == 0 for i in range(nvars) if i != k) for e in leading):
            raise NotZeroDimensional(f"no pure power of variable #{k} among leading monomials")

    def standard(m):
        return not any(all(a <= b for a, b in zip(e, m)) for e in leading)

    count = 0
    stack = [((0,) * nvars, 0)]
    while stack:
        m, last = stack.pop()
        count += 1
        if limit is not None and count > limit:
            raise NotZeroDimensional("standard monomial count exceeds limit")
        for k in range(last, nvars):
            child = m[:k] + (m[k] + 1,) + m[k + 1:]
            if standard(child):
                stack.append((child, k))
    return count


def _fglm(eng: Engine, elems: list, order: ExponentOrder, nvars: int, budget=None) -> list[dict]:
    """Change of order for a zero-dimensional reduced basis (Faugere, Gianni, Lazard, Mora)."""
    budget = default_budget() if budget is None else budget
    key = order.key
    rows: list[tuple] = []  # (pivot, normal-form vector, monomial combination)
    out: list[dict] = []
    lead: list[tuple] = []
    cand = {(0,) * nvars}
    steps = 0
    while cand:
        m = min(cand, key=key)
        cand.discard(m)
        if any(all(a <= b for a, b in zip(l, m)) for l in lead):
            continue
        steps += 1
        if steps > budget:
            raise ResourceError(f"order conversion exceeded the step budget of {budget}")
        vec = eng.reduce({(0,) + m: QQ(1)}, elems)
        combo = {m: QQ(1)}
        for pivot, rv, rc in rows:
            f = vec.get(pivot)
            if not f:
                continue
            for t, c in rv.items():
                nv = vec.get(t, QQ(0)) - f * c
                if nv:
                    vec[t] = nv
                else:
                    vec.pop(t, None)
            for t, c in rc.items():
                nv = combo.get(t, QQ(0)) - f * c
                if nv:
                    combo[t] = nv
                else:
                    combo.pop(t, None)
        if not vec:
            out.append({(0,) + t: c for t, c in combo.items()})
            lead.append(m)
            continue
        pivot = max(vec, key=eng.key)
        inv = 1 / vec[pivot]
        rows.append((pivot, {t: c * inv for t, c in vec.items()}, {t: c * inv for t, c in combo.items()}))
        for k in range(nvars):
            cand.add(m[:k] + (m[k] + 1,) + m[k + 1:])
    out.sort(key=lambda terms: key(max(terms, key=lambda t: key(t[1:]))[1:]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# ideals


class PolyIdeal:
    """A finitely generated ideal with cached Groebner bases (one per monomial order)."""

    def __init__(self, variables: Sequence[str], gens: Iterable[MultiPoly] = ()):
        self.variables = tuple(variables)
        gl = []
        for g in gens:
            if not isinstance(g, MultiPoly):
                g = MultiPoly.constant(self.variables, g)
            if g.variables != self.variables:
                g = g.embed(self.variables)
            if not g.is_zero():
                gl.append(g)
        self.gens = tuple(gl)
        self._gb: dict = {}

    def __repr__(self) -> str:
        return f"PolyIdeal({[str(g) for g in self.gens]}, vars={list(self.variables)})"

    def groebner(self, order: ExponentOrder = GREVLEX, budget: int | None = None) -> tuple:
        if order not in self._gb:
            if order.kind == "lex" and self.is_zero_dimensional():
                # Buchberger in lex is slow even on small systems; convert instead
                eng, elems = self._elems(GREVLEX)
                raw = _fglm(eng, elems, order, len(self.variables), budget)
            else:
                eng = Engine(order, module=False, budget=budget)
                raw = eng.groebner([_poly_to_terms(g) for g in self.gens])
            self._gb[order] = tuple(_terms_to_poly(t, self.variables) for t in raw)
        return self._gb[order]

    def _elems(self, order: ExponentOrder) -> tuple[Engine, list]:
        eng = Engine(order)
        elems = [eng._make(_poly_to_terms(g)) for g in self.groebner(order)]
        return eng, elems

    def normal_form(self, p: MultiPoly, order: ExponentOrder = GREVLEX) -> MultiPoly:
        if p.variables != self.variables:
            p = p.embed(self.variables)
        eng, elems = self._elems(order)
        return _terms_to_poly(eng.reduce(_poly_to_terms(p), elems), self.variables)

    def contains(self, p: MultiPoly) -> bool:
        return self.normal_form(p).is_zero()

    def contains_ideal(self, other: "PolyIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "PolyIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def leading_monomials(self, order: ExponentOrder = GREVLEX) -> list:
        return [g.leading_term(order)[0] for g in self.groebner(order)]

    def is_zero_dimensional(self, order: ExponentOrder = GREVLEX) -> bool:
        lead = self.leading_monomials(order)
        n = len(self.variables)
        return all(
            any(e[k] > 0 and sum(e) == e[k] for e in lead) or any(sum(e) == 0 for e in lead)
            for k in range(n)
        )

    def colength(self, order: ExponentOrder = GREVLEX) -> int:
        return count_standard_monomials(self.leading_monomials(order), len(self.variables))

    def standard_monomials(self, order: ExponentOrder = GREVLEX) -> list:
        lead = self.leading_monomials(order)
        n = len(self.variables)
        count_standard_monomials(lead, n)
        out = []
        stack = [((0,) * n, 0)]
        while stack:
            m, last = stack.pop()
            if any(all(a <= b for a, b in zip(e, m)) for e in lead):
                continue
            out.append(m)
            for k in range(last, n):
                stack.append((m[:k] + (m[k] + 1,) + m[k + 1:], k))
        return sorted(out, key=GREVLEX.key)

    def __add__(self, other) -> "PolyIdeal":
        if isinstance(other, PolyIdeal):
            return PolyIdeal(self.variables, self.gens + other.gens)
        return PolyIdeal(self.variables, self.gens + tuple(other))

    def dump(self, order: ExponentOrder = GREVLEX) -> list[str]:
        return [str(g) for g in self.groebner(order)]


def groebner_basis(obj, order: ExponentOrder = GREVLEX, budget: int | None = None):
    """Reduced Groebner basis of a PolyIdeal or PolyModule."""
    return obj.groebner(order, budget=budget)


def colength(I: PolyIdeal, order: ExponentOrder = GREVLEX) -> int:
    return I.colength(order)


def _fresh(name: str, taken: Sequence[str]) -> str:
    while name in taken:
        name = name + "_"
    return name


def eliminate(I: PolyIdeal, elim: Iterable[str], budget: int | None = None) -> PolyIdeal:
    """Generators of I intersected with the subring without the variables ``elim``."""
    elim = [v for v in I.variables if v in set(elim)]
    keep = [v for v in I.variables if v not in elim]
    order_vars = tuple(elim + keep)
    J = PolyIdeal(order_vars, [g.embed(order_vars) for g in I.gens])
    k = len(elim)
    gb = J.groebner(block_order(k), budget=budget)
    out = [g for g in gb if all(not any(e[:k]) for e in g.terms)]
    return PolyIdeal(keep, [_drop(g, k, tuple(keep)) for g in out])


def _drop(g: MultiPoly, k: int, keep: tuple) -> MultiPoly:
    return MultiPoly._raw(keep, {e[k:]: c for e, c in g.terms.items()})


def saturate(I: PolyIdeal, f: MultiPoly, budget: int | None = None) -> PolyIdeal:
    """(I : f^infinity) via an extra variable w with w*f - 1."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    w = _fresh("_w", I.variables)
    big = (w,) + I.variables
    W = MultiPoly.var(big, w)
    gens = [g.embed(big) for g in I.gens] + [W * f.embed(big) - 1]
    return eliminate(PolyIdeal(big, gens), [w], budget=budget)


def _random_linear(variables: tuple, names: Sequence[str], rng: random.Random) -> MultiPoly:
    p = MultiPoly.zero(variables)
    for v in names:
        c = 0
        while c == 0:
            c = rng.randint(-9, 9)
        p = p + MultiPoly.var(variables, v) * c
    return p


def _projective_degree_once(I: PolyIdeal, hv: Sequence[str], seed: int, budget) -> tuple[int, int]:
    rng = random.Random(seed)
    chart = _random_linear(I.variables, hv, rng) - 1
    J = I + [chart]
    if J.is_unit():
        raise EmptyScheme("projective scheme is empty")
    slices = 0
    while True:
        J.groebner(budget=budget)
        if J.is_zero_dimensional():
            return J.colength(), slices
        if slices >= len(hv):
            raise DegenerateSlice("slicing did not reach dimension zero")
        J = J + [_random_linear(I.variables, hv, rng)]
        slices += 1
        if J.is_unit():
            raise DegenerateSlice("a generic hyperplane missed the scheme")


def projective_degree(
    I: PolyIdeal,
    homogeneous_vars: Sequence[str] | None = None,
    seeds: Sequence[int] = (11, 23, 37),
    budget: int | None = None,
) -> int:
    """Degree of the projective scheme of a homogeneous ideal.

    ``homogeneous_vars`` names the projective coordinates; any other variables
    are treated as weight-zero (they must be nilpotent, e.g. base coordinates of a
    cone supported over a point). Slices with generic rational hyperplanes in an
    affine chart of generic position; three seeds must agree.
    """
    hv = tuple(homogeneous_vars or I.variables)
    idx = [I.variables.index(v) for v in hv]
    for g in I.gens:
        degs = {sum(e[k] for k in idx) for e in g.terms}
        if len(degs) > 1:
            raise ValueError(f"generator {g} is not homogeneous in {hv}")
    return projective_dimension_and_degree(I, hv, seeds, budget)[1]


def projective_dimension_and_degree(I: PolyIdeal, homogeneous_vars=None, seeds=(11, 23, 37), budget=None):
    """(dimension, degree) of the projective scheme, by the same slicing procedure."""
    hv = tuple(homogeneous_vars or I.variables)
    results = {_projective_degree_once(I, hv, s, budget) for s in seeds}
    if len(results) != 1:
        raise DegenerateSlice(f"slices disagree across seeds: {sorted(results)}")
    deg, slices = results.pop()
    return slices, deg


# ---------------------------------------------------------------------------
# modules


class PolyModule:
    """Submodule of the free module of rank ``rank`` generated by polynomial vectors."""

    def __init__(self, rank: int, variables: Sequence[str], gens: Iterable[Sequence[MultiPoly]] = ()):
        self.rank = rank
        self.variables = tuple(variables)
        gl = []
        for v in gens:
            v = tuple(v)
            if len(v) != rank:
                raise ValueError(f"generator of length {len(v)} in a rank {rank} module")
            if any(not p.is_zero() for p in v):
                gl.append(v)
        self.gens = tuple(gl)
        self._gb: dict = {}

    def __repr__(self) -> str:
        return f"PolyModule(rank={self.rank}, gens={[[str(p) for p in v] for v in self.gens]})"

    def groebner(self, order: ExponentOrder = GREVLEX, budget: int | None = None) -> tuple:
        if order not in self._gb:
            eng = Engine(order, module=True, budget=budget)
            raw = eng.groebner([_vector_to_terms(v) for v in self.gens])
            self._gb[order] = tuple(_terms_to_vector(t, self.rank, self.variables) for t in raw)
        return self._gb[order]

    def normal_form(self, v: Sequence[MultiPoly], order: ExponentOrder = GREVLEX) -> tuple:
        eng = Engine(order, module=True)
        elems = [eng._make(_vector_to_terms(g)) for g in self.groebner(order)]
        return _terms_to_vector(eng.reduce(_vector_to_terms(v), elems), self.rank, self.variables)

    def contains(self, v: Sequence[MultiPoly]) -> bool:
        return all(p.is_zero() for p in self.normal_form(v))

    def quotient_length(self, order: ExponentOrder = GREVLEX) -> int:
        """Dimension of (free module)/(this submodule) over Q."""
        gb = self.groebner(order)
        eng = Engine(order, module=True)
        leads = [eng.leading(_vector_to_terms(v)) for v in gb]
        total = 0
        n = len(self.variables)
        for pos in range(self.rank):
            here = [t[1:] for t in leads if t[0] == pos]
            if not here:
                raise NotFiniteLength(f"component {pos} of the quotient is free")
            try:
                total += count_standard_monomials(here, n)
            except NotZeroDimensional as exc:
                raise NotFiniteLength(str(exc)) from None
        return total


def _augmented(columns: Sequence[Sequence[MultiPoly]], m: int, variables: tuple, budget=None):
    """Groebner basis of {(a_j, e_j)} in rank m + r with the first m positions dominant."""
    r = len(columns)
    zero = MultiPoly.zero(variables)
    one = MultiPoly.constant(variables, 1)
    gens = []
    for j, col in enumerate(columns):
        unit = [zero] * r
        unit[j] = one
        gens.append(tuple(col) + tuple(unit))
    eng = Engine(GREVLEX, module=True, budget=budget)
    raw = eng.groebner([_vector_to_terms(v) for v in gens])
    return eng, raw


def module_kernel(A: Sequence[Sequence[MultiPoly]], variables: Sequence[str] | None = None, budget=None) -> PolyModule:
    """Syzygies {v : A v = 0} of an m x k polynomial matrix given as a list of rows."""
    m = len(A)
    k = len(A[0]) if m else 0
    if variables is None:
        variables = A[0][0].variables
    variables = tuple(variables)
    cols = [[A[i][j] for i in range(m)] for j in range(k)]
    eng, raw = _augmented(cols, m, variables, budget)
    syz = []
    for t in raw:
        if all(u[0] >= m for u in t):
            syz.append(_terms_to_vector(t, k, variables, offset=m))
    return PolyModule(k, variables, syz)


def matrix_image(A: Sequence[Sequence[MultiPoly]], variables: Sequence[str] | None = None) -> PolyModule:
    m = len(A)
    k = len(A[0]) if m else 0
    if variables is None:
        variables = A[0][0].variables
    return PolyModule(m, variables, [[A[i][j] for i in range(m)] for j in range(k)])


def subquotient_length(ker: PolyModule, im: PolyModule, budget=None) -> int:
    """Length of ker/im for submodules im of ker of a common free module."""
    if ker.rank != im.rank or ker.variables != im.variables:
        raise ValueError("modules live in different free modules")
    m = ker.rank
    variables = ker.variables
    kgens = list(ker.gens)
    r = len(kgens)
    if r == 0:
        if im.gens:
            raise NotContained("image is nonzero but the kernel is zero")
        return 0
    eng, raw = _augmented(kgens, m, variables, budget)
    elems = [eng._make(t) for t in raw]
    syz = [
        _terms_to_vector(t, r, variables, offset=m) for t in raw if all(u[0] >= m for u in t)
    ]
    lifts = []
    for b in im.gens:
        red = eng.reduce(_vector_to_terms(b), elems)
        if any(u[0] < m for u in red):
            raise NotContained("image generator is not in the kernel module")
        lifts.append(tuple(-p for p in _terms_to_vector(red, r, variables, offset=m)))
    Q = PolyModule(r, variables, syz + lifts)
    return Q.quotient_length()


def intersect(I: PolyIdeal, J: PolyIdeal, budget: int | None = None) -> PolyIdeal:
    """I ∩ J via t*I + (1 - t)*J and elimination of t."""
    t = _fresh("_t", I.variables)
    big = (t,) + I.variables
    T = MultiPoly.var(big, t)
    gens = [T * g.embed(big) for g in I.gens] + [(1 - T) * g.embed(big) for g in J.gens]
    return eliminate(PolyIdeal(big, gens), [t], budget=budget)


def colon(I: PolyIdeal, f: MultiPoly, budget: int | None = None) -> PolyIdeal:
    """The ideal quotient (I : f) = {g : g*f in I}."""
    if f.is_zero():
        raise ValueError("colon by zero")
    inter = intersect(I, PolyIdeal(I.variables, [f]), budget=budget)
    return PolyIdeal(I.variables, [g / f for g in inter.gens])
