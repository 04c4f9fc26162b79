"""Signed count of simple zeros after an explicit isotropic deformation (rank 4)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import mpmath

from . import linalg as la
from .errors import CloseRoots, PerturbationFailed, RankAmbiguous
from .poly import QQ, MultiPoly, resultant
from .quadratic import QuadSpace, contract_omega
from .routes import RefinedIndex
from .section import IsoSection, factorize_n2

DPS = 60
RESIDUAL_TOL = mpmath.mpf("1e-10")
GAP_RATIO = 1000
NEAR, FAR = 0.3, 3.0


@dataclass
class SimpleZero:
    point: tuple
    sign: int
    factor: str  # "sigma0" or "fg"


@dataclass
class DeformationCount:
    positive: int
    negative: int
    zeros: list = field(default_factory=list)
    epsilon: object = None
    attempts: int = 1

    @property
    def pn(self) -> tuple:
        return self.positive, self.negative


# -- numeric zero finding -------------------------------------------------------------


def _to_mpc_poly(p: MultiPoly):
    items = [(e, mpmath.mpf(c.numerator) / c.denominator) for e, c in p.terms.items()]

    def f(*xs):
        acc = mpmath.mpc(0)
        for e, c in items:
            t = c
            for x, k in zip(xs, e):
                if k:
                    t *= x**k
            acc += t
        return acc

    return f


def _univariate_coeffs(p: MultiPoly, var: str) -> list:
    """Coefficients, highest first, of a polynomial in one variable."""
    k = p.variables.index(var)
    deg = p.degree(var)
    out = [mpmath.mpf(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[deg - e[k]] += mpmath.mpf(c.numerator) / c.denominator
    return out


def _roots(coeffs: list) -> list:
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return []
    return list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * DPS))


def solve_2x2(p: MultiPoly, q: MultiPoly, rng: random.Random) -> list[tuple]:
    """All common complex zeros of two bivariate polynomials with finitely many common zeros.

    A random linear change of coordinates makes the zeros have distinct second
    coordinates; the resultant in the first coordinate is solved numerically and
    each root is lifted and Newton-polished.
    """
    V = p.variables
    x, y = V
    if p.is_constant() or q.is_constant():
        if (p.is_constant() and not p.is_zero()) or (q.is_constant() and not q.is_zero()):
            return []
        raise ValueError("system has a positive-dimensional zero set")
    a = QQ(rng.randint(-5, 5), rng.randint(1, 7))
    b = QQ(rng.randint(-5, 5), rng.randint(1, 7))
    if 1 - a * b == 0:
        b += 1
    X, Y = MultiPoly.var(V, x), MultiPoly.var(V, y)
    sub = {x: X + Y * a, y: Y + X * b}
    P, Q = p.substitute(sub, V), q.substitute(sub, V)
    if P.degree(x) == 0 or Q.degree(x) == 0:
        raise ArithmeticError("shear left a polynomial free of the eliminated variable")
    R = resultant(P, Q, x)
    if R.is_zero():
        raise ValueError("system has a positive-dimensional zero set")
    ys = _roots(_univariate_coeffs(R, y)) if not R.is_constant() else []
    fP, fQ = _to_mpc_poly(P), _to_mpc_poly(Q)
    dP = (_to_mpc_poly(P.derivative(x)), _to_mpc_poly(P.derivative(y)))
    dQ = (_to_mpc_poly(Q.derivative(x)), _to_mpc_poly(Q.derivative(y)))
    out = []
    for y0 in ys:
        k = P.variables.index(x)
        deg = P.degree(x)
        cx = [mpmath.mpc(0)] * (deg + 1)
        for e, c in P.terms.items():
            cx[deg - e[k]] += (mpmath.mpf(c.numerator) / c.denominator) * y0 ** e[1 - k]
        cands = _roots(cx)
        if not cands:
            continue
        x0 = min(cands, key=lambda t: abs(fQ(t, y0)))
        u = mpmath.matrix([x0, y0])
        for _ in range(30):
            F = mpmath.matrix([fP(u[0], u[1]), fQ(u[0], u[1])])
            J = mpmath.matrix([[dP[0](u[0], u[1]), dP[1](u[0], u[1])], [dQ[0](u[0], u[1]), dQ[1](u[0], u[1])]])
            if mpmath.det(J) == 0:
                break
            step = mpmath.lu_solve(J, F)
            u = u - step
            if mpmath.norm(step) < mpmath.mpf(10) ** (-DPS + 10) * (1 + mpmath.norm(u)):
                break
        out.append((u[0] + a * u[1], u[1] + b * u[0]))
    return out


# -- signs of image planes ---------------------------------------------------------------


def _orthonormal_columns(M: mpmath.matrix) -> mpmath.matrix:
    Q, _ = mpmath.qr(M)
    return Q[:, : M.cols]


def numeric_intersection_dim(J: mpmath.matrix, ref: mpmath.matrix) -> int:
    """dim(span J ∩ span ref) from the singular-value gap of [J | ref]."""
    A = _orthonormal_columns(J)
    B = _orthonormal_columns(ref)
    M = mpmath.matrix(A.rows, A.cols + B.cols)
    for i in range(A.rows):
        for j in range(A.cols):
            M[i, j] = A[i, j]
        for j in range(B.cols):
            M[i, A.cols + j] = B[i, j]
    sv = sorted((abs(v) for v in mpmath.svd_c(M, compute_uv=False)), reverse=True)
    top = sv[0]
    tol = top / GAP_RATIO
    r = sum(1 for v in sv if v > tol)
    # the gap between retained and dropped values must be unmistakable
    if r < len(sv) and sv[r - 1] / max(sv[r], mpmath.mpf(10) ** (-DPS)) < GAP_RATIO:
        raise RankAmbiguous(f"singular values {[mpmath.nstr(v, 5) for v in sv]} have no clear gap")
    if r == len(sv) and sv[-1] < top / GAP_RATIO:
        raise RankAmbiguous("smallest singular value is borderline")
    return A.cols + B.cols - r


def _sign_from_dim(E: QuadSpace, k: int) -> int:
    return (1 if (E.n - k) % 2 == 0 else -1) * E.orientation


def _ref_matrix(E: QuadSpace) -> mpmath.matrix:
    ref = E.require_reference()
    M = mpmath.matrix(E.rank, ref.dim)
    for j, v in enumerate(ref.basis):
        for i, c in enumerate(v):
            M[i, j] = complex(c) if not hasattr(c, "numerator") else mpmath.mpf(c.numerator) / c.denominator
    return M


# -- the deformation ------------------------------------------------------------------------


def _perturbed(fac, eps, rng: random.Random):
    def c():
        v = 0
        while v == 0:
            v = rng.randint(-4, 4)
        return QQ(v, rng.randint(1, 3))

    s0 = tuple(p + eps * c() for p in fac.sigma0)
    t0 = contract_omega(s0)
    f = fac.f + eps * c()
    g = fac.g + eps * c()
    return s0, t0, f, g


def route_rh4_deform(s: IsoSection, seed: int = 0, epsilon=QQ(1, 10**8), retries: int = 5) -> RefinedIndex:
    count = deform_count(s, seed, epsilon, retries)
    P, N = count.pn
    return RefinedIndex(
        P - N,
        "rh4",
        P,
        N,
        {"epsilon": str(count.epsilon), "attempts": count.attempts, "zeros": len(count.zeros)},
    )


def deform_count(s: IsoSection, seed: int = 0, epsilon=QQ(1, 10**8), retries: int = 5) -> DeformationCount:
    fac = factorize_n2(s, seed=seed)
    E = s.space
    S = fac.splitting
    eps = QQ(epsilon)
    last_error: Exception | None = None
    with mpmath.workdps(DPS):
        ref = _ref_matrix(E)
        for attempt in range(retries):
            rng = random.Random(f"{seed}:{attempt}")
            try:
                zeros = _count_once(s, fac, S, eps, ref, rng)
            except (CloseRoots, RankAmbiguous, ArithmeticError, mpmath.libmp.NoConvergence, _Ambiguous) as exc:
                last_error = exc
                if isinstance(exc, _Ambiguous):
                    eps = eps / 100
                continue
            P = sum(1 for z in zeros if z.sign > 0)
            return DeformationCount(P, len(zeros) - P, zeros, eps, attempt + 1)
    raise PerturbationFailed(f"deformation count failed after {retries} attempts: {last_error}")


class _Ambiguous(Exception):
    pass


def _count_once(s, fac, S, eps, ref, rng) -> list[SimpleZero]:
    s0, t0, f, g = _perturbed(fac, eps, rng)
    sigma = tuple(f * p for p in s0)
    tau = tuple(g * p for p in t0)
    comps = S.from_split(sigma, tau)
    if not s.space.q_poly(comps).is_zero():
        raise AssertionError("deformed section is not isotropic")
    V = s.variables
    jac = [[_to_mpc_poly(p.derivative(v)) for v in V] for p in comps]
    zeros = []
    for label, (p, q) in (("sigma0", s0), ("fg", (f, g))):
        pts = solve_2x2(p, q, rng)
        near = []
        for pt in pts:
            r = max(abs(z) for z in pt)
            if NEAR <= r <= FAR:
                raise _Ambiguous("a zero lies in the ambiguous annulus")
            if r < NEAR:
                fp, fq = _to_mpc_poly(p), _to_mpc_poly(q)
                scale = max(abs(mpmath.mpf(c.numerator) / c.denominator) for c in list(p.terms.values()) + list(q.terms.values()))
                if max(abs(fp(*pt)), abs(fq(*pt))) > RESIDUAL_TOL * scale:
                    raise ArithmeticError("Newton polish did not converge")
                near.append(pt)
        for i in range(len(near)):
            for j in range(i + 1, len(near)):
                if max(abs(u - v) for u, v in zip(near[i], near[j])) < mpmath.mpf(10) ** (-DPS // 3):
                    raise CloseRoots("two deformed zeros nearly coincide")
        for pt in near:
            J = mpmath.matrix(len(comps), len(V))
            for i in range(len(comps)):
                for j in range(len(V)):
                    J[i, j] = jac[i][j](*pt)
            k = numeric_intersection_dim(J, ref)
            zeros.append(SimpleZero(tuple(complex(z) for z in pt), _sign_from_dim(s.space, k), label))
    return zeros


# -- the explicit product deformation of the monomial family ------------------------------


def product_deformation(d: int, i: int, j: int, a: Sequence | None = None, b: Sequence | None = None):
    """Deform (x^d, y^d, x^i y^j, -x^{d-i} y^{d-j}) by splitting each power into distinct
    linear factors; returns the list of (point, sign) over all simple zeros, exactly."""
    from .quadratic import hyperbolic, isotropic_sign, Subspace

    a = [QQ(k + 1) for k in range(d)] if a is None else [QQ(t) for t in a]
    b = [QQ(-(k + 1)) for k in range(d)] if b is None else [QQ(t) for t in b]
    V = ("x", "y")
    x, y = MultiPoly.var(V, "x"), MultiPoly.var(V, "y")
    one = MultiPoly.constant(V, 1)

    def prod(ps):
        out = one
        for p in ps:
            out = out * p
        return out

    A = [x - t for t in a]
    Bf = [y - t for t in b]
    comps = (prod(A), prod(Bf), prod(A[:i]) * prod(Bf[:j]), -(prod(A[i:]) * prod(Bf[j:])))
    E = hyperbolic(2)
    if not E.q_poly(comps).is_zero():
        raise AssertionError("product deformation is not isotropic")
    out = []
    for k, ak in enumerate(a):
        for l, bl in enumerate(b):
            pt = (ak, bl)
            if any(c.evaluate(pt) != 0 for c in comps):
                continue
            J = [[c.derivative(v).evaluate(pt) for v in V] for c in comps]
            plane = Subspace(la.columns(la.mat(J)))
            out.append((pt, isotropic_sign(E, plane)))
    return out
