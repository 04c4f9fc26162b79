"""Exact linear algebra of rational quadratic spaces.

Conventions: ``q(v) = v^T B v`` and ``<v, w> = v^T B w``. A hyperbolic basis
``e_1..e_n, f_1..f_n`` has ``<e_k, f_l> = delta_kl / 2`` and both halves isotropic,
so that ``q(sum s_k e_k + t_k f_k) = sum s_k t_k``.

Orientation: each space stores a reference maximal isotropic plane which is
positive for the coordinate orientation, plus a unit sign. A maximal isotropic
L is positive for the coordinate orientation when ``det[e | f] > 0`` for a basis
e of L and q-dual partners f; for q = XY + ZW this makes span(dX, dW) positive.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

import gmpy2

from . import linalg as la
from .errors import NoRationalSplitting, NotIsotropic, NotMaximalIsotropic, ZeroVector
from .gaussian import I_UNIT, is_real, to_field
from .poly import QQ, MultiPoly, to_q


@dataclass(frozen=True)
class Subspace:
    """Column span of rational vectors (stored as a tuple of basis vectors)."""

    basis: tuple

    def __init__(self, vectors: Sequence[Sequence]):
        vecs = tuple(tuple(to_field(x) for x in v) for v in vectors)
        if vecs and la.rank(la.transpose(vecs)) != len(vecs):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", vecs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    def matrix(self) -> la.Matrix:
        """Basis as columns."""
        return la.from_columns(self.basis)

    def is_rational(self) -> bool:
        return all(is_real(x) for v in self.basis for x in v)

    def contains(self, v: Sequence) -> bool:
        v = tuple(to_field(x) for x in v)
        return la.rank(la.transpose(self.basis + (v,))) == self.dim

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - la.rank(la.transpose(self.basis + other.basis))

    def transform(self, G: la.Matrix) -> "Subspace":
        return Subspace([la.matvec(G, v) for v in self.basis])

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim == self.intersection_dim(other)


def coordinate_plane(rank: int, indices: Sequence[int]) -> Subspace:
    vecs = []
    for k in indices:
        v = [0] * rank
        v[k] = 1
        vecs.append(v)
    return Subspace(vecs)


# ---------------------------------------------------------------------------
# isotropic vectors and hyperbolic pairs


def _is_square(c) -> bool:
    c = to_q(c)
    return c >= 0 and gmpy2.is_square(c.numerator) and gmpy2.is_square(c.denominator)


def _sqrt(c):
    c = to_q(c)
    return QQ(gmpy2.isqrt(c.numerator), gmpy2.isqrt(c.denominator))


def _isotropic_in(B: la.Matrix, basis: list, gaussian: bool = False) -> tuple:
    """A nonzero isotropic vector in span(basis), found by a few exact searches.

    With ``gaussian`` the vector may have Gaussian-rational entries.
    """
    qv = [la.bilinear(B, b, b) for b in basis]
    for b, v in zip(basis, qv):
        if v == 0:
            return b

    def from_pair(bi, bj, qi, qj, bij):
        disc = bij * bij - qi * qj
        if _is_square(disc):
            t = (-bij + _sqrt(disc)) / qj
            return tuple(x + t * y for x, y in zip(bi, bj))
        if gaussian and _is_square(-disc):
            t = (-bij + I_UNIT * _sqrt(-disc)) / qj
            return tuple(x + t * y for x, y in zip(bi, bj))
        return None

    for i, j in itertools.combinations(range(len(basis)), 2):
        v = from_pair(basis[i], basis[j], qv[i], qv[j], la.bilinear(B, basis[i], basis[j]))
        if v is not None and any(v):
            return v
    # orthogonalize and retry pairs, then a small brute-force search
    orth: list = []
    for b in basis:
        v = b
        for o, qo in orth:
            c = la.bilinear(B, v, o) / qo
            v = tuple(x - c * y for x, y in zip(v, o))
        qvv = la.bilinear(B, v, v)
        if qvv == 0:
            if any(v):
                return v
            continue
        orth.append((v, qvv))
    for (bi, qi), (bj, qj) in itertools.combinations(orth, 2):
        v = from_pair(bi, bj, qi, qj, QQ(0))
        if v is not None:
            return v
    diag = [q for _, q in orth]
    m = len(orth)
    if m <= 6 and all(is_real(d) for d in diag):
        rng = range(-3, 4)
        for coeffs in itertools.product(rng, repeat=m):
            if not any(coeffs):
                continue
            if sum(c * c * d for c, d in zip(coeffs, diag)) == 0:
                return tuple(
                    sum((c * o[k] for c, (o, _) in zip(coeffs, orth)), QQ(0))
                    for k in range(len(basis[0]))
                )
    raise NoRationalSplitting(
        "no rational isotropic vector found; the form may be anisotropic over Q. "
        "Supply a pre-split Gram matrix or a reference plane."
    )


def _find_lagrangian(B: la.Matrix, gaussian: bool = False) -> list:
    rank = len(B)
    V = [tuple(QQ(1) if i == j else QQ(0) for i in range(rank)) for j in range(rank)]
    lag = []
    while V:
        e = _isotropic_in(B, V, gaussian)
        w = next((b for b in V if la.bilinear(B, e, b) != 0), None)
        if w is None:
            raise NoRationalSplitting("degenerate restriction during splitting")
        bew = la.bilinear(B, e, w)
        f = tuple(x - la.bilinear(B, w, w) / (2 * bew) * y for x, y in zip(w, e))
        lag.append(e)
        rows = (la.matvec(la.transpose(B), e), la.matvec(la.transpose(B), f))
        M = tuple(tuple(sum((r[k] * b[k] for k in range(rank)), QQ(0)) for b in V) for r in rows)
        coeffs = la.nullspace(M)
        V = [tuple(sum((c[i] * V[i][k] for i in range(len(V))), QQ(0)) for k in range(rank)) for c in coeffs]
    return lag


def dual_partners(B: la.Matrix, lam: Sequence[Sequence]) -> list:
    """Isotropic f_1..f_n with <e_k, f_l> = delta_kl/2 and <f_k, f_l> = 0."""
    n = len(lam)
    rows = tuple(la.matvec(la.transpose(B), e) for e in lam)
    ws = []
    for l in range(n):
        rhs = [QQ(1, 2) if k == l else QQ(0) for k in range(n)]
        ws.append(la.solve(rows, rhs))
    fs = []
    for l in range(n):
        f = ws[l]
        for k in range(n):
            c = la.bilinear(B, ws[k], ws[l])
            if c:
                f = tuple(x - c * y for x, y in zip(f, lam[k]))
        fs.append(f)
    return fs


def _coordinate_sign(B: la.Matrix, lam: Sequence[Sequence]) -> int:
    fs = dual_partners(B, lam)
    d = la.det(la.from_columns(list(lam) + fs))
    if d == 0:
        raise NotMaximalIsotropic("plane is not maximal isotropic")
    if not is_real(d):
        raise NoRationalSplitting("orientation determinant is not real; discriminant is not split")
    return 1 if d > 0 else -1


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadSpace:
    """Even-rank rational quadratic space with an orientation datum."""

    gram: la.Matrix
    names: tuple = ()
    orientation: int = 1
    reference: Subspace | None = None

    def __post_init__(self):
        B = la.mat(self.gram)
        object.__setattr__(self, "gram", B)
        r = len(B)
        if r == 0 or r % 2 or any(len(row) != r for row in B):
            raise ValueError("Gram matrix must be square of even size")
        if B != la.transpose(B):
            raise ValueError("Gram matrix must be symmetric")
        if la.det(B) == 0:
            raise ValueError("quadratic form is degenerate")
        if self.orientation not in (1, -1):
            raise ValueError("orientation unit must be +1 or -1")
        names = tuple(self.names) or tuple(f"E{k + 1}" for k in range(r))
        if len(names) != r or len(set(names)) != r:
            raise ValueError("need one distinct name per coordinate")
        object.__setattr__(self, "names", names)
        if self.reference is None:
            try:
                lag = _find_lagrangian(B)
            except NoRationalSplitting:
                try:
                    lag = _find_lagrangian(B, gaussian=True)
                except NoRationalSplitting:
                    return
            if _coordinate_sign(B, lag) < 0:
                fs = dual_partners(B, lag)
                lag = lag[:-1] + [fs[-1]]
            object.__setattr__(self, "reference", Subspace(lag))
        else:
            ref = self.reference
            if not isinstance(ref, Subspace):
                ref = Subspace(ref)
                object.__setattr__(self, "reference", ref)
            if ref.dim != r // 2 or any(la.bilinear(B, a, b) for a in ref.basis for b in ref.basis):
                raise NotMaximalIsotropic("reference plane is not maximal isotropic")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def n(self) -> int:
        return len(self.gram) // 2

    def q(self, v: Sequence):
        return la.bilinear(self.gram, v, v)

    def pair(self, v: Sequence, w: Sequence):
        return la.bilinear(self.gram, v, w)

    def q_poly(self, comps: Sequence[MultiPoly]) -> MultiPoly:
        """q(s, s) for a vector of polynomials."""
        B = self.gram
        out = comps[0] * 0
        for i in range(self.rank):
            for j in range(self.rank):
                if B[i][j] and not comps[i].is_zero() and not comps[j].is_zero():
                    out = out + comps[i] * comps[j] * B[i][j]
        return out

    def flipped(self) -> "QuadSpace":
        return QuadSpace(self.gram, self.names, -self.orientation, self.reference)

    def with_orientation(self, unit: int) -> "QuadSpace":
        return QuadSpace(self.gram, self.names, unit, self.reference)

    def require_reference(self) -> Subspace:
        if self.reference is None:
            raise NoRationalSplitting(
                "no maximal isotropic subspace found over Q or Q(i); supply a pre-split form"
            )
        return self.reference

    @property
    def rationally_split(self) -> bool:
        return self.reference is not None and self.reference.is_rational()

    def is_identity_form(self) -> bool:
        return self.gram == la.identity(self.rank)


# presets ------------------------------------------------------------------


def hyperbolic(n: int, names: Sequence[str] | None = None) -> QuadSpace:
    """sum X_k Y_k in coordinates ordered X_1, Y_1, ..., X_n, Y_n.

    For n = 2 the default names are X, Y, Z, W so that q = XY + ZW.
    """
    r = 2 * n
    B = [[QQ(0)] * r for _ in range(r)]
    for k in range(n):
        B[2 * k][2 * k + 1] = B[2 * k + 1][2 * k] = QQ(1, 2)
    if names is None:
        names = ("X", "Y", "Z", "W") if n == 2 else tuple(
            s for k in range(n) for s in (f"X{k + 1}", f"Y{k + 1}")
        )
    # start from the X-coordinate plane and let the sign rule pick the family
    lag = [tuple(QQ(1) if i == 2 * k else QQ(0) for i in range(r)) for k in range(n)]
    Bm = la.mat(B)
    if _coordinate_sign(Bm, lag) < 0:
        lag = lag[:-1] + [dual_partners(Bm, lag)[-1]]
    return QuadSpace(Bm, tuple(names), 1, Subspace(lag))


def sum_of_squares(rank: int, names: Sequence[str] | None = None) -> QuadSpace:
    names = names or tuple(f"X{k + 1}" for k in range(rank))
    return QuadSpace(la.identity(rank), tuple(names))


def eg2_form(names: Sequence[str] | None = None) -> QuadSpace:
    """X1X2 + X1X3 + X2X3 - X4^2 - X5^2 - X6^2."""
    h = QQ(1, 2)
    B = [
        [0, h, h, 0, 0, 0],
        [h, 0, h, 0, 0, 0],
        [h, h, 0, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, -1],
    ]
    return QuadSpace(la.mat(B), tuple(names or (f"X{k}" for k in range(1, 7))))


def preset(name: str, names: Sequence[str] | None = None) -> QuadSpace:
    import re

    name = name.replace(" ", "")
    m = re.fullmatch(r"hyperbolic\((\d+)\)", name)
    if m:
        return hyperbolic(int(m.group(1)), names)
    m = re.fullmatch(r"sum_of_squares\((\d+)\)", name)
    if m:
        return sum_of_squares(int(m.group(1)), names)
    if name == "eg2":
        return eg2_form(names)
    raise ValueError(f"unknown quadratic-form preset {name!r}")


# ---------------------------------------------------------------------------
# operations


def is_maximal_isotropic(E: QuadSpace, L: Subspace) -> bool:
    if L.ambient not in (0, E.rank):
        raise ValueError("subspace lives in a different ambient dimension")
    if L.dim != E.n:
        return False
    return all(E.pair(a, b) == 0 for a in L.basis for b in L.basis)


def isotropic_sign(E: QuadSpace, L: Subspace) -> int:
    """+1 iff dim(L ∩ reference) ≡ n mod 2, times the orientation unit."""
    if not is_maximal_isotropic(E, L):
        raise NotMaximalIsotropic("expected a maximal isotropic subspace")
    ref = E.require_reference()
    k = L.intersection_dim(ref)
    base = 1 if (E.n - k) % 2 == 0 else -1
    return base * E.orientation


@dataclass(frozen=True)
class Splitting:
    """Hyperbolic coordinates: columns of ``P`` are e_1..e_n, f_1..f_n."""

    space: QuadSpace
    P: la.Matrix
    P_inv: la.Matrix

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def lam(self) -> Subspace:
        return Subspace(la.columns(self.P)[: self.n])

    @property
    def dual(self) -> Subspace:
        return Subspace(la.columns(self.P)[self.n:])

    def to_split(self, comps: Sequence):
        """Coordinates (sigma, tau) of a vector (numbers or polynomials) in this basis."""
        r = self.space.rank
        out = []
        for i in range(r):
            acc = None
            for j in range(r):
                c = self.P_inv[i][j]
                if c:
                    term = comps[j] * c
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else comps[0] * 0)
        return tuple(out[: self.n]), tuple(out[self.n:])

    def from_split(self, sigma: Sequence, tau: Sequence):
        v = list(sigma) + list(tau)
        r = self.space.rank
        out = []
        for i in range(r):
            acc = None
            for j in range(r):
                c = self.P[i][j]
                if c:
                    term = v[j] * c
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else v[0] * 0)
        return tuple(out)

    def transformed(self, G: la.Matrix) -> "Splitting":
        P = la.matmul(G, self.P)
        return Splitting(self.space, P, la.inverse(P))


def contract_omega(sigma: Sequence):
    """sigma ⌟ ω for n = 2 in dual coordinates: (s1, s2) -> (-s2, s1)."""
    if len(sigma) != 2:
        raise ValueError("the volume-form contraction is defined here for n = 2")
    return (-sigma[1], sigma[0])


def splitting_from_plane(E: QuadSpace, lam: Sequence[Sequence]) -> Splitting:
    fs = dual_partners(E.gram, lam)
    P = la.from_columns(list(lam) + fs)
    return Splitting(E, P, la.inverse(P))


def positive_plane_basis(E: QuadSpace) -> list:
    ref = list(E.require_reference().basis)
    if E.orientation == 1:
        return ref
    fs = dual_partners(E.gram, ref)
    return ref[:-1] + [fs[-1]]


def negative_plane_basis(E: QuadSpace) -> list:
    pos = positive_plane_basis(E)
    fs = dual_partners(E.gram, pos)
    return pos[:-1] + [fs[-1]]


def hyperbolic_splitting(E: QuadSpace) -> Splitting:
    """Hyperbolic basis whose first half spans a positive maximal isotropic plane."""
    if not E.rationally_split:
        raise NoRationalSplitting(
            "the form has no rational maximal isotropic subspace (anisotropic part over Q); "
            "supply a pre-split Gram matrix or work with a field extension"
        )
    S = splitting_from_plane(E, positive_plane_basis(E))
    H = la.matmul(la.matmul(la.transpose(S.P), E.gram), S.P)
    if H != standard_hyperbolic_gram(E.n):
        raise AssertionError("splitting failed its defining identity")
    return S


def standard_hyperbolic_gram(n: int) -> la.Matrix:
    r = 2 * n
    return tuple(
        tuple(QQ(1, 2) if (j == i + n or i == j + n) else QQ(0) for j in range(r)) for i in range(r)
    )


@dataclass(frozen=True)
class RealForm:
    """Complex coordinate change P = re + i*im with P^T B P = I (columns orthonormal)."""

    re: la.Matrix
    im: la.Matrix

    def check(self, B: la.Matrix) -> bool:
        rr = la.matmul(la.matmul(la.transpose(self.re), B), self.re)
        ii = la.matmul(la.matmul(la.transpose(self.im), B), self.im)
        ri = la.matmul(la.matmul(la.transpose(self.re), B), self.im)
        ir = la.matmul(la.matmul(la.transpose(self.im), B), self.re)
        n = len(B)
        return la.sub(rr, ii) == la.identity(n) and la.add(ri, ir) == la.zeros(n, n)

    def coordinate_rows(self, B: la.Matrix) -> tuple[la.Matrix, la.Matrix]:
        """Rows (re, im) of P^T B, which maps a vector to its orthonormal coordinates."""
        return la.matmul(la.transpose(self.re), B), la.matmul(la.transpose(self.im), B)


def real_form_coordinates(E: QuadSpace) -> RealForm:
    """Orthonormal complex frame eps with q(eps_k, eps_l) = delta_kl.

    Built from a positive hyperbolic basis as eps_{2k-1} = e_k + f_k and
    eps_{2k} = i(e_k - f_k); this orders the frame compatibly with the orientation.
    """
    r = E.rank
    if E.is_identity_form():
        re = [list(row) for row in la.identity(r)]
        if E.orientation == -1:
            for i in range(r):
                re[i][r - 1] = -re[i][r - 1]
        return RealForm(la.mat(re), la.zeros(r, r))
    S = hyperbolic_splitting(E)
    cols = la.columns(S.P)
    n = E.n
    re_cols, im_cols = [], []
    zero = tuple(QQ(0) for _ in range(r))
    for k in range(n):
        e, f = cols[k], cols[n + k]
        re_cols += [tuple(a + b for a, b in zip(e, f)), zero]
        im_cols += [zero, tuple(a - b for a, b in zip(e, f))]
    rf = RealForm(la.from_columns(re_cols), la.from_columns(im_cols))
    if not rf.check(E.gram):
        raise AssertionError("real form failed its defining identity")
    return rf


def random_special_orthogonal(E: QuadSpace, seed: int = 0, skew: la.Matrix | None = None, spread: int = 2) -> la.Matrix:
    """Cayley transform (I + K)(I - K)^-1 of a B-skew K = B^-1 S, S skew-symmetric."""
    r = E.rank
    Binv = la.inverse(E.gram)
    I = la.identity(r)
    for attempt in range(20):
        if skew is None:
            rng = random.Random(f"{seed}:{attempt}")
            S = [[QQ(0)] * r for _ in range(r)]
            for i in range(r):
                for j in range(i + 1, r):
                    c = QQ(rng.choice((-1, 1)) * rng.randint(1, spread), rng.randint(1, 3))
                    S[i][j] = c
                    S[j][i] = -c
            S = la.mat(S)
        else:
            S = la.mat(skew)
            if S != la.scale(la.transpose(S), -1):
                raise ValueError("skew part must be skew-symmetric")
        K = la.matmul(Binv, S)
        try:
            G = la.matmul(la.add(I, K), la.inverse(la.sub(I, K)))
        except ZeroDivisionError:
            if skew is not None:
                raise
            continue
        if la.matmul(la.matmul(la.transpose(G), E.gram), G) != E.gram or la.det(G) != 1:
            raise AssertionError("Cayley transform is not special orthogonal")
        return G
    raise ArithmeticError("could not draw a nonsingular Cayley transform")


def generic_isotropic_plane(E: QuadSpace, sign: int, seed: int) -> Subspace:
    """A maximal isotropic plane of the given sign in general position."""
    base = positive_plane_basis(E) if sign > 0 else negative_plane_basis(E)
    G = random_special_orthogonal(E, seed)
    return Subspace(base).transform(G)


@dataclass(frozen=True)
class Envelopes:
    plus: Subspace
    minus: Subspace
    proj_plus: tuple  # point of P(Λ+) as (a, b)
    proj_minus: tuple  # point of P(Λ−) as (c, d)


def _proj(p, q, p2, q2):
    if p or q:
        return (p, q)
    return (p2, q2)


def isotropic_envelopes_n2(E: QuadSpace, v: Sequence) -> Envelopes:
    """Positive and negative maximal isotropic planes through an isotropic vector (rank 4)."""
    if E.rank != 4:
        raise ValueError("envelopes are defined here for rank 4")
    v = tuple(to_q(x) for x in v)
    if not any(v):
        raise ZeroVector("zero vector")
    if E.q(v) != 0:
        raise NotIsotropic(f"q(v) = {E.q(v)} is nonzero", E.q(v))
    S = hyperbolic_splitting(E)
    (X, W), (Y, Z) = S.to_split(v)
    a, b = _proj(X, W, -Z, Y)
    c, d = _proj(X, Z, -W, Y)

    def back(Xs, Ys, Zs, Ws):
        return S.from_split((Xs, Ws), (Ys, Zs))

    plus = Subspace([back(c, 0, d, 0), back(0, -d, 0, c)])
    minus = Subspace([back(a, 0, 0, b), back(0, -b, a, 0)])
    return Envelopes(plus, minus, (a, b), (c, d))


def qq_inverse(E: QuadSpace, ab: Sequence, cd: Sequence) -> tuple:
    """Point [ac : -bd : ad : bc] in split coordinates (X, Y, Z, W), mapped back."""
    a, b = (to_q(x) for x in ab)
    c, d = (to_q(x) for x in cd)
    S = hyperbolic_splitting(E)
    X, Y, Z, W = a * c, -b * d, a * d, b * c
    return S.from_split((X, W), (Y, Z))
