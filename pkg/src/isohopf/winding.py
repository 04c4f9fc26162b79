"""Winding-number verifier: degree of the real part of a section on the unit sphere."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.stats import norm, qmc

from .errors import BudgetExceeded, ResidualTooLarge, WindingMismatch
from .poly import MultiPoly
from .quadratic import real_form_coordinates
from .routes import RefinedIndex
from .section import IsoSection

DEFAULT_SAMPLES = 200_000
MAX_SAMPLES = 5_000_000
BATCH = 50_000


@dataclass(frozen=True)
class DegreeResult:
    degree: int
    value: float
    residual: float
    samples: int


def sphere_points(m: int, samples: int, seed: int = 0) -> np.ndarray:
    """Low-discrepancy points on S^m in R^{m+1} (Sobol mapped through the Gaussian)."""
    sob = qmc.Sobol(d=m + 1, scramble=True, seed=seed)
    k = int(np.ceil(np.log2(max(samples, 2))))
    u = sob.random_base2(k)[:samples]
    u = np.clip(u, 1e-12, 1 - 1e-12)
    g = norm.ppf(u)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def tangent_frames(p: np.ndarray) -> np.ndarray:
    """Orthonormal frames T (N, m+1, m) with det[p | T] = +1 (outward normal first)."""
    N, r = p.shape
    e0 = np.zeros(r)
    e0[0] = 1.0
    w = e0[None, :] - p
    nw = np.linalg.norm(w, axis=1, keepdims=True)
    near = nw[:, 0] < 1e-9
    w = np.where(near[:, None], 0.0, w / np.where(nw == 0, 1, nw))
    # Householder H = I - 2 w w^T sends e0 to p; its other columns span the tangent space
    H = np.eye(r)[None, :, :] - 2 * w[:, :, None] * w[:, None, :]
    T = H[:, :, 1:].copy()
    # det H = -1 unless H = I, so flip one vector to orient the frame
    T[~near, :, 0] *= -1
    return T


def sphere_map_degree(
    F: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
    m: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> DegreeResult:
    """Degree of p -> F(p)/|F(p)| on S^m.

    ``F`` maps an (N, m+1) array of points to values (N, m+1) and ambient Jacobians
    (N, m+1, m+1). The pullback volume form is averaged over quasi-random samples.
    """
    if samples > MAX_SAMPLES:
        raise BudgetExceeded(f"{samples} samples exceeds the cap {MAX_SAMPLES}")
    pts = sphere_points(m, samples, seed)
    total = 0.0
    for start in range(0, len(pts), BATCH):
        p = pts[start : start + BATCH]
        val, jac = F(p)
        T = tangent_frames(p)
        cols = np.einsum("nij,njk->nik", jac, T)
        M = np.concatenate([val[:, :, None], cols], axis=2)
        nrm = np.linalg.norm(val, axis=1)
        if np.any(nrm == 0):
            raise ValueError("map vanishes at a sample point")
        total += float(np.sum(np.linalg.det(M) / nrm ** (m + 1)))
    value = total / len(pts)
    deg = int(round(value))
    residual = abs(value - deg)
    if residual > 0.25:
        raise ResidualTooLarge(f"degree estimate {value:.4f} is not near an integer; raise the sample budget")
    return DegreeResult(deg, value, residual, len(pts))


def identity_map(p: np.ndarray):
    N, r = p.shape
    return p, np.broadcast_to(np.eye(r), (N, r, r))


def _complex_components(s: IsoSection) -> list[tuple[MultiPoly, MultiPoly]]:
    """Orthonormal-frame coordinates c_k = A_k + i B_k of the section."""
    rf = real_form_coordinates(s.space)
    R, I = rf.coordinate_rows(s.space.gram)
    out = []
    zero = MultiPoly.zero(s.variables)
    for k in range(s.space.rank):
        A = sum((p * R[k][j] for j, p in enumerate(s.components) if R[k][j]), zero)
        B = sum((p * I[k][j] for j, p in enumerate(s.components) if I[k][j]), zero)
        out.append((A, B))
    return out


def real_split_section(s: IsoSection, part: str = "plus") -> Callable:
    """The real map a (part "plus") or b ("minus") of s = a + i b on S^{2n-1}.

    Points of S^{2n-1} are ordered (Re x_1, Im x_1, ..., Re x_n, Im x_n).
    """
    comps = _complex_components(s)
    V = s.variables
    vals = []
    ders = []
    for A, B in comps:
        fa, fb = A.numeric(), B.numeric()
        vals.append((fa, fb))
        ders.append([(A.derivative(v).numeric(), B.derivative(v).numeric()) for v in V])
    n = len(V)

    def F(p: np.ndarray):
        z = [p[:, 2 * k] + 1j * p[:, 2 * k + 1] for k in range(n)]
        N = p.shape[0]
        r = len(comps)
        val = np.empty((N, r))
        jac = np.empty((N, r, 2 * n))
        for k, ((fa, fb), dk) in enumerate(zip(vals, ders)):
            c = np.broadcast_to(fa(*z) + 1j * fb(*z), (N,))
            val[:, k] = c.real if part == "plus" else c.imag
            for m, (da, db) in enumerate(dk):
                dc = np.broadcast_to(da(*z) + 1j * db(*z), (N,))
                # holomorphic c: d/dRe = c', d/dIm = i c'
                if part == "plus":
                    jac[:, k, 2 * m] = dc.real
                    jac[:, k, 2 * m + 1] = -dc.imag
                else:
                    jac[:, k, 2 * m] = dc.imag
                    jac[:, k, 2 * m + 1] = dc.real
        return val, jac

    return F


def oh1_check(s: IsoSection, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> RefinedIndex:
    m = 2 * s.n - 1
    plus = sphere_map_degree(real_split_section(s, "plus"), m, samples, seed)
    minus = sphere_map_degree(real_split_section(s, "minus"), m, samples, seed)
    if plus.degree != minus.degree:
        raise WindingMismatch(f"deg s+ = {plus.degree} but deg s- = {minus.degree}")
    return RefinedIndex(
        plus.degree,
        "oh1",
        diagnostics={
            "deg_plus": plus.value,
            "deg_minus": minus.value,
            "residual": max(plus.residual, minus.residual),
            "samples": plus.samples,
        },
    )
