import numpy as np
import pytest

from isohopf.errors import BudgetExceeded, ResidualTooLarge
from isohopf.quadratic import hyperbolic
from isohopf.routes import route_rh3
from isohopf.section import validate
from isohopf.suite import running_example
from isohopf.winding import (
    MAX_SAMPLES,
    identity_map,
    oh1_check,
    real_split_section,
    sphere_map_degree,
    sphere_points,
    tangent_frames,
)

V = ("x", "y")
E = hyperbolic(2)


def sec(*comps, space=E):
    return validate(V, space, comps)


def test_sphere_points_are_unit():
    p = sphere_points(3, 1000, seed=1)
    assert p.shape == (1000, 4)
    assert np.allclose(np.linalg.norm(p, axis=1), 1.0)


def test_tangent_frames_oriented():
    p = sphere_points(3, 500, seed=2)
    T = tangent_frames(p)
    M = np.concatenate([p[:, :, None], T], axis=2)
    assert np.allclose(np.linalg.det(M), 1.0)
    assert np.allclose(np.einsum("nij,nik->njk", T, T), np.eye(3))


def test_identity_degree_one():
    r = sphere_map_degree(identity_map, 3)
    assert r.degree == 1 and r.residual < 0.05


def test_antipodal_degree_one_in_odd_dimension():
    def antipodal(p):
        val, jac = identity_map(p)
        return -val, -jac

    assert sphere_map_degree(antipodal, 3).degree == 1


def test_reflection_degree_minus_one():
    R = np.diag([1.0, 1.0, 1.0, -1.0])

    def reflect(p):
        return p @ R, np.broadcast_to(R, (p.shape[0], 4, 4))

    assert sphere_map_degree(reflect, 3).degree == -1


def test_holomorphic_square_has_degree_two():
    # (z1, z2) -> (z1^2, z2) is a holomorphic map with local multiplicity 2
    def square(p):
        z1 = p[:, 0] + 1j * p[:, 1]
        w = z1 * z1
        N = p.shape[0]
        val = np.stack([w.real, w.imag, p[:, 2], p[:, 3]], axis=1)
        jac = np.zeros((N, 4, 4))
        d = 2 * z1
        jac[:, 0, 0], jac[:, 0, 1] = d.real, -d.imag
        jac[:, 1, 0], jac[:, 1, 1] = d.imag, d.real
        jac[:, 2, 2] = jac[:, 3, 3] = 1.0
        return val, jac

    assert sphere_map_degree(square, 3).degree == 2


def test_budget_doubling_stable():
    F = real_split_section(running_example(2, 1, 0))
    a = sphere_map_degree(F, 3, samples=100_000)
    b = sphere_map_degree(F, 3, samples=200_000)
    assert a.degree == b.degree == 2


def test_budget_cap():
    with pytest.raises(BudgetExceeded):
        sphere_map_degree(identity_map, 3, samples=MAX_SAMPLES + 1)


def test_residual_too_large():
    def half(p):
        val, jac = identity_map(p)
        return val, 0.5 ** (1 / 3) * jac

    with pytest.raises(ResidualTooLarge):
        sphere_map_degree(half, 3, samples=20_000)


def test_real_part_nonvanishing_on_sphere():
    F = real_split_section(sec("x^2", "y^2", "x*y", "-x*y"))
    val, _ = F(sphere_points(3, 10_000, seed=7))
    assert np.min(np.linalg.norm(val, axis=1)) > 1e-6


def test_real_and_imaginary_parts_have_equal_length():
    s = running_example(3, 2, 1)
    p = sphere_points(3, 2000, seed=3)
    a, _ = real_split_section(s, "plus")(p)
    b, _ = real_split_section(s, "minus")(p)
    assert np.allclose(np.linalg.norm(a, axis=1), np.linalg.norm(b, axis=1))


@pytest.mark.parametrize(
    "comps,expected",
    [(("x^2", "y^2", "x*y", "-x*y"), 0), (("x", "0", "y", "0"), -1), (("x", "0", "0", "y"), 1)],
)
def test_oh1_examples(comps, expected):
    r = oh1_check(sec(*comps))
    assert r.sqrt_e == expected
    assert r.diagnostics["residual"] < 0.25


@pytest.mark.parametrize("d,i,j", [(2, 1, 0), (2, 0, 1), (3, 2, 1)])
def test_oh1_grid_spots(d, i, j):
    s = running_example(d, i, j)
    r = oh1_check(s)
    assert r.sqrt_e == d * (i - j) == route_rh3(s).sqrt_e


def test_oh1_orientation_flip():
    assert oh1_check(running_example(2, 1, 0, orientation=-1)).sqrt_e == -2
