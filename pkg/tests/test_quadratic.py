import random

import pytest

from isohopf import linalg as la
from isohopf.errors import NoRationalSplitting, NotIsotropic, NotMaximalIsotropic, ZeroVector
from isohopf.poly import QQ
from isohopf.quadratic import (
    QuadSpace,
    Subspace,
    coordinate_plane,
    eg2_form,
    hyperbolic,
    hyperbolic_splitting,
    is_maximal_isotropic,
    isotropic_envelopes_n2,
    isotropic_sign,
    negative_plane_basis,
    positive_plane_basis,
    preset,
    qq_inverse,
    random_special_orthogonal,
    real_form_coordinates,
    standard_hyperbolic_gram,
    sum_of_squares,
)

# coordinates ordered X, Y, Z, W with q = XY + ZW
X, Y, Z, W = 0, 1, 2, 3


@pytest.fixture
def E():
    return hyperbolic(2)


def plane(*idx):
    return coordinate_plane(4, idx)


def test_xy_zw_gram(E):
    v = (1, 2, 3, 4)
    assert E.q(v) == 1 * 2 + 3 * 4
    assert E.names == ("X", "Y", "Z", "W")


@pytest.mark.parametrize(
    "idx,expected", [((X, W), True), ((X, Z), True), ((Y, Z), True), ((Y, W), True), ((X, Y), False), ((X,), False)]
)
def test_is_maximal_isotropic(E, idx, expected):
    assert is_maximal_isotropic(E, plane(*idx)) is expected


def test_reference_plane(E):
    assert E.reference.same_as(plane(X, W))


@pytest.mark.parametrize("idx,sign", [((X, W), 1), ((Y, Z), 1), ((X, Z), -1), ((Y, W), -1)])
def test_coordinate_plane_signs(E, idx, sign):
    assert isotropic_sign(E, plane(*idx)) == sign
    assert isotropic_sign(E.flipped(), plane(*idx)) == -sign


def test_sign_rejects_non_isotropic(E):
    with pytest.raises(NotMaximalIsotropic):
        isotropic_sign(E, plane(X, Y))


def _random_planes(E, count, seed):
    out = []
    for k in range(count):
        G = random_special_orthogonal(E, seed=seed + k)
        base = positive_plane_basis(E) if k % 2 == 0 else negative_plane_basis(E)
        out.append(Subspace(base).transform(G))
    return out


@pytest.mark.parametrize("space", [hyperbolic(2), hyperbolic(3), eg2_form()], ids=["h2", "h3", "eg2"])
def test_parity_law_random(space):
    planes = _random_planes(space, 6, seed=41)
    for L in planes:
        for M in planes:
            k = L.intersection_dim(M)
            assert isotropic_sign(space, L) * isotropic_sign(space, M) == (-1) ** (space.n - k)


@pytest.mark.parametrize("space", [hyperbolic(2), hyperbolic(3)], ids=["h2", "h3"])
def test_sign_invariant_under_special_orthogonal(space):
    for L in (Subspace(positive_plane_basis(space)), Subspace(negative_plane_basis(space))):
        for seed in range(5):
            G = random_special_orthogonal(space, seed=seed)
            assert isotropic_sign(space, L.transform(G)) == isotropic_sign(space, L)


def test_hyperbolic_splitting_identity(E):
    S = hyperbolic_splitting(E)
    assert la.matmul(la.matmul(la.transpose(S.P), E.gram), S.P) == standard_hyperbolic_gram(2)
    assert S.lam.same_as(plane(X, W))
    assert S.P == la.from_columns([la.identity(4)[k] for k in (X, W, Y, Z)])


def test_hyperbolic_splitting_rank6():
    E3 = hyperbolic(3)
    S = hyperbolic_splitting(E3)
    assert la.matmul(la.matmul(la.transpose(S.P), E3.gram), S.P) == standard_hyperbolic_gram(3)
    assert isotropic_sign(E3, S.lam) == 1


def test_eg2_has_no_rational_splitting():
    # signature (1, 5): a rational Lagrangian would force signature (3, 3)
    E2 = eg2_form()
    assert not E2.rationally_split
    assert E2.reference is not None and is_maximal_isotropic(E2, E2.reference)
    assert isotropic_sign(E2, E2.reference) == 1
    with pytest.raises(NoRationalSplitting):
        hyperbolic_splitting(E2)


def test_sum_of_squares_not_rationally_split():
    E4 = sum_of_squares(4)
    assert not E4.rationally_split
    with pytest.raises(NoRationalSplitting):
        hyperbolic_splitting(E4)


def test_presets():
    assert preset("hyperbolic(2)").gram == hyperbolic(2).gram
    assert preset("sum_of_squares(4)").is_identity_form()
    assert preset("eg2").gram == eg2_form().gram
    with pytest.raises(ValueError):
        preset("nonsense")


def test_invalid_forms():
    with pytest.raises(ValueError):
        QuadSpace(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(ValueError):
        QuadSpace(((1, 1), (0, 1)))
    with pytest.raises(ValueError):
        QuadSpace(((1, 1), (1, 1)))
    with pytest.raises(NotMaximalIsotropic):
        QuadSpace(hyperbolic(2).gram, reference=plane(X, Y))


@pytest.mark.parametrize("space", [hyperbolic(1), hyperbolic(2), hyperbolic(3), sum_of_squares(4)], ids=str)
def test_real_form_identity(space):
    rf = real_form_coordinates(space)
    assert rf.check(space.gram)


def test_real_form_sum_of_squares_is_identity():
    rf = real_form_coordinates(sum_of_squares(4))
    assert rf.re == la.identity(4) and rf.im == la.zeros(4, 4)


def test_real_form_rank_two():
    rf = real_form_coordinates(hyperbolic(1))
    # X = u + i v, Y = u - i v with X Y = u^2 + v^2
    assert rf.re == la.mat([[1, 0], [1, 0]])
    assert rf.im == la.mat([[0, 1], [0, -1]])


def test_special_orthogonal_zero_skew_is_identity(E):
    assert random_special_orthogonal(E, skew=la.zeros(4, 4)) == la.identity(4)


@pytest.mark.parametrize("space", [hyperbolic(2), hyperbolic(3), eg2_form(), sum_of_squares(4)], ids=str)
def test_special_orthogonal_preserves_form(space):
    for seed in range(4):
        G = random_special_orthogonal(space, seed=seed)
        assert la.matmul(la.matmul(la.transpose(G), space.gram), G) == space.gram
        assert la.det(G) == 1


def test_special_orthogonal_seeds(E):
    assert random_special_orthogonal(E, seed=1) == random_special_orthogonal(E, seed=1)
    assert random_special_orthogonal(E, seed=1) != random_special_orthogonal(E, seed=2)


def test_envelopes_examples(E):
    env = isotropic_envelopes_n2(E, qq_inverse(E, (1, 0), (1, 0)))
    assert env.proj_minus == (1, 0) and env.proj_plus == (1, 0)
    env = isotropic_envelopes_n2(E, (1, 0, 0, 0))
    assert (env.proj_minus, env.proj_plus) == ((1, 0), (1, 0))
    assert env.plus.same_as(plane(X, W)) and env.minus.same_as(plane(X, Z))


def _proportional(u, v):
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def test_envelopes_random_round_trip(E):
    rng = random.Random(3)
    for _ in range(25):
        ab = (QQ(rng.randint(-5, 5)), QQ(rng.randint(1, 5)))
        cd = (QQ(rng.randint(1, 5)), QQ(rng.randint(-5, 5)))
        v = qq_inverse(E, ab, cd)
        assert E.q(v) == 0
        env = isotropic_envelopes_n2(E, v)
        assert isotropic_sign(E, env.plus) == 1 and isotropic_sign(E, env.minus) == -1
        assert env.plus.contains(v) and env.minus.contains(v)
        assert env.plus.intersection_dim(env.minus) == 1
        assert _proportional(qq_inverse(E, env.proj_plus, env.proj_minus), v)


def test_envelopes_errors(E):
    with pytest.raises(ZeroVector):
        isotropic_envelopes_n2(E, (0, 0, 0, 0))
    with pytest.raises(NotIsotropic):
        isotropic_envelopes_n2(E, (1, 1, 0, 0))
