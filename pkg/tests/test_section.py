import pytest

from isohopf.errors import BadWeights, NotIsotropic, PerturbationFailed, ZeroBaseWeight, ZeroLocusNotOriginOnly
from isohopf.poly import parse_poly
from isohopf.quadratic import contract_omega, hyperbolic, hyperbolic_splitting
from isohopf.section import TorusData, factorize_n2, split_sigma_tau, validate
from isohopf.suite import running_example

V = ("x", "y")
E = hyperbolic(2)


def P(t):
    return parse_poly(t, V)


def sec(*comps, torus=None, space=E):
    return validate(V, space, comps, torus)


def test_validate_flagship():
    s = sec("x^2", "y^2", "x*y", "-x*y")
    assert s.colength == 3
    assert s.homogeneous_degree() == 2


def test_validate_not_isotropic_carries_residual():
    with pytest.raises(NotIsotropic) as err:
        sec("x^2", "y^2", "x*y", "x*y")
    assert err.value.residual == P("2*x^2*y^2")


def test_validate_positive_dimensional_zero_locus():
    with pytest.raises(ZeroLocusNotOriginOnly):
        sec("x", "0", "0", "0")


def test_validate_zero_away_from_origin():
    # (x - 1, 0, y, 0) vanishes only at (1, 0)
    with pytest.raises(ZeroLocusNotOriginOnly):
        sec("x - 1", "0", "y", "0")


def test_validate_empty_zero_locus():
    assert sec("1", "0", "0", "0").colength == 0


def test_validate_shape_errors():
    with pytest.raises(ValueError):
        validate(V, E, ["x", "y", "0"])
    with pytest.raises(ValueError):
        validate(("x",), E, ["x", "0", "0", "0"])


def test_validate_torus_weights():
    s = sec("x^2", "y^2", "x*y", "-x*y", torus=TorusData((1, -1), (2, -2, 0, 0)))
    assert s.torus.fiber == (2, -2, 0, 0)
    with pytest.raises(BadWeights):
        sec("x^2", "y^2", "x*y", "-x*y", torus=TorusData((1, -1), (2, -2, 1, 0)))
    with pytest.raises(BadWeights):
        sec("x^2", "y^2", "x*y", "-x*y", torus=TorusData((1, 1), (2, -2, 0, 0)))
    with pytest.raises(ZeroBaseWeight):
        sec("x^2", "y^2", "x*y", "-x*y", torus=TorusData((1, 0), (2, 0, 1, -1)))


def test_split_flagship():
    sigma, tau = split_sigma_tau(sec("x^2", "y^2", "x*y", "-x*y"))
    assert sigma == (P("x^2"), P("-x*y"))
    assert tau == (P("y^2"), P("x*y"))


@pytest.mark.parametrize("d,i,j", [(2, 1, 1), (3, 2, 1), (4, 1, 3), (3, 3, 0)])
def test_split_running_example(d, i, j):
    sigma, tau = split_sigma_tau(running_example(d, i, j))
    assert sigma == (P(f"x^{d}"), P(f"-x^{d - i}*y^{d - j}"))
    assert tau == (P(f"y^{d}"), P(f"x^{i}*y^{j}"))


def test_split_with_zero_dual_half():
    sigma, tau = split_sigma_tau(sec("x", "0", "0", "y"))
    assert tau == (P("0"), P("0"))
    assert sigma == (P("x"), P("y"))


@pytest.mark.parametrize("d,i,j", [(2, 1, 1), (3, 2, 1), (4, 3, 2), (4, 1, 3), (2, 0, 2)])
def test_factorize_running_example(d, i, j):
    fac = factorize_n2(running_example(d, i, j))
    assert not fac.perturbed
    assert fac.f == P(f"x^{d - i}")
    assert fac.g == P(f"y^{j}")
    assert fac.sigma0 == (P(f"x^{i}"), P(f"-y^{d - j}"))
    assert fac.tau0 == (P(f"y^{d - j}"), P(f"x^{i}"))
    assert fac.tau0 == contract_omega(fac.sigma0)


def test_factorize_simple_zero():
    fac = factorize_n2(sec("x", "0", "y", "0"))
    assert (fac.f, fac.g) == (P("x"), P("y"))
    assert fac.sigma0 == (P("1"), P("0"))
    assert fac.tau0 == (P("0"), P("1"))


def test_factorize_primitive_sigma():
    fac = factorize_n2(sec("x", "y", "-x", "y"))
    assert fac.f == P("1")


def test_factorize_perturbs_when_half_vanishes():
    s = sec("x", "0", "0", "y")
    fac = factorize_n2(s, seed=3)
    assert fac.perturbed
    sigma, tau = fac.splitting.to_split(s.components)
    assert fac.sigma == sigma and fac.tau == tau
    assert any(not p.is_zero() for p in sigma) and any(not p.is_zero() for p in tau)


def test_factorize_reconstructs_and_is_seed_stable():
    s = running_example(3, 2, 1)
    a, b = factorize_n2(s, seed=0), factorize_n2(s, seed=9)
    assert (a.f, a.g, a.sigma0) == (b.f, b.g, b.sigma0)
    sigma, tau = split_sigma_tau(s, hyperbolic_splitting(E))
    assert a.sigma == sigma and a.tau == tau


def test_factorize_retry_budget():
    with pytest.raises(PerturbationFailed):
        factorize_n2(sec("x", "0", "0", "y"), retries=-1)


def test_factorize_requires_rank_four():
    s = validate(("x", "y", "z"), hyperbolic(3), ["x", "0", "y", "0", "z", "0"])
    with pytest.raises(ValueError):
        factorize_n2(s)
