import random

import pytest
import sympy

from isohopf.errors import EmptyScheme, NotContained, NotFiniteLength, NotZeroDimensional, ResourceError
from isohopf.groebner import (
    PolyIdeal,
    PolyModule,
    colon,
    eliminate,
    groebner_basis,
    matrix_image,
    module_kernel,
    projective_degree,
    saturate,
    subquotient_length,
)
from isohopf.poly import GREVLEX, LEX, MultiPoly, parse_poly

V = ("x", "y")


def I(*texts, variables=V):
    return PolyIdeal(variables, [parse_poly(t, variables) for t in texts])


def P(t, variables=V):
    return parse_poly(t, variables)


def sympy_basis(ideal, order):
    syms = sympy.symbols(ideal.variables)
    loc = dict(zip(ideal.variables, syms))
    gens = [sympy.sympify(str(g).replace("^", "**"), locals=loc) for g in ideal.gens]
    G = sympy.groebner(gens, *syms, order=order)
    return {sympy.Poly(g, *syms).monic() for g in G.exprs}


def ours_as_sympy(basis, variables):
    syms = sympy.symbols(variables)
    loc = dict(zip(variables, syms))
    return {sympy.Poly(sympy.sympify(str(g).replace("^", "**"), locals=loc), *syms).monic() for g in basis}


def test_lex_example():
    basis = groebner_basis(I("y - x^2", "x*y"), LEX)
    # lex with x > y is the default variable order; here y is listed second, so use (y, x)
    J = PolyIdeal(("y", "x"), [P("y - x^2", ("y", "x")), P("x*y", ("y", "x"))])
    assert set(J.groebner(LEX)) == {P("y - x^2", ("y", "x")), P("x^3", ("y", "x"))}
    assert len(basis) >= 2


@pytest.mark.parametrize("gens,expected", [(("x", "y"), {"x", "y"}), (("x^2", "y^2", "x*y"), {"x^2", "x*y", "y^2"})])
def test_trivial_bases(gens, expected):
    assert set(I(*gens).groebner()) == {P(e) for e in expected}


def _random_system(rng, W, count, max_exp):
    gens = []
    for _ in range(count):
        p = MultiPoly.zero(W)
        for _ in range(3):
            p = p + MultiPoly.monomial(W, [rng.randint(0, max_exp) for _ in W], rng.randint(-3, 3))
        gens.append(p)
    return PolyIdeal(W, gens)


def test_grevlex_matches_sympy_random():
    rng = random.Random(17)
    for _ in range(12):
        ideal = _random_system(rng, ("x", "y", "z"), 3, 2)
        assert ours_as_sympy(ideal.groebner(GREVLEX), ideal.variables) == sympy_basis(ideal, "grevlex")


def test_lex_matches_sympy_random():
    rng = random.Random(19)
    for _ in range(12):
        ideal = _random_system(rng, V, 2, 3)
        assert ours_as_sympy(ideal.groebner(LEX), V) == sympy_basis(ideal, "lex")


def test_groebner_idempotent_and_reduces_generators():
    ideal = I("x^3 - 2*x*y", "x^2*y - 2*y^2 + x")
    basis = ideal.groebner()
    again = PolyIdeal(V, basis).groebner()
    assert set(basis) == set(again)
    assert all(ideal.normal_form(g).is_zero() for g in ideal.gens)


@pytest.mark.parametrize(
    "gens,expected",
    [(("x^2", "y^2", "x*y"), 3), (("x", "y"), 1), (("x", "y^1"), 1), (("x^2", "y^3"), 6), (("x^2 - y", "y^2"), 4)],
)
def test_colength_examples(gens, expected):
    ideal = I(*gens)
    assert ideal.colength() == expected
    assert ideal.colength(LEX) == expected


@pytest.mark.parametrize("d,i,j", [(2, 1, 1), (3, 2, 1), (4, 3, 2), (4, 1, 0)])
def test_colength_running_factor(d, i, j):
    assert I(f"x^{i}", f"y^{d - j}").colength() == i * (d - j)


def test_colength_not_zero_dimensional():
    with pytest.raises(NotZeroDimensional):
        I("x*y").colength()


def test_colength_order_independent_random():
    rng = random.Random(23)
    for _ in range(10):
        gens = [P(f"x^{rng.randint(1, 3)} + {rng.randint(-2, 2)}*y"), P(f"y^{rng.randint(1, 3)} + {rng.randint(-2, 2)}*x*y")]
        ideal = PolyIdeal(V, gens)
        if ideal.is_zero_dimensional():
            assert ideal.colength(GREVLEX) == PolyIdeal(V, gens).colength(LEX)


def test_bezout_random_complete_intersections():
    rng = random.Random(29)
    for _ in range(10):
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        f = sum((MultiPoly.monomial(V, (k, t), rng.randint(1, 9) * rng.choice((1, -1))) for k in range(a + 1) for t in range(a + 1 - k)), MultiPoly.zero(V))
        g = sum((MultiPoly.monomial(V, (k, t), rng.randint(1, 9) * rng.choice((1, -1))) for k in range(b + 1) for t in range(b + 1 - k)), MultiPoly.zero(V))
        assert PolyIdeal(V, [f, g]).colength() == a * b


def test_saturation_examples():
    # x*(x, y) saturated by x is the unit ideal; the one-step colon is (x, y)
    assert saturate(I("x^2", "x*y"), P("x")).is_unit()
    assert colon(I("x^2", "x*y"), P("x")).equals(I("x", "y"))
    assert saturate(I("x"), P("y")).equals(I("x"))
    assert saturate(I("x*y"), P("x")).equals(I("y"))


def test_saturation_idempotent_and_monotone():
    J = I("x^2*y - x*y^2", "x^3*y")
    S = saturate(J, P("x"))
    assert S.contains_ideal(J)
    assert saturate(S, P("x")).equals(S)


def test_eliminate_examples():
    W = ("x", "y", "z")
    E = eliminate(I("y - x^2", "z - x^3", variables=W), ["x"])
    assert E.contains(P("z^2 - y^3", ("y", "z")))
    assert eliminate(I("x"), ["x"]).gens == ()
    assert eliminate(I("x - y"), ["x"]).gens == ()


def test_projective_degree_examples():
    W = ("X", "Y", "Z", "T")
    line = PolyIdeal(W, [P("X", W), P("Y - 2*Z", W)])
    assert projective_degree(line) == 1
    conic = PolyIdeal(W, [P("X*Y - Z^2", W), P("T - X - 3*Y + 2*Z", W)])
    assert projective_degree(conic) == 2
    with pytest.raises(EmptyScheme):
        projective_degree(PolyIdeal(("X", "Y", "Z"), [P(v, ("X", "Y", "Z")) for v in "XYZ"]))


def test_projective_degree_twisted_cubic():
    W = ("A", "B", "C", "D")
    cubic = PolyIdeal(W, [P(t, W) for t in ("A*C - B^2", "B*D - C^2", "A*D - B*C")])
    assert projective_degree(cubic) == 3


def test_module_kernel_koszul():
    K = module_kernel([[P("x"), P("y")]], V)
    assert K.contains((P("y"), P("-x")))
    assert all((P("x") * v[0] + P("y") * v[1]).is_zero() for v in K.gens)
    assert PolyModule(2, V, [(P("y"), P("-x"))]).contains(K.gens[0])


@pytest.mark.parametrize("d,i,j", [(2, 1, 1), (3, 2, 1), (4, 1, 2)])
def test_module_kernel_running_example(d, i, j):
    A = [[P(f"y^{d}"), P(f"x^{d - i}*y^{d - j}")], [P(f"x^{i}*y^{j}"), P(f"x^{d}")]]
    K = module_kernel(A, V)
    gen = (P(f"x^{d - i}"), P(f"-y^{j}"))
    assert K.contains(gen)
    assert PolyModule(2, V, [gen]).contains(K.gens[0]) and len(K.gens) == 1
    for v in K.gens:
        assert all((row[0] * v[0] + row[1] * v[1]).is_zero() for row in A)


def test_module_kernel_identity_is_zero():
    one, zero = P("1"), P("0")
    assert module_kernel([[one, zero], [zero, one]], V).gens == ()


def test_subquotient_examples():
    one, zero = P("1"), P("0")
    ker = PolyModule(2, V, [(one, zero)])
    im = PolyModule(2, V, [(P("x"), zero), (P("y"), zero)])
    assert subquotient_length(ker, im) == 1
    assert subquotient_length(ker, ker) == 0
    with pytest.raises(NotContained):
        subquotient_length(im, ker)
    with pytest.raises(NotFiniteLength):
        subquotient_length(ker, PolyModule(2, V, [(P("x"), zero)]))


def test_subquotient_additivity():
    one, zero = P("1"), P("0")
    K = PolyModule(2, V, [(one, zero), (zero, one)])
    M = PolyModule(2, V, [(P("x"), zero), (P("y"), zero), (zero, P("x^2")), (zero, P("y"))])
    N = PolyModule(2, V, [(P("x^2"), zero), (P("x*y"), zero), (P("y^2"), zero), (zero, P("x^2")), (zero, P("y"))])
    assert subquotient_length(K, M) + subquotient_length(M, N) == subquotient_length(K, N)


def test_running_example_cohomology_lengths():
    # d = 2, i = j = 1: both cohomology lengths of the rank-2 complex are 1
    A = [[P("y^2"), P("x*y")], [P("x*y"), P("x^2")]]
    Bm = [[P("x^2"), P("-x*y")], [P("-x*y"), P("y^2")]]
    assert subquotient_length(module_kernel(A, V), matrix_image(Bm, V)) == 1
    assert subquotient_length(module_kernel(Bm, V), matrix_image(A, V)) == 1


def test_step_budget():
    gens = ("x^3*y - 2*y^2 + x", "x*y^3 - x^2 + 3*y")
    with pytest.raises(ResourceError):
        I(*gens).groebner(budget=1)
    assert I(*gens).groebner(budget=10**4)
