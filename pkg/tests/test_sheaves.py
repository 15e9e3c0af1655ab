import random

import pytest

from p1sheaf.rings import K_LAURENT, K_X, K_XINV, QQ, Field, NotInvertible, Poly, PolyMatrix, parse_poly
from p1sheaf.sheaves.charts import chart_extend, chart_restrict, module_hom_dimension
from p1sheaf.sheaves.classify import classify
from p1sheaf.sheaves.hom import HomSpace
from p1sheaf.sheaves.modules import FpModule
from p1sheaf.sheaves.ops import (cokernel, image, is_epi, is_iso, is_mono, is_short_exact, kernel,
                                 line_bundle_morphism, pushout, simplify, tensor, twist)
from p1sheaf.sheaves.sheaf import (QcohSheaf, SheafMorphism, direct_sum, from_transition_matrix,
                                   make_line_bundle as O, make_torsion_sheaf as Tor, validate)

from generators import rand_mixed, twisted_line_sum

F7 = Field.parse("Fp:7")


def lp(s, ring=K_LAURENT, field=QQ):
    return parse_poly(s, ring, field)


def tm(rows, field=QQ):
    return PolyMatrix.from_rows(K_LAURENT, field, rows)


# -- modules ------------------------------------------------------------------------

def test_module_normal_form_and_dimension():
    R = PolyMatrix.from_rows(K_X, QQ, [["x^2", "x"], ["0", "x^3"]])
    mod = FpModule(K_X, QQ, 2, R)
    # invariant factors of [[x^2, x], [0, x^3]] are x and x^4
    assert [str(d) for d in mod.torsion_invariants] == ["x", "x^4"]
    assert mod.k_dimension() == 5
    assert mod.free_rank == 0


def test_module_contains_and_kernel():
    mod = FpModule.cyclic(K_X, QQ, lp("x^3", K_X))
    G = PolyMatrix.from_rows(K_X, QQ, [["x"]])
    assert mod.contains(G, PolyMatrix.from_rows(K_X, QQ, [["x^2"]])) is not None
    assert mod.contains(G, PolyMatrix.from_rows(K_X, QQ, [["1"]])) is None
    free = FpModule.free(K_X, QQ, 1)
    K = mod.kernel_generators(G, free)
    # x * k lies in (x^3) iff k in (x^2)
    assert free.submodule_presentation(K).gens == K.cols
    assert all(mod.is_zero_element((G @ K).col(j)) for j in range(K.cols))


def test_module_hom_dimension():
    a = FpModule.cyclic(K_X, QQ, lp("x^2", K_X))
    b = FpModule.cyclic(K_X, QQ, lp("x^3", K_X))
    assert module_hom_dimension(a, b) == 2
    assert module_hom_dimension(FpModule.free(K_X, QQ, 1), b) == 3
    assert module_hom_dimension(FpModule.free(K_X, QQ, 1), FpModule.free(K_X, QQ, 1)) is None


# -- constructors and validate -----------------------------------------------------------------

@pytest.mark.parametrize("n", range(-4, 5))
def test_line_bundles_valid(n, field):
    F = O(n, field)
    assert validate(F).ok
    assert F.sigma == PolyMatrix.identity(K_LAURENT, field, 1)
    assert F.tau[0, 0] == Poly.monomial(K_LAURENT, field, n)


def test_line_bundle_examples():
    assert HomSpace(O(0), O(3)).dimension == 4
    assert validate(O(5)).ok


@pytest.mark.parametrize("point", ["0", "inf", 1, 3])
@pytest.mark.parametrize("mult", [1, 2, 3])
def test_torsion_sheaves_valid(point, mult, field):
    T = Tor(point, mult, field)
    assert validate(T).ok
    if point == "0":
        assert T.P.is_zero() and T.N.is_zero()
        assert T.M.k_dimension() == mult
    elif point == "inf":
        assert T.M.is_zero() and T.P.is_zero()
        assert T.N.torsion_invariants == [Poly.monomial(K_XINV, field, -mult)]
    else:
        assert T.M.k_dimension() == T.N.k_dimension() == T.P.k_dimension() == mult


def test_torsion_multiplicity_error():
    with pytest.raises(ValueError):
        Tor(0, 0)


def test_transition_matrix_examples():
    assert classify(from_transition_matrix(tm([["x^3"]]))).type == [3]
    assert classify(from_transition_matrix(tm([["x^2", "0"], ["0", "x^-1"]]))).type == [2, -1]
    F = from_transition_matrix(tm([["x", "1"], ["0", "1"]]))
    assert validate(F).ok
    with pytest.raises(NotInvertible):
        from_transition_matrix(tm([["x+1"]]))


def test_validate_tau_zero():
    base = O(0)
    bad = QcohSheaf(base.M, base.N, base.P, base.sigma, tm([["0"]]))
    rep = validate(bad)
    assert not rep.ok
    assert any("T^-1 tau not an isomorphism" in f for f in rep.failures)


def test_validate_relations_violation():
    M = FpModule.cyclic(K_X, QQ, lp("x", K_X))
    base = O(0)
    bad = QcohSheaf(M, base.N, base.P, base.sigma, base.tau)
    rep = validate(bad)
    assert not rep.ok and "sigma does not respect" in rep.failures[0]


def test_validate_exponents_torsion():
    rep = validate(Tor(0, 2))
    assert rep.ok and rep.exponents["ker_sigma"] == 2


def test_zero_sheaf():
    Z = QcohSheaf.zero(QQ)
    assert validate(Z).ok and Z.is_zero()
    assert classify(Z).is_zero


def test_random_constructions_valid(field):
    rng = random.Random(2)
    for _ in range(15):
        F, _, _ = rand_mixed(rng, field)
        assert validate(F).ok
        G = twisted_line_sum(rng, field, [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
        assert validate(G).ok


# -- kernels, cokernels, pushouts ------------------------------------------------------------------

def test_kernel_of_identity_is_zero():
    F = direct_sum(O(1), Tor(2, 2))
    K, _ = kernel(SheafMorphism.identity(F))
    assert K.is_zero()


def test_ideal_sheaf_of_a_point():
    # O(0) -> skyscraper at 0 given by 1 -> 1
    T = Tor(0, 1)
    f = SheafMorphism(O(0), T, PolyMatrix.from_rows(K_X, QQ, [["1"]]),
                      PolyMatrix.zeros(K_LAURENT, QQ, 0, 1), PolyMatrix.zeros(K_XINV, QQ, 0, 1))
    assert f.is_valid() and is_epi(f)
    K, k = kernel(f)
    assert validate(K).ok
    assert classify(K).type == [-1]
    assert (f @ k).is_zero()
    C, _ = cokernel(f)
    assert C.is_zero()


def test_cokernel_of_zero_map():
    F = direct_sum(O(2), Tor("inf", 1))
    C, p = cokernel(SheafMorphism.zero(QcohSheaf.zero(QQ), F))
    assert classify(C) == classify(F)
    assert is_iso(p)


def test_exactness_random_morphisms():
    rng = random.Random(9)
    for _ in range(12):
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        A = direct_sum(O(a), O(a - 1))
        B = direct_sum(O(b), Tor(0, 2))
        H = HomSpace(A, B)
        coeffs = [QQ(rng.randint(-2, 2)) for _ in H.basis]
        f = H.combination(coeffs)
        K, k = kernel(f)
        C, p = cokernel(f)
        assert validate(K).ok and validate(C).ok
        assert (f @ k).is_zero() and (p @ f).is_zero()
        assert is_mono(k) and is_epi(p)
        I, onto, into = image(f)
        assert is_short_exact(k, onto)
        assert is_short_exact(into, p)


def test_pushout_examples():
    x = lp("x", K_X)
    # O(-1) -> O(0) vanishing at 0, and O(-1) -> O(0) vanishing at infinity
    f = line_bundle_morphism(-1, 0, x)
    g = line_bundle_morphism(-1, 0, Poly.one(K_X, QQ))
    # line_bundle_morphism builds a fresh O(-1); share the source object
    W, v, y = pushout(f, SheafMorphism(f.source, g.target, g.phiM, g.phiP, g.phiN))
    assert validate(W).ok
    assert classify(W).type == [1]
    # pushout along the identity returns the other target
    idU = SheafMorphism.identity(f.source)
    W2, _, _ = pushout(f, idU)
    assert classify(W2) == classify(f.target)
    W3, _, _ = pushout(idU, f)
    assert classify(W3) == classify(f.target)


def test_pushout_preserves_cokernel():
    x = lp("x", K_X)
    g = line_bundle_morphism(-1, 0, x)           # monic with cokernel the skyscraper at 0
    U = g.source
    h = line_bundle_morphism(-1, 2, lp("1+x^2", K_X))
    f = SheafMorphism(U, h.target, h.phiM, h.phiP, h.phiN)
    g = SheafMorphism(U, g.target, g.phiM, g.phiP, g.phiN)
    W, vW, yW = pushout(f, g)
    c1, _ = cokernel(vW)
    c2, _ = cokernel(g)
    assert classify(c1) == classify(c2)


# -- tensor, twist ---------------------------------------------------------------------------------

def test_tensor_properties(field):
    rng = random.Random(4)
    for _ in range(6):
        F, _, _ = rand_mixed(rng, field, max_lines=2, max_torsion=1)
        G, _, _ = rand_mixed(rng, field, max_lines=2, max_torsion=1)
        FG, GF = tensor(F, G), tensor(G, F)
        assert validate(FG).ok
        assert classify(FG) == classify(GF)
        assert classify(tensor(F, O(0, field))) == classify(F)
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        assert classify(twist(twist(F, a), b)) == classify(twist(F, a + b))


def test_tensor_of_line_bundles():
    assert classify(tensor(O(2), O(-5))).type == [-3]
    T = from_transition_matrix(tm([["x", "1"], ["0", "x^-1"]]))
    assert classify(tensor(O(1), T)).type == [2, 0]


def test_simplify_is_iso():
    F = direct_sum(O(1), Tor(1, 2))
    F2, to, back = simplify(tensor(F, F))
    assert to.is_valid() and back.is_valid() and is_iso(to)


# -- classify ----------------------------------------------------------------------------------------

def test_classify_examples(field):
    c = classify(direct_sum(O(2, field), Tor(0, 1, field)))
    assert c.torsion == {"0": [1]} and c.type == [2]
    c = classify(direct_sum(O(1, field), O(-1, field)))
    assert c.torsion == {} and c.type == [1, -1]
    c = classify(direct_sum(Tor("inf", 2, field), Tor(3, 1, field), Tor(3, 2, field)))
    assert c.torsion == {"inf": [2], "3": [2, 1]} and c.type == []


def test_classify_irreducible_torsion():
    # k[x]/(x^2+1) has no rational point over Q
    d = lp("x^2+1", K_X)
    M = FpModule.cyclic(K_X, QQ, d)
    N = FpModule.cyclic(K_XINV, QQ, lp("1+x^-2", K_XINV))
    P = FpModule.cyclic(K_LAURENT, QQ, d.as_ring(K_LAURENT))
    one = PolyMatrix.identity(K_LAURENT, QQ, 1)
    T = QcohSheaf(M, N, P, one, one)
    assert validate(T).ok
    c = classify(T)
    assert c.other and not c.torsion


# -- charts ----------------------------------------------------------------------------------------

def test_charts():
    assert chart_restrict(O(4), "X").free_rank == 1
    E = FpModule.cyclic(K_X, QQ, lp("x", K_X))
    ext = chart_extend(E)
    assert isinstance(ext, QcohSheaf) and validate(ext).ok
    assert chart_restrict(ext, "X").invariants_key() == E.invariants_key()
    # adjunction check for F = O(1), E = k[x]/(x)
    lhs = module_hom_dimension(chart_restrict(O(1), "X"), E)
    rhs = HomSpace(O(1), ext).dimension
    assert lhs == rhs == 1


def test_chart_extend_free_is_symbolic():
    ext = chart_extend(FpModule.free(K_X, QQ, 1))
    assert not ext.is_coherent()
    assert len(ext.N.window(-2, 1)) == 4
