import pytest

from p1sheaf.complexes import (ChainMap, NotAComplex, BoundedComplex, cone, cycles, direct_sum_complexes,
                               disc, homology, hom_complex, input_section, is_exact,
                               is_locally_projective_complex, is_short_exact_complexes,
                               is_u_perp_complex, mist_extension, output_section, sphere,
                               sphere_disc_sequence, tensor_complex)
from p1sheaf.ext import ExtClass, build_extension
from p1sheaf.rings import K_LAURENT, K_X, QQ, Poly, parse_poly
from p1sheaf.sheaves.classify import classify
from p1sheaf.sheaves.hom import HomSpace
from p1sheaf.sheaves.ops import cokernel, line_bundle_morphism
from p1sheaf.sheaves.sheaf import (direct_sum, make_line_bundle as O,
                                   make_torsion_sheaf as Tor, summand_maps)


def test_sphere_and_disc():
    F = O(2)
    S = sphere(F, 1)
    assert S.window == (-1, -1)
    assert classify(homology(S, -1)) == classify(F)
    assert homology(S, 0).is_zero()
    D = disc(F, 1)
    assert D.window == (-2, -1) and is_exact(D)


def test_sphere_disc_sequence():
    _, _, _, i, p = sphere_disc_sequence(Tor(0, 2), 0)
    assert is_short_exact_complexes(i, p)


def test_bad_differential_rejected():
    F = O(0)
    H = HomSpace(F, F)
    with pytest.raises(NotAComplex):
        BoundedComplex({0: F, 1: F, 2: F}, {0: H.basis[0], 1: H.basis[0]})


def test_cone_of_identity_exact():
    assert is_exact(cone(ChainMap.identity(sphere(O(1), 0))))
    assert is_exact(cone(ChainMap.identity(disc(Tor(1, 1), 2))))


def test_cone_of_inclusion():
    g = line_bundle_morphism(-1, 0, parse_poly("x", K_X, QQ))
    X, Y = sphere(g.source, 0), sphere(g.target, 0)
    C = cone(ChainMap(X, Y, {0: g}))
    # H^0 of the cone is the cokernel of O(-1) -x-> O(0): the skyscraper at 0
    assert classify(homology(C, 0)).torsion == {"0": [1]}
    assert homology(C, -1).is_zero()


def test_locally_projective_and_u_perp():
    assert is_locally_projective_complex(disc(O(3), 0))
    assert not is_locally_projective_complex(disc(Tor(0, 1), 0))
    assert is_u_perp_complex(disc(Tor(0, 1), 0))
    assert not is_u_perp_complex(sphere(Tor(0, 1), 0))      # not exact
    X = direct_sum_complexes(disc(O(1), 0), disc(O(-2), 1))
    assert is_locally_projective_complex(X)


@pytest.mark.parametrize("m", [-2, 0, 3])
def test_hom_complex_of_spheres(m):
    H = hom_complex(sphere(O(0), 0), sphere(O(m), 0))
    assert H.dim(0) == max(0, m + 1)
    assert H.cohomology_dim(0) == max(0, m + 1)
    H = hom_complex(sphere(O(0), 0), sphere(O(m), 2))
    # Hom(X, Y[k]) lives in degree -2 for Y in degree -2
    assert H.dim(-2) == max(0, m + 1)


def test_hom_complex_of_disc_is_acyclic():
    H = hom_complex(disc(O(1), 0), sphere(O(2), 0))
    assert all(H.cohomology_dim(n) == 0 for n in range(-3, 3))
    H = hom_complex(disc(O(1), 0), disc(O(3), 1))
    assert all(H.cohomology_dim(n) == 0 for n in range(-4, 4))


@pytest.mark.parametrize("m,mp,a,b", [(1, 2, 0, 1), (-3, 2, 2, -1), (0, 0, 0, 0)])
def test_tensor_of_spheres(m, mp, a, b):
    X = tensor_complex(sphere(O(m), a), sphere(O(mp), b))
    assert X.window == (-a - b, -a - b)
    assert classify(X.obj(-a - b)).type == [m + mp]


def test_tensor_with_disc_is_exact():
    X = tensor_complex(disc(O(1), 0), disc(O(-1), 1))
    assert is_exact(X)
    X = tensor_complex(disc(O(1), 0), sphere(Tor(0, 1), 0))
    assert is_exact(X)


def test_mist_nonsplit_torsion():
    T1, T2 = Tor(0, 1), Tor(0, 2)
    N = sphere(T1, 0)
    i = HomSpace(T1, T2).basis[0]
    _, p = cokernel(i)
    r = mist_extension(N, 0, i, p)
    assert is_short_exact_complexes(r.inc, r.proj)
    assert output_section(r) is None and input_section(p) is None


def test_mist_split():
    T1 = Tor(0, 1)
    N = sphere(T1, 0)
    D = direct_sum(T1, T1)
    (a, _), (_, pb) = summand_maps([T1, T1], D)
    r = mist_extension(N, 0, a, pb)
    assert output_section(r) is not None and input_section(pb) is not None


@pytest.mark.parametrize("z,split", [("x", False), ("1", True)])
def test_mist_with_disc_and_baer(z, split):
    N = disc(O(0), 0)
    Z, _ = cycles(N, 0)
    assert classify(Z).type == [0]
    cls = ExtClass(2, O(0), [Poly.zero(K_LAURENT, QQ)], [parse_poly(z, K_LAURENT, QQ)])
    _, i, p = build_extension(cls)
    r = mist_extension(N, 0, i, p)
    assert is_short_exact_complexes(r.inc, r.proj)
    assert (output_section(r) is not None) == split
    assert (input_section(p) is not None) == split
