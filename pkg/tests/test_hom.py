import random

from p1sheaf.sheaves.hom import HomSpace, line_cover
from p1sheaf.sheaves.ops import is_epi
from p1sheaf.sheaves.sheaf import direct_sum, make_line_bundle as O, make_torsion_sheaf as Tor

from generators import rand_mixed


def oracle_hom(twistsA, torsA, twistsB, torsB):
    """dim Hom for sums of line bundles and skyscrapers (closed forms)."""
    d = sum(max(0, b - a + 1) for a in twistsA for b in twistsB)
    d += sum(m for _ in twistsA for _, m in torsB)                 # O(a) -> T: length of T
    for p, m in torsA:
        for q, k in torsB:
            if str(p) == str(q):
                d += min(m, k)
    return d


def test_hom_space_examples():
    assert HomSpace(O(0), O(3)).dimension == 4
    assert HomSpace(Tor(0, 2), Tor(0, 3)).dimension == 2
    assert HomSpace(Tor(0, 1), O(0)).dimension == 0
    assert HomSpace(Tor(1, 1), Tor(2, 1)).dimension == 0


def test_hom_space_random_against_oracle(field):
    rng = random.Random(21)
    for _ in range(12):
        A, ta, sa = rand_mixed(rng, field, max_lines=2, max_torsion=1, twist=2)
        B, tb, sb = rand_mixed(rng, field, max_lines=2, max_torsion=1, twist=2)
        H = HomSpace(A, B)
        assert H.dimension == oracle_hom(ta, sa, tb, sb)
        for b in H.basis:
            assert b.is_valid()


def test_coords_roundtrip():
    H = HomSpace(direct_sum(O(-1), Tor(0, 1)), direct_sum(O(1), Tor(0, 2)))
    rng = random.Random(0)
    coeffs = [H.field(rng.randint(-3, 3)) for _ in H.basis]
    phi = H.combination(coeffs)
    assert H.coords(phi) == coeffs


def test_line_cover_surjective():
    for F in (direct_sum(O(2), Tor(0, 2)), Tor("inf", 3), direct_sum(O(-3), O(1)), Tor(5, 2)):
        for off in (0, 2):
            c = line_cover(F, off)
            assert is_epi(c.morphism())
            assert all(t <= max([0] + [t2 for t2 in c.twists]) for t in c.twists)
