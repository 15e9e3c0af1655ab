import random

import pytest

from p1sheaf.derived import (NotInUPerp, compute_global_ext, global_ext,
                             hom_double_complex_ext, resolve)
from p1sheaf.derived.globalext import hom_check
from p1sheaf.sheaves.classify import classify
from p1sheaf.sheaves.sheaf import direct_sum, make_line_bundle as O, make_torsion_sheaf as Tor

from generators import rand_mixed


def test_resolve_line_bundle():
    r = resolve(O(3))
    assert r.e0 == [3] and r.e1 == []
    assert all(r.certificates().values())


def test_resolve_point():
    r = resolve(Tor(0, 1))
    assert r.e0 == [0] and r.e1 == [-1]
    assert all(r.certificates().values())


@pytest.mark.parametrize("offset", [0, 2])
def test_resolve_random(offset, field):
    rng = random.Random(31)
    for _ in range(6):
        F, _, _ = rand_mixed(rng, field, max_lines=2, max_torsion=2, twist=2)
        r = resolve(F, offset)
        assert all(r.certificates().values())
        assert classify(r.E0).is_locally_free and classify(r.E1).is_locally_free
        assert len(r.e0) - len(r.e1) == classify(F).rank


def test_global_ext_line_bundles():
    for n in range(-3, 4):
        for m in range(-3, 4):
            g = compute_global_ext(O(n), O(m))
            assert g.dims == {0: max(0, m - n + 1), 1: max(0, n - m - 1), 2: 0}


def test_global_ext_examples():
    # Ext^1(k(0), O) = k and Hom(k(0), O) = 0
    assert compute_global_ext(Tor(0, 1), O(0)).dims == {0: 0, 1: 1, 2: 0}
    assert compute_global_ext(O(0), Tor(0, 2)).dims == {0: 2, 1: 0, 2: 0}
    assert compute_global_ext(Tor(0, 2), Tor(0, 1)).dims == {0: 1, 1: 1, 2: 0}
    assert compute_global_ext(Tor(0, 1), Tor(1, 1)).dims == {0: 0, 1: 0, 2: 0}
    assert global_ext(O(0), O(-2), 1) == 1
    assert global_ext(O(0), O(-2), 5) == 0


def test_hom_check_agrees():
    F = direct_sum(O(1), Tor(0, 2), O(-1))
    G = direct_sum(O(0), Tor(3, 1))
    assert compute_global_ext(F, G).dims[0] == hom_check(F, G)


def test_offset_independence():
    F = direct_sum(O(1), Tor(0, 2), O(-1))
    G = direct_sum(O(0), Tor(3, 1))
    dims = [compute_global_ext(F, G, o).dims for o in (0, 1, 2)]
    assert dims[0] == dims[1] == dims[2]


def test_double_complex_matches():
    cases = [(direct_sum(O(1), Tor(0, 2)), Tor("inf", 2)),
             (Tor(2, 2), direct_sum(Tor(2, 1), Tor(0, 1))),
             (O(-2), Tor(1, 3))]
    for F, G in cases:
        for off in (0, 1, 3):
            assert hom_double_complex_ext(F, G, off) == compute_global_ext(F, G, off).dims


def test_double_complex_rejects_line_bundle_target():
    with pytest.raises(NotInUPerp):
        hom_double_complex_ext(O(0), O(1))
