from collections import Counter
from itertools import product

import pytest

from tilekit.aztec import KTiling, enumerate_tilings
from tilekit.bijections import (ShiftPlan, phi_interaction_total, phi_involution, t0_forward,
                                t0_inverse)
from tilekit.encodings import PG, PairTable, interactions, weight, xy_weight


def zero_class(m, k):
    """Index tuples of all zero-interaction k-tilings, grown color by color."""
    tab = PairTable(m, PG)
    mat = tab.matrix
    n = len(tab.tilings)
    tuples = [(i,) for i in range(n)]
    for _ in range(k - 1):
        tuples = [tp + (j,) for tp in tuples for j in range(n)
                  if all(mat[i, j] == 0 for i in tp)]
    return tab.tilings, tuples


def test_shift_plan_indices():
    plan = ShiftPlan(4, 3)
    for g in range(1, 13):
        i, a = plan.source(g)
        assert plan.target(i, a) == g and 1 <= a <= 3


@pytest.mark.parametrize("m,k", [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3)])
def test_t0_bijection(m, k):
    tilings, tuples = zero_class(m, k)
    assert len(tuples) == len(tilings)
    images = set()
    for tp in tuples:
        kt = KTiling.make([tilings[i] for i in tp])
        one = t0_forward(kt)
        images.add(one.dominos)
        assert t0_inverse(one, k) == kt
        assert weight(kt, PG) == xy_weight(one, PG)
    assert len(images) == len(tilings)


def test_t0_inverse_has_no_interactions():
    for t in enumerate_tilings(3):
        for k in (1, 2, 3, 4):
            assert interactions(t0_inverse(t, k), PG) == 0


def test_t0_forward_rejects_interacting_input():
    tilings = enumerate_tilings(2)
    for a, b in product(tilings, repeat=2):
        kt = KTiling.make([a, b])
        if interactions(kt, PG):
            with pytest.raises(ValueError):
                t0_forward(kt)
            return
    pytest.fail("no interacting 2-tiling found")


@pytest.mark.parametrize("m,k", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_phi_complements_interactions(m, k):
    tilings = enumerate_tilings(m)
    total = phi_interaction_total(m, k)
    hist = Counter()
    for tup in product(tilings, repeat=k):
        kt = KTiling.make(tup)
        n = interactions(kt, PG)
        r = phi_involution(kt)
        assert phi_involution(r) == kt
        assert n + interactions(r, PG) == total
        hist[n] += 1
    coeffs = [hist[j] for j in range(total + 1)]
    assert coeffs == coeffs[::-1]
