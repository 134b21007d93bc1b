from itertools import product

import pytest

from tilekit.aztec import KTiling, enumerate_tilings
from tilekit.encodings import PG, interactions, xy_weight
from tilekit.schroder import (E, NE, SE, SchroderPathFamily, frozen_prefix, leading_e_steps,
                              ordering_holds, path_interactions, path_xy_weight,
                              paths_to_tiling, tiling_to_paths)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_paths_round_trip(m):
    for t in enumerate_tilings(m):
        fam = tiling_to_paths(t)
        assert len(fam.paths) == m
        assert paths_to_tiling(fam) == t


def test_path_endpoints():
    for t in enumerate_tilings(3):
        fam = tiling_to_paths(t)
        for i in range(1, 4):
            pts = fam.points(i)
            assert pts[0] == (-4 + i, -2 * i + 1)
            assert pts[-1] == (4 - i, -2 * i + 1)
            assert all(s in (E, NE, SE) for s in fam.paths[i - 1])


def test_path_weight_matches_tiling_weight():
    for t in enumerate_tilings(3):
        assert path_xy_weight(tiling_to_paths(t)) == xy_weight(t, PG)


def test_path_interactions_match_tilings():
    tilings = enumerate_tilings(2)
    fams = [tiling_to_paths(t) for t in tilings]
    for i, j, l in product(range(len(tilings)), repeat=3):
        kt = KTiling.make([tilings[i], tilings[j], tilings[l]])
        assert path_interactions([fams[i], fams[j], fams[l]]) == interactions(kt, PG)


def test_zero_interaction_ordering_and_frozen_prefix():
    # at t = 0 consecutive colors nest, and each path starts with forced E steps
    tilings = enumerate_tilings(3)
    fams = [tiling_to_paths(t) for t in tilings]
    zero = [(a, b) for a, b in product(range(len(fams)), repeat=2)
            if interactions(KTiling.make([tilings[a], tilings[b]]), PG) == 0]
    assert len(zero) == 64
    for a, b in zero:
        assert ordering_holds(fams[a], fams[b])
        for color, fam in ((1, fams[a]), (2, fams[b])):
            for i in range(1, 4):
                assert leading_e_steps(fam.paths[i - 1]) >= frozen_prefix(i, color, 2, 3)


def test_frozen_prefix_range():
    with pytest.raises(ValueError):
        frozen_prefix(0, 1, 2, 3)
    assert SchroderPathFamily(1, ((E,),)).points(1) == [(-1, -1), (1, -1)]
