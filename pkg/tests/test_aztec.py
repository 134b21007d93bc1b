import pytest

from tilekit.aztec import (I, II, III, IV, Domino, KTiling, Tiling, all_horizontal, all_vertical,
                           apply_flip, domino_type, enumerate_tilings, flippable_blocks,
                           in_region, reflect_diagonal, region_cells)


def brute_force_count(m):
    # independent tiler: always cover the first uncovered cell in sorted order
    cells = sorted(region_cells(m))
    free = set(cells)

    def go():
        if not free:
            return 1
        a, b = min(free)
        n = 0
        for other in ((a + 1, b), (a, b + 1)):
            if other in free:
                free.difference_update({(a, b), other})
                n += go()
                free.update({(a, b), other})
        return n

    return go()


def test_region_shape():
    assert len(region_cells(1)) == 4
    assert len(region_cells(3)) == 2 * 3 * 4
    assert in_region(-1, -1, 1) and not in_region(1, 0, 1)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(m):
    tilings = enumerate_tilings(m)
    assert len(tilings) == brute_force_count(m)
    assert len({t.dominos for t in tilings}) == len(tilings)


def test_enumeration_cap_and_bad_rank():
    with pytest.raises(ValueError):
        enumerate_tilings(6)
    with pytest.raises(ValueError):
        enumerate_tilings(0)


def test_validation_rejects_overlap_and_holes():
    doms = list(all_horizontal(2).dominos)
    with pytest.raises(ValueError):
        Tiling.make(2, doms[:-1])
    with pytest.raises(ValueError):
        Tiling.make(2, doms[:-1] + [doms[0]])
    with pytest.raises(ValueError):
        Tiling.make(1, [(0, 0, "h"), (-1, -1, "h")])


def test_rank_one_types():
    # horizontal pair: bottom domino is I (type of the south row), top is III
    types = sorted(all_horizontal(1).types().values())
    verts = sorted(all_vertical(1).types().values())
    assert len(types) == len(verts) == 2
    assert set(types) | set(verts) == {I, II, III, IV}


def test_types_balance():
    # every tiling of rank m has m(m+1)/2 dominos of each of I+III and II+IV pairs
    for t in enumerate_tilings(3):
        c = t.type_counts()
        assert c[0] + c[2] + c[1] + c[3] == 12
        assert c[0] == c[2] and c[1] == c[3]


def test_flip_is_an_involution():
    t = all_horizontal(3)
    for blk in flippable_blocks(t):
        assert apply_flip(apply_flip(t, blk), blk) == t
    with pytest.raises(ValueError):
        apply_flip(t, (-10, -10))


def test_reflection_swaps_types():
    swap = {I: II, II: I, III: IV, IV: III}
    for t in enumerate_tilings(2):
        r = reflect_diagonal(t)
        r.validate()
        for d in t.dominos:
            rd = Domino(d.y, d.x, "v" if d.o == "h" else "h")
            assert domino_type(rd, 2) == swap[domino_type(d, 2)]


def test_ktiling_rejects_mixed_ranks():
    with pytest.raises(ValueError):
        KTiling.make([all_horizontal(1), all_horizontal(2)])
    with pytest.raises(ValueError):
        KTiling.make([])
