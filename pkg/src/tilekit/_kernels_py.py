"""Pure-Python twin of the compiled Metropolis kernel (same draws, same result)."""

from __future__ import annotations

IMPLEMENTATION = "python"
MASK = (1 << 64) - 1

# codes per cell: 0 partner right, 1 up, 2 left, 3 down
_NEW_FROM_H = (1, 1, 3, 3)
_NEW_FROM_V = (0, 2, 0, 2)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK


def next_u64(s) -> int:
    s0, s1, s2, s3 = (int(v) for v in s)
    result = (_rotl((s1 * 5) & MASK, 7) * 9) & MASK
    t = (s1 << 17) & MASK
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, 45)
    s[0], s[1], s[2], s[3] = s0, s1, s2, s3
    return result


def run_chain(P, gray, blocks, inter, rng, steps, thr, always, dmax):
    k = P.shape[0]
    nb = blocks.shape[0]
    total = nb * k
    Pl = P.tolist()
    gl = gray.tolist()
    bl = blocks.tolist()
    il = inter.tolist()
    tl = [int(v) for v in thr]
    al = [bool(v) for v in always]
    st = [int(v) for v in rng]
    accepted = dsum = 0
    for _ in range(int(steps)):
        idx = (next_u64(st) * total) >> 64
        c, g = divmod(idx, nb)
        i, j = bl[g]
        layer = Pl[c]
        if layer[i][j] == 0 and layer[i][j + 1] == 0:
            new = _NEW_FROM_H
        elif layer[i][j] == 1 and layer[i + 1][j] == 1:
            new = _NEW_FROM_V
        else:
            continue
        gcells = (0, 3) if gl[i][j] else (1, 2)
        delta = 0
        for gc in gcells:
            gi, gj = i + (gc & 1), j + (gc >> 1)
            oc, nc = layer[gi][gj], new[gc]
            for o in range(k):
                if o == c:
                    continue
                oo = Pl[o][gi][gj]
                if o < c:
                    delta += il[oo][nc] - il[oo][oc]
                else:
                    delta += il[nc][oo] - il[oc][oo]
        if not al[delta + dmax] and next_u64(st) >= tl[delta + dmax]:
            continue
        layer[i][j], layer[i + 1][j], layer[i][j + 1], layer[i + 1][j + 1] = new
        accepted += 1
        dsum += delta
    P[...] = Pl
    rng[...] = st
    return accepted, dsum
