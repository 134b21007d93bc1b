# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Metropolis kernel for k-tilings of the Aztec diamond.

Mirrors tilekit._kernels_py step for step (same RNG draws, same decisions).
"""

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t tk_mulhi(uint64_t a, uint64_t b) {
        return (uint64_t)(((unsigned __int128)a * b) >> 64);
    }
    static inline uint64_t tk_rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    """
    uint64_t tk_mulhi(uint64_t a, uint64_t b) nogil
    uint64_t tk_rotl(uint64_t x, int k) nogil

IMPLEMENTATION = "cython"


cdef inline uint64_t _next(uint64_t[::1] s) noexcept nogil:
    cdef uint64_t result = tk_rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = tk_rotl(s[3], 45)
    return result


def next_u64(uint64_t[::1] s):
    return _next(s)


def run_chain(uint8_t[:, :, ::1] P, const uint8_t[:, ::1] gray, const int32_t[:, ::1] blocks,
              const uint8_t[:, ::1] inter, uint64_t[::1] rng, int64_t steps,
              const uint64_t[::1] thr, const uint8_t[::1] always, int dmax):
    """Run `steps` proposals in place; returns (accepted, change in interactions)."""
    cdef int k = P.shape[0]
    cdef uint64_t nb = blocks.shape[0]
    cdef uint64_t total = nb * <uint64_t>k
    cdef int64_t step, accepted = 0, dsum = 0
    cdef uint64_t idx
    cdef int c, o, i, j, g, gi, gj, delta, horiz
    cdef int gcells[4]
    cdef uint8_t oc, nc, oo
    cdef uint8_t newcode[4]
    with nogil:
        for step in range(steps):
            idx = tk_mulhi(_next(rng), total)
            c = <int>(idx // nb)
            g = <int>(idx % nb)
            i = blocks[g, 0]
            j = blocks[g, 1]
            if P[c, i, j] == 0 and P[c, i, j + 1] == 0:
                horiz = 1
            elif P[c, i, j] == 1 and P[c, i + 1, j] == 1:
                horiz = 0
            else:
                continue
            # new codes for (i,j), (i+1,j), (i,j+1), (i+1,j+1)
            if horiz:
                newcode[0] = 1
                newcode[1] = 1
                newcode[2] = 3
                newcode[3] = 3
            else:
                newcode[0] = 0
                newcode[1] = 2
                newcode[2] = 0
                newcode[3] = 2
            if gray[i, j]:
                gcells[0] = 0
                gcells[1] = 3
            else:
                gcells[0] = 1
                gcells[1] = 2
            delta = 0
            for g in range(2):
                gi = i + (gcells[g] & 1)
                gj = j + (gcells[g] >> 1)
                oc = P[c, gi, gj]
                nc = newcode[gcells[g]]
                for o in range(k):
                    if o == c:
                        continue
                    oo = P[o, gi, gj]
                    if o < c:
                        delta += <int>inter[oo, nc] - <int>inter[oo, oc]
                    else:
                        delta += <int>inter[nc, oo] - <int>inter[oc, oo]
            if not always[delta + dmax]:
                if _next(rng) >= thr[delta + dmax]:
                    continue
            P[c, i, j] = newcode[0]
            P[c, i + 1, j] = newcode[1]
            P[c, i, j + 1] = newcode[2]
            P[c, i + 1, j + 1] = newcode[3]
            accepted += 1
            dsum += delta
    return accepted, dsum
