"""Metropolis sampling of k-tilings with weight t^(interactions) at x = y = 1.

The state is one uint8 array per color: cell (a, b) of the rank-m diamond
sits at index (a + m, b + m) and stores the direction of its domino partner
(0 right, 1 up, 2 left, 3 down, 255 outside).  A proposal picks a color and a
2x2 block uniformly; if the block holds two parallel dominos they rotate,
accepted with probability min(1, t^dN).  dN only involves the block's two
gray cells, so a step costs O(k).

Acceptance compares a 64-bit variate u with floor(t^dN * 2^64), computed
exactly from the rational t.  Ratios >= 1 skip the draw and always accept;
because |dN| <= 2(k-1) every threshold is an exact integer below 2^64, so no
floating point enters the chain.

The compiled kernel is used when built; otherwise a pure-Python twin with
identical draws takes over.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from . import _kernels_py
from .aztec import (I, II, III, IV, Domino, KTiling, Tiling, all_horizontal, all_vertical,
                    apply_flip, flippable_blocks)
from .encodings import PG, WP, ModelKind, PairTable, interactions

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNEL = _compiled if _compiled is not None else _kernels_py
RNG_ALGORITHM = "xoshiro256** seeded by splitmix64"
MASK = (1 << 64) - 1
OUTSIDE = 255


def kernel_backend(name: str | None = None):
    """The kernel module: 'cython', 'python', or the default chosen at import."""
    if name is None:
        return KERNEL
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


# ------------------------------------------------------------------ RNG

def splitmix64(x: int) -> tuple:
    """One splitmix64 step: (new state, output)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return x, z ^ (z >> 31)


_JUMP = (0x180EC6D33CFD0ABA, 0xD5A61266F0C9392C, 0xA9582618E03FC9AA, 0x39ABDC4529B1661C)


class Rng:
    """xoshiro256** with its state in a uint64 array shared with the kernels."""

    def __init__(self, seed: int):
        if not 0 <= int(seed) <= MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")
        x = int(seed)
        words = []
        for _ in range(4):
            x, z = splitmix64(x)
            words.append(z)
        self.state = np.array(words, dtype=np.uint64)

    def next(self) -> int:
        return int(KERNEL.next_u64(self.state))

    def below(self, n: int) -> int:
        """Exactly uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        bits = (n - 1).bit_length()
        while True:
            v, got = 0, 0
            while got < bits:
                v = (v << 64) | self.next()
                got += 64
            v >>= got - bits
            if v < n:
                return v

    def jump(self) -> None:
        """Advance by 2^128 draws."""
        acc = [0, 0, 0, 0]
        for word in _JUMP:
            for b in range(64):
                if (word >> b) & 1:
                    acc = [p ^ int(q) for p, q in zip(acc, self.state)]
                self.next()
        self.state[:] = acc

    def split(self, n: int) -> list:
        """n independent streams, each 2^128 draws apart."""
        out = []
        for _ in range(n):
            child = Rng.__new__(Rng)
            child.state = self.state.copy()
            out.append(child)
            self.jump()
        return out


# ------------------------------------------------------------- config

@dataclass(frozen=True)
class SamplerConfig:
    rank: int
    colors: int
    t: Fraction
    steps: int
    seed: int
    burn_in: int = 0
    thinning: int = 1
    model: ModelKind = PG

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "model", ModelKind.parse(self.model))
        if self.rank < 1 or self.colors < 1:
            raise ValueError("rank and colors must be positive")
        if self.t < 0:
            raise ValueError("t must be nonnegative")
        if not self.steps > self.burn_in >= 0:
            raise ValueError("need steps > burn_in >= 0")
        if self.thinning < 1:
            raise ValueError("thinning must be positive")
        if not 0 <= self.seed <= MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_json(self) -> dict:
        return {"rank": self.rank, "colors": self.colors, "t": str(self.t), "steps": self.steps,
                "burn_in": self.burn_in, "thinning": self.thinning, "seed": self.seed,
                "model": self.model.value, "rng": RNG_ALGORITHM}


def acceptance_table(t: Fraction, dmax: int) -> tuple:
    """(thresholds, always) indexed by dN + dmax."""
    t = Fraction(t)
    thr = np.zeros(2 * dmax + 1, dtype=np.uint64)
    always = np.zeros(2 * dmax + 1, dtype=np.uint8)
    for d in range(-dmax, dmax + 1):
        if d == 0 or (t == 0 and d < 0):
            always[d + dmax] = 1
            continue
        if t == 0:
            continue
        p = t ** d
        if p >= 1:
            always[d + dmax] = 1
        else:
            thr[d + dmax] = int(p * (1 << 64))  # floor; < 2^64 since p < 1
    return thr, always


def interaction_codes(model) -> np.ndarray:
    """4x4 table over partner codes at a gray cell: 1 if (blue, red) interact."""
    model = ModelKind.parse(model)
    gray_type = {0: III, 1: IV, 2: I, 3: II}
    pairs = {PG: {(IV, I), (I, II), (II, II), (IV, II)},
             WP: {(III, II), (II, I), (I, I), (III, I)}}[model]
    out = np.zeros((4, 4), dtype=np.uint8)
    for cb, cr in product(range(4), repeat=2):
        out[cb, cr] = (gray_type[cb], gray_type[cr]) in pairs
    return out


# -------------------------------------------------------------- state

# type of a cell's domino from (gray?, partner code)
_TYPE_AT = np.array([[I, II, III, IV], [III, IV, I, II]], dtype=np.uint8)


class ArrayState:
    """Array form of a k-tiling for the kernels."""

    def __init__(self, rank: int, P: np.ndarray):
        self.rank = rank
        self.P = np.ascontiguousarray(P, dtype=np.uint8)
        n = 2 * rank
        a = np.arange(-rank, rank)
        A, B = np.meshgrid(a, a, indexing="ij")
        self.inside = np.abs(2 * A + 1) + np.abs(2 * B + 1) <= 2 * rank
        self.gray = np.ascontiguousarray(((A + B + rank) % 2 == 0) & self.inside, dtype=np.uint8)
        ok = self.inside[:-1, :-1] & self.inside[1:, :-1] & self.inside[:-1, 1:] & self.inside[1:, 1:]
        self.blocks = np.ascontiguousarray(np.argwhere(ok), dtype=np.int32)
        self.shape = (n, n)

    @property
    def k(self) -> int:
        return self.P.shape[0]

    @classmethod
    def from_ktiling(cls, kt: KTiling) -> "ArrayState":
        m = kt.rank
        P = np.full((kt.k, 2 * m, 2 * m), OUTSIDE, dtype=np.uint8)
        for c, layer in enumerate(kt.layers):
            for d in layer.dominos:
                i, j = d.x + m, d.y + m
                if d.o == "h":
                    P[c, i, j], P[c, i + 1, j] = 0, 2
                else:
                    P[c, i, j], P[c, i, j + 1] = 1, 3
        return cls(m, P)

    def to_ktiling(self) -> KTiling:
        m = self.rank
        layers = []
        for c in range(self.k):
            xs, ys = np.nonzero(self.P[c] == 0)
            h = [Domino(int(i) - m, int(j) - m, "h") for i, j in zip(xs, ys)]
            xs, ys = np.nonzero(self.P[c] == 1)
            v = [Domino(int(i) - m, int(j) - m, "v") for i, j in zip(xs, ys)]
            layers.append(Tiling.make(m, h + v))
        return KTiling.make(layers)

    def types(self) -> np.ndarray:
        """k x 2m x 2m domino types (0 outside)."""
        codes = np.where(self.P == OUTSIDE, 0, self.P)
        out = _TYPE_AT[self.gray[None, :, :], codes]
        return np.where(self.inside[None, :, :], out, 0)

    def interactions(self, model=PG) -> int:
        tab = interaction_codes(model)
        g = self.gray.astype(bool)
        codes = [np.where(g, self.P[c], 0)[g] for c in range(self.k)]
        return int(sum(tab[codes[a], codes[b]].sum()
                       for a in range(self.k) for b in range(a + 1, self.k)))


def initial_state(m: int, k: int, model=PG) -> KTiling:
    """A zero-interaction start: all horizontal (purple-gray) or all vertical."""
    base = all_horizontal(m) if ModelKind.parse(model) is PG else all_vertical(m)
    return KTiling.make([base] * k)


def run_steps(state: ArrayState, t, steps: int, rng: Rng, model=PG, backend=None) -> tuple:
    """Advance in place; returns (accepted, change in interactions)."""
    dmax = 2 * (state.k - 1)
    thr, always = acceptance_table(Fraction(t), dmax)
    kern = kernel_backend(backend)
    return kern.run_chain(state.P, state.gray, state.blocks, interaction_codes(model),
                          rng.state, int(steps), thr, always, dmax)


def mcmc_step(state: KTiling, cfg: SamplerConfig, rng: Rng) -> KTiling:
    """One proposal from a KTiling (convenience wrapper around the kernel)."""
    arr = ArrayState.from_ktiling(state)
    run_steps(arr, cfg.t, 1, rng, cfg.model)
    return arr.to_ktiling()


# --------------------------------------------------------- statistics

@dataclass
class CellStatistics:
    rank: int
    colors: int
    counts: np.ndarray  # k x 2m x 2m x 4, type I..IV
    samples: int = 0

    @classmethod
    def empty(cls, rank: int, colors: int) -> "CellStatistics":
        return cls(rank, colors, np.zeros((colors, 2 * rank, 2 * rank, 4), dtype=np.int64))

    def add(self, types: np.ndarray) -> None:
        for ty in (I, II, III, IV):
            self.counts[..., ty - 1] += types == ty
        self.samples += 1

    def merge(self, other: "CellStatistics") -> "CellStatistics":
        if (other.rank, other.colors) != (self.rank, self.colors):
            raise ValueError("statistics of different shapes")
        return CellStatistics(self.rank, self.colors, self.counts + other.counts,
                              self.samples + other.samples)

    def frequencies(self) -> np.ndarray:
        """Per cell and color, the fraction of samples of each type."""
        if self.samples == 0:
            raise ValueError("no samples")
        return self.counts / self.samples

    def to_json(self) -> dict:
        return {"rank": self.rank, "colors": self.colors, "samples": self.samples,
                "counts": self.counts.tolist()}


@dataclass
class RunResult:
    config: SamplerConfig
    stats: CellStatistics
    final: ArrayState
    accepted: int
    interactions: int
    snapshots: list = field(default_factory=list)
    backend: str = ""

    def metadata(self) -> dict:
        return {"config": self.config.to_json(), "accepted": self.accepted,
                "interactions": self.interactions, "samples": self.stats.samples,
                "kernel": self.backend}


def run(cfg: SamplerConfig, initial: KTiling | None = None, snapshots: int = 0,
        backend: str | None = None) -> RunResult:
    """Burn in, then record one sample every `thinning` steps up to `steps`."""
    kt = initial if initial is not None else initial_state(cfg.rank, cfg.colors, cfg.model)
    if kt.rank != cfg.rank or kt.k != cfg.colors:
        raise ValueError("initial state does not match the config")
    state = ArrayState.from_ktiling(kt)
    n0 = state.interactions(cfg.model)
    if cfg.t == 0 and n0 != 0:
        raise ValueError("a t = 0 chain must start with no interactions")
    rng = Rng(cfg.seed)
    kern = kernel_backend(backend)
    acc, _ = run_steps(state, cfg.t, cfg.burn_in, rng, cfg.model, backend)
    stats = CellStatistics.empty(cfg.rank, cfg.colors)
    nsamples = (cfg.steps - cfg.burn_in) // cfg.thinning
    snaps = []
    every = max(1, nsamples // snapshots) if snapshots else 0
    for s in range(nsamples):
        a, _ = run_steps(state, cfg.t, cfg.thinning, rng, cfg.model, backend)
        acc += a
        stats.add(state.types())
        if every and (s + 1) % every == 0 and len(snaps) < snapshots:
            snaps.append(state.P.copy())
    rest = cfg.steps - cfg.burn_in - nsamples * cfg.thinning
    if rest:
        acc += run_steps(state, cfg.t, rest, rng, cfg.model, backend)[0]
    return RunResult(cfg, stats, state, acc, state.interactions(cfg.model), snaps,
                     kern.IMPLEMENTATION)


def state_trace(cfg: SamplerConfig, initial: KTiling | None = None, backend=None) -> tuple:
    """The sequence of visited states after burn-in.

    Returns (keys, seq): keys maps the state's array bytes to an id and seq
    holds one id per recorded sample.
    """
    kt = initial if initial is not None else initial_state(cfg.rank, cfg.colors, cfg.model)
    state = ArrayState.from_ktiling(kt)
    rng = Rng(cfg.seed)
    run_steps(state, cfg.t, cfg.burn_in, rng, cfg.model, backend)
    n = (cfg.steps - cfg.burn_in) // cfg.thinning
    keys: dict = {}
    seq = np.empty(n, dtype=np.int64)
    for s in range(n):
        run_steps(state, cfg.t, cfg.thinning, rng, cfg.model, backend)
        key = state.P.tobytes()
        seq[s] = keys.setdefault(key, len(keys))
    return keys, seq


def worker_count() -> int:
    env = os.environ.get("TILEKIT_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError("TILEKIT_THREADS must be an integer") from None
        return max(1, n)
    return os.cpu_count() or 1


def run_many(cfgs: Sequence[SamplerConfig], backend: str | None = None) -> list:
    """Independent chains; the compiled kernel releases the GIL, so threads help."""
    with ThreadPoolExecutor(max_workers=min(worker_count(), max(1, len(cfgs)))) as ex:
        return list(ex.map(lambda c: run(c, backend=backend), cfgs))


# ------------------------------------------------------ exact oracles

def exact_distribution(m: int, k: int, t, model=PG, cap: int = 3) -> tuple:
    """(tilings, index tuples, exact probabilities) proportional to t^N."""
    t = Fraction(t)
    tab = PairTable(m, model, cap=cap)
    tuples = list(product(range(len(tab.tilings)), repeat=k))
    ns = [tab.tuple_interactions(idx) for idx in tuples]
    ws = [Fraction(1) if n == 0 else t ** n for n in ns]
    z = sum(ws)
    if z == 0:
        raise ValueError("all weights vanish")
    return tab.tilings, tuples, [w / z for w in ws]


def exact_sample(m: int, k: int, t, seed: int, model=PG, cap: int = 3) -> KTiling:
    """Draw from the exact law by enumeration and exact weighted choice."""
    tilings, tuples, probs = exact_distribution(m, k, t, model, cap)
    den = 1
    for p in probs:
        den = den * p.denominator // np.gcd(den, p.denominator) if p else den
    weights = [int(p * den) for p in probs]
    u = Rng(seed).below(sum(weights))
    for idx, w in zip(tuples, weights):
        if u < w:
            return KTiling.make([tilings[i] for i in idx])
        u -= w
    raise AssertionError("unreachable")


def _blocks(m: int) -> list:
    return [(int(i) - m, int(j) - m) for i, j in ArrayState(m, np.zeros((1, 2 * m, 2 * m))).blocks]


def transition_matrix(m: int, k: int, t, model=PG, cap: int = 3) -> tuple:
    """Exact chain over all k-tilings: (states, dict row -> {col: prob}).

    Interaction changes come from recounting whole k-tilings, independent of
    the kernel's local rule.
    """
    t = Fraction(t)
    tab = PairTable(m, model, cap=cap)
    index = {til.dominos: i for i, til in enumerate(tab.tilings)}
    tuples = list(product(range(len(tab.tilings)), repeat=k))
    pos = {idx: s for s, idx in enumerate(tuples)}
    blocks = _blocks(m)
    prop = Fraction(1, k * len(blocks))
    rows = []
    for idx in tuples:
        kt = KTiling.make([tab.tilings[i] for i in idx])
        n0 = interactions(kt, model)
        row: dict = {}
        stay = Fraction(1)
        for c in range(k):
            layer = tab.tilings[idx[c]]
            flippable = set(flippable_blocks(layer))
            for blk in blocks:
                if blk not in flippable:
                    continue
                new = list(idx)
                new[c] = index[apply_flip(layer, blk).dominos]
                new = tuple(new)
                d = interactions(KTiling.make([tab.tilings[i] for i in new]), model) - n0
                if t == 0:
                    acc = Fraction(1 if d <= 0 else 0)
                else:
                    acc = min(Fraction(1), t ** d)
                if acc:
                    row[pos[new]] = row.get(pos[new], 0) + prop * acc
                    stay -= prop * acc
        row[pos[idx]] = row.get(pos[idx], 0) + stay
        rows.append(row)
    return tuples, rows


def stationarity_residual(m: int, k: int, t, model=PG) -> list:
    """pi P - pi for pi proportional to t^N; all zeros when stationary."""
    _, tuples, probs = exact_distribution(m, k, t, model)
    _, rows = transition_matrix(m, k, t, model)
    out = [Fraction(0)] * len(tuples)
    for s, row in enumerate(rows):
        for c, p in row.items():
            out[c] += probs[s] * p
    return [o - p for o, p in zip(out, probs)]


def zero_class_connected(m: int, k: int, model=PG) -> bool:
    """Do single-color flips within zero interactions reach the whole class?"""
    tab = PairTable(m, model, cap=3)
    index = {til.dominos: i for i, til in enumerate(tab.tilings)}
    zero = {idx for idx in product(range(len(tab.tilings)), repeat=k)
            if tab.tuple_interactions(idx) == 0}
    start = next(iter(sorted(zero)))
    seen, todo = {start}, [start]
    while todo:
        idx = todo.pop()
        for c in range(k):
            layer = tab.tilings[idx[c]]
            for blk in flippable_blocks(layer):
                new = list(idx)
                new[c] = index[apply_flip(layer, blk).dominos]
                new = tuple(new)
                if new in zero and new not in seen:
                    seen.add(new)
                    todo.append(new)
    return seen == zero


# ------------------------------------------------------------ hexagon

@dataclass(frozen=True)
class HexSamplerConfig:
    a: int
    b: int
    c: int
    colors: int
    t: Fraction
    steps: int
    seed: int
    burn_in: int = 0
    thinning: int = 1

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if min(self.a, self.b, self.c) < 1 or self.colors < 1:
            raise ValueError("hexagon sides and colors must be positive")
        if self.t < 0:
            raise ValueError("t must be nonnegative")
        if not self.steps > self.burn_in >= 0:
            raise ValueError("need steps > burn_in >= 0")
        if self.thinning < 1:
            raise ValueError("thinning must be positive")

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "colors": self.colors, "t": str(self.t),
                "steps": self.steps, "burn_in": self.burn_in, "thinning": self.thinning,
                "seed": self.seed, "rng": RNG_ALGORITHM}


class HexState:
    """Per color, the partition chain as a mutable list of padded part lists."""

    def __init__(self, a: int, b: int, c: int, chains):
        from .hexagon import HexRegion

        self.region = HexRegion(a, b, c)
        self.chains = [[list(p) + [0] * (a - len(p)) for p in ch] for ch in chains]

    @classmethod
    def filled_rows(cls, a: int, b: int, c: int, k: int) -> "HexState":
        """lam^r = (b^(r-c)): one full row per step in the last a steps."""
        chain = [[b if i < r - c else 0 for i in range(a)] for r in range(a + c + 1)]
        return cls(a, b, c, [chain] * k)

    @classmethod
    def initial(cls, a: int, b: int, c: int, k: int, t) -> "HexState":
        """A start state; at t = 0 one with no interactions (needs (k-1)a <= c)."""
        if Fraction(t) != 0 or k == 1:
            return cls.filled_rows(a, b, c, k)
        from .hexagon import hex_t0_inverse

        merged = cls.filled_rows(k * a, b, c - (k - 1) * a, 1).lozenge_tilings()[0]
        return cls(a, b, c, [til.chain for til in hex_t0_inverse(merged, k, a)])

    def lozenge_tilings(self) -> list:
        from .hexagon import LozengeTiling, partition

        return [LozengeTiling(self.region, tuple(partition(p) for p in ch)) for ch in self.chains]

    def row_codes(self, color: int, r: int) -> list:
        """V/E/H codes of the faces of row r for one color."""
        from .hexagon import E, H, V
        from .partitions import partition, partition_to_bits
        from .vertex import color_row

        reg = self.region
        bot = tuple(int(x) for x in partition_to_bits(partition(self.chains[color][r]),
                                                      reg.width, reg.a))
        top = tuple(int(x) for x in partition_to_bits(partition(self.chains[color][r + 1]),
                                                      reg.width, reg.a))
        h = color_row("L", bot, top, 0, 0)
        return [V if top[col] else (H if h[col + 1] else E) for col in range(reg.width)]

    def row_interactions(self, r: int, codes=None) -> int:
        from .hexagon import E, H

        reg = self.region
        k = len(self.chains)
        cs = codes if codes is not None else [self.row_codes(c, r) for c in range(k)]
        n = 0
        for col in range(reg.width):
            if reg.frozen(col, r):
                continue
            for i in range(k):
                if cs[i][col] != H:
                    continue
                n += sum(1 for j in range(i + 1, k) if cs[j][col] != E)
        return n

    def interactions(self) -> int:
        return sum(self.row_interactions(r) for r in range(self.region.rows))


def _hex_toggle(lam: list, i: int, j: int) -> list | None:
    """Add or remove box (i, j) if the result is still a partition."""
    a = len(lam)
    if lam[i] == j and (i == 0 or lam[i - 1] > j):
        new = list(lam)
        new[i] += 1
        return new
    if lam[i] == j + 1 and (i == a - 1 or lam[i + 1] <= j):
        new = list(lam)
        new[i] -= 1
        return new
    return None


def _strip(small: list, big: list) -> bool:
    """big / small is a horizontal strip (big_i >= small_i >= big_{i+1})."""
    a = len(small)
    return all(big[i] >= small[i] and (i + 1 >= a or small[i] >= big[i + 1]) for i in range(a))


def hex_proposals(cfg_or_state) -> int:
    reg = cfg_or_state.region
    return (reg.rows - 1) * reg.a * reg.b


def hex_mcmc_step(state: HexState, t: Fraction, rng: Rng) -> bool:
    """Rotate one unit hexagon (toggle a box of an interior partition)."""
    reg = state.region
    k = len(state.chains)
    n = hex_proposals(state)
    if n == 0:
        return False
    idx = rng.below(k * n)
    color, rest = divmod(idx, n)
    r0, cell = divmod(rest, reg.a * reg.b)
    r = r0 + 1
    i, j = divmod(cell, reg.b)
    ch = state.chains[color]
    new = _hex_toggle(ch[r], i, j)
    if new is None or not _strip(ch[r - 1], new) or not _strip(new, ch[r + 1]):
        return False
    before = state.row_interactions(r - 1) + state.row_interactions(r)
    old = ch[r]
    ch[r] = new
    delta = state.row_interactions(r - 1) + state.row_interactions(r) - before
    if not _hex_accept(Fraction(t), delta, rng):
        ch[r] = old
        return False
    return True


def _hex_accept(t: Fraction, delta: int, rng: Rng) -> bool:
    if delta == 0 or (t == 0 and delta < 0):
        return True
    if t == 0:
        return False
    p = t ** delta
    return p >= 1 or rng.next() < int(p * (1 << 64))


@dataclass
class HexStatistics:
    counts: np.ndarray  # k x rows x width x 3 (V, E, H)
    samples: int = 0

    def frequencies(self) -> np.ndarray:
        if self.samples == 0:
            raise ValueError("no samples")
        return self.counts / self.samples


def hex_run(cfg: HexSamplerConfig, initial: HexState | None = None) -> tuple:
    """Returns (statistics, final state)."""
    state = initial if initial is not None else HexState.initial(cfg.a, cfg.b, cfg.c, cfg.colors,
                                                                  cfg.t)
    if cfg.t == 0 and state.interactions() != 0:
        raise ValueError("a t = 0 chain must start with no interactions")
    rng = Rng(cfg.seed)
    for _ in range(cfg.burn_in):
        hex_mcmc_step(state, cfg.t, rng)
    reg = state.region
    stats = HexStatistics(np.zeros((cfg.colors, reg.rows, reg.width, 3), dtype=np.int64))
    nsamples = (cfg.steps - cfg.burn_in) // cfg.thinning
    for _ in range(nsamples):
        for _ in range(cfg.thinning):
            hex_mcmc_step(state, cfg.t, rng)
        for c in range(cfg.colors):
            for r in range(reg.rows):
                for col, code in enumerate(state.row_codes(c, r)):
                    stats.counts[c, r, col, code - 1] += 1
        stats.samples += 1
    return stats, state


def hex_transition_matrix(a: int, b: int, c: int, k: int, t) -> tuple:
    """Exact hexagon chain: (state keys, rows, stationary law proportional to t^N)."""
    from .hexagon import enumerate_lozenge

    t = Fraction(t)
    tilings = enumerate_lozenge(a, b, c)
    chains = [[list(p) + [0] * (a - len(p)) for p in til.chain] for til in tilings]
    tuples = list(product(range(len(chains)), repeat=k))

    def key(chs):
        return tuple(tuple(tuple(p) for p in ch) for ch in chs)

    pos = {key([chains[i] for i in idx]): s for s, idx in enumerate(tuples)}
    weights = []
    rows = []
    reg_rows = a + c
    n = (reg_rows - 1) * a * b
    prop = Fraction(1, k * n)
    for idx in tuples:
        st = HexState(a, b, c, [chains[i] for i in idx])
        n0 = st.interactions()
        weights.append(Fraction(1) if n0 == 0 else t ** n0)
        row: dict = {}
        stay = Fraction(1)
        for color in range(k):
            for r in range(1, reg_rows):
                for i in range(a):
                    for j in range(b):
                        ch = st.chains[color]
                        new = _hex_toggle(ch[r], i, j)
                        if new is None or not _strip(ch[r - 1], new) or not _strip(new, ch[r + 1]):
                            continue
                        other = HexState(a, b, c, [list(map(list, x)) for x in st.chains])
                        other.chains[color][r] = new
                        d = other.interactions() - n0
                        if d == 0 or (t == 0 and d < 0):
                            acc = Fraction(1)
                        elif t == 0:
                            acc = Fraction(0)
                        else:
                            acc = min(Fraction(1), t ** d)
                        if acc:
                            s2 = pos[key(other.chains)]
                            row[s2] = row.get(s2, 0) + prop * acc
                            stay -= prop * acc
        row[len(rows)] = row.get(len(rows), 0) + stay
        rows.append(row)
    z = sum(weights)
    return tuples, rows, [w / z for w in weights]


# ------------------------------------------------- frozen-region checks

def frozen_cells(types: np.ndarray, radius: int = 2) -> np.ndarray:
    """Cells whose neighbourhood is a brick pattern.

    A window of Chebyshev radius `radius` counts as frozen when its types are
    invariant under the diagonal shift (1, 1) or (1, -1); single-type bricks
    are invariant under both, and densely packed diagonal paths under one.
    Cells outside the region (type 0) are ignored.
    """
    n = types.shape[0]
    R = radius + 1
    pad = np.pad(types, R)

    def view(dx, dy):
        return pad[R + dx:R + dx + n, R + dy:R + dy + n]

    out = np.zeros(types.shape, dtype=bool)
    for vx, vy in ((1, 1), (1, -1)):
        inv = np.ones(types.shape, dtype=bool)
        for dx in range(-radius, radius + 1):
            for dy in range(-radius, radius + 1):
                p, q = view(dx, dy), view(dx + vx, dy + vy)
                inv &= (p == 0) | (q == 0) | (p == q)
        out |= inv
    return out


def arctic_agreement(state: ArrayState, family, margin: float = 0.05,
                     radius: int = 2) -> list:
    """Per color, the fraction of cells farther than `margin` from the curve
    that sit on the predicted side (frozen outside, not frozen inside)."""
    from .arctic import Classifier

    m = state.rank
    cls = Classifier(family)
    a = np.arange(-m, m)
    A, B = np.meshgrid(a, a, indexing="ij")
    X, Y = ((A + 0.5) / m)[state.inside], ((B + 0.5) / m)[state.inside]
    inside = cls.inside(X, Y)
    far = cls.distance(X, Y) > margin
    types = state.types()
    out = []
    for c in range(state.k):
        fr = frozen_cells(types[c], radius)[state.inside]
        ok = np.where(inside, ~fr, fr)
        out.append(float(ok[far].mean()))
    return out
