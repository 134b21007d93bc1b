"""Integer partitions, (co-)interlacing and Maya-diagram windows.

A partition is stored as a plain tuple of positive, weakly decreasing ints.
Maya convention: the slot with content ``i + 1/2`` holds a particle iff
``lambda_j - j == i`` for some ``j >= 1``.  So the empty partition has
particles on every negative-content slot and holes elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Partition = tuple
PartitionTuple = tuple

PARTICLE = "•"
HOLE = "∘"


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a partition tuple, dropping trailing zeros."""
    p = tuple(int(x) for x in parts)
    for a, b in zip(p, p[1:]):
        if a < b:
            raise ValueError(f"parts not weakly decreasing: {p}")
    if p and p[-1] < 0:
        raise ValueError(f"negative part in {p}")
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def size(lam: Partition) -> int:
    return sum(lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


def _part(lam: Partition, i: int) -> int:
    return lam[i] if i < len(lam) else 0


def interlaces(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in the interlacing order: lam1 >= mu1 >= lam2 >= mu2 >= ..."""
    n = max(len(lam), len(mu)) + 1
    for i in range(n):
        if not (_part(lam, i) >= _part(mu, i) >= _part(lam, i + 1)):
            return False
    return True


def co_interlaces(lam: Partition, mu: Partition) -> bool:
    """Interlacing of the conjugates (lam / mu is a vertical strip)."""
    return interlaces(conjugate(lam), conjugate(mu))


def _check_k(lams: Sequence, mus: Sequence) -> None:
    if len(lams) != len(mus):
        raise ValueError(f"tuple lengths differ: {len(lams)} vs {len(mus)}")


def tuple_interlaces(lams: Sequence[Partition], mus: Sequence[Partition]) -> bool:
    _check_k(lams, mus)
    return all(interlaces(a, b) for a, b in zip(lams, mus))


def tuple_co_interlaces(lams: Sequence[Partition], mus: Sequence[Partition]) -> bool:
    _check_k(lams, mus)
    return all(co_interlaces(a, b) for a, b in zip(lams, mus))


def fits(lam: Partition, width: int, zero_position: int) -> bool:
    return len(lam) <= zero_position and _part(lam, 0) <= width - zero_position


@dataclass(frozen=True)
class MayaWindow:
    """A finite window of a Maya diagram.

    ``bits[s]`` is True for a particle; slot ``s`` has content
    ``s - zero_position + 1/2``.  Everything left of the window is a
    particle and everything right of it is a hole.
    """

    width: int
    zero_position: int
    bits: tuple

    def __post_init__(self):
        if len(self.bits) != self.width:
            raise ValueError("bits length must equal width")
        if not 0 <= self.zero_position <= self.width:
            raise ValueError("zero position outside the window")
        if sum(self.bits) != self.zero_position:
            raise ValueError("charge mismatch: particles must equal negative slots")

    def text(self) -> str:
        return "".join(PARTICLE if b else HOLE for b in self.bits)


def maya_from_partition(lam: Partition, width: int, zero_position: int) -> MayaWindow:
    lam = partition(lam)
    if not fits(lam, width, zero_position):
        raise ValueError(f"partition {lam} does not fit window "
                         f"(width={width}, zero={zero_position})")
    bits = [False] * width
    for j in range(1, zero_position + 1):
        s = _part(lam, j - 1) - j + zero_position
        bits[s] = True
    return MayaWindow(width, zero_position, tuple(bits))


def partition_from_maya(w: MayaWindow) -> Partition:
    slots = [s for s in range(w.width - 1, -1, -1) if w.bits[s]]
    return partition(s - w.zero_position + j for j, s in enumerate(slots, start=1))


def bits_to_partition(bits: Sequence[bool], zero_position: int) -> Partition:
    return partition_from_maya(MayaWindow(len(bits), zero_position, tuple(bool(b) for b in bits)))


def partition_to_bits(lam: Partition, width: int, zero_position: int) -> tuple:
    return maya_from_partition(lam, width, zero_position).bits


def is_horizontal_strip(lam: Partition, mu: Partition) -> bool:
    """Direct skew-shape test: mu inside lam with at most one cell per column."""
    if any(_part(mu, i) > _part(lam, i) for i in range(max(len(lam), len(mu)))):
        return False
    lc, mc = conjugate(lam), conjugate(mu)
    return all(_part(lc, i) - _part(mc, i) <= 1 for i in range(len(lc)))
