"""Brute-force reference checks for the flow-splitting balance guarantees.

Everything here uses exact integer/rational arithmetic: the claims under test
are equalities, and a float tolerance could mask an off-by-one-byte bug in the
splitter. The enumerator is intentionally naive (plus symmetry pruning) so it
stays an independent check on the greedy assignment logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

ENUMERATION_LIMIT = 10**7


class InstanceTooLarge(ValueError):
    """The unsplittable-assignment search space exceeds the enumeration guard."""


@dataclass(frozen=True)
class DemandInstance:
    """Per-destination-leaf groups of equal-size flows over ``s`` uplinks."""

    s: int
    groups: tuple[tuple[int, int], ...]  # (flow count, flow bytes)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("need at least one uplink")
        for n, f in self.groups:
            if n < 0:
                raise ValueError("flow count must be >= 0")
            if f <= 0:
                raise ValueError("flow size must be > 0")

    @property
    def total_bytes(self) -> int:
        return sum(n * f for n, f in self.groups)

    def flow_sizes(self) -> list[int]:
        sizes: list[int] = []
        for n, f in self.groups:
            sizes.extend([f] * n)
        return sizes


def fractional_lower_bound(inst: DemandInstance) -> Fraction:
    """The packet-spraying ideal: total demand spread evenly over uplinks."""
    return Fraction(inst.total_bytes, inst.s)


def brute_force_unsplit(inst: DemandInstance) -> int:
    """Exact min-max uplink load over all whole-flow assignments.

    Prunes uplink relabelings: a flow is only ever placed on the first uplink
    of each run of equal current loads.
    """
    sizes = sorted(inst.flow_sizes(), reverse=True)
    if not sizes:
        return 0
    if inst.s ** len(sizes) > ENUMERATION_LIMIT:
        raise InstanceTooLarge(
            f"{inst.s}^{len(sizes)} assignments exceed the "
            f"{ENUMERATION_LIMIT:.0e} enumeration guard"
        )
    loads = [0] * inst.s
    best = sum(sizes)

    def place(i: int) -> None:
        nonlocal best
        if i == len(sizes):
            best = min(best, max(loads))
            return
        if max(loads) >= best:
            return
        seen = set()
        for u in range(inst.s):
            if loads[u] in seen:
                continue
            seen.add(loads[u])
            loads[u] += sizes[i]
            place(i + 1)
            loads[u] -= sizes[i]

    place(0)
    return best


def verify_min_split(r: int, s: int) -> int:
    """Smallest integer split factor g with r*g divisible by s, by direct scan.

    The splitter claims this equals s / gcd(r, s); callers compare.
    """
    if not 1 <= r < s:
        raise ValueError(f"need 1 <= r < s, got r={r}, s={s}")
    for gamma in range(1, s + 1):
        if (r * gamma) % s == 0:
            return gamma
    raise AssertionError("unreachable: gamma = s always divides")


def min_split_formula(r: int, s: int) -> int:
    """Closed form the scan is checked against."""
    return s // gcd(r, s)
