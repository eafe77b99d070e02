"""Cyclic groups: the divisor filter for Z_n and residue criteria for Z.

The subgroup of Z_n with index ``d`` (for ``d`` dividing ``n``) is referred
to throughout as ``H^(d)``; it consists of the multiples of ``d``. The
subgroup ``pZ`` of the integers is identified with the modulus ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import HypothesisFails, SubsetCountCapExceeded
from .groupcore import FiniteGroup, make_cyclic
from .partition import (
    ExplicitSet,
    PartitionVector,
    as_partition,
    ground_set,
    partition_vectors,
)

DEFAULT_SUBSET_CAP = 10**6


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def cyclic_subgroup(G: FiniteGroup, index: int) -> ExplicitSet:
    """``H^(index)`` inside ``G = Z_n``."""
    n = G.order
    if n % index:
        raise ValueError(f"{index} does not divide {n}")
    return ExplicitSet(G, tuple(range(0, n, index)))


def theorem1_candidates(n: int, A: Iterable[int], k) -> list[int]:
    """Indices ``d | n`` with ``m <= d <= n / max(k)``, ascending.

    Every ``(A, k)``-ground subgroup of Z_n is one of the ``H^(d)``.
    """
    items = list(A)
    k = as_partition(k)
    k.check_for(len(items))
    return [d for d in divisors(n) if k.m <= d and d * k.norm <= n]


@dataclass(frozen=True)
class ResidueHistogram:
    modulus: int
    counts: tuple[int, ...]

    def parts(self) -> tuple[int, ...]:
        return tuple(sorted(c for c in self.counts if c))


def residue_histogram(A: Iterable[int], p: int) -> ResidueHistogram:
    if p < 1:
        raise ValueError("modulus must be >= 1")
    counts = [0] * p
    for x in A:
        counts[x % p] += 1
    return ResidueHistogram(p, tuple(counts))


def pZ_is_ground(A: Iterable[int], k, p: int) -> bool:
    items = list(A)
    k = as_partition(k)
    k.check_for(len(items))
    return residue_histogram(items, p).parts() == k.parts


def ground_moduli(A: Iterable[int], k, p_max: int) -> list[int]:
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    items = list(A)
    k = as_partition(k)
    k.check_for(len(items))
    return [p for p in range(1, p_max + 1) if residue_histogram(items, p).parts() == k.parts]


def nn_hypothesis_holds(A: Iterable[int], q: int, cap: int = DEFAULT_SUBSET_CAP) -> bool:
    """Does every ``q``-subset of ``A`` contain two integers at distance 1?"""
    items = sorted(set(A))
    if not 2 <= q <= len(items):
        raise ValueError(f"need 2 <= q <= |A|, got q={q}, |A|={len(items)}")
    if math.comb(len(items), q) > cap:
        raise SubsetCountCapExceeded(f"C({len(items)},{q}) exceeds subset cap {cap}")
    for subset in combinations(items, q):
        # subsets come out sorted, so neighbours are adjacent in the tuple
        if not any(b - a == 1 for a, b in zip(subset, subset[1:])):
            return False
    return True


@dataclass
class Prop4Report:
    A: tuple[int, ...]
    q: int
    passed: bool
    vacuous: bool
    partitions: list[PartitionVector] = field(default_factory=list)
    max_modulus: int = 0
    checks: int = 0
    counterexample: tuple[PartitionVector, int] | None = None


def prop4_verify(A: Iterable[int], q: int, cap: int = DEFAULT_SUBSET_CAP) -> Prop4Report:
    """Check that no ``pZ`` is ground for any ``k`` with ``m > 1`` containing ``q``.

    Moduli above ``diam(A) + 1`` cannot put two elements of ``A`` in one
    residue class, so they are never ground for such ``k`` and are skipped.
    """
    items = tuple(sorted(set(A)))
    if not nn_hypothesis_holds(items, q, cap):
        raise HypothesisFails(f"some {q}-subset of {list(items)} has no nearest neighbours")
    ks = [k for k in partition_vectors(len(items)) if k.m > 1 and q in k.parts]
    p_top = items[-1] - items[0] + 1
    report = Prop4Report(items, q, True, not ks, ks, p_top)
    for k in ks:
        for p in range(1, p_top + 1):
            report.checks += 1
            if residue_histogram(items, p).parts() == k.parts:
                report.passed = False
                report.counterexample = (k, p)
                return report
    return report


def cyclic_report(n: int, A: Iterable[int], k) -> dict:
    """Candidates, ground subgroups and r0 for ``Z_n``."""
    items = list(A)
    k = as_partition(k)
    G = make_cyclic(n)
    cands = theorem1_candidates(n, items, k)
    ground = ground_set(G, items, k)
    return {
        "group": G,
        "candidates": cands,
        "ground": ground,
        "r0": min((H.index() for H in ground), default=None),
    }
