"""Coset profiles and the ground-subgroup predicate.

A subgroup ``H`` is an ``(A, k)``-ground subgroup when the right cosets of
``H`` slice the finite set ``A`` into pieces whose sizes, sorted ascending,
are exactly the partition vector ``k``. Because the parts of ``k`` sum to
``|A|`` this is a multiset comparison of the nonzero coset counts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import (
    AmbientMismatch,
    EmptySet,
    GroupTooLarge,
    InvalidPartition,
    TooLarge,
)
from .groupcore import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    PermRep,
    Permutation,
    Word,
    orbit,
    perm_group_order,
    point_image,
    rep_eval,
)

DEFAULT_SUBGROUP_CAP = 512
PARTITION_CAP = 40


@dataclass(frozen=True)
class PartitionVector:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise InvalidPartition("partition vector must have at least one part")
        if any(p < 1 for p in parts):
            raise InvalidPartition(f"parts must be positive: {parts}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise InvalidPartition(f"parts must be ascending: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "PartitionVector":
        try:
            parts = tuple(int(t) for t in text.split(",") if t.strip())
        except ValueError:
            raise InvalidPartition(f"not a comma-separated integer list: {text!r}") from None
        return cls(parts)

    @classmethod
    def ones(cls, n: int) -> "PartitionVector":
        return cls((1,) * n)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def norm(self) -> int:
        """Largest part."""
        return self.parts[-1]

    def check_for(self, size: int) -> None:
        if self.total != size:
            raise InvalidPartition(f"parts {self.parts} sum to {self.total}, set has {size} elements")

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def as_partition(k) -> PartitionVector:
    if isinstance(k, PartitionVector):
        return k
    if isinstance(k, str):
        return PartitionVector.parse(k)
    return PartitionVector(tuple(k))


# ---------------------------------------------------------------------------
# subgroup handles


class SubgroupHandle:
    """A subgroup together with a canonical right-coset labelling.

    ``coset_id(x) == coset_id(y)`` exactly when ``x * y^-1`` lies in the
    subgroup.
    """

    def coset_id(self, g) -> Hashable:
        raise NotImplementedError

    def index(self, cap: int = DEFAULT_ORDER_CAP) -> int:
        raise NotImplementedError

    def contains(self, g) -> bool:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


def _closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in set(gens) if g != G.identity]
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.table[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


@dataclass(frozen=True, eq=False)
class ExplicitSet(SubgroupHandle):
    group: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        G = self.group
        members = set(elems)
        if G.identity not in members:
            raise ValueError("subgroup must contain the identity")
        for a in elems:
            if G.inv(a) not in members:
                raise ValueError(f"subgroup not closed under inverse at {a}")
            for b in elems:
                if G.mul(a, b) not in members:
                    raise ValueError(f"subgroup not closed under product at {a}, {b}")

    def __eq__(self, other):
        return (isinstance(other, ExplicitSet) and other.group is self.group
                and other.elements == self.elements)

    def __hash__(self):
        return hash((id(self.group), self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def _check(self, g) -> int:
        if not isinstance(g, int) or isinstance(g, bool) or not 0 <= g < self.group.order:
            raise AmbientMismatch(f"{g!r} is not an element index of {self.group.name or 'the group'}")
        return g

    def coset_id(self, g) -> int:
        g = self._check(g)
        return min(self.group.mul(h, g) for h in self.elements)

    def coset(self, g) -> frozenset[int]:
        g = self._check(g)
        return frozenset(self.group.mul(h, g) for h in self.elements)

    def index(self, cap: int = DEFAULT_ORDER_CAP) -> int:
        return self.group.order // len(self.elements)

    def contains(self, g) -> bool:
        return self._check(g) in set(self.elements)

    def describe(self) -> str:
        labels = self.group.labels
        return "{" + ",".join(labels[e] for e in self.elements) + "}"


def _check_word(rep: PermRep, g) -> Word:
    if not isinstance(g, Word):
        raise AmbientMismatch(f"{g!r} is not a word")
    if g.mode is not rep.mode:
        raise AmbientMismatch(f"{g.mode.value} word given to a {rep.mode.value} subgroup")
    return g


@dataclass(frozen=True)
class Kernel(SubgroupHandle):
    """Kernel of a permutation representation; always normal."""

    rep: PermRep

    def coset_id(self, g) -> Permutation:
        return rep_eval(self.rep, _check_word(self.rep, g))

    def index(self, cap: int = DEFAULT_ORDER_CAP) -> int:
        return perm_group_order(self.rep.images, cap)

    def contains(self, g) -> bool:
        return self.coset_id(g).is_identity()

    def describe(self) -> str:
        gens = ", ".join(f"{Word.gen(i + 1, mode=self.rep.mode)}->{p}"
                         for i, p in enumerate(self.rep.images))
        return f"kernel of degree-{self.rep.degree} rep [{gens}]"


@dataclass(frozen=True)
class Stabilizer(SubgroupHandle):
    """Preimage of a point stabilizer; index is the orbit size of the point."""

    rep: PermRep
    basepoint: int = 1

    def coset_id(self, g) -> int:
        return point_image(self.rep, _check_word(self.rep, g), self.basepoint)

    def index(self, cap: int = DEFAULT_ORDER_CAP) -> int:
        return len(orbit(self.rep.images, self.basepoint))

    def contains(self, g) -> bool:
        return self.coset_id(g) == self.basepoint

    def describe(self) -> str:
        gens = ", ".join(f"{Word.gen(i + 1, mode=self.rep.mode)}->{p}"
                         for i, p in enumerate(self.rep.images))
        return f"stabilizer of {self.basepoint} in degree-{self.rep.degree} rep [{gens}]"


def coset_id(H: SubgroupHandle, g) -> Hashable:
    return H.coset_id(g)


def subgroup_index(H: SubgroupHandle, cap: int = DEFAULT_ORDER_CAP) -> int:
    return H.index(cap)


# ---------------------------------------------------------------------------
# profiles and the ground predicate


@dataclass(frozen=True)
class CosetProfile:
    """Number of elements of ``A`` in each right coset that meets ``A``."""

    counts: dict
    total: int

    def parts(self) -> tuple[int, ...]:
        return tuple(sorted(self.counts.values()))

    def __len__(self) -> int:
        return len(self.counts)


def _as_set(A: Iterable) -> list:
    items = list(A)
    if not items:
        raise EmptySet("the set A must be nonempty")
    if len(set(items)) != len(items):
        raise ValueError("the set A contains duplicates")
    return items


def coset_profile(H: SubgroupHandle, A: Iterable) -> CosetProfile:
    items = _as_set(A)
    counts: dict = {}
    for a in items:
        cid = H.coset_id(a)
        counts[cid] = counts.get(cid, 0) + 1
    return CosetProfile(counts, len(items))


def is_ground(H: SubgroupHandle, A: Iterable, k) -> bool:
    items = _as_set(A)
    k = as_partition(k)
    k.check_for(len(items))
    return coset_profile(H, items).parts() == k.parts


# ---------------------------------------------------------------------------
# finite groups: enumeration, ground sets, r0


def enumerate_subgroups(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list[ExplicitSet]:
    """All subgroups of ``G`` ordered by (size, sorted elements).

    Starts from the cyclic subgroups and joins known subgroups with single
    elements until nothing new appears.
    """
    if G.order > cap:
        raise GroupTooLarge(f"group order {G.order} exceeds subgroup-enumeration cap {cap}")
    found: dict[frozenset[int], tuple[int, ...]] = {}
    queue = deque()
    for g in G.elements():
        sub = _closure(G, [g])
        if sub not in found:
            found[sub] = (g,)
            queue.append(sub)
    while queue:
        sub = queue.popleft()
        gens = found[sub]
        covered = set(sub)
        for g in G.elements():
            if g in covered:
                continue
            # <H, g> depends only on the right coset Hg
            covered.update(G.mul(h, g) for h in sub)
            joined = _closure(G, gens + (g,))
            if joined not in found:
                found[joined] = gens + (g,)
                queue.append(joined)
    subs = sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))
    for s in subs:
        if G.order % len(s):
            raise AssertionError(f"subgroup of order {len(s)} violates Lagrange")
    return [ExplicitSet(G, s) for s in subs]


def has_no_proper_subgroups(G: FiniteGroup) -> bool:
    """True when the only subgroups are the trivial one and ``G`` itself."""
    return len(enumerate_subgroups(G)) <= 2


def ground_set(G: FiniteGroup, A: Iterable, k, *,
               subgroups: Sequence[ExplicitSet] | None = None) -> list[ExplicitSet]:
    items = _as_set(A)
    k = as_partition(k)
    k.check_for(len(items))
    for a in items:
        if not isinstance(a, int) or not 0 <= a < G.order:
            raise AmbientMismatch(f"{a!r} is not an element of the group")
    if subgroups is None:
        subgroups = enumerate_subgroups(G)
    return [H for H in subgroups if coset_profile(H, items).parts() == k.parts]


def r0(G: FiniteGroup, A: Iterable, k, *,
       subgroups: Sequence[ExplicitSet] | None = None) -> int | None:
    """Minimal index of an ``(A, k)``-ground subgroup, or ``None`` if there is none."""
    ground = ground_set(G, A, k, subgroups=subgroups)
    return min((H.index() for H in ground), default=None)


def partition_vectors(n: int, cap: int = PARTITION_CAP) -> list[PartitionVector]:
    """All ascending integer partitions of ``n`` in lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise TooLarge(f"partition sweep of {n} exceeds cap {cap}")
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], remaining: int, smallest: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(smallest, remaining + 1):
            if part == remaining or remaining - part >= part:
                prefix.append(part)
                extend(prefix, remaining - part, part)
                prefix.pop()

    extend([], n, 1)
    out.sort()
    return [PartitionVector(p) for p in out]


def ground_sweep(G: FiniteGroup, A: Iterable) -> list[tuple[PartitionVector, list[ExplicitSet]]]:
    """``ground_set`` for every admissible partition vector of ``|A|``."""
    items = _as_set(A)
    subgroups = enumerate_subgroups(G)
    return [(k, ground_set(G, items, k, subgroups=subgroups))
            for k in partition_vectors(len(items))]
