"""Finite-index normal subgroups of free groups that separate a finite set.

For a nontrivial reduced word ``x`` of length ``n`` the representation built
by :func:`hx_rep` acts on ``n + 1`` points and sends point 1 along the word
to point ``n + 1``, so its kernel ``H_x`` avoids ``x``. Intersecting such
kernels over the nontrivial differences ``x * y^-1`` of a set ``A`` gives a
normal subgroup ``H_A`` whose right cosets hold at most one element of ``A``.

Both modes are supported: free groups, and free products of order-2 groups
(where a letter's image is a product of disjoint transpositions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContainsIdentity, EmptySet, EmptyStar, IdentityWord, ModeMismatch
from .groupcore import (
    DEFAULT_ORDER_CAP,
    Mode,
    Permutation,
    PermRep,
    Word,
    alpha,
    word_inv,
    word_mul,
)
from .partition import Kernel, SubgroupHandle, coset_profile


def _words(A: Iterable[Word]) -> list[Word]:
    items = list(A)
    if not items:
        raise EmptySet("the set must be nonempty")
    if len({w.mode for w in items}) > 1:
        raise ModeMismatch("all words in a set must share one mode")
    if len(set(items)) != len(items):
        raise ValueError("the set contains duplicate words")
    return items


@dataclass(frozen=True)
class DifferenceSet:
    base: tuple[Word, ...]
    star: frozenset[Word]

    def nonidentity(self) -> list[Word]:
        return sorted(z for z in self.star if not z.is_identity())


def difference_set(A: Iterable[Word]) -> DifferenceSet:
    """All products ``x * y^-1`` with ``x, y`` in ``A``."""
    items = _words(A)
    star = frozenset(word_mul(x, word_inv(y)) for x in items for y in items)
    return DifferenceSet(tuple(items), star)


@dataclass(frozen=True)
class LemmaReport:
    identity_in_star: bool
    star_is_trivial: bool
    is_singleton: bool
    equals_star: bool
    disjoint_from_star: bool
    identity_in_set: bool
    subset_of_star: bool
    subset_of_basis: bool | None = None

    @property
    def consistent(self) -> bool:
        """The two equivalences that can be checked on any finite set."""
        return (self.identity_in_star
                and self.star_is_trivial == self.is_singleton
                and self.subset_of_star == self.identity_in_set)


def lemma_report(A: Iterable[Word], basis: Sequence[Word] | None = None) -> LemmaReport:
    items = _words(A)
    ds = difference_set(items)
    aset = frozenset(items)
    ident = Word.identity(items[0].mode)
    return LemmaReport(
        identity_in_star=ident in ds.star,
        star_is_trivial=ds.star == {ident},
        is_singleton=len(items) == 1,
        equals_star=aset == ds.star,
        disjoint_from_star=not (aset & ds.star),
        identity_in_set=ident in aset,
        subset_of_star=aset <= ds.star,
        subset_of_basis=None if basis is None else aset <= frozenset(basis),
    )


# ---------------------------------------------------------------------------
# H_x


def _free_letter_perm(arcs: dict[int, int], degree: int) -> Permutation:
    # arcs: partial injection along a path graph; close each maximal path
    images = list(range(1, degree + 1))
    targets = set(arcs.values())
    for src, dst in arcs.items():
        images[src - 1] = dst
    for start in arcs:
        if start in targets:
            continue
        end = start
        while end in arcs:
            end = arcs[end]
        images[end - 1] = start
    return Permutation(tuple(images))


def hx_rep(x: Word, n_gens: int | None = None) -> PermRep:
    """Degree ``|x| + 1`` representation in which ``x`` moves 1 to ``|x| + 1``.

    Generators not occurring in ``x`` act trivially.
    """
    if x.is_identity():
        raise IdentityWord("the identity lies in every subgroup")
    n = len(x)
    degree = n + 1
    n_gens = max(n_gens or 0, x.max_generator())
    images = []
    for g in range(1, n_gens + 1):
        if x.mode is Mode.INVOLUTIVE:
            cycles = [(j, j + 1) for j, (gen, _) in enumerate(x.letters, start=1) if gen == g]
            images.append(Permutation.from_cycles(degree, *cycles))
            continue
        arcs: dict[int, int] = {}
        for j, (gen, sign) in enumerate(x.letters, start=1):
            if gen != g:
                continue
            src, dst = (j, j + 1) if sign > 0 else (j + 1, j)
            if src in arcs or dst in arcs.values():
                raise AssertionError(f"{x} is not reduced")
            arcs[src] = dst
        images.append(_free_letter_perm(arcs, degree))
    return PermRep(tuple(images), x.mode)


def build_Hx(x: Word, n_gens: int | None = None) -> Kernel:
    return Kernel(hx_rep(x, n_gens))


def block_rep(reps: Sequence[PermRep]) -> PermRep:
    """Block-diagonal sum; its kernel is the intersection of the kernels."""
    if not reps:
        raise ValueError("need at least one block")
    n_gens = max(r.n_gens for r in reps)
    mode = reps[0].mode
    images = []
    for g in range(n_gens):
        pts: list[int] = []
        offset = 0
        for r in reps:
            if g < r.n_gens:
                pts.extend(offset + i for i in r.images[g].images)
            else:
                pts.extend(range(offset + 1, offset + r.degree + 1))
            offset += r.degree
        images.append(Permutation(tuple(pts)))
    return PermRep(tuple(images), mode)


def _max_gen(words: Iterable[Word], n_gens: int | None) -> int:
    return max([n_gens or 0] + [w.max_generator() for w in words])


@dataclass(frozen=True)
class HAConstruction:
    handle: Kernel
    star: tuple[Word, ...]
    bounds: tuple[int, int]

    @property
    def degree(self) -> int:
        return self.handle.rep.degree

    def index(self, cap: int = DEFAULT_ORDER_CAP) -> int:
        return self.handle.index(cap)


def build_HA(A: Iterable[Word], n_gens: int | None = None) -> HAConstruction:
    """Kernel of the block sum of ``hx_rep(z)`` over ``z`` in ``A* \\ {e}``."""
    items = _words(A)
    if len(items) < 2:
        raise EmptyStar("A* \\ {e} is empty for a singleton set")
    star = difference_set(items).nonidentity()
    n_gens = _max_gen(items, n_gens)
    rep = block_rep([hx_rep(z, n_gens) for z in star])
    return HAConstruction(Kernel(rep), tuple(star), _bounds(star))


def avoid_set(B: Iterable[Word], n_gens: int | None = None) -> Kernel:
    """Finite-index normal subgroup meeting ``B`` nowhere (``e`` not in ``B``)."""
    items = _words(B)
    if any(w.is_identity() for w in items):
        raise ContainsIdentity("no subgroup avoids the identity")
    n_gens = _max_gen(items, n_gens)
    return Kernel(block_rep([hx_rep(w, n_gens) for w in sorted(items)]))


def verify_ones_ground(H: SubgroupHandle, A: Iterable[Word]) -> bool:
    """Every right coset of ``H`` holds at most one element of ``A``."""
    return all(c == 1 for c in coset_profile(H, A).counts.values())


def _bounds(star: Iterable[Word]) -> tuple[int, int]:
    lower, upper = 1, 1
    for z in star:
        lower *= alpha(z) + 1
        upper *= math.factorial(len(z) + 1)
    return lower, upper


def index_bounds(x) -> tuple[int, int]:
    """``(alpha(x) + 1, (|x| + 1)!)`` for a word, or the products of these
    over ``A* \\ {e}`` for a set of words."""
    if isinstance(x, Word):
        if x.is_identity():
            raise IdentityWord("bounds are defined for nontrivial words")
        return alpha(x) + 1, math.factorial(len(x) + 1)
    items = _words(x)
    if len(items) < 2:
        raise EmptyStar("A* \\ {e} is empty for a singleton set")
    return _bounds(difference_set(items).nonidentity())
