"""Element arithmetic: reduced words, permutations, Cayley tables, and
permutation representations.

Conventions used throughout the package:

* Generators are numbered from 1. A letter is a pair ``(generator, sign)``
  with ``sign`` in ``{+1, -1}``.
* ``Mode.FREE`` words live in a free group; ``Mode.INVOLUTIVE`` words live in
  the free product of order-2 groups, where every generator is its own
  inverse and all stored signs are ``+1``.
* Permutations act on the points ``1..d`` from the right, and products read
  left to right: ``p * q`` applies ``p`` first, then ``q``.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterable, Sequence

from .errors import (
    ModeMismatch,
    OrderCapExceeded,
    TableNotAGroup,
    UnknownGenerator,
    WordSyntaxError,
)

DEFAULT_ORDER_CAP = 10**6

Letter = tuple[int, int]


class Mode(enum.Enum):
    FREE = "free"
    INVOLUTIVE = "involutive"


# ---------------------------------------------------------------------------
# words


def _reduce_letters(letters: Iterable[Sequence[int]], mode: Mode) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for item in letters:
        gen, sign = int(item[0]), int(item[1])
        if gen < 1:
            raise ValueError(f"generator index must be >= 1, got {gen}")
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        if mode is Mode.INVOLUTIVE:
            sign = 1
            if stack and stack[-1][0] == gen:
                stack.pop()
                continue
        elif stack and stack[-1] == (gen, -sign):
            stack.pop()
            continue
        stack.append((gen, sign))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A group element stored in reduced normal form.

    Any letter sequence passed to the constructor is reduced, so two words
    are equal exactly when they denote the same element.
    """

    letters: tuple[Letter, ...] = ()
    mode: Mode = Mode.FREE

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce_letters(self.letters, self.mode))

    @classmethod
    def identity(cls, mode: Mode = Mode.FREE) -> "Word":
        return cls((), mode)

    @classmethod
    def gen(cls, index: int, sign: int = 1, mode: Mode = Mode.FREE) -> "Word":
        return cls(((index, sign),), mode)

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return word_mul(self, other)

    def __invert__(self) -> "Word":
        return word_inv(self)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else word_inv(self)
        return Word(base.letters * abs(n), self.mode)

    def generators(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.letters)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def sort_key(self):
        return (len(self.letters), self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, {self.mode.value})"


def reduce(letters: Iterable[Sequence[int]], mode: Mode = Mode.FREE) -> Word:
    """Return the reduced word for a raw letter sequence."""
    return Word(tuple(letters), mode)


def word_mul(u: Word, v: Word) -> Word:
    if u.mode is not v.mode:
        raise ModeMismatch(f"cannot multiply {u.mode.value} and {v.mode.value} words")
    return Word(u.letters + v.letters, u.mode)


def word_inv(u: Word) -> Word:
    if u.mode is Mode.INVOLUTIVE:
        return Word(u.letters[::-1], u.mode)
    return Word(tuple((g, -s) for g, s in reversed(u.letters)), u.mode)


def alpha(x: Word) -> int:
    """Number of distinct generators occurring in ``x``."""
    return len(x.generators())


def all_words(n_gens: int, max_len: int, mode: Mode = Mode.FREE,
              min_len: int = 0) -> list[Word]:
    """All reduced words with ``min_len <= length <= max_len``, shortlex order."""
    letters = [(g, 1) for g in range(1, n_gens + 1)]
    if mode is Mode.FREE:
        letters = [(g, s) for g in range(1, n_gens + 1) for s in (1, -1)]
    out = []
    layer = [()]
    for length in range(max_len + 1):
        if length >= min_len:
            out.extend(Word(t, mode) for t in layer)
        nxt = []
        for t in layer:
            for letter in letters:
                if t:
                    last = t[-1]
                    if mode is Mode.FREE and last == (letter[0], -letter[1]):
                        continue
                    if mode is Mode.INVOLUTIVE and last[0] == letter[0]:
                        continue
                nxt.append(t + (letter,))
        layer = nxt
    return out


# textual syntax: a1, a2, ... with aliases a-z (e is the identity), powers
# via ^n, product via *; juxtaposition of single-letter aliases is allowed.

_TOKEN = re.compile(r"\s*(a\d+|[a-z])(\^(-?\d+))?")


def _alias_index(name: str) -> int:
    if name.startswith("a") and len(name) > 1:
        return int(name[1:])
    return ord(name) - ord("a") + 1


def parse_word(text: str, mode: Mode = Mode.FREE) -> Word:
    """Parse e.g. ``"a*b^-1*a"``, ``"ab^-1"``, ``"a1*a12"`` or ``"e"``."""
    letters: list[Letter] = []
    text = text.strip()
    if not text:
        raise WordSyntaxError("empty word (use 'e' for the identity)")
    for factor in text.split("*"):
        factor = factor.strip()
        if factor == "e":
            continue
        pos = 0
        if not factor:
            raise WordSyntaxError(f"empty factor in {text!r}")
        while pos < len(factor):
            m = _TOKEN.match(factor, pos)
            if not m or m.end() == pos:
                raise WordSyntaxError(f"cannot parse {factor[pos:]!r} in {text!r}")
            name, exp = m.group(1), m.group(3)
            if name == "e":
                raise WordSyntaxError("'e' denotes the identity; write generator 5 as a5")
            index = _alias_index(name)
            if index < 1:
                raise WordSyntaxError(f"generator index must be >= 1 in {text!r}")
            power = 1 if exp is None else int(exp)
            if power < 0 and mode is Mode.INVOLUTIVE:
                raise WordSyntaxError("inverse suffix is only valid for free words")
            letters.extend([(index, 1 if power > 0 else -1)] * abs(power))
            pos = m.end()
    return Word(tuple(letters), mode)


def parse_word_list(text: str, mode: Mode = Mode.FREE) -> list[Word]:
    return [parse_word(t, mode) for t in text.split(",") if t.strip()]


def _gen_name(index: int) -> str:
    if index <= 26 and index != 5:
        return chr(ord("a") + index - 1)
    return f"a{index}"


def format_word(w: Word) -> str:
    if w.is_identity():
        return "e"
    return "*".join(_gen_name(g) + ("^-1" if s < 0 else "") for g, s in w.letters)


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..d}``; ``images[i-1]`` is the image of point ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(1, degree + 1))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                images[pt - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # self first, then other
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def perm_group_order(generators: Iterable[Permutation], cap: int = DEFAULT_ORDER_CAP) -> int:
    """Order of the permutation group generated by ``generators``.

    Plain breadth-first closure; raises :class:`OrderCapExceeded` as soon as
    more than ``cap`` elements have been found.
    """
    gens = list(generators)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if not gens:
        return 1
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators must share one degree")
    gens = [g for g in set(gens) if not g.is_identity()]
    # elements stored 0-based; new = g * elem, i.e. new[i] = elem[g[i]]
    getters = [itemgetter(*[i - 1 for i in g.images]) for g in gens]
    start = tuple(range(degree))
    if degree == 1:
        return 1
    seen = {start}
    queue = deque([start])
    while queue:
        elem = queue.popleft()
        for get in getters:
            nxt = get(elem)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise OrderCapExceeded(cap)
                queue.append(nxt)
    return len(seen)


def orbit(generators: Iterable[Permutation], point: int) -> list[int]:
    """Orbit of ``point`` under the group generated by ``generators``, sorted."""
    gens = list(generators)
    seen = {point}
    queue = deque([point])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = g(p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return sorted(seen)


# ---------------------------------------------------------------------------
# finite groups given by Cayley tables


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group on element indices ``0..n-1`` with a multiplication table."""

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    identity: int
    inverses: tuple[int, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def elements(self) -> range:
        return range(len(self.table))


def make_from_table(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                    name: str = "") -> FiniteGroup:
    """Validate a Cayley table and wrap it as a :class:`FiniteGroup`.

    Checks shape, closure, identity, inverses and full associativity.
    """
    n = len(table)
    if n == 0:
        raise TableNotAGroup("nonempty", ())
    rows = tuple(tuple(int(x) for x in row) for row in table)
    for a, row in enumerate(rows):
        if len(row) != n:
            raise TableNotAGroup("square shape", (a,))
        for b, x in enumerate(row):
            if not 0 <= x < n:
                raise TableNotAGroup("closure", (a, b, x))
    ident = None
    for e in range(n):
        if all(rows[e][a] == a and rows[a][e] == a for a in range(n)):
            ident = e
            break
    if ident is None:
        raise TableNotAGroup("identity", (0,))
    inverses = []
    for a in range(n):
        inv = next((b for b in range(n) if rows[a][b] == ident and rows[b][a] == ident), None)
        if inv is None:
            raise TableNotAGroup("inverse", (a,))
        inverses.append(inv)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            rb = rows[b]
            rab = rows[ab]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise TableNotAGroup("associativity", (a, b, c))
    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise ValueError("one label per element required")
    return FiniteGroup(rows, tuple(labels), ident, tuple(inverses), name)


def make_cyclic(n: int) -> FiniteGroup:
    """Z_n with elements 0..n-1 under addition mod n."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return make_from_table(table, name=f"Z{n}")


# ---------------------------------------------------------------------------
# permutation representations


@dataclass(frozen=True)
class PermRep:
    """Homomorphism from a free group (or free product of order-2 groups)
    into ``Sym(d)``, given by the image of each generator."""

    images: tuple[Permutation, ...]
    mode: Mode = Mode.FREE
    inverses: tuple[Permutation, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if images:
            d = images[0].degree
            if any(p.degree != d for p in images):
                raise ValueError("all generator images must share one degree")
        if self.mode is Mode.INVOLUTIVE:
            for g, p in enumerate(images, start=1):
                if not (p * p).is_identity():
                    raise ValueError(f"generator {g} image {p} is not an involution")
        object.__setattr__(self, "inverses", tuple(p.inverse() for p in images))

    @property
    def degree(self) -> int:
        return self.images[0].degree if self.images else 1

    @property
    def n_gens(self) -> int:
        return len(self.images)

    @classmethod
    def trivial(cls, n_gens: int, mode: Mode = Mode.FREE, degree: int = 1) -> "PermRep":
        return cls(tuple(Permutation.identity(degree) for _ in range(n_gens)), mode)

    def letter_image(self, gen: int, sign: int) -> Permutation:
        if not 1 <= gen <= len(self.images):
            raise UnknownGenerator(gen)
        return self.images[gen - 1] if sign > 0 else self.inverses[gen - 1]


def _check_word(rep: PermRep, w: Word) -> None:
    if w.mode is not rep.mode:
        raise ModeMismatch(f"{w.mode.value} word evaluated in a {rep.mode.value} representation")
    if w.max_generator() > rep.n_gens:
        raise UnknownGenerator(w.max_generator())


def rep_eval(rep: PermRep, w: Word) -> Permutation:
    """Image of ``w``; ``rep_eval(u * v) == rep_eval(u) * rep_eval(v)``."""
    _check_word(rep, w)
    result = list(range(1, rep.degree + 1))
    for gen, sign in w.letters:
        p = rep.letter_image(gen, sign).images
        result = [p[x - 1] for x in result]
    return Permutation(tuple(result))


def point_image(rep: PermRep, w: Word, point: int) -> int:
    """``point`` acted on by ``rep_eval(rep, w)`` without building the permutation."""
    _check_word(rep, w)
    for gen, sign in w.letters:
        point = rep.letter_image(gen, sign)(point)
    return point


def rep_index(rep: PermRep, cap: int = DEFAULT_ORDER_CAP) -> int:
    """Order of the image group, i.e. the index of the kernel."""
    return perm_group_order(rep.images, cap)
