"""Potts-like model on the Cayley tree of order ``k``.

Vertices are the reduced words of the free product of ``k + 1`` groups of
order 2. The neighbours of ``v`` are the words ``a_i * v``, so the ball of
radius ``r`` around ``g`` is ``{w * g : |w| <= r}`` and right cosets of a
subgroup are unions of translated points.

The energy of a ball is its size minus the number of distinct colours on
it; the Hamiltonian is ``-J`` times the sum over balls. Infinite-volume sums
are replaced by a finite window: the vertices of length ``<= R`` and the
balls that fit entirely inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Hashable, Iterable, Mapping

import numpy as np

from .errors import (
    ColorOutOfRange,
    MissingCosetColor,
    OrderCapExceeded,
    PartialConfiguration,
    QTooSmall,
    SearchCapExceeded,
    StateSpaceTooLarge,
)
from .freegrp import HAConstruction, build_HA, verify_ones_ground
from .groupcore import (
    DEFAULT_ORDER_CAP,
    Mode,
    Permutation,
    PermRep,
    Word,
    all_words,
    orbit,
)
from .partition import Stabilizer, SubgroupHandle

DEFAULT_STATE_CAP = 2**24
DEFAULT_SEARCH_CAP = 10**6
REPORT_LIMIT = 10**4


@dataclass(frozen=True)
class TreeContext:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("tree order k must be >= 2")

    @property
    def n_gens(self) -> int:
        return self.k + 1

    def generators(self) -> list[Word]:
        return [Word.gen(i, mode=Mode.INVOLUTIVE) for i in range(1, self.n_gens + 1)]

    def identity(self) -> Word:
        return Word.identity(Mode.INVOLUTIVE)

    def words(self, max_len: int, min_len: int = 0) -> list[Word]:
        return all_words(self.n_gens, max_len, Mode.INVOLUTIVE, min_len)


def distance(x: Word, y: Word) -> int:
    return len(x * ~y)


def ball_size(k: int, r: int) -> int:
    """Number of vertices within distance ``r`` of a vertex."""
    if k < 2 or r < 1:
        raise ValueError("need k >= 2 and r >= 1")
    return 1 + (k + 1) * (k**r - 1) // (k - 1)


@dataclass(frozen=True)
class Ball:
    center: Word
    radius: int
    members: tuple[Word, ...]

    def __len__(self) -> int:
        return len(self.members)


def ball(ctx: TreeContext, center: Word, r: int) -> Ball:
    if r < 1:
        raise ValueError("radius must be >= 1")
    gens = ctx.generators()
    members = {center}
    frontier = {center}
    for _ in range(r):
        frontier = {g * v for v in frontier for g in gens} - members
        members |= frontier
    return Ball(center, r, tuple(sorted(members)))


@dataclass(frozen=True)
class Truncation:
    ctx: TreeContext
    R: int
    r: int
    vertices: tuple[Word, ...] = field(init=False)
    balls: tuple[Ball, ...] = field(init=False)
    position: Mapping[Word, int] = field(init=False, repr=False)

    def __post_init__(self):
        if self.R < self.r:
            raise ValueError("window radius R must be >= ball radius r")
        verts = tuple(self.ctx.words(self.R))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "position", {v: i for i, v in enumerate(verts)})
        balls = tuple(ball(self.ctx, c, self.r) for c in self.ctx.words(self.R - self.r))
        object.__setattr__(self, "balls", balls)

    def ball_indices(self) -> list[np.ndarray]:
        return [np.array([self.position[w] for w in b.members]) for b in self.balls]


@dataclass(frozen=True)
class Configuration:
    assignment: Mapping[Word, int]
    q: int

    def __post_init__(self):
        for v, c in self.assignment.items():
            if not 1 <= c <= self.q:
                raise ColorOutOfRange(f"colour {c} at {v} outside 1..{self.q}")

    def on(self, vertices: Iterable[Word]) -> tuple[int, ...]:
        try:
            return tuple(self.assignment[v] for v in vertices)
        except KeyError as exc:
            raise PartialConfiguration(f"no colour at vertex {exc.args[0]}") from None


def energy_U(values: Iterable[int], q: int) -> int:
    values = list(values)
    if not values:
        raise ValueError("energy of an empty ball is undefined")
    for c in values:
        if not 1 <= c <= q:
            raise ColorOutOfRange(f"colour {c} outside 1..{q}")
    return len(values) - len(set(values))


def hamiltonian(config: Configuration, trunc: Truncation, J) -> Fraction:
    J = Fraction(J)
    if J == 0:
        raise ValueError("J must be nonzero")
    colors = config.on(trunc.vertices)
    total = sum(energy_U([colors[trunc.position[w]] for w in b.members], config.q)
                for b in trunc.balls)
    return -J * total


# ---------------------------------------------------------------------------
# ground subgroups for balls


def build_ball_ground_subgroup(ctx: TreeContext, r: int) -> HAConstruction:
    """Normal subgroup whose cosets separate the points of the unit-centred ball."""
    members = ball(ctx, ctx.identity(), r).members
    construction = build_HA(members, ctx.n_gens)
    if not verify_ones_ground(construction.handle, members):
        raise AssertionError("constructed subgroup does not separate the ball")
    return construction


def involutions(d: int) -> list[Permutation]:
    """All involutions of ``{1..d}`` (identity included), lexicographic by images."""
    out: list[tuple[int, ...]] = []

    def build(images: list[int], free: list[int]):
        if not free:
            out.append(tuple(images))
            return
        first, rest = free[0], free[1:]
        images[first - 1] = first
        build(images, rest)
        for j, other in enumerate(rest):
            images[first - 1], images[other - 1] = other, first
            build(images, rest[:j] + rest[j + 1:])
            images[other - 1] = other
        images[first - 1] = first

    build(list(range(1, d + 1)), list(range(1, d + 1)))
    out.sort()
    return [Permutation(t) for t in out]


def stabilizer_ground_search(ctx: TreeContext, r: int, d: int,
                             cap: int = DEFAULT_SEARCH_CAP) -> Stabilizer | None:
    """Transitive involutive action of degree ``d`` in which the ball members
    send point 1 to pairwise distinct points, or ``None`` if there is none."""
    members = ball(ctx, ctx.identity(), r).members
    if d < len(members):
        return None
    pool = involutions(d)
    by_last_gen: dict[int, list[Word]] = {}
    for w in members:
        by_last_gen.setdefault(w.max_generator(), []).append(w)
    n_gens = ctx.n_gens
    chosen: list[Permutation] = []
    nodes = 0

    def image(w: Word) -> int:
        pt = 1
        for g, _ in w.letters:
            pt = chosen[g - 1](pt)
        return pt

    def search(used: frozenset[int]) -> bool:
        nonlocal nodes
        j = len(chosen)
        if j == n_gens:
            return len(orbit(chosen, 1)) == d
        for p in pool:
            nodes += 1
            if nodes > cap:
                raise SearchCapExceeded(f"stabilizer search exceeded {cap} nodes")
            chosen.append(p)
            pts = [image(w) for w in by_last_gen.get(j + 1, [])]
            ok = len(set(pts)) == len(pts) and not used.intersection(pts)
            if ok and search(used | frozenset(pts)):
                return True
            chosen.pop()
        return False

    start = frozenset(image(w) for w in by_last_gen.get(0, []))
    if not search(start):
        return None
    return Stabilizer(PermRep(tuple(chosen), Mode.INVOLUTIVE), 1)


def periodic_configuration(H: SubgroupHandle, coloring: Mapping[Hashable, int],
                           trunc: Truncation, q: int | None = None) -> Configuration:
    """Colour every window vertex by the colour of its right coset."""
    if q is None:
        q = max(coloring.values())
    assignment = {}
    for v in trunc.vertices:
        cid = H.coset_id(v)
        if cid not in coloring:
            raise MissingCosetColor(f"no colour for coset {cid} of vertex {v}")
        assignment[v] = coloring[cid]
    return Configuration(assignment, q)


def count_periodic_ground_states(q: int, K: int) -> int:
    if K < 1:
        raise ValueError("K must be >= 1")
    if q < K:
        raise QTooSmall(f"q={q} colours cannot make {K} points distinct")
    return math.perm(q, K)


# ---------------------------------------------------------------------------
# exhaustive search


def _ball_energy_sums(configs: np.ndarray, ball_idx: list[np.ndarray]) -> np.ndarray:
    total = np.zeros(len(configs), dtype=np.int64)
    for idx in ball_idx:
        sub = np.sort(configs[:, idx], axis=1)
        distinct = 1 + np.count_nonzero(np.diff(sub, axis=1), axis=1)
        total += len(idx) - distinct
    return total


def _decode(ranks: np.ndarray, q: int, n: int) -> np.ndarray:
    # vertex 0 is the most significant digit; colours are 1..q
    out = np.empty((len(ranks), n), dtype=np.int8)
    rem = ranks.copy()
    for j in range(n - 1, -1, -1):
        out[:, j] = rem % q + 1
        rem //= q
    return out


@dataclass
class GroundStates:
    min_energy: Fraction
    count: int
    minimizers: list[tuple[int, ...]] | None
    vertices: tuple[Word, ...]
    energy_histogram: dict[Fraction, int]


def brute_force_ground_states(ctx: TreeContext, r: int, R: int, q: int, J,
                              cap: int = DEFAULT_STATE_CAP,
                              report_limit: int = REPORT_LIMIT,
                              chunk: int = 2**16) -> GroundStates:
    """Minimise the windowed Hamiltonian over all ``q ** |V_R|`` colourings."""
    J = Fraction(J)
    if J == 0:
        raise ValueError("J must be nonzero")
    trunc = Truncation(ctx, R, r)
    n = len(trunc.vertices)
    total = q**n
    if total > cap:
        raise StateSpaceTooLarge(f"{q}^{n} states exceed cap {cap}")
    ball_idx = trunc.ball_indices()
    sign = 1 if J > 0 else -1  # minimise -sign * sumU
    best = None
    best_ranks: list[np.ndarray] = []
    count = 0
    hist: dict[int, int] = {}
    for start in range(0, total, chunk):
        ranks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        sums = _ball_energy_sums(_decode(ranks, q, n), ball_idx)
        vals, freq = np.unique(sums, return_counts=True)
        for v, f in zip(vals.tolist(), freq.tolist()):
            hist[v] = hist.get(v, 0) + f
        objective = -sign * sums
        lo = int(objective.min())
        if best is None or lo < best:
            best, best_ranks, count = lo, [], 0
        if lo == best:
            hit = ranks[objective == lo]
            count += len(hit)
            if count <= report_limit:
                best_ranks.append(hit)
    best_sum = -sign * best
    minimizers = None
    if count <= report_limit:
        ranks = np.concatenate(best_ranks) if best_ranks else np.array([], dtype=np.int64)
        minimizers = [tuple(int(c) for c in row) for row in _decode(ranks, q, n)]
    energies = {-J * s: f for s, f in sorted(hist.items())}
    return GroundStates(-J * best_sum, count, minimizers, trunc.vertices, energies)


# ---------------------------------------------------------------------------
# verification of the ground-state claims on a window


@dataclass
class Theorem3Report:
    k: int
    r: int
    R: int
    q: int
    J: Fraction
    K: int
    min_energy: Fraction
    minimizer_count: int
    constructed_count: int
    formula_count: int | None
    passed: bool
    method: str = ""
    subgroup: str = ""
    index: int | None = None
    notes: list[str] = field(default_factory=list)
    counterexample: tuple[int, ...] | None = None
    energy_histogram: dict[Fraction, int] = field(default_factory=dict)


def find_ball_ground_subgroup(ctx: TreeContext, r: int, max_colors: int,
                              order_cap: int = DEFAULT_ORDER_CAP,
                              search_cap: int = DEFAULT_SEARCH_CAP):
    """Index-``K`` stabilizer if one exists, otherwise the kernel construction.

    Returns ``(handle, method, index)``; ``index`` is ``None`` when it could
    not be computed under ``order_cap``.
    """
    K = ball_size(ctx.k, r)
    if K <= max_colors:
        H = stabilizer_ground_search(ctx, r, K, search_cap)
        if H is not None:
            return H, "stabilizer", K
    construction = build_ball_ground_subgroup(ctx, r)
    try:
        index = construction.index(order_cap)
    except OrderCapExceeded:
        index = None
    return construction.handle, "kernel", index


def verify_theorem3(ctx: TreeContext, r: int, R: int, q: int, J,
                    state_cap: int = DEFAULT_STATE_CAP,
                    order_cap: int = DEFAULT_ORDER_CAP,
                    search_cap: int = DEFAULT_SEARCH_CAP) -> Theorem3Report:
    J = Fraction(J)
    K = ball_size(ctx.k, r)
    gs = brute_force_ground_states(ctx, r, R, q, J, state_cap)
    trunc = Truncation(ctx, R, r)
    n = len(trunc.vertices)
    report = Theorem3Report(ctx.k, r, R, q, J, K, gs.min_energy, gs.count, 0, None, True,
                            energy_histogram=gs.energy_histogram)
    minimizers = None if gs.minimizers is None else set(gs.minimizers)

    if J > 0:
        constants = {(c,) * n for c in range(1, q + 1)}
        report.method = "constant"
        report.constructed_count = len(constants)
        report.formula_count = q
        if minimizers is None or minimizers != constants:
            report.passed = False
            extra = sorted((minimizers or set()) - constants)
            report.counterexample = extra[0] if extra else None
            report.notes.append("minimizers are not exactly the constant configurations")
        return report

    if q < K:
        report.notes.append(f"q={q} < K={K}: no ball can be rainbow; hypothesis not met")
        return report

    H, method, index = find_ball_ground_subgroup(ctx, r, q, order_cap, search_cap)
    report.method, report.subgroup, report.index = method, H.describe(), index
    report.formula_count = count_periodic_ground_states(q, K)
    cosets = sorted({H.coset_id(v) for v in trunc.vertices}, key=str)
    if len(cosets) > q:
        report.passed = False
        report.notes.append(f"{len(cosets)} cosets meet the window but only {q} colours")
        return report
    if math.perm(q, len(cosets)) > state_cap:
        raise StateSpaceTooLarge("too many injective coset colourings to enumerate")

    constructed = set()
    for colors in permutations(range(1, q + 1), len(cosets)):
        config = periodic_configuration(H, dict(zip(cosets, colors)), trunc, q)
        colours = config.on(trunc.vertices)
        constructed.add(colours)
        if hamiltonian(config, trunc, J) != gs.min_energy:
            report.passed = False
            report.counterexample = colours
            report.notes.append("a periodic configuration misses the minimum energy")
            break
    report.constructed_count = len(constructed)

    if minimizers is not None:
        if R == r and constructed != minimizers:
            report.passed = False
            report.notes.append("periodic configurations differ from the minimizer set")
        elif not constructed <= minimizers:
            report.passed = False
            report.notes.append("a periodic configuration is not a minimizer")
    if R > r:
        report.notes.append("window R > r admits extra boundary minimizers; containment checked")
    if index == K and report.constructed_count < report.formula_count:
        report.passed = False
        report.notes.append("fewer periodic ground states than q!/(q-K)!")
    return report
