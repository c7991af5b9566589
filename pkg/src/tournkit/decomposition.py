"""Intervals, Gallai partitions, quotients and strong connectivity.

Vertex sets cross the public API as frozensets; internally they are bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .core import Tournament, mask_of, restrict, vertices_of
from .errors import (IndecomposabilityError, IntervalError, PreconditionError,
                     TheoremViolation, TournamentError, VertexError)


def _as_mask(t: Tournament, vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if not 0 <= v < t.n:
            raise VertexError(f"vertex {v} out of range for n={t.n}")
        m |= 1 << v
    return m


def _fs(mask: int) -> frozenset[int]:
    return frozenset(vertices_of(mask))


# -- intervals -----------------------------------------------------------------


def _interval_mask(out, full: int, mask: int) -> bool:
    rest = full & ~mask
    for x in vertices_of(rest):
        hit = out[x] & mask
        if hit and hit != mask:
            return False
    return True


def closure(out, full: int, mask: int) -> int:
    """Smallest interval containing the non-empty set ``mask``.

    Any vertex telling two members apart must join; once none does, every
    outside vertex sees the set uniformly.
    """
    a = (mask & -mask).bit_length() - 1
    base = out[a]
    closed = mask
    queue = vertices_of(mask & ~(1 << a))
    while queue:
        y = queue.pop()
        new = (base ^ out[y]) & full & ~closed
        if new:
            closed |= new
            if closed == full:
                return full
            queue.extend(vertices_of(new))
    return closed


def is_interval(t: Tournament, vertices: Iterable[int]) -> bool:
    return _interval_mask(t.out, t.full, _as_mask(t, vertices))


def interval_masks(out, n: int) -> set[int]:
    """Every non-empty interval: singletons, V, and all pair closures."""
    full = (1 << n) - 1
    found = {1 << v for v in range(n)}
    found.add(full)
    for a in range(n):
        for b in range(a + 1, n):
            found.add(closure(out, full, (1 << a) | (1 << b)))
    return found


def intervals(t: Tournament) -> list[frozenset[int]]:
    return sorted((_fs(m) for m in interval_masks(t.out, t.n)),
                  key=lambda s: (len(s), sorted(s)))


def decomposable_out(out) -> bool:
    n = len(out)
    full = (1 << n) - 1
    for a in range(n):
        for b in range(a + 1, n):
            if closure(out, full, (1 << a) | (1 << b)) != full:
                return True
    return False


def is_decomposable(t: Tournament) -> bool:
    """True iff some interval other than the trivial ones exists."""
    return decomposable_out(t.out)


def is_indecomposable(t: Tournament) -> bool:
    return not decomposable_out(t.out)


def minimal_nontrivial_interval(t: Tournament) -> frozenset[int] | None:
    full = t.full
    best = None
    for a, b in combinations(range(t.n), 2):
        c = closure(t.out, full, (1 << a) | (1 << b))
        if c != full and (best is None or c.bit_count() < best.bit_count()
                          or (c.bit_count() == best.bit_count() and c < best)):
            best = c
    return None if best is None else _fs(best)


def _strong_masks(out, n: int) -> list[int]:
    ivs = sorted(interval_masks(out, n))
    strong = []
    for i in ivs:
        for j in ivs:
            common = i & j
            if common and common != i and common != j:
                break
        else:
            strong.append(i)
    return strong


def strong_intervals(t: Tournament) -> list[frozenset[int]]:
    """Intervals that never properly overlap another interval, incl. V."""
    return sorted((_fs(m) for m in _strong_masks(t.out, t.n)),
                  key=lambda s: (len(s), sorted(s)))


# -- partitions ------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty blocks, stored sorted by their minimal element."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min_or_fail))
        seen = set()
        for b in blocks:
            if seen & b:
                raise TournamentError("partition blocks overlap")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "Partition":
        return cls(tuple(_fs(m) for m in masks))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(tuple(frozenset(int(v) for v in part.split(",")) for part in text.split("|")))

    def masks(self) -> list[int]:
        return [mask_of(b) for b in self.blocks]

    def covers(self, n: int) -> bool:
        return sum(len(b) for b in self.blocks) == n and set().union(*self.blocks) == set(range(n))

    def block_of(self, v: int) -> frozenset[int]:
        for b in self.blocks:
            if v in b:
                return b
        raise VertexError(f"vertex {v} is in no block")

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __str__(self):
        return "|".join(",".join(str(v) for v in sorted(b)) for b in self.blocks)


def min_or_fail(block: frozenset[int]) -> int:
    if not block:
        raise TournamentError("partition blocks must be non-empty")
    return min(block)


def gallai_partition(t: Tournament) -> Partition:
    """P(T): the maximal strong intervals among those distinct from V."""
    if t.n < 2:
        raise PreconditionError("P(T) needs at least two vertices")
    full = t.full
    strong = [m for m in _strong_masks(t.out, t.n) if m != full]
    maximal = [m for m in strong if not any(o != m and (o & m) == m for o in strong)]
    return Partition.from_masks(maximal)


def quotient(t: Tournament, partition: Partition) -> Tournament:
    """T/P: one vertex per block, ordered as the partition's blocks."""
    if not partition.covers(t.n):
        raise TournamentError("partition does not cover the vertex set")
    masks = partition.masks()
    for b, m in zip(partition.blocks, masks):
        if not _interval_mask(t.out, t.full, m):
            raise IntervalError(f"block {sorted(b)} is not an interval", block=b)
    reps = [min(b) for b in partition.blocks]
    out = []
    for r in reps:
        row = 0
        for j, s in enumerate(reps):
            if (t.out[r] >> s) & 1:
                row |= 1 << j
        out.append(row)
    return Tournament(len(reps), tuple(out))


def tilde_partition(t: Tournament) -> Partition:
    """P~(T): P(T), with runs of consecutive singleton components merged.

    Consecutiveness is read off the quotient T/P(T), which is transitive when T
    is not strongly connected. A one-vertex tournament gets its only block.
    """
    if t.n == 1:
        return Partition((frozenset([0]),))
    p = gallai_partition(t)
    if is_strongly_connected(t):
        return p
    q = quotient(t, p)
    order = sorted(range(q.n), key=lambda i: -q.out[i].bit_count())
    blocks = []
    run = set()
    for i in order:
        b = p.blocks[i]
        if len(b) == 1:
            run |= b
        else:
            if run:
                blocks.append(frozenset(run))
                run = set()
            blocks.append(b)
    if run:
        blocks.append(frozenset(run))
    return Partition(tuple(blocks))


# -- strong connectivity ----------------------------------------------------------


def _reach(adj, v: int) -> int:
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for u in vertices_of(frontier):
            nxt |= adj[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def _in_adj(out) -> list[int]:
    n = len(out)
    full = (1 << n) - 1
    return [full & ~o & ~(1 << v) for v, o in enumerate(out)]


def strongly_connected_out(out) -> bool:
    full = (1 << len(out)) - 1
    return _reach(out, 0) == full and _reach(_in_adj(out), 0) == full


def is_strongly_connected(t: Tournament) -> bool:
    return strongly_connected_out(t.out)


def scc_masks(out) -> list[int]:
    """Components by mutual reachability, dominating components first."""
    n = len(out)
    reach = [_reach(out, v) for v in range(n)]
    comps = []
    assigned = 0
    for v in range(n):
        if (assigned >> v) & 1:
            continue
        comp = 0
        for u in vertices_of(reach[v]):
            if (reach[u] >> v) & 1:
                comp |= 1 << u
        assigned |= comp
        comps.append((reach[v].bit_count(), comp))
    comps.sort(key=lambda rc: -rc[0])
    return [c for _, c in comps]


def scc_order(t: Tournament) -> list[frozenset[int]]:
    return [_fs(m) for m in scc_masks(t.out)]


# -- interval neighborhoods ------------------------------------------------------


def outside_split(t: Tournament, interval: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """``(I+, I-)``: outside vertices dominated by I, and those dominating I."""
    m = _as_mask(t, interval)
    if not m:
        raise PreconditionError("the interval must be non-empty")
    if not _interval_mask(t.out, t.full, m):
        raise IntervalError(f"{sorted(vertices_of(m))} is not an interval",
                            block=_fs(m))
    rep = (m & -m).bit_length() - 1
    plus = t.out[rep] & ~m
    minus = t.full & ~m & ~plus
    return _fs(plus), _fs(minus)


@dataclass(frozen=True)
class ExtReport:
    """Classification of the vertices outside an indecomposable X.

    A vertex is recorded under every category it satisfies, so a failure of
    the partition property stays visible instead of being resolved silently.
    """

    ext: frozenset[int]
    bracket: frozenset[int]
    slots: dict = field(default_factory=dict)

    def is_partition_of(self, rest: Iterable[int]) -> bool:
        parts = [self.ext, self.bracket, *self.slots.values()]
        total = sum(len(p) for p in parts)
        union = set().union(*parts)
        return total == len(union) and union == set(rest)


def ext_partition(t: Tournament, x_set: Iterable[int]) -> ExtReport:
    xm = _as_mask(t, x_set)
    if xm.bit_count() < 3:
        raise IndecomposabilityError("X needs at least three vertices")
    xs = vertices_of(xm)
    if decomposable_out(restrict(t, xs).out):
        raise IndecomposabilityError(f"T[{xs}] is decomposable")
    ext, bracket = 0, 0
    slots = {u: 0 for u in xs}
    for x in vertices_of(t.full & ~xm):
        ox = t.out[x]
        if not decomposable_out(restrict(t, xs + [x]).out):
            ext |= 1 << x
        hit = ox & xm
        if hit == 0 or hit == xm:
            bracket |= 1 << x
        for u in xs:
            if (t.out[u] ^ ox) & xm & ~(1 << u) == 0:
                slots[u] |= 1 << x
    return ExtReport(_fs(ext), _fs(bracket), {u: _fs(m) for u, m in slots.items()})


# -- constructive procedures -------------------------------------------------------


def moon_extend(t: Tournament, x: int, k: int) -> frozenset[int]:
    """A k-set containing ``x`` that induces a strongly connected subtournament.

    Greedy: start from the least 3-cycle through ``x`` and add the least
    vertex with both an in- and an out-neighbor in the current set; fall back
    to a lexicographic search if the greedy step gets stuck.
    """
    if t.n < 3 or not 3 <= k <= t.n:
        raise PreconditionError(f"need n >= 3 and 3 <= k <= n (n={t.n}, k={k})")
    if not 0 <= x < t.n:
        raise VertexError(f"vertex {x} out of range for n={t.n}")
    if not is_strongly_connected(t):
        raise PreconditionError("T must be strongly connected")
    out = t.out
    full = t.full
    if k == t.n:
        return frozenset(range(t.n))
    others = [v for v in range(t.n) if v != x]
    chosen = 0
    for a, b in combinations(others, 2):
        if ((out[x] >> a) & 1) == ((out[a] >> b) & 1) == ((out[b] >> x) & 1):
            chosen = (1 << x) | (1 << a) | (1 << b)
            break
    while chosen and chosen.bit_count() < k:
        for v in vertices_of(full & ~chosen):
            dominated = out[v] & chosen
            if dominated and dominated != chosen:
                chosen |= 1 << v
                break
        else:
            chosen = 0
    if chosen:
        return _fs(chosen)
    for rest in combinations(others, k - 1):
        verts = sorted((x,) + rest)
        if strongly_connected_out(restrict(t, verts).out):
            return frozenset(verts)
    raise TheoremViolation("no strongly connected k-set through x", instance=t)


def indec_extend_pair(t: Tournament, x_set: Iterable[int]) -> tuple[int, int]:
    """Two outside vertices whose addition keeps T[X] indecomposable."""
    xm = _as_mask(t, x_set)
    xs = vertices_of(xm)
    rest = vertices_of(t.full & ~xm)
    if len(xs) < 3 or len(rest) < 2:
        raise PreconditionError("need |X| >= 3 and at least two outside vertices")
    if decomposable_out(t.out):
        raise IndecomposabilityError("T must be indecomposable")
    if decomposable_out(restrict(t, xs).out):
        raise IndecomposabilityError(f"T[{xs}] is decomposable")
    for x, y in combinations(rest, 2):
        if not decomposable_out(restrict(t, sorted(xs + [x, y])).out):
            return x, y
    raise TheoremViolation("no indecomposable two-vertex extension exists", instance=t)
