"""Random structured tournaments and constructed hypomorphic partners.

A partner T' keeps an interval partition of T as a common interval
partition. Between blocks it copies the quotient or its dual; inside each
block it copies T, reverses it, or relabels it. Keeping the quotient and
replacing every block by a hereditarily isomorphic copy gives a tournament
hereditarily isomorphic to T, hence hypomorphic to it in every sense.
"""

from __future__ import annotations

from ..core import Tournament, lex_sum, restrict, transitive
from ..decomposition import Partition, decomposable_out, strongly_connected_out
from ..families import random_composition, random_decomposable, random_tournament
from ..hypomorphy import self_dual_on_sizes


def random_strong(n: int, rng) -> Tournament:
    """A random strongly connected tournament (n >= 3)."""
    while True:
        t = random_tournament(n, rng)
        if strongly_connected_out(t.out):
            return t


def random_indecomposable(n: int, rng, tries: int = 10000) -> Tournament:
    for _ in range(tries):
        t = random_tournament(n, rng)
        if not decomposable_out(t.out):
            return t
    raise RuntimeError(f"no indecomposable tournament drawn at n={n}")


def _random_part(size: int, rng) -> Tournament:
    r = rng.random()
    if size >= 3 and r < 0.25:
        return random_decomposable(size, rng)
    if r < 0.4:
        return transitive(size)
    return random_tournament(size, rng)


def random_strong_decomposable(n: int, rng) -> Tournament:
    """Lexicographic sum over a strongly connected shape with 3..n-1 vertices."""
    if n < 4:
        raise ValueError("needs n >= 4")
    k = int(rng.integers(3, n))
    shape = random_strong(k, rng)
    return lex_sum(shape, [_random_part(s, rng) for s in random_composition(n, k, rng)])


def random_nonstrong(n: int, rng, allow_transitive: bool = False) -> Tournament:
    """Lexicographic sum over a transitive shape, mixing point runs and larger blocks."""
    while True:
        k = int(rng.integers(2, n))
        parts = []
        for s in random_composition(n, k, rng):
            if s >= 3 and rng.random() < 0.6:
                parts.append(random_strong(s, rng))
            else:
                parts.append(_random_part(s, rng))
        t = lex_sum(transitive(k), parts)
        if allow_transitive or sorted(t.scores()) != list(range(n)):
            return t


def strongly_self_dual_out(t: Tournament) -> bool:
    return self_dual_on_sizes(t, range(4, t.n + 1))


def reassemble(t: Tournament, partition: Partition, quotient_dual: bool,
               block_perms: dict) -> Tournament:
    """T' from T: blocks of ``partition`` are kept as a common interval partition.

    ``block_perms[i]`` is ``None`` to copy block i, ``"dual"`` to reverse it,
    or a dict mapping the block onto itself, giving T'[f(u)] -> T'[f(v)]
    for every arc u -> v of T inside the block.
    """
    owner = [0] * t.n
    for i, b in enumerate(partition.blocks):
        for v in b:
            owner[v] = i
    out = [0] * t.n
    for u in range(t.n):
        for v in range(u + 1, t.n):
            bu, bv = owner[u], owner[v]
            if bu != bv:
                fwd = t.beats(u, v) != quotient_dual
                a, b = (u, v) if fwd else (v, u)
            else:
                mode = block_perms.get(bu)
                if mode is None:
                    a, b = (u, v) if t.beats(u, v) else (v, u)
                elif mode == "dual":
                    a, b = (v, u) if t.beats(u, v) else (u, v)
                else:
                    a, b = (mode[u], mode[v]) if t.beats(u, v) else (mode[v], mode[u])
            out[a] |= 1 << b
    return Tournament(t.n, tuple(out))


def _sub(t: Tournament, block) -> Tournament:
    return restrict(t, sorted(block))


def _is_transitive(t: Tournament) -> bool:
    return sorted(t.scores()) == list(range(t.n))


def hereditary_partner(t: Tournament, partition: Partition, rng) -> Tournament:
    """A partner hereditarily isomorphic to T, usually with different labels.

    Transitive blocks get a random linear order; strongly self dual blocks
    may be reversed; other blocks are copied.
    """
    perms = {}
    for i, b in enumerate(partition.blocks):
        if len(b) < 2:
            continue
        sub = _sub(t, b)
        if _is_transitive(sub):
            verts = sorted(b)
            order = [verts[j] for j in rng.permutation(len(verts))]
            # vertex of rank r in T goes to the vertex of rank r in the new order
            ranked = sorted(verts, key=lambda v: -(t.out[v] & _mask(b)).bit_count())
            perms[i] = {u: order[r] for r, u in enumerate(ranked)}
        elif rng.random() < 0.5 and strongly_self_dual_out(sub):
            perms[i] = "dual"
    return reassemble(t, partition, False, perms)


def _mask(block) -> int:
    m = 0
    for v in block:
        m |= 1 << v
    return m


def mixed_partner(t: Tournament, partition: Partition, rng, p_dual_quotient: float = 0.3,
                  p_relabel: float = 0.2) -> Tournament:
    """A candidate partner: quotient possibly reversed, blocks copied, reversed or relabeled.

    Without relabeling the result is {3}-hypomorphic to T, since every
    3-vertex tournament is self dual and a triple meeting a block in two
    vertices is transitive either way. Relabeled blocks can break that.
    """
    qd = bool(rng.random() < p_dual_quotient)
    perms = {}
    for i, b in enumerate(partition.blocks):
        if len(b) < 2:
            continue
        r = rng.random()
        if r < p_relabel:
            verts = sorted(b)
            img = [verts[j] for j in rng.permutation(len(verts))]
            perms[i] = dict(zip(verts, img))
        elif r < p_relabel + (1 - p_relabel) / 2:
            perms[i] = "dual"
    return reassemble(t, partition, qd, perms)
