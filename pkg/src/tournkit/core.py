"""Tournament value type, encodings, isomorphism and small-shape classifiers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import canon
from .errors import BoundError, SizeMismatchError, TournamentError, VertexError

CANON_BOUND = 12


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


@dataclass(frozen=True)
class Tournament:
    """A tournament on vertices ``0..n-1``.

    ``out[v]`` is the bitmask of vertices that ``v`` dominates. Equality is
    labeled equality; use :func:`are_isomorphic` for isomorphism.
    """

    n: int
    out: tuple[int, ...]

    @property
    def code(self) -> int:
        """Arc bits in pair order, most significant first, as an integer."""
        return canon.code_from_out(self.out)

    @property
    def bits(self) -> str:
        m = pair_count(self.n)
        return format(self.code, f"0{m}b") if m else ""

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def beats(self, u: int, v: int) -> bool:
        return bool((self.out[u] >> v) & 1)

    def scores(self) -> list[int]:
        return [o.bit_count() for o in self.out]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in vertices_of(self.out[u])]

    def __repr__(self) -> str:
        return f"Tournament(n={self.n}, bits={self.bits!r})"


def from_code(n: int, code: int) -> Tournament:
    return Tournament(n, canon.out_from_code(n, code))


def make_tournament(n: int, arc_bits: str | Sequence[int]) -> Tournament:
    """Build a tournament from its arc bits in lexicographic pair order."""
    if n < 1:
        raise TournamentError("a tournament needs at least one vertex")
    if isinstance(arc_bits, str):
        if set(arc_bits) - {"0", "1"}:
            raise TournamentError(f"arc bits must be 0/1 characters, got {arc_bits!r}")
        bits = [int(c) for c in arc_bits]
    else:
        bits = [int(bool(b)) for b in arc_bits]
    if len(bits) != pair_count(n):
        raise SizeMismatchError(
            f"n={n} needs {pair_count(n)} arc bits, got {len(bits)}")
    code = 0
    for b in bits:
        code = (code << 1) | b
    return from_code(n, code)


def from_arcs(n: int, arcs: Iterable[tuple[int, int]]) -> Tournament:
    """Build from explicit arcs; every pair must be oriented exactly once."""
    out = [0] * n
    for u, v in arcs:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise VertexError(f"bad arc ({u}, {v}) for n={n}")
        if (out[v] >> u) & 1 or (out[u] >> v) & 1:
            raise TournamentError(f"pair {{{u}, {v}}} oriented twice")
        out[u] |= 1 << v
    for u, v in combinations(range(n), 2):
        if not ((out[u] >> v) & 1 or (out[v] >> u) & 1):
            raise TournamentError(f"pair {{{u}, {v}}} has no arc")
    return Tournament(n, tuple(out))


def transitive(n: int) -> Tournament:
    """O_n: ``i`` dominates ``j`` whenever ``i < j``."""
    return from_code(n, (1 << pair_count(n)) - 1)


def point() -> Tournament:
    return Tournament(1, (0,))


def dual(t: Tournament) -> Tournament:
    full = t.full
    return Tournament(t.n, tuple((~o & full) & ~(1 << v) for v, o in enumerate(t.out)))


def _check_vertices(t: Tournament, vertices) -> list[int]:
    verts = sorted(set(vertices))
    for v in verts:
        if not 0 <= v < t.n:
            raise VertexError(f"vertex {v} out of range for n={t.n}")
    return verts


def restrict(t: Tournament, vertices: Iterable[int]) -> Tournament:
    """T[X], relabeled 0..|X|-1 in increasing original order."""
    verts = _check_vertices(t, vertices)
    if not verts:
        raise VertexError("cannot restrict to the empty set")
    return Tournament(len(verts), _sub_out(t.out, verts))


def _sub_out(out, verts) -> tuple[int, ...]:
    res = []
    for v in verts:
        o = out[v]
        m = 0
        for i, w in enumerate(verts):
            if (o >> w) & 1:
                m |= 1 << i
        res.append(m)
    return tuple(res)


def delete(t: Tournament, vertices: Iterable[int]) -> Tournament:
    """T - X."""
    gone = set(vertices)
    return restrict(t, [v for v in range(t.n) if v not in gone])


def relabel(t: Tournament, perm: Sequence[int]) -> Tournament:
    """The tournament with arc ``perm[u] -> perm[v]`` for every arc ``u -> v``."""
    if sorted(perm) != list(range(t.n)):
        raise TournamentError("perm must be a permutation of the vertices")
    out = [0] * t.n
    for u in range(t.n):
        for v in vertices_of(t.out[u]):
            out[perm[u]] |= 1 << perm[v]
    return Tournament(t.n, tuple(out))


# -- canonical forms ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-class key: arc bits of the canonical relabeling, in hex."""

    n: int
    code: str

    def tournament(self) -> Tournament:
        return from_hex(self.n, self.code)

    def __str__(self) -> str:
        return self.code


def to_hex(n: int, code: int) -> str:
    """Pack arc bits MSB first, zero-padded at the tail to whole hex digits."""
    m = pair_count(n)
    pad = -m % 4
    return format(code << pad, f"0{(m + pad) // 4}x") if m else ""


def from_hex(n: int, text: str) -> Tournament:
    if n < 1:
        raise TournamentError("a tournament needs at least one vertex")
    m = pair_count(n)
    pad = -m % 4
    if len(text) != (m + pad) // 4:
        raise SizeMismatchError(
            f"n={n} needs {(m + pad) // 4} hex digits, got {len(text)}")
    if not text:
        return from_code(n, 0)
    try:
        value = int(text, 16)
    except ValueError:
        raise TournamentError(f"not a hex string: {text!r}") from None
    if value & ((1 << pad) - 1):
        raise TournamentError("nonzero padding bits")
    return from_code(n, value >> pad)


def _check_bound(n: int, bound: int | None) -> None:
    limit = CANON_BOUND if bound is None else bound
    if n > limit:
        raise BoundError(f"n={n} exceeds the canonicalization bound {limit}")


def canonical_labeling(t: Tournament, bound: int | None = None) -> tuple[int, list[int]]:
    """``(code, perm)``: canonical code as an integer and a labeling reaching it."""
    _check_bound(t.n, bound)
    return canon.canonical_labeling(t.out)


def canonical_form(t: Tournament, bound: int | None = None) -> CanonicalCode:
    _check_bound(t.n, bound)
    if t.n <= 8:
        code = canon.canonical_code_of(t.n, t.code)
    else:
        code = canon.canonical_labeling(t.out)[0]
    return CanonicalCode(t.n, to_hex(t.n, code))


def canonical_tournament(t: Tournament, bound: int | None = None) -> Tournament:
    return canonical_form(t, bound).tournament()


def are_isomorphic(t: Tournament, u: Tournament, bound: int | None = None) -> bool:
    if t.n != u.n:
        return False
    if t.out == u.out:
        return True
    if sorted(t.scores()) != sorted(u.scores()):
        return False
    return canonical_form(t, bound) == canonical_form(u, bound)


def find_isomorphism(t: Tournament, u: Tournament,
                     bound: int | None = None) -> list[int] | None:
    """A map ``f`` with ``t.beats(x, y) == u.beats(f[x], f[y])``, or None."""
    if t.n != u.n:
        return None
    ct, pt = canonical_labeling(t, bound)
    cu, pu = canonical_labeling(u, bound)
    if ct != cu:
        return None
    f = [0] * t.n
    for i in range(t.n):
        f[pt[i]] = pu[i]
    return f


def is_self_dual(t: Tournament, bound: int | None = None) -> bool:
    _check_bound(t.n, bound)
    return canon.is_self_dual_code(t.n, t.code) if t.n <= 8 else (
        canonical_form(t, bound) == canonical_form(dual(t), bound))


# -- lexicographic sums -------------------------------------------------------


def lex_sum(shape: Tournament, parts: Sequence[Tournament]) -> Tournament:
    """Dilate vertex ``x`` of ``shape`` by ``parts[x]``; blocks are consecutive."""
    if len(parts) != shape.n:
        raise SizeMismatchError(
            f"shape has {shape.n} vertices but {len(parts)} parts were given")
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    block_masks = [((1 << p.n) - 1) << off for p, off in zip(parts, offsets)]
    out = []
    for x, (p, off) in enumerate(zip(parts, offsets)):
        between = 0
        for y in vertices_of(shape.out[x]):
            between |= block_masks[y]
        for o in p.out:
            out.append((o << off) | between)
    return Tournament(total, tuple(out))


def dilate(t: Tournament, vertex: int, part: Tournament) -> Tournament:
    """Replace one vertex by ``part``, keeping the other vertices as points."""
    _check_vertices(t, [vertex])
    parts = [point()] * t.n
    parts[vertex] = part
    return lex_sum(t, parts)


def blocks_of(parts: Sequence[Tournament]) -> list[frozenset[int]]:
    """Vertex blocks of ``lex_sum(shape, parts)``."""
    res = []
    off = 0
    for p in parts:
        res.append(frozenset(range(off, off + p.n)))
        off += p.n
    return res


# -- shapes ----------------------------------------------------------------------


class ShapeTag(str, enum.Enum):
    TRANSITIVE = "transitive"
    ALMOST_TRANSITIVE = "almost_transitive"
    THREE_CYCLE = "three_cycle"
    FOUR_CYCLE = "four_cycle"
    DIAMOND_POS = "diamond_pos"
    DIAMOND_NEG = "diamond_neg"
    OTHER = "other"


def almost_transitive(n: int) -> Tournament:
    """O_n with the arc between its extremal vertices reversed."""
    if n < 3:
        raise TournamentError("almost transitive tournaments need n >= 3")
    return from_code(n, ((1 << pair_count(n)) - 1) ^ (1 << (pair_count(n) - n + 1)))


C3 = make_tournament(3, "101")
C4 = make_tournament(4, "100111")
DELTA_PLUS = make_tournament(4, "101111")
DELTA_MINUS = dual(DELTA_PLUS)


def is_transitive(t: Tournament) -> bool:
    return sorted(t.scores()) == list(range(t.n))


def classify_shape(t: Tournament) -> ShapeTag:
    if is_transitive(t):
        return ShapeTag.TRANSITIVE
    if t.n >= 3 and are_isomorphic(t, almost_transitive(t.n)):
        return ShapeTag.ALMOST_TRANSITIVE
    if t.n == 3:
        return ShapeTag.THREE_CYCLE
    if t.n == 4:
        if are_isomorphic(t, C4):
            return ShapeTag.FOUR_CYCLE
        if are_isomorphic(t, DELTA_PLUS):
            return ShapeTag.DIAMOND_POS
        if are_isomorphic(t, DELTA_MINUS):
            return ShapeTag.DIAMOND_NEG
    return ShapeTag.OTHER


# -- .tk text format ---------------------------------------------------------------


def format_tk(t: Tournament) -> str:
    return f"n={t.n} bits={to_hex(t.n, t.code)}"


def parse_tk(line: str) -> Tournament:
    fields = line.split()
    if len(fields) != 2 or not fields[0].startswith("n=") or not fields[1].startswith("bits="):
        raise TournamentError(f"malformed .tk line: {line!r}")
    try:
        n = int(fields[0][2:])
    except ValueError:
        raise TournamentError(f"malformed vertex count in {line!r}") from None
    return from_hex(n, fields[1][5:])


def read_tk(path) -> Tournament:
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if len(lines) != 1:
        raise TournamentError(f"{path}: expected exactly one tournament line")
    return parse_tk(lines[0])


def write_tk(path, t: Tournament) -> None:
    with open(path, "w") as fh:
        fh.write(format_tk(t) + "\n")
