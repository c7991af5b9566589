"""Diamonds: 4-vertex tournaments made of a 3-cycle and a uniform fourth vertex.

A positive diamond has its cycle dominating the center, a negative one the
reverse. Within a 4-set the score multiset identifies the class:
``0,2,2,2`` is a positive diamond and ``1,1,1,3`` a negative one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import Tournament, vertices_of
from .errors import TheoremViolation, TournamentError, VertexError


@dataclass(frozen=True, order=True)
class DiamondRecord:
    verts: tuple[int, ...]
    sign: int
    center: int
    cycle: tuple[int, ...]

    def __str__(self):
        s = "+" if self.sign > 0 else "-"
        return f"{s}{list(self.verts)} center={self.center}"


def diamond_tuples(out, n: int) -> list[tuple[int, int, int]]:
    """``(mask, sign, center)`` for every diamond, in lexicographic 4-set order."""
    found = []
    for quad in combinations(range(n), 4):
        m = (1 << quad[0]) | (1 << quad[1]) | (1 << quad[2]) | (1 << quad[3])
        low = high = -1
        ones = twos = 0
        for v in quad:
            s = (out[v] & m).bit_count()
            if s == 0:
                low = v
            elif s == 3:
                high = v
            elif s == 1:
                ones += 1
            else:
                twos += 1
        if low >= 0 and twos == 3:
            found.append((m, 1, low))
        elif high >= 0 and ones == 3:
            found.append((m, -1, high))
    return found


def has_diamond_out(out, n: int) -> bool:
    for quad in combinations(range(n), 4):
        m = (1 << quad[0]) | (1 << quad[1]) | (1 << quad[2]) | (1 << quad[3])
        s = sorted((out[v] & m).bit_count() for v in quad)
        if s == [0, 2, 2, 2] or s == [1, 1, 1, 3]:
            return True
    return False


def diamond_records(t: Tournament) -> list[DiamondRecord]:
    recs = []
    for m, sign, center in diamond_tuples(t.out, t.n):
        verts = tuple(vertices_of(m))
        recs.append(DiamondRecord(verts, sign, center,
                                  tuple(v for v in verts if v != center)))
    return sorted(recs)


def embeds_diamond(t: Tournament) -> bool:
    return has_diamond_out(t.out, t.n)


def center_counts(t: Tournament, x: int) -> tuple[int, int]:
    """(positive, negative) diamonds centered at ``x``."""
    if not 0 <= x < t.n:
        raise VertexError(f"vertex {x} out of range for n={t.n}")
    plus = minus = 0
    for _, sign, center in diamond_tuples(t.out, t.n):
        if center == x:
            if sign > 0:
                plus += 1
            else:
                minus += 1
    return plus, minus


def all_center_counts(t: Tournament) -> list[tuple[int, int]]:
    counts = [[0, 0] for _ in range(t.n)]
    for _, sign, center in diamond_tuples(t.out, t.n):
        counts[center][0 if sign > 0 else 1] += 1
    return [tuple(c) for c in counts]


@dataclass(frozen=True)
class PairDiamondStats:
    """Diamond counts attached to a pair {x, y}.

    ``per_mate[w]`` counts the diamonds whose cycle is exactly {x, y, w};
    ``centered_at_y_*`` counts diamonds through x centered at y, and
    ``centered_at_x_*`` the ones through y centered at x.
    """

    cycle_mates: frozenset[int]
    d_plus_cycle: int
    d_minus_cycle: int
    per_mate: dict = field(default_factory=dict)
    through_pair_plus: int = 0
    through_pair_minus: int = 0
    centered_at_y_plus: int = 0
    centered_at_y_minus: int = 0
    centered_at_x_plus: int = 0
    centered_at_x_minus: int = 0


def pair_stats(t: Tournament, x: int, y: int) -> PairDiamondStats:
    if x == y:
        raise TournamentError("pair statistics need two distinct vertices")
    for v in (x, y):
        if not 0 <= v < t.n:
            raise VertexError(f"vertex {v} out of range for n={t.n}")
    out = t.out
    mates = set()
    for w in range(t.n):
        if w in (x, y):
            continue
        m = (1 << x) | (1 << y) | (1 << w)
        if all((out[v] & m).bit_count() == 1 for v in (x, y, w)):
            mates.add(w)
    per_mate = {}
    for w in sorted(mates):
        plus = minus = 0
        for c in range(t.n):
            if c in (x, y, w):
                continue
            bit = 1 << c
            if out[x] & out[y] & out[w] & bit:
                plus += 1
            elif not ((out[x] | out[y] | out[w]) & bit):
                minus += 1
        per_mate[w] = (plus, minus)
    dp = dm = tp = tm = yp = ym = xp = xm = 0
    pair = (1 << x) | (1 << y)
    for m, sign, center in diamond_tuples(out, t.n):
        if m & pair != pair:
            continue
        pos = sign > 0
        if pos:
            tp += 1
        else:
            tm += 1
        if center == y:
            yp, ym = (yp + 1, ym) if pos else (yp, ym + 1)
        elif center == x:
            xp, xm = (xp + 1, xm) if pos else (xp, xm + 1)
        elif pos:
            dp += 1
        else:
            dm += 1
    if (dp != sum(c[0] for c in per_mate.values())
            or dm != sum(c[1] for c in per_mate.values())):
        raise TheoremViolation("cycle counts disagree with the per-mate sums", instance=t)
    return PairDiamondStats(frozenset(mates), dp, dm, per_mate, tp, tm, yp, ym, xp, xm)
