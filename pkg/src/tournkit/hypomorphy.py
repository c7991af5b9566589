"""Hypomorphy relations, embedding counts and self-duality profiles."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from . import canon
from .core import Tournament, _check_bound, dual, from_code, pair_count, restrict
from .errors import BoundError, SizeMismatchError, TournamentError, VertexError

THREE_HYPO_BOUND = 7


@dataclass(frozen=True)
class HypoSpec:
    """A set F of non-zero integers: ``p > 0`` means p-subsets, ``-k`` means (n-k)-subsets."""

    entries: frozenset[int]

    def __post_init__(self):
        entries = frozenset(int(e) for e in self.entries)
        if 0 in entries:
            raise TournamentError("0 is not a valid hypomorphy entry")
        if not entries:
            raise TournamentError("a hypomorphy spec needs at least one entry")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "HypoSpec":
        return cls(frozenset(entries))

    @classmethod
    def upto(cls, k: int) -> "HypoSpec":
        """(<= k): every size from 1 to k."""
        return cls(frozenset(range(1, k + 1)))

    def sizes(self, n: int) -> list[int]:
        out = set()
        for e in self.entries:
            if abs(e) > n:
                raise TournamentError(f"entry {e} is invalid for n={n}")
            out.add(e if e > 0 else n + e)
        return sorted(out)

    def __str__(self):
        return "{" + ",".join(str(e) for e in sorted(self.entries)) + "}"


def _same_class(s: int, a: int, b: int) -> bool:
    if a == b or s <= 2:
        return True
    if s <= 8:
        return canon.canonical_code_of(s, a) == canon.canonical_code_of(s, b)
    return (canon.canonical_labeling(canon.out_from_code(s, a))[0]
            == canon.canonical_labeling(canon.out_from_code(s, b))[0])


def hypomorphic_sizes(t: Tournament, u: Tournament, sizes: Iterable[int]) -> bool:
    if t.n != u.n:
        raise SizeMismatchError(f"vertex counts differ: {t.n} vs {u.n}")
    if t.out == u.out:
        return True
    for s in sizes:
        if s <= 2:
            continue
        for verts in combinations(range(t.n), s):
            a = canon.sub_code(t.out, verts)
            b = canon.sub_code(u.out, verts)
            if a != b and not _same_class(s, a, b):
                return False
    return True


def hypomorphic(t: Tournament, u: Tournament, spec: HypoSpec) -> bool:
    """True iff T[X] and U[X] are isomorphic for every X of every size in F."""
    if t.n != u.n:
        raise SizeMismatchError(f"vertex counts differ: {t.n} vs {u.n}")
    return hypomorphic_sizes(t, u, spec.sizes(t.n))


def self_dual_on_sizes(t: Tournament, sizes: Iterable[int]) -> bool:
    """T and T* are hypomorphic on the given subset sizes."""
    out = t.out
    for s in sizes:
        if s <= 3:
            # every tournament on at most 3 vertices is self dual
            continue
        if s <= 8:
            for verts in combinations(range(t.n), s):
                if not canon.is_self_dual_code(s, canon.sub_code(out, verts)):
                    return False
        else:
            for verts in combinations(range(t.n), s):
                sub = restrict(t, verts)
                if (canon.canonical_labeling(sub.out)[0]
                        != canon.canonical_labeling(dual(sub).out)[0]):
                    return False
    return True


def is_self_dual_for(t: Tournament, spec: HypoSpec) -> bool:
    """F-self duality: T and T* are F-hypomorphic."""
    return self_dual_on_sizes(t, spec.sizes(t.n))


def is_minus_k_self_dual(t: Tournament, k: int) -> bool:
    return self_dual_on_sizes(t, [t.n - k])


# -- embeddings ----------------------------------------------------------------


def embed_sets(t: Tournament, h: Tournament, fixed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Every X containing ``fixed`` with T[X] isomorphic to H."""
    fixed = sorted(set(fixed))
    for v in fixed:
        if not 0 <= v < t.n:
            raise VertexError(f"vertex {v} out of range for n={t.n}")
    if h.n > t.n or len(fixed) > h.n:
        return []
    target = canon.canonical_labeling(h.out)[0]
    others = [v for v in range(t.n) if v not in set(fixed)]
    found = []
    for extra in combinations(others, h.n - len(fixed)):
        verts = sorted(fixed + list(extra))
        code = canon.sub_code(t.out, verts)
        got = (canon.canonical_code_of(h.n, code) if h.n <= 8
               else canon.canonical_labeling(canon.out_from_code(h.n, code))[0])
        if got == target:
            found.append(frozenset(verts))
    return found


def embed_count(t: Tournament, h: Tournament, fixed: Iterable[int] = ()) -> int:
    return len(embed_sets(t, h, fixed))


# -- self-duality profile ----------------------------------------------------------


@dataclass(frozen=True)
class SelfDualProfile:
    entries: dict = field(default_factory=dict)
    at_most_k: bool = True
    max_k: int = 0
    self_dual: bool = True
    strongly_self_dual: bool = True

    def lines(self) -> list[str]:
        res = [f"{{{e}}}-self dual: {str(v).lower()}" for e, v in sorted(self.entries.items())]
        res.append(f"(<={self.max_k})-self dual: {str(self.at_most_k).lower()}")
        res.append(f"self dual: {str(self.self_dual).lower()}")
        res.append(f"strongly self dual: {str(self.strongly_self_dual).lower()}")
        return res


def self_dual_profile(t: Tournament, max_k: int) -> SelfDualProfile:
    """{-k} and {k} self duality for k = 1..max_k, plus the global flags."""
    if not 0 <= max_k <= t.n:
        raise TournamentError(f"max_k must lie in 0..{t.n}")
    _check_bound(t.n, None)
    entries = {}
    for k in range(1, max_k + 1):
        entries[-k] = self_dual_on_sizes(t, [t.n - k])
        entries[k] = self_dual_on_sizes(t, [k])
    at_most = all(entries[k] for k in range(1, max_k + 1))
    whole = self_dual_on_sizes(t, [t.n])
    strongly = whole and self_dual_on_sizes(t, range(1, t.n))
    return SelfDualProfile(entries, at_most, max_k, whole, strongly)


# -- {3}-hypomorphs by brute force ----------------------------------------------------


def _pair_index(n: int, i: int, j: int) -> int:
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def cyclic_triples(t: Tournament) -> list[tuple[int, int, int]]:
    res = []
    for i, j, k in combinations(range(t.n), 3):
        a, b, c = t.beats(i, j), t.beats(j, k), t.beats(i, k)
        if a == b and c != a:
            res.append((i, j, k))
    return res


def three_hypomorphs(t: Tournament, bound: int = THREE_HYPO_BOUND) -> list[Tournament]:
    """Every labeled tournament on V that is {3}-hypomorphic to T.

    Two tournaments are {3}-hypomorphic exactly when they have the same
    cyclic triples, so all 2^(n(n-1)/2) labelings are filtered on that.
    """
    if t.n > bound:
        raise BoundError(f"n={t.n} exceeds the brute-force bound {bound}")
    n = t.n
    m = pair_count(n)
    if m == 0:
        return [t]
    codes = np.arange(1 << m, dtype=np.uint32)
    bits = [((codes >> np.uint32(m - 1 - p)) & np.uint32(1)).astype(np.uint8) for p in range(m)]
    keep = np.ones(1 << m, dtype=bool)
    cyc = set(cyclic_triples(t))
    for i, j, k in combinations(range(n), 3):
        bij = bits[_pair_index(n, i, j)]
        bjk = bits[_pair_index(n, j, k)]
        bik = bits[_pair_index(n, i, k)]
        is_cyc = (bij == bjk) & (bik != bij)
        if (i, j, k) in cyc:
            keep &= is_cyc
        else:
            keep &= ~is_cyc
    return [from_code(n, int(c)) for c in np.flatnonzero(keep)]


# -- combinatorial lemma ------------------------------------------------------------


@dataclass(frozen=True)
class LemmaVerdict:
    hypothesis: bool
    conclusion: bool | None
    equal_sets: bool | None = None

    def __bool__(self):
        return self.conclusion is not False


@lru_cache(maxsize=64)
def _lemma_tables(ground_n: int, p: int, r: int):
    psubs = [sum(1 << v for v in c) for c in combinations(range(ground_n), p)]
    index = {m: i for i, m in enumerate(psubs)}
    qsubs = [sum(1 << v for v in c) for c in combinations(range(ground_n), p + r)]
    within = np.array([[(u & q) == u for u in psubs] for q in qsubs], dtype=np.int64)
    lows = [m for m in range(1 << ground_n) if m.bit_count() <= p]
    tops = np.arange(1 << ground_n)
    contains = np.array([[(u & lo) == lo for lo in lows] for u in psubs], dtype=np.int64)
    inside = np.array([[(u & q) == u for q in range(1 << ground_n)] for u in psubs],
                      dtype=np.int64)
    low_arr = np.array(lows)[:, None]
    valid = ((low_arr & tops[None, :]) == low_arr) & (
        np.array([bin(q).count("1") for q in range(1 << ground_n)])[None, :]
        - np.array([lo.bit_count() for lo in lows])[:, None] >= p + r)
    return index, within, contains, inside, valid


def _to_masks(family, ground_n: int, p: int) -> set[int]:
    res = set()
    for s in family:
        s = set(s)
        if len(s) != p:
            raise TournamentError(f"member {sorted(s)} does not have {p} elements")
        if any(not 0 <= v < ground_n for v in s):
            raise VertexError(f"member {sorted(s)} leaves the ground set")
        res.add(sum(1 << v for v in s))
    return res


def combinatorial_lemma_check(ground_n: int, family, other, p: int, r: int) -> LemmaVerdict:
    """Check the counting hypothesis and, when it holds, its conclusion.

    Hypothesis: every (p+r)-subset Q contains as many members of ``family``
    as of ``other``. Conclusion: for all P' within Q' with |Q' - P'| >= p+r,
    the members between P' and Q' are equinumerous; and the two families
    coincide once ``ground_n >= 2p + r``.
    """
    if p < 1 or r < 1:
        raise TournamentError("p and r must be positive")
    if ground_n < p + r:
        raise TournamentError(f"ground set needs at least p + r = {p + r} elements")
    if ground_n > 12:
        raise BoundError("the lemma checker enumerates subsets; ground_n <= 12")
    a = _to_masks(family, ground_n, p)
    b = _to_masks(other, ground_n, p)
    index, within, contains, inside, valid = _lemma_tables(ground_n, p, r)
    g = np.zeros(len(index), dtype=np.int64)
    for m in a:
        g[index[m]] += 1
    for m in b:
        g[index[m]] -= 1
    if np.any(within @ g):
        return LemmaVerdict(False, None)
    between = contains.T @ (g[:, None] * inside)
    ok = not np.any(between[valid])
    equal = (a == b) if ground_n >= 2 * p + r else None
    return LemmaVerdict(True, ok and equal is not False, equal)
