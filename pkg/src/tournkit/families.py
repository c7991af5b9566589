"""Named tournaments, isomorph-free enumeration and the exceptional families."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import canon
from .core import (C3, C4, DELTA_MINUS, DELTA_PLUS, CanonicalCode, Tournament,
                   almost_transitive, canonical_form, from_code, from_hex, is_self_dual,
                   lex_sum, pair_count, point, to_hex, transitive)
from .decomposition import decomposable_out, interval_masks
from .errors import BoundError, PreconditionError, TheoremViolation, TournamentError
from .hypomorphy import HypoSpec, is_self_dual_for

ENUM_BOUND = 10

NAMES = ("O_n", "almost_transitive", "C3", "C4", "delta_plus", "delta_minus")


def gen_named(name: str, n: int) -> Tournament:
    fixed = {"C3": (3, C3), "C4": (4, C4), "delta_plus": (4, DELTA_PLUS),
             "delta_minus": (4, DELTA_MINUS)}
    if name in fixed:
        size, t = fixed[name]
        if n != size:
            raise TournamentError(f"{name} has {size} vertices, not {n}")
        return t
    if name in ("O_n", "transitive"):
        if n < 1:
            raise TournamentError("O_n needs n >= 1")
        return transitive(n)
    if name == "almost_transitive":
        if n < 3:
            raise TournamentError("almost transitive tournaments need n >= 3")
        return almost_transitive(n)
    raise TournamentError(f"unknown tournament name {name!r}; choose from {', '.join(NAMES)}")


# -- catalogs ------------------------------------------------------------------


@dataclass(frozen=True)
class Catalog:
    """One canonical code per isomorphism class, ascending."""

    n: int
    codes: tuple[CanonicalCode, ...]

    def __len__(self):
        return len(self.codes)

    def tournaments(self) -> Iterator[Tournament]:
        for c in self.codes:
            yield from_hex(self.n, c.code)

    def to_text(self) -> str:
        lines = [f"TKC1 n={self.n} count={len(self.codes)}"]
        lines.extend(c.code for c in self.codes)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ints(cls, n: int, values: Iterable[int]) -> "Catalog":
        return cls(n, tuple(CanonicalCode(n, to_hex(n, v)) for v in sorted(set(values))))


def write_catalog(path, catalog: Catalog) -> None:
    with open(path, "w") as fh:
        fh.write(catalog.to_text())


def read_catalog(path) -> Catalog:
    with open(path) as fh:
        lines = fh.read().split("\n")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "TKC1" or not head[1].startswith("n=") \
            or not head[2].startswith("count="):
        raise TournamentError(f"{path}: bad catalog header {lines[0]!r}")
    n = int(head[1][2:])
    count = int(head[2][6:])
    body = [ln.strip() for ln in lines[1:1 + count]]
    if len(body) != count:
        raise TournamentError(f"{path}: expected {count} codes, found {len(body)}")
    codes = tuple(CanonicalCode(n, c) for c in body)
    for c in codes:
        from_hex(n, c.code)
    if list(codes) != sorted(set(codes)):
        raise TournamentError(f"{path}: codes are not strictly increasing")
    return Catalog(n, codes)


# -- canonical augmentation ----------------------------------------------------------


def _children(parent_code: int, n: int, rule: str) -> set[int]:
    """Canonical codes of the n-vertex classes whose designated parent is this one.

    The new vertex is ``n - 1``. A child is kept iff deleting its canonically
    last (``rule="last"``) or first (``rule="first"``) vertex gives back the
    parent class. Refinement cells keep their order down the search tree, so
    that vertex always lies in the last (first) root cell; children whose new
    vertex is elsewhere are skipped before any search.
    """
    parent = canon.out_from_code(n - 1, parent_code)
    degs = [o.bit_count() for o in parent]
    w = n - 1
    wb = 1 << w
    if rule == "last":
        extreme = max(degs)
    else:
        extreme = min(degs)
    ext_mask = 0
    for v, d in enumerate(degs):
        if d == extreme:
            ext_mask |= 1 << v
    found = set()
    for s in range(1 << (n - 1)):
        k = s.bit_count()
        if rule == "last":
            # out-degrees grow by one for vertices outside s
            if k < (extreme + 1 if ext_mask & ~s else extreme):
                continue
        elif k > (extreme if ext_mask & s else extreme + 1):
            continue
        out = tuple([o if (s >> v) & 1 else o | wb for v, o in enumerate(parent)]) + (s,)
        root = canon.refine(out, [list(range(n))])
        cell = root[-1] if rule == "last" else root[0]
        if w not in cell:
            continue
        code, perm = canon.canonical_labeling(out, root)
        gone = perm[-1] if rule == "last" else perm[0]
        if len(cell) > 1 and gone != w:
            keep = [v for v in range(n) if v != gone]
            sub = canon.sub_code(out, keep)
            if canon.canonical_labeling(canon.out_from_code(n - 1, sub))[0] != parent_code:
                continue
        found.add(code)
    return found


def _children_chunk(args) -> set[int]:
    codes, n, rule = args
    res = set()
    for c in codes:
        res |= _children(c, n, rule)
    return res


_CATALOG_CACHE: dict[tuple[int, str], tuple[int, ...]] = {}


def _jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("TK_JOBS", "1") or 1)
    return max(1, jobs)


def _enumerate_ints(n: int, rule: str, jobs: int) -> tuple[int, ...]:
    key = (n, rule)
    if key in _CATALOG_CACHE:
        return _CATALOG_CACHE[key]
    if n == 1:
        res = (0,)
    else:
        parents = _enumerate_ints(n - 1, rule, jobs)
        if jobs > 1 and len(parents) >= 4 * jobs:
            chunks = [(parents[i::jobs], n, rule) for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_children_chunk, chunks))
            found = set().union(*parts)
        else:
            found = _children_chunk((parents, n, rule))
        res = tuple(sorted(found))
    _CATALOG_CACHE[key] = res
    return res


def enumerate_canonical(n: int, jobs: int | None = None, parent_rule: str = "last",
                        bound: int = ENUM_BOUND) -> Catalog:
    """All isomorphism classes on n vertices, by canonical augmentation."""
    if n < 1:
        raise TournamentError("n must be positive")
    if n > bound:
        raise BoundError(f"n={n} exceeds the enumeration bound {bound}")
    if parent_rule not in ("last", "first"):
        raise TournamentError("parent_rule must be 'last' or 'first'")
    return Catalog.from_ints(n, _enumerate_ints(n, parent_rule, _jobs(jobs)))


def load_or_enumerate(n: int, path=None, jobs: int | None = None) -> Catalog:
    if path is not None:
        cat = read_catalog(path)
        if cat.n != n:
            raise TournamentError(f"catalog {path} has n={cat.n}, expected {n}")
        return cat
    return enumerate_canonical(n, jobs=jobs)


# -- I_{n,P}, dilations and Omega ------------------------------------------------------


def in_class_I(t: Tournament, entries: Iterable[int]) -> bool:
    """Indecomposable, not self dual, and {p}-self dual for every entry."""
    if decomposable_out(t.out) or is_self_dual(t):
        return False
    return is_self_dual_for(t, HypoSpec(frozenset(entries)))


def class_I(n: int, entries: Iterable[int], catalog: Catalog) -> list[CanonicalCode]:
    entries = frozenset(entries)
    if not entries or 0 in entries:
        raise TournamentError("P must be a non-empty set of non-zero integers")
    if catalog.n != n:
        raise TournamentError(f"catalog has n={catalog.n}, expected {n}")
    return [c for c, t in zip(catalog.codes, catalog.tournaments()) if in_class_I(t, entries)]


SHAPES = {"C3": C3, "O2": transitive(2), "O3": transitive(3)}


def dilate_into(shape: str | Tournament, part: Tournament) -> list[Tournament]:
    """Dilate each vertex of ``shape`` in turn by ``part``; one tournament per class."""
    base = SHAPES[shape] if isinstance(shape, str) else shape
    seen = {}
    for x in range(base.n):
        parts = [point()] * base.n
        parts[x] = part
        t = lex_sum(base, parts)
        seen.setdefault(canonical_form(t), t)
    return [seen[c] for c in sorted(seen)]


@dataclass(frozen=True)
class OmegaReport:
    m: int
    i_small: tuple[str, ...]
    i_big: tuple[str, ...]
    members: tuple[tuple[str, tuple[str, ...]], ...]

    def to_dict(self) -> dict:
        d = {
            "m": self.m,
            "i_small": list(self.i_small),
            "i_big": list(self.i_big),
            "members": [{"code": c, "provenance": list(p)} for c, p in self.members],
        }
        if not self.members:
            d["note"] = (f"Omega_{self.m} is empty: I_({self.m - 2},{{-1,-2,-3}}) and "
                         f"I_({self.m - 1},{{-2,-3}}) have no classes, so every decomposable "
                         f"{self.m}-vertex tournament is {{-3}}-reconstructible")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def has_large_indecomposable_interval(t: Tournament, slack: int = 2) -> bool:
    """Some interval X with T[X] indecomposable and at most ``slack`` vertices outside."""
    for m in interval_masks(t.out, t.n):
        k = m.bit_count()
        if k == t.n or t.n - k > slack:
            continue
        verts = [v for v in range(t.n) if (m >> v) & 1]
        sub = canon.out_from_code(k, canon.sub_code(t.out, verts))
        if not decomposable_out(sub):
            return True
    return False


def omega(m: int, catalogs: Mapping[int, Catalog]) -> OmegaReport:
    if m < 8:
        raise PreconditionError("Omega_m is defined for m >= 8")
    for k in (m - 2, m - 1):
        if k not in catalogs:
            raise TournamentError(f"the catalog for n={k} is required")
    small = class_I(m - 2, (-1, -2, -3), catalogs[m - 2])
    big = class_I(m - 1, (-2, -3), catalogs[m - 1])
    members: dict[CanonicalCode, set[str]] = {}
    for tag, source in (("C3", small), ("O3", small), ("O2", big)):
        for code in source:
            for t in dilate_into(tag, code.tournament()):
                if not decomposable_out(t.out) or not has_large_indecomposable_interval(t):
                    raise TheoremViolation("Omega member without an indecomposable "
                                           "interval of co-size <= 2", instance=t)
                members.setdefault(canonical_form(t), set()).add(tag)
    return OmegaReport(
        m,
        tuple(c.code for c in small),
        tuple(c.code for c in big),
        tuple((c.code, tuple(sorted(members[c]))) for c in sorted(members)),
    )


def omega_members(report: OmegaReport) -> set[str]:
    return {c for c, _ in report.members}


# -- random generation -------------------------------------------------------------


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator; ``seed`` may be an int or a sequence of ints."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def random_tournament(n: int, seed=None) -> Tournament:
    if n < 1:
        raise TournamentError("n must be positive")
    rng = make_rng(seed)
    code = 0
    for b in rng.integers(0, 2, size=pair_count(n)):
        code = (code << 1) | int(b)
    return from_code(n, code)


def random_composition(n: int, k: int, rng) -> list[int]:
    cuts = sorted(rng.choice(np.arange(1, n), size=k - 1, replace=False).tolist())
    bounds = [0] + cuts + [n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_decomposable(n: int, seed=None) -> Tournament:
    """A random lexicographic sum over a shape with 2..n-1 vertices.

    Some block then has between 2 and n-1 vertices, so it is a non-trivial
    interval.
    """
    if n < 3:
        raise TournamentError("guaranteed decomposability needs n >= 3")
    rng = make_rng(seed)
    k = int(rng.integers(2, n))
    shape = random_tournament(k, rng)
    parts = []
    for size in random_composition(n, k, rng):
        if size >= 3 and rng.random() < 0.3:
            parts.append(random_decomposable(size, rng))
        else:
            parts.append(random_tournament(size, rng))
    return lex_sum(shape, parts)


def sample_seeds(seed: int, count: int, salt: int = 0) -> list[list[int]]:
    """Per-instance seed vectors, independent of how work is split."""
    return [[seed, salt, i] for i in range(count)]


def canonical_ints(tournaments: Sequence[Tournament]) -> list[int]:
    return [canon.canonical_labeling(t.out)[0] for t in tournaments]
