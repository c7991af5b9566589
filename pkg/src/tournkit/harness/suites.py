"""Verification suites, one per checked statement.

Every suite returns ``(instances_checked, violations, params)``. Catalog
suites walk every isomorphism class at one size; random suites derive one
generator per instance from ``(seed, suite salt, index)``, so results do
not depend on how the work is split between processes.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass
from functools import partial
from itertools import combinations
from typing import Callable


from ..core import (Tournament, almost_transitive, are_isomorphic, canonical_form, dilate, dual,
                    find_isomorphism, format_tk, from_hex, is_transitive, lex_sum, relabel,
                    restrict, transitive)
from ..decomposition import (Partition, closure, decomposable_out, ext_partition,
                             gallai_partition, indec_extend_pair, interval_masks, is_interval,
                             moon_extend, quotient, scc_masks, strongly_connected_out,
                             tilde_partition)
from ..diamonds import center_counts, diamond_tuples, has_diamond_out, pair_stats
from ..errors import TheoremViolation, TournamentError
from ..families import (Catalog, class_I, dilate_into, enumerate_canonical,
                        has_large_indecomposable_interval, make_rng, omega, random_composition,
                        random_decomposable, random_tournament, read_catalog)
from ..hypomorphy import (combinatorial_lemma_check, hypomorphic_sizes, self_dual_on_sizes,
                          three_hypomorphs)
from . import pairs
from .report import Report, Violation, map_checks, violation

# -- plumbing --------------------------------------------------------------------


class Context:
    """Catalog source and worker count shared by the suites of one run."""

    def __init__(self, catalog_path=None, jobs: int | None = None):
        self.catalog_path = catalog_path
        self.jobs = jobs
        self._loaded: Catalog | None = None

    def catalog(self, n: int) -> Catalog:
        if self.catalog_path is not None:
            if self._loaded is None:
                self._loaded = read_catalog(self.catalog_path)
            if self._loaded.n == n:
                return self._loaded
        return enumerate_canonical(n, jobs=self.jobs)

    def codes(self, n: int) -> list[str]:
        return [c.code for c in self.catalog(n).codes]


def _salt(name: str) -> int:
    return zlib.crc32(name.encode())


def _rng(seed: int, name: str, i: int):
    return make_rng([seed, _salt(name), i])


def _fs(mask: int) -> frozenset[int]:
    return frozenset(v for v in range(mask.bit_length()) if (mask >> v) & 1)


def _sd(t: Tournament, k: int) -> bool:
    """{-k}-self duality."""
    return self_dual_on_sizes(t, [t.n - k])


def _strongly_self_dual(t: Tournament) -> bool:
    return self_dual_on_sizes(t, range(4, t.n + 1))


def _has_pair_interval(out, n: int) -> list[tuple[int, int]]:
    found = []
    for a, b in combinations(range(n), 2):
        if (out[a] ^ out[b]) & ~((1 << a) | (1 << b)) & ((1 << n) - 1) == 0:
            found.append((a, b))
    return found


def _dominates(out, a: int, mask: int) -> bool:
    return out[a] & mask == mask


def _random_mixed(n: int, rng) -> Tournament:
    """A random tournament biased towards interesting interval structure."""
    r = rng.random()
    if n >= 3 and r < 0.3:
        return random_decomposable(n, rng)
    if n >= 3 and r < 0.45:
        return pairs.random_nonstrong(n, rng, allow_transitive=True)
    if n >= 4 and r < 0.6:
        return pairs.random_strong_decomposable(n, rng)
    return random_tournament(n, rng)


def _pair_instance(t: Tournament, u: Tournament) -> str:
    return f"{format_tk(t)} ; {format_tk(u)}"


# -- decomposition statements -------------------------------------------------------------


def gallai_violations(t: Tournament) -> list[Violation]:
    p = gallai_partition(t)
    q = quotient(t, p)
    sc = strongly_connected_out(t.out)
    found = []
    qt = is_transitive(q)
    if sc == qt:
        found.append(violation(t, "not strongly connected iff the quotient is transitive",
                               f"strongly_connected={sc} quotient_transitive={qt}"))
    if not sc:
        comps = {_fs(m) for m in scc_masks(t.out)}
        if set(p.blocks) != comps:
            found.append(violation(t, "P(T) equals the strong components", str(p)))
    qi = len(p) >= 3 and not decomposable_out(q.out)
    if sc != qi:
        found.append(violation(t, "strongly connected iff the quotient is indecomposable "
                                  "with at least 3 blocks",
                               f"strongly_connected={sc} blocks={len(p)}"))
    return found


def _gallai_code(n: int, code: str):
    return 1, gallai_violations(from_hex(n, code))


def _gallai_random(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "gallai", i)
    n = int(rng.integers(n_min, n_max + 1))
    return 1, gallai_violations(_random_mixed(n, rng))


def _moon_one(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "moon", i)
    n = int(rng.integers(max(3, n_min), n_max + 1))
    t = pairs.random_strong(n, rng) if rng.random() < 0.5 else \
        (pairs.random_strong_decomposable(n, rng) if n >= 4 else pairs.random_strong(n, rng))
    x = int(rng.integers(0, n))
    k = int(rng.integers(3, n + 1))
    try:
        got = moon_extend(t, x, k)
    except TheoremViolation as e:
        return 1, [violation(t, f"strongly connected {k}-set through {x}", str(e))]
    if x not in got or len(got) != k or not strongly_connected_out(restrict(t, sorted(got)).out):
        return 1, [violation(t, f"strongly connected {k}-set through {x}", sorted(got))]
    return 1, []


def _random_indecomposable_subset(t: Tournament, rng, low: int, high: int, tries: int = 60):
    if high < low:
        return None
    for _ in range(tries):
        k = int(rng.integers(low, high + 1))
        xs = sorted(int(v) for v in rng.choice(t.n, size=k, replace=False))
        if not decomposable_out(restrict(t, xs).out):
            return xs
    return None


def _ext_one(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "ext-partition", i)
    while True:
        n = int(rng.integers(max(4, n_min), n_max + 1))
        t = _random_mixed(n, rng)
        xs = _random_indecomposable_subset(t, rng, 3, n - 1)
        if xs is not None:
            break
    rep = ext_partition(t, xs)
    rest = [v for v in range(n) if v not in xs]
    found = []
    if not rep.is_partition_of(rest):
        found.append(violation(t, f"Ext, [X], X(u) partition the outside of X={xs}",
                               f"ext={sorted(rep.ext)} bracket={sorted(rep.bracket)} "
                               f"slots={ {u: sorted(s) for u, s in rep.slots.items()} }"))
    # category membership re-derived from the interval test on T[X + x]
    for x in rest:
        verts = sorted(xs + [x])
        sub = restrict(t, verts)
        pos = {v: j for j, v in enumerate(verts)}
        in_bracket = is_interval(sub, [pos[v] for v in xs])
        if in_bracket != (x in rep.bracket):
            found.append(violation(t, f"[X] membership of {x} for X={xs}", in_bracket))
        for u in xs:
            slot = is_interval(sub, [pos[u], pos[x]])
            if slot != (x in rep.slots[u]):
                found.append(violation(t, f"X({u}) membership of {x} for X={xs}", slot))
    return 1, found


def _indec_one(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "indec-extend", i)
    while True:
        n = int(rng.integers(max(5, n_min), n_max + 1))
        t = pairs.random_indecomposable(n, rng)
        xs = _random_indecomposable_subset(t, rng, 3, n - 2)
        if xs is not None:
            break
    try:
        x, y = indec_extend_pair(t, xs)
    except TheoremViolation as e:
        return 1, [violation(t, f"an indecomposable extension of X={xs} by two vertices", str(e))]
    grown = sorted(xs + [x, y])
    if x in xs or y in xs or x == y or decomposable_out(restrict(t, grown).out):
        return 1, [violation(t, f"T[X+{{x,y}}] indecomposable for X={xs}", (x, y))]
    return 1, []


# -- combinatorial lemma ---------------------------------------------------------------


def _trade(ground_n: int, p: int, r: int, rng) -> tuple[list[frozenset], list[frozenset]]:
    """Two distinct families with equal counts inside every (p+r)-set.

    Complements turn this into a signed family of (n-p)-sets summing to
    zero over every (n-p-r)-set: pick t+1 disjoint pairs plus a fixed core,
    take one element from each pair, and sign by how many second elements
    were taken.
    """
    t = ground_n - p - r
    k = ground_n - p
    perm = [int(v) for v in rng.permutation(ground_n)]
    pairs_ = [(perm[2 * j], perm[2 * j + 1]) for j in range(t + 1)]
    core = perm[2 * (t + 1): 2 * (t + 1) + (k - t - 1)]
    ground = frozenset(range(ground_n))
    plus, minus = [], []
    for choice in range(1 << (t + 1)):
        member = set(core)
        for j, pr in enumerate(pairs_):
            member.add(pr[(choice >> j) & 1])
        comp = ground - member
        (minus if bin(choice).count("1") % 2 else plus).append(comp)
    return plus, minus


def _lemma_one(seed: int, max_ground: int, i: int):
    rng = _rng(seed, "comb-lemma", i)
    p = int(rng.integers(1, 4))
    r = int(rng.integers(1, 4))
    ground_n = int(rng.integers(p + r, max(p + r, max_ground) + 1))
    all_p = [frozenset(c) for c in combinations(range(ground_n), p)]
    if ground_n <= 2 * p + r - 1:
        u, u2 = _trade(ground_n, p, r, rng)
    else:
        u, u2 = [], []
    used = set(u) | set(u2)
    common = [s for s in all_p if s not in used and rng.random() < 0.25]
    u = sorted(u + common, key=sorted)
    u2 = sorted(u2 + common, key=sorted)
    inst = f"ground_n={ground_n} p={p} r={r} U={[sorted(s) for s in u]} U2={[sorted(s) for s in u2]}"
    verdict = combinatorial_lemma_check(ground_n, u, u2, p, r)
    found = []
    if not verdict.hypothesis:
        found.append(violation(inst, "hypothesis holds for the constructed families", "false"))
    elif not verdict.conclusion:
        found.append(violation(inst, "conclusion holds", verdict))
    if ground_n >= 2 * p + r:
        if verdict.equal_sets is not True:
            found.append(violation(inst, "U = U2", verdict.equal_sets))
        # perturb one member: the hypothesis must then fail
        outside = [s for s in all_p if s not in set(u)]
        if u and outside:
            drop = u[int(rng.integers(0, len(u)))]
            add = outside[int(rng.integers(0, len(outside)))]
            bent = [s for s in u if s != drop] + [add]
            if combinatorial_lemma_check(ground_n, u, bent, p, r).hypothesis:
                found.append(violation(inst, "hypothesis fails after swapping one member",
                                       f"swap {sorted(drop)} -> {sorted(add)} kept it"))
    return 1, found


# -- hypomorphy statements ---------------------------------------------------------------


def _candidate_partner(t: Tournament, rng) -> Tournament:
    r = rng.random()
    if r < 0.2:
        return dual(t)
    if r < 0.3:
        u_out = list(t.out)
        a, b = sorted(int(v) for v in rng.choice(t.n, size=2, replace=False))
        u_out[a] ^= 1 << b
        u_out[b] ^= 1 << a
        return Tournament(t.n, tuple(u_out))
    part = gallai_partition(t)
    if r < 0.6:
        return pairs.hereditary_partner(t, part, rng)
    return pairs.mixed_partner(t, part, rng)


def _descent_one(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "hypo-descent", i)
    n = int(rng.integers(max(4, n_min), n_max + 1))
    t = _random_mixed(n, rng)
    u = _candidate_partner(t, rng)
    hyp = {p: hypomorphic_sizes(t, u, [p]) for p in range(1, n)}
    found = []
    for p in range(1, n):
        if not hyp[p]:
            continue
        for q in range(1, min(p, n - p) + 1):
            if not hyp[q]:
                found.append(violation(_pair_instance(t, u), f"{{{p}}} implies {{{q}}}",
                                       "not {%d}-hypomorphic" % q))
    return 1, found


def _inversion_code(n: int, code: str):
    t = from_hex(n, code)
    if decomposable_out(t.out):
        return 0, []
    got = sorted(u.code for u in three_hypomorphs(t))
    want = sorted({t.code, dual(t).code})
    if got != want:
        return 1, [violation(t, f"{{3}}-hypomorphs are T and T* ({len(want)})",
                             f"{len(got)} labeled tournaments")]
    return 1, []


def _quotient_pair(t: Tournament, u: Tournament) -> list[Violation]:
    found = []
    inst = _pair_instance(t, u)
    pt, pu = gallai_partition(t), gallai_partition(u)
    if pt != pu:
        found.append(violation(inst, f"P(T') = P(T) = {pt}", pu))
        return found
    sc_t, sc_u = strongly_connected_out(t.out), strongly_connected_out(u.out)
    if sc_t != sc_u:
        found.append(violation(inst, "same strong connectivity", f"{sc_t} vs {sc_u}"))
    if decomposable_out(t.out) != decomposable_out(u.out):
        found.append(violation(inst, "same indecomposability", "differs"))
    if sc_t:
        qt, qu = quotient(t, pt), quotient(u, pt)
        if qu != qt and qu != dual(qt):
            found.append(violation(inst, "quotients equal or dual", format_tk(qu)))
    return found


def _transfer_pair(t: Tournament, u: Tournament) -> tuple[int, list[Violation]]:
    found = []
    checked = 0
    full = t.full
    for m in interval_masks(t.out, t.n):
        k = m.bit_count()
        if k == 2 or k == 0:
            continue
        verts = [v for v in range(t.n) if (m >> v) & 1]
        if k >= 3 and not strongly_connected_out(restrict(t, verts).out):
            continue
        checked += 1
        if closure(u.out, full, m) != m:
            found.append(violation(_pair_instance(t, u), f"{verts} is an interval of T'", "no"))
    return checked, found


def _three_pairs(n: int, code: str):
    t = from_hex(n, code)
    return t, three_hypomorphs(t)


def _random_three_pair(rng, n: int) -> tuple[Tournament, Tournament]:
    t = _random_mixed(n, rng)
    part = gallai_partition(t)
    return t, pairs.mixed_partner(t, part, rng, p_relabel=0.0)


def _quotient_code(n: int, code: str):
    t, us = _three_pairs(n, code)
    found = []
    for u in us:
        found.extend(_quotient_pair(t, u))
    return len(us), found


def _quotient_random(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "quotient-dual", i)
    n = int(rng.integers(max(3, n_min), n_max + 1))
    t, u = _random_three_pair(rng, n)
    if not hypomorphic_sizes(t, u, [3]):
        return 1, [violation(_pair_instance(t, u), "constructed partner is {3}-hypomorphic", "no")]
    return 1, _quotient_pair(t, u)


def _transfer_code(n: int, code: str):
    t, us = _three_pairs(n, code)
    checked, found = 0, []
    for u in us:
        c, v = _transfer_pair(t, u)
        checked += c
        found.extend(v)
    return checked, found


def _transfer_random(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "interval-transfer", i)
    n = int(rng.integers(max(3, n_min), n_max + 1))
    t, u = _random_three_pair(rng, n)
    return _transfer_pair(t, u)


def _plus_minus(out, n: int, m: int) -> tuple[int, int]:
    full = (1 << n) - 1
    plus = full & ~m
    minus = 0
    for v in range(n):
        if (m >> v) & 1:
            plus &= out[v]
        elif out[v] & m == m:
            minus |= 1 << v
    return plus, minus


def _degree_pair(t: Tournament, u: Tournament) -> tuple[int, list[Violation]]:
    n = t.n
    h3 = hypomorphic_sizes(t, u, [3])
    a = h3 and hypomorphic_sizes(t, u, [n - 2])
    b = hypomorphic_sizes(t, u, [n - 3])
    if not (a or b):
        return 0, []
    checked, found = 0, []
    inst = _pair_instance(t, u)
    for m in interval_masks(t.out, n):
        size = m.bit_count()
        if size < 3 or size == n:
            continue
        verts = [v for v in range(n) if (m >> v) & 1]
        sub_t = restrict(t, verts)
        if decomposable_out(sub_t.out):
            continue
        checked += 1
        k = n - size
        iso = are_isomorphic(sub_t, restrict(u, verts))
        pt, mt = _plus_minus(t.out, n, m)
        pu, mu = _plus_minus(u.out, n, m)
        if ((a and k >= 2) or (b and k >= 3)) and not iso:
            found.append(violation(inst, f"T[I] ~ T'[I] for I={verts}", "not isomorphic"))
        if ((a and k >= 3) or (b and k >= 4)) and (
                pt.bit_count() != pu.bit_count() or mt.bit_count() != mu.bit_count()):
            found.append(violation(inst, f"|I+| and |I-| preserved for I={verts}",
                                   f"{pt.bit_count()},{mt.bit_count()} vs "
                                   f"{pu.bit_count()},{mu.bit_count()}"))
        if b and k >= 4 and (pt != pu or mt != mu):
            found.append(violation(inst, f"I+ and I- preserved for I={verts}",
                                   f"{sorted(_fs(pu))},{sorted(_fs(mu))}"))
    return checked, found


def _degree_code(n: int, code: str):
    t, us = _three_pairs(n, code)
    checked, found = 0, []
    for u in us:
        c, v = _degree_pair(t, u)
        checked += c
        found.extend(v)
    return checked, found


def _with_indecomposable_block(n: int, rng) -> Tournament:
    """A lexicographic sum in which one block of 3..n-2 vertices is indecomposable."""
    # no 4-vertex tournament is indecomposable
    sizes = [3] + list(range(5, n - 1))
    size = sizes[int(rng.integers(0, len(sizes)))]
    block = pairs.random_indecomposable(size, rng) if size >= 5 else \
        pairs.random_strong(size, rng)
    rest = n - size
    k = int(rng.integers(2, rest + 2))
    sizes = random_composition(rest, k - 1, rng) if k - 1 > 1 else [rest]
    shape = random_tournament(k, rng)
    parts = [block] + [random_tournament(s, rng) for s in sizes]
    order = [int(v) for v in rng.permutation(k)]
    return lex_sum_ordered(shape, parts, order)


def lex_sum_ordered(shape: Tournament, parts, order) -> Tournament:
    placed = [None] * shape.n
    for part, slot in zip(parts, order):
        placed[slot] = part
    return lex_sum(shape, placed)


def _degree_random(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "prop-degre", i)
    n = int(rng.integers(max(6, n_min), n_max + 1))
    t = _with_indecomposable_block(n, rng)
    for _ in range(8):
        u = _candidate_partner(t, rng)
        c, v = _degree_pair(t, u)
        if c:
            return c, v
    return _degree_pair(t, pairs.hereditary_partner(t, gallai_partition(t), rng))


# -- diamond statements -----------------------------------------------------------------


def _diamond_free_code(n: int, code: str):
    t = from_hex(n, code)
    if has_diamond_out(t.out, n):
        return 0, []
    sd3 = _sd(t, 3)
    strong = _strongly_self_dual(t)
    if sd3 != strong:
        return 1, [violation(t, "{-3}-self dual iff strongly self dual",
                             f"{{-3}}={sd3} strongly={strong}")]
    return 1, []


def _vertex_in_diamond(t: Tournament) -> tuple[int, list[Violation]]:
    masks = 0
    found = diamond_tuples(t.out, t.n)
    if not found:
        return 0, []
    for m, _, _ in found:
        masks |= m
    if masks != t.full:
        return 1, [violation(t, "every vertex in a diamond",
                             f"missing {sorted(_fs(t.full & ~masks))}")]
    return 1, []


def _vertex_code(n: int, code: str):
    return _vertex_in_diamond(from_hex(n, code))


def _vertex_random(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "vertex-in-diamond", i)
    n = int(rng.integers(max(4, n_min), n_max + 1))
    return _vertex_in_diamond(_random_mixed(n, rng))


def _interval2_code(n: int, code: str):
    t = from_hex(n, code)
    if not _has_pair_interval(t.out, n) or not has_diamond_out(t.out, n):
        return 0, []
    if _sd(t, 3):
        return 1, [violation(t, "not {-3}-self dual", "{-3}-self dual")]
    return 1, []


def _center_code(n: int, code: str):
    t = from_hex(n, code)
    if not has_diamond_out(t.out, n) or not _sd(t, 3):
        return 0, []
    centers = {c for _, _, c in diamond_tuples(t.out, n)}
    if len(centers) != n:
        return 1, [violation(t, "every vertex is a center",
                             f"no diamond centered at {sorted(set(range(n)) - centers)}")]
    return 1, []


def _balance_code(n: int, code: str):
    t = from_hex(n, code)
    checked, found = 0, []
    twos = _has_pair_interval(t.out, n)
    if twos and ((n >= 7 and _sd(t, 2)) or (n >= 8 and _sd(t, 3))):
        for a, b in twos:
            for v in (a, b):
                checked += 1
                plus, minus = center_counts(t, v)
                if plus != minus:
                    found.append(violation(t, f"equal signed center counts at {v}",
                                           f"({plus}, {minus})"))
    for x, y in combinations(range(n), 2):
        checked += 1
        try:
            st = pair_stats(t, x, y)
        except TheoremViolation as e:
            found.append(violation(t, f"cycle sums at {{{x},{y}}}", str(e)))
            continue
        if st.through_pair_plus != st.centered_at_x_plus + st.centered_at_y_plus + st.d_plus_cycle \
                or st.through_pair_minus != (st.centered_at_x_minus + st.centered_at_y_minus
                                             + st.d_minus_cycle):
            found.append(violation(t, f"diamonds through {{{x},{y}}} split by center", "mismatch"))
        if (x, y) in twos and st.through_pair_plus + st.through_pair_minus:
            found.append(violation(t, f"no diamond contains the interval {{{x},{y}}}",
                                   st.through_pair_plus + st.through_pair_minus))
    return checked, found


def _decomp_diamond_code(n: int, code: str):
    t = from_hex(n, code)
    if not decomposable_out(t.out) or not has_diamond_out(t.out, n):
        return 0, []
    if _sd(t, 3):
        return 1, [violation(t, "not {-3}-self dual", "{-3}-self dual")]
    return 1, []


def _theorem3_code(n: int, code: str):
    t = from_hex(n, code)
    if decomposable_out(t.out) and _sd(t, 3):
        return 1, [code]
    return 1, []


# -- reconstruction statements ----------------------------------------------------------


def _is_almost_transitive(t: Tournament) -> bool:
    return t.n >= 3 and are_isomorphic(t, almost_transitive(t.n))


def _prop28_pair(t: Tournament, u: Tournament) -> list[Violation]:
    n = t.n
    inst = _pair_instance(t, u)
    pt, pu = gallai_partition(t), gallai_partition(u)
    if pt != pu:
        return [violation(inst, f"P(T') = {pt}", pu)]
    if quotient(u, pt) != quotient(t, pt):
        return [violation(inst, "T'/P(T) = T/P(T)", "quotients differ")]
    found = []
    bad = [b for b in pt.blocks
           if not are_isomorphic(restrict(t, sorted(b)), restrict(u, sorted(b)))]
    for b in bad:
        if len(pt) != 3 or len(b) != n - 2:
            found.append(violation(inst, "a non-isomorphic block forces |P(T)|=3 and |X|=n-2",
                                   f"block {sorted(b)} with |P(T)|={len(pt)}"))
    if all(len(b) <= n - 3 for b in pt.blocks):
        if bad:
            found.append(violation(inst, "blocks isomorphic when all have at most n-3 vertices",
                                   f"{len(bad)} differ"))
        elif not are_isomorphic(t, u):
            found.append(violation(inst, "T' ~ T", "not isomorphic"))
    return found


def _prop28_one(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "prop28", i)
    n = int(rng.integers(max(9, n_min), n_max + 1))
    while True:
        t = pairs.random_strong_decomposable(n, rng)
        if not _is_almost_transitive(t):
            break
    part = gallai_partition(t)
    u = None
    for _ in range(6):
        cand = pairs.mixed_partner(t, part, rng, p_dual_quotient=0.2, p_relabel=0.3)
        if hypomorphic_sizes(t, cand, [n - 3]):
            u = cand
            break
    if u is None:
        u = pairs.hereditary_partner(t, part, rng)
        if not hypomorphic_sizes(t, u, [n - 3]):
            return 1, [violation(_pair_instance(t, u), "hereditary partner is {-3}-hypomorphic",
                                 "no")]
    return 1, _prop28_pair(t, u)


def _glued_isomorphism(t: Tournament, u: Tournament, part: Partition, verts: list[int]):
    f = {}
    for b in part.blocks:
        ys = sorted(set(b) & set(verts))
        if not ys:
            continue
        phi = find_isomorphism(restrict(t, ys), restrict(u, ys))
        if phi is None:
            return None
        for j, y in enumerate(ys):
            f[y] = ys[phi[j]]
    return f


def _reassembly_one(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "hereditary-reassembly", i)
    n = int(rng.integers(max(4, n_min), n_max + 1))
    t = _random_mixed(n, rng)
    part = tilde_partition(t) if rng.random() < 0.5 else gallai_partition(t)
    hereditary = rng.random() < 0.5
    if hereditary:
        u = pairs.hereditary_partner(t, part, rng)
    else:
        perms = {}
        for j, b in enumerate(part.blocks):
            if len(b) > 1 and rng.random() < 0.7:
                vs = sorted(b)
                perms[j] = dict(zip(vs, [vs[x] for x in rng.permutation(len(vs))]))
        u = pairs.reassemble(t, part, False, perms)
    inst = _pair_instance(t, u)
    found = []
    checked = 0
    for _ in range(4):
        k = int(rng.integers(1, n + 1))
        verts = sorted(int(v) for v in rng.choice(n, size=k, replace=False))
        f = _glued_isomorphism(t, u, part, verts)
        if f is None:
            continue
        checked += 1
        for a, b in combinations(verts, 2):
            if t.beats(a, b) != u.beats(f[a], f[b]):
                found.append(violation(inst, f"glued map is an isomorphism on {verts}",
                                       f"arc {a},{b} not preserved"))
                break
    if hereditary and n <= 9:
        checked += 1
        for mask in range(1, 1 << n):
            verts = [v for v in range(n) if (mask >> v) & 1]
            if len(verts) >= 3 and not are_isomorphic(restrict(t, verts), restrict(u, verts)):
                found.append(violation(inst, "hereditarily isomorphic", f"differs on {verts}"))
                break
    return checked, found


def _dilation_one(seed: int, n_min: int, n_max: int, i: int):
    rng = _rng(seed, "dilation-iso", i)
    n = int(rng.integers(max(1, n_min), n_max + 1))
    t = _random_mixed(n, rng)
    f = [int(v) for v in rng.permutation(n)]
    t2 = relabel(t, f)
    v = int(rng.integers(0, n))
    s = int(rng.integers(1, 6))
    r1 = random_tournament(s, rng)
    r2 = relabel(r1, [int(x) for x in rng.permutation(s)]) if rng.random() < 0.5 \
        else random_tournament(s, rng)
    lhs = are_isomorphic(dilate(t, v, r1), dilate(t2, f[v], r2))
    rhs = are_isomorphic(r1, r2)
    if lhs != rhs:
        return 1, [violation(_pair_instance(t, t2), f"R ~ R' iff R_i ~ R'_i (i={v})",
                             f"R~R'={lhs} R_i~R'_i={rhs}")]
    return 1, []


def _eight_partner(t: Tournament, rng) -> Tournament:
    part = gallai_partition(t)
    for _ in range(4):
        r = rng.random()
        if r < 0.15:
            cand = dual(t)
        elif r < 0.3:
            cand = pairs.reassemble(t, part, True, {})
        else:
            cand = pairs.mixed_partner(t, part, rng, p_dual_quotient=0.3, p_relabel=0.3)
        if hypomorphic_sizes(t, cand, [6, 5]):
            return cand
    return pairs.hereditary_partner(t, part, rng)


def _eight_one(seed: int, i: int):
    rng = _rng(seed, "eight-vertex", i)
    t = pairs.random_strong_decomposable(8, rng)
    u = _eight_partner(t, rng)
    inst = _pair_instance(t, u)
    if not hypomorphic_sizes(t, u, [6, 5]):
        return 1, [violation(inst, "candidate is {-2,-3}-hypomorphic", "no")]
    if not are_isomorphic(t, u):
        return 1, [violation(inst, "T' ~ T", "not isomorphic")]
    return 1, []


def _facts_pair(t: Tournament, u: Tournament, omega_empty: bool) -> list[Violation]:
    inst = _pair_instance(t, u)
    found = []
    pt = tilde_partition(t)
    pu = tilde_partition(u)
    sc = strongly_connected_out(t.out)
    if not sc:
        for b in pt.blocks:
            verts = sorted(b)
            if len(b) < 3 or not strongly_connected_out(restrict(t, verts).out):
                continue
            if b not in pu.blocks:
                found.append(violation(inst, f"{verts} is a block of P~(T')", pu))
            m = sum(1 << v for v in b)
            for a in range(t.n):
                if a in b:
                    continue
                if _dominates(t.out, a, m) != _dominates(u.out, a, m):
                    found.append(violation(inst, f"{a} -> {verts} in T iff in T'", "differs"))
    if pu != pt:
        found.append(violation(inst, f"P~(T') = P~(T) = {pt}", pu))
        return found
    if _is_almost_transitive(t):
        if not are_isomorphic(t, u):
            found.append(violation(inst, "T' ~ T for almost transitive T", "not isomorphic"))
        return found
    if quotient(u, pt) != quotient(t, pt):
        found.append(violation(inst, "T'/P~(T) = T/P~(T)", "quotients differ"))
    if omega_empty:
        for b in pt.blocks:
            vs = sorted(b)
            if not are_isomorphic(restrict(t, vs), restrict(u, vs)):
                found.append(violation(inst, f"T'[X] ~ T[X] for X={vs}", "not isomorphic"))
        if not are_isomorphic(t, u):
            found.append(violation(inst, "T' ~ T", "not isomorphic"))
    return found


def _facts_one(seed: int, n_min: int, n_max: int, omega_sizes: tuple, i: int):
    rng = _rng(seed, "theorem4-facts", i)
    n = int(rng.integers(max(9, n_min), n_max + 1))
    if rng.random() < 0.75:
        t = pairs.random_nonstrong(n, rng)
    else:
        t = pairs.random_strong_decomposable(n, rng)
    part = tilde_partition(t)
    u = None
    for _ in range(6):
        cand = pairs.mixed_partner(t, part, rng, p_dual_quotient=0.15, p_relabel=0.3)
        if hypomorphic_sizes(t, cand, [n - 3]):
            u = cand
            break
    if u is None:
        u = pairs.hereditary_partner(t, part, rng)
        if not hypomorphic_sizes(t, u, [n - 3]):
            return 1, [violation(_pair_instance(t, u), "hereditary partner is {-3}-hypomorphic",
                                 "no")]
    return 1, _facts_pair(t, u, n in omega_sizes)


def _remark7_code(n: int, code: str):
    t, us = _three_pairs(n, code)
    quads = [sum(1 << v for v in q) for q in combinations(range(n), 4)]
    t_diamonds = {m for m, _, _ in diamond_tuples(t.out, n)}
    found = []
    for u in us:
        inst = _pair_instance(t, u)
        le4 = hypomorphic_sizes(t, u, [3, 4])
        u_diamonds = {m for m, _, _ in diamond_tuples(u.out, n)}
        agree = True
        for m in quads:
            if m in t_diamonds or m in u_diamonds:
                vs = [v for v in range(n) if (m >> v) & 1]
                if not are_isomorphic(restrict(t, vs), restrict(u, vs)):
                    agree = False
                    break
        if le4 != agree:
            found.append(violation(inst, "(<=4)-hypomorphic iff diamond subsets agree",
                                   f"(<=4)={le4} agree={agree}"))
        if not t_diamonds and not hypomorphic_sizes(t, u, [4]):
            found.append(violation(inst, "diamond-free T gives {4}-hypomorphy", "no"))
    return len(us), found


# -- registry -------------------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    statement: str
    keys: frozenset
    runner: Callable


SUITES: dict[str, Suite] = {}


def _suite(name: str, statement: str, keys: str):
    def deco(fn):
        SUITES[name] = Suite(name, statement, frozenset(keys.split()), fn)
        return fn
    return deco


def _catalog_run(ctx: Context, fn, n: int):
    return map_checks(partial(fn, n), ctx.codes(n), ctx.jobs)


def _random_run(ctx: Context, fn, trials: int, *args):
    return map_checks(partial(fn, *args), range(trials), ctx.jobs)


def _need(cond: bool, message: str):
    if not cond:
        raise TournamentError(message)


def _mode(params: dict, exhaustive_default: bool = True) -> str:
    mode = params.get("mode")
    if mode is None:
        if "trials" in params and "n" not in params:
            mode = "random"
        else:
            mode = "exhaustive" if exhaustive_default else "random"
    _need(mode in ("exhaustive", "random"), f"unknown mode {mode!r}")
    return mode


def _random_params(params: dict, trials: int, n_min: int, n_max: int) -> dict:
    lo = params.get("n_min", params.get("n", n_min))
    hi = params.get("n_max", params.get("n", n_max))
    out = {"mode": "random", "seed": params.get("seed", 0), "trials": params.get("trials", trials),
           "n_min": lo, "n_max": hi}
    _need(out["trials"] >= 0, "trials must be non-negative")
    _need(lo <= hi, "n_min must not exceed n_max")
    return out


def _exhaustive_params(params: dict, n: int, low: int, high: int = 10) -> dict:
    n = params.get("n", n)
    _need(low <= n <= high, f"n must lie in {low}..{high} for this suite")
    return {"mode": "exhaustive", "n": n}


def _both_modes(name, fn_code, fn_random, n_default, n_low, n_high, rand_defaults):
    def run(ctx: Context, params: dict):
        if _mode(params) == "exhaustive":
            rp = _exhaustive_params(params, n_default, n_low, n_high)
            checked, found = _catalog_run(ctx, fn_code, rp["n"])
        else:
            rp = _random_params(params, *rand_defaults)
            _need(rp["n_min"] >= rand_defaults[1], f"n_min must be at least {rand_defaults[1]}")
            checked, found = _random_run(ctx, fn_random, rp["trials"], rp["seed"],
                                         rp["n_min"], rp["n_max"])
        return checked, found, rp
    return run


MODE_KEYS = "n mode seed trials n_min n_max"
RANDOM_KEYS = "n seed trials n_min n_max"

SUITE_TABLE = [
    ("gallai", "A tournament on at least two vertices is not strongly connected exactly when "
               "its quotient by P(T) is transitive (P(T) is then its strong components), and "
               "strongly connected exactly when that quotient is indecomposable with at least "
               "three blocks.", MODE_KEYS,
     _both_modes("gallai", _gallai_code, _gallai_random, 7, 2, 10, (1000, 2, 16))),
    ("vertex-in-diamond", "In a tournament that embeds a diamond, every vertex lies in some "
                          "diamond.", MODE_KEYS,
     _both_modes("vertex-in-diamond", _vertex_code, _vertex_random, 7, 4, 10, (1000, 4, 12))),
    ("quotient-dual", "{3}-hypomorphic tournaments have the same P(T), the same strong "
                      "connectivity and indecomposability, and when strongly connected their "
                      "quotients by P(T) are equal or dual.", MODE_KEYS,
     _both_modes("quotient-dual", _quotient_code, _quotient_random, 5, 3, 7, (500, 3, 12))),
    ("interval-transfer", "For {3}-hypomorphic T and T', an interval of T inducing a strongly "
                          "connected subtournament is an interval of T'.", MODE_KEYS,
     _both_modes("interval-transfer", _transfer_code, _transfer_random, 5, 3, 7, (500, 3, 12))),
    ("prop-degre", "For an interval I of T with |I| >= 3 and T[I] indecomposable (n >= 6), "
                   "{3,-2}- or {-3}-hypomorphy fixes T[I] up to isomorphism, then the sizes of "
                   "I+ and I-, and under {-3}-hypomorphy with four outside vertices the sets "
                   "I+ and I- themselves.", MODE_KEYS,
     _both_modes("prop-degre", _degree_code, _degree_random, 6, 6, 7, (300, 6, 10))),
]
for _name, _text, _keys, _fn in SUITE_TABLE:
    SUITES[_name] = Suite(_name, _text, frozenset(_keys.split()), _fn)


def _random_only(name, fn, trials, n_min, n_max, floor):
    def run(ctx: Context, params: dict):
        _need(params.get("mode", "random") == "random", f"{name} is a randomized suite")
        rp = _random_params(params, trials, n_min, n_max)
        _need(rp["n_min"] >= floor, f"n_min must be at least {floor}")
        checked, found = _random_run(ctx, fn, rp["trials"], rp["seed"], rp["n_min"], rp["n_max"])
        return checked, found, rp
    return run


for _name, _text, _fn, _t, _lo, _hi, _floor in [
    ("moon", "Every vertex of a strongly connected tournament on n >= 3 vertices lies in a "
             "strongly connected subtournament of each size 3..n.", _moon_one, 500, 3, 12, 3),
    ("ext-partition", "For X with |X| >= 3 and T[X] indecomposable, the sets Ext(X), [X] and "
                      "X(u) for u in X partition the vertices outside X.", _ext_one, 500, 4, 12, 4),
    ("indec-extend", "In an indecomposable tournament, an indecomposable X with |X| >= 3 and at "
                     "least two outside vertices grows by some outside pair to an "
                     "indecomposable set.", _indec_one, 500, 5, 10, 5),
    ("hypo-descent", "{p}-hypomorphy implies {q}-hypomorphy for every q <= min(p, n-p); in "
                     "particular {-3}-hypomorphy implies (<=3)-hypomorphy when n >= 6.",
     _descent_one, 500, 4, 8, 4),
    ("prop28", "For T strongly connected, decomposable, not almost transitive, n >= 9, and T' "
               "{-3}-hypomorphic: P(T') = P(T) with equal quotients; a non-isomorphic block "
               "forces |P(T)| = 3 and a block of n-2 vertices; blocks of at most n-3 vertices "
               "force T' ~ T. Checked on constructed partners.", _prop28_one, 200, 9, 10, 9),
    ("hereditary-reassembly", "Given a common interval partition with equal quotients, "
                              "block-wise isomorphisms on any subset A glue to an isomorphism "
                              "of T[A] onto T'[A]; hereditarily isomorphic blocks give "
                              "hereditarily isomorphic tournaments.", _reassembly_one, 300, 4, 9,
     1),
    ("dilation-iso", "Dilating corresponding vertices of isomorphic tournaments by R_i and R'_i "
                     "gives isomorphic results exactly when R_i ~ R'_i.", _dilation_one, 1000, 1,
     7, 1),
]:
    SUITES[_name] = Suite(_name, _text, frozenset(RANDOM_KEYS.split() + ["mode"]),
                          _random_only(_name, _fn, _t, _lo, _hi, _floor))


def _exhaustive_only(name, fn, n_default, low, high=10):
    def run(ctx: Context, params: dict):
        _need(params.get("mode", "exhaustive") == "exhaustive", f"{name} is an exhaustive suite")
        rp = _exhaustive_params(params, n_default, low, high)
        checked, found = _catalog_run(ctx, fn, rp["n"])
        return checked, found, rp
    return run


for _name, _text, _fn, _n, _lo, _hi in [
    ("inversion", "The only {3}-hypomorphs of an indecomposable tournament on at least three "
                  "vertices are itself and its dual (all labeled candidates are scanned).",
     _inversion_code, 5, 3, 7),
    ("diamond-free-selfdual", "A diamond-free tournament on at least 9 vertices is {-3}-self "
                              "dual exactly when it is strongly self dual.", _diamond_free_code,
     9, 9, 10),
    ("interval2-not-selfdual", "A tournament on at least 8 vertices that embeds a diamond and "
                               "has a 2-element interval is not {-3}-self dual.", _interval2_code,
     8, 8, 10),
    ("center-everywhere", "A {-3}-self dual tournament on at least 7 vertices that embeds a "
                          "diamond has a diamond centered at each vertex.", _center_code, 7, 7,
     10),
    ("pair-interval-balance", "If {a,b} is an interval of a {-2}-self dual (n >= 7) or "
                              "{-3}-self dual (n >= 8) tournament, a is the center of as many "
                              "positive as negative diamonds. Diamond counts through each pair "
                              "are also re-split by center.", _balance_code, 7, 7, 10),
    ("decomposable-diamond", "A decomposable tournament on at least 8 vertices that embeds a "
                             "diamond is not {-3}-self dual.", _decomp_diamond_code, 8, 8, 10),
]:
    SUITES[_name] = Suite(_name, _text, frozenset(["n", "mode"]),
                          _exhaustive_only(_name, _fn, _n, _lo, _hi))


@_suite("remark7", "There are four 4-vertex classes, all decomposable; {3}-hypomorphic "
                   "tournaments are (<=4)-hypomorphic exactly when they agree up to isomorphism "
                   "on every diamond subset, and a diamond-free T forces {4}-hypomorphy.",
        "n mode")
def _run_remark7(ctx: Context, params: dict):
    _need(params.get("mode", "exhaustive") == "exhaustive", "remark7 is an exhaustive suite")
    rp = _exhaustive_params(params, 5, 4, 7)
    found = []
    four = list(ctx.catalog(4).tournaments())
    if len(four) != 4:
        found.append(violation("n=4", "four classes", len(four)))
    for t in four:
        if not decomposable_out(t.out):
            found.append(violation(t, "decomposable", "indecomposable"))
    checked, more = _catalog_run(ctx, _remark7_code, rp["n"])
    return checked + len(four), found + more, rp


@_suite("comb-lemma", "Two families of p-sets contained equally often in every (p+r)-set are "
                      "contained equally often between any P' within Q' with |Q' - P'| >= p+r, "
                      "and coincide when the ground set has at least 2p+r elements.",
        "seed trials n n_max mode")
def _run_lemma(ctx: Context, params: dict):
    _need(params.get("mode", "random") == "random", "comb-lemma is a randomized suite")
    top = params.get("n_max", params.get("n", 10))
    _need(2 <= top <= 10, "ground sets are limited to 2..10 elements")
    rp = {"mode": "random", "seed": params.get("seed", 0), "trials": params.get("trials", 1000),
          "n_max": top}
    checked, found = _random_run(ctx, _lemma_one, rp["trials"], rp["seed"], top)
    return checked, found, rp


@_suite("theorem3", "A decomposable tournament on at least 9 vertices is {-3}-self dual exactly "
                    "when it is transitive or almost transitive (exhaustive over all classes).",
        "n mode")
def _run_theorem3(ctx: Context, params: dict):
    _need(params.get("mode", "exhaustive") == "exhaustive", "theorem3 is an exhaustive suite")
    rp = _exhaustive_params(params, 9, 9, 10)
    n = rp["n"]
    checked, hits = _catalog_run(ctx, _theorem3_code, n)
    expected = {canonical_form(transitive(n)).code: "transitive",
                canonical_form(almost_transitive(n)).code: "almost transitive"}
    found = []
    for code in hits:
        if code not in expected:
            found.append(violation(from_hex(n, code), "not {-3}-self dual", "{-3}-self dual"))
    for code, name in expected.items():
        t = from_hex(n, code)
        if code not in hits:
            found.append(violation(t, f"{name}: decomposable and {{-3}}-self dual", "missing"))
    return checked, found, rp


@_suite("eight-vertex", "Strongly connected decomposable 8-vertex tournaments are "
                        "{-2,-3}-reconstructible. Randomized search over constructed "
                        "{-2,-3}-hypomorphic partners, not exhaustive.", "seed trials mode")
def _run_eight(ctx: Context, params: dict):
    _need(params.get("mode", "random") == "random", "eight-vertex is a randomized suite")
    rp = {"mode": "random", "n": 8, "seed": params.get("seed", 0),
          "trials": params.get("trials", 1000), "coverage": "randomized, not exhaustive"}
    checked, found = _random_run(ctx, _eight_one, rp["trials"], rp["seed"])
    return checked, found, rp


@_suite("theorem4-facts", "For decomposable T on n >= 9 vertices and T' {-3}-hypomorphic: "
                          "strongly connected P~-blocks keep their relation to every outside "
                          "vertex, P~(T') = P~(T), the quotients by P~ agree, and where Omega_n "
                          "is known to be empty T' ~ T. Checked on constructed partners.",
        RANDOM_KEYS + " mode")
def _run_facts(ctx: Context, params: dict):
    _need(params.get("mode", "random") == "random", "theorem4-facts is a randomized suite")
    rp = _random_params(params, 200, 9, 10)
    _need(rp["n_min"] >= 9, "n_min must be at least 9")
    sizes = tuple(m for m in (9,) if rp["n_min"] <= m <= rp["n_max"])
    known = []
    for m in sizes:
        rep = omega(m, {m - 2: ctx.catalog(m - 2), m - 1: ctx.catalog(m - 1)})
        if not rep.members:
            known.append(m)
    checked, found = _random_run(ctx, _facts_one, rp["trials"], rp["seed"], rp["n_min"],
                                 rp["n_max"], tuple(known))
    return checked, found, rp


@_suite("corollary5", "Every member of Omega_m has an interval X with T[X] indecomposable and "
                      "at most two vertices outside, so the criterion for tournaments without "
                      "such an interval never applies to it; also checked on dilations of "
                      "non-empty smaller classes.", "n mode")
def _run_corollary5(ctx: Context, params: dict):
    _need(params.get("mode", "exhaustive") == "exhaustive", "corollary5 is an exhaustive suite")
    m = params.get("n", 9)
    _need(8 <= m <= 10, "m must lie in 8..10")
    rp = {"mode": "exhaustive", "n": m}
    rep = omega(m, {m - 2: ctx.catalog(m - 2), m - 1: ctx.catalog(m - 1)})
    checked, found = 0, []
    members = [(from_hex(m, code), tags) for code, tags in rep.members]
    # dilations of smaller non-empty classes exercise the same structure
    extra = []
    for size, entries in ((6, (-1,)), (6, (-3,))):
        for code in class_I(size, entries, ctx.catalog(size)):
            for tag in ("C3", "O3", "O2"):
                extra.extend((t, (tag,)) for t in dilate_into(tag, code.tournament()))
    for t, tags in members + extra:
        checked += 1
        if not decomposable_out(t.out) or not has_large_indecomposable_interval(t):
            found.append(violation(t, "decomposable with an indecomposable interval missing "
                                      "at most two vertices", "absent"))
        if is_transitive(t) or _is_almost_transitive(t):
            found.append(violation(t, "neither transitive nor almost transitive", tags))
        sc = strongly_connected_out(t.out)
        if sc != ("C3" in tags) and len(set(tags)) == 1:
            found.append(violation(t, f"strongly connected iff built from C3 ({tags})", sc))
    return checked, found, rp


SUITE_ORDER = [
    "gallai", "moon", "ext-partition", "indec-extend", "comb-lemma", "hypo-descent",
    "inversion", "quotient-dual", "interval-transfer", "prop-degre", "diamond-free-selfdual",
    "vertex-in-diamond", "interval2-not-selfdual", "center-everywhere", "pair-interval-balance",
    "decomposable-diamond", "theorem3", "prop28", "hereditary-reassembly", "dilation-iso",
    "eight-vertex", "theorem4-facts", "remark7", "corollary5",
]


def run_suite(name: str, params: dict | None = None, catalog_path=None, jobs: int | None = None,
              timing: bool = True) -> Report:
    if name not in SUITES:
        raise TournamentError(f"unknown suite {name!r}")
    suite = SUITES[name]
    params = {k: v for k, v in (params or {}).items() if v is not None}
    extra = set(params) - suite.keys
    if extra:
        raise TournamentError(f"suite {name} does not take {', '.join(sorted(extra))}")
    ctx = Context(catalog_path, jobs)
    start = time.perf_counter()
    checked, found, resolved = suite.runner(ctx, params)
    elapsed = int((time.perf_counter() - start) * 1000)
    found = sorted(found, key=lambda v: (v.instance, v.expected, v.observed))
    return Report(name, resolved, checked, found, elapsed if timing else None, True)
