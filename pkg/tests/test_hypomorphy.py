import random
from itertools import combinations

import pytest

from oracles import (brute_hypomorphic, brute_lemma, brute_self_dual_on,
                     three_hypomorphs_brute)
from tournkit.core import (C3, C4, DELTA_PLUS, almost_transitive, dual, from_code,
                           relabel, transitive)
from tournkit.decomposition import is_indecomposable
from tournkit.errors import BoundError, SizeMismatchError, TournamentError
from tournkit.hypomorphy import (HypoSpec, combinatorial_lemma_check, embed_count, embed_sets,
                                 hypomorphic, hypomorphic_sizes, is_minus_k_self_dual,
                                 self_dual_on_sizes, self_dual_profile, three_hypomorphs)


def rand_t(n, rng):
    return from_code(n, rng.getrandbits(n * (n - 1) // 2) if n > 1 else 0)


def test_hypospec_sizes():
    assert HypoSpec.of(-1, 3).sizes(6) == [3, 5]
    assert HypoSpec.upto(3).sizes(5) == [1, 2, 3]
    assert str(HypoSpec.of(-3, -2)) == "{-3,-2}"
    with pytest.raises(TournamentError):
        HypoSpec.of(0)
    with pytest.raises(TournamentError):
        HypoSpec.of(-7).sizes(5)


def test_every_pair_is_at_most_two_hypomorphic():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(2, 7)
        assert hypomorphic(rand_t(n, rng), rand_t(n, rng), HypoSpec.upto(2))


def test_hypomorphic_examples():
    t = from_code(6, 12345)
    assert hypomorphic(t, t, HypoSpec.of(-1, 2, 3))
    assert not hypomorphic(transitive(4), C4, HypoSpec.of(3))


def test_hypomorphic_size_mismatch():
    with pytest.raises(SizeMismatchError):
        hypomorphic(C3, C4, HypoSpec.of(2))


def test_hypomorphic_matches_oracle():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randint(3, 6)
        t = rand_t(n, rng)
        u = rand_t(n, rng) if rng.random() < 0.3 else dual(t)
        if rng.random() < 0.3:
            u = relabel(t, rng.sample(range(n), n))
        for size in range(1, n + 1):
            assert hypomorphic_sizes(t, u, [size]) == brute_hypomorphic(t, u, size)


def test_self_dual_on_sizes_matches_oracle():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(3, 7)
        t = rand_t(n, rng)
        size = rng.randint(3, n)
        assert self_dual_on_sizes(t, [size]) == brute_self_dual_on(t, size)


def test_embed_examples():
    assert embed_count(DELTA_PLUS, C3, {0, 1}) == 1
    assert embed_sets(DELTA_PLUS, C3, {0, 1}) == [frozenset({0, 1, 2})]
    t = from_code(6, 9999)
    assert embed_count(t, t) == 1
    assert embed_count(transitive(5), C3) == 0
    assert embed_count(transitive(5), transitive(3)) == 10


def test_embed_counts_agree_for_minus_p_hypomorphic_pairs():
    # an almost transitive T is {-3}-hypomorphic to its dual, so with
    # |X| <= 3 and |H| <= n - 3 the counts coincide
    t = almost_transitive(7)
    u = dual(t)
    assert hypomorphic(t, u, HypoSpec.of(-3))
    for h in (C3, transitive(3), transitive(4), DELTA_PLUS):
        for fixed in ([], [0], [2, 5]):
            assert embed_count(t, h, fixed) == embed_count(u, h, fixed)


def test_profile_examples():
    prof = self_dual_profile(transitive(9), 3)
    assert prof.self_dual and prof.strongly_self_dual and prof.at_most_k
    assert all(prof.entries.values())
    assert not self_dual_profile(DELTA_PLUS, 3).self_dual
    assert self_dual_profile(almost_transitive(9), 3).entries[-3]
    assert is_minus_k_self_dual(almost_transitive(9), 3)
    lines = self_dual_profile(C3, 2).lines()
    assert "self dual: true" in lines


def test_three_hypomorphs_of_c3():
    got = {u.bits for u in three_hypomorphs(C3)}
    assert got == {"101", "010"}


def test_three_hypomorphs_of_o3_are_linear_orders():
    got = three_hypomorphs(transitive(3))
    assert len(got) == 6
    assert all(sorted(u.scores()) == [0, 1, 2] for u in got)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_three_hypomorphs_match_brute_force(n):
    rng = random.Random(n)
    for _ in range(4):
        t = rand_t(n, rng)
        ours = sorted(u.bits for u in three_hypomorphs(t))
        assert ours == sorted(u.bits for u in three_hypomorphs_brute(t))


def test_three_hypomorphs_of_indecomposable_five():
    found = 0
    for c in range(1 << 10):
        t = from_code(5, c)
        if is_indecomposable(t):
            got = {u.bits for u in three_hypomorphs(t)}
            assert got == {t.bits, dual(t).bits}
            found += 1
    assert found > 0


def test_three_hypomorphs_bound():
    with pytest.raises(BoundError):
        three_hypomorphs(transitive(8))


def test_lemma_identical_families():
    fam = [s for s in combinations(range(6), 2)][:7]
    v = combinatorial_lemma_check(6, fam, fam, 2, 1)
    assert v.hypothesis and v.conclusion and v.equal_sets


def test_lemma_rejects_bad_members():
    with pytest.raises(TournamentError):
        combinatorial_lemma_check(5, [(0, 1, 2)], [], 2, 1)
    with pytest.raises(TournamentError):
        combinatorial_lemma_check(2, [], [], 2, 1)


def _random_family(ground_n, p, rng):
    allp = list(combinations(range(ground_n), p))
    return rng.sample(allp, rng.randint(0, len(allp)))


def test_lemma_matches_direct_count():
    rng = random.Random(4)
    for _ in range(150):
        p = rng.randint(1, 2)
        r = rng.randint(1, 2)
        ground_n = rng.randint(p + r, 6)
        fam = _random_family(ground_n, p, rng)
        if rng.random() < 0.5:
            other = fam
        else:
            other = _random_family(ground_n, p, rng)
        v = combinatorial_lemma_check(ground_n, fam, other, p, r)
        hyp, concl = brute_lemma(ground_n, fam, other, p, r)
        assert v.hypothesis == hyp
        if hyp:
            assert v.conclusion is not None
            assert bool(v.conclusion) == bool(concl and (ground_n < 2 * p + r
                                                          or set(fam) == set(other)))


def test_lemma_below_threshold_allows_distinct_families():
    # on a 2-element ground with p = r = 1 the only Q is the whole set
    v = combinatorial_lemma_check(2, [(0,)], [(1,)], 1, 1)
    assert v.hypothesis and v.conclusion
    assert v.equal_sets is None
