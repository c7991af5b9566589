import random

import pytest

from oracles import brute_isomorphic, class_count, labeled_class_table
from tournkit import canon
from tournkit.core import (C3, C4, DELTA_MINUS, DELTA_PLUS, CanonicalCode, ShapeTag, Tournament,
                           almost_transitive, are_isomorphic, canonical_form, canonical_labeling,
                           classify_shape, delete, dilate, dual, find_isomorphism, format_tk,
                           from_arcs, from_code, from_hex, is_self_dual, lex_sum,
                           make_tournament, parse_tk, point, read_tk, relabel, restrict, to_hex,
                           transitive, write_tk)
from tournkit.errors import BoundError, SizeMismatchError, TournamentError, VertexError


def rand_t(n, rng):
    return from_code(n, rng.getrandbits(n * (n - 1) // 2) if n > 1 else 0)


def test_make_tournament_three_cycle():
    t = make_tournament(3, "101")
    assert t.beats(0, 1) and t.beats(2, 0) and t.beats(1, 2)
    assert t == C3


def test_make_tournament_delta_plus():
    t = make_tournament(4, "101111")
    assert all(t.beats(v, 3) for v in (0, 1, 2))
    assert restrict(t, [0, 1, 2]) == C3


def test_make_tournament_two_vertices():
    t = make_tournament(2, "1")
    assert t.beats(0, 1) and not t.beats(1, 0)


def test_make_tournament_accepts_sequences():
    assert make_tournament(3, [1, 0, 1]) == C3


@pytest.mark.parametrize("n,bits", [(3, "10"), (4, "1011111"), (2, "")])
def test_make_tournament_size_mismatch(n, bits):
    with pytest.raises(SizeMismatchError):
        make_tournament(n, bits)


def test_make_tournament_rejects_empty_and_bad_bits():
    with pytest.raises(TournamentError):
        make_tournament(0, "")
    with pytest.raises(TournamentError):
        make_tournament(3, "102")


def test_from_arcs_and_arcs_round_trip():
    t = from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert t == C3
    assert from_arcs(4, DELTA_PLUS.arcs()) == DELTA_PLUS
    with pytest.raises(TournamentError):
        from_arcs(3, [(0, 1), (1, 2)])


def test_dual_examples():
    assert dual(DELTA_PLUS).bits == "010000"
    assert dual(DELTA_PLUS) == DELTA_MINUS
    assert dual(C3).bits == "010"
    assert are_isomorphic(dual(C3), C3)
    assert dual(transitive(4)).bits == "000000"
    assert are_isomorphic(dual(transitive(4)), transitive(4))


def test_restrict_examples():
    assert restrict(DELTA_PLUS, {0, 1, 2}).bits == "101"
    t = make_tournament(5, "1011001110")
    assert restrict(t, range(5)) == t
    assert restrict(transitive(4), {0, 2, 3}).bits == "111"


def test_restrict_errors():
    with pytest.raises(VertexError):
        restrict(C3, [])
    with pytest.raises(VertexError):
        restrict(C3, [0, 3])


def test_delete_is_restrict_to_complement():
    t = make_tournament(5, "1011001110")
    assert delete(t, [1, 3]) == restrict(t, [0, 2, 4])


def test_canonical_form_examples():
    assert canonical_form(make_tournament(3, "101")) == canonical_form(make_tournament(3, "010"))
    four = {canonical_form(t) for t in (transitive(4), C4, DELTA_PLUS, DELTA_MINUS)}
    assert len(four) == 4
    every4 = {canonical_form(from_code(4, c)) for c in range(64)}
    assert every4 == four


def test_canonical_form_count_at_five_matches_oracle():
    codes = {canonical_form(from_code(5, c)) for c in range(1 << 10)}
    assert len(codes) == 12 == class_count(5)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_canonical_code_partitions_like_oracle(n):
    table = labeled_class_table(n)
    m = n * (n - 1) // 2
    ours = [canon.canonical_labeling(canon.out_from_code(n, c))[0] for c in range(1 << m)]
    by_oracle, by_ours = {}, {}
    for c in range(1 << m):
        by_oracle.setdefault(int(table[c]), set()).add(c)
        by_ours.setdefault(ours[c], set()).add(c)
    assert sorted(map(sorted, by_oracle.values())) == sorted(map(sorted, by_ours.values()))


def test_canonical_form_bound():
    with pytest.raises(BoundError):
        canonical_form(transitive(13))
    with pytest.raises(BoundError):
        canonical_form(transitive(6), bound=5)


def test_canonical_labeling_reproduces_code():
    rng = random.Random(5)
    for n in range(1, 10):
        t = rand_t(n, rng)
        code, perm = canonical_labeling(t)
        assert sorted(perm) == list(range(n))
        inv = [0] * n
        for i, v in enumerate(perm):
            inv[v] = i
        assert relabel(t, inv).code == code


def test_are_isomorphic_examples():
    assert are_isomorphic(C3, dual(C3))
    assert not are_isomorphic(DELTA_PLUS, DELTA_MINUS)
    assert not brute_isomorphic(DELTA_PLUS, DELTA_MINUS)
    assert not are_isomorphic(transitive(4), C4)
    assert not are_isomorphic(transitive(3), transitive(4))


def test_are_isomorphic_matches_brute_force():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 6)
        t = rand_t(n, rng)
        u = rand_t(n, rng) if rng.random() < 0.5 else relabel(t, rng.sample(range(n), n))
        assert are_isomorphic(t, u) == brute_isomorphic(t, u)


def test_find_isomorphism_maps_arcs():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 9)
        t = rand_t(n, rng)
        u = relabel(t, rng.sample(range(n), n))
        f = find_isomorphism(t, u)
        assert f is not None
        assert all(t.beats(x, y) == u.beats(f[x], f[y]) for x in range(n) for y in range(n))
    assert find_isomorphism(DELTA_PLUS, DELTA_MINUS) is None


def test_lex_sum_examples():
    at4 = lex_sum(C3, [transitive(2), point(), point()])
    assert are_isomorphic(at4, almost_transitive(4))
    h = make_tournament(5, "1011001110")
    assert lex_sum(h, [point()] * 5) == h
    assert lex_sum(C3, [point()] * 3) == C3


def test_lex_sum_layout_and_errors():
    t = lex_sum(transitive(2), [C3, point()])
    assert restrict(t, [0, 1, 2]) == C3
    assert all(t.beats(v, 3) for v in range(3))
    with pytest.raises(SizeMismatchError):
        lex_sum(C3, [point(), point()])


def test_dilate_matches_lex_sum():
    t = dilate(C3, 1, transitive(2))
    assert t.n == 4
    assert are_isomorphic(t, almost_transitive(4))


def test_classify_shape_examples():
    assert classify_shape(transitive(5)) == ShapeTag.TRANSITIVE
    assert classify_shape(make_tournament(4, "110111")) == ShapeTag.ALMOST_TRANSITIVE
    assert classify_shape(make_tournament(4, "010000")) == ShapeTag.DIAMOND_NEG
    assert classify_shape(DELTA_PLUS) == ShapeTag.DIAMOND_POS
    # the only strong 4-vertex class is also almost transitive, which takes precedence
    assert are_isomorphic(C4, almost_transitive(4))
    assert classify_shape(C4) == ShapeTag.ALMOST_TRANSITIVE
    assert classify_shape(C3) == ShapeTag.ALMOST_TRANSITIVE
    assert classify_shape(make_tournament(5, "1011001110")) == ShapeTag.OTHER


def test_almost_transitive_encoding():
    assert almost_transitive(4).bits == "110111"
    for n in range(3, 10):
        t = almost_transitive(n)
        assert not t.beats(0, n - 1)
        assert sorted(t.scores()) == [1] + list(range(1, n - 1)) + [n - 2]


def test_is_self_dual_examples():
    assert is_self_dual(C3)
    assert not is_self_dual(DELTA_PLUS)
    for n in range(1, 13):
        assert is_self_dual(transitive(n))


def test_hex_packing():
    assert to_hex(4, DELTA_PLUS.code) == "bc"
    assert format_tk(DELTA_PLUS) == "n=4 bits=bc"
    assert to_hex(1, 0) == ""
    assert from_hex(4, "bc") == DELTA_PLUS
    with pytest.raises(TournamentError):
        from_hex(4, "bd")  # padding bits must be zero
    with pytest.raises(TournamentError):
        from_hex(4, "b")


def test_tk_round_trip(tmp_path):
    rng = random.Random(2)
    for n in range(1, 13):
        t = rand_t(n, rng)
        assert parse_tk(format_tk(t)) == t
    path = tmp_path / "t.tk"
    write_tk(path, DELTA_MINUS)
    assert read_tk(path) == DELTA_MINUS
    with pytest.raises(TournamentError):
        parse_tk("n=4 bits")


def test_canonical_code_type():
    c = canonical_form(C4)
    assert isinstance(c, CanonicalCode)
    assert are_isomorphic(c.tournament(), C4)
    assert canonical_form(c.tournament()) == c


def test_tournament_is_hashable_value():
    assert len({Tournament(3, C3.out), C3, dual(C3)}) == 2
