import random

import pytest

from hypactions.compression import (
    INF,
    BorelMapConfig,
    CompressedGenSet,
    PiPrefix,
    borel_map_f,
    compressed_word_length,
    make_bf_family,
    order_preservation_check,
    overlap_scan,
    qks_compare,
    subword_membership,
    subword_set,
    verify_length_bounds,
)
from hypactions.groups import FreeGroupOracle
from hypactions.loxodromic import build_quasi_axis
from hypactions.words import parse_word
from oracles import dijkstra_compressed_naive

F2 = FreeGroupOracle(2)
w = parse_word


def all_generator_sigs(W):
    return [u.signed for u in W.generators()]


def test_subword_membership_examples():
    ab = w("ab")
    assert subword_membership(ab, ab, 1)
    assert subword_membership(w("ba"), ab, 2)  # interior of abab
    assert not subword_membership(w("ba"), ab, 1)
    assert subword_membership(w("b^-1a^-1"), ab, 1)  # lives in (ab)^-1
    assert subword_membership(w("ba"), ab, INF)
    assert not subword_membership(w("a^2"), ab, INF)


def test_subword_set_contents():
    S = subword_set(w("ab"), 2)
    sigs = {u.signed for u in S}
    assert w("abab").signed in sigs and w("bab").signed in sigs
    assert w("b^-1a^-1").signed in sigs  # closed under inversion
    assert w("baba").signed not in sigs  # needs three periods
    with pytest.raises(ValueError):
        subword_set(w("aba^-1"), 2)  # not cyclically reduced


def test_compressed_word_length_examples():
    W = CompressedGenSet(2, [(w("ab"), 3)])
    assert compressed_word_length(F2.identity(), W) == 0
    assert compressed_word_length(w("ab") ** 3, W) == 1
    W2 = CompressedGenSet(2, [(w("ab"), 2)])
    assert compressed_word_length(w("ab") ** 5, W2) == 3


def test_compressed_word_length_against_naive_dijkstra():
    W = CompressedGenSet(2, [(w("ab"), 2)])
    gens = all_generator_sigs(W)
    for text in ("1", "a", "ab", "abab", "ababa", "b^-1a^-1b", "a^2b^2", "abab^2a"):
        g = w(text)
        naive = dijkstra_compressed_naive(g.signed, gens, radius=8)
        assert compressed_word_length(g, W) == naive


def test_compressed_word_length_two_families_against_naive():
    W = CompressedGenSet(2, [(w("ab"), 2), (w("a^2b"), 3)])
    gens = all_generator_sigs(W)
    for text in ("ab", "abab", "a^2b", "a^2ba^2b", "b^4", "aba^2b", "ba^2"):
        g = w(text)
        naive = dijkstra_compressed_naive(g.signed, gens, radius=6)
        assert compressed_word_length(g, W) == naive


def test_compressed_monotone_in_caps():
    g = w("ab") ** 6
    lengths = []
    for cap in (1, 2, 3, 4, 6):
        W = CompressedGenSet(2, [(w("ab"), cap)])
        lengths.append(compressed_word_length(g, W))
    assert lengths == sorted(lengths, reverse=True)


def test_compressed_never_exceeds_plain_length():
    W = CompressedGenSet(2, [(w("ab^3"), 2)])
    rng = random.Random(0)
    ball = F2.enumerate_ball(5)
    for g in rng.sample(ball.elements, 25):
        assert compressed_word_length(g, W) <= len(g)


def test_verify_length_bounds():
    W = CompressedGenSet(2, [(w("ab^3"), 2), (w("ab^9"), 3)])
    rep = verify_length_bounds(0, 6, W, alpha=0.0005)
    assert rep.upper_ok and rep.lower_ok
    assert rep.upper_bound == 3
    assert rep.fitted_alpha >= 0.0005
    rep = verify_length_bounds(1, 3, W, alpha=0.0005)
    assert rep.exact_length == 1 and rep.upper_bound == 1  # tight at k = cap
    rep = verify_length_bounds(0, 1, W, alpha=3 * 2)  # alpha <= 3 n_j is trivial
    assert rep.lower_ok and rep.upper_bound == 1


def test_upper_bound_holds_on_grid():
    W = CompressedGenSet(2, [(w("ab"), 2), (w("a^2b"), 3)])
    for j, (word, cap) in enumerate(W.families):
        for k in range(1, 9):
            rep = verify_length_bounds(j, k, W, alpha=0.0005)
            assert rep.upper_ok


def test_overlap_scan_self_and_disjoint():
    a_axis = build_quasi_axis(F2, w("a"), w("a"), 3)
    b_axis = build_quasi_axis(F2, w("b"), w("b"), 3)
    ball = F2.enumerate_ball(3)
    scan = overlap_scan(a_axis, a_axis, 0.0, [F2.identity()])
    assert scan.max_diameter == 6.0  # the whole materialized window
    scan = overlap_scan(a_axis, b_axis, 0.0, ball.elements)
    assert scan.max_diameter == 0.0  # distinct tree axes share at most a point


def test_overlap_scan_conjugate_axes():
    ab_axis = build_quasi_axis(F2, w("ab"), w("ab"), 2)
    ba_axis = build_quasi_axis(F2, w("ba"), w("ba"), 2)
    scan = overlap_scan(ab_axis, ba_axis, 0.0, [w("a")])
    # a * axis(ba) coincides with axis(ab) up to translation
    assert scan.max_diameter >= 2 * 2 * 2 - 2


def test_make_bf_family():
    fam = make_bf_family(F2, w("a"), w("b"), count=2, base=3)
    assert fam.members == [w("ab^3"), w("ab^9")]
    assert len({g.signed for g in fam.members}) == 2
    assert fam.K >= 1.0 and fam.L >= 0.0
    fam0 = make_bf_family(F2, w("a"), w("b"), count=0, base=10)
    assert fam0.members == []
    fam1 = make_bf_family(F2, w("a"), w("b"), count=1, base=10)
    assert fam1.members == [w("a") * w("b") ** 10]
    with pytest.raises(ValueError):
        # f1 f2^3 collapses to the identity: no loxodromic certificate
        make_bf_family(F2, w("b") ** -3, w("b"), count=1, base=3)


def test_bf_family_overlap_shadow():
    # distinct members overlap boundedly, while self-overlap fills the window
    fam = make_bf_family(F2, w("a"), w("b"), count=2, base=3, window=1)
    ball = F2.enumerate_ball(3)
    cross = overlap_scan(fam.axes[0], fam.axes[1], 0.0, ball.elements)
    self_scan = overlap_scan(fam.axes[0], fam.axes[0], 0.0, [F2.identity()])
    assert cross.max_diameter < 2 * len(fam.members[0])
    assert self_scan.max_diameter >= 2 * len(fam.members[0])


def test_surrogate_overlap_caps():
    from hypactions.compression import surrogate_overlap_caps

    fam = make_bf_family(F2, w("a"), w("b"), count=2, base=3, window=1)
    ball = F2.enumerate_ball(3)
    caps = surrogate_overlap_caps(fam.axes, 0.0, ball.elements, margin=2)
    assert len(caps) == 2 and all(c >= 2 for c in caps)
    # the caps feed straight into the prefix-to-genset map
    cfg = BorelMapConfig(2, [str(g) for g in fam.members], caps)
    W = borel_map_f(PiPrefix((1, 2)), cfg)
    assert [cap for _, cap in W.families] == caps


def test_pi_prefix_validation():
    PiPrefix((1, 2, 3, 4))
    PiPrefix((1, 1, 1, 1))
    with pytest.raises(ValueError):
        PiPrefix((2, 1))
    with pytest.raises(ValueError):
        PiPrefix((1, 0))


def test_qks_compare_examples():
    r = PiPrefix((1, 2, 3, 4))
    s = PiPrefix((1, 1, 1, 1))
    assert qks_compare(r, r).sup_diff == 0
    assert qks_compare(r, s).sup_diff == 3
    assert qks_compare(s, r).sup_diff == 0
    assert qks_compare(r, s).max_abs_diff == 3
    assert qks_compare(r, s, threshold=2).verdict == "not"
    assert qks_compare(r, s, threshold=3).verdict == "Q-related-at-prefix"
    with pytest.raises(ValueError):
        qks_compare(r, PiPrefix((1, 1)))


def test_qks_triangle_property():
    rng = random.Random(42)
    length = 8
    def rand_prefix():
        return PiPrefix(tuple(rng.randint(1, i) for i in range(1, length + 1)))
    for _ in range(300):
        r, s, t = rand_prefix(), rand_prefix(), rand_prefix()
        assert qks_compare(r, t).sup_diff <= qks_compare(r, s).sup_diff + qks_compare(s, t).sup_diff


CFG = BorelMapConfig(2, ["ab", "ab^2", "a^2b", "ab^3"], [1, 1, 1, 1])


def test_borel_map_caps():
    W = borel_map_f(PiPrefix((1, 2, 3, 4)), CFG)
    assert [cap for _, cap in W.families] == [1, 1, 1, 1]  # r(i) = i
    W = borel_map_f(PiPrefix((1, 1, 1, 1)), CFG)
    assert [cap for _, cap in W.families] == [1, 2, 4, 8]  # r(i) = 1
    with pytest.raises(ValueError):
        borel_map_f(PiPrefix((1, 2, 3, 4, 5)), CFG)  # config too short


def test_order_preservation_trivial_and_k1():
    r = PiPrefix((1, 2, 3, 4))
    rep = order_preservation_check(r, r, CFG)
    assert rep.k == 0 and rep.bound == 1 and rep.max_length == 1 and rep.ok()
    s = PiPrefix((1, 1, 2, 3))  # r - s = (0, 1, 1, 1): k = 1
    rep = order_preservation_check(r, s, CFG)
    assert rep.k == 1 and rep.bound == 2 and rep.max_length <= 2 and rep.ok()


def test_order_preservation_k2_exact_cross_check():
    cfg = BorelMapConfig(2, ["ab", "ab^2", "a^2b"], [1, 1, 1])
    r = PiPrefix((1, 2, 3))
    s = PiPrefix((1, 1, 1))  # sup diff 2 at index 3
    rep = order_preservation_check(r, s, cfg)
    assert rep.k == 2 and rep.bound == 4 and rep.ok()
    # cross-check the certified bounds with exact searches on this small case
    Wr = borel_map_f(r, cfg)
    Ws = borel_map_f(s, cfg)
    for u in Ws.jump_table():
        assert compressed_word_length(u, Wr) <= rep.bound


def test_order_preservation_k_is_never_negative():
    # r(1) = s(1) = 1 forces sup(r - s) >= 0 for any two valid prefixes
    r = PiPrefix((1, 1, 1, 1))
    s = PiPrefix((1, 2, 3, 4))
    rep = order_preservation_check(r, s, CFG)
    assert rep.k == 0 and rep.max_length == 1 and rep.ok()


def test_genset_json_roundtrip():
    W = CompressedGenSet(2, [("ab^3", 2), ("ab^9", INF)])
    blob = W.to_json()
    assert blob == {
        "base": ["a", "b"],
        "families": [{"w": "ab^3", "cap": 2}, {"w": "ab^9", "cap": "inf"}],
    }
    W2 = CompressedGenSet.from_json(blob)
    assert W2.cap_key() == W.cap_key()
    with pytest.raises(ValueError):
        W2.jump_table()  # infinite cap cannot be materialized
