import pytest

from hypactions.errors import NotLoxodromic
from hypactions.groups import BSOracle, FreeGroupOracle
from hypactions.loxodromic import (
    EquivalenceWitness,
    SearchExhausted,
    build_quasi_axis,
    chain_lower_bound,
    classify_isometry,
    compression_function,
    equivalence_witness_search,
    isotropy_probe,
    translation_length_estimate,
    translation_length_exact_free,
)
from hypactions.words import FreeWord, parse_word, tree_distance

F2 = FreeGroupOracle(2)
word_len = lambda g: float(len(g))


def test_translation_length_estimate_examples():
    est = translation_length_estimate(F2, F2.identity(), word_len, 5)
    assert est.upper == 0.0
    est = translation_length_estimate(F2, parse_word("ab"), word_len, 5)
    assert est.upper == 2.0 and est.trace == [2.0] * 5
    est = translation_length_estimate(F2, parse_word("aba^-1"), word_len, 5)
    assert est.trace == [3.0, 2.0, 5.0 / 3.0, 1.5, 7.0 / 5.0]
    assert est.is_non_increasing()


def test_translation_length_exact_free():
    assert translation_length_exact_free(FreeWord.identity()) == 0
    assert translation_length_exact_free(parse_word("aba^-1")) == 1
    g = parse_word("ab^2ab")
    assert translation_length_exact_free(g) == 5
    assert len(g * g) == 10


def test_estimate_trace_law():
    # |g^n| = n*tau + (|g| - tau) exactly in free groups
    for text in ("aba^-1", "a^2ba^-2", "ab", "b^3"):
        g = parse_word(text)
        tau = translation_length_exact_free(g)
        est = translation_length_estimate(F2, g, word_len, 6)
        for n, ratio in enumerate(est.trace, start=1):
            assert ratio * n == n * tau + (len(g) - tau)


def test_tau_power_and_conjugation_laws():
    g = parse_word("ab^2")
    tau = translation_length_exact_free(g)
    for k in range(1, 5):
        assert translation_length_exact_free(g**k) == k * tau
        assert translation_length_exact_free(g**-k) == k * tau
    for c in (parse_word("a"), parse_word("ba"), parse_word("ab^-1a")):
        assert translation_length_exact_free(g.conjugate_by(c)) == tau


def test_classify_isometry():
    cls = classify_isometry(F2, parse_word("ab"), word_len, 6)
    assert cls.verdict == "loxodromic"
    assert cls.tau_lower == 2.0 and cls.tau_upper == 2.0
    cls = classify_isometry(F2, F2.identity(), word_len, 6)
    assert cls.verdict != "loxodromic"
    bs = BSOracle(2, 3)
    cls = classify_isometry(bs, bs.parse_element("t"), lambda g: float(g.t_syllable_count()), 6)
    assert cls.verdict == "loxodromic" and cls.certificate == "bs-t-exponent-sum"


def test_quasi_axis_examples():
    a = parse_word("a")
    axis = build_quasi_axis(F2, a, a, 2)
    assert axis.points() == [a**k for k in range(-2, 3)]
    assert [t for t, _ in axis.vertices] == list(range(-2, 3))

    ab = parse_word("ab")
    axis = build_quasi_axis(F2, ab, ab, 1)
    expected = [ab.inverse(), parse_word("b^-1"), F2.identity(), a, ab]
    assert axis.points() == expected

    axis = build_quasi_axis(F2, ab, ab, 0)
    assert axis.points() == [F2.identity(), a, ab]

    with pytest.raises(ValueError):
        build_quasi_axis(F2, ab, parse_word("ba"), 1)


def test_equivalence_witness_trivial():
    g = parse_word("ab")
    w = equivalence_witness_search(F2, g, g, epsilon=0.0, N=2, radius=1)
    assert isinstance(w, EquivalenceWitness)
    assert w.a == F2.identity() and w.m == w.n
    assert w.check(F2, g, g, tree_distance)


def test_equivalence_witness_conjugate():
    g = parse_word("ab")
    c = parse_word("a")
    h = g.conjugate_by(c)
    w = equivalence_witness_search(F2, g, h, epsilon=2.0 * len(c), N=2, radius=2)
    assert isinstance(w, EquivalenceWitness)
    assert w.check(F2, g, h, tree_distance)


def test_equivalence_witness_exhausted_for_independent():
    out = equivalence_witness_search(
        F2, parse_word("a"), parse_word("b"), epsilon=1.0, N=3, radius=4
    )
    assert isinstance(out, SearchExhausted)
    assert out.candidates_checked > 0


def test_compression_function():
    g = parse_word("ab")
    val = compression_function(F2, g, word_len, word_len, 5)
    assert val.ratio == 1.0
    half = lambda w: 0.5 * len(w)
    val = compression_function(F2, g, half, word_len, 5)
    assert val.ratio == 0.5
    with pytest.raises(NotLoxodromic):
        compression_function(F2, F2.identity(), word_len, word_len, 5)


def test_compression_against_enlarged_genset():
    # adding ab as a generator halves the translation length of (ab)^k
    extra = F2.symmetrize([parse_word("a"), parse_word("b"), parse_word("ab")])
    ball = F2.enumerate_ball(6, gens=extra)
    compressed = lambda g: float(ball.length[g])
    val = compression_function(F2, parse_word("ab"), compressed, word_len, 3)
    assert val.ratio == 0.5


def test_compression_invariant_under_powers():
    # with exact lengths the ratio is unchanged when g is replaced by g^k
    extra = F2.symmetrize([parse_word("a"), parse_word("b"), parse_word("ab")])
    ball = F2.enumerate_ball(8, gens=extra)
    compressed = lambda g: float(ball.length[g])
    g = parse_word("ab")
    base = compression_function(F2, g, compressed, word_len, 4).ratio
    for k in (2, 3):
        horizon = 8 // (2 * k) or 1
        assert compression_function(F2, g**k, compressed, word_len, horizon).ratio == base


def test_classify_isometry_sl2_certificate():
    from hypactions.loxodromic import certify_loxodromic
    from hypactions.sl2 import RealEmbedding, SL2Oracle, lemma_emb_matrix, mat2, orbit_distance_h2, parse_qfe

    minus = RealEmbedding(-1)
    A = lemma_emb_matrix(parse_qfe("sqrt2-1", 2))
    ok, kind, tau = certify_loxodromic(A, embedding=minus)
    assert ok and kind == "sl2-trace" and tau > 0
    oracle = SL2Oracle(d=2, gens=[A], names=["A"])
    cls = classify_isometry(
        oracle, A, lambda M: orbit_distance_h2(M, minus), 4, embedding=minus
    )
    assert cls.verdict == "loxodromic" and cls.tau_upper >= cls.tau_lower - 1e-9
    ok, kind, _ = certify_loxodromic(mat2([[0, -1], [1, 0]]), embedding=minus)
    assert not ok and kind == "sl2-trace"


def test_tau_profiles_proportional():
    from hypactions.loxodromic import tau_profiles_proportional

    ok, c = tau_profiles_proportional([0.0, 2.0, 4.0], [0.0, 1.0, 2.0])
    assert ok and c == 2.0
    ok, c = tau_profiles_proportional([0.0, 0.0], [0.0, 0.0])
    assert ok and c is None
    ok, _ = tau_profiles_proportional([0.0, 2.0], [1.0, 2.0])
    assert not ok  # zero against nonzero
    ok, _ = tau_profiles_proportional([1.0, 2.0], [1.0, 3.0])
    assert not ok


def test_chain_lower_bound():
    assert chain_lower_bound([], 1.0, 0.0) == 0.0
    assert chain_lower_bound([10.0], 1.0, 2.0) == 10.0  # n = 1: no correction
    assert chain_lower_bound([10.0, 10.0], 1.0, 0.0) == 20.0 - 2.0
    assert chain_lower_bound([5.0, 5.0, 5.0], 2.0, 0.25) == 15.0 - 4 * 4.0


def test_match_pair_trivial_cases():
    from hypactions.loxodromic import match_pair

    ball = F2.enumerate_ball(2)
    x, y = parse_word("a"), parse_word("ab")
    # identical target pair: the identity matches with cost 0
    c, g = match_pair(F2, ball.elements, x, y, x, y, tree_distance)
    assert c == 0 and g == F2.identity()
    # translated target pair: equivariance gives an exact match at D = 0
    z = parse_word("b^-1")
    c, g = match_pair(F2, ball.elements, x, y, z * x, z * y, tree_distance)
    assert c == 0 and g == z


def test_match_pair_incompatible_directions():
    from hypactions.loxodromic import match_pair

    # (1, a^2) and (1, ab) are equidistant pairs, but no g matches them at D=0:
    # gx = 1 and g a^2 = ab has no solution in the tree
    ball = F2.enumerate_ball(2)
    e = F2.identity()
    c, _ = match_pair(F2, ball.elements, e, parse_word("a^2"), e, parse_word("ab"), tree_distance)
    assert c >= 1


def test_isotropy_probe_tree():
    ball = F2.enumerate_ball(2)
    report = isotropy_probe(F2, ball, D=2.0, sample_size=6, seed=3)
    assert report.pairs_checked == 6
    assert 0.0 <= report.success_rate <= 1.0
    # the probe is reproducible
    again = isotropy_probe(F2, ball, D=2.0, sample_size=6, seed=3)
    assert [r.best_constant for r in report.failures] == [r.best_constant for r in again.failures]
    # matched pairs are exactly equidistant
    assert all(tree_distance(r.x, r.y) == tree_distance(r.x2, r.y2) for r in report.failures)
