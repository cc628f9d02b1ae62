"""Isometry classification, translation lengths, quasi-axes, equivalence
witnesses, the translation-length compression ratio, and the isotropy probe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .baumslag import BSElement
from .errors import BudgetExceeded, NotLoxodromic
from .metrics import PseudoLength
from .words import FreeWord, tree_distance

ELLIPTIC_EVIDENCE = "elliptic-evidence"
LOXODROMIC = "loxodromic"
UNKNOWN = "unknown"


@dataclass
class IsometryClass:
    verdict: str
    tau_upper: float
    tau_lower: float
    horizon: int
    certificate: str = ""


@dataclass
class TranslationTrace:
    upper: float
    trace: list[float]

    def is_non_increasing(self, tol: float = 1e-12) -> bool:
        return all(a >= b - tol for a, b in zip(self.trace, self.trace[1:]))


def translation_length_estimate(oracle, g, lengths, horizon: int) -> TranslationTrace:
    """Certified upper bounds l(g^n)/n for n = 1..horizon.

    By subadditivity every ratio bounds the translation length from above and
    the infimum over n converges to it.  `lengths` is a PseudoLength (raising
    DomainMiss outside its ball) or any callable on elements.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    fn = lengths if callable(lengths) else lengths.__call__
    trace = []
    power = oracle.identity()
    for n in range(1, horizon + 1):
        power = oracle.multiply(power, g)
        trace.append(fn(power) / n)
    return TranslationTrace(upper=min(trace), trace=trace)


def translation_length_exact_free(g: FreeWord) -> int:
    """Exact translation length in the free group: cyclically reduced length."""
    core, _ = g.cyclic_reduce()
    return len(core)


def certify_loxodromic(g, embedding=None) -> tuple[bool, str, float]:
    """Exact positivity certificates: (is_loxodromic, kind, tau_lower).

    FreeWord: cyclic reduction length; BSElement: |t-exponent sum| (a lower
    bound for the t-syllable orbit length); determinant-one matrices: the
    exact trace test under the supplied embedding.  Anything else is
    uncertified.
    """
    if isinstance(g, FreeWord):
        tau = translation_length_exact_free(g)
        return tau > 0, "free-cyclic-reduction", float(tau)
    if isinstance(g, BSElement):
        sigma = abs(g.t_exponent_sum())
        return sigma > 0, "bs-t-exponent-sum", float(sigma)
    if embedding is not None and hasattr(g, "trace"):
        from .sl2 import classify, translation_length_h2

        if classify(g, embedding) == "loxodromic":
            return True, "sl2-trace", translation_length_h2(g, embedding)
        return False, "sl2-trace", 0.0
    return False, "", 0.0


def classify_isometry(oracle, g, lengths, horizon: int, embedding=None) -> IsometryClass:
    """Estimate, then certify where an exact argument exists.

    The certificate (cyclic reduction, t-exponent sum, trace test) refers to
    the canonical action of g's kind; tau_lower bounds tau_upper only when
    `lengths` is an orbit length of that same action.
    """
    est = translation_length_estimate(oracle, g, lengths, horizon)
    certified, kind, tau_lower = certify_loxodromic(g, embedding)
    if certified:
        return IsometryClass(LOXODROMIC, est.upper, tau_lower, horizon, certificate=kind)
    # affine lower-bound fit l(g^n) >= lam*n - c across the horizon: evidence only
    values = [r * (i + 1) for i, r in enumerate(est.trace)]
    if horizon >= 2:
        lam = (values[-1] - values[0]) / (horizon - 1)
        c = max(lam * (i + 1) - v for i, v in enumerate(values))
        if lam > 0:
            return IsometryClass(
                UNKNOWN, est.upper, 0.0, horizon,
                certificate=f"affine-fit-evidence lam={lam:.6g} c={c:.6g}",
            )
    if max(values) <= values[0] + 1e-12:
        return IsometryClass(ELLIPTIC_EVIDENCE, est.upper, 0.0, horizon)
    return IsometryClass(UNKNOWN, est.upper, 0.0, horizon)


# ---------------------------------------------------------------------------
# quasi-axes


@dataclass
class QuasiAxis:
    """The bi-infinite path ... g^-1 gamma, gamma, g gamma ... over a window.

    vertices[i] = (parameter, element); consecutive translates share their
    endpoint vertices, so parameters run in steps of 1 along the path.
    """

    element: object
    base_word: object
    window: int
    vertices: list = field(default_factory=list)

    def points(self):
        return [v for _, v in self.vertices]


def build_quasi_axis(oracle, g, gamma, window: int) -> QuasiAxis:
    """Materialize the standard quasi-axis of g labeled by the geodesic gamma.

    gamma spells a geodesic from the basepoint to g: either a FreeWord (free
    groups, where the reduced word is the unique geodesic label) or a
    sequence of generator elements whose product is g.
    """
    if window < 0:
        raise ValueError("window must be >= 0")
    if isinstance(gamma, FreeWord):
        if not isinstance(g, FreeWord) or gamma != g:
            raise ValueError("label does not spell the element")
        if len(gamma) > len(g):
            raise ValueError("non-geodesic-label: label longer than the word length")
        prefixes = [FreeWord(gamma.signed[:i]) for i in range(len(gamma))]
    else:
        steps = list(gamma)
        prefixes = [oracle.identity()]
        for s in steps[:-1] if steps else []:
            prefixes.append(oracle.multiply(prefixes[-1], s))
        spelled = oracle.multiply(prefixes[-1], steps[-1]) if steps else oracle.identity()
        if not oracle.equal(spelled, g):
            raise ValueError("label does not spell the element")
    axis = QuasiAxis(element=g, base_word=gamma, window=window)
    segment_len = max(len(prefixes), 1)
    # the materialized path runs from g^-window s to g^window s (window >= 1);
    # window 0 is just the base segment from s to gs
    last_k = max(window - 1, 0)
    power = _oracle_power(oracle, g, -window)
    for k in range(-window, last_k + 1):
        for i, p in enumerate(prefixes):
            axis.vertices.append((k * segment_len + i, oracle.multiply(power, p)))
        power = oracle.multiply(power, g)
    axis.vertices.append(((last_k + 1) * segment_len, power))
    return axis


def _oracle_power(oracle, g, k: int):
    acc = oracle.identity()
    step = g if k >= 0 else oracle.invert(g)
    for _ in range(abs(k)):
        acc = oracle.multiply(acc, step)
    return acc


# ---------------------------------------------------------------------------
# equivalence witnesses


@dataclass
class EquivalenceWitness:
    a: object
    m: int
    n: int
    epsilon: float

    def check(self, oracle, g, h, dist) -> bool:
        """Re-evaluate max{d(a, 1), d(a g^m, h^n)} <= epsilon."""
        gm = _oracle_power(oracle, g, self.m)
        hn = _oracle_power(oracle, h, self.n)
        value = max(
            dist(self.a, oracle.identity()),
            dist(oracle.multiply(self.a, gm), hn),
        )
        return value <= self.epsilon + 1e-12

    def to_json(self, fmt=str):
        return {"a": fmt(self.a), "m": self.m, "n": self.n, "epsilon": self.epsilon}


@dataclass
class SearchExhausted:
    epsilon: float
    N: int
    radius: int
    power_cap: int
    candidates_checked: int

    def to_json(self):
        return dict(self.__dict__, exhausted=True)


def equivalence_witness_search(
    oracle,
    g,
    h,
    epsilon: float,
    N: int,
    radius: int,
    power_cap: int | None = None,
    dist=None,
    budget: int = 5_000_000,
):
    """Search for (a, m, n), m, n > N, with max{d(as,s), d(a g^m s, h^n s)} <= eps.

    The basepoint s is the identity and d defaults to the exact free-group
    word metric.  Candidates are scanned in lexicographic (|a|, m+n, m) order,
    so the returned witness is minimal in that order.  Exhaustion at finite
    scale is evidence, not proof, of non-equivalence.
    """
    if dist is None:
        if not isinstance(g, FreeWord):
            raise ValueError("supply dist for non-free oracles")
        dist = tree_distance
    if power_cap is None:
        power_cap = N + max(4, radius)
    ball = oracle.enumerate_ball(radius)
    identity = oracle.identity()
    g_pows = {m: _oracle_power(oracle, g, m) for m in range(N + 1, power_cap + 1)}
    h_pows = {n: _oracle_power(oracle, h, n) for n in range(N + 1, power_cap + 1)}
    checked = 0
    pairs = sorted(
        ((m, n) for m in g_pows for n in h_pows), key=lambda p: (p[0] + p[1], p)
    )
    for a in ball.elements:  # BFS order: |a| ascending, then lexicographic
        if dist(a, identity) > epsilon:
            continue
        for m, n in pairs:
            checked += 1
            if checked > budget:
                raise BudgetExceeded(
                    "witness search budget exhausted",
                    extent={"checked": checked},
                )
            if dist(oracle.multiply(a, g_pows[m]), h_pows[n]) <= epsilon:
                return EquivalenceWitness(a=a, m=m, n=n, epsilon=epsilon)
    return SearchExhausted(
        epsilon=epsilon,
        N=N,
        radius=radius,
        power_cap=power_cap,
        candidates_checked=checked,
    )


# ---------------------------------------------------------------------------
# compression ratio and the chain lower bound


@dataclass
class CompressionValue:
    ratio: float
    upper_numerator: float
    upper_denominator: float
    trace_numerator: list[float]
    trace_denominator: list[float]


def compression_function(oracle, g, lengths_compressed, lengths_reference, horizon: int) -> CompressionValue:
    """Ratio of horizon translation-length estimates: compressed over reference."""
    num = translation_length_estimate(oracle, g, lengths_compressed, horizon)
    den = translation_length_estimate(oracle, g, lengths_reference, horizon)
    if den.upper <= 1e-12:
        raise NotLoxodromic(
            "not-loxodromic-downstairs: reference translation length estimate is 0"
        )
    return CompressionValue(
        ratio=num.upper / den.upper,
        upper_numerator=num.upper,
        upper_denominator=den.upper,
        trace_numerator=num.trace,
        trace_denominator=den.trace,
    )


def chain_lower_bound(segment_lengths, C: float, delta: float) -> float:
    """Lower bound for d(x_0, x_n) along a chain with pinched Gromov products:
    sum of the segment lengths minus 2(n-1)(C + 8*delta)."""
    n = len(segment_lengths)
    if n == 0:
        return 0.0
    return float(sum(segment_lengths)) - 2.0 * (n - 1) * (C + 8.0 * delta)


def tau_profiles_proportional(profile1, profile2, tol: float = 1e-9):
    """Are two translation-length profiles positive multiples of each other?

    Profiles are parallel sequences of values over a common element list; a
    nonzero proportionality constant c with profile1 = c * profile2 is the
    finite-scale shadow of equality of projective classes.  Returns
    (verdict, c or None).
    """
    p1 = [float(v) for v in profile1]
    p2 = [float(v) for v in profile2]
    if len(p1) != len(p2):
        raise ValueError("profiles must have equal length")
    c = None
    for a, b in zip(p1, p2):
        if abs(a) <= tol and abs(b) <= tol:
            continue
        if abs(a) <= tol or abs(b) <= tol:
            return False, None
        ratio = a / b
        if c is None:
            c = ratio
        elif abs(ratio - c) > tol * max(1.0, abs(c)):
            return False, None
    return True, c


# ---------------------------------------------------------------------------
# isotropy probe


@dataclass
class ProbePairResult:
    x: object
    y: object
    x2: object
    y2: object
    distance: float
    best_constant: float
    best_g: object
    success: bool


@dataclass
class IsotropyReport:
    D: float
    pairs_checked: int
    successes: int
    failures: list
    hardest: ProbePairResult | None
    seed: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.pairs_checked if self.pairs_checked else 1.0


def match_pair(oracle, candidates, x, y, x2, y2, dist):
    """Best g among candidates for max{d(gx, x'), d(gy, y')}: (cost, g)."""
    best_c, best_g = float("inf"), None
    for g in candidates:
        c = max(dist(oracle.multiply(g, x), x2), dist(oracle.multiply(g, y), y2))
        if c < best_c:
            best_c, best_g = c, g
            if c == 0:
                break
    return best_c, best_g


def isotropy_probe(oracle, ball, D: float, sample_size: int, seed: int = 0, dist=None) -> IsotropyReport:
    """Sample equidistant point pairs in the ball and look for g matching them.

    For each sampled ((x, y), (x', y')) with d(x, y) = d(x', y') (exact
    integer equality), scan g in the ball for max{d(gx, x'), d(gy, y')} <= D.
    A failing pair is finite-scale evidence against isotropy with constant D.
    """
    if dist is None:
        if not isinstance(oracle.identity(), FreeWord):
            raise ValueError("supply dist for non-free oracles")
        dist = tree_distance
    rng = random.Random(seed)
    elements = ball.elements
    by_distance: dict[int, list[tuple]] = {}
    for i, x in enumerate(elements):
        for y in elements[i:]:
            d = dist(x, y)
            if d > 0:
                by_distance.setdefault(int(d), []).append((x, y))
    eligible = [d for d, pairs in sorted(by_distance.items()) if len(pairs) >= 2]
    results = []
    successes = 0
    for _ in range(sample_size):
        d = rng.choice(eligible)
        (x, y), (x2, y2) = rng.sample(by_distance[d], 2)
        best_c, best_g = match_pair(oracle, elements, x, y, x2, y2, dist)
        ok = best_c <= D
        successes += ok
        results.append(
            ProbePairResult(x, y, x2, y2, float(d), float(best_c), best_g, ok)
        )
    hardest = max(results, key=lambda r: r.best_constant, default=None)
    return IsotropyReport(
        D=D,
        pairs_checked=len(results),
        successes=successes,
        failures=[r for r in results if not r.success],
        hardest=hardest,
        seed=seed,
    )
