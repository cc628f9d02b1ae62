"""Compressed generating sets: subword families S(w, n), exact compressed
word lengths, the overlap scanner, exponential families of loxodromics, and
the order-embedding of prefix sequences via cap vectors.

The compressed Cayley graph of W = X u S(w_1, n_1) u ... is implicit and
infinite; exact distances reduce to a uniform-cost search over the letter
positions of the target word, since W is closed under subwords and tree
geodesics project onto the target's prefix path.  Budgets surface as
BudgetExceeded, never as silently wrong answers; unit tests cross-check
against an independent materialized-graph oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .loxodromic import QuasiAxis, build_quasi_axis, certify_loxodromic
from .words import FreeWord, format_word, parse_word, tree_distance

INF = math.inf


def _substrings_with_provenance(big: tuple, out: dict, direction: int):
    L = len(big)
    for p in range(L):
        for q in range(p + 1, L + 1):
            sub = big[p:q]
            if sub not in out:
                out[sub] = (p, q - p, direction)


def subword_set(w: FreeWord, n: int) -> dict[FreeWord, tuple[int, int, int]]:
    """All subwords of w^{+-n} with a witness occurrence.

    Returns {subword: (offset, length, direction)} where direction +1 means
    the occurrence sits in w^n at the given letter offset and -1 in w^-n.
    """
    if not w:
        raise ValueError("subword families need a nonempty word")
    if n == INF or int(n) < 1:
        raise ValueError("materializing subwords needs a finite cap >= 1")
    n = int(n)
    big = (w**n).signed
    if len(big) != n * len(w):
        raise ValueError("family word must be cyclically reduced")
    found: dict[tuple, tuple[int, int, int]] = {}
    _substrings_with_provenance(big, found, +1)
    big_inv = (w ** (-n)).signed
    _substrings_with_provenance(big_inv, found, -1)
    return {FreeWord._raw(t): prov for t, prov in found.items()}


def subword_membership(u: FreeWord, w: FreeWord, n) -> bool:
    """Does u occur as a contiguous subword of w^n or w^-n?

    For n = inf the power is chosen just large enough to decide membership.
    Subwords are taken linearly in the written word, not cyclically.
    """
    if not w:
        raise ValueError("membership needs a nonempty word")
    if not u:
        return False
    if n is INF or n == INF:
        n = -(-len(u) // len(w)) + 1
    if n < 1:
        return False
    big = (w**n).signed
    target = u.signed
    if len(target) > len(big):
        return False
    hits = any(big[i : i + len(target)] == target for i in range(len(big) - len(target) + 1))
    if hits:
        return True
    inv = u.inverse().signed
    return any(big[i : i + len(inv)] == inv for i in range(len(big) - len(inv) + 1))


class CompressedGenSet:
    """Base alphabet X of a free group plus subword families (w_i, n_i)."""

    def __init__(self, rank: int, families):
        self.rank = rank
        fams = []
        for w, cap in families:
            if isinstance(w, str):
                w = parse_word(w, rank=rank)
            if not w:
                raise ValueError("family words must be nonempty")
            if not w.is_cyclically_reduced():
                raise ValueError(f"family word {w} must be cyclically reduced")
            if cap is not INF:
                cap = int(cap)
                if cap < 1:
                    raise ValueError("caps must be >= 1 or inf")
            fams.append((w, cap))
        self.families = tuple(fams)
        self._jump_cache: dict | None = None

    def cap_key(self):
        return (self.rank, tuple((w.signed, cap) for w, cap in self.families))

    def base_generators(self) -> list[FreeWord]:
        gens = []
        for i in range(self.rank):
            gens.append(FreeWord.generator(i, 1))
            gens.append(FreeWord.generator(i, -1))
        return gens

    def jump_table(self) -> dict[FreeWord, tuple[int, int, int, int]]:
        """{jump word: (family, offset, length, direction)}, first family wins."""
        if self._jump_cache is None:
            table: dict[FreeWord, tuple[int, int, int, int]] = {}
            for fam_idx, (w, cap) in enumerate(self.families):
                if cap is INF:
                    raise ValueError(
                        "infinite caps cannot be materialized; use subword_membership"
                    )
                for u, (p, length, direction) in subword_set(w, cap).items():
                    if u not in table:
                        table[u] = (fam_idx, p, length, direction)
            self._jump_cache = table
        return self._jump_cache

    def generators(self) -> list[FreeWord]:
        seen = {}
        for g in self.base_generators():
            seen.setdefault(g.signed, g)
        for g in self.jump_table():
            seen.setdefault(g.signed, g)
        return [seen[k] for k in sorted(seen)]

    def max_jump_len(self) -> int:
        longest = 1
        for w, cap in self.families:
            if cap is not INF:
                longest = max(longest, cap * len(w))
        return longest

    def __contains__(self, u: FreeWord) -> bool:
        if len(u) == 1:
            return abs(u.signed[0]) - 1 < self.rank
        return u in self.jump_table()

    def to_json(self):
        names = [format_word(FreeWord.generator(i)) for i in range(self.rank)]
        return {
            "base": names,
            "families": [
                {"w": format_word(w), "cap": "inf" if cap is INF else cap}
                for w, cap in self.families
            ],
        }

    @classmethod
    def from_json(cls, obj):
        rank = len(obj["base"])
        fams = []
        for f in obj["families"]:
            cap = f["cap"]
            cap = INF if cap in ("inf", None) else int(cap)
            fams.append((parse_word(f["w"], rank=rank), cap))
        return cls(rank, fams)

    def __repr__(self):
        fams = ", ".join(
            f"({format_word(w)},{'inf' if cap is INF else cap})" for w, cap in self.families
        )
        return f"CompressedGenSet(rank={self.rank}, families=[{fams}])"


def compressed_word_length(
    g: FreeWord,
    W: CompressedGenSet,
    budget: int = 2_000_000,
    cutoff: int | None = None,
):
    """Exact distance from the identity to g in the Cayley graph of W.

    The search runs on the letter positions 0..|g| of the reduced word of g:
    positions i, j are adjacent iff the segment g[i:j] is a W-generator.
    This is exact because W is closed under taking subwords, so projecting a
    compressed geodesic onto the prefix path of g (in the tree, each hop's
    geodesic covers the spanned segment of [1, g], which is then itself a
    generator) gives an equally short position path.  The result is therefore
    independent of search order, and no corridor prune is needed.

    budget caps the number of position-pair membership probes; cutoff turns
    the call into a bounded query returning None when the distance exceeds it.
    """
    target = g.signed
    L = len(target)
    if L == 0:
        return 0
    jump_sigs = {u.signed for u in W.jump_table()}
    span = W.max_jump_len()
    rank = W.rank
    dist = [None] * (L + 1)
    dist[0] = 0
    frontier = [0]
    d = 0
    probes = 0
    while frontier:
        if dist[L] is not None:
            return dist[L]
        d += 1
        if cutoff is not None and d > cutoff:
            return None
        nxt = []
        for i in frontier:
            lo, hi = max(0, i - span), min(L, i + span)
            for j in range(lo, hi + 1):
                if j == i or dist[j] is not None:
                    continue
                probes += 1
                if probes > budget:
                    raise BudgetExceeded(
                        f"compressed length probe budget {budget} exhausted",
                        best_upper=L,
                        extent={"positions": L + 1, "depth_reached": d - 1},
                    )
                a, b = (i, j) if i < j else (j, i)
                seg = target[a:b]
                if (b - a == 1 and abs(seg[0]) <= rank) or seg in jump_sigs:
                    dist[j] = d
                    nxt.append(j)
        frontier = nxt
    if dist[L] is not None:
        return dist[L]
    if cutoff is not None:
        return None
    raise ValueError("element is not generated by the base alphabet and families")


@dataclass
class LengthBoundReport:
    family: int
    k: int
    cap: int
    exact_length: int
    upper_bound: int
    upper_ok: bool
    alpha: float
    lower_bound: float
    lower_ok: bool
    fitted_alpha: float

    def to_json(self):
        return dict(self.__dict__)


def verify_length_bounds(j: int, k: int, W: CompressedGenSet, alpha: float, budget: int = 500_000) -> LengthBoundReport:
    """Check ceil(k/n_j) >= |w_j^k|_W >= alpha*k/n_j - 2 for one (j, k).

    The upper bound must hold unconditionally (S(w_j, n_j) is part of W); the
    lower bound is reported pass/fail for the supplied alpha, together with
    the largest alpha that would have passed.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    w, cap = W.families[j]
    if cap is INF:
        raise ValueError("length bounds need a finite cap")
    g = w**k
    exact = compressed_word_length(g, W, budget=budget)
    upper = -(-k // cap)
    lower = alpha * k / cap - 2.0
    fitted = (exact + 2.0) * cap / k
    return LengthBoundReport(
        family=j,
        k=k,
        cap=cap,
        exact_length=exact,
        upper_bound=upper,
        upper_ok=exact <= upper,
        alpha=alpha,
        lower_bound=lower,
        lower_ok=exact >= lower - 1e-12,
        fitted_alpha=fitted,
    )


@dataclass
class OverlapScan:
    max_diameter: float
    witness_translate: object
    per_translate: list = field(default_factory=list)


def overlap_scan(axis_i: QuasiAxis, axis_j: QuasiAxis, r: float, translates, oracle=None, dist=tree_distance) -> OverlapScan:
    """max over translates a of diam{p on axis_i : d(p, a . axis_j) <= r}."""
    pts_i = axis_i.points()
    pts_j = axis_j.points()
    mul = oracle.multiply if oracle is not None else (lambda a, q: a * q)
    best = 0.0
    best_a = None
    per = []
    for a in translates:
        moved = [mul(a, q) for q in pts_j]
        close = [p for p in pts_i if min(dist(p, q) for q in moved) <= r]
        diam = 0.0
        for idx, p in enumerate(close):
            for q in close[idx + 1 :]:
                d = dist(p, q)
                if d > diam:
                    diam = d
        per.append((a, diam))
        if diam > best:
            best = diam
            best_a = a
    return OverlapScan(max_diameter=best, witness_translate=best_a, per_translate=per)


def surrogate_overlap_caps(axes, r: float, translates, margin: int = 2, oracle=None, dist=tree_distance):
    """Finite-scale N_i surrogates: cross-overlap scan maxima plus a margin.

    The true overlap bound ranges over the whole group; this replaces it by
    the scan over the supplied translate list.  Record the translates and
    margin alongside any report built on these caps.
    """
    out = []
    for i, axis in enumerate(axes):
        worst = 0.0
        for j, other in enumerate(axes):
            if j == i:
                continue
            scan = overlap_scan(axis, other, r, translates, oracle=oracle, dist=dist)
            worst = max(worst, scan.max_diameter)
        out.append(int(worst) + margin)
    return out


@dataclass
class BFFamily:
    """g_n = f1 * f2^(c^n): an exponentially separated loxodromic family."""

    f1: object
    f2: object
    base: int
    members: list
    axes: list
    K: float
    L: float


def make_bf_family(oracle, f1, f2, count: int, base: int = 3, window: int = 1) -> BFFamily:
    """Members f1*f2^(c^n) for n = 1..count, each with its standard quasi-axis
    through the identity.  Every member must carry a loxodromic certificate."""
    if base < 2:
        raise ValueError("base must be >= 2")
    members = []
    axes = []
    K = 1.0
    L = 0.0
    for n in range(1, count + 1):
        g = oracle.multiply(f1, _power(oracle, f2, base**n))
        ok, kind, tau = certify_loxodromic(g)
        if not ok:
            raise ValueError(f"family member {oracle.format_element(g)} has no loxodromic certificate")
        if isinstance(g, FreeWord):
            axis = build_quasi_axis(oracle, g, g, window)
            K = max(K, len(g) / tau)
        else:
            axis = None
        members.append(g)
        axes.append(axis)
    if len({oracle.sort_key(g) for g in members}) != len(members):
        raise ValueError("family members must be pairwise distinct")
    # L fitted over the materialized windows: path length <= K * d + L
    for axis, g in zip(axes, members):
        if axis is None or not isinstance(g, FreeWord):
            continue
        verts = axis.vertices
        for ii in range(len(verts)):
            for jj in range(ii + 1, len(verts)):
                t1, p = verts[ii]
                t2, q = verts[jj]
                L = max(L, (t2 - t1) - K * tree_distance(p, q))
    return BFFamily(f1=f1, f2=f2, base=base, members=members, axes=axes, K=K, L=L)


def _power(oracle, g, k: int):
    if hasattr(g, "__pow__"):
        return g**k
    acc = oracle.identity()
    for _ in range(k):
        acc = oracle.multiply(acc, g)
    return acc


# ---------------------------------------------------------------------------
# the sequence space Pi and its bounded-difference comparators


@dataclass(frozen=True)
class PiPrefix:
    """A finite prefix of a sequence r with 1 <= r(n) <= n."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        for idx, v in enumerate(self.values, start=1):
            if not 1 <= v <= idx:
                raise ValueError(f"invalid-prefix: r({idx}) = {v} not in [1, {idx}]")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass
class QksComparison:
    sup_diff: int
    max_abs_diff: int
    verdict: str


def qks_compare(r: PiPrefix, s: PiPrefix, threshold: int | None = None) -> QksComparison:
    """sup_n (r(n) - s(n)) over a shared prefix, plus the symmetric variant.

    Any finite prefix has a finite sup, so the prefix-level relation always
    holds; the verdict compares the sup against a caller threshold.
    """
    if len(r) != len(s):
        raise ValueError("length-mismatch: prefixes must have equal length")
    if len(r) == 0:
        raise ValueError("length-mismatch: prefixes must be nonempty")
    diffs = [a - b for a, b in zip(r.values, s.values)]
    sup = max(diffs)
    sym = max(abs(d) for d in diffs)
    verdict = "Q-related-at-prefix" if threshold is None or sup <= threshold else "not"
    return QksComparison(sup_diff=sup, max_abs_diff=sym, verdict=verdict)


@dataclass
class BorelMapConfig:
    """Fixed data behind the map r |-> W_(2^(i-r(i)) * N_i)."""

    rank: int
    family_words: list
    N: list[int]

    def __post_init__(self):
        self.family_words = [
            parse_word(w, rank=self.rank) if isinstance(w, str) else w
            for w in self.family_words
        ]


def borel_map_f(r: PiPrefix, config: BorelMapConfig) -> CompressedGenSet:
    """The compressed set with caps n_i = 2^(i - r(i)) * N_i, i = 1..len(r)."""
    if len(config.family_words) < len(r) or len(config.N) < len(r):
        raise ValueError("config must supply a word and N for every prefix index")
    fams = []
    for i, ri in enumerate(r.values, start=1):
        cap = (2 ** (i - ri)) * config.N[i - 1]
        fams.append((config.family_words[i - 1], cap))
    return CompressedGenSet(config.rank, fams)


@dataclass
class OrderPreservationReport:
    k: int
    bound: int
    generators_checked: int
    max_length: int
    max_ratio: float
    violations: list
    exact_searches: int

    def ok(self) -> bool:
        return not self.violations


def order_preservation_check(
    r: PiPrefix,
    s: PiPrefix,
    config: BorelMapConfig,
    budget: int = 500_000,
) -> OrderPreservationReport:
    """Verify that every materialized generator of f(s) has f(r)-length <= 2^k,
    k = sup(r - s) >= 0.

    Each generator is first certified by a constructive bound: membership in
    f(r) gives length 1, and a subword of w_i^{+-n_i(s)} splits at the block
    boundaries of w_i^{n_i(r)} into at most 2^k subwords of w_i^{+-n_i(r)}.
    The exact search runs only when the cheap bound exceeds 2^k.
    """
    cmp = qks_compare(r, s)
    k = cmp.sup_diff
    if k < 0:
        raise ValueError("order check needs sup(r - s) >= 0")
    bound = 2**k
    Wr = borel_map_f(r, config)
    Ws = borel_map_f(s, config)
    r_caps = {i: cap for i, (_, cap) in enumerate(Wr.families)}
    checked = 0
    max_len = 1
    max_ratio = 0.0
    violations = []
    exact_searches = 0
    for u, (fam, p, length, _direction) in Ws.jump_table().items():
        checked += 1
        if u in Wr:
            observed = 1
        else:
            w_i, _ = Ws.families[fam]
            B = r_caps[fam] * len(w_i)
            blocks = (p + length - 1) // B - p // B + 1
            observed = blocks
            if observed > bound:
                exact_searches += 1
                exact = compressed_word_length(u, Wr, budget=budget, cutoff=bound)
                if exact is None:
                    violations.append(
                        {"word": format_word(u), "length": f">{bound}", "family": fam}
                    )
                    continue
                observed = exact
        max_len = max(max_len, observed)
        max_ratio = max(max_ratio, observed / bound)
    return OrderPreservationReport(
        k=k,
        bound=bound,
        generators_checked=checked,
        max_length=max_len,
        max_ratio=max_ratio,
        violations=violations,
        exact_searches=exact_searches,
    )
