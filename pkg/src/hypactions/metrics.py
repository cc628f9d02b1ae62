"""Pseudo-lengths, finite metric spaces, the four-point hyperbolicity
estimator, generating-set comparators, and the cone-off construction.

Distances are 64-bit floats (exact integers for word metrics); the only
tolerance in this module is the absolute 1e-12 used when comparing against
zero.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import AxiomViolation, BudgetExceeded, DomainMiss

ZERO_TOL = 1e-12


def thread_cap() -> int:
    """Parallelism cap from HYPACTIONS_THREADS (results never depend on it)."""
    raw = os.environ.get("HYPACTIONS_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# pseudo-lengths


class PseudoLength:
    """A non-negative length function materialized on a finite domain."""

    def __init__(self, values: dict):
        self.values = dict(values)

    @property
    def domain(self):
        return self.values.keys()

    def __contains__(self, g):
        return g in self.values

    def __call__(self, g) -> float:
        try:
            return self.values[g]
        except KeyError:
            raise DomainMiss(g) from None

    def __len__(self):
        return len(self.values)

    def scaled(self, c: float) -> "PseudoLength":
        return PseudoLength({g: c * v for g, v in self.values.items()})

    @classmethod
    def from_word_lengths(cls, ball) -> "PseudoLength":
        return cls({g: float(r) for g, r in ball.length.items()})

    @classmethod
    def from_function(cls, fn, domain) -> "PseudoLength":
        return cls({g: float(fn(g)) for g in domain})


def orbit_pseudo_length(oracle, distances: dict, check: str = "all") -> PseudoLength:
    """Wrap a map g -> d(s, gs) as a PseudoLength, verifying the axioms.

    check: "all" verifies symmetry on every invertible pair and subadditivity
    on every product that lands back in the domain; "none" skips verification.
    Raises AxiomViolation with the offending element or pair.
    """
    values = {g: float(v) for g, v in distances.items()}
    e = oracle.identity()
    if e not in values:
        raise AxiomViolation("identity", e, "identity missing from domain")
    if abs(values[e]) > ZERO_TOL:
        raise AxiomViolation("identity", e, f"l(1) = {values[e]} != 0")
    for g, v in values.items():
        if v < -ZERO_TOL:
            raise AxiomViolation("non-negativity", g, f"l(g) = {v} < 0")
    if check == "all":
        for g, v in values.items():
            gi = oracle.invert(g)
            if gi in values and abs(values[gi] - v) > ZERO_TOL:
                raise AxiomViolation("symmetry", g, f"l(g)={v}, l(g^-1)={values[gi]}")
        items = list(values.items())
        for g, vg in items:
            for h, vh in items:
                gh = oracle.multiply(g, h)
                vgh = values.get(gh)
                if vgh is not None and vgh > vg + vh + ZERO_TOL:
                    raise AxiomViolation(
                        "subadditivity", (g, h), f"l(gh)={vgh} > {vg}+{vh}"
                    )
    elif check != "none":
        raise ValueError(f"unknown check mode {check!r}")
    return PseudoLength(values)


def log_transform(lengths: PseudoLength, enumeration) -> list[float]:
    """The sequence log2(l(g_i) + 1) along a fixed enumeration of the domain."""
    return [math.log2(lengths(g) + 1.0) for g in enumeration]


DOMINATED = "dominated"
NOT_DOMINATED = "not-dominated"
INCONCLUSIVE = "inconclusive"


@dataclass
class ComparisonReport:
    direction: str
    constant: float
    worst_witness: object
    certified: bool = False
    note: str = ""
    probe_ratios: list = field(default_factory=list)

    def to_json(self, fmt=str):
        return {
            "direction": self.direction,
            "constant": self.constant,
            "worst_witness": fmt(self.worst_witness),
            "certified": self.certified,
            "note": self.note,
            "probe_ratios": list(self.probe_ratios),
        }


def compare_pseudo_lengths(
    l1: PseudoLength,
    l2: PseudoLength,
    probe=None,
    certificate: str | None = None,
) -> ComparisonReport:
    """Fit the minimal C with l1 <= C*l2 + C on the shared domain.

    If `probe` (a sequence of elements) is supplied and the ratios
    (l1+1)/(l2+1) increase strictly along it, the verdict flips to
    NOT_DOMINATED; without an analytic `certificate` that verdict is finite-
    scale evidence only and flagged as such.
    """
    shared = [g for g in l1.domain if g in l2]
    if not shared:
        raise ValueError("empty-domain: the pseudo-lengths share no elements")
    best_c, worst = 0.0, None
    for g in shared:
        c = l1(g) / (l2(g) + 1.0)
        if c > best_c:
            best_c, worst = c, g
    ratios = []
    if probe is not None:
        ratios = [(l1(g) + 1.0) / (l2(g) + 1.0) for g in probe]
    increasing = len(ratios) >= 2 and all(
        ratios[i] < ratios[i + 1] for i in range(len(ratios) - 1)
    )
    if increasing:
        return ComparisonReport(
            direction=NOT_DOMINATED,
            constant=best_c,
            worst_witness=worst,
            certified=certificate is not None,
            note=certificate or "finite-scale evidence only (inconclusive)",
            probe_ratios=ratios,
        )
    return ComparisonReport(
        direction=DOMINATED,
        constant=best_c,
        worst_witness=worst,
        note="C fitted on the shared domain; re-verify with constant",
        probe_ratios=ratios,
    )


# ---------------------------------------------------------------------------
# finite metric spaces


class FiniteMetricSpace:
    """A symmetric matrix of non-negative distances with zero diagonal.

    Entries may be ints, Fractions, or floats; `as_array` converts to float64
    for the vectorized scans.
    """

    def __init__(self, rows, validate: bool = True, tol: float = ZERO_TOL):
        self.rows = [list(r) for r in rows]
        self.size = len(self.rows)
        if any(len(r) != self.size for r in self.rows):
            raise ValueError("distance matrix must be square")
        if validate:
            self.validate(tol)

    def validate(self, tol: float = ZERO_TOL):
        n = self.size
        for i in range(n):
            if abs(self.rows[i][i]) > tol:
                raise ValueError(f"nonzero diagonal at {i}")
            for j in range(i + 1, n):
                if self.rows[i][j] != self.rows[j][i]:
                    if abs(self.rows[i][j] - self.rows[j][i]) > tol:
                        raise ValueError(f"asymmetry at ({i},{j})")
                if self.rows[i][j] < -tol:
                    raise ValueError(f"negative distance at ({i},{j})")
        D = self.as_array()
        for k in range(n):
            slack = D - (D[:, k][:, None] + D[k, :][None, :])
            if slack.max() > tol:
                i, j = np.unravel_index(np.argmax(slack), slack.shape)
                raise ValueError(f"triangle inequality fails for ({i},{j},{k})")

    def dist(self, i: int, j: int):
        return self.rows[i][j]

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=np.float64)

    @classmethod
    def from_distance_fn(cls, points, fn, validate=False):
        rows = [[fn(p, q) for q in points] for p in points]
        return cls(rows, validate=validate)


def free_ball_distance_matrix(ball) -> np.ndarray:
    """Exact word-metric matrix of a free-group ball, d = |u|+|v|-2*lcp."""
    words = [g.signed for g in ball.elements]
    n = len(words)
    width = max((len(w) for w in words), default=0)
    if width == 0:
        return np.zeros((1, 1))
    pad = np.zeros((n, width), dtype=np.int8)
    lens = np.zeros(n, dtype=np.int64)
    for i, w in enumerate(words):
        lens[i] = len(w)
        pad[i, : len(w)] = w
    # positions beyond a word's end are 0 and never match a letter, but two
    # pads match each other; clamp the prefix length by both word lengths
    eq = pad[:, None, :] == pad[None, :, :]
    prefix_all = np.cumprod(eq, axis=2)
    lcp = prefix_all.sum(axis=2)
    lcp = np.minimum(lcp, np.minimum(lens[:, None], lens[None, :]))
    return (lens[:, None] + lens[None, :] - 2 * lcp).astype(np.float64)


def graph_metric_matrix(ball) -> np.ndarray:
    """All-pairs in-ball graph metric via BFS from every vertex."""
    adj = ball.adjacency()
    n = len(adj)
    D = np.full((n, n), np.inf)
    for s in range(n):
        dist = D[s]
        dist[s] = 0.0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if not np.isfinite(dist[v]):
                        dist[v] = d
                        nxt.append(v)
            frontier = nxt
    return D


# ---------------------------------------------------------------------------
# Gromov products and the four-point estimator


def gromov_product(dist, x, y, z) -> float:
    """(x, y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2 for a distance callable."""
    return (dist(x, z) + dist(y, z) - dist(x, y)) / 2.0


def orbit_distance(oracle, lengths: PseudoLength):
    """The pseudo-metric d(g, h) = l(g^-1 h) of a pseudo-length.

    Queries outside the materialized ball raise DomainMiss, so Gromov
    products built on top fail loudly instead of guessing.
    """

    def dist(g, h):
        return lengths(oracle.multiply(oracle.invert(g), h))

    return dist


@dataclass
class DeltaEstimate:
    """Worst four-point defect min{(x,y)_t, (y,z)_t} - (x,z)_t over a scan."""

    delta: float
    raw_max: float
    witness: tuple[int, int, int, int]
    sampled: bool
    quadruples_checked: int
    seed: int | None = None
    labels: list | None = None

    def witness_labels(self):
        if self.labels is None:
            return list(self.witness)
        return [self.labels[i] for i in self.witness]

    def to_json(self):
        return {
            "delta": self.delta,
            "raw_max": self.raw_max,
            "witness": list(self.witness),
            "witness_labels": self.witness_labels(),
            "sampled": self.sampled,
            "quadruples_checked": self.quadruples_checked,
            "seed": self.seed,
        }


def quadruple_defect(D: np.ndarray, quad) -> float:
    """Re-evaluate one ordered quadruple (x, y, z, t); the witness checker."""
    i, j, k, l = quad
    gp = lambda a, b: (D[a, l] + D[b, l] - D[a, b]) / 2.0
    return min(gp(i, j), gp(j, k)) - gp(i, k)


def four_point_delta(
    metric,
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
    quadruple_cap: int = 200_000_000,
    labels=None,
) -> DeltaEstimate:
    """Scan ordered quadruples for the worst four-point defect, clamped at 0.

    metric: FiniteMetricSpace or a square numpy array.
    mode "exhaustive" checks all n^4 ordered quadruples (error above the cap);
    mode "sampled" draws `count` quadruples from a seeded PRNG.
    """
    D = metric.as_array() if isinstance(metric, FiniteMetricSpace) else np.asarray(metric, dtype=np.float64)
    n = D.shape[0]
    if n < 1:
        raise ValueError("need at least one point")
    if mode == "exhaustive":
        total = n**4
        if total > quadruple_cap:
            raise BudgetExceeded(
                f"{total} ordered quadruples exceed cap {quadruple_cap}",
                extent={"points": n},
            )
        best = -math.inf
        best_w = (0, 0, 0, 0)
        for l in range(n):
            col = D[:, l]
            G = (col[:, None] + col[None, :] - D) / 2.0
            T = np.minimum(G[:, :, None], G[None, :, :]) - G[:, None, :]
            m = float(T.max())
            if m > best:
                i, j, k = np.unravel_index(int(np.argmax(T)), T.shape)
                best = m
                best_w = (int(i), int(j), int(k), l)
        return DeltaEstimate(
            delta=max(0.0, best),
            raw_max=best,
            witness=best_w,
            sampled=False,
            quadruples_checked=total,
            labels=list(labels) if labels is not None else None,
        )
    if mode == "sampled":
        if count is None or count < 1:
            raise ValueError("sampled mode needs count >= 1")
        rng = np.random.default_rng(0 if seed is None else seed)
        best = -math.inf
        best_w = (0, 0, 0, 0)
        remaining = count
        chunk = 250_000
        while remaining > 0:
            m_now = min(chunk, remaining)
            remaining -= m_now
            idx = rng.integers(0, n, size=(4, m_now))
            i, j, k, l = idx
            gp_ij = (D[i, l] + D[j, l] - D[i, j]) / 2.0
            gp_jk = (D[j, l] + D[k, l] - D[j, k]) / 2.0
            gp_ik = (D[i, l] + D[k, l] - D[i, k]) / 2.0
            defect = np.minimum(gp_ij, gp_jk) - gp_ik
            m = float(defect.max())
            if m > best:
                pos = int(np.argmax(defect))
                best = m
                best_w = (int(i[pos]), int(j[pos]), int(k[pos]), int(l[pos]))
        return DeltaEstimate(
            delta=max(0.0, best),
            raw_max=best,
            witness=best_w,
            sampled=True,
            quadruples_checked=count,
            seed=0 if seed is None else seed,
            labels=list(labels) if labels is not None else None,
        )
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# cone-off


@dataclass
class ConeOffResult:
    space: FiniteMetricSpace
    new_edges: list[tuple[int, int]]
    forbidden: list[int]  # indices inside the closed A-neighborhood of the orbit
    warnings: list[str]
    orbit_distance: list[float]


def cone_off(ball, orbit, A: float) -> ConeOffResult:
    """Add an edge between ball vertices joined by a geodesic that avoids the
    closed A-neighborhood of the orbit, then recompute shortest paths.

    The existential "some geodesic avoids" test is decided exactly by
    reachability inside the geodesic DAG restricted to the allowed vertices.
    """
    if A < 0:
        raise ValueError("A must be >= 0")
    orbit_idx = []
    for g in orbit:
        if g not in ball.index:
            raise ValueError(f"orbit element {ball.oracle.format_element(g)} outside the ball")
        orbit_idx.append(ball.index[g])
    n = len(ball.elements)
    adj = ball.adjacency()
    D0 = graph_metric_matrix(ball)

    # multi-source BFS distance to the orbit, inside the ball graph
    orbit_dist = np.full(n, np.inf)
    frontier = sorted(set(orbit_idx))
    for s in frontier:
        orbit_dist[s] = 0.0
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if not np.isfinite(orbit_dist[v]):
                    orbit_dist[v] = d
                    nxt.append(v)
        frontier = nxt
    allowed = orbit_dist > A + ZERO_TOL

    warnings = []
    boundary_pairs = int(np.sum(np.triu(D0 >= ball.radius, 1)))
    if boundary_pairs:
        warnings.append(
            f"{boundary_pairs} vertex pairs have in-ball distance >= radius "
            f"{ball.radius}; their geodesics may exit the ball"
        )

    new_edges = []
    for x in range(n):
        if not allowed[x]:
            continue
        dist_x = D0[x]
        for y in range(x + 1, n):
            if not allowed[y] or not np.isfinite(D0[x, y]) or D0[x, y] < 2:
                continue
            if _geodesic_avoids(adj, dist_x, D0[:, y], D0[x, y], x, y, allowed):
                new_edges.append((x, y))

    rows = _shortest_paths_with_edges(adj, new_edges, n)
    space = FiniteMetricSpace(rows, validate=False)
    return ConeOffResult(
        space=space,
        new_edges=new_edges,
        forbidden=[i for i in range(n) if not allowed[i]],
        warnings=warnings,
        orbit_distance=[float(v) for v in orbit_dist],
    )


def _geodesic_avoids(adj, dist_x, dist_to_y, total, x, y, allowed) -> bool:
    # walk the geodesic DAG from x, through allowed vertices only
    stack = [x]
    seen = {x}
    while stack:
        u = stack.pop()
        if u == y:
            return True
        for v in adj[u]:
            if v in seen or not allowed[v]:
                continue
            if dist_x[v] == dist_x[u] + 1 and dist_x[v] + dist_to_y[v] == total:
                seen.add(v)
                stack.append(v)
    return False


def _shortest_paths_with_edges(adj, new_edges, n):
    full = [set(nbrs) for nbrs in adj]
    for x, y in new_edges:
        full[x].add(y)
        full[y].add(x)
    rows = [[math.inf] * n for _ in range(n)]
    for s in range(n):
        row = rows[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in full[u]:
                    if row[v] == math.inf:
                        row[v] = d
                        nxt.append(v)
            frontier = nxt
    return rows


# ---------------------------------------------------------------------------
# serialization


def pseudolength_csv(lengths: PseudoLength, oracle) -> str:
    """CSV with one (element-normal-form, value) row per domain element."""
    rows = sorted(
        (oracle.format_element(g), lengths(g)) for g in lengths.domain
    )
    lines = ["element,value"]
    lines += [f"{name},{repr(value)}" for name, value in rows]
    return "\n".join(lines) + "\n"


def pseudolength_json(lengths: PseudoLength, oracle) -> dict:
    return {
        "format": 1,
        "values": {oracle.format_element(g): lengths(g) for g in lengths.domain},
    }


def metric_csv(X: FiniteMetricSpace) -> str:
    """Bare distance-matrix CSV, one row per point."""
    return "\n".join(",".join(str(v) for v in row) for row in X.rows) + "\n"


def metric_from_csv(text: str, validate: bool = True) -> FiniteMetricSpace:
    rows = []
    for line in text.strip().splitlines():
        rows.append([_parse_number(tok) for tok in line.split(",")])
    return FiniteMetricSpace(rows, validate=validate)


def _parse_number(tok: str):
    tok = tok.strip()
    if "/" in tok:
        return Fraction(tok)
    if "." in tok or "e" in tok or "E" in tok:
        return float(tok)
    return int(tok)


# ---------------------------------------------------------------------------
# random metric generators for experiments and tests


def random_rational_metric(n: int, rng: random.Random, coord_range: int = 20, denom: int = 4):
    """L1 distances of distinct random points in (Z/denom)^2: rational, exact."""
    while True:
        pts = [
            (Fraction(rng.randint(-coord_range, coord_range), denom),
             Fraction(rng.randint(-coord_range, coord_range), denom))
            for _ in range(n)
        ]
        if len(set(pts)) == n:
            break
    rows = [
        [abs(p[0] - q[0]) + abs(p[1] - q[1]) for q in pts]
        for p in pts
    ]
    return FiniteMetricSpace(rows, validate=False)


def random_tree_metric(n: int, rng: random.Random, max_weight: int = 9):
    """Path metric of a random tree on n nodes with integer edge weights."""
    parent = [0] * n
    weight = [0] * n
    for v in range(1, n):
        parent[v] = rng.randrange(v)
        weight[v] = rng.randint(1, max_weight)
    children = [[] for _ in range(n)]
    for v in range(1, n):
        children[parent[v]].append(v)
    rows = [[0] * n for _ in range(n)]
    for s in range(n):
        # tree BFS from s using parent/child links
        dist = {s: 0}
        stack = [s]
        while stack:
            u = stack.pop()
            nbrs = [(parent[u], weight[u])] if u != 0 else []
            nbrs += [(c, weight[c]) for c in children[u]]
            for v, w in nbrs:
                if v not in dist:
                    dist[v] = dist[u] + w
                    stack.append(v)
        for t in range(n):
            rows[s][t] = dist[t]
    return FiniteMetricSpace(rows, validate=False)
