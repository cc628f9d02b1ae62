"""Group oracles and Cayley-ball enumeration.

An oracle bundles exact element arithmetic (identity / multiply / invert /
equal) with a canonical hashable form, so balls can be deduplicated with a
hash map instead of quadratic equality scans.  Generating sets are always
symmetrized before use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .baumslag import BSElement, bs_identity, format_bs, parse_bs
from .errors import BudgetExceeded
from .words import FreeWord, format_word, generator_name, parse_word

DEFAULT_BALL_CAP = 2_000_000


class GroupOracle:
    """Base contract; subclasses provide exact arithmetic on their elements."""

    def identity(self):
        raise NotImplementedError

    def multiply(self, x, y):
        raise NotImplementedError

    def invert(self, x):
        raise NotImplementedError

    def equal(self, x, y) -> bool:
        return x == y

    def generators(self) -> list:
        raise NotImplementedError

    def generator_names(self) -> list[str]:
        raise NotImplementedError

    def sort_key(self, x):
        raise NotImplementedError

    def format_element(self, x) -> str:
        return str(x)

    def parse_element(self, text: str):
        raise NotImplementedError

    def symmetrize(self, gens) -> list:
        """Close under inversion, drop the identity, deduplicate, sort."""
        seen = {}
        for g in gens:
            for h in (g, self.invert(g)):
                if self.equal(h, self.identity()):
                    continue
                seen.setdefault(self.sort_key(h), h)
        return [seen[k] for k in sorted(seen)]

    def enumerate_ball(self, radius: int, gens=None, max_size: int = DEFAULT_BALL_CAP) -> "Ball":
        return enumerate_ball(self, radius, gens=gens, max_size=max_size)


@dataclass
class Ball:
    """All elements of word length <= radius, in BFS-then-lexicographic order.

    `length[x]` is the exact word length of x with respect to the symmetrized
    generating set; `word[i]` is a witness geodesic spelling of elements[i].
    """

    oracle: GroupOracle
    gens: list
    gen_labels: list[str]
    radius: int
    elements: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    length: dict = field(default_factory=dict)
    words: list = field(default_factory=list)
    layers: list = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.index

    def sphere(self, k: int) -> list:
        return list(self.layers[k]) if k < len(self.layers) else []

    def adjacency(self) -> list[list[int]]:
        """In-ball Cayley adjacency (indices); used by graph-metric code."""
        adj: list[list[int]] = [[] for _ in self.elements]
        for i, x in enumerate(self.elements):
            for g in self.gens:
                y = self.oracle.multiply(x, g)
                j = self.index.get(y)
                if j is not None and j != i:
                    adj[i].append(j)
        return [sorted(set(nbrs)) for nbrs in adj]


def enumerate_ball(oracle: GroupOracle, radius: int, gens=None, max_size: int = DEFAULT_BALL_CAP) -> Ball:
    if radius < 0:
        raise ValueError("radius must be >= 0")
    raw = oracle.generators() if gens is None else list(gens)
    sym = oracle.symmetrize(raw)
    labels = [_gen_label(oracle, g, raw) for g in sym]
    ball = Ball(oracle=oracle, gens=sym, gen_labels=labels, radius=radius)

    e = oracle.identity()
    ball.elements.append(e)
    ball.index[e] = 0
    ball.length[e] = 0
    ball.words.append("1")
    ball.layers.append([e])
    frontier = [e]
    for r in range(1, radius + 1):
        next_layer = {}
        for x in frontier:
            wx = ball.words[ball.index[x]]
            for g, lab in zip(ball.gens, labels):
                y = oracle.multiply(x, g)
                if y in ball.index or oracle.sort_key(y) in next_layer:
                    continue
                next_layer[oracle.sort_key(y)] = (y, lab if wx == "1" else wx + "*" + lab)
        layer = []
        for key in sorted(next_layer):
            y, wy = next_layer[key]
            if len(ball.elements) >= max_size:
                raise BudgetExceeded(
                    f"ball size cap {max_size} exceeded at radius {r}",
                    extent={"radius_reached": r - 1, "elements": len(ball.elements)},
                )
            ball.index[y] = len(ball.elements)
            ball.elements.append(y)
            ball.length[y] = r
            ball.words.append(wy)
            layer.append(y)
        ball.layers.append(layer)
        frontier = layer
        if not frontier:
            break
    return ball


def _gen_label(oracle, g, raw):
    return oracle.format_element(g)


class FreeGroupOracle(GroupOracle):
    """The free group F_rank on letters a, b, c, ..."""

    def __init__(self, rank: int = 2):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank

    def identity(self):
        return FreeWord.identity()

    def multiply(self, x, y):
        return x * y

    def invert(self, x):
        return x.inverse()

    def generators(self):
        return [FreeWord.generator(i) for i in range(self.rank)]

    def generator_names(self):
        return [generator_name(i) for i in range(self.rank)]

    def sort_key(self, x):
        return (len(x.signed), x.signed)

    def format_element(self, x):
        return format_word(x)

    def parse_element(self, text):
        return parse_word(text, rank=self.rank)

    def __repr__(self):
        return f"FreeGroupOracle(rank={self.rank})"


class BSOracle(GroupOracle):
    """BS(m, n) with generating set {a, t}, elements in Britton normal form."""

    def __init__(self, m: int, n: int):
        if m == 0 or n == 0:
            raise ValueError("BS(m, n) needs nonzero m, n")
        self.m = m
        self.n = n

    def identity(self):
        return bs_identity(self.m, self.n)

    def multiply(self, x, y):
        return x * y

    def invert(self, x):
        return x.inverse()

    def generators(self):
        a = BSElement(self.m, self.n, (), 1)
        t = BSElement(self.m, self.n, ((0, 1),), 0)
        return [a, t]

    def generator_names(self):
        return ["a", "t"]

    def sort_key(self, x):
        return x.sort_key()

    def format_element(self, x):
        return format_bs(x)

    def parse_element(self, text):
        return parse_bs(text, self.m, self.n)

    def __repr__(self):
        return f"BSOracle({self.m},{self.n})"


def group_from_spec(spec: dict) -> GroupOracle:
    """Build an oracle from a JSON group description.

    {"kind": "free", "rank": 2} | {"kind": "bs", "m": 2, "n": 3}
    | {"kind": "sl2", "field": {"d": 2}}
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("group spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "free":
        return FreeGroupOracle(rank=int(spec.get("rank", 2)))
    if kind == "bs":
        return BSOracle(int(spec["m"]), int(spec["n"]))
    if kind == "sl2":
        from .sl2 import SL2Oracle

        field_spec = spec.get("field", {})
        return SL2Oracle(d=int(field_spec.get("d", 2)))
    raise ValueError(f"unknown group kind {kind!r}")
