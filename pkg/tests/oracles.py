"""Independent brute-force oracles used by the tests.

Everything here is deliberately naive and separate from the package
implementations: repeated-scan free reduction, exhaustive product
enumeration, materialized-graph Dijkstra, and a plain-loop four-point scan.
"""

from itertools import product


def reduce_naive(letters):
    """Remove adjacent inverse pairs by repeated full scans until stable."""
    word = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] == -word[i + 1]:
                del word[i : i + 2]
                changed = True
                break
    return tuple(word)


def cyclic_reduce_naive(letters):
    word = reduce_naive(letters)
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def power_naive(letters, n):
    if n < 0:
        letters = [-x for x in reversed(letters)]
        n = -n
    return reduce_naive(list(letters) * n)


def free_ball_naive(rank, radius):
    """All reduced words of length <= radius via exhaustive letter strings."""
    alphabet = [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]
    seen = {()}
    for n in range(1, radius + 1):
        for combo in product(alphabet, repeat=n):
            w = reduce_naive(combo)
            if len(w) == n:
                seen.add(w)
    return seen


def min_product_length(target, gens, radius):
    """Smallest k <= radius with target a product of k generators (else None).

    gens and target are signed-letter tuples; this is the exhaustive cross
    check for BFS layer indices.
    """
    if target == ():
        return 0
    for k in range(1, radius + 1):
        for combo in product(gens, repeat=k):
            word = []
            for g in combo:
                word.extend(g)
            if reduce_naive(word) == target:
                return k
    return None


def dijkstra_compressed_naive(target, generators, radius):
    """BFS distance 1 -> target in the materialized compressed graph.

    Vertices are all reduced words of length <= radius; edges multiply by a
    generator on the right.  Returns None when the target is unreachable
    inside the truncation.
    """
    from collections import deque

    def mul(a, b):
        return reduce_naive(list(a) + list(b))

    dist = {(): 0}
    queue = deque([()])
    while queue:
        u = queue.popleft()
        for g in generators:
            v = mul(u, g)
            if len(v) > radius or v in dist:
                continue
            dist[v] = dist[u] + 1
            queue.append(v)
    return dist.get(tuple(target))


def four_point_delta_naive(rows):
    """Plain quadruple loops; returns the unclamped maximum defect."""
    n = len(rows)
    best = float("-inf")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for t in range(n):
                    xy = (rows[x][t] + rows[y][t] - rows[x][y]) / 2
                    yz = (rows[y][t] + rows[z][t] - rows[y][z]) / 2
                    xz = (rows[x][t] + rows[z][t] - rows[x][z]) / 2
                    best = max(best, min(xy, yz) - xz)
    return best


def acosh_decimal(x, places=40):
    """High-precision arccosh via Decimal: ln(x + sqrt(x^2 - 1))."""
    from decimal import Decimal, getcontext

    getcontext().prec = places + 10
    d = Decimal(x)
    return float((d + (d * d - 1).sqrt()).ln())
