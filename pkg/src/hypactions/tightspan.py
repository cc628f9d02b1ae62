"""Injective hulls of finite metric spaces.

Points of the hull are admissible functions f (f(x) + f(y) >= d(x, y)) that
are minimal; minimality is equivalent to f(x) = max_y (d(x, y) - f(y)) at
every x.  The hull carries the sup-metric.  Rational inputs can be handled
exactly; the iterative projector works in floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoConvergence
from .metrics import DeltaEstimate, FiniteMetricSpace, four_point_delta


@dataclass(frozen=True)
class ExtremalFunction:
    """A candidate hull point, stored by its value vector over the space."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def sup_distance(f: ExtremalFunction, g: ExtremalFunction):
    """The hull metric: sup_x |f(x) - g(x)|."""
    if len(f) != len(g):
        raise ValueError("functions over different spaces")
    return max(abs(a - b) for a, b in zip(f.values, g.values))


def kuratowski_embed(x: int, X: FiniteMetricSpace) -> ExtremalFunction:
    """The distance function t -> d(x, t); always an extremal point."""
    if not 0 <= x < X.size:
        raise ValueError(f"point index {x} outside the space")
    return ExtremalFunction(tuple(X.rows[x]))


def is_admissible(f, X: FiniteMetricSpace, tol=0) -> bool:
    vals = f.values if isinstance(f, ExtremalFunction) else tuple(f)
    n = X.size
    for i in range(n):
        if vals[i] < -tol:
            return False
        for j in range(i, n):
            if vals[i] + vals[j] < X.rows[i][j] - tol:
                return False
    return True


def _conjugate(vals, X: FiniteMetricSpace):
    """q(f)(x) = max_y (d(x, y) - f(y)); fixed points are the extremal ones."""
    n = X.size
    return tuple(max(X.rows[x][y] - vals[y] for y in range(n)) for x in range(n))


def is_extremal(f, X: FiniteMetricSpace, tol=1e-9):
    """(verdict, worst slack) for the fixed-point characterization."""
    vals = f.values if isinstance(f, ExtremalFunction) else tuple(f)
    q = _conjugate(vals, X)
    worst = max(abs(a - b) for a, b in zip(vals, q))
    return worst <= tol, worst


def project_to_hull(f, X: FiniteMetricSpace, tol: float = 1e-9, max_iter: int = 10_000):
    """Drive an admissible function to the hull by averaging with its conjugate.

    g <- (g + q(g))/2 decreases pointwise on admissible inputs and preserves
    admissibility, so the slack is monotone; stops when it drops below tol.
    Returns (ExtremalFunction, iterations); raises NoConvergence otherwise.
    """
    vals = tuple(float(v) for v in (f.values if isinstance(f, ExtremalFunction) else f))
    if not is_admissible(vals, X, tol=1e-9):
        raise ValueError("input must be admissible: f(x) + f(y) >= d(x, y)")
    for it in range(max_iter + 1):
        q = _conjugate(vals, X)
        slack = max(abs(a - b) for a, b in zip(vals, q))
        if slack <= tol:
            return ExtremalFunction(vals), it
        vals = tuple((a + b) / 2.0 for a, b in zip(vals, q))
    _, final = is_extremal(ExtremalFunction(vals), X, tol)
    raise NoConvergence(
        f"projection did not reach slack {tol} in {max_iter} iterations",
        final_slack=final,
    )


def minimal_below_exact(f, X: FiniteMetricSpace) -> ExtremalFunction:
    """Exact extremal function below an admissible f (rational arithmetic).

    One sweep of coordinate minimization lands on the hull: lowering a
    coordinate to its binding constraint keeps admissibility, and later sweeps
    can only confirm the bound.  Intended for small rational spaces where the
    float projector's tolerance is unwanted.
    """
    vals = [Fraction(v) if not isinstance(v, Fraction) else v
            for v in (f.values if isinstance(f, ExtremalFunction) else f)]
    if not is_admissible(vals, X):
        raise ValueError("input must be admissible: f(x) + f(y) >= d(x, y)")
    rows = X.rows
    n = X.size
    for x in range(n):
        floor = max((rows[x][y] - vals[y] for y in range(n) if y != x), default=0)
        vals[x] = max(floor, 0)
    result = ExtremalFunction(tuple(vals))
    ok, slack = is_extremal(result, X, tol=0)
    if not ok:
        raise AssertionError(f"exact sweep missed extremality by {slack}")
    return result


def hull_sample_delta(X: FiniteMetricSpace, sample, tol: float = 1e-9, **delta_kwargs) -> DeltaEstimate:
    """Four-point scan of a hull sample under the sup-metric."""
    for f in sample:
        ok, slack = is_extremal(f, X, tol)
        if not ok:
            raise ValueError(f"sample member misses extremality by {slack}")
    rows = [[float(sup_distance(f, g)) for g in sample] for f in sample]
    return four_point_delta(FiniteMetricSpace(rows, validate=False), **delta_kwargs)


def hull_sample_csv(sample) -> str:
    """One CSV row of values per hull point."""
    return "\n".join(",".join(str(v) for v in f.values) for f in sample) + "\n"


def hull_sample_from_csv(text: str) -> list[ExtremalFunction]:
    from .metrics import _parse_number

    out = []
    for line in text.strip().splitlines():
        out.append(ExtremalFunction(tuple(_parse_number(tok) for tok in line.split(","))))
    return out


def extend_isometry(phi, f: ExtremalFunction, X: FiniteMetricSpace) -> ExtremalFunction:
    """Push a hull point through a distance-preserving permutation: f o phi^-1.

    phi is a permutation of range(X.size); the extension preserves both
    extremality and sup-distances.
    """
    n = X.size
    if sorted(phi) != list(range(n)):
        raise ValueError("phi must be a permutation of the points")
    for i in range(n):
        for j in range(n):
            if X.rows[phi[i]][phi[j]] != X.rows[i][j]:
                raise ValueError(f"phi does not preserve the distance at ({i},{j})")
    inv = [0] * n
    for i, p in enumerate(phi):
        inv[p] = i
    return ExtremalFunction(tuple(f.values[inv[t]] for t in range(n)))
