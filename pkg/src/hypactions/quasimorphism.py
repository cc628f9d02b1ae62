"""Quasi-morphisms on group oracles: substring-counting maps on free groups,
the stable-letter exponent sum on BS(m, n), empirical defects, homogenization,
subordination fitting, and anisotropy certificates.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .baumslag import BSElement
from .errors import CertificateError
from .metrics import ZERO_TOL, PseudoLength
from .words import FreeWord, count_occurrences, format_word


@dataclass
class QuasiMorphism:
    """A map q: G -> R with (empirically or analytically) bounded defect.

    `defect_bound` is an analytic bound when available (0 for homomorphisms);
    sampled defects are lower-bound evidence only and stay out of this field.
    """

    kind: str
    evaluate: callable
    defect_bound: float | None = None
    metadata: dict = field(default_factory=dict)

    def __call__(self, g) -> float:
        return float(self.evaluate(g))


def brooks_qm(w: FreeWord) -> QuasiMorphism:
    """Counting quasi-morphism of a reduced word w on the free group:
    occurrences of w in the reduced spelling of g, minus occurrences of w^-1,
    counted at every starting position (overlaps allowed).
    """
    if not w:
        raise ValueError("counting word must be nonempty")
    if _is_proper_power(w):
        warnings.warn(f"counting word {format_word(w)} is a proper power", stacklevel=2)
    w_inv = w.inverse()

    def evaluate(g: FreeWord) -> float:
        return float(count_occurrences(g, w) - count_occurrences(g, w_inv))

    return QuasiMorphism(
        kind=f"brooks({format_word(w)})",
        evaluate=evaluate,
        metadata={"counting": "all starting positions, overlaps allowed"},
    )


def _is_proper_power(w: FreeWord) -> bool:
    s = w.signed
    n = len(s)
    for period in range(1, n):
        if n % period == 0 and s == s[:period] * (n // period):
            return True
    return False


def exponent_sum_qm() -> QuasiMorphism:
    """The homomorphism BS(m, n) -> Z counting the stable-letter exponent."""

    def evaluate(g: BSElement) -> float:
        return float(g.t_exponent_sum())

    return QuasiMorphism(kind="exponent-sum(t)", evaluate=evaluate, defect_bound=0.0)


def linear_combination(terms) -> QuasiMorphism:
    """Linear combination sum c_i * q_i; defects add up when all are known."""
    terms = list(terms)
    bound = 0.0
    for c, q in terms:
        if q.defect_bound is None:
            bound = None
            break
        bound += abs(c) * q.defect_bound

    def evaluate(g):
        return sum(c * q(g) for c, q in terms)

    return QuasiMorphism(kind="linear-combination", evaluate=evaluate, defect_bound=bound)


@dataclass
class DefectEstimate:
    value: float
    witness: tuple
    pairs_checked: int

    def to_json(self, fmt=str):
        g, h = self.witness if self.witness else (None, None)
        return {
            "value": self.value,
            "witness_pair": [fmt(g), fmt(h)] if g is not None else None,
            "pairs_checked": self.pairs_checked,
        }


def defect_empirical(q: QuasiMorphism, oracle, elements, pairs=None) -> DefectEstimate:
    """max |q(gh) - q(g) - q(h)| over a pair set: a certified lower bound on
    the true defect.  Default pair set: all ordered pairs of `elements`."""
    if pairs is None:
        elements = list(elements)
        pairs = ((g, h) for g in elements for h in elements)
    best = 0.0
    witness = None
    checked = 0
    values = {}

    def q_of(g):
        if g not in values:
            values[g] = q(g)
        return values[g]

    for g, h in pairs:
        checked += 1
        d = abs(q_of(oracle.multiply(g, h)) - q_of(g) - q_of(h))
        if d > best:
            best = d
            witness = (g, h)
    return DefectEstimate(value=best, witness=witness, pairs_checked=checked)


@dataclass
class HomogenizedValue:
    value: float
    error_bound: float
    power: int
    trace: list[float]


def homogenize(q: QuasiMorphism, oracle, g, n: int, defect: float | None = None) -> HomogenizedValue:
    """q(g^n)/n with the telescoped error bound D/n.

    `defect` defaults to the analytic bound attached to q; supply an empirical
    estimate when no analytic bound exists (the error bar is then evidence).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if defect is None:
        defect = q.defect_bound
    if defect is None:
        raise ValueError("homogenization needs a defect bound (analytic or empirical)")
    trace = []
    power = oracle.identity()
    for i in range(1, n + 1):
        power = oracle.multiply(power, g)
        trace.append(q(power) / i)
    return HomogenizedValue(value=trace[-1], error_bound=defect / n, power=n, trace=trace)


@dataclass
class SubordinationFit:
    M: float
    mode: str  # "slope" when q vanishes on the zero-length locus, else "affine"
    slope_fit: float | None
    affine_fit: float
    witness: object

    def certifies(self, q, lengths: PseudoLength, tol: float = ZERO_TOL) -> bool:
        return all(abs(q(g)) <= self.M * lengths(g) + self.M + tol for g in lengths.domain)


def subordination_fit(q: QuasiMorphism, lengths: PseudoLength) -> SubordinationFit:
    """Fit the smallest M with |q(g)| <= M * l(g) + M on the ball.

    When q vanishes wherever l does, the natural constant is the slope-only
    fit max |q(g)| / l(g) (so the stable-letter sum against the t-syllable
    length fits M = 1, one unit per syllable); otherwise the affine fit
    max |q(g)| / (l(g) + 1) is returned.
    """
    if len(lengths) == 0:
        raise ValueError("empty-domain")
    affine = 0.0
    slope = 0.0
    witness = None
    vanishes_on_kernel = True
    for g in lengths.domain:
        value = abs(q(g))
        length = lengths(g)
        c = value / (length + 1.0)
        if c > affine:
            affine = c
            witness = g
        if length <= ZERO_TOL:
            if value > ZERO_TOL:
                vanishes_on_kernel = False
        else:
            slope = max(slope, value / length)
    if vanishes_on_kernel:
        return SubordinationFit(M=slope, mode="slope", slope_fit=slope, affine_fit=affine, witness=witness)
    return SubordinationFit(M=affine, mode="affine", slope_fit=None, affine_fit=affine, witness=witness)


@dataclass
class AnisotropyCertificate:
    """A re-checkable certificate that a general-type action is anisotropic.

    Contains every evaluated inequality: per-element subordination rows, the
    defect witness, and the homogenization trace.  A nonzero homogenized value
    of a subordinate quasi-morphism at g makes g loxodromic and inequivalent
    to its inverse, so the action is not weakly isotropic.
    """

    witness: object
    homogenized_value: float
    homogenization_error: float
    power: int
    subordination_M: float
    subordination_mode: str
    ball_radius: int
    defect: DefectEstimate
    rows: list  # (formatted element, |q(g)|, l(g))
    trace: list
    conclusion: str

    def to_json(self, fmt=str):
        return {
            "witness": fmt(self.witness),
            "homogenized_value": self.homogenized_value,
            "homogenization_error": self.homogenization_error,
            "power": self.power,
            "subordination_M": self.subordination_M,
            "subordination_mode": self.subordination_mode,
            "ball_radius": self.ball_radius,
            "defect": self.defect.to_json(fmt),
            "rows": [list(r) for r in self.rows],
            "homogenization_trace": list(self.trace),
            "conclusion": self.conclusion,
        }


def anisotropy_certificate(
    oracle,
    q: QuasiMorphism,
    lengths: PseudoLength,
    g,
    ball,
    power: int = 8,
    m_cap: float | None = None,
) -> AnisotropyCertificate:
    """Emit a certificate iff the homogenized value at g is nonzero and q is
    subordinate to the supplied orbit pseudo-length on the ball.

    The caller asserts that the pseudo-length comes from a general-type
    action; the conclusion text presumes it.
    """
    defect = defect_empirical(q, oracle, ball.elements)
    bound = q.defect_bound if q.defect_bound is not None else defect.value
    hom = homogenize(q, oracle, g, power, defect=bound)
    if abs(hom.value) <= ZERO_TOL:
        raise CertificateError("zero-value", f"homogenized value at {oracle.format_element(g)} is 0")
    fit = subordination_fit(q, lengths)
    if m_cap is not None and fit.M > m_cap:
        raise CertificateError("not-subordinate", f"fitted M = {fit.M} exceeds cap {m_cap}")
    rows = sorted(
        (oracle.format_element(h), abs(q(h)), lengths(h)) for h in lengths.domain
    )
    conclusion = (
        "the quasi-morphism is subordinate to the orbit pseudo-length with "
        f"constant M = {fit.M:g} and has nonzero homogenized value "
        f"{hom.value:g} at the witness, so the witness acts loxodromically "
        "and is not equivalent to its inverse: the action is not weakly "
        "isotropic and the group is anisotropic"
    )
    return AnisotropyCertificate(
        witness=g,
        homogenized_value=hom.value,
        homogenization_error=hom.error_bound,
        power=power,
        subordination_M=fit.M,
        subordination_mode=fit.mode,
        ball_radius=ball.radius,
        defect=defect,
        rows=rows,
        trace=hom.trace,
        conclusion=conclusion,
    )


def commutator_scan(q: QuasiMorphism, oracle, elements, cap: int | None = None) -> float:
    """Diagnostic (heuristic) scan: max |q([g, h])| over pairs from a ball."""
    elements = list(elements)
    best = 0.0
    checked = 0
    for g in elements:
        gi = oracle.invert(g)
        for h in elements:
            if cap is not None and checked >= cap:
                return best
            checked += 1
            comm = oracle.multiply(
                oracle.multiply(g, h), oracle.multiply(gi, oracle.invert(h))
            )
            best = max(best, abs(q(comm)))
    return best
