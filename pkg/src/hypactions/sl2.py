"""Exact SL2 over Q(sqrt(d)): Mobius action, trace classification, lengths.

All classification decisions (elliptic / parabolic / loxodromic) are made by
exact sign tests in the quadratic field; floating point enters only when a
transcendental output (arccosh, a hyperbolic distance) is requested, and then
through dyadic intervals that are tightened until the requested tolerance is
met.  The basepoint of the upper half-plane is fixed at i.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotLoxodromic
from .groups import GroupOracle


def _is_square_free(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadFieldElement:
    """a + b*sqrt(d) with rational a, b and a fixed square-free d >= 2."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not _is_square_free(self.d):
            raise ValueError(f"d must be square-free and >= 2, got {self.d}")

    def _check(self, other):
        if self.d != other.d:
            raise ValueError("elements of different quadratic fields")

    def __add__(self, other):
        other = self._coerce(other)
        return QuadFieldElement(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        return QuadFieldElement(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self):
        return QuadFieldElement(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = self._coerce(other)
        return QuadFieldElement(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        norm = other.a * other.a - other.b * other.b * other.d
        if norm == 0:
            raise ZeroDivisionError("division by zero field element")
        conj = QuadFieldElement(other.a, -other.b, other.d)
        num = self * conj
        return QuadFieldElement(num.a / norm, num.b / norm, self.d)

    def _coerce(self, other):
        if isinstance(other, QuadFieldElement):
            self._check(other)
            return other
        return QuadFieldElement(Fraction(other), Fraction(0), self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign_under(self, embedding: "RealEmbedding") -> int:
        """Exact sign of the real number a + b*embedding(sqrt(d))."""
        a, b = self.a, self.b * embedding.sign
        if b == 0:
            return _sign(a)
        if a == 0:
            return _sign(b)
        sa, sb = _sign(a), _sign(b)
        if sa == sb:
            return sa
        # opposite signs: |a| vs |b|*sqrt(d), squared comparison is exact
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def interval_under(self, embedding: "RealEmbedding", bits: int) -> tuple[Fraction, Fraction]:
        """Dyadic bracket of width b * 2^-bits around the embedded value."""
        scale = 1 << bits
        root_lo = Fraction(math.isqrt(self.d * scale * scale), scale)
        root_hi = root_lo + Fraction(1, scale)
        c = self.b * embedding.sign
        if c >= 0:
            return self.a + c * root_lo, self.a + c * root_hi
        return self.a + c * root_hi, self.a + c * root_lo

    def float_under(self, embedding: "RealEmbedding", bits: int = 80) -> float:
        lo, hi = self.interval_under(embedding, bits)
        return float((lo + hi) / 2)

    def refine_until_sign(self, embedding: "RealEmbedding") -> tuple[Fraction, Fraction, int]:
        """Double the precision until the dyadic bracket excludes 0.

        Terminates for every nonzero element (the bracket width shrinks to 0
        around a nonzero value) and always agrees with the exact sign test;
        an interval containing 0 is never used to report a sign.
        """
        if self.is_zero():
            raise ValueError("zero has no sign-certifying interval")
        bits = max(self.d.bit_length(), embedding.precision, 8)
        while True:
            lo, hi = self.interval_under(embedding, bits)
            if lo > 0 or hi < 0:
                return lo, hi, bits
            bits *= 2

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt{self.d}" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt{self.d}"
        sign = "-" if self.b < 0 else "+"
        if self.a == 0:
            return root if self.b > 0 else f"-{root}"
        return f"{self.a}{sign}{root}"

    def __repr__(self):
        return f"QuadFieldElement({self})"


def qfe(a, b=0, d=2) -> QuadFieldElement:
    return QuadFieldElement(Fraction(a), Fraction(b), d)


_QFE_TERM = re.compile(r"([+-]?)((?:\d+(?:/\d+)?\*?)?)(sqrt\(?(\d+)\)?)?")


def parse_qfe(text: str, d: int) -> QuadFieldElement:
    """Parse 'sqrt2-1', '-1/2+3/4*sqrt(2)', '5/3' into an exact field element."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty field element")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    while pos < len(text):
        match = _QFE_TERM.match(text, pos)
        if match is None or match.end() == pos:
            raise ValueError(f"cannot parse field element {text!r} at position {pos}")
        sign = -1 if match.group(1) == "-" else 1
        coef_text = match.group(2).rstrip("*")
        coef = Fraction(coef_text) if coef_text else Fraction(1)
        if match.group(3):
            root_d = int(match.group(4))
            if root_d != d:
                raise ValueError(f"sqrt{root_d} does not live in Q(sqrt{d})")
            b += sign * coef
        else:
            if not coef_text:
                raise ValueError(f"cannot parse field element {text!r} at position {pos}")
            a += sign * coef
        pos = match.end()
    return QuadFieldElement(a, b, d)


@dataclass(frozen=True)
class RealEmbedding:
    """The field embedding determined by sqrt(d) |-> sign * sqrt(d)."""

    sign: int = 1
    precision: int = 64

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("embedding sign must be +1 or -1")

    def label(self) -> str:
        return "+" if self.sign == 1 else "-"


@dataclass(frozen=True)
class Mat2:
    """A determinant-one 2x2 matrix over Q(sqrt(d))."""

    a: QuadFieldElement
    b: QuadFieldElement
    c: QuadFieldElement
    d: QuadFieldElement

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not (det.a == 1 and det.b == 0):
            raise ValueError(f"determinant must be exactly 1, got {det}")

    @property
    def field_d(self) -> int:
        return self.a.d

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        result = mat2_identity(self.field_d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self) -> QuadFieldElement:
        return self.a + self.d

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def sort_key(self):
        return tuple((e.a, e.b) for e in self.entries())

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def mat2_identity(d: int = 2) -> Mat2:
    one, zero = qfe(1, 0, d), qfe(0, 0, d)
    return Mat2(one, zero, zero, one)


def mat2(rows, d: int = 2) -> Mat2:
    """Build from a 2x2 array of ints / Fractions / QuadFieldElements."""
    (a, b), (c, dd) = rows
    conv = lambda x: x if isinstance(x, QuadFieldElement) else qfe(x, 0, d)
    return Mat2(conv(a), conv(b), conv(c), conv(dd))


def mat2_from_json(obj, d: int) -> Mat2:
    """Entries as {"a": "p/q", "b": "r/s"} objects or plain strings."""

    def entry(e):
        if isinstance(e, dict):
            a = Fraction(str(e.get("a", 0)))
            b = Fraction(str(e.get("b", 0)))
            return QuadFieldElement(a, b, d)
        return parse_qfe(str(e), d)

    (a, b), (c, dd) = obj
    return Mat2(entry(a), entry(b), entry(c), entry(dd))


def lemma_emb_matrix(x: QuadFieldElement) -> Mat2:
    """[[x, x^2 - 1], [1, x]]; the determinant is 1 for every x."""
    one = qfe(1, 0, x.d)
    return Mat2(x, x * x - one, one, x)


def classify(A: Mat2, embedding: RealEmbedding) -> str:
    """'elliptic' | 'parabolic' | 'loxodromic' by the exact sign of tr^2 - 4."""
    t = A.trace()
    disc = t * t - qfe(4, 0, A.field_d)
    s = disc.sign_under(embedding)
    if s < 0:
        return "elliptic"
    if s == 0:
        return "parabolic"
    return "loxodromic"


def _acosh_interval(lo: Fraction, hi: Fraction) -> tuple[float, float]:
    # pad by a few ulps to keep the bracket honest after float rounding
    flo = math.acosh(max(1.0, float(lo)))
    fhi = math.acosh(max(1.0, float(hi)))
    pad = 8 * math.ulp(max(fhi, 1.0))
    return max(0.0, flo - pad), fhi + pad


def _refine_acosh(value: QuadFieldElement, embedding: RealEmbedding, tol: float) -> float:
    if value.b == 0 and value.a == 1:
        return 0.0
    bits = max(embedding.precision, 64)
    while True:
        lo, hi = value.interval_under(embedding, bits)
        if lo >= 1:
            alo, ahi = _acosh_interval(lo, hi)
            if ahi - alo <= tol or bits >= 4096:
                return (alo + ahi) / 2
        elif bits >= 4096:
            # exact sign test already guaranteed value > 1; bracket is stuck at
            # the float boundary, return the closest representable result
            return math.acosh(max(1.0, float((lo + hi) / 2)))
        bits *= 2


def translation_length_h2(A: Mat2, embedding: RealEmbedding, tol: float = 1e-12) -> float:
    """2*arccosh(|tr|/2) for loxodromic A; the stable translation length on H^2."""
    if classify(A, embedding) != "loxodromic":
        raise NotLoxodromic(f"matrix {A} is not loxodromic under {embedding.label()}")
    t = A.trace()
    if t.sign_under(embedding) < 0:
        t = -t
    half = QuadFieldElement(t.a / 2, t.b / 2, t.d)
    return 2.0 * _refine_acosh(half, embedding, tol / 2)


def orbit_distance_h2(A: Mat2, embedding: RealEmbedding, tol: float = 1e-12) -> float:
    """d_{H^2}(i, A i), computed from an exact field expression for cosh d."""
    a, b, c, d = A.entries()
    # A*i = u + v*i with u = (ac + bd)/(c^2 + d^2), v = 1/(c^2 + d^2)
    denom = c * c + d * d
    u = (a * c + b * d) / denom
    v = QuadFieldElement(Fraction(1), Fraction(0), A.field_d) / denom
    one = QuadFieldElement(Fraction(1), Fraction(0), A.field_d)
    two = QuadFieldElement(Fraction(2), Fraction(0), A.field_d)
    cosh_d = one + (u * u + (v - one) * (v - one)) / (two * v)
    return _refine_acosh(cosh_d, embedding, tol)


class SL2Oracle(GroupOracle):
    """Word balls in a finitely generated subgroup of SL2(Q(sqrt(d))).

    The default generating set is the standard SL2(Z) pair; experiments add
    matrices with irrational entries on top of it.
    """

    def __init__(self, d: int = 2, gens: list[Mat2] | None = None, names: list[str] | None = None):
        self.d = d
        if gens is None:
            gens = [mat2([[1, 1], [0, 1]], d), mat2([[0, -1], [1, 0]], d)]
            names = ["T", "S"]
        self.gens = gens
        self.names = names or [f"g{i}" for i in range(len(gens))]

    def identity(self):
        return mat2_identity(self.d)

    def multiply(self, x, y):
        return x * y

    def invert(self, x):
        return x.inverse()

    def generators(self):
        return list(self.gens)

    def generator_names(self):
        return list(self.names)

    def sort_key(self, x):
        return x.sort_key()

    def format_element(self, x):
        for g, name in zip(self.gens, self.names):
            if x == g:
                return name
            if x == g.inverse():
                return f"{name}^-1"
        return str(x)

    def parse_element(self, text):
        import json as _json

        return mat2_from_json(_json.loads(text), self.d)

    def __repr__(self):
        return f"SL2Oracle(d={self.d}, gens={len(self.gens)})"


def embedding_spectrum_compare(
    gens: list[Mat2],
    e1: RealEmbedding,
    e2: RealEmbedding,
    radius: int,
    d: int | None = None,
    names: list[str] | None = None,
    tol: float = 1e-12,
):
    """Classify every element of the word ball under both embeddings.

    Returns (rows, witnesses): one row per ball element with its word, exact
    trace, classes and translation lengths under e1 / e2; witnesses lists the
    rows whose class differs, any one of which certifies that the two induced
    translation-length profiles are not Lipschitz equivalent.
    """
    if d is None:
        d = gens[0].field_d
    oracle = SL2Oracle(d=d, gens=gens, names=names)
    ball = oracle.enumerate_ball(radius)
    rows = []
    witnesses = []
    for i, A in enumerate(ball.elements):
        c1, c2 = classify(A, e1), classify(A, e2)
        t1 = translation_length_h2(A, e1, tol) if c1 == "loxodromic" else 0.0
        t2 = translation_length_h2(A, e2, tol) if c2 == "loxodromic" else 0.0
        row = {
            "word": ball.words[i],
            "trace": str(A.trace()),
            "class_e1": c1,
            "class_e2": c2,
            "tau_e1": t1,
            "tau_e2": t2,
        }
        rows.append(row)
        if c1 != c2:
            witnesses.append(row)
    return rows, witnesses
