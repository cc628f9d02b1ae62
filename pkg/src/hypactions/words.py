"""Freely reduced words over a ranked alphabet.

Words are stored as tuples of nonzero "signed letters": the generator with
index i is encoded as i + 1 and its inverse as -(i + 1).  The empty tuple is
the identity.  All public constructors reduce; internal operations preserve
reducedness, so equality of group elements is equality of tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_ALPHA = "abcdefghijklmnopqrstuvwxyz"
_TOKEN = re.compile(r"([a-zA-Z])(?:\^(-?\d+))?")


@dataclass(frozen=True)
class Generator:
    """A single alphabet letter with an orientation."""

    index: int
    sign: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("generator index must be >= 0")
        if self.sign not in (1, -1):
            raise ValueError("generator sign must be +1 or -1")

    def inverse(self) -> "Generator":
        return Generator(self.index, -self.sign)

    @property
    def signed(self) -> int:
        return self.sign * (self.index + 1)


def _reduce(seq):
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _concat(a, b):
    # both inputs reduced: cancellation happens only at the seam
    i, j = len(a), 0
    nb = len(b)
    while i > 0 and j < nb and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return a[:i] + b[j:]


class FreeWord:
    """A freely reduced word; the universal element representation for F_k."""

    __slots__ = ("signed", "_hash")

    def __init__(self, letters=()):
        seq = []
        for x in letters:
            if isinstance(x, Generator):
                x = x.signed
            if not isinstance(x, int) or x == 0:
                raise ValueError(f"bad letter {x!r}")
            seq.append(x)
        object.__setattr__(self, "signed", _reduce(seq))
        object.__setattr__(self, "_hash", hash(self.signed))

    @classmethod
    def _raw(cls, signed):
        # caller guarantees `signed` is already reduced
        w = object.__new__(cls)
        object.__setattr__(w, "signed", signed)
        object.__setattr__(w, "_hash", hash(signed))
        return w

    @classmethod
    def identity(cls) -> "FreeWord":
        return _IDENTITY

    @classmethod
    def generator(cls, index: int, sign: int = 1) -> "FreeWord":
        return cls._raw((sign * (index + 1),))

    @property
    def letters(self) -> tuple[Generator, ...]:
        return tuple(Generator(abs(x) - 1, 1 if x > 0 else -1) for x in self.signed)

    def __len__(self):
        return len(self.signed)

    def __bool__(self):
        return bool(self.signed)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.signed == other.signed

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord._raw(_concat(self.signed, other.signed))

    def inverse(self) -> "FreeWord":
        return FreeWord._raw(tuple(-x for x in reversed(self.signed)))

    def __pow__(self, n: int) -> "FreeWord":
        if n < 0:
            return self.inverse() ** (-n)
        result = _IDENTITY.signed
        base = self.signed
        while n:
            if n & 1:
                result = _concat(result, base)
            base = _concat(base, base)
            n >>= 1
        return FreeWord._raw(result)

    def conjugate_by(self, c: "FreeWord") -> "FreeWord":
        return c * self * c.inverse()

    def is_cyclically_reduced(self) -> bool:
        s = self.signed
        return len(s) < 2 or s[0] != -s[-1]

    def cyclic_reduce(self) -> tuple["FreeWord", "FreeWord"]:
        """Split into (core, conjugator) with self == conjugator * core * conjugator^-1."""
        s = self.signed
        i, j = 0, len(s)
        while j - i >= 2 and s[i] == -s[j - 1]:
            i += 1
            j -= 1
        return FreeWord._raw(s[i:j]), FreeWord._raw(s[:i])

    def __repr__(self):
        return f"FreeWord({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


_IDENTITY = FreeWord()


def generator_name(index: int) -> str:
    if index < len(_ALPHA):
        return _ALPHA[index]
    return f"x{index}"


def format_word(w: FreeWord, names=None) -> str:
    """Render with run-length exponents, e.g. a*b*b*b*a^-1 -> 'ab^3a^-1'."""
    s = w.signed
    if not s:
        return "1"
    parts = []
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        idx = abs(s[i]) - 1
        name = names[idx] if names else generator_name(idx)
        exp = (j - i) * (1 if s[i] > 0 else -1)
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "".join(parts)


def parse_word(text: str, rank: int | None = None, names=None) -> FreeWord:
    """Parse 'ab^3a^-1' (uppercase letters are inverses: 'aB' == 'ab^-1')."""
    text = text.strip().replace(" ", "")
    if text in ("", "1"):
        return FreeWord.identity()
    name_to_index = None
    if names is not None:
        name_to_index = {n: i for i, n in enumerate(names)}
    pos = 0
    letters: list[int] = []
    for match in _TOKEN.finditer(text):
        if match.start() != pos:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        pos = match.end()
        char, exp = match.group(1), match.group(2)
        exp = 1 if exp is None else int(exp)
        if name_to_index is not None:
            low = char.lower()
            if low not in name_to_index:
                raise ValueError(f"unknown generator {char!r} in {text!r}")
            index = name_to_index[low]
        else:
            index = _ALPHA.index(char.lower())
        if char.isupper():
            exp = -exp
        if rank is not None and index >= rank:
            raise ValueError(f"generator {char!r} exceeds rank {rank}")
        letter = (index + 1) * (1 if exp > 0 else -1)
        letters.extend([letter] * abs(exp))
    if pos != len(text):
        raise ValueError(f"cannot parse word {text!r} at position {pos}")
    return FreeWord(letters)


def common_prefix_len(u: FreeWord, v: FreeWord) -> int:
    a, b = u.signed, v.signed
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def tree_distance(u: FreeWord, v: FreeWord) -> int:
    """Word metric of the free group: d(u, v) = |u^-1 v|."""
    return len(u) + len(v) - 2 * common_prefix_len(u, v)


def count_occurrences(g: FreeWord, pattern: FreeWord) -> int:
    """Occurrences of `pattern` inside the reduced word of g, overlaps allowed."""
    s, p = g.signed, pattern.signed
    if not p or len(p) > len(s):
        return 0
    return sum(1 for i in range(len(s) - len(p) + 1) if s[i : i + len(p)] == p)
