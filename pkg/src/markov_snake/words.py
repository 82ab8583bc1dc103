"""Christoffel words, the A/B modified word, and B-run profiles.

Letters are written in ASCII: ``a`` for alpha (a right step), ``b`` for beta
(an up step).  The modified word uses ``A`` and ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List

ALPHA = "a"
BETA = "b"


class MalformedWord(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RationalIndex:
    """A reduced fraction ``a/b`` with ``1 <= a <= b``."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("numerator and denominator must be integers")
        if self.a < 1 or self.b < self.a:
            raise ValueError(f"need 1 <= a <= b, got {self.a}/{self.b}")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"{self.a}/{self.b} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "RationalIndex":
        try:
            num, den = text.strip().split("/")
            return cls(int(num), int(den))
        except (ValueError, TypeError) as exc:
            raise ValueError(f"bad rational index {text!r}: {exc}") from None

    @property
    def degree(self) -> int:
        """Total degree ``a + b - 1`` of the numerator polynomial."""
        return self.a + self.b - 1

    def __str__(self) -> str:
        return f"{self.a}/{self.b}"


def coerce(rho) -> RationalIndex:
    if isinstance(rho, RationalIndex):
        return rho
    if isinstance(rho, str):
        return RationalIndex.parse(rho)
    a, b = rho
    return RationalIndex(a, b)


def christoffel_word(rho) -> str:
    """Lower Christoffel word of the segment from (0, 0) to (b, a)."""
    rho = coerce(rho)
    a, b = rho.a, rho.b
    p = q = 0
    letters = []
    while (p, q) != (b, a):
        if q < a and (q + 1) * b <= a * p:
            letters.append(BETA)
            q += 1
        else:
            letters.append(ALPHA)
            p += 1
    return "".join(letters)


def modify_word(word: str) -> str:
    """Rewrite ``ab -> B`` and then each remaining ``a -> A``."""
    out = []
    i = 0
    while i < len(word):
        ch = word[i]
        if ch == ALPHA and i + 1 < len(word) and word[i + 1] == BETA:
            out.append("B")
            i += 2
        elif ch == ALPHA:
            out.append("A")
            i += 1
        else:
            raise MalformedWord(f"unpaired {BETA!r} at position {i} of {word!r}")
    return "".join(out)


def run_profile(modified: str) -> List[int]:
    """Length of the B-run after each A; a run that ends the word loses one."""
    runs: List[int] = []
    for ch in modified:
        if ch == "A":
            runs.append(0)
        elif ch == "B":
            if runs:
                runs[-1] += 1
        else:
            raise MalformedWord(f"unexpected letter {ch!r} in modified word")
    if runs and modified.endswith("B"):
        runs[-1] -= 1
    return runs


def word_data(rho) -> dict:
    rho = coerce(rho)
    w = christoffel_word(rho)
    m = modify_word(w)
    return {"rho": str(rho), "word": w, "modified": m, "runs": run_profile(m)}
