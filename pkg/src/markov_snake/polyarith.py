"""Exact sparse Laurent polynomials in the three variables x, y, z.

A ``TriPoly`` maps exponent triples ``(ex, ey, ez)`` to nonzero Python
integers.  Exponents may be negative, so Markov polynomials can be stored
directly without clearing denominators.  Instances are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

Exponent = Tuple[int, int, int]


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial quotient does not exist."""


class TriPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[Tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exponent, int] = {}
        for exp, c in items:
            if len(exp) != 3:
                raise ValueError(f"exponent must be a triple, got {exp!r}")
            key = (int(exp[0]), int(exp[1]), int(exp[2]))
            acc[key] = acc.get(key, 0) + int(c)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c: int) -> "TriPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, ex: int = 0, ey: int = 0, ez: int = 0, c: int = 1) -> "TriPoly":
        return cls({(ex, ey, ez): c})

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int]) -> "TriPoly":
        # terms must already be free of zeros
        p = cls.__new__(cls)
        p._terms = {k: terms[k] for k in sorted(terms)}
        p._hash = None
        return p

    # container protocol

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, exp: Exponent) -> int:
        return self._terms.get(tuple(exp), 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = TriPoly.const(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"TriPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (ex, ey, ez), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in (("x", ex), ("y", ey), ("z", ez))
                if e != 0
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # ring operations

    def __neg__(self) -> "TriPoly":
        return TriPoly._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other: "TriPoly | int") -> "TriPoly":
        if isinstance(other, int):
            other = TriPoly.const(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            v = acc.get(k, 0) + c
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        return TriPoly._raw(acc)

    __radd__ = __add__

    def __sub__(self, other: "TriPoly | int") -> "TriPoly":
        if isinstance(other, int):
            other = TriPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "TriPoly":
        return TriPoly.const(other) - self

    def __mul__(self, other: "TriPoly | int") -> "TriPoly":
        if isinstance(other, int):
            other = TriPoly.const(other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TriPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = TriPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __floordiv__(self, other: "TriPoly") -> "TriPoly":
        return poly_exact_div(self, other)

    # queries

    def support(self) -> frozenset:
        return poly_support(self)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def total_degrees(self) -> set:
        return {sum(k) for k in self._terms}

    def min_exponents(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        keys = self._terms.keys()
        return tuple(min(k[i] for k in keys) for i in range(3))  # type: ignore[return-value]

    def max_exponents(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        keys = self._terms.keys()
        return tuple(max(k[i] for k in keys) for i in range(3))  # type: ignore[return-value]

    def __call__(self, x0: int, y0: int, z0: int) -> Fraction:
        return poly_eval_ints(self, x0, y0, z0)

    def substitute_squares(self) -> "TriPoly":
        """Return ``p(x^2, y^2, z^2)``."""
        return TriPoly._raw({(2 * a, 2 * b, 2 * c): v for (a, b, c), v in self._terms.items()})

    def halve_exponents(self) -> "TriPoly":
        """Inverse of :meth:`substitute_squares`; every exponent must be even."""
        out = {}
        for (a, b, c), v in self._terms.items():
            if a % 2 or b % 2 or c % 2:
                raise ValueError(f"odd exponent in term {(a, b, c)}")
            out[(a // 2, b // 2, c // 2)] = v
        return TriPoly._raw(out)

    # serialization

    def to_json(self) -> dict:
        return {
            "terms": [
                {"ex": ex, "ey": ey, "ez": ez, "c": str(c)}
                for (ex, ey, ez), c in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TriPoly":
        return cls(
            ((t["ex"], t["ey"], t["ez"]), int(t["c"])) for t in data["terms"]
        )


X = TriPoly.monomial(1, 0, 0)
Y = TriPoly.monomial(0, 1, 0)
Z = TriPoly.monomial(0, 0, 1)
ONE = TriPoly.const(1)
ZERO = TriPoly()


def poly_mul(p: TriPoly, q: TriPoly) -> TriPoly:
    if len(p) > len(q):
        p, q = q, p
    acc: Dict[Exponent, int] = {}
    qt = q._terms
    for (a1, b1, c1), v1 in p._terms.items():
        for (a2, b2, c2), v2 in qt.items():
            k = (a1 + a2, b1 + b2, c1 + c2)
            acc[k] = acc.get(k, 0) + v1 * v2
    return TriPoly._raw({k: v for k, v in acc.items() if v})


def poly_exact_div(p: TriPoly, q: TriPoly) -> TriPoly:
    """Return ``r`` with ``r * q == p``, or raise :class:`NotDivisible`.

    Works in the Laurent ring: leading terms are taken in lexicographic order
    and every quotient term must stay inside the exponent box that an exact
    quotient would occupy, which bounds the loop.
    """
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return ZERO
    pmin, pmax = p.min_exponents(), p.max_exponents()
    qmin, qmax = q.min_exponents(), q.max_exponents()
    lo = tuple(pmin[i] - qmin[i] for i in range(3))
    hi = tuple(pmax[i] - qmax[i] for i in range(3))
    if any(lo[i] > hi[i] for i in range(3)):
        raise NotDivisible(f"{p} is not divisible by {q}")

    qlead = max(q._terms)
    qc = q._terms[qlead]
    rest = dict(p._terms)
    quot: Dict[Exponent, int] = {}
    while rest:
        lead = max(rest)
        c = rest[lead]
        t = (lead[0] - qlead[0], lead[1] - qlead[1], lead[2] - qlead[2])
        if c % qc or any(not lo[i] <= t[i] <= hi[i] for i in range(3)):
            raise NotDivisible(f"{p} is not divisible by {q}")
        f = c // qc
        quot[t] = f
        for (a, b, e), v in q._terms.items():
            k = (t[0] + a, t[1] + b, t[2] + e)
            nv = rest.get(k, 0) - f * v
            if nv:
                rest[k] = nv
            else:
                del rest[k]
    return TriPoly._raw(quot)


def poly_eval_ints(p: TriPoly, x0: int, y0: int, z0: int) -> Fraction:
    total = Fraction(0)
    for (a, b, c), v in p._terms.items():
        term = Fraction(v)
        for base, e in ((x0, a), (y0, b), (z0, c)):
            if e < 0 and base == 0:
                raise ZeroDivisionError(f"negative exponent {e} at zero base")
            term *= Fraction(base) ** e
        total += term
    return total


def poly_support(p: TriPoly) -> frozenset:
    return frozenset(p._terms)
