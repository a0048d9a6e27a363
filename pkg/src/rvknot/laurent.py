"""Sparse Laurent polynomials in one variable with exact integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable Laurent polynomial in ``A`` stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so equality is plain dict equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            if not isinstance(exp, int) or not isinstance(coeff, int):
                raise TypeError("exponents and coefficients must be integers")
            acc[exp] = acc.get(exp, 0) + coeff
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: 1})

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def delta(cls) -> LaurentPoly:
        """Loop value -A^2 - A^-2."""
        return cls({2: -1, -2: -1})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def support(self) -> list[int]:
        return list(self._terms)

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({e * n: c ** (-n)})
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``A**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def invert_variable(self) -> LaurentPoly:
        """Substitute ``A -> A^-1``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def is_palindromic(self) -> bool:
        return self == self.invert_variable()

    def jones_terms(self) -> dict[str, int] | None:
        """Terms in ``t = A^-4`` when every exponent is divisible by 4, else None.

        Display helper only; exponents are returned as strings since they may be
        fractional for links with an even number of components.
        """
        out = {}
        for e, c in self._terms.items():
            if e % 2:
                return None
            q, r = divmod(-e, 4)
            out[str(q) if r == 0 else f"{-e}/4"] = c
        return out

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> LaurentPoly:
        return cls({int(e): int(c) for e, c in obj.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self._terms.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self._terms!r})"

    _TERM = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*(A(?:\^(-?\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str``: accepts forms like ``-A^-16 + A^-12 + 3*A + 2``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        pos = 0
        acc = []
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                exp = int(m.group(4)) if m.group(4) is not None else 1
            else:
                exp = 0
            acc.append((exp, sign * coeff))
            pos = m.end()
        return cls(acc)
