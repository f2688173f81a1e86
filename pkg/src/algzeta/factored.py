"""Positive rationals (and rational powers of primes) stored as prime -> exponent maps."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from . import _numtheory as nt
from .errors import SpecFormatError


class Factored:
    """``prod(p ** e)`` with integer or Fraction exponents; zero exponents dropped.

    Periodic point counts are Factored values with nonnegative integer
    exponents; normalised counts may have negative exponents and pole radii
    have fractional ones.
    """

    __slots__ = ("exps",)

    def __init__(self, exps: Mapping[int, int | Fraction] | None = None):
        clean = {}
        for p, e in (exps or {}).items():
            if e:
                if isinstance(e, Fraction) and e.denominator == 1:
                    e = int(e)
                clean[p] = e
        self.exps = dict(sorted(clean.items()))

    @classmethod
    def one(cls) -> "Factored":
        return cls()

    @classmethod
    def prime_power(cls, p: int, e) -> "Factored":
        return cls({p: e})

    @classmethod
    def from_int(cls, n: int) -> "Factored":
        if n < 1:
            raise ValueError("Factored values are positive")
        return cls(nt.factorint(n)) if n > 1 else cls()

    @classmethod
    def parse(cls, text: str) -> "Factored":
        """Inverse of ``str``: ``"2^5*3^2"``, ``"3"``, ``"1"``, ``"2^(-2/3)"``."""
        text = text.strip()
        if text == "1":
            return cls()
        exps: dict = {}
        try:
            for part in text.split("*"):
                base, _, exp = part.partition("^")
                e = Fraction(exp.strip("()")) if exp else 1
                exps[int(base)] = exps.get(int(base), 0) + e
        except (ValueError, ZeroDivisionError):
            raise SpecFormatError(f"bad factored value {text!r}") from None
        return cls(exps)

    def is_integer(self) -> bool:
        return all(isinstance(e, int) and e >= 0 for e in self.exps.values())

    @property
    def value(self) -> int | Fraction:
        """Exact value; raises for fractional exponents."""
        num, den = 1, 1
        for p, e in self.exps.items():
            if not isinstance(e, int):
                raise ValueError(f"{self} is irrational")
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        return num if den == 1 else Fraction(num, den)

    def log(self) -> float:
        return float(sum(float(e) * math.log(p) for p, e in self.exps.items()))

    def __float__(self):
        return math.exp(self.log())

    def __mul__(self, other: "Factored") -> "Factored":
        out = dict(self.exps)
        for p, e in other.exps.items():
            out[p] = out.get(p, 0) + e
        return Factored(out)

    def __truediv__(self, other: "Factored") -> "Factored":
        return self * other ** -1

    def __pow__(self, k) -> "Factored":
        return Factored({p: e * k for p, e in self.exps.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = Factored.from_int(other) if other >= 1 else None
        return isinstance(other, Factored) and self.exps == other.exps

    def __hash__(self):
        return hash(tuple(self.exps.items()))

    def _cmp(self, other: "Factored") -> int:
        """Exact three-way comparison (fractional exponents raised away)."""
        ratio = self / other
        if not ratio.exps:
            return 0
        lg = ratio.log()
        if abs(lg) > 1e-6:
            return 1 if lg > 0 else -1
        den = math.lcm(*(Fraction(e).denominator for e in ratio.exps.values()))
        num = {p: int(e * den) for p, e in ratio.exps.items()}
        up = math.prod(p**e for p, e in num.items() if e > 0)
        down = math.prod(p ** (-e) for p, e in num.items() if e < 0)
        return (up > down) - (up < down)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self):
        if not self.exps:
            return "1"
        parts = []
        for p, e in self.exps.items():
            if e == 1:
                parts.append(str(p))
            elif isinstance(e, int) and e > 0:
                parts.append(f"{p}^{e}")
            else:
                parts.append(f"{p}^({e})")
        return "*".join(parts)

    def __repr__(self):
        return f"Factored({self})"


class LogValue:
    """An exact real ``sum(w_p * log p)`` with rational weights ``w_p``.

    Used for entropies and growth rates, e.g. ``(2/3) log 2``.
    """

    __slots__ = ("weights",)

    def __init__(self, weights: Mapping[int, int | Fraction] | None = None):
        self.weights = Factored(weights).exps

    @classmethod
    def of(cls, count: Factored, per: int = 1) -> "LogValue":
        """``log(count) / per``."""
        return cls({p: Fraction(e) / per for p, e in count.exps.items()})

    def exp(self) -> Factored:
        return Factored(self.weights)

    def __float__(self):
        return float(sum(float(w) * math.log(p) for p, w in self.weights.items()))

    def __add__(self, other: "LogValue") -> "LogValue":
        return LogValue((self.exp() * other.exp()).exps)

    def __sub__(self, other: "LogValue") -> "LogValue":
        return LogValue((self.exp() / other.exp()).exps)

    def __eq__(self, other):
        return isinstance(other, LogValue) and self.weights == other.weights

    def __hash__(self):
        return hash(tuple(self.weights.items()))

    def __lt__(self, other):
        return self.exp() < other.exp()

    def __le__(self, other):
        return self.exp() <= other.exp()

    def __gt__(self, other):
        return self.exp() > other.exp()

    def __ge__(self, other):
        return self.exp() >= other.exp()

    def __str__(self):
        if not self.weights:
            return "0"
        return " + ".join(
            f"log {p}" if w == 1 else f"{w}*log {p}" for p, w in self.weights.items()
        )

    def __repr__(self):
        return f"LogValue({self})"
