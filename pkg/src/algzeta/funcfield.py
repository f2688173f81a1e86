"""Exact arithmetic in F_p[t] and F_p(t).

Polynomials over F_2 are stored as integer bitmasks (bit ``i`` is the
coefficient of ``t**i``) so that the heavy gcd work in periodic point
counting stays in C-level integer operations. Every other characteristic
uses a tuple of coefficients in ascending degree. The public view is the
same in both cases: ``PolyFp.coeffs``.

Absolute values are never floats: ``abs_at`` returns the integer exponent
``e`` with ``|f|_v = p**e``, normalised so that the product formula holds.
"""

from __future__ import annotations

import random
from itertools import zip_longest
from typing import Iterable, Sequence

from . import _numtheory as nt
from .errors import (
    EqualPrimes,
    InvalidIndex,
    NotAUnit,
    NotPrime,
    SpecFormatError,
    ZeroArgument,
    ZeroPolynomial,
)

_EDF_SEED = 0x5EED


# --------------------------------------------------------------------------
# raw kernels: p == 2 works on ints, odd p on stripped tuples


def _strip(c: Sequence[int], p: int) -> tuple:
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _bits_from_coeffs(c: Iterable[int]) -> int:
    r = 0
    for i, x in enumerate(c):
        if x & 1:
            r |= 1 << i
    return r


def _coeffs_from_bits(r: int) -> tuple:
    if r == 0:
        return ()
    return tuple(int(ch) for ch in reversed(bin(r)[2:]))


def _deg(p, r):
    if p == 2:
        return r.bit_length() - 1
    return len(r) - 1


def _add(p, a, b):
    if p == 2:
        return a ^ b
    return _strip([x + y for x, y in zip_longest(a, b, fillvalue=0)], p)


def _sub(p, a, b):
    if p == 2:
        return a ^ b
    return _strip([x - y for x, y in zip_longest(a, b, fillvalue=0)], p)


def _mul(p, a, b):
    if p == 2:
        if a.bit_length() > b.bit_length():
            a, b = b, a
        r = 0
        i = 0
        while a:
            if a & 1:
                r ^= b << i
            a >>= 1
            i += 1
        return r
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out, p)


def _divmod(p, a, b):
    if p == 2:
        if b == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = b.bit_length()
        q = 0
        while a and a.bit_length() >= db:
            s = a.bit_length() - db
            a ^= b << s
            q |= 1 << s
        return q, a
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), tuple(a)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if c:
            f = c * inv % p
            quot[k - db] = f
            for j in range(db + 1):
                rem[k - db + j] -= f * b[j]
    return _strip(quot, p), _strip(rem[:db], p)


def _mod(p, a, b):
    if p == 2:
        db = b.bit_length()
        while a and a.bit_length() >= db:
            a ^= b << (a.bit_length() - db)
        return a
    return _divmod(p, a, b)[1]


def _monic(p, a):
    if p == 2 or not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


def _gcd(p, a, b):
    while b:
        a, b = b, _mod(p, a, b)
    return _monic(p, a)


def _one(p):
    return 1 if p == 2 else (1,)


def _powmod(p, a, e, m):
    result = _one(p)
    a = _mod(p, a, m)
    while e:
        if e & 1:
            result = _mod(p, _mul(p, result, a), m)
        e >>= 1
        if e:
            a = _mod(p, _mul(p, a, a), m)
    return _mod(p, result, m)


# --------------------------------------------------------------------------


class PolyFp:
    """Immutable polynomial over the prime field F_p.

    ``PolyFp(3, [1, 0, 2])`` is ``1 + 2 t**2`` over F_3. The zero
    polynomial has degree ``-1``.
    """

    __slots__ = ("p", "_r")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        self.p = p
        c = _strip(list(coeffs), p)
        self._r = _bits_from_coeffs(c) if p == 2 else c

    @classmethod
    def _wrap(cls, p: int, r) -> "PolyFp":
        obj = cls.__new__(cls)
        obj.p = p
        obj._r = r
        return obj

    @classmethod
    def t(cls, p: int) -> "PolyFp":
        return cls(p, [0, 1])

    @classmethod
    def constant(cls, p: int, c: int) -> "PolyFp":
        return cls(p, [c])

    @classmethod
    def parse(cls, text: str, p: int) -> "PolyFp":
        """Parse the comma-separated ascending coefficient format, e.g. ``"1,1,1"``."""
        text = text.strip()
        try:
            return cls(p, [int(x) for x in text.split(",")])
        except ValueError:
            raise SpecFormatError(f"bad polynomial {text!r}") from None

    @property
    def coeffs(self) -> tuple:
        return _coeffs_from_bits(self._r) if self.p == 2 else self._r

    @property
    def degree(self) -> int:
        return _deg(self.p, self._r)

    @property
    def lc(self) -> int:
        if self.is_zero():
            return 0
        return 1 if self.p == 2 else self._r[-1]

    def is_zero(self) -> bool:
        return not self._r

    def is_one(self) -> bool:
        return self._r == _one(self.p)

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other) -> "PolyFp":
        if isinstance(other, PolyFp):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other
        if isinstance(other, int):
            return PolyFp(self.p, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PolyFp._wrap(self.p, _add(self.p, self._r, other._r))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PolyFp._wrap(self.p, _sub(self.p, self._r, other._r))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return PolyFp._wrap(self.p, _sub(self.p, PolyFp(self.p)._r, self._r))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PolyFp._wrap(self.p, _mul(self.p, self._r, other._r))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        q, r = _divmod(self.p, self._r, other._r)
        return PolyFp._wrap(self.p, q), PolyFp._wrap(self.p, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        return PolyFp._wrap(self.p, _mod(self.p, self._r, other._r))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = _one(self.p)
        base = self._r
        while e:
            if e & 1:
                result = _mul(self.p, result, base)
            e >>= 1
            if e:
                base = _mul(self.p, base, base)
        return PolyFp._wrap(self.p, result)

    def powmod(self, e: int, m: "PolyFp") -> "PolyFp":
        return PolyFp._wrap(self.p, _powmod(self.p, self._r, e, m._r))

    def monic(self) -> "PolyFp":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic associate")
        return PolyFp._wrap(self.p, _monic(self.p, self._r))

    def derivative(self) -> "PolyFp":
        c = self.coeffs
        return PolyFp(self.p, [i * c[i] for i in range(1, len(c))])

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolyFp(self.p, [other])
        if not isinstance(other, PolyFp):
            return NotImplemented
        return self.p == other.p and self._r == other._r

    def __hash__(self):
        return hash((self.p, self._r))

    def sort_key(self):
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return ",".join(str(x) for x in self.coeffs) or "0"

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mono if c == 1 and i else f"{c}" + ("" if i == 0 else f"*{mono}"))
        return f"PolyFp({self.p}: {' + '.join(terms) or '0'})"


def poly_gcd(a: PolyFp, b: PolyFp) -> PolyFp:
    """Monic gcd (zero only if both inputs are zero)."""
    return PolyFp._wrap(a.p, _gcd(a.p, a._r, b._r))


def poly_inverse_mod(a: PolyFp, m: PolyFp) -> PolyFp:
    """Inverse of ``a`` modulo ``m`` via the extended Euclidean algorithm."""
    p = a.p
    r0, r1 = m, a % m
    s0, s1 = PolyFp(p), PolyFp(p, [1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise NotAUnit("polynomial is not invertible modulo m")
    return (s0 * pow(r0.lc, -1, p)) % m


def multiplicity(f: PolyFp, g: PolyFp) -> int:
    """Largest ``k`` with ``g**k | f``; ``f`` nonzero, ``deg g >= 1``."""
    if f.is_zero():
        raise ZeroArgument("multiplicity in the zero polynomial")
    k = 0
    # divide by g, g**2, g**4, ... and restart from g on failure
    step, power = 1, g
    while True:
        if power.degree <= f.degree:
            q, r = divmod(f, power)
            if r.is_zero():
                f, k = q, k + step
                step, power = step * 2, power * power
                continue
        if step == 1:
            return k
        step, power = 1, g


def strip_factor(f: PolyFp, g: PolyFp) -> PolyFp:
    """``f`` with every factor of ``g`` removed."""
    k = multiplicity(f, g)
    return f // (g**k) if k else f


# --------------------------------------------------------------------------
# factorisation


def _pth_root(f: PolyFp) -> PolyFp:
    c = f.coeffs
    return PolyFp(f.p, c[:: f.p])


def _squarefree(f: PolyFp) -> list[tuple[PolyFp, int]]:
    """Square-free decomposition of a monic polynomial, valid in characteristic p."""
    p = f.p
    out: list[tuple[PolyFp, int]] = []
    if f.degree < 1:
        return out
    c = poly_gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        fac = w // y
        if not fac.is_one():
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for g, e in _squarefree(_pth_root(c)):
            out.append((g, e * p))
    return out


def _distinct_degree(f: PolyFp) -> list[tuple[PolyFp, int]]:
    p = f.p
    t = PolyFp.t(p)
    out = []
    rest = f
    h = t % rest
    i = 1
    while rest.degree >= 2 * i:
        h = h.powmod(p, rest)
        g = poly_gcd(rest, h - t)
        if not g.is_one():
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree >= 1:
        out.append((rest, rest.degree))
    return out


def _equal_degree(f: PolyFp, d: int, rng: random.Random) -> list[PolyFp]:
    n = f.degree
    if n == d:
        return [f]
    p = f.p
    while True:
        a = PolyFp(p, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < n:
            break
        if p == 2:
            acc = a % f
            term = acc
            for _ in range(d - 1):
                term = (term * term) % f
                acc = acc + term
            g = poly_gcd(acc, f)
        else:
            g = poly_gcd(a.powmod((p**d - 1) // 2, f) - 1, f)
        if 0 < g.degree < n:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f: PolyFp) -> list[tuple[PolyFp, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients).

    The leading coefficient ``f.lc`` is the omitted unit. Equal-degree
    splitting uses a fixed seed, so output and timing are reproducible.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(_EDF_SEED)
    found: dict[PolyFp, int] = {}
    for sq, e in _squarefree(f.monic()):
        for block, d in _distinct_degree(sq):
            for g in _equal_degree(block, d, rng):
                found[g] = found.get(g, 0) + e
    return sorted(found.items(), key=lambda kv: kv[0].sort_key())


def is_irreducible(f: PolyFp) -> bool:
    """Rabin's test: no factor over any maximal proper subfield, and t**(p**n) == t."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    p = f.p
    f = f.monic()
    t = PolyFp.t(p)
    for r in nt.factorint(n):
        h = t.powmod(p ** (n // r), f)
        if not poly_gcd(f, h - t).is_one():
            return False
    return t.powmod(p**n, f) == t % f


# --------------------------------------------------------------------------


class RatFunc:
    """Element of F_p(t) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyFp, den: PolyFp | None = None):
        p = num.p
        if den is None:
            den = PolyFp(p, [1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, PolyFp(p, [1])
            return
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = pow(lc, -1, p)
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @property
    def p(self) -> int:
        return self.num.p

    @classmethod
    def t(cls, p: int) -> "RatFunc":
        return cls(PolyFp.t(p))

    @classmethod
    def parse(cls, text: str, p: int) -> "RatFunc":
        """``"num/den"`` or ``"num"``, each side in polynomial text format."""
        parts = text.split("/")
        if len(parts) > 2:
            raise SpecFormatError(f"bad rational function {text!r}")
        num = PolyFp.parse(parts[0], p)
        den = PolyFp.parse(parts[1], p) if len(parts) == 2 else None
        if den is not None and den.is_zero():
            raise SpecFormatError(f"zero denominator in {text!r}")
        return cls(num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def unit(self) -> int:
        """Leading coefficient (the F_p^* part of the element)."""
        return self.num.lc

    def height(self) -> int:
        """max(deg num, deg den): sum over all places of deg(v) * max(0, -ord_v)."""
        return max(self.num.degree, self.den.degree)

    def __mul__(self, other):
        if isinstance(other, (PolyFp, int)):
            other = RatFunc(other if isinstance(other, PolyFp) else PolyFp(self.p, [other]))
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (PolyFp, int)):
            other = RatFunc(other if isinstance(other, PolyFp) else PolyFp(self.p, [other]))
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __add__(self, other):
        if isinstance(other, (PolyFp, int)):
            other = RatFunc(other if isinstance(other, PolyFp) else PolyFp(self.p, [other]))
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (PolyFp, int)):
            other = RatFunc(other if isinstance(other, PolyFp) else PolyFp(self.p, [other]))
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __pow__(self, e: int):
        if e >= 0:
            return RatFunc(self.num**e, self.den**e)
        if self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return RatFunc(self.den ** (-e), self.num ** (-e))

    def __eq__(self, other):
        if isinstance(other, (PolyFp, int)):
            other = RatFunc(other if isinstance(other, PolyFp) else PolyFp(self.p, [other]))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"RatFunc({self.p}: {self})"


class Place:
    """A place of F_p(t): a monic irreducible polynomial, or infinity (``poly is None``)."""

    __slots__ = ("p", "poly")

    def __init__(self, p: int, poly: PolyFp | None = None):
        self.p = p
        if poly is not None:
            if poly.degree < 1:
                raise ValueError("a finite place needs a polynomial of degree >= 1")
            poly = poly.monic()
        self.poly = poly

    @classmethod
    def infinity(cls, p: int) -> "Place":
        return cls(p, None)

    @classmethod
    def parse(cls, text: str, p: int) -> "Place":
        text = text.strip()
        if text == "inf":
            return cls.infinity(p)
        poly = PolyFp.parse(text, p)
        if not is_irreducible(poly):
            raise SpecFormatError(f"{text!r} is not irreducible over F_{p}")
        return cls(p, poly)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        return (0,) if self.poly is None else (1,) + self.poly.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return isinstance(other, Place) and self.p == other.p and self.poly == other.poly

    def __hash__(self):
        return hash((self.p, self.poly))

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly)

    def __repr__(self):
        return f"Place({self.p}: {self})"


def _as_ratfunc(f) -> RatFunc:
    return f if isinstance(f, RatFunc) else RatFunc(f)


def ord_at(f, v: Place) -> int:
    """Valuation of a nonzero rational function (or polynomial) at ``v``."""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise ZeroArgument("valuation of zero")
    if v.is_infinite:
        return f.den.degree - f.num.degree
    return multiplicity(f.num, v.poly) - multiplicity(f.den, v.poly)


def abs_at(f, v: Place) -> int:
    """Exponent ``e`` with ``|f|_v = p**e`` (so ``e = -deg(v) * ord_v(f)``)."""
    return -v.degree * ord_at(f, v)


def support(f) -> list[Place]:
    """Places where ``f`` has nonzero valuation, infinity first."""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise ZeroArgument("support of zero")
    p = f.p
    places = []
    if f.num.degree != f.den.degree:
        places.append(Place.infinity(p))
    for side in (f.num, f.den):
        if side.degree >= 1:
            places.extend(Place(p, g) for g, _ in factor(side))
    return sorted(set(places))


def mult_order(p: int, q: int) -> int:
    """Multiplicative order m_p(q) of ``p`` modulo the prime ``q``."""
    if not nt.isprime(p):
        raise NotPrime(f"{p} is not prime")
    if not nt.isprime(q):
        raise NotPrime(f"{q} is not prime")
    if p == q:
        raise EqualPrimes(f"m_p(q) needs p != q (got {p})")
    return nt.multiplicative_order(p, q)


def residue_order(r, v: Place) -> int:
    """Multiplicative order of the residue of ``r`` in F_p[t]/(v)."""
    r = _as_ratfunc(r)
    if v.is_infinite:
        raise ValueError("residue_order needs a finite place")
    if r.is_zero() or ord_at(r, v) != 0:
        raise NotAUnit(f"{r} is not a unit at {v}")
    m = v.poly
    res = (r.num * poly_inverse_mod(r.den, m)) % m
    size = v.p**v.degree - 1
    return nt.order_in_group(lambda x: x.is_one(), lambda k: res.powmod(k, m), size)


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    if n <= 0:
        raise InvalidIndex(f"p_part needs n >= 1, got {n}")
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


# --------------------------------------------------------------------------


class MPoly:
    """Multivariate polynomial over F_p in u_1..u_k with integer exponents.

    Text format: terms ``coef:e1,...,ek`` separated by semicolons, e.g.
    ``"1:0,0; 1:1,0; 1:0,1"`` is ``1 + u1 + u2``.
    """

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p: int, nvars: int, terms: dict):
        self.p = p
        self.nvars = nvars
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != nvars:
                raise SpecFormatError(f"exponent {e} has wrong length (want {nvars})")
            c = (clean.get(e, 0) + c) % p
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.terms = clean

    @classmethod
    def parse(cls, text: str, p: int, nvars: int | None = None) -> "MPoly":
        terms: dict = {}
        width = nvars
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                coef, exps = chunk.split(":")
                e = tuple(int(x) for x in exps.split(","))
                c = int(coef)
            except ValueError:
                raise SpecFormatError(f"bad term {chunk!r} in {text!r}") from None
            if width is None:
                width = len(e)
            terms[e] = terms.get(e, 0) + c
        if width is None:
            raise SpecFormatError("empty multivariate polynomial")
        return cls(p, width, terms)

    def padded(self, nvars: int) -> "MPoly":
        """Same polynomial viewed in more variables (extra exponents zero)."""
        pad = (0,) * (nvars - self.nvars)
        return MPoly(self.p, nvars, {e + pad: c for e, c in self.terms.items()})

    def evaluate(self, values: Sequence[RatFunc]) -> RatFunc:
        total = RatFunc(PolyFp(self.p))
        for e, c in self.terms.items():
            term = RatFunc(PolyFp(self.p, [c]))
            for x, k in zip(values, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def __str__(self):
        return "; ".join(
            f"{c}:{','.join(map(str, e))}" for e, c in sorted(self.terms.items())
        )

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and (self.p, self.nvars, self.terms) == (other.p, other.nvars, other.terms)
        )

    def __hash__(self):
        return hash((self.p, self.nvars, tuple(sorted(self.terms.items()))))
