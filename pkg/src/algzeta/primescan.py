"""Counts on subgroups of prime index and the multiplicative-order condition.

For a prime q outside P and a place v outside S, a nontrivial image of
Z^d in the residue field at v that kills an index-q subgroup has order q,
so q divides p^deg(v) - 1 and deg(v) >= m_p(q), the order of p mod q.
Such a place contributes at least m_p(q) log p to log F, while Minkowski
gives log F <= kappa * r_d(1) * q^(1/d). Hence once

    m_p(q) > q^(1/d + eps)   and   q > q0 = (kappa r_d(1) / log p_min)^(1/eps)

only places where every image is 1 mod v survive. At those places q is a
unit in the pro-p group 1 + v O_v, so the subgroup reaches exactly as deep
as Z^d does, and F(L) = F(Z^d). That common value is reported as ``C2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from . import _numtheory as nt
from ._table import ordered_map
from .action import ActionSpec, _count_unchecked, growth_constants, require_mixing
from .errors import NotEntropyRankOne, NotPrime, UnsupportedDimension
from .factored import Factored
from .lattice import Subgroup, enumerate_subgroups, minkowski_radius

DEFAULT_EPS = Fraction(1, 10)


@dataclass(frozen=True)
class PrimeScanConfig:
    P: tuple
    eps: Fraction = DEFAULT_EPS
    d: int = 2
    qmax: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(sorted(set(self.P))))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        for p in self.P:
            if not nt.isprime(p):
                raise NotPrime(f"{p} is not prime")

    @classmethod
    def for_spec(cls, spec: ActionSpec, eps=DEFAULT_EPS, qmax: int = 1000) -> "PrimeScanConfig":
        return cls(spec.primes, Fraction(eps), spec.d, qmax)


def orders(cfg: PrimeScanConfig, q: int) -> tuple:
    """``((p, m_p(q)), ...)`` for p in P other than q."""
    return tuple((p, nt.multiplicative_order(p, q)) for p in cfg.P if p != q)


def qualifies(cfg: PrimeScanConfig, q: int) -> bool:
    """q not in P and m_p(q) > q^(1/d + eps) for each p in P, decided by integer powers."""
    if not nt.isprime(q):
        raise NotPrime(f"{q} is not prime")
    if q in cfg.P:
        return False
    a, b = cfg.eps.numerator, cfg.eps.denominator
    d = cfg.d
    return all(m ** (d * b) > q ** (b + d * a) for _, m in orders(cfg, q))


@dataclass(frozen=True)
class Density:
    qualifying: int
    primes: int

    @property
    def ratio(self) -> float:
        return self.qualifying / self.primes if self.primes else 0.0


def qualifying_density(cfg: PrimeScanConfig, qmax: int | None = None) -> Density:
    qmax = cfg.qmax if qmax is None else qmax
    if qmax < 10:
        raise ValueError("qmax must be >= 10")
    ps = nt.primes_up_to(qmax)
    return Density(sum(qualifies(cfg, q) for q in ps), len(ps))


def threshold(spec: ActionSpec, eps=DEFAULT_EPS) -> float:
    """q0 = (kappa r_d(1) / log p_min)^(1/eps); 0 when the curves have zero height."""
    k = growth_constants(spec)
    if not spec.primes or k.kappa == 0:
        return 0.0
    base = k.kappa * minkowski_radius(spec.d, 1) / math.log(min(spec.primes))
    return base ** (1 / float(Fraction(eps))) if base > 1 else 1.0


@dataclass(frozen=True)
class PrimeRow:
    q: int
    qualifying: bool
    above_threshold: bool
    orders: tuple
    values: tuple  # sorted distinct Factored counts over index-q subgroups
    subgroups: int


@dataclass
class PrimeScan:
    config: PrimeScanConfig
    q0: float
    C2: Factored
    rows: list

    def values_above_threshold(self) -> set:
        """Union of value sets over qualifying q > q0."""
        out: set = set()
        for r in self.rows:
            if r.qualifying and r.above_threshold:
                out.update(r.values)
        return out

    @property
    def theorem_echo(self) -> bool:
        """Every qualifying prime above q0 has value set {C2}."""
        return self.values_above_threshold() <= {self.C2}


def _values_at(spec: ActionSpec, q: int) -> tuple:
    subs = enumerate_subgroups(spec.d, q)
    vals = {_count_unchecked(spec, s) for s in subs}
    return tuple(sorted(vals)), len(subs)


def prime_value_scan(spec: ActionSpec, eps=DEFAULT_EPS, qmax: int = 600, jobs: int = 1) -> PrimeScan:
    if spec.principals:
        raise NotEntropyRankOne("principal components have positive entropy")
    if spec.d < 2 or spec.suspended:
        raise UnsupportedDimension("prime scans need an unsuspended action with d >= 2")
    require_mixing(spec)
    cfg = PrimeScanConfig.for_spec(spec, eps, qmax)
    q0 = threshold(spec, eps)
    qs = nt.primes_up_to(qmax)
    found = ordered_map(partial(_values_at, spec), qs, jobs, chunksize=4)
    rows = [
        PrimeRow(q, qualifies(cfg, q), q > q0, orders(cfg, q), vals, n)
        for q, (vals, n) in zip(qs, found)
    ]
    C2 = _count_unchecked(spec, Subgroup(spec.d, tuple(tuple(int(i == j) for j in range(spec.d)) for i in range(spec.d))))
    return PrimeScan(cfg, q0, C2, rows)
