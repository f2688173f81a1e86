"""Orbit sums, exact zeta coefficients and boundary diagnostics.

With a_n the sum of F(L) over subgroups of index n, the zeta function is
exp(sum_n a_n z^n / n), so its Taylor coefficients obey k c_k = sum_j a_j c_{k-j}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from ._table import ordered_map
from .action import (
    ActionSpec,
    _count_unchecked,
    count_cyclic,
    entropy,
    growth_constants,
    require_mixing,
)
from .errors import NonIntegerCoefficient, UnnormalizedImage, UnsupportedDimension
from .factored import Factored, LogValue
from .funcfield import Place, RatFunc, residue_order
from .lattice import Subgroup, enumerate_subgroups, iter_subgroups_upto, sigma


@dataclass(frozen=True)
class OrbitSums:
    """``a[n - 1]`` is a_n; ``h`` is the entropy used for normalising."""

    a: tuple
    h: LogValue = LogValue()

    @property
    def N(self) -> int:
        return len(self.a)

    def __getitem__(self, n: int) -> int:
        if n < 1:
            raise IndexError("orbit sums start at n = 1")
        return self.a[n - 1]


def _sum_at_index(spec: ActionSpec, n: int) -> int:
    return sum(_count_unchecked(spec, s).value for s in enumerate_subgroups(spec.d, n))


def orbit_sums(spec: ActionSpec, N: int, jobs: int = 1) -> OrbitSums:
    """a_n for n = 1..N by full enumeration (suspensions included)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    require_mixing(spec)
    a = ordered_map(partial(_sum_at_index, spec), range(1, N + 1), jobs, chunksize=1)
    return OrbitSums(tuple(a), entropy(spec))


def zeta_coefficients(a) -> list[int]:
    """c_0..c_N of exp(sum a_n z^n / n); every c_k must come out integral."""
    a = list(a.a if isinstance(a, OrbitSums) else a)
    if not a:
        raise ValueError("need at least one orbit sum")
    c = [1]
    for k in range(1, len(a) + 1):
        total = sum(a[j - 1] * c[k - j] for j in range(1, k + 1))
        q = Fraction(total, k)
        if q.denominator != 1:
            raise NonIntegerCoefficient(f"c_{k} = {q} is not an integer")
        c.append(int(q))
    return c


def log_derivative(c) -> list[int]:
    """Recover a_1..a_N from c_0..c_N via zeta'/zeta; inverse of :func:`zeta_coefficients`."""
    if not c or c[0] != 1:
        raise ValueError("c_0 must be 1")
    a: list[int] = []
    for n in range(1, len(c)):
        # n c_n = a_n + sum_{j<n} a_j c_{n-j}
        a.append(n * c[n] - sum(a[j - 1] * c[n - j] for j in range(1, n)))
    return a


# --------------------------------------------------------------------------


def _log_int(n: int) -> float:
    return math.log(n) if n > 0 else -math.inf


@dataclass(frozen=True)
class RadiusRow:
    n: int
    root: float  # a_n ** (1/n)
    normalised: float  # (a_n / e^{h n}) ** (1/n)
    limsup_estimate: float  # max of ``root`` over n/2 <= m <= n

    @property
    def g_estimate(self) -> float:
        return math.log(self.limsup_estimate)


def radius_report(os: OrbitSums) -> list[RadiusRow]:
    """Root-test table; the radius of convergence is 1 / lim sup a_n^(1/n)."""
    if os.N < 10:
        raise ValueError("radius_report needs N >= 10")
    h = float(os.h)
    roots = [math.exp(_log_int(x) / n) for n, x in enumerate(os.a, start=1)]
    rows = []
    for n in range(1, os.N + 1):
        window = roots[n // 2 : n]
        norm = math.exp(_log_int(os[n]) / n - h)
        rows.append(RadiusRow(n, roots[n - 1], norm, max(window)))
    return rows


@dataclass(frozen=True)
class SandwichRow:
    n: int
    sigma: int
    normalised: Fraction | int  # a_n / e^{h n}
    upper_log: float  # log(sigma(n) C^sqrt(n))
    holds: bool


def sandwich_check(spec: ActionSpec, N: int) -> list[SandwichRow]:
    """sigma(n) <= a_n / e^{hn} <= sigma(n) C^sqrt(n) with C = lam^(E sqrt(d)), d = 2."""
    if spec.d != 2:
        raise UnsupportedDimension("the sandwich is stated for d = 2")
    os = orbit_sums(spec, N)
    log_C = growth_constants(spec).log_C
    scale = os.h.exp().value
    rows = []
    for n in range(1, N + 1):
        norm = Fraction(os[n], scale**n)
        sg = sigma(n)
        upper = math.log(sg) + log_C * math.sqrt(n)
        ok = sg <= norm and math.log(norm) <= upper * (1 + 1e-9)
        rows.append(SandwichRow(n, sg, norm, upper, ok))
    return rows


# --------------------------------------------------------------------------
# single automorphisms


@dataclass(frozen=True)
class Witness:
    place: Place
    degree: int
    residue_order: int
    p: int

    @property
    def bound(self) -> Factored:
        """p ** (-d_w / l_w), the predicted overconvergence value."""
        return Factored({self.p: Fraction(-self.degree, self.residue_order)})


@dataclass(frozen=True)
class Classification:
    """``rational`` means zeta = 1 / (1 - e^h z); otherwise the witnesses certify a boundary."""

    h: LogValue
    witnesses: tuple

    @property
    def rational(self) -> bool:
        return not self.witnesses

    def __str__(self):
        if self.rational:
            return f"Rational: zeta = (1 - {self.h.exp()} z)^-1"
        ws = ", ".join(f"{w.place} (d={w.degree}, l={w.residue_order}, bound={w.bound})" for w in self.witnesses)
        return f"Boundary: {ws}"


def _check_1d(spec: ActionSpec) -> None:
    if spec.d != 1 or spec.suspended:
        raise UnsupportedDimension("single-automorphism analysis needs d = 1")
    for c in spec.curves:
        if c.images[0] != RatFunc.t(c.p):
            raise UnnormalizedImage(f"image {c.images[0]} is not t")


def classify_1d(spec: ActionSpec) -> Classification:
    _check_1d(spec)
    require_mixing(spec)
    ws = []
    for c in spec.curves:
        t = RatFunc.t(c.p)
        for v in c.inverted:
            if v == t.num:
                continue
            w = Place(c.p, v)
            ws.append(Witness(w, v.degree, residue_order(t, w), c.p))
    ws.sort(key=lambda w: (w.p, w.place.sort_key()))
    return Classification(entropy(spec), tuple(ws))


def radius_hypothesis(spec: ActionSpec, N: int) -> float:
    """Estimate of lim sup (F(n) / e^{hn})^(1/n) over N/2 <= n <= N.

    A value of 1 supports the hypothesis that the radius of convergence is e^-h;
    this is reported next to the classification, never folded into it.
    """
    _check_1d(spec)
    if N < 2:
        raise ValueError("N must be >= 2")
    h = entropy(spec).exp()
    return max(float((count_cyclic(spec, n) / h**n) ** Fraction(1, n)) for n in range(N // 2, N + 1))


@dataclass(frozen=True)
class OverconvergenceRow:
    witness: Witness
    k: int
    n: int
    value: Factored  # (F(n) / e^{hn}) ** (1/n), exact

    @property
    def within_bound(self) -> bool:
        return self.value <= self.witness.bound


def overconvergence_check(spec: ActionSpec, K: int, witness: Witness | None = None) -> list[OverconvergenceRow]:
    """Normalised roots along n_k = l_w p^k, k = 0..K, for one witness or all of them."""
    if K < 2:
        raise ValueError("K must be >= 2")
    cls = classify_1d(spec)
    ws = [witness] if witness is not None else list(cls.witnesses)
    h = cls.h.exp()
    rows = []
    for w in ws:
        for k in range(K + 1):
            n = w.residue_order * w.p**k
            value = (count_cyclic(spec, n) / h**n) ** Fraction(1, n)
            rows.append(OverconvergenceRow(w, k, n, value))
    return rows


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PoleRing:
    radius: Factored  # F_base(L') ** (-1 / [L'])
    multiplicity: int
    base: Subgroup


def pole_cluster_scan(spec: ActionSpec, N: int) -> list[PoleRing]:
    """One ring of poles per base subgroup of index <= N, radii ascending."""
    if not spec.suspended:
        raise ValueError("pole_cluster_scan needs a suspended action")
    if N < 1:
        raise ValueError("N must be >= 1")
    require_mixing(spec)
    base = spec.base()
    rings = []
    for s in iter_subgroups_upto(base.d, N):
        F = _count_unchecked(base, s)
        rings.append(PoleRing(F ** Fraction(-1, s.index), s.index, s))
    keyed = sorted(enumerate(rings), key=lambda x: (x[1].radius, x[0]))
    return [r for _, r in keyed]

