"""Algebraic Z^d-actions given by explicit component lists, and their periodic point counts.

An action is described by the dual module's prime components:

* ``Principal(p, mult)`` -- the full shift R_d/(p), counted ``mult`` times.
* ``Curve(p, images, inverted, mult)`` -- the domain F_p[t][S^-1] on which
  u_i acts by multiplication by the rational function ``images[i]``. ``S``
  is the set ``inverted`` of monic irreducibles, automatically extended by
  every irreducible factor of every image.

Since F_p[t][S^-1] is integrally closed, the number of points fixed by a
subgroup with generators g_1..g_d is exactly

    prod_{v not in S, v finite} min_j |u^{g_j} - 1|_v^{-1}
      = p ** deg( gcd_j numerator(u^{g_j} - 1) with S-factors removed ),

because the order at v of a gcd is the minimum of the orders. Principal
components contribute ``p ** (mult * index)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

from . import _numtheory as nt
from .errors import (
    InfiniteFixedSet,
    NotMixing,
    SpecFormatError,
    UnsupportedDimension,
)
from .factored import Factored, LogValue
from .funcfield import MPoly, Place, PolyFp, RatFunc, abs_at, factor, ord_at, poly_gcd, strip_factor
from .lattice import (
    MAX_DIMENSION,
    Subgroup,
    integer_kernel,
    iter_subgroups_upto,
    minkowski_radius,
    short_vector,
    shortest_in_span,
)


@dataclass(frozen=True)
class Principal:
    p: int
    mult: int = 1

    def __post_init__(self):
        if not nt.isprime(self.p):
            raise SpecFormatError(f"principal component needs a prime, got {self.p}")
        if self.mult < 1:
            raise SpecFormatError("multiplicity must be >= 1")


@dataclass(frozen=True)
class Curve:
    p: int
    images: tuple
    inverted: tuple = ()
    mult: int = 1
    defining_poly: MPoly | None = field(default=None, compare=True)

    def __post_init__(self):
        p = self.p
        if not nt.isprime(p):
            raise SpecFormatError(f"curve component needs a prime, got {p}")
        if self.mult < 1:
            raise SpecFormatError("multiplicity must be >= 1")
        images = tuple(self.images)
        if not images:
            raise SpecFormatError("curve component needs at least one image")
        for r in images:
            if r.p != p:
                raise SpecFormatError("image characteristic differs from component")
            if r.is_zero():
                raise SpecFormatError("an image is zero, so u_i is not invertible")
        irreducibles: set[PolyFp] = set()
        for g in self.inverted:
            if g.degree < 1:
                raise SpecFormatError(f"cannot invert the constant {g}")
            irreducibles.update(h for h, _ in factor(g))
        for r in images:
            for side in (r.num, r.den):
                if side.degree >= 1:
                    irreducibles.update(h for h, _ in factor(side))
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "inverted", tuple(sorted(irreducibles, key=PolyFp.sort_key)))
        f = self.defining_poly
        if f is not None:
            if f.p != p or f.nvars != len(images):
                raise SpecFormatError("defining_poly has wrong characteristic or variable count")
            if not f.evaluate(images).is_zero():
                raise SpecFormatError(f"defining_poly {f} does not vanish at the images")

    @property
    def d(self) -> int:
        return len(self.images)


Component = Union[Principal, Curve]


@dataclass(frozen=True)
class ActionSpec:
    """``d`` is the acting dimension; when ``suspended``, components live in dimension d - 1."""

    d: int
    components: tuple
    suspended: bool = False

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not 1 <= self.d <= MAX_DIMENSION:
            raise UnsupportedDimension(f"dimension {self.d} outside 1..{MAX_DIMENSION}")
        if self.suspended and self.d < 2:
            raise UnsupportedDimension("a suspension has dimension >= 2")
        for c in self.components:
            if isinstance(c, Curve) and c.d != self.base_dim:
                raise SpecFormatError(f"curve has {c.d} images, expected {self.base_dim}")

    @property
    def base_dim(self) -> int:
        return self.d - 1 if self.suspended else self.d

    @property
    def primes(self) -> tuple:
        """The characteristic primes of the components."""
        return tuple(sorted({c.p for c in self.components}))

    @property
    def curves(self) -> list[Curve]:
        return [c for c in self.components if isinstance(c, Curve)]

    @property
    def principals(self) -> list[Principal]:
        return [c for c in self.components if isinstance(c, Principal)]

    def base(self) -> "ActionSpec":
        """The unsuspended action (itself when not suspended)."""
        return ActionSpec(self.base_dim, self.components) if self.suspended else self


# --------------------------------------------------------------------------


def exceptional_places(c: Curve) -> list[Place]:
    """S: infinity plus every finite place where an image or inverted element has nonzero order."""
    return [Place.infinity(c.p)] + [Place(c.p, g) for g in c.inverted]


def _curve_violation(c: Curve) -> tuple | None:
    d = c.d
    rows = [[ord_at(img, Place(c.p, g)) for img in c.images] + [0] for g in c.inverted]
    if c.p > 2:
        logs = [nt.discrete_log(img.unit(), c.p) for img in c.images]
        rows.append(logs + [c.p - 1])
        kernel = integer_kernel(rows, d + 1)
    else:
        kernel = integer_kernel([r[:d] for r in rows], d)
    basis = [k[:d] for k in kernel]
    if not basis:
        return None
    return shortest_in_span(basis, d)


@lru_cache(maxsize=256)
def validate_mixing(spec: ActionSpec) -> tuple | None:
    """``None`` if no nonzero n has u^n = 1 on a curve component, else the shortest such n.

    Exact: u^n = 1 in F_p(t) iff the order vectors at every finite place cancel
    and the product of leading coefficients is 1.
    """
    found = [w for w in (_curve_violation(c) for c in spec.curves) if w is not None]
    if not found:
        return None
    best = min(found, key=lambda v: (sum(x * x for x in v), v))
    return best + (0,) if spec.suspended else best


def require_mixing(spec: ActionSpec) -> None:
    w = validate_mixing(spec)
    if w is not None:
        raise NotMixing(f"u^{w} = 1 on a curve component", witness=w)


@lru_cache(maxsize=8192)
def _power(poly: PolyFp, e: int) -> PolyFp:
    return poly**e


def _monomial_minus_one(c: Curve, n: Sequence[int]) -> PolyFp:
    """Numerator of u^n - 1 up to factors in S (zero iff u^n = 1)."""
    p = c.p
    top = PolyFp(p, [1])
    bottom = PolyFp(p, [1])
    for img, k in zip(c.images, n):
        if k > 0:
            top = top * _power(img.num, k)
            bottom = bottom * _power(img.den, k)
        elif k < 0:
            top = top * _power(img.den, -k)
            bottom = bottom * _power(img.num, -k)
    return top - bottom


def _curve_gcd(c: Curve, gens: Iterable[Sequence[int]]) -> PolyFp:
    g = PolyFp(c.p)
    for n in gens:
        x = _monomial_minus_one(c, n)
        if x.is_zero():
            raise InfiniteFixedSet(f"u^{tuple(n)} = 1, so the fixed set is infinite")
        g = poly_gcd(g, x)
        if g.degree == 0:
            return g
    for v in c.inverted:
        if g.degree < 1:
            break
        g = strip_factor(g, v)
    return g


def curve_exponent(c: Curve, gens: Iterable[Sequence[int]]) -> int:
    """log_p of the curve's count on the subgroup generated by ``gens`` (multiplicity included)."""
    return c.mult * max(_curve_gcd(c, gens).degree, 0)


def _check_subgroup(spec: ActionSpec, s: Subgroup) -> None:
    if s.d != spec.d:
        raise UnsupportedDimension(f"subgroup of Z^{s.d} for a Z^{spec.d}-action")


def count_fixed(spec: ActionSpec, s: Subgroup) -> Factored:
    """Exact number of points fixed by the subgroup ``s``.

    A suspended action counts F_base(top-left block) ** a_d.
    """
    _check_subgroup(spec, s)
    require_mixing(spec)
    return _count_unchecked(spec, s)


def _count_unchecked(spec: ActionSpec, s: Subgroup) -> Factored:
    if spec.suspended:
        base = _count_unchecked(spec.base(), s.top_left(spec.d - 1))
        return base ** s.diagonal[-1]
    exps: dict[int, int] = {}
    idx = s.index
    cols = s.columns
    for c in spec.components:
        if isinstance(c, Principal):
            e = c.mult * idx
        else:
            e = curve_exponent(c, cols)
        exps[c.p] = exps.get(c.p, 0) + e
    return Factored(exps)


def count_cyclic(spec: ActionSpec, n: int) -> Factored:
    """Points of period ``n`` for a Z-action (the subgroup nZ)."""
    if spec.d != 1:
        raise UnsupportedDimension("count_cyclic is for Z-actions")
    return count_fixed(spec, Subgroup(1, ((n,),)))


def contributing_places(spec: ActionSpec, s: Subgroup) -> list[tuple[Place, int]]:
    """Places outside S with a nontrivial factor in the count, with their p-exponent.

    Diagnostic only; unsuspended actions.
    """
    _check_subgroup(spec, s)
    require_mixing(spec)
    if spec.suspended:
        raise ValueError("contributing_places works on the base action")
    out = []
    for c in spec.curves:
        g = _curve_gcd(c, s.columns)
        if g.degree >= 1:
            for v, k in factor(g):
                out.append((Place(c.p, v), c.mult * k * v.degree))
    return out


# --------------------------------------------------------------------------


def entropy(spec: ActionSpec) -> LogValue:
    """Topological entropy as an exact sum of ``w_p log p``.

    For d >= 2 only principal components contribute; for d = 1 a curve
    contributes ``mult * sum_{v in S} log+ |image|_v`` = ``mult * height(image) * log p``.
    """
    w: dict[int, int] = {}
    for c in spec.components:
        if isinstance(c, Principal):
            w[c.p] = w.get(c.p, 0) + c.mult
        elif spec.d == 1:
            w[c.p] = w.get(c.p, 0) + c.mult * c.images[0].height()
    return LogValue(w)


def entropy_normalized_count(spec: ActionSpec, s: Subgroup) -> Factored:
    """count / exp(h * index), exact; for these actions it is the subexponential factor psi."""
    return count_fixed(spec, s) / entropy(spec).exp() ** s.index


def suspend(spec: ActionSpec) -> ActionSpec:
    """Add a free shift coordinate: F(L) = F_base(top-left block) ** a_{d+1}."""
    if spec.d + 1 > MAX_DIMENSION:
        raise UnsupportedDimension(f"cannot suspend a Z^{spec.d}-action within d <= {MAX_DIMENSION}")
    if spec.suspended:
        raise ValueError("action is already suspended")
    require_mixing(spec)
    return ActionSpec(spec.d + 1, spec.components, suspended=True)


# --------------------------------------------------------------------------
# growth constants and scans


@dataclass(frozen=True)
class GrowthConstants:
    """Constants bounding log F on the curve part.

    ``lam`` and ``E``: the ultrametric constants, F(n) <= lam ** (E * |n|_1).
    ``heights``: per-coordinate slopes L_i with log F(n) <= sum_i L_i |n_i|.
    ``kappa``: Euclidean norm of ``heights``, so log F(n) <= kappa * |n|.
    """

    log_lam: float
    E: int
    heights: tuple
    kappa: float
    h: LogValue

    @property
    def log_C(self) -> float:
        """log of C = lam ** (E sqrt(d))."""
        return self.log_lam * self.E * math.sqrt(len(self.heights) or 1)


def growth_constants(spec: ActionSpec) -> GrowthConstants:
    base = spec.base()
    dim = base.d
    log_lam = 0.0
    E = 0
    heights = [0.0] * dim
    for c in base.curves:
        S = exceptional_places(c)
        E += c.mult * len(S)
        lp = math.log(c.p)
        for i, img in enumerate(c.images):
            for v in S:
                log_lam = max(log_lam, abs(abs_at(img, v)) * lp)
            heights[i] += c.mult * img.height() * lp
    kappa = math.sqrt(sum(x * x for x in heights))
    return GrowthConstants(log_lam, E, tuple(heights), kappa, entropy(spec))


def ultrametric_bound(spec: ActionSpec, s: Subgroup) -> float:
    """``||m||_1 * E * log lam`` for the short vector m of ``s`` (curve part only)."""
    k = growth_constants(spec)
    m = short_vector(s)
    return sum(abs(x) for x in m) * k.E * k.log_lam


def height_bound(spec: ActionSpec, s: Subgroup) -> float:
    """``h * index + min over short m of sum_i L_i |m_i|``: a valid upper bound for log F."""
    k = growth_constants(spec)
    m = short_vector(s)
    return float(k.h) * s.index + sum(L * abs(x) for L, x in zip(k.heights, m))


def minkowski_log_bound(spec: ActionSpec, index: int) -> float:
    """Upper bound for log F over every subgroup of the given index (unsuspended)."""
    k = growth_constants(spec)
    return float(k.h) * index + k.kappa * minkowski_radius(spec.d, index)


@dataclass
class GrowthScan:
    """Outcome of :func:`growth_scan`.

    ``g`` is the exact maximum of log F / index over the scanned subgroups
    (base subgroups for a suspension), attained first at ``argmax``.
    ``tail_bound`` strictly exceeds log F / index for every index above N.
    When ``certified``, ``g`` is the supremum over all subgroups; for a
    suspended action that supremum is the growth rate itself, otherwise
    ``tail_bound`` only bounds the growth rate (a lim sup) from above.
    """

    N: int
    g: LogValue
    argmax: Subgroup
    tail_bound: float
    certified: bool
    scanned: int
    constants: GrowthConstants

    @property
    def sup_is_growth_rate(self) -> bool:
        return self.certified and self.suspended

    suspended: bool = False


def growth_scan(spec: ActionSpec, N: int) -> GrowthScan:
    if N < 1:
        raise ValueError("N must be >= 1")
    require_mixing(spec)
    base = spec.base()
    if base.d < 2 and not spec.suspended:
        raise UnsupportedDimension("growth_scan needs d >= 2 (or a suspension)")
    best: LogValue | None = None
    arg = None
    scanned = 0
    for s in iter_subgroups_upto(base.d, N):
        val = LogValue.of(_count_unchecked(base, s), s.index)
        scanned += 1
        if best is None or val > best:
            best, arg = val, s
    k = growth_constants(spec)
    tail = float(k.h) + k.kappa * minkowski_radius(base.d, N) / N
    if k.kappa == 0:
        certified = best >= k.h
    else:
        certified = float(best) >= tail
    return GrowthScan(N, best, arg, tail, certified, scanned, k, suspended=spec.suspended)
