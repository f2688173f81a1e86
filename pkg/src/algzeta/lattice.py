"""Finite-index subgroups of Z^d in Hermite normal form, plus divisor sums.

A subgroup is stored as an upper-triangular integer matrix whose COLUMNS
generate it::

    [[a1, b12, b13],
     [0,  a2,  b23],
     [0,  0,   a3 ]]      0 <= b_mn < a_m

With columns as generators, the top-left k x k block spans the
intersection of the subgroup with Z^k x {0}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from . import _numtheory as nt
from .errors import InvalidIndex, NoSolution, NotFiniteIndex, SpecFormatError, UnsupportedDimension

MAX_DIMENSION = 3


@dataclass(frozen=True)
class Subgroup:
    d: int
    hnf: tuple  # row-major tuple of row tuples

    @property
    def index(self) -> int:
        return math.prod(self.hnf[i][i] for i in range(self.d))

    @property
    def diagonal(self) -> tuple:
        return tuple(self.hnf[i][i] for i in range(self.d))

    @property
    def columns(self) -> list[tuple]:
        return [tuple(self.hnf[i][j] for i in range(self.d)) for j in range(self.d)]

    def sort_key(self) -> tuple:
        off = tuple(self.hnf[m][n] for m in range(self.d) for n in range(m + 1, self.d))
        return self.diagonal + off

    def to_list(self) -> list[int]:
        return [x for row in self.hnf for x in row]

    def __str__(self):
        return "[" + ",".join(map(str, self.to_list())) + "]"

    def top_left(self, k: int) -> "Subgroup":
        """The subgroup of Z^k spanned by the first ``k`` columns (their top ``k`` rows)."""
        return Subgroup(k, tuple(tuple(self.hnf[i][:k]) for i in range(k)))

    def reduce(self, v: Sequence[int]) -> tuple:
        """Canonical coset representative ``r`` with ``0 <= r_i < a_i``."""
        r = list(v)
        for i in range(self.d - 1, -1, -1):
            q = r[i] // self.hnf[i][i]
            if q:
                for m in range(i + 1):
                    r[m] -= q * self.hnf[m][i]
        return tuple(r)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "Subgroup":
        """Row-major integer list, e.g. ``"[3,1,0,1]"`` or ``"3,1,0,1"``.

        The matrix is read with columns as generators and canonicalised, so
        any generator matrix of full rank is accepted.
        """
        try:
            vals = [int(x) for x in text.strip().strip("[]").split(",") if x.strip()]
        except ValueError:
            raise SpecFormatError(f"bad subgroup {text!r}") from None
        k = math.isqrt(len(vals))
        if k * k != len(vals) or k == 0 or (d is not None and k != d):
            raise SpecFormatError(f"{text!r} is not a {d or 'square'} x {d or 'square'} matrix")
        cols = [tuple(vals[i * k + j] for i in range(k)) for j in range(k)]
        return hnf_canonicalize(k, cols)


def _check_dim(d: int) -> None:
    if not 1 <= d <= MAX_DIMENSION:
        raise UnsupportedDimension(f"dimension {d} outside 1..{MAX_DIMENSION}")


def _ordered_factorisations(n: int, d: int):
    if d == 1:
        yield (n,)
        return
    for a in range(1, n + 1):
        if n % a == 0:
            for rest in _ordered_factorisations(n // a, d - 1):
                yield (a,) + rest


def _enumerate_any_d(d: int, n: int) -> list[Subgroup]:
    out = []
    slots = [(m, k) for m in range(d) for k in range(m + 1, d)]
    for diag in _ordered_factorisations(n, d):
        for offs in product(*[range(diag[m]) for m, _ in slots]):
            rows = [[0] * d for _ in range(d)]
            for i in range(d):
                rows[i][i] = diag[i]
            for (m, k), b in zip(slots, offs):
                rows[m][k] = b
            out.append(Subgroup(d, tuple(tuple(r) for r in rows)))
    out.sort(key=Subgroup.sort_key)
    return out


@lru_cache(maxsize=512)
def _enumerate_cached(d: int, n: int) -> tuple:
    return tuple(_enumerate_any_d(d, n))


def enumerate_subgroups(d: int, n: int) -> list[Subgroup]:
    """Every index-``n`` subgroup of Z^d once, ordered by (a_1..a_d, b_12, b_13, ...)."""
    _check_dim(d)
    if n <= 0:
        raise InvalidIndex(f"index must be positive, got {n}")
    return list(_enumerate_cached(d, n))


def iter_subgroups_upto(d: int, n_max: int):
    """Subgroups of index 1..n_max in index order."""
    for n in range(1, n_max + 1):
        yield from enumerate_subgroups(d, n)


def _hnf_columns(d: int, generators: Sequence[Sequence[int]]) -> list[list[int]]:
    # work on a list of column vectors
    active = [list(g) for g in generators if any(g)]
    for g in active:
        if len(g) != d:
            raise ValueError(f"generator {g} does not have length {d}")
    pivots: list[list[int]] = [None] * d  # type: ignore[list-item]
    for i in range(d - 1, -1, -1):
        while True:
            nz = [c for c in active if c[i] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda c: abs(c[i]))
            for c in nz:
                if c is not piv:
                    q = c[i] // piv[i]
                    for m in range(d):
                        c[m] -= q * piv[m]
        nz = [c for c in active if c[i] != 0]
        if not nz:
            raise NotFiniteIndex("generators span a subgroup of rank < d")
        piv = nz[0]
        if piv[i] < 0:
            piv[:] = [-x for x in piv]
        pivots[i] = piv
        active = [c for c in active if c is not piv and any(c)]
    for n in range(d):
        for m in range(n - 1, -1, -1):
            q = pivots[n][m] // pivots[m][m]
            if q:
                for r in range(d):
                    pivots[n][r] -= q * pivots[m][r]
    return pivots


def hnf_canonicalize(d: int, generators: Sequence[Sequence[int]]) -> Subgroup:
    """The HNF Subgroup equal to the integer span of ``generators``."""
    cols = _hnf_columns(d, generators)
    return Subgroup(d, tuple(tuple(cols[j][i] for j in range(d)) for i in range(d)))


def _sign_normalise(v: tuple) -> tuple:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _norm2(v) -> int:
    return sum(x * x for x in v)


def short_vector(s: Subgroup) -> tuple:
    """A nonzero vector of minimal Euclidean norm in ``s``.

    Ties go to the lexicographically smallest vector after normalising the
    sign so the first nonzero coordinate is positive.
    """
    d, H = s.d, s.hnf
    bound = min(_norm2(c) for c in s.columns)
    best: list[tuple] = []
    best_n2 = bound

    def walk(i: int, coef: list[int], partial: int):
        nonlocal best, best_n2
        if i < 0:
            x = tuple(sum(H[m][j] * coef[j] for j in range(d)) for m in range(d))
            if not any(x):
                return
            n2 = _norm2(x)
            if n2 < best_n2:
                best_n2, best = n2, [x]
            elif n2 == best_n2:
                best.append(x)
            return
        shift = sum(H[i][j] * coef[j] for j in range(i + 1, d))
        a = H[i][i]
        room = best_n2 - partial
        if room < 0:
            return
        r = math.isqrt(room) + 1
        lo = -((r + shift) // a) - 1
        hi = (r - shift) // a + 1
        for c in range(lo, hi + 1):
            xi = a * c + shift
            if xi * xi > room:
                continue
            coef[i] = c
            walk(i - 1, coef, partial + xi * xi)
        coef[i] = 0

    walk(d - 1, [0] * d, 0)
    return min(_sign_normalise(v) for v in best)


def minkowski_radius(d: int, index: int) -> float:
    """Radius r of a Euclidean ball guaranteed to hold a nonzero subgroup vector.

    Minkowski's convex body theorem: vol(B_r) = 2**d * index. For d = 2 this is
    ``2 * sqrt(index / pi)``; it never exceeds the cube bound ``sqrt(d) * index**(1/d)``.
    """
    unit_ball = math.pi ** (d / 2) / math.gamma(d / 2 + 1)
    return (2**d * index / unit_ball) ** (1 / d)


def sigma(n: int) -> int:
    """Sum of the positive divisors of ``n``."""
    if n <= 0:
        raise InvalidIndex(f"sigma needs n >= 1, got {n}")
    return nt.divisor_sum(n)


def gronwall_witness(t: int, q: int, k: int) -> tuple[int, float]:
    """Smallest N = t (mod q) divisible by every prime <= k not dividing q.

    Returns ``(N, sigma(N) / (N log log N))``; the ratio is ``inf`` when
    ``log log N <= 0``.
    """
    if q < 1 or not 0 <= t < q or k < 3:
        raise ValueError("need q >= 1, 0 <= t < q, k >= 3")
    nk = math.prod(p for p in nt.primes_up_to(k) if q % p)
    g = math.gcd(q, nk)
    if t % g:
        raise NoSolution(f"no N = {t} mod {q} divisible by {nk}")
    y = (t // g) * pow(nk // g, -1, q // g) % (q // g) if q // g > 1 else 0
    N = nk * y
    if N == 0:
        N = nk * (q // g)
    loglog = math.log(math.log(N)) if N > math.e else 0.0
    ratio = sigma(N) / (N * loglog) if loglog > 0 else math.inf
    return N, ratio


# --------------------------------------------------------------------------
# integer kernels, used by the mixing check


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple]:
    """Basis of {x in Z^ncols : rows . x = 0} by unimodular column operations."""
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns tracked

    def colop(dst: int, src: int, q: int):
        for r in A:
            r[dst] -= q * r[src]
        for r in U:
            r[dst] -= q * r[src]

    def swap(a: int, b: int):
        for r in A:
            r[a], r[b] = r[b], r[a]
        for r in U:
            r[a], r[b] = r[b], r[a]

    rank = 0
    for row in A:
        if rank == ncols:
            break
        while True:
            nz = [j for j in range(rank, ncols) if row[j] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda j: abs(row[j]))
            for j in nz:
                if j != piv:
                    colop(j, piv, row[j] // row[piv])
        nz = [j for j in range(rank, ncols) if row[j] != 0]
        if nz:
            swap(rank, nz[0])
            rank += 1
    return [tuple(U[i][j] for i in range(ncols)) for j in range(rank, ncols)]


def shortest_in_span(basis: Sequence[Sequence[int]], d: int) -> tuple:
    """Shortest nonzero vector of the lattice spanned by linearly independent ``basis``.

    Rank 1 and full rank are exact by construction; rank 2 inside Z^3 uses
    Lagrange-Gauss reduction. Ties are broken as in :func:`short_vector`.
    """
    basis = [tuple(b) for b in basis]
    if len(basis) == 1:
        return _sign_normalise(basis[0])
    if len(basis) == d:
        return short_vector(hnf_canonicalize(d, basis))
    if len(basis) != 2:
        raise ValueError("basis rank must be 1, 2 or d")
    u, v = basis

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    while True:
        if _norm2(u) > _norm2(v):
            u, v = v, u
        mu = round(Fraction(dot(u, v), _norm2(u)))
        if mu == 0:
            break
        v = tuple(y - mu * x for x, y in zip(u, v))
    n2 = _norm2(u)
    cands = [
        tuple(a * x + b * y for x, y in zip(u, v))
        for a in range(-2, 3)
        for b in range(-2, 3)
        if (a, b) != (0, 0)
    ]
    return min(_sign_normalise(c) for c in cands if _norm2(c) == n2)
