"""Brute-force periodic point counts by linear algebra in F_p[Z^d / L].

For a curve component with defining polynomial f the module is taken to be
the localisation of R_d/(f) at the inverted polynomials. Modulo the subgroup
L this is the finite algebra A = F_p[G]/(f), G = Z^d/L, localised at the
element s* obtained by lifting every inverted polynomial to the group ring.
A localisation of a finite commutative algebra at one element is the
eventual image of multiplication by that element, so

    |S^-1 A| = p ** (rank(s*^N F_p[G] + f F_p[G]) - rank(f F_p[G]))

for any N >= dim A. Nothing here touches valuations or gcds.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from ._table import ordered_map, render
from .action import ActionSpec, Curve, Principal, count_fixed
from .errors import NoDefiningPoly, OutOfBudget, UnliftableInversion, UnsupportedDimension
from .factored import Factored
from .funcfield import MPoly, PolyFp, RatFunc
from .lattice import Subgroup, iter_subgroups_upto

DEFAULT_CAP = 2500


class GroupAlgebra:
    """F_p[Z^d / L] on the box representatives 0 <= r_i < a_i."""

    def __init__(self, p: int, quotient: Subgroup):
        self.p = p
        self.quotient = quotient
        self.basis = list(product(*[range(a) for a in quotient.diagonal]))
        self.position = {r: i for i, r in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomial(self, e: Sequence[int]) -> int:
        return self.position[self.quotient.reduce(e)]

    def element(self, terms: dict) -> dict:
        """Sparse element {basis position: coefficient} from {exponent vector: coefficient}."""
        out: dict[int, int] = {}
        for e, c in terms.items():
            i = self.monomial(e)
            out[i] = (out.get(i, 0) + c) % self.p
        return {i: c for i, c in out.items() if c}

    def mul(self, x: dict, y: dict) -> dict:
        out: dict[int, int] = {}
        for i, a in x.items():
            ri = self.basis[i]
            for j, b in y.items():
                k = self.monomial([u + v for u, v in zip(ri, self.basis[j])])
                out[k] = (out.get(k, 0) + a * b) % self.p
        return {i: c for i, c in out.items() if c}

    def frobenius_power(self, x: dict, k: int) -> dict:
        """x ** (p ** k): coefficients are fixed by Frobenius and exponents scale."""
        q = self.p**k
        out: dict[int, int] = {}
        for i, c in x.items():
            j = self.monomial([q * v for v in self.basis[i]])
            out[j] = (out.get(j, 0) + c) % self.p
        return {i: c for i, c in out.items() if c}

    def multiples(self, x: dict) -> list:
        """The vectors x * u^r for every basis r, spanning the ideal (x)."""
        vecs = []
        for r in self.basis:
            col: dict[int, int] = {}
            for i, c in x.items():
                k = self.monomial([u + v for u, v in zip(r, self.basis[i])])
                col[k] = (col.get(k, 0) + c) % self.p
            vecs.append(col)
        return vecs


def _rank_gf2(vectors: list[dict]) -> int:
    pivots: dict[int, int] = {}
    for v in vectors:
        x = 0
        for i, c in v.items():
            if c:
                x |= 1 << i
        while x:
            top = x.bit_length() - 1
            if top in pivots:
                x ^= pivots[top]
            else:
                pivots[top] = x
                break
    return len(pivots)


def _rank_mod_p(vectors: list[dict], p: int) -> int:
    pivots: dict[int, dict] = {}  # lead index -> vector normalised to lead 1
    for v in vectors:
        x = {i: c % p for i, c in v.items() if c % p}
        while x:
            lead = max(x)
            if lead not in pivots:
                inv = pow(x[lead], -1, p)
                pivots[lead] = {i: c * inv % p for i, c in x.items()}
                break
            scale = x[lead]
            for i, c in pivots[lead].items():
                x[i] = (x.get(i, 0) - scale * c) % p
                if not x[i]:
                    del x[i]
    return len(pivots)


def rank(vectors: list[dict], p: int) -> int:
    """Rank over F_p of sparse vectors."""
    return _rank_gf2(vectors) if p == 2 else _rank_mod_p(vectors, p)


def _lift(c: Curve, v: PolyFp, d: int) -> dict:
    """An exponent-vector expression of ``v`` in the u-coordinates."""
    rv = RatFunc(v)
    for i, img in enumerate(c.images):
        if img == rv:
            return {tuple(int(k == i) for k in range(d)): 1}
    for i, img in enumerate(c.images):
        if img == RatFunc.t(c.p):
            return {tuple(k if m == i else 0 for m in range(d)): a for k, a in enumerate(v.coeffs) if a}
    raise UnliftableInversion(f"inverted polynomial {v} has no expression in the u-coordinates")


def _defining_terms(c: Curve, d: int) -> dict:
    if c.defining_poly is None:
        if c.d == 1 and c.images[0] == RatFunc.t(c.p):
            return {}
        raise NoDefiningPoly("the oracle needs a defining polynomial for this curve")
    f: MPoly = c.defining_poly.padded(d)
    return dict(f.terms)


def oracle_exponent(c: Curve, s: Subgroup, cap: int = DEFAULT_CAP, extra_power: int = 0) -> int:
    """log_p of the curve's count on ``s`` (multiplicity included), by rank computations.

    ``extra_power`` raises the localising exponent by further factors of p;
    the result must not change.
    """
    if s.index > cap:
        raise OutOfBudget(f"index {s.index} exceeds the matrix cap {cap}")
    if s.d < c.d:
        raise UnsupportedDimension("subgroup dimension is below the curve's")
    d = s.d
    f_terms = _defining_terms(c, d)
    alg = GroupAlgebra(c.p, s)
    f = alg.element(f_terms)
    star = {alg.monomial((0,) * d): 1}
    for v in c.inverted:
        star = alg.mul(star, alg.element(_lift(c, v, d)))
    k = 0
    while c.p**k < alg.dim:
        k += 1
    star = alg.frobenius_power(star, k + extra_power)
    f_vecs = alg.multiples(f) if f else []
    base = rank(f_vecs, c.p)
    full = rank(f_vecs + alg.multiples(star), c.p)
    return c.mult * (full - base)


def oracle_count(spec: ActionSpec, s: Subgroup, cap: int = DEFAULT_CAP) -> Factored:
    """Product over components of the brute-force counts."""
    if s.d != spec.d:
        raise UnsupportedDimension(f"subgroup of Z^{s.d} for a Z^{spec.d}-action")
    exps: dict[int, int] = {}
    for c in spec.components:
        if isinstance(c, Principal):
            e = c.mult * s.index
        else:
            e = oracle_exponent(c, s, cap)
        exps[c.p] = exps.get(c.p, 0) + e
    return Factored(exps)


@dataclass(frozen=True)
class Comparison:
    subgroup: Subgroup
    formula: Factored
    oracle: Factored

    @property
    def match(self) -> bool:
        return self.formula == self.oracle


@dataclass
class ValidationReport:
    rows: list

    @property
    def mismatches(self) -> list:
        return [r for r in self.rows if not r.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def table(self, decimal: bool = False, fmt: str = "csv") -> str:
        show = (lambda x: x.value) if decimal else str
        return render(
            ["index", "hnf", "formula_count", "oracle_count", "match"],
            ([r.subgroup.index, r.subgroup, show(r.formula), show(r.oracle), r.match] for r in self.rows),
            fmt,
        )


def _compare(args) -> Comparison:
    spec, s, cap = args
    return Comparison(s, count_fixed(spec, s), oracle_count(spec, s, cap))


def cross_validate(spec: ActionSpec, max_index: int, cap: int = DEFAULT_CAP, jobs: int = 1) -> ValidationReport:
    """Compare formula and oracle counts on every subgroup of index <= ``max_index``."""
    tasks = [(spec, s, cap) for s in iter_subgroups_upto(spec.d, max_index)]
    return ValidationReport(ordered_map(_compare, tasks, jobs, chunksize=32))
