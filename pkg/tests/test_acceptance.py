"""Acceptance criteria, one test each; every test prints a PASS or FAIL line."""

from __future__ import annotations

import time
from fractions import Fraction

from algzeta._numtheory import primes_up_to
from algzeta.action import count_cyclic, count_fixed, entropy, growth_scan, height_bound, minkowski_log_bound, ultrametric_bound
from algzeta.factored import Factored, LogValue
from algzeta.funcfield import p_part
from algzeta.lattice import Subgroup, enumerate_subgroups, iter_subgroups_upto, sigma
from algzeta.oracle import cross_validate, oracle_count
from algzeta.primescan import PrimeScanConfig, prime_value_scan, qualifies
from algzeta.specio import load_spec
from algzeta.zeta import (
    classify_1d,
    orbit_sums,
    overconvergence_check,
    pole_cluster_scan,
    sandwich_check,
    zeta_coefficients,
)


def report(capsys, number, title, checks):
    failed = [name for name, ok in checks.items() if not ok]
    status = "FAIL" if failed else "PASS"
    detail = f" (failed: {', '.join(failed)})" if failed else ""
    with capsys.disabled():
        print(f"\n{status} criterion {number}: {title}{detail}")
    assert not failed


def spec(name):
    return load_spec(name).spec


def diag(*a):
    d = len(a)
    return Subgroup(d, tuple(tuple(a[i] if i == j else 0 for j in range(d)) for i in range(d)))


def cyclic(n):
    return Subgroup(1, ((n,),))


def partitions(n):
    """Euler's pentagonal recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p


def test_criterion_1_oracle_equivalence(capsys):
    start = time.perf_counter()
    rep = cross_validate(spec("ledrappier"), 48)
    elapsed = time.perf_counter() - start
    report(
        capsys,
        1,
        f"Ledrappier formula = oracle on all {len(rep.rows)} subgroups of index <= 48 ({elapsed:.1f} s)",
        {
            "exact match": rep.ok,
            "every subgroup": len(rep.rows) == sum(sigma(n) for n in range(1, 49)),
            "under 60 s": elapsed < 60,
        },
    )


def test_criterion_2_golden_values(capsys):
    led = spec("ledrappier")
    power_of_two = [s for k in range(9) for s in enumerate_subgroups(2, 2**k)]
    report(
        capsys,
        2,
        "Ledrappier golden values",
        {
            "F(diag(2^n-1)) = 2^(2^n-2), n = 1..4": all(
                count_fixed(led, diag(2**n - 1, 2**n - 1)) == 2 ** (2**n - 2) for n in range(1, 5)
            ),
            "F = 1 on index 2^k <= 256": all(count_fixed(led, s) == 1 for s in power_of_two),
            "F((3,0),(1,1)) = 4": count_fixed(led, Subgroup.parse("[3,1,0,1]")) == 4,
        },
    )


def test_criterion_3_suspension(capsys):
    led3 = spec("ledrappier3")
    scan = growth_scan(led3, 7)
    target = LogValue({2: Fraction(2, 3)})
    rings = pole_cluster_scan(led3, 9)
    rep = cross_validate(led3, 48)
    report(
        capsys,
        3,
        f"suspended Ledrappier: g = {scan.g} at {scan.argmax}, tail {scan.tail_bound:.4f}, "
        f"oracle on {len(rep.rows)} subgroups of L3",
        {
            "g = (2/3) log 2 exactly": scan.g == target,
            "tail certified below g": scan.certified and scan.tail_bound < float(target),
            "sup is the growth rate": scan.sup_is_growth_rate,
            "ring 2^(-2/3) of multiplicity 3": any(
                r.radius == Factored({2: Fraction(-2, 3)}) and r.multiplicity == 3 for r in rings
            ),
            "oracle agrees for index <= 48": rep.ok,
        },
    )


def test_criterion_4_single_automorphism(capsys):
    ps = spec("pshift")
    cls = classify_1d(ps)
    rows = overconvergence_check(ps, 10)
    half = Factored({2: -1})
    rational = classify_1d(spec("pshift_rational"))
    report(
        capsys,
        4,
        f"p-shift extension: {cls}; {rational}",
        {
            "F(n) = 2^(n - nu(n)), n <= 64": all(
                count_cyclic(ps, n) == Factored({2: n - p_part(n, 2)}) for n in range(1, 65)
            ),
            "oracle agrees, n <= 64": all(oracle_count(ps, cyclic(n)) == count_cyclic(ps, n) for n in range(1, 65)),
            "Boundary with bound 1/2": not cls.rational and [w.bound for w in cls.witnesses] == [half],
            "exactly 1/2 at n_k = 2^k, k <= 10": [r.n for r in rows] == [2**k for k in range(11)]
            and all(r.value == half for r in rows),
            "inverted {t} gives (1 - 2z)^-1": rational.rational and str(rational) == "Rational: zeta = (1 - 2 z)^-1",
        },
    )


def test_criterion_5_zeta(capsys):
    led_c = zeta_coefficients(orbit_sums(spec("ledrappier"), 100))
    point_c = zeta_coefficients(orbit_sums(spec("point"), 100))
    shift_c = zeta_coefficients(orbit_sums(spec("fullshift2"), 30))
    report(
        capsys,
        5,
        "zeta coefficients",
        {
            "Ledrappier integral to N = 100": len(led_c) == 101 and all(isinstance(c, int) for c in led_c),
            "trivial action gives partitions, k <= 100": point_c == partitions(100),
            "full 2-shift gives 2^k": shift_c == [2**k for k in range(31)],
        },
    )


def test_criterion_6_subgroup_counts(capsys):
    led3 = spec("ledrappier3")
    index3 = enumerate_subgroups(3, 3)
    a3 = orbit_sums(led3, 3)[3]
    report(
        capsys,
        6,
        f"subgroup counts; suspended Ledrappier a_3 = {a3}",
        {
            "|L2(n)| = sigma(n), n <= 200": all(len(enumerate_subgroups(2, n)) == sigma(n) for n in range(1, 201)),
            "|L3(q)| = q^2 + q + 1, q <= 50": all(
                len(enumerate_subgroups(3, q)) == q * q + q + 1 for q in primes_up_to(50)
            ),
            "a_3 = 22": a3 == 22,
            "oracle confirms a_3": sum(oracle_count(led3, s).value for s in index3) == 22,
        },
    )


def test_criterion_7_prime_scan(capsys):
    led = spec("ledrappier")
    scan = prime_value_scan(led, Fraction(1, 10), 600)
    above = [r for r in scan.rows if r.qualifying and r.above_threshold]
    cfg = PrimeScanConfig.for_spec(led, Fraction(1, 10))
    report(
        capsys,
        7,
        f"prime scan, eps = 1/10, q0 = {scan.q0:.2f}, {len(above)} qualifying primes in (q0, 600]",
        {
            "q0 near 110": 100 < scan.q0 < 120,
            "value set {1} above q0": bool(above) and all(r.values == (Factored(),) for r in above),
            "theorem echo": scan.theorem_echo and scan.C2 == 1,
            "5 qualifies": qualifies(cfg, 5),
            "7 does not": not qualifies(cfg, 7),
        },
    )


def test_criterion_8_bounds(capsys):
    bound_ok = True
    checked = 0
    for name in ("ledrappier", "mixed", "principal2", "point"):
        sp = spec(name)
        h = float(entropy(sp))
        for s in iter_subgroups_upto(2, 100):
            logF = count_fixed(sp, s).log()
            checked += 1
            bound_ok &= logF <= h * s.index + ultrametric_bound(sp, s) + 1e-9
            bound_ok &= logF <= height_bound(sp, s) + 1e-9
            bound_ok &= logF <= minkowski_log_bound(sp, s.index) + 1e-9
    rows = sandwich_check(spec("mixed"), 100)
    report(
        capsys,
        8,
        f"ultrametric and Minkowski bounds on {checked} counts; sandwich for n <= 100",
        {
            "bounds hold for index <= 100": bound_ok,
            "sandwich holds, mixed, n <= 100": len(rows) == 100 and all(r.holds for r in rows),
        },
    )
