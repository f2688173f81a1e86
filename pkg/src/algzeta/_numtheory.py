"""Integer number theory helpers shared by several modules."""

from __future__ import annotations

from functools import lru_cache

from sympy import factorint as _sympy_factorint
from sympy import isprime as _sympy_isprime
from sympy import primerange


def isprime(n: int) -> bool:
    return n >= 2 and bool(_sympy_isprime(n))


@lru_cache(maxsize=4096)
def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of ``n >= 1`` as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError("factorint needs n >= 1")
    return {int(k): int(v) for k, v in _sympy_factorint(n).items()}


def primes_up_to(n: int) -> list[int]:
    """Primes ``<= n``."""
    return [int(q) for q in primerange(2, n + 1)] if n >= 2 else []


def order_in_group(is_one, power, group_order: int) -> int:
    """Order of an element in a finite group of known order.

    ``power(k)`` returns the element raised to ``k``; ``is_one`` tests the
    identity. Works for any finite group given callables.
    """
    order = group_order
    for ell in factorint(group_order):
        while order % ell == 0 and is_one(power(order // ell)):
            order //= ell
    return order


def multiplicative_order(a: int, n: int) -> int:
    """Smallest ``m >= 1`` with ``a**m == 1 (mod n)``; ``n`` prime, ``a`` a unit."""
    a %= n
    if a == 0:
        raise ValueError("not a unit")
    return order_in_group(lambda x: x == 1, lambda k: pow(a, k, n), n - 1)


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise ValueError(f"no primitive root mod {p}")


def discrete_log(a: int, p: int) -> int:
    """Exponent ``k`` in ``[0, p-1)`` with ``g**k == a (mod p)``, ``g`` the least primitive root.

    Brute force; characteristics in this engine are small.
    """
    a %= p
    g = primitive_root(p)
    x = 1
    for k in range(p - 1):
        if x == a:
            return k
        x = x * g % p
    raise ValueError(f"{a} is not a unit mod {p}")


def divisor_sum(n: int) -> int:
    total = 1
    for q, e in factorint(n).items():
        total *= (q ** (e + 1) - 1) // (q - 1)
    return total
