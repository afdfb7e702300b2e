"""
Number-theoretic helpers.

Thin wrappers around sympy's integer routines plus the few searches the
character enumerations need (primes congruent to 1 mod N, roots of unity
modulo a prime).
"""

from functools import lru_cache
from typing import List

from sympy import factorint, isprime, primitive_root, totient
from sympy.ntheory.residue_ntheory import n_order


def moebius(k: int) -> int:
    """
    Moebius function mu(k).

    Args:
        k: Positive integer

    Returns:
        0 if k has a square factor, else (-1)**(number of prime factors)

    Raises:
        ValueError: If k < 1
    """
    if k < 1:
        raise ValueError(f"moebius is defined for k >= 1, got {k}")
    exponents = factorint(k)
    if any(e > 1 for e in exponents.values()):
        return 0
    return -1 if len(exponents) % 2 else 1


def divisors(k: int) -> List[int]:
    """Positive divisors of k in increasing order."""
    small, large = [], []
    d = 1
    while d * d <= k:
        if k % d == 0:
            small.append(d)
            if d * d != k:
                large.append(k // d)
        d += 1
    return small + large[::-1]


def euler_phi(k: int) -> int:
    return int(totient(k))


def multiplicative_order(q: int, p: int) -> int:
    """
    ord_p(q): least s >= 1 with p | q**s - 1.

    Raises:
        ValueError: If p divides q (no such s exists)
    """
    if q % p == 0:
        raise ValueError(f"{q} is not a unit modulo {p}")
    if p == 1:
        return 1
    return int(n_order(q % p, p))


def is_prime(k: int) -> bool:
    return bool(isprime(k))


@lru_cache(maxsize=256)
def primes_congruent_one(modulus: int, count: int, above: int = 10**6) -> tuple:
    """
    The first `count` primes l > above with l = 1 (mod modulus).

    Every such prime field contains a primitive modulus-th root of unity.
    """
    primes = []
    k = above // modulus + 1
    while len(primes) < count:
        candidate = k * modulus + 1
        if candidate > above and isprime(candidate):
            primes.append(candidate)
        k += 1
    return tuple(primes)


@lru_cache(maxsize=256)
def root_of_unity_mod(order: int, prime: int) -> int:
    """
    A primitive order-th root of unity modulo prime.

    Raises:
        ValueError: If order does not divide prime - 1
    """
    if (prime - 1) % order:
        raise ValueError(f"F_{prime} has no primitive root of unity of order {order}")
    g = int(primitive_root(prime))
    return pow(g, (prime - 1) // order, prime)
