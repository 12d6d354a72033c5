"""Small number-theoretic helpers shared by the group and cyclotomic engines."""

from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy


def factorint(n):
    """Prime factorisation of n as a dict prime -> exponent."""
    return {int(p): int(e) for p, e in sympy.factorint(int(n)).items()}


def prime_divisors(n):
    """Sorted list of primes dividing n."""
    return sorted(factorint(n)) if n > 1 else []


def is_prime(n):
    return sympy.isprime(int(n))


def v_p(n, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return v_p(n.numerator, p) - v_p(n.denominator, p)
    n = abs(int(n))
    if n == 0:
        raise ValueError("valuation of zero")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def p_part_int(n, p):
    """Largest power of p dividing the positive integer n."""
    return p ** v_p(n, p)


def coprime_part(n, p):
    """n with all factors of p removed."""
    return n // p_part_int(n, p)


@lru_cache(maxsize=None)
def unit_group(n):
    """All units of Z/n as a sorted tuple."""
    if n <= 1:
        return (0,) if n == 1 else ()
    return tuple(u for u in range(1, n) if gcd(u, n) == 1)


@lru_cache(maxsize=None)
def unit_group_generators(n):
    """A generating set for (Z/n)^* built from the CRT decomposition.

    For odd prime powers a primitive root generates; for 2^k with k >= 3 the
    classes of -1 and 5 do. Components are glued by CRT.
    """
    if n <= 2:
        return ()
    gens = []
    for p, e in factorint(n).items():
        q = p**e
        rest = n // q
        if p == 2:
            locals_ = [q - 1, 5] if e >= 3 else ([q - 1] if e == 2 else [])
        else:
            locals_ = [int(sympy.primitive_root(q))]
        for g in locals_:
            gens.append(int(sympy.ntheory.modular.crt([q, rest], [g, 1])[0])
                        if rest > 1 else g % n)
    return tuple(sorted(set(g for g in gens if g % n != 1 % n)))


def subgroup_closure(n, gens):
    """Subgroup of (Z/n)^* generated by gens, as a frozenset."""
    one = 1 % n
    seen = {one}
    frontier = [one]
    gens = [g % n for g in gens]
    for g in gens:
        if gcd(g, n) != 1:
            raise ValueError(f"{g} is not a unit mod {n}")
    while frontier:
        u = frontier.pop()
        for g in gens:
            v = (u * g) % n
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return frozenset(seen)


def unit_preimage(n, m, subset):
    """Units of Z/n whose reduction mod m lies in subset (m | n)."""
    if n % m:
        raise ValueError("m must divide n")
    subset = {u % m for u in subset}
    return frozenset(u for u in unit_group(n) if u % m in subset)


def crt_pair(r1, m1, r2, m2):
    """The residue mod lcm(m1,m2) matching r1 mod m1 and r2 mod m2."""
    res = sympy.ntheory.modular.crt([m1, m2], [r1, r2])
    if res is None:
        raise ValueError("incompatible congruences")
    r, m = res
    return int(r) % int(m)


def smallest_prime_one_mod(m, lower_bound):
    """Smallest prime l with l == 1 (mod m) and l > lower_bound."""
    k = max(1, int(lower_bound) // m)
    while True:
        cand = k * m + 1
        if cand > lower_bound and sympy.isprime(cand):
            return cand
        k += 1


def primitive_root(p):
    """Smallest primitive root modulo the prime p."""
    return int(sympy.primitive_root(p))
