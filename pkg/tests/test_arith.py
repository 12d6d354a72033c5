from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from subnormal.arith import (
    coprime_part,
    crt_pair,
    factorint,
    p_part_int,
    prime_divisors,
    primitive_root,
    smallest_prime_one_mod,
    subgroup_closure,
    unit_group,
    unit_group_generators,
    unit_preimage,
    v_p,
)


def test_factorint_basic():
    assert factorint(360) == {2: 3, 3: 2, 5: 1}
    assert factorint(1) == {}
    assert prime_divisors(360) == [2, 3, 5]
    assert prime_divisors(1) == []


def test_valuation():
    assert v_p(48, 2) == 4
    assert v_p(48, 3) == 1
    assert v_p(48, 5) == 0
    assert v_p(Fraction(8, 3), 2) == 3
    assert v_p(Fraction(8, 3), 3) == -1
    with pytest.raises(ValueError):
        v_p(0, 2)


def test_p_part():
    assert p_part_int(360, 2) == 8
    assert p_part_int(360, 7) == 1
    assert coprime_part(360, 2) == 45
    assert coprime_part(360, 3) == 40


@given(st.integers(min_value=1, max_value=10**6), st.sampled_from([2, 3, 5, 7, 11]))
def test_p_part_times_coprime(n, p):
    assert p_part_int(n, p) * coprime_part(n, p) == n
    assert coprime_part(n, p) % p != 0


def test_unit_group():
    assert unit_group(12) == (1, 5, 7, 11)
    assert unit_group(1) == (0,)
    assert len(unit_group(40)) == 16


@given(st.integers(min_value=3, max_value=400))
def test_unit_group_generators_generate(n):
    gens = unit_group_generators(n)
    assert subgroup_closure(n, gens) == frozenset(unit_group(n))


def test_subgroup_closure():
    assert subgroup_closure(8, [3]) == frozenset({1, 3})
    assert subgroup_closure(8, [3, 5]) == frozenset({1, 3, 5, 7})
    with pytest.raises(ValueError):
        subgroup_closure(8, [2])


def test_unit_preimage():
    # units of Z/12 reducing to 1 mod 4
    assert unit_preimage(12, 4, {1}) == frozenset({1, 5})
    with pytest.raises(ValueError):
        unit_preimage(12, 5, {1})


def test_crt_pair():
    r = crt_pair(2, 3, 3, 5)
    assert r % 3 == 2 and r % 5 == 3
    with pytest.raises(ValueError):
        crt_pair(0, 2, 1, 4)


def test_smallest_prime_one_mod():
    # frozen instances used by the exact character-table prime choice
    assert smallest_prime_one_mod(12, 20) == 37
    assert smallest_prime_one_mod(1820, 342) == 14561
    assert smallest_prime_one_mod(180, 456) == 541
    assert smallest_prime_one_mod(120, 44) == 241


def test_primitive_root():
    p = 541
    g = primitive_root(p)
    seen = set()
    x = 1
    for _ in range(p - 1):
        x = x * g % p
        seen.add(x)
    assert len(seen) == p - 1
