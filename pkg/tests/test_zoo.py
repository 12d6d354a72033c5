import hashlib
import json
import math
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from subnormal.permgroup import BoundExceeded, GroupError, p_parts, perm_order
from subnormal.zoo import (
    IRREDUCIBLE_POLYS,
    MATRIX_RECIPES,
    NAMED_GROUPS,
    PINNED_FILE_HASHES,
    FiniteField,
    alternating,
    central_quotient,
    classical_action,
    classical_group,
    classical_order,
    corpus,
    cyclic,
    dihedral,
    direct_product,
    field,
    frobenius20,
    load_named,
    mat_det,
    mat_identity,
    mat_mul,
    mat_rank,
    matrix_group,
    unipotent_of_jordan_type,
    preserves_bilinear,
    preserves_hermitian,
    psl2_7,
    quaternion8,
    scalar_center_order,
    symmetric,
    to_permutation,
    wreath_cyclic,
)

PRIME_POWERS = [
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37,
    41, 43, 47, 49, 53, 59, 61, 64, 67, 71, 73, 79, 81,
]


# ---------------------------------------------------------------------------
# finite fields

def test_every_supported_field_constructs():
    for q in PRIME_POWERS:
        F = field(q)
        assert F.q == q
        assert F.p ** F.k == q


def test_generator_has_full_multiplicative_order():
    for q in PRIME_POWERS:
        F = field(q)
        seen = set()
        a = 1
        for _ in range(q - 1):
            seen.add(a)
            a = F.mul[a][F.gen]
        assert a == 1
        assert len(seen) == q - 1


def test_field_rejects_non_prime_powers():
    with pytest.raises(GroupError):
        FiniteField(6)
    with pytest.raises(GroupError):
        FiniteField(12)


def test_field_rejects_parameters_outside_the_table():
    with pytest.raises(GroupError):
        FiniteField(128)


def test_f8_uses_the_shipped_modulus():
    assert field(8).modulus == (1, 1, 0, 1)  # 1 + x + x^3


def test_f9_generator_order_is_eight():
    F = field(9)
    assert F.k == 2 and F.p == 3
    assert F.pow(F.gen, 8) == 1
    assert F.pow(F.gen, 4) != 1 and F.pow(F.gen, 2) != 1


@given(st.sampled_from([4, 8, 9, 16, 25, 27]), st.data())
@settings(max_examples=60, deadline=None)
def test_frobenius_is_a_field_automorphism(q, data):
    F = field(q)
    a = data.draw(st.integers(min_value=0, max_value=q - 1))
    b = data.draw(st.integers(min_value=0, max_value=q - 1))
    assert F.frob[F.add[a][b]] == F.add[F.frob[a]][F.frob[b]]
    assert F.frob[F.mul[a][b]] == F.mul[F.frob[a]][F.frob[b]]


def test_inverse_table_round_trips():
    for q in (2, 9, 16, 27):
        F = field(q)
        for a in range(1, q):
            assert F.mul[a][F.inv[a]] == 1


def test_frob_power_cycles_with_period_k():
    for q in (16, 81):
        F = field(q)
        for a in range(q):
            assert F.frob_power(a, F.k) == a


# ---------------------------------------------------------------------------
# order formulas

def test_order_formula_examples():
    assert classical_order("SL", 2, 3) == 24
    assert classical_order("SU", 3, 3) == 6048
    assert classical_order("Sz", 4, 8) == 29120
    assert classical_order("Sp", 4, 3) == 51840
    assert classical_order("Sp", 6, 2) == 1451520
    assert classical_order("SU", 5, 2) == 13685760
    assert classical_order("GL", 2, 5) == 480


def test_center_order_formulas():
    assert scalar_center_order("SL", 2, 5) == 2
    assert scalar_center_order("SL", 3, 4) == 3
    assert scalar_center_order("SU", 3, 5) == 3
    assert scalar_center_order("SU", 4, 2) == 1
    assert scalar_center_order("Sp", 4, 3) == 2
    assert scalar_center_order("Sz", 4, 8) == 1


# ---------------------------------------------------------------------------
# shipped matrix groups

def test_every_shipped_recipe_validates():
    for family, n, q in MATRIX_RECIPES:
        mg = matrix_group(family, n, q)
        assert mg.expected_order == classical_order(family, n, q)
        assert all(len(M) == n for M in mg.matrices)


def test_matrix_generators_have_determinant_one():
    for family, n, q in MATRIX_RECIPES:
        mg = matrix_group(family, n, q)
        for M in mg.matrices:
            assert mat_det(mg.field, M) == 1


def test_matrix_generators_preserve_their_forms():
    for family, n, q in MATRIX_RECIPES:
        mg = matrix_group(family, n, q)
        if family in ("Sp", "Sz"):
            for M in mg.matrices:
                assert preserves_bilinear(mg.field, M, mg.form)
        elif family == "SU":
            for M in mg.matrices:
                assert preserves_hermitian(mg.field, M, mg.form)


def test_orthogonal_families_are_rejected():
    with pytest.raises(GroupError, match="outside the shipped parameter grid"):
        matrix_group("SOplus", 4, 3)
    with pytest.raises(GroupError, match="outside the shipped parameter grid"):
        matrix_group("SOminus", 4, 3)


def test_unknown_recipe_is_rejected():
    with pytest.raises(GroupError, match="no shipped recipe"):
        matrix_group("SL", 7, 2)


def test_form_predicates_detect_violations():
    F = field(9)
    J = ((0, 1), (1, 0))
    bad = ((1, 1), (0, 1))
    assert not preserves_hermitian(F, bad, J)
    F3 = field(3)
    Jalt = ((0, 1), (F3.neg[1], 0))
    assert preserves_bilinear(F3, ((1, 1), (0, 1)), Jalt)
    assert not preserves_bilinear(F3, ((1, 0), (0, 2)), Jalt)


# ---------------------------------------------------------------------------
# permutation actions

def test_sl2_3_vector_action():
    G = classical_group("SL", 2, 3)
    assert G.degree == 8
    assert G.order == 24


def test_su3_3_projective_action_has_28_points():
    G = classical_group("SU", 3, 3)
    assert G.degree == 28  # q^3 + 1 isotropic points at q = 3
    assert G.order == 6048


def test_suzuki_8_acts_on_65_points():
    G = classical_group("Sz", 4, 8)
    assert G.degree == 65  # q^2 + 1
    assert G.order == 29120


def test_all_actions_match_declared_degrees():
    for (family, n, q), recipe in MATRIX_RECIPES.items():
        G = classical_group(family, n, q)
        assert G.degree == recipe.degree


def test_projective_kernel_equals_scalar_center():
    for (family, n, q), recipe in MATRIX_RECIPES.items():
        mg = matrix_group(family, n, q)
        G = classical_group(family, n, q)
        if recipe.action == "projective":
            assert G.order * scalar_center_order(family, n, q) == mg.expected_order
        else:
            assert G.order == mg.expected_order


def test_sylow_order_matches_the_q_power_in_the_formula():
    for family, n, q in MATRIX_RECIPES:
        mg = matrix_group(family, n, q)
        p = mg.field.p
        if family in ("SL", "SU"):
            q_power = q ** (n * (n - 1) // 2)
        elif family == "Sp":
            q_power = q ** ((n // 2) ** 2)
        else:
            q_power = q * q
        order = mg.expected_order
        p_part = 1
        while order % p == 0:
            order //= p
            p_part *= p
        assert p_part == q_power


def test_matrix_to_perm_is_a_homomorphism():
    act = classical_action("SU", 3, 3)
    mg = act.mg
    A, B = mg.matrices[0], mg.matrices[1]
    pa, pb = act.matrix_to_perm(A), act.matrix_to_perm(B)
    prod = act.matrix_to_perm(mat_mul(mg.field, A, B))
    assert prod == tuple(pb[pa[i]] for i in range(len(pa)))


def test_action_point_numbering_is_deterministic():
    a1 = classical_action("SL", 3, 3)
    assert a1.points[0] == (1, 0, 0)
    assert a1.index[a1.points[5]] == 5


def test_orbit_bound_is_enforced():
    mg = matrix_group("SL", 2, 5)
    with pytest.raises(BoundExceeded):
        to_permutation(mg, "vectors", bound=5)


def test_mat_rank():
    F3 = field(3)
    assert mat_rank(F3, mat_identity(4)) == 4
    assert mat_rank(F3, ((0, 0), (0, 0))) == 0
    assert mat_rank(F3, ((1, 2), (2, 1))) == 1
    F4 = field(4)
    for M in matrix_group("SU", 5, 2).matrices:
        assert mat_rank(F4, M) == 5
        assert mat_det(F4, M) != 0


def test_unipotent_of_jordan_type():
    mg = matrix_group("SL", 2, 3)
    assert unipotent_of_jordan_type(mg, (2,)) == ((1, 1), (0, 1))
    with pytest.raises(GroupError, match="decreasing partition"):
        unipotent_of_jordan_type(mg, (1, 2))
    with pytest.raises(GroupError, match="no unipotent"):
        unipotent_of_jordan_type(mg, (1, 1))
    with pytest.raises(BoundExceeded):
        unipotent_of_jordan_type(matrix_group("Sp", 4, 3), (4,), bound=2)


def test_jordan_witness_transfers_to_the_permutation_side():
    act = classical_action("SL", 2, 3)
    u = act.matrix_to_perm(unipotent_of_jordan_type(act.mg, (2,)))
    assert perm_order(u) == 3
    act5 = classical_action("SU", 5, 2)
    M = unipotent_of_jordan_type(act5.mg, (4, 1))
    assert perm_order(act5.matrix_to_perm(M)) == 4


# ---------------------------------------------------------------------------
# quotients and products

def test_central_quotient_of_sl2_5():
    G = classical_group("SL", 2, 5)
    Q = central_quotient(G)
    assert Q.order == 60


def test_central_quotient_of_sl3_4():
    G = classical_group("SL", 3, 4)
    Q = central_quotient(G)
    assert Q.order == 20160


def test_central_quotient_with_trivial_center_is_identity():
    G = symmetric(5)
    assert central_quotient(G) is G


def test_direct_product_with_trivial_factor():
    G = symmetric(4)
    T = cyclic(1)
    P = direct_product(G, T)
    assert P.order == 24


def test_direct_product_s3_c2():
    P = direct_product(symmetric(3), cyclic(2))
    assert P.order == 12
    assert P.degree == 5


def test_direct_product_order_multiplies():
    A = alternating(5)
    P = direct_product(A, A)
    assert P.order == 3600


def test_wreath_cyclic_order():
    W = wreath_cyclic(cyclic(2), 4)
    assert W.order == 2**4 * 4


# ---------------------------------------------------------------------------
# small builtin groups

def test_builtin_group_orders():
    assert cyclic(12).order == 12
    assert symmetric(6).order == 720
    assert alternating(6).order == 360
    assert dihedral(14).order == 28
    assert quaternion8().order == 8
    assert psl2_7().order == 168
    assert frobenius20().order == 20


def test_quaternion8_has_a_unique_involution():
    Q = quaternion8()
    invs = [g for g in Q.iter_elements() if perm_order(g) == 2]
    assert len(invs) == 1


# ---------------------------------------------------------------------------
# named groups

def test_named_registry_orders():
    for name, (_, expected) in NAMED_GROUPS.items():
        G = load_named(name)
        assert G.order == expected


def test_named_groups_carry_provenance():
    for name in NAMED_GROUPS:
        G = load_named(name)
        assert isinstance(G.provenance, str) and G.provenance


def test_unknown_name_is_rejected():
    with pytest.raises(GroupError, match="no registry entry"):
        load_named("Monster")


def test_small_group_324_37_hash_pin_matches_the_shipped_file():
    pin = PINNED_FILE_HASHES["SmallGroup_324_37"]
    assert pin is not None
    raw = (
        resources.files("subnormal")
        .joinpath("data", "named", "SmallGroup_324_37.json")
        .read_bytes()
    )
    assert hashlib.sha256(raw).hexdigest() == pin


def test_named_files_record_their_expected_orders():
    for name, (filename, expected) in NAMED_GROUPS.items():
        raw = (
            resources.files("subnormal")
            .joinpath("data", "named", filename)
            .read_text()
        )
        doc = json.loads(raw)
        assert doc["expected_order"] == expected


def test_m12_is_transitive_of_degree_12():
    G = load_named("M12")
    assert G.degree == 12
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in G.gens:
            if g[x] not in orbit:
                orbit.add(g[x])
                frontier.append(g[x])
    assert len(orbit) == 12


# ---------------------------------------------------------------------------
# corpus

def test_corpus_has_at_least_twenty_small_groups():
    entries = corpus()
    assert len(entries) >= 20
    names = [name for name, _ in entries]
    assert len(set(names)) == len(names)
    for _, G in entries:
        assert G.order <= 2000


def test_corpus_spans_multiple_primes():
    primes = set()
    for _, G in corpus():
        n = G.order
        for p in (2, 3, 5, 7):
            if n % p == 0:
                primes.add(p)
    assert {2, 3, 5, 7} <= primes
