#!/usr/bin/env python3
"""Generate the frozen matrix-generator and named-group data files.

Deterministic: fixed seeds, fixed pool enumeration order.  Every emitted
file is re-validated through the package's own loaders before the script
reports success.  Run from anywhere; paths are anchored to this file.
"""

import hashlib
import json
import random
import sys
from collections import deque
from pathlib import Path
from types import SimpleNamespace

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from subnormal import zoo
from subnormal.permgroup import (
    PermGroup,
    centralizer,
    conjugacy_classes,
    dump_group_file,
    is_normal,
    is_subnormal,
    perm_order,
)
from subnormal.zoo import (
    classical_order,
    field,
    mat_det,
    mat_identity,
    mat_mul,
    preserves_bilinear,
    preserves_hermitian,
    scalar_center_order,
    vec_mat,
)

MATRIX_DIR = ROOT / "src" / "subnormal" / "data" / "matrix"
NAMED_DIR = ROOT / "src" / "subnormal" / "data" / "named"


# ---------------------------------------------------------------------------
# permutation actions used for verification

def all_nonzero_vectors(q, n):
    vecs = []
    for code in range(1, q**n):
        v = []
        c = code
        for _ in range(n):
            v.append(c % q)
            c //= q
        vecs.append(tuple(v))
    return vecs


def vector_group(F, n, mats):
    vecs = all_nonzero_vectors(F.q, n)
    index = {v: i for i, v in enumerate(vecs)}
    perms = tuple(
        tuple(index[vec_mat(F, v, M)] for v in vecs) for M in mats
    )
    return PermGroup(perms, len(vecs))


def orbit_size(F, n, mats, action, cap):
    if action == "projective":
        inv, mul = F.inv, F.mul

        def canon(v):
            lead = next(x for x in v if x)
            if lead == 1:
                return v
            fac = inv[lead]
            return tuple(mul[fac][x] for x in v)

    else:

        def canon(v):
            return v

    seed = canon((1,) + (0,) * (n - 1))
    seen = {seed}
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for M in mats:
            w = canon(vec_mat(F, v, M))
            if w not in seen:
                if len(seen) >= cap:
                    return cap + 1
                seen.add(w)
                queue.append(w)
    return len(seen)


def natural_group(F, n, mats, action):
    mg = SimpleNamespace(field=F, n=n, matrices=tuple(mats))
    return zoo.MatrixAction(mg, action).group


# ---------------------------------------------------------------------------
# generator pools per family

def sl_pool(F, n):
    """Elementary transvections plus the signed basis cycle."""
    pool = []
    cyc = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        cyc[i][i + 1] = 1
    cyc[n - 1][0] = 1 if n % 2 else F.neg[1]
    pool.append(tuple(map(tuple, cyc)))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for s in range(F.k):
                M = [list(r) for r in mat_identity(n)]
                M[i][j] = F.pow(F.gen, s)
                pool.append(tuple(map(tuple, M)))
    return pool


def sp_form(F, n):
    J = [[0] * n for _ in range(n)]
    for i in range(n // 2):
        J[i][n - 1 - i] = 1
    for i in range(n // 2, n):
        J[i][n - 1 - i] = F.neg[1]
    return tuple(map(tuple, J))


def herm_form(F, n):
    J = [[0] * n for _ in range(n)]
    for i in range(n):
        J[i][n - 1 - i] = 1
    return tuple(map(tuple, J))


def _short_vectors(F, n, coords):
    """Nonzero vectors supported on at most `coords` positions."""
    from itertools import combinations, product

    out = []
    for support in range(1, coords + 1):
        for pos in combinations(range(n), support):
            for vals in product(range(1, F.q), repeat=support):
                v = [0] * n
                for p_, x in zip(pos, vals):
                    v[p_] = x
                out.append(tuple(v))
    return out


def sp_pool(F, n, J, coords=2):
    add, mul = F.add, F.mul
    pool = []
    for v in _short_vectors(F, n, coords):
        u = []
        for i in range(n):
            acc = 0
            for t in range(n):
                acc = add[acc][mul[J[i][t]][v[t]]]
            u.append(acc)
        for c in range(1, F.q):
            M = [list(r) for r in mat_identity(n)]
            for i in range(n):
                if u[i]:
                    fac = mul[c][u[i]]
                    for j in range(n):
                        if v[j]:
                            M[i][j] = add[M[i][j]][mul[fac][v[j]]]
            M = tuple(map(tuple, M))
            assert preserves_bilinear(F, M, J) and mat_det(F, M) == 1
            pool.append(M)
    return pool


def su_pool(F, n, J):
    add, mul = F.add, F.mul
    cj = F.k // 2

    def herm(u, v):
        acc = 0
        for s in range(n):
            if u[s]:
                for t in range(n):
                    if J[s][t]:
                        acc = add[acc][
                            mul[u[s]][mul[J[s][t]][F.frob_power(v[t], cj)]]
                        ]
        return acc

    directions = []
    seen = set()
    for v in all_nonzero_vectors(F.q, n):
        lead = next(x for x in v if x)
        fac = F.inv[lead]
        cv = tuple(mul[fac][x] for x in v)
        if cv not in seen:
            seen.add(cv)
            directions.append(cv)

    pool = []
    for v in directions:
        if herm(v, v):
            continue
        u = []
        for i in range(n):
            acc = 0
            for t in range(n):
                acc = add[acc][mul[J[i][t]][F.frob_power(v[t], cj)]]
            u.append(acc)
        for c in range(1, F.q):
            M = [list(r) for r in mat_identity(n)]
            for i in range(n):
                if u[i]:
                    fac = mul[c][u[i]]
                    for j in range(n):
                        if v[j]:
                            M[i][j] = add[M[i][j]][mul[fac][v[j]]]
            M = tuple(map(tuple, M))
            if mat_det(F, M) == 1 and preserves_hermitian(F, M, J):
                pool.append(M)
    return pool


# ---------------------------------------------------------------------------
# Suzuki group generators via structured search

def sz_generators(F):
    """Lower-unitriangular family u(a, b), found by testing shape variants
    against form preservation and closure of the 64-element set."""
    add, mul = F.add, F.mul

    def th(a):  # the twisting endomorphism x -> x^4 on F_8
        return F.frob[F.frob[a]]

    def s(*xs):
        acc = 0
        for x in xs:
            acc = add[acc][x]
        return acc

    n = 4
    J = herm_form(F, n)  # antidiagonal ones; alternating in characteristic 2
    tau = tuple(tuple(int(i + j == n - 1) for j in range(n)) for i in range(n))

    r20_opts = [
        lambda a, b: b,
        lambda a, b: s(mul[a][th(a)], b),
    ]
    r31_opts = [
        lambda a, b: b,
        lambda a, b: s(mul[a][th(a)], b),
    ]
    r30_opts = [
        lambda a, b: s(mul[mul[a][a]][th(a)], mul[a][b], th(b)),
        lambda a, b: s(mul[mul[a][a]][th(a)], th(b)),
        lambda a, b: s(mul[a][b], th(b)),
        lambda a, b: s(mul[mul[a][a]][th(a)], mul[a][b]),
    ]
    sub21_opts = [th, lambda a: a]
    sub32_opts = [lambda a: a, th]

    for r20 in r20_opts:
        for r31 in r31_opts:
            for r30 in r30_opts:
                for s21 in sub21_opts:
                    for s32 in sub32_opts:

                        def u(a, b):
                            return (
                                (1, 0, 0, 0),
                                (a, 1, 0, 0),
                                (r20(a, b), s21(a), 1, 0),
                                (r30(a, b), r31(a, b), s32(a), 1),
                            )

                        mats = {u(a, b) for a in range(8) for b in range(8)}
                        if len(mats) != 64:
                            continue
                        if not all(preserves_bilinear(F, M, J) for M in mats):
                            continue
                        if any(mat_mul(F, A, B) not in mats for A in mats for B in mats):
                            continue
                        gens = [u(1, 0), u(F.gen, 0), u(0, 1), tau]
                        G = natural_group(F, n, gens, "projective")
                        if G.degree == 65 and G.order == 29120:
                            return gens, J
    raise SystemExit("no Suzuki shape variant passed all checks")


# ---------------------------------------------------------------------------
# reduction to small generating sets

def reduce_gens(F, n, pool, action, perm_order_target, degree_target, seed,
                matrix_order=None):
    rng = random.Random(seed)

    def ok(mats):
        if orbit_size(F, n, mats, action, degree_target) != degree_target:
            return False
        G = natural_group(F, n, mats, action)
        if G.order != perm_order_target:
            return False
        if action == "projective" and matrix_order is not None:
            # the faithful vector action separates a proper subgroup whose
            # projective image happens to have full size
            return vector_group(F, n, mats).order == matrix_order
        return True

    def word(maxlen):
        M = rng.choice(pool)
        for _ in range(rng.randint(0, maxlen - 1)):
            M = mat_mul(F, M, rng.choice(pool))
        return M

    head = pool[: min(len(pool), 10)]
    for i in range(len(head)):
        for j in range(i + 1, len(head)):
            if ok((head[i], head[j])):
                return (head[i], head[j])
    for _ in range(80):
        cand = (word(4), word(4))
        if ok(cand):
            return cand
        cand = cand + (word(4),)
        if ok(cand):
            return cand
    raise SystemExit("generator reduction failed")


# ---------------------------------------------------------------------------
# file emission

def write_matrix_file(family, n, q, mats, form, provenance):
    F = field(q * q if family == "SU" else q)
    doc = {
        "schema_version": 1,
        "family": family,
        "n": n,
        "q": q,
        "field": {"p": F.p, "k": F.k, "modulus": list(F.modulus)},
        "matrices": [[x for row in M for x in row] for M in mats],
        "form": [x for row in form for x in row] if form is not None else None,
        "provenance": provenance,
        "expected_order": classical_order(family, n, q),
    }
    name = zoo.MATRIX_RECIPES[(family, n, q)].file
    path = MATRIX_DIR / name
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return path


def build_classical(family, n, q, pool_builder, action, seed):
    fq = q * q if family == "SU" else q
    F = field(fq)
    formula = classical_order(family, n, q)
    center = scalar_center_order(family, n, q)
    perm_target = formula // (center if action == "projective" else 1)
    recipe = zoo.MATRIX_RECIPES[(family, n, q)]

    pool, form = pool_builder(F)
    gens = reduce_gens(
        F, n, pool, action, perm_target, recipe.degree, seed,
        matrix_order=formula,
    )
    if action == "vectors" and vector_group(F, n, gens).order != formula:
        raise SystemExit(f"{family}({n},{q}): reduced set lost the group")
    prov = (
        f"{family}({n},{q}) over F_{fq}: validated generator pool reduced to "
        f"{len(gens)} matrices by deterministic search (seed {seed}); "
        f"permutation order on all nonzero vectors matched {formula}"
    )
    path = write_matrix_file(family, n, q, gens, form, prov)
    zoo.matrix_group.cache_clear()
    zoo.classical_action.cache_clear()
    G = zoo.classical_group(family, n, q)
    print(f"  {family}({n},{q}): degree {G.degree}, order {G.order}  -> {path.name}")
    return G


def dump_named(name, G, provenance):
    fname, expected = zoo.NAMED_GROUPS[name]
    assert G.order == expected, (name, G.order, expected)
    path = NAMED_DIR / fname
    dump_group_file(path, G.degree, G.gens, provenance, expected_order=expected)
    return path


# ---------------------------------------------------------------------------
# the 3^3 : A4 construction and its defining local property

def build_324_37():
    # A4 permutes the coordinates of F_3^4; V is the sum-zero submodule.
    vs = [
        (a, b, c, (-a - b - c) % 3)
        for a in range(3)
        for b in range(3)
        for c in range(3)
    ]
    index = {v: i for i, v in enumerate(vs)}

    def translation(t):
        return tuple(
            index[tuple((x + y) % 3 for x, y in zip(v, t))] for v in vs
        )

    def coordperm(pi):  # position i of the image takes coordinate pi[i]
        return tuple(index[tuple(v[pi[i]] for i in range(4))] for v in vs)

    gens = (
        translation((1, 2, 0, 0)),
        translation((0, 1, 2, 0)),
        translation((0, 0, 1, 2)),
        coordperm((1, 2, 0, 3)),
        coordperm((1, 0, 3, 2)),
    )
    G = PermGroup(gens, 27)
    assert G.order == 324, G.order
    return G


def two_local_profile(G):
    """Check: Sylow 2-subgroup non-normal, and every 2-element's
    subnormaliser (by definition) is the whole group."""
    part = conjugacy_classes(G)
    reps = [
        cl.rep
        for cl in part.classes
        if cl.rep_order > 1 and cl.rep_order & (cl.rep_order - 1) == 0
    ]
    assert reps, "no nontrivial 2-elements"
    deg = G.degree
    for x in reps:
        X = PermGroup((x,), deg)
        donors = [
            g
            for g in G.iter_elements()
            if is_subnormal(PermGroup((x, g), deg), X)
        ]
        if PermGroup(tuple(donors), deg).order != G.order:
            return False
    x = next(r for r in reps if perm_order(r) == 2)
    C = centralizer(G, x)
    mate = next(
        y
        for y in C.iter_elements()
        if perm_order(y) == 2 and y != x and PermGroup((x, y), deg).order == 4
    )
    P = PermGroup((x, mate), deg)
    return not is_normal(G, P)


# ---------------------------------------------------------------------------
# Mongean shuffle generators

def mongean_group():
    reversal = tuple(11 - i for i in range(12))
    for first_top in (True, False):
        dq = deque([0])
        top = first_top
        for i in range(1, 12):
            if top:
                dq.appendleft(i)
            else:
                dq.append(i)
            top = not top
        arrangement = list(dq)
        fwd = tuple(arrangement.index(i) for i in range(12))
        back = tuple(arrangement)
        for cand in (fwd, back):
            G = PermGroup((cand, reversal), 12)
            if G.order == 95040:
                return G, cand
    raise SystemExit("no shuffle variant generated order 95040")


# ---------------------------------------------------------------------------

def main():
    MATRIX_DIR.mkdir(parents=True, exist_ok=True)
    NAMED_DIR.mkdir(parents=True, exist_ok=True)

    print("matrix families:")
    build_classical(
        "SL", 2, 3, lambda F: (sl_pool(F, 2), None), "vectors", seed=101
    )
    build_classical(
        "SL", 2, 5, lambda F: (sl_pool(F, 2), None), "vectors", seed=102
    )
    build_classical(
        "SL", 2, 8, lambda F: (sl_pool(F, 2), None), "projective", seed=103
    )
    build_classical(
        "SL", 3, 3, lambda F: (sl_pool(F, 3), None), "projective", seed=104
    )
    build_classical(
        "SL", 3, 4, lambda F: (sl_pool(F, 3), None), "vectors", seed=105
    )
    build_classical(
        "Sp", 4, 3,
        lambda F: (sp_pool(F, 4, sp_form(F, 4)), sp_form(F, 4)),
        "vectors", seed=106,
    )
    build_classical(
        "Sp", 6, 2,
        lambda F: (sp_pool(F, 6, sp_form(F, 6), coords=3), sp_form(F, 6)),
        "vectors", seed=107,
    )
    build_classical(
        "SU", 3, 3,
        lambda F: (su_pool(F, 3, herm_form(F, 3)), herm_form(F, 3)),
        "projective", seed=108,
    )
    build_classical(
        "SU", 3, 5,
        lambda F: (su_pool(F, 3, herm_form(F, 3)), herm_form(F, 3)),
        "projective", seed=109,
    )
    build_classical(
        "SU", 4, 2,
        lambda F: (su_pool(F, 4, herm_form(F, 4)), herm_form(F, 4)),
        "projective", seed=110,
    )
    build_classical(
        "SU", 5, 2,
        lambda F: (su_pool(F, 5, herm_form(F, 5)), herm_form(F, 5)),
        "projective", seed=111,
    )

    F8 = field(8)
    sz_gens, sz_J = sz_generators(F8)
    reduced = reduce_gens(
        F8, 4, sz_gens, "projective", 29120, 65, seed=112, matrix_order=29120
    )
    assert vector_group(F8, 4, reduced).order == 29120
    write_matrix_file(
        "Sz", 4, 8, reduced, sz_J,
        "Sz(8) over F_8: twisted lower-unitriangular family with the "
        "antidiagonal alternating form, shape fixed by closure and "
        "form-preservation checks; reduced by deterministic search (seed 112); "
        "permutation order on all nonzero vectors matched 29120",
    )
    zoo.matrix_group.cache_clear()
    zoo.classical_action.cache_clear()
    G = zoo.classical_group("Sz", 4, 8)
    print(f"  Sz(8): degree {G.degree}, order {G.order}")

    print("named groups:")
    psl33 = zoo.classical_group("SL", 3, 3)
    dump_named(
        "PSL3_3", psl33,
        "projective-plane action of the validated SL(3,3) matrix generators "
        "(13 points); order 5616 verified at generation and load",
    )
    psl28 = zoo.classical_group("SL", 2, 8)
    dump_named(
        "PSL2_8", psl28,
        "projective-line action of the validated SL(2,8) matrix generators "
        "(9 points); order 504 verified at generation and load",
    )

    F5 = field(5)
    gl_pool = sl_pool(F5, 2)
    torus = ((F5.gen, 0), (0, 1))
    gl_full = vector_group(F5, 2, gl_pool + [torus])
    assert gl_full.order == 480, gl_full.order
    gl_gens = None
    rng = random.Random(113)
    for _ in range(200):
        a = rng.choice(gl_pool + [torus])
        b = rng.choice(gl_pool + [torus])
        cand = vector_group(F5, 2, [a, mat_mul(F5, b, torus)])
        if cand.order == 480:
            gl_gens = cand
            break
    assert gl_gens is not None
    dump_named(
        "GL2_5", gl_gens,
        "SL(2,5) transvection pool extended by the diagonal torus diag(2,1), "
        "acting on the 24 nonzero vectors of F_5^2; order 480 verified",
    )

    m12, shuffle = mongean_group()
    dump_named(
        "M12", m12,
        "generated by the deck reversal and the Mongean shuffle on 12 points "
        f"(shuffle = {list(shuffle)}); order 95040 verified at generation and load",
    )

    G324 = build_324_37()
    ok = two_local_profile(G324)
    print(f"  324/37 candidate (sum-zero A4 module): 2-local profile = {ok}")
    if not ok:
        raise SystemExit("module candidate failed the 2-local profile")
    path = dump_named(
        "SmallGroup_324_37", G324,
        "split extension of the sum-zero F_3 module of A4 (27 affine points) "
        "by A4 permuting coordinates; order 324; Sylow 2-subgroup verified "
        "non-normal and every 2-element's subnormaliser verified to be the "
        "whole group at generation time; identification with the catalogue "
        "id 324/37 rests on this recorded profile, not on an in-process "
        "catalogue lookup",
    )
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    print(f"  SmallGroup_324_37 sha256 = {digest}")

    for name in zoo.NAMED_GROUPS:
        zoo._load_named_cached.cache_clear()
        G = zoo.load_named(name)
        print(f"  {name}: degree {G.degree}, order {G.order}")

    print("done")


if __name__ == "__main__":
    main()
