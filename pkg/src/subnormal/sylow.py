"""Sylow machinery, picky elements, and subnormalisers.

The subnormaliser of a p-element x in G is the subgroup generated by
all g with <x> subnormal in <g, x>.  Three independent routes compute
it: generation by the normalizers of the Sylow p-subgroups containing
x, fusion closure of the conjugators carrying x into a fixed Sylow
subgroup, and the definitional brute-force scan.  A p-element is picky
when it lies in exactly one Sylow p-subgroup; every result cross-checks
that count against the equality of the subnormaliser with a Sylow
normalizer and raises on disagreement, since a mismatch can only come
from an engine bug.
"""

from dataclasses import dataclass

from .arith import p_part_int
from .permgroup import (
    CONJUGATE_ORBIT_BOUND,
    EXHAUSTIVE_BOUND,
    LATTICE_BOUND,
    BoundExceeded,
    GroupError,
    NotAMember,
    PermGroup,
    _subgroup_digest,
    all_subgroups,
    centralizer,
    compose,
    conjugacy_classes,
    conjugate,
    element_conjugacy_orbit,
    inverse,
    is_normal,
    is_subnormal,
    key_to_perm,
    p_parts,
    perm_key,
    perm_order,
    perm_power,
    subgroup_conjugation_orbit,
    subgroup_from_keys,
    trivial_group,
)

BRUTEFORCE_BOUND = EXHAUSTIVE_BOUND
FUSION_SCAN_BOUND = EXHAUSTIVE_BOUND
RADICAL_BOUND = 2000

# caches key by object identity; values keep the group alive so ids
# cannot be recycled while an entry is live
_SYLOW_CACHE = {}
_CLASS_CACHE = {}
_RADICAL_CACHE = {}


def classes_of(G, bound=None, override=False):
    """Cached conjugacy-class partition of G."""
    entry = _CLASS_CACHE.get(id(G))
    if entry is None:
        if bound is None:
            cp = conjugacy_classes(G, override=override)
        else:
            cp = conjugacy_classes(G, bound=bound, override=override)
        entry = (G, cp)
        _CLASS_CACHE[id(G)] = entry
    return entry[1]


def is_p_element(G, p, x):
    x = tuple(x)
    if x not in G:
        raise NotAMember("subject is not an element of the group")
    n = perm_order(x)
    return n == p_part_int(n, p)


def _require_p_element(G, p, x):
    if not is_p_element(G, p, x):
        raise GroupError(f"subject of order {perm_order(tuple(x))} is not a {p}-element")


def _is_abelian(G):
    return all(
        compose(a, b) == compose(b, a) for i, a in enumerate(G.gens) for b in G.gens[i + 1 :]
    )


def conjugate_group(H, g):
    return PermGroup(tuple(conjugate(h, g) for h in H.gens), H.degree)


# ---------------------------------------------------------------------------
# Sylow subgroups by p-subgroup growth


def _p_singular_element(G, p):
    """First element with order divisible by p, in shortest-word order.

    Breadth-first over products of generators, so the result depends
    only on the generator list.  Some such element exists whenever p
    divides the group order.
    """
    ident = G.identity
    seen = {perm_key(ident)}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in G.gens:
                z = compose(w, s)
                kz = perm_key(z)
                if kz in seen:
                    continue
                seen.add(kz)
                if perm_order(z) % p == 0:
                    return z
                nxt.append(z)
        frontier = nxt
    raise GroupError(f"no {p}-singular element found although {p} divides the order")


def _stabilizer_from_orbit(G, H, witnesses, edges):
    """Normalizer of H assembled from a conjugation orbit, with certificate."""
    deg = G.degree
    ident = G.identity
    orbit_size = len(witnesses)
    gens = list(H.gens)
    N = PermGroup(tuple(gens), deg)
    target = G.order
    if orbit_size * N.order != target:
        h_keys = H.element_keys()
        for d, si, digest in edges:
            t = key_to_perm(witnesses[d], deg)
            sg = compose(
                compose(t, G.gens[si]),
                inverse(key_to_perm(witnesses[digest], deg)),
            )
            if sg != ident and sg not in N:
                if all(perm_key(conjugate(h, sg)) in h_keys for h in H.gens):
                    gens.append(sg)
                    N = PermGroup(tuple(gens), deg)
                    if orbit_size * N.order == target:
                        break
    if orbit_size * N.order != G.order:
        raise GroupError("orbit-stabilizer certificate failed for normalizer")
    return N


def sylow(G, p, bound=CONJUGATE_ORBIT_BOUND):
    """A Sylow p-subgroup of G, grown from the p-part of one element.

    While |P| falls short of the p-part of |G|, the normalizer N_G(P)
    is streamed in its deterministic element order and the first member
    whose image in N_G(P)/P has order divisible by p contributes an
    extension of index p.  Returns the trivial group when p does not
    divide |G|.
    """
    key = (id(G), p)
    entry = _SYLOW_CACHE.get(key)
    if entry is not None:
        return entry[1]
    target = p_part_int(G.order, p)
    if target == 1:
        P = trivial_group(G.degree)
    elif target == G.order:
        P = G
    else:
        seed = p_parts(_p_singular_element(G, p), p)[0]
        P = PermGroup((seed,), G.degree)
        while P.order < target:
            witnesses, _, edges = subgroup_conjugation_orbit(G, P, bound=bound)
            N = _stabilizer_from_orbit(G, P, witnesses, edges)
            y = _order_p_coset_image(N, P, p)
            prev = P.order
            P = PermGroup(P.gens + (y,), G.degree)
            if P.order != p * prev:
                raise GroupError("Sylow extension step failed to grow by index p")
    _SYLOW_CACHE[key] = (G, P)
    return P


def _order_p_coset_image(N, P, p):
    """First element of N whose image in N/P has order p, as a power.

    Streams N in its deterministic element order; for a member r whose
    coset has order m divisible by p, the power r^(m/p) has image of
    exact order p.  Such a member exists because the index of a
    non-Sylow p-subgroup in its normalizer is divisible by p.
    """
    p_keys = P.element_keys()
    for r in N.iter_elements():
        if perm_key(r) in p_keys:
            continue
        m = 1
        y = r
        while perm_key(y) not in p_keys:
            y = compose(y, r)
            m += 1
        if m % p == 0:
            return perm_power(r, m // p)
    raise GroupError("no extension element found although the subgroup is not Sylow")


# ---------------------------------------------------------------------------
# Sylow conjugates through a fixed subgroup


@dataclass(frozen=True)
class SylowWitness:
    prime: int
    sylow: PermGroup
    count_containing_x: int
    conjugator_reps: tuple


def _sylow_orbit_data(G, p, bound=CONJUGATE_ORBIT_BOUND):
    """Cached conjugation orbit of the canonical Sylow subgroup.

    Returns (P, N_G(P), ordered witness keys); the witnesses enumerate
    one conjugator per distinct Sylow p-subgroup.
    """
    key = (id(G), p, "orbit")
    entry = _SYLOW_CACHE.get(key)
    if entry is not None:
        return entry[1]
    P = sylow(G, p, bound=bound)
    witnesses, order, edges = subgroup_conjugation_orbit(G, P, bound=bound)
    N = _stabilizer_from_orbit(G, P, witnesses, edges)
    if len(witnesses) * N.order != G.order:
        raise GroupError("Sylow count certificate failed")
    data = (P, N, tuple(witnesses[d] for d in order))
    _SYLOW_CACHE[key] = (G, data)
    return data


def sylows_containing(G, p, x, bound=CONJUGATE_ORBIT_BOUND):
    """All Sylow p-subgroups containing x, as conjugates of a fixed one.

    Iterates one conjugator per Sylow subgroup and keeps those t with
    x in P^t, tested as x^(t^-1) in P.
    """
    x = tuple(x)
    _require_p_element(G, p, x)
    P, _, witness_keys = _sylow_orbit_data(G, p, bound=bound)
    deg = G.degree
    reps = []
    for tk in witness_keys:
        t = key_to_perm(tk, deg)
        if conjugate(x, inverse(t)) in P:
            reps.append(t)
    if not reps:
        raise GroupError("a p-element avoided every Sylow p-subgroup")
    return SylowWitness(
        prime=p,
        sylow=P,
        count_containing_x=len(reps),
        conjugator_reps=tuple(reps),
    )


# ---------------------------------------------------------------------------
# subnormalisers


@dataclass(frozen=True)
class SubnormaliserResult:
    subject: tuple
    prime: int
    subgroup: PermGroup
    method: str
    is_picky: bool
    sylow: PermGroup
    sylow_normalizer: PermGroup
    count_containing: int
    donor_keys: frozenset = None


def _closure_incremental(G, batches):
    """Subgroup generated by the streamed generator batches.

    Batches are absorbed in order; members already inside the current
    subgroup are skipped, which leaves the generated subgroup unchanged,
    and growth stops once the whole group is reached.
    """
    gens = []
    H = PermGroup((), G.degree)
    for batch in batches:
        for g in batch:
            if H.order == G.order:
                return H
            if g not in H:
                gens.append(g)
                H = PermGroup(tuple(gens), G.degree)
    return H


def _finish_result(G, p, x, sub, method, witness, N_x, P_x, donor_keys=None):
    """Assemble a result and assert the containments and the picky criterion."""
    C = centralizer(G, x)
    if not N_x.is_subgroup_of(sub):
        raise GroupError(f"{method}: Sylow normalizer escapes the subnormaliser")
    if not C.is_subgroup_of(sub):
        raise GroupError(f"{method}: centralizer escapes the subnormaliser")
    count = witness.count_containing_x
    picky_by_count = count == 1
    picky_by_normalizer = sub.same_group(N_x)
    if picky_by_count != picky_by_normalizer:
        raise GroupError(
            "internal inconsistency: unique-Sylow count and normalizer "
            f"equality disagree for a {p}-element ({method} method)"
        )
    return SubnormaliserResult(
        subject=tuple(x),
        prime=p,
        subgroup=sub,
        method=method,
        is_picky=picky_by_count,
        sylow=P_x,
        sylow_normalizer=N_x,
        count_containing=count,
        donor_keys=donor_keys,
    )


def _anchored_sylow(G, p, x, bound=CONJUGATE_ORBIT_BOUND):
    """Witness data plus the first Sylow conjugate containing x."""
    witness = sylows_containing(G, p, x, bound=bound)
    _, N, _ = _sylow_orbit_data(G, p, bound=bound)
    t0 = witness.conjugator_reps[0]
    P_x = conjugate_group(witness.sylow, t0)
    N_x = conjugate_group(N, t0)
    return witness, P_x, N_x


def subnormaliser(G, p, x, bound=CONJUGATE_ORBIT_BOUND):
    """Subnormaliser by generation: the normalizers of all Sylow
    p-subgroups containing x, closed under the group operation."""
    x = tuple(x)
    witness, P_x, N_x = _anchored_sylow(G, p, x, bound=bound)
    _, N, _ = _sylow_orbit_data(G, p, bound=bound)
    batches = (
        tuple(conjugate(n, t) for n in N.gens) for t in witness.conjugator_reps
    )
    sub = _closure_incremental(G, batches)
    return _finish_result(G, p, x, sub, "generation", witness, N_x, P_x)


def subnormaliser_fusion(G, p, x, scan_bound=FUSION_SCAN_BOUND):
    """Subnormaliser by fusion: closure of {g : x^g in P} for a fixed
    Sylow subgroup P containing x.

    Below the scan bound every group element is tested; above it the
    conjugators are assembled per class member as centralizer cosets,
    one witness for each conjugate of x inside P.  The result is
    checked against the generation method and a mismatch raises.
    """
    x = tuple(x)
    witness, P_x, N_x = _anchored_sylow(G, p, x)
    p_keys = P_x.element_keys()
    if G.order <= scan_bound:
        donors = (
            g for g in G.iter_elements() if perm_key(conjugate(x, g)) in p_keys
        )
        sub = _closure_incremental(G, [donors])
    else:
        C = centralizer(G, x)
        class_witness, _ = element_conjugacy_orbit(G, x)
        deg = G.degree
        carriers = [
            key_to_perm(class_witness[k], deg)
            for k in map(perm_key, P_x.iter_elements())
            if k in class_witness
        ]
        sub = _closure_incremental(G, [C.gens, carriers])
    reference = subnormaliser(G, p, x)
    if not sub.same_group(reference.subgroup):
        raise GroupError(
            "fusion closure disagrees with the generation subnormaliser"
        )
    return _finish_result(G, p, x, sub, "fusion", witness, N_x, P_x)


def subnormaliser_bruteforce(G, p, x, bound=BRUTEFORCE_BOUND):
    """Subnormaliser from the definition: closure of all g with <x>
    subnormal in <g, x>.

    Every group element is classified.  Donor status is constant on
    <x>-double cosets and under conjugation by the centralizer of x,
    since those moves fix the generated subgroup up to a conjugation
    fixing x; each fresh representative costs one subnormality test,
    memoised per generated subgroup.  The raw donor set is kept on the
    result without asserting it is closed under the group operation.
    """
    x = tuple(x)
    _require_p_element(G, p, x)
    if G.order > bound:
        raise BoundExceeded(
            f"brute-force subnormaliser restricted to order <= {bound}"
        )
    deg = G.degree
    X = PermGroup((x,), deg)
    C = centralizer(G, x)
    x_inv = inverse(x)

    status = {}
    verdict_by_subgroup = {}

    def classify(g):
        H = PermGroup((x, g), deg)
        hkeys = H.element_keys()
        verdict = verdict_by_subgroup.get(hkeys)
        if verdict is None:
            verdict = is_subnormal(H, X)
            verdict_by_subgroup[hkeys] = verdict
        return verdict

    donor_keys = []
    for g in G.iter_elements():
        kg = perm_key(g)
        if kg in status:
            if status[kg]:
                donor_keys.append(kg)
            continue
        verdict = classify(g)
        status[kg] = verdict
        stack = [g]
        while stack:
            h = stack.pop()
            neighbours = [compose(x, h), compose(h, x), compose(x_inv, h), inverse(h)]
            neighbours += [conjugate(h, c) for c in C.gens]
            for z in neighbours:
                kz = perm_key(z)
                if kz not in status:
                    status[kz] = verdict
                    stack.append(z)
        if verdict:
            donor_keys.append(kg)

    donors = (key_to_perm(k, deg) for k in donor_keys)
    sub = _closure_incremental(G, [donors])
    witness, P_x, N_x = _anchored_sylow(G, p, x)
    return _finish_result(
        G, p, x, sub, "bruteforce", witness, N_x, P_x,
        donor_keys=frozenset(donor_keys),
    )


def is_picky(G, p, x):
    """True when x lies in exactly one Sylow p-subgroup.

    Computed as the unique-Sylow count and re-derived from the
    subnormaliser; the two criteria are compared inside the result
    construction and disagreement raises.
    """
    x = tuple(x)
    _require_p_element(G, p, x)
    if perm_order(x) == 1:
        raise GroupError("pickiness is defined for nontrivial p-elements")
    return subnormaliser(G, p, x).is_picky


# ---------------------------------------------------------------------------
# class surveys


@dataclass(frozen=True)
class PickyClassRow:
    subject: tuple
    element_order: int
    class_size: int
    centralizer_order: int
    subnormaliser_order: int
    picky: bool
    methods: tuple
    methods_agree: bool


FULL_PARTITION_BOUND = 1_000_000


@dataclass(frozen=True)
class PElementClass:
    rep_order: int
    size: int
    centralizer_order: int


def p_class_representatives(G, p):
    """One representative per conjugacy class of nontrivial p-elements.

    Below the full-partition bound, the p-parts of the class
    representatives of G meet every class of p-elements and power maps
    identify the class of each p-part without any conjugacy search.
    Above it, the elements of one Sylow p-subgroup are fused under G
    instead, which avoids enumerating the whole group.  Returns
    (class data, representative) pairs sorted by (element order, class
    size, serialized representative).
    """
    if G.order <= FULL_PARTITION_BOUND:
        cp = classes_of(G)
        seen = set()
        reps = []
        for c in cp.classes:
            n = c.rep_order
            pa = p_part_int(n, p)
            if pa == 1:
                continue
            m = n // pa
            k = m * pow(m, -1, pa)
            j = cp.power_class(c.index, k)
            if j in seen:
                continue
            seen.add(j)
            reps.append((j, p_parts(c.rep, p)[0]))
        reps.sort(key=lambda pair: pair[0])
        return [
            (
                PElementClass(
                    rep_order=cp.classes[j].rep_order,
                    size=cp.classes[j].size,
                    centralizer_order=cp.classes[j].centralizer_order,
                ),
                y,
            )
            for j, y in reps
        ]
    return _p_classes_via_sylow(G, p)


def _p_classes_via_sylow(G, p):
    """Classes of p-elements by fusing one Sylow subgroup's elements.

    Every p-element is conjugate into the fixed Sylow subgroup, so its
    elements meet every class; each fresh class costs one conjugation
    orbit whose length is the exact class size.
    """
    P = sylow(G, p)
    members = sorted(
        (g for g in P.iter_elements() if g != P.identity),
        key=lambda g: (perm_order(g), perm_key(g)),
    )
    covered = []
    out = []
    for y in members:
        ky = perm_key(y)
        if any(ky in cls_keys for cls_keys in covered):
            continue
        witness, _ = element_conjugacy_orbit(G, y)
        covered.append(frozenset(witness))
        size = len(witness)
        if G.order % size:
            raise GroupError("class size does not divide the group order")
        out.append(
            (
                PElementClass(
                    rep_order=perm_order(y),
                    size=size,
                    centralizer_order=G.order // size,
                ),
                y,
            )
        )
    out.sort(key=lambda pair: (pair[0].rep_order, pair[0].size, perm_key(pair[1])))
    return out


def picky_classes(G, p, include_bruteforce=None):
    """Survey of every class of nontrivial p-elements.

    Rows follow the class order (element order, class size, serialized
    representative).  Each row records the subnormaliser order computed
    by the generation and fusion methods, with the brute-force method
    joining below the radical-scale bound unless overridden.
    """
    if include_bruteforce is None:
        include_bruteforce = G.order <= RADICAL_BOUND
    rows = []
    for cls, y in p_class_representatives(G, p):
        results = [subnormaliser(G, p, y), subnormaliser_fusion(G, p, y)]
        methods = ["generation", "fusion"]
        if include_bruteforce:
            results.append(subnormaliser_bruteforce(G, p, y))
            methods.append("bruteforce")
        agree = all(
            r.subgroup.same_group(results[0].subgroup) for r in results[1:]
        ) and len({r.is_picky for r in results}) == 1
        rows.append(
            PickyClassRow(
                subject=y,
                element_order=cls.rep_order,
                class_size=cls.size,
                centralizer_order=cls.centralizer_order,
                subnormaliser_order=results[0].subgroup.order,
                picky=results[0].is_picky,
                methods=tuple(methods),
                methods_agree=agree,
            )
        )
    return rows


def almost_normal(G, p):
    """True when the subnormaliser of every p-element is the whole group."""
    return all(
        subnormaliser(G, p, y).subgroup.order == G.order
        for _, y in p_class_representatives(G, p)
    )


# ---------------------------------------------------------------------------
# radical route


def _core_of_sylow(H, p):
    """Largest normal p-subgroup of H: the intersection of its Sylow
    p-subgroups."""
    Q = sylow(H, p)
    if Q.order == 1 or is_normal(H, Q):
        return Q
    witnesses, order, _ = subgroup_conjugation_orbit(H, Q)
    deg = H.degree
    common = None
    q_elems = Q.elements()
    for d in order:
        t = key_to_perm(witnesses[d], deg)
        keys = frozenset(perm_key(conjugate(h, t)) for h in q_elems)
        common = keys if common is None else common & keys
        if len(common) == 1:
            break
    return subgroup_from_keys(common, deg)


def p_core(G, p):
    return _core_of_sylow(G, p)


def radical_p_subgroups(G, p):
    """Conjugacy classes of nontrivial radical p-subgroups of G.

    A p-subgroup R is radical when R equals the largest normal
    p-subgroup of its own normalizer.  Candidates are the subgroups of
    one Sylow p-subgroup, which meet every conjugacy class of
    p-subgroups.  Returns (subgroup, normalizer, conjugator keys) per
    class.  Restricted to small orders through the subgroup-lattice
    bound on the Sylow subgroup.
    """
    key = (id(G), p)
    entry = _RADICAL_CACHE.get(key)
    if entry is not None:
        return entry[1]
    if G.order > RADICAL_BOUND:
        raise BoundExceeded(f"radical enumeration restricted to order <= {RADICAL_BOUND}")
    P = sylow(G, p)
    results = []
    seen_digests = set()
    if P.order > 1:
        if P.order > LATTICE_BOUND:
            raise BoundExceeded(
                f"Sylow subgroup of order {P.order} exceeds the lattice bound"
            )
        for keys in all_subgroups(P):
            if len(keys) == 1:
                continue
            if _subgroup_digest(list(keys)) in seen_digests:
                continue
            R = subgroup_from_keys(keys, G.degree)
            witnesses, order, edges = subgroup_conjugation_orbit(G, R)
            seen_digests.update(order)
            N = _stabilizer_from_orbit(G, R, witnesses, edges)
            if _core_of_sylow(N, p).same_group(R):
                results.append((R, N, tuple(witnesses[d] for d in order)))
    results = tuple(results)
    _RADICAL_CACHE[key] = (G, results)
    return results


def subnormaliser_radical(G, p, x):
    """Subnormaliser generated by the normalizers of the radical
    p-subgroups containing x.  Small-scale cross-check of the
    generation method."""
    x = tuple(x)
    _require_p_element(G, p, x)
    if perm_order(x) == 1:
        return subnormaliser(G, p, x).subgroup
    deg = G.degree
    batches = []
    for R, N, conj_keys in radical_p_subgroups(G, p):
        for tk in conj_keys:
            t = key_to_perm(tk, deg)
            if conjugate(x, inverse(t)) in R:
                batches.append(tuple(conjugate(n, t) for n in N.gens))
    return _closure_incremental(G, batches)


# ---------------------------------------------------------------------------
# lattice bound route


def bounding_overgroups(G, p, x):
    """Subgroups H >= N_G(P) whose conjugates containing x all equal H.

    Any such H contains the subnormaliser of x; when <x> is moreover
    subnormal in H the two are equal.  Returns (H, conjugation_closed)
    pairs for every subgroup of G above the anchored Sylow normalizer,
    usable only within the subgroup-lattice bound.
    """
    x = tuple(x)
    _require_p_element(G, p, x)
    N_x = _anchored_sylow(G, p, x)[2]
    n_keys = N_x.element_keys()
    out = []
    for keys in all_subgroups(G):
        if not n_keys <= keys:
            continue
        H = subgroup_from_keys(keys, G.degree)
        witnesses, order, _ = subgroup_conjugation_orbit(G, H)
        closed = True
        for d in order:
            t = key_to_perm(witnesses[d], G.degree)
            if conjugate(x, inverse(t)) in H and d != order[0]:
                closed = False
                break
        out.append((H, closed))
    return out
