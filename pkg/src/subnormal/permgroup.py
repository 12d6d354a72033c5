"""Exact permutation-group engine.

Permutations are tuples of point images, 0-based: point i maps to g[i].
Products compose left to right, so compose(g, h) means "apply g, then h".
Conjugation x^g is inverse(g)*x*g, which makes the action of G on itself
by conjugation a right action: conjugate(conjugate(x, g), h) equals
conjugate(x, compose(g, h)).

Groups carry a deterministic stabilizer chain (Schreier-Sims with base
points chosen as smallest moved points), so orders, membership tests and
element streams are reproducible for a fixed generator list.
"""

import hashlib
import json
from array import array
from collections import deque
from math import lcm, prod

from .arith import factorint, p_part_int

EXHAUSTIVE_BOUND = 100_000
ENUMERATION_BOUND = 10_000_000
CONJUGATE_ORBIT_BOUND = 1_000_000
LATTICE_BOUND = 200


class GroupError(Exception):
    """Base class for group-engine failures."""


class MalformedPermutation(GroupError):
    pass


class DegreeMismatch(GroupError):
    pass


class NotAMember(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class BoundExceeded(GroupError):
    pass


# ---------------------------------------------------------------------------
# permutation primitives


def identity_perm(degree):
    return tuple(range(degree))


def compose(g, h):
    """Apply g, then h."""
    return tuple(map(h.__getitem__, g))


def inverse(g):
    inv = [0] * len(g)
    for i, gi in enumerate(g):
        inv[gi] = i
    return tuple(inv)


def conjugate(x, g):
    """x^g = inverse(g)*x*g."""
    y = [0] * len(g)
    for i, gi in enumerate(g):
        y[gi] = g[x[i]]
    return tuple(y)


def perm_power(g, k):
    n = len(g)
    if k < 0:
        g = inverse(g)
        k = -k
    result = tuple(range(n))
    while k:
        if k & 1:
            result = compose(result, g)
        g = compose(g, g)
        k >>= 1
    return result


def cycle_decomposition(g):
    """Nontrivial cycles of g, each rotated to start at its smallest point."""
    seen = [False] * len(g)
    cycles = []
    for start in range(len(g)):
        if seen[start] or g[start] == start:
            seen[start] = True
            continue
        cyc = []
        p = start
        while not seen[p]:
            seen[p] = True
            cyc.append(p)
            p = g[p]
        cycles.append(tuple(cyc))
    return cycles


def perm_order(g):
    return lcm(1, *(len(c) for c in cycle_decomposition(g)))


def perm_from_cycles(degree, *cycles):
    images = list(range(degree))
    for cyc in cycles:
        for i, p in enumerate(cyc):
            images[p] = cyc[(i + 1) % len(cyc)]
    perm = tuple(images)
    if sorted(perm) != list(range(degree)):
        raise MalformedPermutation("cycles overlap or repeat points")
    return perm


def moved_points(g):
    return [i for i, gi in enumerate(g) if gi != i]


def perm_key(g):
    """Canonical byte serialization, usable as a dict key."""
    if len(g) <= 256:
        return bytes(g)
    return array("H", g).tobytes()


def key_to_perm(key, degree):
    if degree <= 256:
        return tuple(key)
    return tuple(array("H", key))


def validate_perm(images, degree):
    if len(images) != degree:
        raise DegreeMismatch(f"expected degree {degree}, got {len(images)}")
    if sorted(images) != list(range(degree)):
        raise MalformedPermutation("images are not a bijection")


# ---------------------------------------------------------------------------
# stabilizer chain


def _build_chain(gens, degree):
    """Deterministic Schreier-Sims.

    Returns (base, sgens, trans) where sgens[i] are the strong generators
    fixing base[0..i-1] and trans[i] maps each orbit point q to a coset
    representative u with base[i]^u = q. New base points are always the
    smallest point moved by the offending residue, and orbits are grown
    breadth-first in insertion order, so the chain is a pure function of
    the generator list.
    """
    ident = tuple(range(degree))
    base = []
    sgens = []
    trans = []

    def new_level(pt):
        base.append(pt)
        sgens.append([])
        trans.append({pt: ident})

    def recompute(i):
        b = base[i]
        tr = {b: ident}
        queue = deque([b])
        while queue:
            p = queue.popleft()
            u = tr[p]
            for s in sgens[i]:
                q = s[p]
                if q not in tr:
                    tr[q] = compose(u, s)
                    queue.append(q)
        trans[i] = tr

    def strip(g, start):
        for i in range(start, len(base)):
            p = g[base[i]]
            tr = trans[i]
            if p not in tr:
                return g, i
            g = compose(g, inverse(tr[p]))
        return g, len(base)

    for g in gens:
        if g == ident:
            continue
        lvl = 0
        while lvl < len(base) and g[base[lvl]] == base[lvl]:
            lvl += 1
        if lvl == len(base):
            new_level(min(p for p in range(degree) if g[p] != p))
        for k in range(lvl + 1):
            sgens[k].append(g)
    for i in range(len(base)):
        recompute(i)

    i = len(base) - 1
    while i >= 0:
        dirty = False
        for p, u in list(trans[i].items()):
            for s in sgens[i]:
                q = s[p]
                sg = compose(compose(u, s), inverse(trans[i][q]))
                if sg == ident:
                    continue
                residue, j = strip(sg, i + 1)
                if residue == ident:
                    continue
                if j == len(base):
                    new_level(min(pt for pt in range(degree) if residue[pt] != pt))
                for k in range(i + 1, j + 1):
                    sgens[k].append(residue)
                    recompute(k)
                i = j
                dirty = True
                break
            if dirty:
                break
        if not dirty:
            i -= 1
    return base, sgens, trans


class PermGroup:
    """Finite permutation group with a verified stabilizer chain.

    Immutable after construction; all methods are pure functions of the
    generator list, so results are reproducible.
    """

    def __init__(self, generators, degree, seed=0):
        gens = []
        seen = set()
        for idx, g in enumerate(generators):
            try:
                validate_perm(g, degree)
            except GroupError as exc:
                raise type(exc)(f"generator {idx}: {exc}") from None
            t = tuple(g)
            if t not in seen:
                seen.add(t)
                gens.append(t)
        self.degree = degree
        self.seed = seed
        ident = tuple(range(degree))
        self.gens = tuple(g for g in gens if g != ident)
        self.base, self._sgens, self.transversals = _build_chain(self.gens, degree)
        self._orbit_lists = [list(tr) for tr in self.transversals]
        self.order = prod(len(tr) for tr in self.transversals)
        for g in self.gens:
            if self.sift(g) != ident:
                raise GroupError("stabilizer chain failed to absorb a generator")
        self._element_keys = None

    def __repr__(self):
        return f"PermGroup(order={self.order}, degree={self.degree}, ngens={len(self.gens)})"

    @property
    def identity(self):
        return tuple(range(self.degree))

    def sift(self, g):
        """Residue of g after stripping through the chain."""
        for i, b in enumerate(self.base):
            p = g[b]
            tr = self.transversals[i]
            if p not in tr:
                return g
            g = compose(g, inverse(tr[p]))
        return g

    def contains(self, g):
        if len(g) != self.degree:
            raise DegreeMismatch(f"degree {len(g)} element in degree {self.degree} group")
        return self.sift(tuple(g)) == self.identity

    def __contains__(self, g):
        return self.contains(g)

    def is_subgroup_of(self, other):
        return self.degree == other.degree and all(g in other for g in self.gens)

    def same_group(self, other):
        return self.order == other.order and self.is_subgroup_of(other)

    def iter_elements(self, override=False):
        """Stream all elements, sorted lexicographically by base images."""
        if self.order > ENUMERATION_BOUND and not override:
            raise BoundExceeded(
                f"group order {self.order} exceeds enumeration bound {ENUMERATION_BOUND}"
            )
        base_len = len(self.base)
        trans = self.transversals

        def walk(level, tau):
            if level == base_len:
                yield tau
                return
            tr = trans[level]
            for pt in sorted(tr, key=tau.__getitem__):
                yield from walk(level + 1, compose(tr[pt], tau))

        return walk(0, self.identity)

    def elements(self, override=False):
        return list(self.iter_elements(override=override))

    def element_keys(self, override=False):
        """Frozenset of serialized elements; cached."""
        if self._element_keys is None:
            self._element_keys = frozenset(
                perm_key(g) for g in self.iter_elements(override=override)
            )
        return self._element_keys

    def random_element(self, rng):
        """Uniform random element from a seeded random.Random instance."""
        g = self.identity
        for level, tr in enumerate(self.transversals):
            pt = self._orbit_lists[level][rng.randrange(len(tr))]
            g = compose(tr[pt], g)
        return g


def group_from_generators(gens, degree, seed=0):
    return PermGroup(gens, degree, seed=seed)


def trivial_group(degree):
    return PermGroup((), degree)


def group_from_elements(perms, degree):
    """Subgroup generated greedily from an element list; asserts closure."""
    grp = PermGroup((), degree)
    gens = []
    for g in perms:
        if tuple(g) not in grp:
            gens.append(tuple(g))
            grp = PermGroup(gens, degree)
    if grp.order != len(set(perm_key(tuple(g)) for g in perms)):
        raise GroupError("element list is not closed under the group operation")
    return grp


# ---------------------------------------------------------------------------
# element decomposition


def p_parts(g, p):
    """Split g into its p-part and p'-part, in that order.

    With n = p^a * m and t the inverse of m mod p^a, the p-part is g^(m*t)
    and the p'-part is the cofactor; the two commute as powers of g.
    """
    n = perm_order(g)
    pa = p_part_int(n, p)
    m = n // pa
    t = pow(m, -1, pa)
    gp = perm_power(g, m * t)
    return gp, compose(g, inverse(gp))


# ---------------------------------------------------------------------------
# orbit-stabilizer engines

_DIGEST_SIZE = 16


def _subgroup_digest(keys):
    return hashlib.blake2b(b"".join(sorted(keys)), digest_size=_DIGEST_SIZE).digest()


def point_stabilizer(G, pt):
    """Stabilizer of a point, via Schreier generators of its orbit."""
    ident = G.identity
    witness = {pt: perm_key(ident)}
    order = [pt]
    queue = deque([pt])
    while queue:
        p = queue.popleft()
        w = key_to_perm(witness[p], G.degree)
        for s in G.gens:
            q = s[p]
            if q not in witness:
                witness[q] = perm_key(compose(w, s))
                order.append(q)
                queue.append(q)
    orbit_size = len(witness)
    stab = PermGroup((), G.degree)
    target, gens = G.order, []
    for p in order:
        if orbit_size * stab.order == target:
            break
        w = key_to_perm(witness[p], G.degree)
        for s in G.gens:
            q = s[p]
            sg = compose(compose(w, s), inverse(key_to_perm(witness[q], G.degree)))
            if sg != ident and sg not in stab:
                gens.append(sg)
                stab = PermGroup(gens, G.degree)
                if orbit_size * stab.order == target:
                    break
    if orbit_size * stab.order != G.order:
        raise GroupError("orbit-stabilizer certificate failed for point stabilizer")
    return stab


def element_conjugacy_orbit(G, x):
    """Conjugacy class of x in G with conjugating witnesses.

    Returns (orbit, order) where orbit maps the key of each conjugate y to
    the key of a witness w with x^w = y, and order lists keys in discovery
    sequence.
    """
    deg = G.degree
    kx = perm_key(x)
    witness = {kx: perm_key(G.identity)}
    order = [kx]
    queue = deque([kx])
    while queue:
        ky = queue.popleft()
        y = key_to_perm(ky, deg)
        w = None
        for s in G.gens:
            z = conjugate(y, s)
            kz = perm_key(z)
            if kz not in witness:
                if w is None:
                    w = key_to_perm(witness[ky], deg)
                witness[kz] = perm_key(compose(w, s))
                order.append(kz)
                queue.append(kz)
    return witness, order


def centralizer(G, x, method="auto"):
    """Centralizer of x in G.

    The production path walks the conjugacy class of x with witnesses and
    assembles Schreier generators until the orbit-stabilizer certificate
    |class| * |C| = |G| holds. With method="auto" the result is also
    cross-checked against an exhaustive scan whenever |G| is at most the
    exhaustive bound.
    """
    x = tuple(x)
    if x not in G:
        raise NotAMember("element is not in the group")
    if method == "scan":
        return _centralizer_scan(G, x)
    C = _centralizer_orbit(G, x)
    if method == "auto" and G.order <= EXHAUSTIVE_BOUND:
        C2 = _centralizer_scan(G, x)
        if not C.same_group(C2):
            raise GroupError("centralizer cross-check failed")
    return C


def _centralizer_orbit(G, x):
    deg = G.degree
    witness, order = element_conjugacy_orbit(G, x)
    orbit_size = len(witness)
    ident = G.identity
    gens = [g for g in (x,) if g != ident]
    C = PermGroup(gens, deg)
    for ky in order:
        if orbit_size * C.order == G.order:
            break
        y = key_to_perm(ky, deg)
        w = key_to_perm(witness[ky], deg)
        for s in G.gens:
            kz = perm_key(conjugate(y, s))
            sg = compose(compose(w, s), inverse(key_to_perm(witness[kz], deg)))
            if sg != ident and conjugate(x, sg) == x and sg not in C:
                gens.append(sg)
                C = PermGroup(gens, deg)
                if orbit_size * C.order == G.order:
                    break
    if orbit_size * C.order != G.order:
        raise GroupError("orbit-stabilizer certificate failed for centralizer")
    return C


def _centralizer_scan(G, x):
    found = []
    for h in G.iter_elements():
        if compose(h, x) == compose(x, h):
            found.append(h)
    return group_from_elements(found, G.degree)


def subgroup_conjugation_orbit(G, H, bound=CONJUGATE_ORBIT_BOUND):
    """Orbit of the subgroup H under G-conjugation, with witnesses.

    Returns (witnesses, order, edges): witnesses maps the digest of each
    conjugate H^t to the key of a witness t, order lists digests in
    discovery sequence, and edges records (digest, generator index,
    target digest) for every explored edge so Schreier generators can be
    reassembled without re-conjugating element lists.
    """
    deg = G.degree
    h_elems = H.elements()
    base_digest = _subgroup_digest([perm_key(h) for h in h_elems])
    witnesses = {base_digest: perm_key(G.identity)}
    order = [base_digest]
    edges = []
    queue = deque([base_digest])
    while queue:
        d = queue.popleft()
        t = key_to_perm(witnesses[d], deg)
        for si, s in enumerate(G.gens):
            ts = compose(t, s)
            digest = _subgroup_digest([perm_key(conjugate(h, ts)) for h in h_elems])
            edges.append((d, si, digest))
            if digest not in witnesses:
                if len(witnesses) >= bound:
                    raise BoundExceeded(
                        f"subgroup conjugation orbit exceeds bound {bound}"
                    )
                witnesses[digest] = perm_key(ts)
                order.append(digest)
                queue.append(digest)
    return witnesses, order, edges


def normalizer(G, H, method="auto", bound=CONJUGATE_ORBIT_BOUND):
    """Normalizer of H in G.

    Production path: orbit of H under conjugation, identified by element
    digests, with Schreier generators assembled until the certificate
    |orbit| * |N| = |G| holds. Digest collisions would break the
    certificate or the final normalizing check, so they cannot pass
    silently. Cross-checked by exhaustive scan when |G| is small.
    """
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")
    if method == "scan":
        return _normalizer_scan(G, H)
    N = _normalizer_orbit(G, H, bound=bound)
    if method == "auto" and G.order <= EXHAUSTIVE_BOUND:
        N2 = _normalizer_scan(G, H)
        if not N.same_group(N2):
            raise GroupError("normalizer cross-check failed")
    return N


def _normalizer_orbit(G, H, bound=CONJUGATE_ORBIT_BOUND):
    deg = G.degree
    witnesses, order, edges = subgroup_conjugation_orbit(G, H, bound=bound)
    orbit_size = len(witnesses)
    ident = G.identity
    gens = list(H.gens)
    N = PermGroup(gens, deg) if gens else PermGroup((), deg)
    target = G.order
    if orbit_size * N.order != target:
        for d, si, digest in edges:
            t = key_to_perm(witnesses[d], deg)
            sg = compose(
                compose(t, G.gens[si]),
                inverse(key_to_perm(witnesses[digest], deg)),
            )
            if sg != ident and sg not in N:
                if all(conjugate(h, sg) in H for h in H.gens):
                    gens.append(sg)
                    N = PermGroup(gens, deg)
                    if orbit_size * N.order == target:
                        break
    if orbit_size * N.order != G.order:
        raise GroupError("orbit-stabilizer certificate failed for normalizer")
    return N


def _normalizer_scan(G, H):
    h_keys = H.element_keys()
    found = []
    for g in G.iter_elements():
        if all(perm_key(conjugate(h, g)) in h_keys for h in H.gens):
            found.append(g)
    return group_from_elements(found, G.degree)


def is_normal(G, H):
    """True iff H is normal in G; H must be a subgroup of G."""
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")
    return all(conjugate(h, g) in H for h in H.gens for g in G.gens)


def normal_closure(G, donors, degree=None):
    """Smallest normal subgroup of G containing the given permutations."""
    deg = G.degree if degree is None else degree
    gens = [tuple(g) for g in donors if tuple(g) != tuple(range(deg))]
    K = PermGroup(gens, deg)
    changed = True
    while changed:
        changed = False
        for k in list(K.gens):
            for g in G.gens:
                c = conjugate(k, g)
                if c not in K:
                    gens.append(c)
                    K = PermGroup(gens, deg)
                    changed = True
    return K


def derived_subgroup(G):
    """Commutator subgroup, as the normal closure of generator commutators."""
    comms = []
    for a in G.gens:
        for b in G.gens:
            comms.append(compose(compose(inverse(a), inverse(b)), compose(a, b)))
    return normal_closure(G, comms)


def center(G):
    C = G
    for s in G.gens:
        C = _centralizer_orbit_relaxed(C, s)
    return C


def _centralizer_orbit_relaxed(G, x):
    """Centralizer in G of an element not necessarily inside G."""
    deg = G.degree
    witness, order = element_conjugacy_orbit(G, x)
    orbit_size = len(witness)
    ident = G.identity
    gens = []
    C = PermGroup((), deg)
    for ky in order:
        if orbit_size * C.order == G.order:
            break
        y = key_to_perm(ky, deg)
        w = key_to_perm(witness[ky], deg)
        for s in G.gens:
            kz = perm_key(conjugate(y, s))
            sg = compose(compose(w, s), inverse(key_to_perm(witness[kz], deg)))
            if sg != ident and conjugate(x, sg) == x and sg not in C:
                gens.append(sg)
                C = PermGroup(gens, deg)
                if orbit_size * C.order == G.order:
                    break
    if orbit_size * C.order != G.order:
        raise GroupError("orbit-stabilizer certificate failed for centralizer")
    return C


# ---------------------------------------------------------------------------
# subnormality


def is_subnormal(G, H):
    """Normal-closure descent criterion.

    H is subnormal in finite G exactly when the series K_0 = G,
    K_{i+1} = normal closure of H in K_i, strictly descends to H; the
    series is then itself a subnormal series for H. The ascending
    normalizer chain is kept separately as a sufficient test only, since
    it can stall below G for subnormal subgroups (e.g. a subgroup of
    order 2 inside the Klein four-group of the symmetric group on 4
    points).
    """
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")
    K = G
    while True:
        if K.order == H.order:
            return True
        K2 = normal_closure(K, H.gens)
        if K2.order == K.order:
            return False
        K = K2


def ascending_normalizer_chain(G, H):
    """Iterated normalizers of H in G until the chain stabilizes.

    Returns the list [H, N_G(H), N_G(N_G(H)), ...] ending at the first
    repeated term. Reaching G proves subnormality; stalling below G
    proves nothing.
    """
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")
    chain = [H]
    K = H
    while True:
        if K.order == G.order:
            return chain
        N = normalizer(G, K, method="orbit")
        if N.order == K.order:
            return chain
        chain.append(N)
        K = N


def is_subnormal_lattice(G, H):
    """Oracle: breadth-first search for an explicit subnormal series.

    Walks the full subgroup lattice upward from H through normal
    inclusions; only usable within the lattice bound.
    """
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")
    subs = all_subgroups(G)
    groups = [subgroup_from_keys(s, G.degree) for s in subs]
    h_keys = H.element_keys()
    reached = {i for i, s in enumerate(subs) if s == h_keys}
    frontier = list(reached)
    while frontier:
        new = []
        for i in frontier:
            for j, T in enumerate(groups):
                if j in reached or not subs[i] < subs[j]:
                    continue
                if is_normal(T, groups[i]):
                    reached.add(j)
                    new.append(j)
        frontier = new
    return any(len(subs[i]) == G.order for i in reached)


# ---------------------------------------------------------------------------
# conjugacy classes


class ConjugacyClass:
    __slots__ = ("rep", "size", "centralizer_order", "rep_order", "index")

    def __init__(self, rep, size, centralizer_order, rep_order, index):
        self.rep = rep
        self.size = size
        self.centralizer_order = centralizer_order
        self.rep_order = rep_order
        self.index = index

    def __repr__(self):
        return (
            f"ConjugacyClass(index={self.index}, size={self.size}, "
            f"rep_order={self.rep_order})"
        )


class ClassPartition:
    """Complete conjugacy-class data for a fully enumerated group.

    Classes are sorted by (element order of representative, class size,
    serialized representative); the identity class is first. class_index
    maps every element key to its class. power_maps[p][i] is the class of
    rep_i^p for each prime p dividing the exponent.
    """

    def __init__(self, group, classes, class_index, exponent, power_maps):
        self.group = group
        self.classes = classes
        self.class_index = class_index
        self.exponent = exponent
        self.power_maps = power_maps

    def class_of(self, g):
        return self.class_index[perm_key(tuple(g))]

    def power_class(self, i, k):
        """Class of rep_i^k.

        Computed directly through class_index: k reduced mod the
        representative order may factor over primes outside the
        exponent, so the stored prime maps cannot always compose to it.
        """
        k %= self.classes[i].rep_order
        return self.class_index[perm_key(perm_power(self.classes[i].rep, k))]

    def rows(self):
        """Rows of (rep, size, centralizer order, power-map column per prime)."""
        primes = sorted(self.power_maps)
        return [
            (
                c.rep,
                c.size,
                c.centralizer_order,
                {p: self.power_maps[p][c.index] for p in primes},
            )
            for c in self.classes
        ]


def conjugacy_classes(G, bound=ENUMERATION_BOUND, override=False):
    """Partition G into conjugacy classes with power maps.

    Enumerates the whole group, so it refuses |G| beyond the enumeration
    bound unless overridden.
    """
    if G.order > bound and not override:
        raise BoundExceeded(
            f"group order {G.order} exceeds class enumeration bound {bound}"
        )
    deg = G.degree
    class_index = {}
    reps = []
    sizes = []
    for g in G.iter_elements(override=override):
        kg = perm_key(g)
        if kg in class_index:
            continue
        idx = len(reps)
        class_index[kg] = idx
        frontier = [g]
        size = 1
        while frontier:
            y = frontier.pop()
            for s in G.gens:
                z = conjugate(y, s)
                kz = perm_key(z)
                if kz not in class_index:
                    class_index[kz] = idx
                    size += 1
                    frontier.append(z)
        reps.append(g)
        sizes.append(size)
    if sum(sizes) != G.order:
        raise GroupError("class sizes do not sum to the group order")

    rep_orders = [perm_order(r) for r in reps]
    for size in sizes:
        if G.order % size:
            raise GroupError("class size does not divide the group order")

    order_key = sorted(
        range(len(reps)), key=lambda i: (rep_orders[i], sizes[i], perm_key(reps[i]))
    )
    relabel = {old: new for new, old in enumerate(order_key)}
    classes = []
    for new, old in enumerate(order_key):
        classes.append(
            ConjugacyClass(
                rep=reps[old],
                size=sizes[old],
                centralizer_order=G.order // sizes[old],
                rep_order=rep_orders[old],
                index=new,
            )
        )
    class_index = {k: relabel[v] for k, v in class_index.items()}

    exponent = lcm(1, *rep_orders)
    power_maps = {}
    for p in factorint(exponent):
        power_maps[p] = [
            class_index[perm_key(perm_power(c.rep, p))] for c in classes
        ]
    return ClassPartition(G, classes, class_index, exponent, power_maps)


# ---------------------------------------------------------------------------
# quotients


class QuotientAction:
    """Right-coset action of G on the cosets of a normal subgroup N.

    The action is faithful for G/N, compressed to its moved points per
    the degree-reduction policy. project sends g to its induced
    permutation; lift sends an image element back to the canonical
    representative of the coset it maps N to.
    """

    def __init__(self, source, kernel):
        if not kernel.is_subgroup_of(source):
            raise NotASubgroup("kernel is not contained in the source group")
        for n in kernel.gens:
            for g in source.gens:
                if conjugate(n, g) not in kernel:
                    raise NotNormal("kernel is not normal in the source group")
        self.source = source
        self.kernel = kernel
        deg = source.degree
        n_elems = kernel.elements()

        def coset_key(g):
            return min(perm_key(compose(n, g)) for n in n_elems)

        self._coset_key = coset_key
        base_key = coset_key(source.identity)
        index = {base_key: 0}
        reps = [key_to_perm(base_key, deg)]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            r = reps[i]
            for s in source.gens:
                ck = coset_key(compose(r, s))
                if ck not in index:
                    new_i = len(reps)
                    index[ck] = new_i
                    reps.append(key_to_perm(ck, deg))
                    queue.append(new_i)
        self.coset_reps = reps
        self.coset_index = index

        action_gens = []
        for s in source.gens:
            images = tuple(index[coset_key(compose(r, s))] for r in reps)
            action_gens.append(images)
        moved = (
            sorted(set().union(*[set(moved_points(a)) for a in action_gens]))
            if action_gens
            else []
        )
        if not moved:
            self._moved = []
            self._moved_pos = {}
            self.image = PermGroup((), 1)
        else:
            pos = {p: i for i, p in enumerate(moved)}
            self._moved = moved
            self._moved_pos = pos
            comp_gens = [
                tuple(pos[a[p]] for p in moved) for a in action_gens
            ]
            self.image = PermGroup(comp_gens, len(moved))
        if self.image.order * kernel.order != source.order:
            raise GroupError("coset action order certificate failed")

    def full_action(self, g):
        """Permutation of all coset indices induced by g."""
        if tuple(g) not in self.source:
            raise NotAMember("element is not in the source group")
        ck = self._coset_key
        return tuple(
            self.coset_index[ck(compose(r, g))] for r in self.coset_reps
        )

    def project(self, g):
        a = self.full_action(g)
        if not self._moved:
            return self.image.identity
        pos = self._moved_pos
        return tuple(pos[a[p]] for p in self._moved)

    def lift(self, gbar):
        """A source-group preimage of an image element."""
        if tuple(gbar) not in self.image:
            raise NotAMember("element is not in the image group")
        if not self._moved:
            return self.coset_reps[0]
        if 0 not in self._moved_pos:
            raise GroupError("trivial coset unexpectedly fixed by the action")
        target = self._moved[gbar[self._moved_pos[0]]]
        return self.coset_reps[target]


def quotient(G, N):
    return QuotientAction(G, N)


# ---------------------------------------------------------------------------
# small-order subgroup lattice


def closure_elements(gens, degree, bound=None):
    """All elements generated by gens, by breadth-first multiplication."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {perm_key(ident): ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = compose(x, s)
            ky = perm_key(y)
            if ky not in seen:
                if bound is not None and len(seen) >= bound:
                    raise BoundExceeded(f"closure exceeds bound {bound}")
                seen[ky] = y
                queue.append(y)
    return list(seen.values())


def all_subgroups(G):
    """Every subgroup of G, as frozensets of element keys; |G| <= 200.

    Cyclic subgroups are closed under pairwise joins until the collection
    stabilizes, which yields the full lattice.
    """
    if G.order > LATTICE_BOUND:
        raise BoundExceeded(f"subgroup lattice restricted to order <= {LATTICE_BOUND}")
    elements = G.elements()
    ident_key = perm_key(G.identity)
    subs = {frozenset([ident_key])}
    cyclics = []
    for g in elements:
        cyc = frozenset(perm_key(h) for h in closure_elements([g], G.degree))
        if cyc not in subs:
            subs.add(cyc)
            cyclics.append(cyc)
    frontier = list(subs)
    while frontier:
        new = []
        for A in frontier:
            for B in cyclics:
                if B <= A:
                    continue
                gens = [key_to_perm(k, G.degree) for k in A | B]
                join = frozenset(
                    perm_key(h) for h in closure_elements(gens, G.degree, bound=G.order)
                )
                if join not in subs:
                    subs.add(join)
                    new.append(join)
        frontier = new
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def subgroup_from_keys(keys, degree):
    return group_from_elements([key_to_perm(k, degree) for k in keys], degree)


# ---------------------------------------------------------------------------
# generator files


def dump_group_file(path, degree, generators, provenance, expected_order=None):
    doc = {
        "degree": degree,
        "generators": [list(g) for g in generators],
        "provenance": provenance,
    }
    if expected_order is not None:
        doc["expected_order"] = expected_order
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_group_file(path):
    """Load a permutation-generator document and verify expected_order."""
    with open(path) as fh:
        doc = json.load(fh)
    degree = doc["degree"]
    gens = [tuple(g) for g in doc["generators"]]
    G = PermGroup(gens, degree)
    expected = doc.get("expected_order")
    if expected is not None and G.order != expected:
        raise GroupError(
            f"{path}: expected order {expected}, computed {G.order}"
        )
    return G
