"""Exact irreducible character tables by the Dixon-Burnside method.

Class-sum structure constants are diagonalised simultaneously over a
prime field F_l with l = 1 (mod exponent) and l > 2*sqrt(|G|), which
splits the central characters; degrees are recovered from the modular
orthogonality relation and values are lifted exactly to cyclotomic
numbers through root-of-unity multiplicity recovery.  Every emitted
table passes the full exact verification (both orthogonality relations,
degree sum, Galois closure with power-map column permutation); a
verification failure signals an engine bug.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np
from sympy.ntheory import sqrt_mod

from .arith import (
    prime_divisors,
    primitive_root,
    smallest_prime_one_mod,
    unit_group_generators,
)
from .cyclo import Cyclotomic
from .permgroup import (
    BoundExceeded,
    GroupError,
    PermGroup,
    compose,
    conjugacy_classes,
    inverse,
    key_to_perm,
    perm_key,
    trivial_group,
)

CLASS_COUNT_BOUND = 120
TABLE_ORDER_BOUND = 10**7

# caches key by object identity; values keep the owner alive so ids
# cannot be recycled while an entry is live
_TABLE_CACHE = {}
_CLASS_ELEMENT_CACHE = {}


# ---------------------------------------------------------------------------
# linear algebra over a prime field


def _rref(A, l):
    """Row-reduced echelon form of A mod l, with the pivot columns."""
    A = A.copy() % l
    rows, cols = A.shape
    pivots = []
    rank = 0
    for c in range(cols):
        pivot_row = None
        for r in range(rank, rows):
            if A[r, c]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != rank:
            A[[rank, pivot_row]] = A[[pivot_row, rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), -1, l)) % l
        col = A[:, c].copy()
        col[rank] = 0
        A = (A - np.outer(col, A[rank])) % l
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    return A, pivots


def _solve(B, Y, l):
    """X with B X = Y mod l, for B of full column rank."""
    s = B.shape[1]
    R, pivots = _rref(np.hstack([B, Y]) % l, l)
    if pivots[:s] != list(range(s)):
        raise GroupError("basis matrix lost full column rank")
    return R[:s, s:]


def _kernel(A, l):
    """Column basis of the kernel of the square matrix A mod l."""
    s = A.shape[0]
    R, pivots = _rref(A, l)
    free = [c for c in range(s) if c not in pivots]
    basis = np.zeros((s, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for r, p in enumerate(pivots):
            basis[p, j] = (-int(R[r, f])) % l
    return basis


def _char_poly(A, l):
    """Characteristic polynomial coefficients mod l, leading term first."""
    s = A.shape[0]
    eye = np.eye(s, dtype=np.int64)
    M = eye
    coeffs = [1]
    for k in range(1, s + 1):
        AM = (A @ M) % l
        ck = (-int(np.trace(AM)) * pow(k, -1, l)) % l
        coeffs.append(ck)
        M = (AM + ck * eye) % l
    if np.any(((A @ M) % l)):
        raise GroupError("characteristic polynomial recurrence failed to terminate")
    return coeffs


def _poly_roots(coeffs, l):
    """Roots in F_l, ascending, by evaluating at every residue."""
    xs = np.arange(l, dtype=np.int64)
    acc = np.zeros(l, dtype=np.int64)
    for c in coeffs:
        acc = (acc * xs + c) % l
    return [int(x) for x in np.nonzero(acc == 0)[0]]


# ---------------------------------------------------------------------------
# class matrices


def _class_element_keys(cp):
    entry = _CLASS_ELEMENT_CACHE.get(id(cp))
    if entry is None:
        lists = [[] for _ in cp.classes]
        for key, idx in cp.class_index.items():
            lists[idx].append(key)
        entry = (cp, tuple(tuple(sorted(ks)) for ks in lists))
        _CLASS_ELEMENT_CACHE[id(cp)] = entry
    return entry[1]


def class_matrix(cp, i):
    """Structure constants of the i-th class sum.

    Entry (j, k) counts the pairs (a, b) with a in class i, b in class
    j and ab equal to the fixed representative of class k; column sums
    equal the size of class i.  Computed by one scan of class i, not a
    scan of all pairs.
    """
    r = len(cp.classes)
    deg = cp.group.degree
    reps = [c.rep for c in cp.classes]
    M = [[0] * r for _ in range(r)]
    for key in _class_element_keys(cp)[i]:
        ai = inverse(key_to_perm(key, deg))
        for k, rep in enumerate(reps):
            j = cp.class_index[perm_key(compose(ai, rep))]
            M[j][k] += 1
    return tuple(tuple(row) for row in M)


# ---------------------------------------------------------------------------
# degree reduction


def _reduced_copy(G):
    """Faithful copy of G on its smallest faithful orbit, or on its moved
    points when no proper orbit is faithful.  Returns (group, support)."""
    deg = G.degree
    seen = [False] * deg
    orbits = []
    for start in range(deg):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        head = 0
        while head < len(orbit):
            x = orbit[head]
            head += 1
            for g in G.gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        orbits.append(orbit)

    moved = sorted(
        {x for g in G.gens for x in range(deg) if g[x] != x}
    )
    if not moved:
        return trivial_group(1), (0,)

    def restrict(points):
        index = {x: i for i, x in enumerate(points)}
        gens = tuple(tuple(index[g[x]] for x in points) for g in G.gens)
        return PermGroup(gens, len(points))

    candidates = sorted(
        (o for o in orbits if len(o) > 1), key=lambda o: (len(o), o[0])
    )
    for orbit in candidates:
        points = tuple(sorted(orbit))
        if len(points) >= len(moved):
            break
        H = restrict(points)
        if H.order == G.order:
            return H, points
    if len(moved) == deg:
        return G, tuple(range(deg))
    return restrict(tuple(moved)), tuple(moved)


# ---------------------------------------------------------------------------
# the table


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failed_check: str
    detail: str
    checks: tuple


class CharacterTable:
    """Exact character table over a fixed conjugacy-class order.

    Classes are ordered by (element order, class size, serialized
    representative), the identity class first; rows are sorted by
    (degree, serialized value list).  Representatives live in the
    table's own reduced permutation domain; class_of accepts elements
    in the original group's coordinates.
    """

    def __init__(
        self,
        group,
        support,
        reps,
        sizes,
        centralizer_orders,
        orders,
        exponent,
        power_orbits,
        values,
        dixon_prime=None,
        lookup=None,
    ):
        self.group = group
        self.support = support
        self.reps = reps
        self.sizes = sizes
        self.centralizer_orders = centralizer_orders
        self.orders = orders
        self.exponent = exponent
        self.power_orbits = power_orbits
        self.values = values
        self.dixon_prime = dixon_prime
        self._lookup = lookup

    @property
    def degrees(self):
        return tuple(int(row[0].rational_value()) for row in self.values)

    @property
    def order(self):
        return sum(self.sizes)

    @property
    def class_count(self):
        return len(self.sizes)

    def power_class(self, k, t):
        return self.power_orbits[k][t % self.orders[k]]

    def inverse_class(self, k):
        return self.power_class(k, self.orders[k] - 1)

    def power_maps(self):
        """Per-prime power maps on classes, for primes dividing the exponent."""
        return {
            p: tuple(self.power_class(k, p) for k in range(self.class_count))
            for p in prime_divisors(self.exponent)
        }

    def class_of(self, g):
        """Class index of g, given in the original group's coordinates."""
        if self._lookup is None:
            raise GroupError("table was imported without its class lookup")
        index, class_index = self._lookup
        reduced = tuple(index[g[x]] for x in self.support)
        return class_index[perm_key(reduced)]


def irr_x(T, k):
    """Row indices of the characters not vanishing on class k."""
    return tuple(i for i, row in enumerate(T.values) if row[k])


def dixon_prime(exponent, order):
    """Smallest prime l = 1 (mod exponent) with l > 2*sqrt(order)."""
    return smallest_prime_one_mod(exponent, 2 * isqrt(int(order)) + 1)


def character_table(G, class_bound=CLASS_COUNT_BOUND):
    """Exact character table of G, verified before it is returned."""
    entry = _TABLE_CACHE.get(id(G))
    if entry is not None:
        return entry[1]
    if G.order > TABLE_ORDER_BOUND:
        raise BoundExceeded(
            f"group order {G.order} exceeds the table bound {TABLE_ORDER_BOUND}"
        )
    R, support = _reduced_copy(G)
    cp = conjugacy_classes(R)
    r = len(cp.classes)
    if r > class_bound:
        raise BoundExceeded(f"{r} classes exceed the class-count bound {class_bound}")

    m = cp.exponent
    l = dixon_prime(m, R.order)
    omegas = _central_characters(cp, l)
    rows = _lift_rows(cp, l, omegas)
    rows.sort(key=lambda row: (int(row[0].rational_value()), _row_sort_key(row)))

    index = {x: i for i, x in enumerate(support)}
    T = CharacterTable(
        group=G,
        support=support,
        reps=tuple(c.rep for c in cp.classes),
        sizes=tuple(c.size for c in cp.classes),
        centralizer_orders=tuple(c.centralizer_order for c in cp.classes),
        orders=tuple(c.rep_order for c in cp.classes),
        exponent=m,
        power_orbits=tuple(
            tuple(cp.power_class(k, t) for t in range(cp.classes[k].rep_order))
            for k in range(r)
        ),
        values=tuple(rows),
        dixon_prime=l,
        lookup=(index, cp.class_index),
    )
    report = verify_table(T)
    if not report.ok:
        raise GroupError(
            f"character table failed verification: {report.failed_check}: {report.detail}"
        )
    _TABLE_CACHE[id(G)] = (G, T)
    return T


def _central_characters(cp, l):
    """All central-character vectors mod l, by simultaneous eigenspace
    splitting of the class matrices in class order."""
    r = len(cp.classes)
    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(S.shape[1] == 1 for S in spaces):
            break
        Mi = np.array(class_matrix(cp, i), dtype=np.int64) % l
        refined = []
        for S in spaces:
            s = S.shape[1]
            if s == 1:
                refined.append(S)
                continue
            A = _solve(S, (Mi @ S) % l, l)
            found = 0
            for lam in _poly_roots(_char_poly(A, l), l):
                K = _kernel((A - lam * np.eye(s, dtype=np.int64)) % l, l)
                if K.shape[1] == 0:
                    continue
                found += K.shape[1]
                refined.append((S @ K) % l)
            if found != s:
                raise GroupError("class matrix failed to act semisimply")
        spaces = refined
    if any(S.shape[1] != 1 for S in spaces):
        raise GroupError("class matrices failed to separate the central characters")

    omegas = []
    for S in spaces:
        v = S[:, 0] % l
        if v[0] == 0:
            raise GroupError("central character vanished on the identity class")
        omegas.append((v * pow(int(v[0]), -1, l)) % l)
    return omegas


def _lift_rows(cp, l, omegas):
    """Exact value rows from the modular central characters."""
    r = len(cp.classes)
    order = cp.group.order
    sizes = [c.size for c in cp.classes]
    inv_sizes = [pow(s, -1, l) for s in sizes]
    inv_class = [cp.power_class(k, cp.classes[k].rep_order - 1) for k in range(r)]
    m = cp.exponent
    w = pow(primitive_root(l), (l - 1) // m, l)
    bound = isqrt(order)

    rows = []
    for omega in omegas:
        om = [int(x) for x in omega]
        denom = sum(om[k] * om[inv_class[k]] * inv_sizes[k] for k in range(r)) % l
        if denom == 0:
            raise GroupError("degree denominator vanished mod the Dixon prime")
        d2 = (order * pow(denom, -1, l)) % l
        root = sqrt_mod(d2, l)
        if root is None:
            raise GroupError("degree square has no square root mod the Dixon prime")
        candidates = sorted({int(root), l - int(root)})
        fits = [d for d in candidates if 1 <= d <= bound]
        if len(fits) != 1:
            raise GroupError("degree is not pinned down by the Dixon prime")
        d = fits[0]

        modular = [(d * om[k] * inv_sizes[k]) % l for k in range(r)]
        row = []
        for k in range(r):
            n = cp.classes[k].rep_order
            z = pow(w, m // n, l)
            zpow = [pow(z, t, l) for t in range(n)]
            series = [modular[cp.power_class(k, t)] for t in range(n)]
            inv_n = pow(n, -1, l)
            coeffs = {}
            total = 0
            for s in range(n):
                acc = 0
                for t in range(n):
                    acc += series[t] * zpow[(-s * t) % n]
                ms = (acc * inv_n) % l
                if ms > d:
                    raise GroupError("root-of-unity multiplicity escaped its range")
                total += ms
                if ms:
                    coeffs[s] = Fraction(ms)
            if total != d:
                raise GroupError("root-of-unity multiplicities do not sum to the degree")
            row.append(Cyclotomic(n, coeffs))
        rows.append(tuple(row))
    return rows


def _row_sort_key(row):
    return tuple(_payload_key(v) for v in row)


def _payload_key(value):
    f, triples = value.to_payload()
    return (f, tuple(tuple(t) for t in triples))


# ---------------------------------------------------------------------------
# verification


def verify_table(T):
    """Exact verification of every table invariant; stops at the first
    failure and reports it."""
    checks = []

    def run(name, fn):
        detail = fn()
        checks.append((name, detail is None))
        return detail

    for name, fn in (
        ("degrees", lambda: _check_degrees(T)),
        ("degree-squares", lambda: _check_degree_squares(T)),
        ("row-orthogonality", lambda: _check_row_orthogonality(T)),
        ("column-orthogonality", lambda: _check_column_orthogonality(T)),
        ("galois-closure", lambda: _check_galois(T)),
    ):
        detail = run(name, fn)
        if detail is not None:
            return VerificationReport(
                ok=False, failed_check=name, detail=detail, checks=tuple(checks)
            )
    return VerificationReport(ok=True, failed_check=None, detail=None, checks=tuple(checks))


def _check_degrees(T):
    for i, row in enumerate(T.values):
        v = row[0]
        if not v.is_rational():
            return f"row {i} has an irrational degree"
        q = v.rational_value()
        if q.denominator != 1 or q <= 0:
            return f"row {i} has degree {q}"
    if len(T.values) != T.class_count:
        return f"{len(T.values)} rows against {T.class_count} classes"
    return None


def _check_degree_squares(T):
    total = sum(d * d for d in T.degrees)
    if total != T.order:
        return f"degree squares sum to {total}, group order is {T.order}"
    return None


def _check_row_orthogonality(T):
    n = T.class_count
    for i, row_i in enumerate(T.values):
        for j in range(i, n):
            row_j = T.values[j]
            acc = Cyclotomic.zero()
            for k in range(n):
                acc = acc + row_i[k] * row_j[k].conj() * T.sizes[k]
            want = T.order if i == j else 0
            if acc != Cyclotomic.from_rational(want):
                return f"rows {i},{j} pair to {acc!r}"
    return None


def _check_column_orthogonality(T):
    n = T.class_count
    for k in range(n):
        for m in range(k, n):
            acc = Cyclotomic.zero()
            for row in T.values:
                acc = acc + row[k] * row[m].conj()
            want = T.centralizer_orders[k] if k == m else 0
            if acc != Cyclotomic.from_rational(want):
                return f"columns {k},{m} pair to {acc!r}"
    return None


def _check_galois(T):
    """Galois closure over unit-group generators of (Z/m)^*.

    Closure under generators implies closure under every unit, since
    the twisted rows compose.  Checks the value identity
    galois(chi(x), u) = chi(x^u) per entry and that the twisted row is
    again a row of the table.
    """
    n = T.class_count
    row_lookup = {tuple(_payload_key(v) for v in row): i for i, row in enumerate(T.values)}
    for u in unit_group_generators(T.exponent):
        for i, row in enumerate(T.values):
            twisted = []
            for k in range(n):
                img = row[k].galois(u)
                at_power = row[T.power_class(k, u)]
                if img != at_power:
                    return (
                        f"row {i}, class {k}: galois({u}) disagrees with the"
                        f" power-map column"
                    )
                twisted.append(img)
            if tuple(_payload_key(v) for v in twisted) not in row_lookup:
                return f"row {i} twisted by {u} is not a table row"
    return None


# ---------------------------------------------------------------------------
# interchange documents


SCHEMA_VERSION = 1


def table_document(T):
    """JSON-ready document for a table; the round trip is exact."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "character_table",
        "order": T.order,
        "exponent": T.exponent,
        "dixon_prime": T.dixon_prime,
        "degree": len(T.reps[0]) if T.reps else 1,
        "support": list(T.support),
        "classes": [
            {
                "rep": list(T.reps[k]),
                "size": T.sizes[k],
                "centralizer_order": T.centralizer_orders[k],
                "order": T.orders[k],
                "power_orbit": list(T.power_orbits[k]),
            }
            for k in range(T.class_count)
        ],
        "power_maps": {str(p): list(v) for p, v in T.power_maps().items()},
        "values": [[v.to_payload() for v in row] for row in T.values],
    }


def table_from_document(doc):
    """Rebuild a table from its document; the group lookup is not
    reconstructed, so class_of is unavailable on the result."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise GroupError("unsupported table document version")
    if doc.get("kind") != "character_table":
        raise GroupError("document is not a character table")
    classes = doc["classes"]
    return CharacterTable(
        group=None,
        support=tuple(doc["support"]),
        reps=tuple(tuple(c["rep"]) for c in classes),
        sizes=tuple(c["size"] for c in classes),
        centralizer_orders=tuple(c["centralizer_order"] for c in classes),
        orders=tuple(c["order"] for c in classes),
        exponent=doc["exponent"],
        power_orbits=tuple(tuple(c["power_orbit"]) for c in classes),
        values=tuple(
            tuple(Cyclotomic.from_payload(p) for p in row) for row in doc["values"]
        ),
        dixon_prime=doc.get("dixon_prime"),
        lookup=None,
    )


def dump_table(T, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(table_document(T), fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_table(path):
    with open(path, encoding="utf-8") as fh:
        return table_from_document(json.load(fh))
