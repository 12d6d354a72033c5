"""Exact cyclotomic arithmetic with Galois action and field tags.

Elements of Q(zeta_f) are stored against the power basis 1, z, ..,
z^(phi(f)-1) with exact rational coefficients, where z = zeta_f and the
conductor f is minimal for the element (and never 2 mod 4, folding
zeta_2m = -zeta_m^((m+1)/2) for odd m). The power basis is an integral
basis of the cyclotomic field, representation in it is unique, and
equality is plain coefficient equality.

Abelian fields are tagged by (conductor, Galois stabilizer), local
fields by the stabilizer intersected with the decomposition subgroup of
p at an explicit modulus; tags computed at a common modulus compare by
equality.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import sympy

from .arith import (
    coprime_part,
    prime_divisors,
    subgroup_closure,
    unit_group,
    unit_preimage,
    v_p,
)


@lru_cache(maxsize=None)
def _phi(f):
    return int(sympy.totient(f))


@lru_cache(maxsize=None)
def _reduction_table(f):
    """Row k - phi(f) holds the coefficients of x^k mod Phi_f(x)."""
    phi = _phi(f)
    poly = sympy.Poly(sympy.cyclotomic_poly(f, sympy.Symbol("x")), sympy.Symbol("x"))
    coeffs = [int(c) for c in poly.all_coeffs()]  # leading first, monic
    low = coeffs[1:]  # length phi
    rows = []
    # x^phi = -(low[0] x^(phi-1) + ... + low[phi-1])
    cur = [-c for c in reversed(low)]  # index j -> coeff of x^j
    rows.append(tuple(cur))
    for _ in range(f - phi - 1):
        top = cur[phi - 1]
        cur = [0] + cur[: phi - 1]
        if top:
            first = rows[0]
            cur = [c + top * r for c, r in zip(cur, first)]
        rows.append(tuple(cur))
    return rows


def _poly_reduce(f, coeffs):
    """Reduce an exponent->coefficient map to the power basis of Q(zeta_f)."""
    phi = _phi(f)
    out = [Fraction(0)] * phi
    table = None
    for e, c in coeffs.items():
        if not c:
            continue
        e %= f
        if e < phi:
            out[e] += c
        else:
            if table is None:
                table = _reduction_table(f)
            for j, r in enumerate(table[e - phi]):
                if r:
                    out[j] += c * r
    return {e: c for e, c in enumerate(out) if c}


def _fold_even(f, coeffs):
    """Rewrite away conductors congruent to 2 mod 4."""
    while f % 4 == 2:
        m = f // 2
        k = (m + 1) // 2
        new = {}
        for e, c in coeffs.items():
            e %= f
            e2 = (e * k) % m
            c2 = c if e % 2 == 0 else -c
            new[e2] = new.get(e2, Fraction(0)) + c2
        f, coeffs = m, new
    return f, coeffs


def _apply_unit(f, coeffs, u):
    """Galois substitution zeta_f -> zeta_f^u on a reduced map."""
    out = {}
    for e, c in coeffs.items():
        out[(e * u) % f] = c
    return _poly_reduce(f, out)


def _kernel_units(f, d):
    """Units of Z/f reducing to 1 mod d."""
    return unit_preimage(f, d, {1 % d})


def _solve_columns(cols, rhs, nrows):
    """Solve sum_j c_j * cols[j] = rhs exactly; the system must be consistent."""
    ncols = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(ncols)] + [rhs[i]] for i in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if aug[r][col]), None)
        if pivot is None:
            raise ArithmeticError("singular rewrite system")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [a / pv for a in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if aug[r][ncols]:
            raise ArithmeticError("inconsistent rewrite system")
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = aug[r][ncols]
    return sol


def _rewrite_to_divisor(f, coeffs, f2):
    """Re-express a reduced map as a reduced map at conductor f2 | f."""
    if not coeffs:
        return {}
    if set(coeffs) == {0}:
        return dict(coeffs)
    phi, phi2 = _phi(f), _phi(f2)
    d = f // f2
    cols = []
    for j in range(phi2):
        vec = _poly_reduce(f, {(d * j) % f: Fraction(1)})
        cols.append([vec.get(i, Fraction(0)) for i in range(phi)])
    rhs = [coeffs.get(i, Fraction(0)) for i in range(phi)]
    sol = _solve_columns(cols, rhs, phi)
    return {e: c for e, c in enumerate(sol) if c}


def _minimize(f, coeffs):
    if not coeffs:
        return 1, {}
    if set(coeffs) == {0}:
        return 1, dict(coeffs)
    changed = True
    while changed and f > 1:
        changed = False
        for p in prime_divisors(f):
            f2 = f // p
            while f2 % 4 == 2:
                f2 //= 2
            if f2 == f:
                continue
            kernel = _kernel_units(f, f2)
            if all(_apply_unit(f, coeffs, u) == coeffs for u in kernel if u != 1 % f):
                coeffs = _rewrite_to_divisor(f, coeffs, f2)
                f = f2
                changed = True
                break
    return f, coeffs


class Cyclotomic:
    """Immutable exact element of a cyclotomic field, conductor-minimal."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor, coeffs):
        f, cf = _fold_even(conductor, dict(coeffs))
        cf = _poly_reduce(f, cf)
        f, cf = _minimize(f, cf)
        object.__setattr__(self, "conductor", f)
        object.__setattr__(self, "coeffs", cf)
        object.__setattr__(
            self, "_hash", hash((f, tuple(sorted(cf.items()))))
        )

    def __setattr__(self, *args):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return Cyclotomic(1, {})

    @staticmethod
    def one():
        return Cyclotomic(1, {0: Fraction(1)})

    @staticmethod
    def from_rational(q):
        return Cyclotomic(1, {0: Fraction(q)})

    @staticmethod
    def root_of_unity(n, k=1):
        return Cyclotomic(n, {k % n: Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_rational(self):
        return self.conductor == 1

    def rational_value(self):
        if self.conductor != 1:
            raise ValueError("value is irrational")
        return self.coeffs.get(0, Fraction(0))

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_rational(x)
        return NotImplemented

    def _lift_coeffs(self, M):
        d = M // self.conductor
        return {(e * d) % M: c for e, c in self.coeffs.items()}

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        M = lcm(self.conductor, other.conductor)
        a = self._lift_coeffs(M)
        for e, c in other._lift_coeffs(M).items():
            a[e] = a.get(e, Fraction(0)) + c
        return Cyclotomic(M, a)

    __radd__ = __add__

    def __neg__(self):
        out = Cyclotomic.zero() if not self.coeffs else Cyclotomic(
            self.conductor, {e: -c for e, c in self.coeffs.items()}
        )
        return out

    def __sub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Cyclotomic._coerce(other) - self

    def __mul__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        M = lcm(self.conductor, other.conductor)
        a = self._lift_coeffs(M)
        b = other._lift_coeffs(M)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1 + e2) % M
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Cyclotomic(M, out)

    __rmul__ = __mul__

    def inv(self):
        """Exact inverse via the product of all Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero")
        f = self.conductor
        rest = Cyclotomic.one()
        for u in unit_group(f):
            if u == 1 % f:
                continue
            rest = rest * self.galois(u)
        norm = self * rest
        if not norm.is_rational():
            raise ArithmeticError("norm failed to be rational")
        return rest * Cyclotomic.from_rational(1 / norm.rational_value())

    def __truediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Cyclotomic._coerce(other) * self.inv()

    def __eq__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Cyc(0)"
        if self.is_rational():
            return f"Cyc({self.rational_value()})"
        terms = ", ".join(f"{e}: {c}" for e, c in sorted(self.coeffs.items()))
        return f"Cyc(z{self.conductor}; {{{terms}}})"

    # -- Galois ------------------------------------------------------------

    def galois(self, u):
        """Image under zeta_f -> zeta_f^u; u must be a unit mod f."""
        f = self.conductor
        if gcd(u, f) != 1:
            raise ValueError(f"{u} is not a unit mod {f}")
        if f == 1:
            return self
        return Cyclotomic(f, _apply_unit(f, self.coeffs, u % f))

    def conj(self):
        """Complex conjugation, the Galois action of -1."""
        if self.conductor <= 2:
            return self
        return self.galois(self.conductor - 1)

    def stabilizer(self):
        """Units u mod conductor with galois(u) equal to the value."""
        f = self.conductor
        return frozenset(
            u for u in unit_group(f) if _apply_unit(f, self.coeffs, u) == self.coeffs
        ) if f > 1 else frozenset(unit_group(1))

    def degree(self):
        return len(unit_group(self.conductor)) // len(self.stabilizer())

    # -- serialization -----------------------------------------------------

    def to_payload(self):
        return [
            self.conductor,
            [[e, c.numerator, c.denominator] for e, c in sorted(self.coeffs.items())],
        ]

    @staticmethod
    def from_payload(payload):
        f, triples = payload
        return Cyclotomic(f, {e: Fraction(n, d) for e, n, d in triples})


def zeta(n, k=1):
    return Cyclotomic.root_of_unity(n, k)


def rational(q):
    return Cyclotomic.from_rational(q)


def arith(alpha, beta, op):
    """Dispatcher mirroring the arithmetic surface: add|mul|neg|inv."""
    if op == "add":
        return alpha + beta
    if op == "mul":
        return alpha * beta
    if op == "neg":
        return -alpha
    if op == "inv":
        return alpha.inv()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# field tags


@dataclass(frozen=True, order=True)
class AbelianFieldTag:
    """Canonical tag for an abelian number field: minimal conductor plus the
    Galois stabilizer inside (Z/f)^*. Equal tags denote equal fields."""

    conductor: int
    stabilizer: tuple

    @property
    def degree(self):
        return len(unit_group(self.conductor)) // len(self.stabilizer)

    def to_payload(self):
        return [self.conductor, list(self.stabilizer)]

    @staticmethod
    def from_payload(payload):
        return AbelianFieldTag(payload[0], tuple(payload[1]))


RATIONAL_TAG = AbelianFieldTag(1, (0,))


def canonical_tag(modulus, stabilizer):
    """Minimal-conductor tag for the fixed field of a unit subgroup."""
    stab = frozenset(stabilizer)
    divisors = sorted(int(d) for d in sympy.divisors(modulus))
    for d in divisors:
        if d % 4 == 2:
            continue
        kernel = _kernel_units(modulus, d)
        if kernel <= stab:
            image = frozenset(u % d for u in stab)
            return AbelianFieldTag(d, tuple(sorted(image)))
    raise ArithmeticError("no valid conductor found")  # unreachable: d = modulus works


def lift_stabilizer(tag, modulus):
    """Preimage of the tag's stabilizer in (Z/modulus)^*."""
    if modulus % tag.conductor:
        raise ValueError("modulus must be divisible by the tag conductor")
    return unit_preimage(modulus, tag.conductor, set(tag.stabilizer))


def value_field(alpha):
    """Tag of Q(alpha); canonical because alpha is conductor-minimal."""
    return AbelianFieldTag(alpha.conductor, tuple(sorted(alpha.stabilizer())))


def character_field(values):
    """Tag of the field generated by all the values."""
    if not values:
        raise ValueError("empty value list")
    M = 1
    for v in values:
        M = lcm(M, v.conductor)
    stab = None
    for v in values:
        lifted = lift_stabilizer(value_field(v), M)
        stab = lifted if stab is None else (stab & lifted)
    return canonical_tag(M, stab)


@dataclass(frozen=True)
class PPart:
    """The exact real number p^exponent, with a rational exponent."""

    p: int
    exponent: Fraction

    def to_payload(self):
        return [self.p, self.exponent.numerator, self.exponent.denominator]

    @staticmethod
    def from_payload(payload):
        return PPart(payload[0], Fraction(payload[1], payload[2]))


def p_part(alpha, p):
    """p-part of alpha: p^(v_p(|Norm(alpha)|)/degree), exponent exact.

    The norm is the product of the Galois conjugates over a transversal
    of the stabilizer, and is checked to be rational. The convention
    reads |.|_p as the p-part of the absolute norm, so rational integers
    get their classical p-part.
    """
    if alpha.is_zero():
        raise ZeroDivisionError("p-part of zero")
    f = alpha.conductor
    stab = alpha.stabilizer()
    units = unit_group(f)
    seen = set()
    norm = Cyclotomic.one()
    for u in units:
        if u in seen:
            continue
        seen.update((u * s) % f if f > 1 else s for s in stab)
        norm = norm * alpha.galois(u)
    if not norm.is_rational():
        raise ArithmeticError("norm failed to be rational")
    value = norm.rational_value()
    degree = len(units) // len(stab)
    return PPart(p, Fraction(v_p(value, p), degree))


@dataclass(frozen=True)
class LocalFieldTag:
    """Tag for Q_p(K) at an explicit modulus.

    decomposition is the decomposition subgroup D of p in (Z/modulus)^*
    (the preimage of the Frobenius group <p> mod the p'-part), subgroup
    is H intersect D for the field's stabilizer H. Tags of two fields
    computed at the same modulus are equal iff the fields generate the
    same p-adic field.
    """

    p: int
    modulus: int
    decomposition: tuple
    subgroup: tuple

    @property
    def local_degree(self):
        return len(self.decomposition) // len(self.subgroup)

    def to_payload(self):
        return [self.p, self.modulus, list(self.decomposition), list(self.subgroup)]


def local_field_tag(tag, p, modulus=None):
    """Local tag of the abelian field at p; see LocalFieldTag."""
    if modulus is None:
        modulus = tag.conductor
        if modulus % p:
            modulus *= p
    if modulus % tag.conductor:
        raise ValueError("modulus must be divisible by the tag conductor")
    mp = coprime_part(modulus, p)
    frob = subgroup_closure(mp, [p % mp]) if mp > 1 else frozenset(unit_group(mp))
    D = unit_preimage(modulus, mp, frob)
    H = lift_stabilizer(tag, modulus)
    return LocalFieldTag(
        p=p,
        modulus=modulus,
        decomposition=tuple(sorted(D)),
        subgroup=tuple(sorted(H & D)),
    )
