"""Exact arithmetic over the rationals and cyclotomic fields.

Every scalar in the library is a `Cyclotomic`: an element of Q(zeta_e) on the
power basis 1, z, ..., z^(phi(e)-1), reduced modulo the e-th cyclotomic
polynomial and then pushed down to its minimal conductor.  Equality of values
is equality of canonical forms; there is no floating point anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

Rational = Fraction

__all__ = [
    "Rational",
    "Cyclotomic",
    "RootOfUnity",
    "parse_rational",
    "format_rational",
    "zeta",
]


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "p" into an exact rational."""
    return Fraction(s.strip())


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


@lru_cache(maxsize=None)
def euler_phi(e: int) -> int:
    n, result, p = e, e, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, used to build cyclotomic polynomials.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e, low degree first."""
    if e == 1:
        return (-1, 1)
    poly = [0] * e + [1]
    poly[0] = -1  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(e: int) -> tuple[tuple[Fraction, ...], ...]:
    """Rows expressing z^j (phi(e) <= j <= max(e-1, 2 phi(e)-2)) in the basis."""
    d = euler_phi(e)
    phi_e = cyclotomic_polynomial(e)
    # z^d = -(phi_e[0] + ... + phi_e[d-1] z^(d-1)) since phi_e is monic
    rows: list[tuple[Fraction, ...]] = []
    first = tuple(Fraction(-phi_e[i]) for i in range(d))
    rows.append(first)
    top_degree = max(e - 1, 2 * d - 2)
    for _ in range(top_degree - d):
        prev = rows[-1]
        shifted = [Fraction(0)] + list(prev[: d - 1])
        top = prev[d - 1]
        if top:
            shifted = [shifted[i] + top * first[i] for i in range(d)]
        rows.append(tuple(shifted))
    return tuple(rows)


@lru_cache(maxsize=None)
def _subfield_solver(e: int, f: int):
    """Echelon data for membership of Q(zeta_e)-elements in Q(zeta_f), f | e.

    Returns (pivots, rows) such that a coefficient vector v lies in the span of
    the z_f-power basis iff back-substitution leaves no residue.
    """
    d, df = euler_phi(e), euler_phi(f)
    step = e // f
    cols = []
    for j in range(df):
        vec = [Fraction(0)] * (2 * d)
        vec[j * step] = Fraction(1)
        cols.append(_reduce_vector(e, vec))
    # Gaussian elimination over Q on the column space, tracking combinations.
    basis: list[tuple[list[Fraction], list[Fraction]]] = []
    for j, col in enumerate(cols):
        col = list(col)
        combo = [Fraction(0)] * df
        combo[j] = Fraction(1)
        for piv, (bvec, bcombo) in zip([next(i for i, x in enumerate(v) if x) for v, _ in basis], basis):
            if col[piv]:
                c = col[piv] / bvec[piv]
                col = [a - c * b for a, b in zip(col, bvec)]
                combo = [a - c * b for a, b in zip(combo, bcombo)]
        if any(col):
            basis.append((col, combo))
    pivots = [next(i for i, x in enumerate(v) if x) for v, _ in basis]
    return pivots, tuple((tuple(v), tuple(c)) for v, c in basis)


def _reduce_vector(e: int, vec: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a coefficient vector of z-powers (any length) mod Phi_e."""
    d = euler_phi(e)
    if len(vec) < e and len(vec) <= d:
        out = list(vec) + [Fraction(0)] * (d - len(vec))
        return tuple(out)
    # First fold exponents mod e (z^e = 1), then reduce degrees >= d.
    folded = [Fraction(0)] * e
    for j, c in enumerate(vec):
        if c:
            folded[j % e] += c
    rows = _reduction_rows(e)
    out = folded[:d] + [Fraction(0)] * max(0, d - len(folded))
    for j in range(d, e):
        c = folded[j]
        if c:
            row = rows[j - d]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out[:d])


class Cyclotomic:
    """An exact element of Q(zeta_e), canonically reduced.

    Canonical form: minimal conductor (with conductor 1 = rational, conductor
    never congruent to 2 mod 4), coefficients on the power basis mod Phi_e.
    """

    __slots__ = ("e", "coeffs", "_hash")

    def __init__(self, e: int, coeffs: Iterable[Fraction], *, _canonical: bool = False):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if _canonical:
            self.e = e
            self.coeffs = coeffs
        else:
            vec = _reduce_vector(e, list(coeffs))
            e, vec = _descend(e, vec)
            self.e = e
            self.coeffs = vec
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyclotomic":
        return _ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _ONE

    @staticmethod
    def zeta(e: int, k: int = 1) -> "Cyclotomic":
        if e <= 0:
            raise ValueError("conductor must be positive")
        k %= e
        vec = [Fraction(0)] * e
        vec[k] = Fraction(1)
        return Cyclotomic(e, vec)

    # -- ring structure --------------------------------------------------

    def _lift(self, E: int) -> tuple[Fraction, ...]:
        if E == self.e:
            return self.coeffs
        step = E // self.e
        vec = [Fraction(0)] * (euler_phi(self.e) * step + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                vec[i * step] = c
        return _reduce_vector(E, vec)

    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        E = _lcm(self.e, other.e)
        a, b = self._lift(E), other._lift(E)
        return Cyclotomic(E, [x + y for x, y in zip(a, b)])

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.e, tuple(-c for c in self.coeffs), _canonical=True)

    def __sub__(self, other) -> "Cyclotomic":
        return self.__add__(_coerce(other).__neg__())

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        E = _lcm(self.e, other.e)
        a, b = self._lift(E), other._lift(E)
        d = euler_phi(E)
        prod = [Fraction(0)] * (2 * d - 1 if d > 0 else 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(E, prod)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero in a cyclotomic field")
        e, d = self.e, euler_phi(self.e)
        if e == 1:
            return Cyclotomic.from_rational(1 / self.coeffs[0])
        # Extended Euclid on (self as polynomial, Phi_e) over Q.
        phi = [Fraction(c) for c in cyclotomic_polynomial(e)]
        a = list(self.coeffs)
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r0[_poly_deg(r0)]
        inv_vec = [x / c for x in s0]
        return Cyclotomic(e, _reduce_vector(e, inv_vec))

    def __truediv__(self, other) -> "Cyclotomic":
        return self.__mul__(_coerce(other).inverse())

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __pow__(self, n: int) -> "Cyclotomic":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = _ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, k: int) -> "Cyclotomic":
        """Apply the automorphism z -> z^k (k coprime to the conductor)."""
        if gcd(k, self.e) != 1:
            raise ValueError(f"{k} is not coprime to the conductor {self.e}")
        vec = [Fraction(0)] * self.e
        for i, c in enumerate(self.coeffs):
            if c:
                vec[(i * k) % self.e] += c
        return Cyclotomic(self.e, vec)

    def conj(self) -> "Cyclotomic":
        """Complex conjugation (z -> z^{-1})."""
        return self.galois(self.e - 1) if self.e > 1 else self

    # -- predicates / structure -------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.e == 1

    def rational_value(self) -> Fraction:
        if self.e != 1:
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def as_root_of_unity(self) -> Optional["RootOfUnity"]:
        """Return (m, k) with self == zeta_m^k, or None."""
        e = self.e
        if e == 1:
            v = self.coeffs[0]
            if v == 1:
                return RootOfUnity(1, 0)
            if v == -1:
                return RootOfUnity(2, 1)
            return None
        nz = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if len(nz) == 1 and nz[0][1] in (1, -1):
            i, c = nz[0]
            if c == 1:
                return RootOfUnity(e, i)
            # -z^i: an element of mu_(2e) when e is odd; for even e it reduces.
            return RootOfUnity(2 * e, (2 * i + e) % (2 * e))
        # Conductors not in power-basis-monomial form: compare against all
        # candidates +-z^i (only needed for exotic reduced forms, e.g. e=2^k
        # where some powers fold; cheap since e is small).
        for i in range(e):
            if self == Cyclotomic.zeta(e, i):
                return RootOfUnity(e, i)
            if self == -Cyclotomic.zeta(e, i):
                return RootOfUnity(2 * e, (2 * i + e) % (2 * e))
        return None

    # -- ordering / identity ----------------------------------------------

    def sort_key(self):
        return (self.e, self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = _coerce(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.e == other.e and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.e, self.coeffs))
        return self._hash

    # -- formats -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Cyclotomic({self.to_text()!r})"

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            else:
                parts.append(f"{format_rational(c)}*z({self.e})^{i}")
        return " + ".join(parts)

    @staticmethod
    def from_text(s: str) -> "Cyclotomic":
        s = s.strip()
        if s == "0":
            return _ZERO
        total = _ZERO
        for term in s.split("+"):
            term = term.strip()
            m = re.fullmatch(r"(-?\d+(?:/\d+)?)(?:\*z\((\d+)\)\^(\d+))?", term)
            if not m:
                raise ValueError(f"cannot parse cyclotomic term {term!r}")
            c = Fraction(m.group(1))
            if m.group(2) is None:
                total = total + Cyclotomic.from_rational(c)
            else:
                e, k = int(m.group(2)), int(m.group(3))
                total = total + Cyclotomic.from_rational(c) * Cyclotomic.zeta(e, k)
        return total

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "coeffs": [[i, format_rational(c)] for i, c in enumerate(self.coeffs) if c],
        }

    @staticmethod
    def from_json(obj: dict) -> "Cyclotomic":
        e = int(obj["e"])
        vec = [Fraction(0)] * max(euler_phi(e), 1)
        for i, q in obj["coeffs"]:
            vec[int(i)] = parse_rational(q)
        return Cyclotomic(e, vec)


def _poly_deg(p: list[Fraction]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return 0


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db, lb = _poly_deg(b), b[_poly_deg(b)]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(_poly_deg(a) - db, -1, -1):
        c = a[i + db] / lb
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    return [a[i] - (b[i] if i < len(b) else Fraction(0)) for i in range(n)]


def _descend(e: int, vec: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    """Push an element to its minimal conductor (and drop e = 2 mod 4)."""
    if e % 4 == 2:
        # Q(zeta_e) = Q(zeta_{e/2}) for e = 2 mod 4; rewrite.
        half = e // 2
        lifted = [Fraction(0)] * e
        for i, c in enumerate(vec):
            lifted[i] = c
        out = [Fraction(0)] * e
        for i, c in enumerate(lifted):
            if c:
                # zeta_e = -zeta_half^((half+1)//2): zeta_e^i = (-1)^i zeta_half^(i*(half+1)//2)
                k = (i * ((half + 1) // 2)) % half
                out[k] += c if i % 2 == 0 else -c
        return _descend(half, _reduce_vector(half, out[:half]))
    changed = True
    while changed and e > 1:
        changed = False
        for p in _prime_factors(e):
            f = e // p
            if f % 4 == 2:
                f //= 2  # Q(zeta_f) = Q(zeta_{f/2}) for f = 2 mod 4
            sub = _try_descend_to(e, f, vec)
            if sub is not None:
                e, vec = f, sub
                changed = True
                break
    return e, vec


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _try_descend_to(e: int, f: int, vec: tuple[Fraction, ...]) -> Optional[tuple[Fraction, ...]]:
    if f == 1:
        if all(c == 0 for c in vec[1:]):
            return (vec[0],)
        return None
    pivots, basis = _subfield_solver(e, f)
    residue = list(vec)
    coords = [Fraction(0)] * euler_phi(f)
    for piv, (bvec, bcombo) in zip(pivots, basis):
        if residue[piv]:
            c = residue[piv] / bvec[piv]
            residue = [a - c * b for a, b in zip(residue, bvec)]
            for i, x in enumerate(bcombo):
                coords[i] += c * x
    if any(residue):
        return None
    return _reduce_vector(f, coords)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _coerce(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(Fraction(x))
    raise TypeError(f"cannot coerce {type(x)} to Cyclotomic")


class RootOfUnity:
    """zeta_m^k, stored with m minimal (m = order of the value)."""

    __slots__ = ("order", "exp")

    def __init__(self, order: int, exp: int):
        if order <= 0:
            raise ValueError("order must be positive")
        exp %= order
        g = gcd(exp, order) if exp else order
        # reduce so that gcd(exp, order) == 1 unless the value is 1
        if exp == 0:
            self.order, self.exp = 1, 0
        else:
            self.order, self.exp = order // g, exp // g

    @staticmethod
    def one() -> "RootOfUnity":
        return RootOfUnity(1, 0)

    @staticmethod
    def minus_one() -> "RootOfUnity":
        return RootOfUnity(2, 1)

    @staticmethod
    def from_sign(s: int) -> "RootOfUnity":
        if s == 1:
            return RootOfUnity(1, 0)
        if s == -1:
            return RootOfUnity(2, 1)
        raise ValueError("sign must be +-1")

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = _lcm(self.order, other.order)
        return RootOfUnity(m, self.exp * (m // self.order) + other.exp * (m // other.order))

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exp)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exp * n)

    def to_cyclotomic(self) -> Cyclotomic:
        return Cyclotomic.zeta(self.order, self.exp)

    def is_one(self) -> bool:
        return self.order == 1

    def sign_value(self) -> int:
        """Return +-1 for order <= 2 values; error otherwise."""
        if self.order == 1:
            return 1
        if self.order == 2:
            return -1
        raise ValueError(f"root of unity of order {self.order} is not a sign")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return self.order == other.order and self.exp == other.exp

    def __hash__(self):
        return hash((self.order, self.exp))

    def __repr__(self):
        if self.order == 1:
            return "RootOfUnity(1)"
        if self.order == 2:
            return "RootOfUnity(-1)"
        return f"RootOfUnity(zeta_{self.order}^{self.exp})"

    def to_json(self) -> list[int]:
        return [self.order, self.exp]

    @staticmethod
    def from_json(obj) -> "RootOfUnity":
        return RootOfUnity(int(obj[0]), int(obj[1]))


_ZERO = Cyclotomic(1, (Fraction(0),), _canonical=True)
_ONE = Cyclotomic(1, (Fraction(1),), _canonical=True)


def zeta(e: int, k: int = 1) -> Cyclotomic:
    return Cyclotomic.zeta(e, k)


def cyclo_arith(a: Cyclotomic, b: Optional[Cyclotomic], op: str) -> Cyclotomic:
    """Dispatch form of the basic field operations (CLI surface)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown operation {op!r}")
