"""2-cocycles, coboundaries, and twisted group algebras K[Gamma, natural].

Cocycles take root-of-unity values; the twisted algebra is realized inside
the group algebra of the Schur-type central extension by mu_m, so its
irreducible modules are cut out of ordinary character theory exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional

from .exactnum import Cyclotomic, RootOfUnity
from .groups import FiniteGroup, GroupError, central_extension
from .reps import Matrix, MatrixRep, character_table, irreps_matrices, mat_eq, mat_mul, \
    mat_inverse, mat_scale, mat_trace


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class TwoCocycle:
    """A normalized 2-cocycle on a finite group with mu_m values.

    Stored as exponent table: value(i, j) = zeta_m ^ exponents[i][j].
    """

    group: FiniteGroup
    m: int
    exponents: tuple[tuple[int, ...], ...]

    def value(self, i: int, j: int) -> RootOfUnity:
        return RootOfUnity(self.m, self.exponents[i][j])

    def exponent(self, i: int, j: int) -> int:
        return self.exponents[i][j]

    def is_trivial_valued(self) -> bool:
        return all(e % self.m == 0 for row in self.exponents for e in row) or self.m == 1

    def inverse(self) -> "TwoCocycle":
        return TwoCocycle(self.group, self.m,
                          tuple(tuple((-e) % self.m for e in row) for row in self.exponents))

    def product(self, other: "TwoCocycle") -> "TwoCocycle":
        if other.group is not self.group:
            raise CocycleError("cocycles live on different groups")
        m = self.m * other.m // gcd(self.m, other.m)
        a, b = m // self.m, m // other.m
        table = tuple(tuple((a * self.exponents[i][j] + b * other.exponents[i][j]) % m
                            for j in range(self.group.order))
                      for i in range(self.group.order))
        return TwoCocycle(self.group, m, table)

    def rescale_modulus(self, m: int) -> "TwoCocycle":
        if m % self.m:
            raise CocycleError("new modulus must be a multiple of the old one")
        f = m // self.m
        return TwoCocycle(self.group, m,
                          tuple(tuple(e * f % m for e in row) for row in self.exponents))

    def to_json(self) -> dict:
        values = []
        for i in range(self.group.order):
            for j in range(self.group.order):
                if self.exponents[i][j] % self.m:
                    values.append([i, j, self.exponents[i][j]])
        return {"m": self.m, "values": values, "order": self.group.order}


def trivial_cocycle(G: FiniteGroup) -> TwoCocycle:
    zero = tuple(tuple(0 for _ in range(G.order)) for _ in range(G.order))
    return TwoCocycle(G, 1, zero)


def cocycle_from_values(G: FiniteGroup, value: Callable[[int, int], RootOfUnity]) -> TwoCocycle:
    """Package raw values; use validate_cocycle to check the cocycle identity."""
    m = 1
    vals = []
    for i in range(G.order):
        row = []
        for j in range(G.order):
            v = value(i, j)
            m = m * v.order // gcd(m, v.order)
            row.append(v)
        vals.append(row)
    table = tuple(tuple(v.exp * (m // v.order) % m for v in row) for row in vals)
    return TwoCocycle(G, m, table)


def cocycle_from_json(G: FiniteGroup, obj: dict) -> TwoCocycle:
    m = int(obj["m"])
    table = [[0] * G.order for _ in range(G.order)]
    for i, j, k in obj.get("values", []):
        table[int(i)][int(j)] = int(k) % m
    return validate_cocycle(TwoCocycle(G, m, tuple(tuple(r) for r in table)))


def validate_cocycle(nat: TwoCocycle) -> TwoCocycle:
    """Check the cocycle identity; normalize so value(1, g) = value(g, 1) = 1.

    Raises CocycleError with a witness triple when the identity fails.
    """
    G, m, t = nat.group, nat.m, nat.exponents
    n = G.order
    for g1 in range(n):
        for g2 in range(n):
            g12 = G.mul(g1, g2)
            for g3 in range(n):
                lhs = (t[g1][G.mul(g2, g3)] + t[g2][g3]) % m
                rhs = (t[g1][g2] + t[g12][g3]) % m
                if lhs != rhs:
                    raise CocycleError(
                        f"cocycle identity fails at triple ({g1},{g2},{g3}): "
                        f"{lhs} != {rhs} (exponents mod {m})")
    c = t[0][0] % m
    if c:
        # identity-normalize by the constant coboundary
        t = tuple(tuple((e - c) % m for e in row) for row in t)
    if any(t[0][g] % m or t[g][0] % m for g in range(n)):
        raise CocycleError("cocycle not normalized at the identity after rescaling")
    return TwoCocycle(G, m, t)


# -- coboundary solving (additive, over Z/m) -----------------------------------


def _smith_normal_form(A: list[list[int]]):
    """U A V = D with U, V unimodular; returns (D, U, V)."""
    A = [row[:] for row in A]
    rows, cols = len(A), len(A[0]) if A else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def addmul_col(dst, src, c):
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    t = 0
    while t < min(rows, cols):
        # find pivot with smallest nonzero absolute value
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t] % A[t][t]:
                    addmul_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                    done = False
                elif A[i][t]:
                    addmul_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, cols):
                if A[t][j] % A[t][t]:
                    addmul_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                    done = False
                elif A[t][j]:
                    addmul_col(j, t, -(A[t][j] // A[t][t]))
            if done:
                break
        t += 1
    return A, U, V


def solve_mod(A: list[list[int]], t: list[int], m: int) -> Optional[list[int]]:
    """One solution x of A x = t (mod m), or None."""
    if not A:
        return []
    D, U, V = _smith_normal_form(A)
    rows, cols = len(A), len(A[0])
    Ut = [sum(U[i][j] * t[j] for j in range(rows)) % m for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        c = Ut[i]
        if d == 0:
            if c % m:
                return None
            continue
        g = gcd(d % m if d % m else m, m)
        if c % g:
            return None
        mm = m // g
        dd = (d // g) % mm
        cc = (c // g) % mm
        y[i] = (cc * pow(dd, -1, mm)) % mm if mm > 1 else 0
    x = [sum(V[i][j] * y[j] for j in range(cols)) % m for i in range(cols)]
    return x


def cohomologous(nat1: TwoCocycle, nat2: TwoCocycle) -> Optional[list[RootOfUnity]]:
    """A trivializing beta with nat1/nat2 = d(beta), or None if the classes differ.

    beta is returned as the list of values beta(g) for g in the group, with
    beta(1) = 1 and nat1(g,h)/nat2(g,h) = beta(g) beta(h) beta(gh)^{-1}.
    """
    if nat1.group is not nat2.group:
        raise CocycleError("cocycles live on different groups")
    G = nat1.group
    # If d(beta) = nat1/nat2 over C^x then beta(g)^|G| = prod_d (nat1/nat2)(g,d),
    # so beta takes values in mu_{m |G|}; solving there decides the C^x classes.
    m = nat1.m * nat2.m // gcd(nat1.m, nat2.m)
    m *= G.order
    a, b = nat1.rescale_modulus(m), nat2.rescale_modulus(m)
    n = G.order
    if n == 1:
        return [RootOfUnity.one()]
    rows = []
    target = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n - 1)
            if i:
                row[i - 1] += 1
            if j:
                row[j - 1] += 1
            ij = G.mul(i, j)
            if ij:
                row[ij - 1] -= 1
            rows.append(row)
            target.append((a.exponents[i][j] - b.exponents[i][j]) % m)
    sol = solve_mod(rows, target, m)
    if sol is None:
        return None
    return [RootOfUnity.one()] + [RootOfUnity(m, x) for x in sol]


def twist_by_coboundary(nat: TwoCocycle, beta: list[RootOfUnity]) -> TwoCocycle:
    """nat * d(beta), with d(beta)(g,h) = beta(g) beta(h) beta(gh)^{-1}."""
    G = nat.group
    m = nat.m
    for v in beta:
        m = m * v.order // gcd(m, v.order)
    base = nat.rescale_modulus(m)
    exps = [v.exp * (m // v.order) % m for v in beta]
    table = tuple(
        tuple((base.exponents[i][j] + exps[i] + exps[j] - exps[G.mul(i, j)]) % m
              for j in range(G.order))
        for i in range(G.order))
    return validate_cocycle(TwoCocycle(G, m, table))


def is_trivial_class(nat: TwoCocycle) -> bool:
    return cohomologous(nat, trivial_cocycle(nat.group)) is not None


# -- twisted group algebras ---------------------------------------------------


@dataclass
class TGAIrrep:
    """An irreducible module of K[Gamma, nat], via the central extension."""

    group: FiniteGroup
    cocycle: TwoCocycle
    matrices: list[Matrix]       # matrix of T_gamma per element index
    dimension: int

    def trace_vector(self) -> tuple[Cyclotomic, ...]:
        return tuple(mat_trace(M) for M in self.matrices)

    def verify(self):
        G, nat = self.group, self.cocycle
        for i in range(G.order):
            for j in range(G.order):
                lhs = mat_mul(self.matrices[i], self.matrices[j])
                rhs = mat_scale(self.matrices[G.mul(i, j)],
                                nat.value(i, j).to_cyclotomic())
                if not mat_eq(lhs, rhs):
                    raise CocycleError(f"twisted multiplication fails at ({i},{j})")

    def sort_key(self):
        return (self.dimension, tuple(v.sort_key() for v in self.trace_vector()))


class TwistedGroupAlgebra:
    """K[Gamma, nat] with basis T_gamma and T_g T_h = nat(g,h) T_gh."""

    def __init__(self, group: FiniteGroup, cocycle: TwoCocycle):
        if cocycle.group is not group:
            raise CocycleError("cocycle lives on a different group")
        self.group = group
        self.cocycle = validate_cocycle(cocycle)

    def extension(self):
        nat = self.cocycle
        return central_extension(self.group, lambda i, j: nat.exponents[i][j], nat.m)

    def irreps(self) -> list[TGAIrrep]:
        return twisted_irreps(self.group, self.cocycle)

    def character_data(self) -> list[tuple[int, tuple[Cyclotomic, ...]]]:
        return twisted_character_data(self.group, self.cocycle)


def _central_filter(G: FiniteGroup, nat: TwoCocycle):
    """Central extension and the indices of irreducibles with tautological
    central character."""
    ext, proj, mu = central_extension(G, lambda i, j: nat.exponents[i][j], nat.m)
    m = nat.m
    chars = character_table(ext)
    keep = []
    zgen = 1 if m > 1 else 0  # element (gamma=identity, z=1) has index 1
    target = Cyclotomic.zeta(m, 1)
    for idx, chi in enumerate(chars):
        if m == 1:
            keep.append(idx)
            continue
        if chi.value_at(zgen) == chi.values[0] * target:
            keep.append(idx)
    return ext, chars, keep, m


def twisted_character_data(G: FiniteGroup, nat: TwoCocycle) -> list[tuple[int, tuple[Cyclotomic, ...]]]:
    """(dimension, trace vector on T_gamma) per irreducible, without matrices."""
    nat = validate_cocycle(nat)
    ext, chars, keep, m = _central_filter(G, nat)
    data = []
    for idx in keep:
        chi = chars[idx]
        traces = tuple(chi.value_at(g * m) for g in range(G.order))
        data.append((int(chi.degree), traces))
    data.sort(key=lambda t: (t[0], tuple(v.sort_key() for v in t[1])))
    total = sum(d * d for d, _ in data)
    if total != G.order:
        raise CocycleError(
            f"dimension count {total} != |Gamma| = {G.order} (twisted algebra)")
    return data


def twisted_irreps(G: FiniteGroup, nat: TwoCocycle,
                   matrix_bound: int = 200) -> list[TGAIrrep]:
    """All irreducible K[Gamma,nat]-modules with explicit matrices."""
    nat = validate_cocycle(nat)
    key = ("twisted_irreps", nat.m, nat.exponents)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    if G.order * nat.m > matrix_bound:
        raise CocycleError(
            f"|Gamma| * m = {G.order * nat.m} exceeds the matrix bound {matrix_bound}")
    ext, chars, keep, m = _central_filter(G, nat)
    all_reps = irreps_matrices(ext)
    out = []
    for idx in keep:
        rep = all_reps[idx]
        mats = [rep.matrix(g * m) for g in range(G.order)]
        irrep = TGAIrrep(G, nat, mats, rep.dimension)
        irrep.verify()
        out.append(irrep)
    out.sort(key=lambda r: r.sort_key())
    total = sum(r.dimension ** 2 for r in out)
    if total != G.order:
        raise CocycleError(f"dimension count {total} != |Gamma| = {G.order}")
    G._cache[key] = out
    return out


def dual_twisted(V: TGAIrrep) -> TGAIrrep:
    """The dual module, an irreducible over the inverse cocycle."""
    mats = [tuple(zip(*mat_inverse(M))) for M in V.matrices]
    dual = TGAIrrep(V.group, V.cocycle.inverse(), mats, V.dimension)
    dual.verify()
    return dual
