"""Exact character tables and explicit irreducible matrix representations.

Character tables come from the Burnside/Dixon class-sum eigenvector method
over a prime field F_p with p = 1 mod exp(G), lifted exactly to cyclotomic
values and verified by the orthogonality relations.  Explicit irreps are cut
out of the regular representation by central idempotents together with a
multiplicity-one weight vector for some abelian subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .exactnum import Cyclotomic, euler_phi
from .groups import FiniteGroup, GroupError, SubgroupHandle, coset_representatives

DEFAULT_MATRIX_BOUND = 200


class RepError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """A class function with cyclotomic values, one per conjugacy class."""

    group: FiniteGroup
    values: tuple[Cyclotomic, ...]

    @property
    def degree(self) -> Fraction:
        v = self.values[0]
        return v.rational_value()

    def value_at(self, g: int) -> Cyclotomic:
        return self.values[self.group.class_of(g)]

    def inner(self, other: "Character") -> Fraction:
        G = self.group
        classes = G.conjugacy_classes()
        total = Cyclotomic.zero()
        for i, c in enumerate(classes):
            total = total + len(c) * self.values[i] * other.values[i].conj()
        total = total * Fraction(1, G.order)
        if not total.is_rational():
            raise RepError("inner product of characters is not rational")
        return total.rational_value()

    def is_irreducible(self) -> bool:
        return self.inner(self) == 1

    def __add__(self, other: "Character") -> "Character":
        return Character(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def sort_key(self):
        return (self.degree, tuple(v.sort_key() for v in self.values))

    def to_json(self) -> list:
        return [v.to_json() for v in self.values]


class MatrixRep:
    """An exact matrix representation: one cyclotomic matrix per element."""

    def __init__(self, group: FiniteGroup, matrices: Sequence[tuple[tuple[Cyclotomic, ...], ...]],
                 *, check: bool = True):
        self.group = group
        self.matrices = [tuple(tuple(row) for row in M) for M in matrices]
        self.dimension = len(self.matrices[0])
        if check:
            self._verify()

    def _verify(self):
        G = self.group
        if not mat_eq(self.matrices[0], mat_identity(self.dimension)):
            raise RepError("identity does not map to the identity matrix")
        n = G.order
        pairs = ((a, b) for a in range(n) for b in range(n)) if n <= 48 else \
            _sample_pairs(n)
        for a, b in pairs:
            if not mat_eq(mat_mul(self.matrices[a], self.matrices[b]),
                          self.matrices[G.mul(a, b)]):
                raise RepError(f"multiplicativity fails at ({a},{b})")

    def matrix(self, g: int):
        return self.matrices[g]

    def character(self) -> Character:
        G = self.group
        values = []
        for c in G.conjugacy_classes():
            values.append(mat_trace(self.matrices[c[0]]))
        return Character(G, tuple(values))

    def direct_sum(self, other: "MatrixRep") -> "MatrixRep":
        mats = []
        for g in range(self.group.order):
            mats.append(mat_block_diag(self.matrices[g], other.matrices[g]))
        return MatrixRep(self.group, mats, check=False)


def _sample_pairs(n: int, count: int = 400):
    import random
    rng = random.Random(99)
    for _ in range(count):
        yield rng.randrange(n), rng.randrange(n)


# -- small exact matrix helpers ---------------------------------------------

Matrix = tuple[tuple[Cyclotomic, ...], ...]


def mat_identity(n: int) -> Matrix:
    one, zero = Cyclotomic.one(), Cyclotomic.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_zero(n: int, m: int) -> Matrix:
    zero = Cyclotomic.zero()
    return tuple(tuple(zero for _ in range(m)) for _ in range(n))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            s = Cyclotomic.zero()
            for t in range(k):
                a = Ai[t]
                if not a.is_zero():
                    b = B[t][j]
                    if not b.is_zero():
                        s = s + a * b
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_trace(A: Matrix) -> Cyclotomic:
    s = Cyclotomic.zero()
    for i in range(len(A)):
        s = s + A[i][i]
    return s


def mat_scale(A: Matrix, c: Cyclotomic) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in A)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_block_diag(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B)
    zero = Cyclotomic.zero()
    rows = []
    for i in range(n):
        rows.append(tuple(A[i]) + tuple(zero for _ in range(m)))
    for i in range(m):
        rows.append(tuple(zero for _ in range(n)) + tuple(B[i]))
    return tuple(rows)


def mat_inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + list(mat_identity(n)[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise RepError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_left_kernel_basis(rows: list[list[Cyclotomic]]) -> list[list[Cyclotomic]]:
    """Basis of the null space of the matrix with the given rows (solutions x
    with rows . x = 0), by exact Gaussian elimination."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not mat[i][c].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                coef = mat[i][c]
                mat[i] = [x - coef * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero, one = Cyclotomic.zero(), Cyclotomic.one()
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for ri, pc in enumerate(pivots):
            vec[pc] = -mat[ri][fc]
        basis.append(vec)
    return basis


# -- Dixon / Burnside character tables -----------------------------------------


def _choose_prime(G: FiniteGroup) -> tuple[int, int]:
    e = G.exponent()
    p = 2 * G.order + 1
    p += (e - (p - 1) % e) % e
    while True:
        if (p - 1) % e == 0 and _is_prime(p):
            return p, e
        p += e


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primitive_root_of_unity(p: int, e: int) -> int:
    """An element of order exactly e in F_p^* (p = 1 mod e)."""
    for g in range(2, p):
        w = pow(g, (p - 1) // e, p)
        ok = True
        for q in set(_factorize(e)):
            if pow(w, e // q, p) == 1:
                ok = False
                break
        if ok and pow(w, e, p) == 1:
            return w
    raise RepError("no primitive root found")


def _factorize(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def character_table(G: FiniteGroup) -> list[Character]:
    """All irreducible characters, sorted by (degree, lex values)."""
    cached = G._cache.get("character_table")
    if cached is not None:
        return cached

    classes = G.conjugacy_classes()
    k = len(classes)
    reps = [c[0] for c in classes]
    class_of = [G.class_of(g) for g in range(G.order)]
    sizes = [len(c) for c in classes]
    inv_class = [class_of[G.inverse(r)] for r in reps]
    p, e = _choose_prime(G)

    # structure constants a[i][j][m]: number of ways c_i * c_j hits rep of class m
    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i, ci in enumerate(classes):
        for x in ci:
            row = G.table[x]
            for y in range(G.order):
                a[i][class_of[y]][class_of[row[y]]] += 1
    for i in range(k):
        for j in range(k):
            for m in range(k):
                # normalize: ways to write a FIXED element of class m
                assert a[i][j][m] % sizes[m] == 0
                a[i][j][m] //= sizes[m]

    # common eigenvectors of B_i (B_i)[j][m] = a[i][j][m] over F_p
    subspaces = [_identity_subspace(k, p)]
    for i in range(1, k):
        B = [[a[i][j][m] % p for m in range(k)] for j in range(k)]
        new_subspaces = []
        for S in subspaces:
            if len(S) == 1:
                new_subspaces.append(S)
                continue
            new_subspaces.extend(_split_by_eigenvalues(B, S, p))
        subspaces = new_subspaces
        if all(len(S) == 1 for S in subspaces):
            break
    if not all(len(S) == 1 for S in subspaces):
        raise RepError("class matrices did not split the space (unexpected)")

    omegas = []
    for S in subspaces:
        v = S[0]
        inv0 = pow(v[0], p - 2, p)
        omegas.append([x * inv0 % p for x in v])

    w = _primitive_root_of_unity(p, e)
    chars: list[Character] = []
    for om in omegas:
        # degree from sum_j om_j om_{j*} / |C_j| = |G| / d^2
        s = 0
        for j in range(k):
            s = (s + om[j] * om[inv_class[j]] * pow(sizes[j], p - 2, p)) % p
        d2 = G.order * pow(s, p - 2, p) % p
        d = _sqrt_small(d2, p, G.order)
        chi_mod = [d * om[j] * pow(sizes[j], p - 2, p) % p for j in range(k)]
        values = [None] * k
        for j, r in enumerate(reps):
            n_r = G.element_order(r)
            # chi(r^l) mod p for all l
            chi_powers = [chi_mod[class_of[G.power(r, l)]] for l in range(n_r)]
            wnr = pow(w, e // n_r, p)
            total = Cyclotomic.zero()
            ninv = pow(n_r, p - 2, p)
            for t in range(n_r):
                m_t = 0
                for l in range(n_r):
                    m_t = (m_t + chi_powers[l] * pow(wnr, (-t * l) % n_r, p)) % p
                m_t = m_t * ninv % p
                if m_t >= p - G.order:  # should not happen; multiplicities are small
                    raise RepError("character lift produced an out-of-range multiplicity")
                if m_t:
                    total = total + m_t * Cyclotomic.zeta(n_r, t)
            values[j] = total
        chars.append(Character(G, tuple(values)))

    chars.sort(key=lambda ch: ch.sort_key())
    _verify_table(G, chars)
    G._cache["character_table"] = chars
    return chars


def _identity_subspace(k: int, p: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _split_by_eigenvalues(B: list[list[int]], S: list[list[int]], p: int) -> list[list[list[int]]]:
    """Split span(S) into eigen-subspaces of B (acting on coordinates)."""
    k = len(B)
    dim = len(S)
    # matrix of B restricted to span(S): solve B s_i = sum_j M[j][i] s_j
    bs = [_matvec(B, s, p) for s in S]
    # coordinates: solve via echelon form of S
    ech, transform = _echelon(S, p)
    M = [[0] * dim for _ in range(dim)]
    for i, v in enumerate(bs):
        coords = _coords_in_echelon(v, ech, transform, p)
        for j in range(dim):
            M[j][i] = coords[j]
    charpoly = _charpoly(M, p)
    roots = [lam for lam in range(p) if _poly_eval(charpoly, lam, p) == 0]
    out = []
    for lam in roots:
        A = [[(M[i][j] - (lam if i == j else 0)) % p for j in range(dim)] for i in range(dim)]
        null = _nullspace(A, p)
        vecs = []
        for nv in null:
            vec = [0] * k
            for c, s in zip(nv, S):
                if c:
                    for t in range(k):
                        vec[t] = (vec[t] + c * s[t]) % p
            vecs.append(vec)
        if vecs:
            out.append(vecs)
    assert sum(len(v) for v in out) == dim, "eigen split lost dimensions"
    return out


def _matvec(B, v, p):
    k = len(B)
    return [sum(B[i][j] * v[j] for j in range(k)) % p for i in range(k)]


def _echelon(S, p):
    rows = [list(r) for r in S]
    n = len(rows[0])
    transform = [[1 if i == j else 0 for j in range(len(rows))] for i in range(len(rows))]
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        transform[r], transform[piv] = transform[piv], transform[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        transform[r] = [x * inv % p for x in transform[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
                transform[i] = [(x - f * y) % p for x, y in zip(transform[i], transform[r])]
        pivots.append(c)
        r += 1
    return (rows[:r], pivots), transform[:r]


def _coords_in_echelon(v, ech, transform, p):
    rows, pivots = ech
    v = list(v)
    coords = [0] * len(rows)
    for i, c in enumerate(pivots):
        if v[c] % p:
            f = v[c]
            coords[i] = f
            v = [(x - f * y) % p for x, y in zip(v, rows[i])]
    assert all(x % p == 0 for x in v), "vector not in subspace"
    # coords are in echelon basis; convert to original S-coordinates
    out = [0] * len(transform[0])
    for ci, t in zip(coords, transform):
        if ci:
            for j in range(len(out)):
                out[j] = (out[j] + ci * t[j]) % p
    return out


def _charpoly(M, p):
    """Characteristic polynomial mod p via Faddeev-LeVerrier-free expansion
    (Hessenberg reduction)."""
    n = len(M)
    H = [row[:] for row in M]
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if H[r][c] % p), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[c + 1], H[piv] = H[piv], H[c + 1]
            for r in range(n):
                H[r][c + 1], H[r][piv] = H[r][piv], H[r][c + 1]
        inv = pow(H[c + 1][c], p - 2, p)
        for r in range(c + 2, n):
            if H[r][c] % p:
                f = H[r][c] * inv % p
                for j in range(n):
                    H[r][j] = (H[r][j] - f * H[c + 1][j]) % p
                for i in range(n):
                    H[i][c + 1] = (H[i][c + 1] + f * H[i][r]) % p
    # char polys of leading Hessenberg minors
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m(x) = (x - H[m-1][m-1]) p_{m-1}(x) - sum ...
        term = _poly_shift_sub(polys[m - 1], H[m - 1][m - 1], p)
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            coef = prod * H[i - 1][m - 1] % p
            if coef:
                term = _poly_axpy(term, polys[i - 1], (-coef) % p, p)
        polys.append(term)
    return polys[n]


def _poly_shift_sub(poly, a, p):
    # (x - a) * poly
    out = [0] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = (out[i + 1] + c) % p
        out[i] = (out[i] - a * c) % p
    return out


def _poly_axpy(poly, other, coef, p):
    out = list(poly)
    while len(out) < len(other):
        out.append(0)
    for i, c in enumerate(other):
        out[i] = (out[i] + coef * c) % p
    return out


def _poly_eval(poly, x, p):
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _nullspace(A, p):
    n = len(A)
    rows = [row[:] for row in A]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for ri, pc in enumerate(pivots):
            vec[pc] = (-rows[ri][fc]) % p
        basis.append(vec)
    return basis


def _sqrt_small(d2: int, p: int, bound: int) -> int:
    for d in range(1, bound + 1):
        if d * d % p == d2:
            return d
    raise RepError("no small square root for a character degree")


def _verify_table(G: FiniteGroup, chars: list[Character]):
    classes = G.conjugacy_classes()
    if sum(int(ch.degree) ** 2 for ch in chars) != G.order:
        raise RepError("degree sum check failed")
    for i, chi in enumerate(chars):
        for j, psi in enumerate(chars):
            expected = Fraction(1 if i == j else 0)
            if chi.inner(psi) != expected:
                raise RepError(f"orthogonality fails for characters {i},{j}")
    # column orthogonality at the identity column
    s = sum((int(ch.degree) for ch in chars))
    del s, classes


# -- explicit irreducible matrices ----------------------------------------------


def irreps_matrices(G: FiniteGroup, matrix_bound: int = DEFAULT_MATRIX_BOUND) -> list[MatrixRep]:
    """One exact MatrixRep per irreducible character, in table order."""
    cached = G._cache.get("irreps")
    if cached is not None:
        return cached
    if G.order > matrix_bound:
        raise RepError(
            f"|G| = {G.order} exceeds the matrix bound {matrix_bound}; "
            "use character-only mode (character_table)")
    chars = character_table(G)
    reps = [_cut_irrep(G, chi) for chi in chars]
    G._cache["irreps"] = reps
    return reps


def _regular_vector_idempotent(G: FiniteGroup, chi: Character) -> list[Cyclotomic]:
    """The column e_chi . delta_e of the central idempotent in K[G]."""
    n = G.order
    coef = Fraction(int(chi.degree), n)
    # e_chi = (d/|G|) sum_g chi(g^{-1}) g ; applied to delta_e gives the vector
    return [coef * chi.value_at(G.inverse(g)) for g in range(n)]


def _left_translate(G: FiniteGroup, h: int, vec: list[Cyclotomic]) -> list[Cyclotomic]:
    out = [None] * G.order
    for g in range(G.order):
        out[G.mul(h, g)] = vec[g]
    return out  # type: ignore[return-value]


def _weight_data(G: FiniteGroup, chi: Character):
    """Find elements (tuple) and a joint eigenvalue with multiplicity one in chi.

    Searches single elements then commuting pairs; returns a list of
    (element, zeta_order, zeta_exp) constraints.
    """
    d = int(chi.degree)
    if d == 1:
        return []
    order_sorted = sorted(range(1, G.order), key=lambda g: (-G.element_order(g), g))

    def multiplicities(g):
        n_g = G.element_order(g)
        out = {}
        for t in range(n_g):
            m = Cyclotomic.zero()
            for l in range(n_g):
                m = m + chi.value_at(G.power(g, l)) * Cyclotomic.zeta(n_g, (-t * l) % n_g)
            m = m * Fraction(1, n_g)
            mv = m.rational_value()
            assert mv.denominator == 1
            if mv:
                out[t] = int(mv)
        return out

    for g in order_sorted:
        mults = multiplicities(g)
        for t, m in sorted(mults.items()):
            if m == 1:
                return [(g, G.element_order(g), t)]
    # pairs of commuting elements
    for gi, g in enumerate(order_sorted):
        for h in order_sorted[gi + 1:]:
            if G.mul(g, h) != G.mul(h, g):
                continue
            constraints = _joint_multiplicity_one(G, chi, g, h)
            if constraints:
                return constraints
    raise RepError("no multiplicity-one weight found; irrep extraction unsupported here")


def _joint_multiplicity_one(G: FiniteGroup, chi: Character, g: int, h: int):
    ng, nh = G.element_order(g), G.element_order(h)
    # multiplicity of the joint eigenvalue (zeta_ng^s, zeta_nh^t)
    for s in range(ng):
        for t in range(nh):
            m = Cyclotomic.zero()
            for a in range(ng):
                for b in range(nh):
                    x = G.mul(G.power(g, a), G.power(h, b))
                    m = m + chi.value_at(x) * Cyclotomic.zeta(ng, (-s * a) % ng) \
                        * Cyclotomic.zeta(nh, (-t * b) % nh)
            m = m * Fraction(1, ng * nh)
            if m == Cyclotomic.one():
                return [(g, ng, s), (h, nh, t)]
    return None


def _cut_irrep(G: FiniteGroup, chi: Character) -> MatrixRep:
    d = int(chi.degree)
    vec = _regular_vector_idempotent(G, chi)
    for g, n_g, t in _weight_data(G, chi):
        # project onto the zeta_{n_g}^t eigenspace of left translation by g
        acc = [Cyclotomic.zero()] * G.order
        for l in range(n_g):
            shifted = _left_translate(G, G.power(g, l), vec)
            z = Cyclotomic.zeta(n_g, (-t * l) % n_g)
            acc = [a + z * s for a, s in zip(acc, shifted)]
        vec = [a * Fraction(1, n_g) for a in acc]
    if all(v.is_zero() for v in vec):
        raise RepError("weight projection annihilated the idempotent vector")
    # cyclic module basis
    basis: list[list[Cyclotomic]] = []
    pivots: list[int] = []

    def reduce_against(v):
        v = list(v)
        for bvec, piv in zip(basis, pivots):
            if not v[piv].is_zero():
                c = v[piv]
                v = [x - c * y for x, y in zip(v, bvec)]
        return v

    def add_vector(v):
        v = reduce_against(v)
        piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = v[piv].inverse()
        v = [x * inv for x in v]
        basis.append(v)
        pivots.append(piv)
        return True

    add_vector(vec)
    frontier = [vec]
    gens = [g for g in range(G.order) if G.generator_words.get(g) is not None and
            len(G.generator_words[g]) == 1]
    if not gens:
        gens = list(range(1, G.order))
    while frontier and len(basis) < G.order:
        v = frontier.pop(0)
        for h in gens:
            w = _left_translate(G, h, v)
            if add_vector(w):
                frontier.append(w)
    if len(basis) != d:
        raise RepError(f"cyclic module has dimension {len(basis)}, expected {d}")
    # matrices of left translation in this basis
    mats = []
    for g in range(G.order):
        cols = []
        for bvec in basis:
            w = _left_translate(G, g, bvec)
            coords = _coords_against(w, basis, pivots)
            cols.append(coords)
        mats.append(tuple(tuple(cols[j][i] for j in range(d)) for i in range(d)))
    rep = MatrixRep(G, mats)
    if rep.character().values != chi.values:
        raise RepError("extracted irrep does not match its character")
    return rep


def _coords_against(v, basis, pivots):
    v = list(v)
    coords = [Cyclotomic.zero()] * len(basis)
    for i, (bvec, piv) in enumerate(zip(basis, pivots)):
        if not v[piv].is_zero():
            c = v[piv]
            coords[i] = c
            v = [x - c * y for x, y in zip(v, bvec)]
    if any(not x.is_zero() for x in v):
        raise RepError("vector escaped the cyclic module")
    return coords


# -- induction / restriction / intertwiners ------------------------------------


def restrict(rho: MatrixRep, H: SubgroupHandle) -> MatrixRep:
    """Restriction along a subgroup handle; the result is a rep of H.as_group()."""
    sub, idx_map = H.as_group()
    mats = [rho.matrices[idx_map[i]] for i in range(sub.order)]
    return MatrixRep(sub, mats)


def induce(pi: MatrixRep, G: FiniteGroup, H: SubgroupHandle) -> MatrixRep:
    """Induction of a representation of H (given on H.as_group()) to G."""
    if H.parent is not G:
        raise RepError("subgroup handle must belong to the inducing group")
    sub, idx_map = H.as_group()
    parent_to_sub = {v: k for k, v in idx_map.items()}
    if pi.group.order != sub.order:
        raise RepError("representation does not live on the given subgroup")
    reps = coset_representatives(G, H)
    r, d = len(reps), pi.dimension
    zero_block = mat_zero(d, d)
    mats = []
    for g in range(G.order):
        blocks = [[zero_block] * r for _ in range(r)]
        for j, t in enumerate(reps):
            gt = G.mul(g, t)
            # find i with gt in reps[i] H
            for i, s in enumerate(reps):
                h = G.mul(G.inverse(s), gt)
                if h in parent_to_sub:
                    blocks[i][j] = pi.matrices[parent_to_sub[h]]
                    break
        big = tuple(
            tuple(blocks[bi][bj][ri][rj] for bj in range(r) for rj in range(d))
            for bi in range(r) for ri in range(d))
        mats.append(big)
    return MatrixRep(G, mats)


def hom_space(rho1: MatrixRep, rho2: MatrixRep) -> list[Matrix]:
    """Exact basis of {T : T rho1(g) = rho2(g) T for all g}."""
    if rho1.group is not rho2.group:
        raise RepError("intertwiners require representations of the same group")
    G = rho1.group
    d1, d2 = rho1.dimension, rho2.dimension
    gens = [g for g in range(G.order) if len(G.generator_words.get(g, (0, 0))) == 1]
    if not gens:
        gens = list(range(1, G.order))
    if not gens:  # trivial group: every matrix intertwines
        out = []
        for i in range(d2):
            for j in range(d1):
                M = [[Cyclotomic.zero()] * d1 for _ in range(d2)]
                M[i][j] = Cyclotomic.one()
                out.append(tuple(tuple(row) for row in M))
        return out
    rows = []
    for g in gens:
        A, B = rho1.matrices[g], rho2.matrices[g]
        # T A - B T = 0; unknowns T[i][j], i < d2, j < d1
        for i in range(d2):
            for j in range(d1):
                row = [Cyclotomic.zero()] * (d1 * d2)
                for t in range(d1):
                    row[i * d1 + t] = row[i * d1 + t] + A[t][j]
                for s in range(d2):
                    row[s * d1 + j] = row[s * d1 + j] - B[i][s]
                rows.append(row)
    basis = solve_left_kernel_basis(rows)
    out = []
    for v in basis:
        out.append(tuple(tuple(v[i * d1 + j] for j in range(d1)) for i in range(d2)))
    return out
