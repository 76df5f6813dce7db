"""Finite groups with exact element arithmetic.

Groups are stored as multiplication tables on indices 0..order-1 with index 0
the identity.  Construction is by closure from permutation or monomial-matrix
generators (exact cyclotomic scalars), by quotients, direct products, or
central extensions by a 2-cocycle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .exactnum import Cyclotomic, RootOfUnity

DEFAULT_ORDER_BOUND = 10**6


class GroupError(ValueError):
    pass


class MonomialMatrix:
    """A monomial matrix: column j carries scalar s_j in row perm[j]."""

    __slots__ = ("perm", "scalars")

    def __init__(self, perm: Sequence[int], scalars: Sequence[Cyclotomic]):
        self.perm = tuple(perm)
        self.scalars = tuple(scalars)
        if sorted(self.perm) != list(range(len(self.perm))):
            raise GroupError("monomial matrix rows must be a permutation")
        if any(s.is_zero() for s in self.scalars):
            raise GroupError("monomial matrix has a zero scalar (not invertible)")

    @staticmethod
    def identity(n: int) -> "MonomialMatrix":
        return MonomialMatrix(range(n), [Cyclotomic.one()] * n)

    @staticmethod
    def from_entries(entries: Sequence[tuple[int, int, Cyclotomic]], n: int) -> "MonomialMatrix":
        perm = [-1] * n
        scal: list[Optional[Cyclotomic]] = [None] * n
        for row, col, value in entries:
            if perm[col] != -1:
                raise GroupError("two entries in one column: not monomial")
            perm[col] = row
            scal[col] = value
        if -1 in perm or any(s is None for s in scal):
            raise GroupError("missing column entry: matrix not invertible")
        return MonomialMatrix(perm, scal)  # type: ignore[arg-type]

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        perm = tuple(self.perm[other.perm[j]] for j in range(len(self.perm)))
        scal = tuple(self.scalars[other.perm[j]] * other.scalars[j] for j in range(len(self.perm)))
        return MonomialMatrix(perm, scal)

    def key(self):
        return (self.perm, tuple(s.sort_key() for s in self.scalars))

    def entries(self) -> list[tuple[int, int, Cyclotomic]]:
        return [(self.perm[j], j, self.scalars[j]) for j in range(len(self.perm))]


@dataclass(frozen=True)
class SubgroupHandle:
    parent: "FiniteGroup"
    elements: tuple[int, ...]
    normal: bool

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: int) -> bool:
        return g in set(self.elements)

    def as_group(self) -> tuple["FiniteGroup", dict[int, int]]:
        """Subgroup as a standalone group plus index map (sub -> parent).

        Cached on the parent so repeated calls return the same group object.
        """
        cached = self.parent._cache.get(("subgroup", self.elements))
        if cached is not None:
            return cached
        elems = list(self.elements)
        if elems[0] != 0:
            raise GroupError("subgroup must contain the identity")
        pos = {g: i for i, g in enumerate(elems)}
        table = np.zeros((len(elems), len(elems)), dtype=np.int32)
        P = self.parent
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                c = P.mul(a, b)
                if c not in pos:
                    raise GroupError("element set is not closed under multiplication")
                table[i, j] = pos[c]
        sub = FiniteGroup(table, provenance={"kind": "subgroup"})
        result = (sub, {i: g for i, g in enumerate(elems)})
        self.parent._cache[("subgroup", self.elements)] = result
        return result


class FiniteGroup:
    """A finite group given by its multiplication table (identity at 0)."""

    def __init__(self, table: np.ndarray, provenance: Optional[dict] = None,
                 element_labels: Optional[list[str]] = None,
                 generator_words: Optional[dict[int, tuple[int, ...]]] = None):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupError("multiplication table must be square")
        self.order = int(table.shape[0])
        self.table = table
        self.provenance = provenance or {"kind": "table"}
        self.element_labels = element_labels
        self.generator_words = generator_words or {}
        self._validate()
        self._inverse = self._compute_inverses()
        self._classes: Optional[list[tuple[int, ...]]] = None
        self._class_of: Optional[np.ndarray] = None
        self._orders: Optional[list[int]] = None
        # caches attached by reps/tga (character tables, irreps)
        self._cache: dict = {}

    # -- construction-time sanity ------------------------------------------

    def _validate(self):
        n = self.order
        if n == 0:
            raise GroupError("empty group")
        if not (self.table[0] == np.arange(n)).all() or not (self.table[:, 0] == np.arange(n)).all():
            raise GroupError("index 0 is not the identity")
        for i in range(n):
            if sorted(self.table[i]) != list(range(n)) or sorted(self.table[:, i]) != list(range(n)):
                raise GroupError(f"row/column {i} is not a permutation (not a group table)")
        rng = random.Random(12345)
        m = min(n, 8)
        for _ in range(60):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if self.table[self.table[a, b], c] != self.table[a, self.table[b, c]]:
                raise GroupError(f"associativity fails on ({a},{b},{c})")
        del m

    def _compute_inverses(self) -> np.ndarray:
        inv = np.zeros(self.order, dtype=np.int32)
        for i in range(self.order):
            js = np.where(self.table[i] == 0)[0]
            if len(js) != 1:
                raise GroupError(f"element {i} has no unique inverse")
            inv[i] = js[0]
        return inv

    # -- basic arithmetic -----------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self._inverse[a])

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inverse(g))

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inverse(a), -n)
        result, base = 0, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def element_order(self, a: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.order
        if self._orders[a]:
            return self._orders[a]
        x, n = a, 1
        while x != 0:
            x = self.mul(x, a)
            n += 1
        self._orders[a] = n
        return n

    def exponent(self) -> int:
        e = 1
        for a in range(self.order):
            o = self.element_order(a)
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, kind={self.provenance.get('kind')})"

    # -- structure -----------------------------------------------------------

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Partition of elements; identity class first, sorted by (size, min)."""
        if self._classes is not None:
            return self._classes
        n = self.order
        seen = np.zeros(n, dtype=bool)
        classes = []
        for g in range(n):
            if seen[g]:
                continue
            orbit = {g}
            frontier = [g]
            while frontier:
                x = frontier.pop()
                for h in range(n):
                    y = self.conjugate(h, x)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for x in orbit:
                seen[x] = True
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: (len(c), c[0]))
        self._classes = classes
        self._class_of = np.zeros(n, dtype=np.int32)
        for i, c in enumerate(classes):
            for x in c:
                self._class_of[x] = i
        return classes

    def class_of(self, g: int) -> int:
        self.conjugacy_classes()
        assert self._class_of is not None
        return int(self._class_of[g])

    def centralizer(self, g: int) -> SubgroupHandle:
        elems = [h for h in range(self.order) if self.mul(h, g) == self.mul(g, h)]
        return self.subgroup(elems)

    def center(self) -> SubgroupHandle:
        elems = [h for h in range(self.order)
                 if all(self.mul(h, g) == self.mul(g, h) for g in range(self.order))]
        return self.subgroup(elems)

    def subgroup(self, elements: Iterable[int]) -> SubgroupHandle:
        elems = sorted(set(int(x) for x in elements))
        eset = set(elems)
        if 0 not in eset:
            raise GroupError("subgroup must contain the identity")
        for a in elems:
            if self.inverse(a) not in eset:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in elems:
                if self.mul(a, b) not in eset:
                    raise GroupError(f"subgroup not closed under product at ({a},{b})")
        normal = all(self.conjugate(g, x) in eset for g in range(self.order) for x in elems)
        return SubgroupHandle(self, tuple(elems), normal)

    def subgroup_generated(self, gens: Iterable[int]) -> SubgroupHandle:
        eset = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.mul(x, g), self.mul(x, self.inverse(g))):
                    if y not in eset:
                        eset.add(y)
                        frontier.append(y)
        return self.subgroup(eset)

    def is_normal(self, H: SubgroupHandle) -> bool:
        return H.normal

    def normal_subgroups(self) -> list[SubgroupHandle]:
        """All normal subgroups, via joins of conjugacy-class closures."""
        classes = self.conjugacy_classes()
        atoms = []
        for c in classes[1:]:
            atoms.append(frozenset(self.subgroup_generated(c).elements))
        found = {frozenset({0})}
        frontier = [frozenset({0})]
        while frontier:
            cur = frontier.pop()
            for a in atoms:
                if a <= cur:
                    continue
                new = frozenset(self.subgroup_generated(cur | a).elements)
                if new not in found:
                    found.add(new)
                    frontier.append(new)
        return [self.subgroup(s) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]

    # -- signatures / isomorphism -----------------------------------------

    def signature(self) -> tuple:
        """Cheap isomorphism invariant."""
        orders = sorted(self.element_order(a) for a in range(self.order))
        classes = sorted(len(c) for c in self.conjugacy_classes())
        return (self.order, tuple(orders), tuple(classes), self.center().order, self.is_abelian())


def group_from_generators(gens: Sequence, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Close permutation or monomial-matrix generators into a group table.

    Permutations are 0-based tuples; monomial matrices are MonomialMatrix or
    lists of (row, col, Cyclotomic) entries. An empty list gives the trivial
    group.
    """
    if not gens:
        return trivial_group()
    first = gens[0]
    if isinstance(first, MonomialMatrix) or (isinstance(first, (list, tuple)) and first
                                             and isinstance(first[0], (list, tuple))):
        n = None
        mats = []
        for g in gens:
            if not isinstance(g, MonomialMatrix):
                size = 1 + max(max(r, c) for r, c, _ in g)
                g = MonomialMatrix.from_entries(list(g), n or size)
            mats.append(g)
            n = len(g.perm)
        ident = MonomialMatrix.identity(n)
        return _close(mats, ident, lambda a, b: a * b, lambda a: a.key(),
                      order_bound, kind="monomial")
    # permutations
    degree = max(len(tuple(g)) for g in gens)
    perms = []
    for g in gens:
        g = tuple(g) + tuple(range(len(g), degree))
        if sorted(g) != list(range(degree)):
            raise GroupError(f"{g} is not a permutation")
        perms.append(g)
    ident = tuple(range(degree))
    return _close(perms, ident, lambda a, b: tuple(a[b[i]] for i in range(degree)),
                  lambda a: a, order_bound, kind="perm")


def _close(gens, ident, mul, key, order_bound: int, kind: str) -> FiniteGroup:
    elems = [ident]
    index = {key(ident): 0}
    words: dict[int, tuple[int, ...]] = {0: ()}
    i = 0
    while i < len(elems):
        x = elems[i]
        for gi, g in enumerate(gens):
            y = mul(x, g)
            k = key(y)
            if k not in index:
                if len(elems) >= order_bound:
                    raise GroupError(f"order bound {order_bound} exceeded during closure")
                index[k] = len(elems)
                words[len(elems)] = words[i] + (gi,)
                elems.append(y)
        i += 1
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        for b in range(n):
            table[a, b] = index[key(mul(elems[a], elems[b]))]
    labels = None
    if kind == "perm":
        labels = [str(e) for e in elems]
    group = FiniteGroup(table, provenance={"kind": kind, "generators": len(gens)},
                        element_labels=labels, generator_words=words)
    group._cache["elements_raw"] = elems
    return group


@lru_cache(maxsize=None)
def trivial_group() -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1), dtype=np.int32), provenance={"kind": "trivial"})


def cyclic_group(n: int) -> FiniteGroup:
    table = np.fromfunction(lambda i, j: (i + j) % n, (n, n), dtype=np.int64)
    return FiniteGroup(table.astype(np.int32), provenance={"kind": "cyclic", "n": n})


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial_group()
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return group_from_generators(gens)


def dihedral_group(order: int) -> FiniteGroup:
    if order % 2 or order < 2:
        raise GroupError("dihedral groups have even order >= 2")
    n = order // 2
    rot = tuple(list(range(1, n)) + [0])
    refl = tuple((n - i) % n for i in range(n))
    return group_from_generators([rot, refl])


def quaternion_group() -> FiniteGroup:
    i4 = Cyclotomic.zeta(4)
    a = MonomialMatrix((0, 1), (i4, -i4))          # diag(i, -i)
    b = MonomialMatrix((1, 0), (i4, i4))           # antidiag(i, i)
    return group_from_generators([a, b])


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    g = cyclic_group(p)
    for _ in range(k - 1):
        g = direct_product(g, cyclic_group(p))
    return g if k >= 1 else trivial_group()


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    table = np.zeros((n * m, n * m), dtype=np.int32)
    for a in range(n):
        for b in range(m):
            for c in range(n):
                for d in range(m):
                    table[a * m + b, c * m + d] = G.mul(a, c) * m + H.mul(b, d)
    return FiniteGroup(table, provenance={"kind": "product", "orders": (n, m)})


@dataclass
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        self.images = tuple(int(x) for x in self.images)
        if len(self.images) != self.source.order:
            raise GroupError("hom must give an image per source element")
        for a in range(self.source.order):
            for b in range(self.source.order):
                lhs = self.images[self.source.mul(a, b)]
                rhs = self.target.mul(self.images[a], self.images[b])
                if lhs != rhs:
                    raise GroupError(f"not a homomorphism at ({a},{b})")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def kernel(self) -> SubgroupHandle:
        return self.source.subgroup([g for g in range(self.source.order) if self.images[g] == 0])

    def compose(self, inner: "GroupHom") -> "GroupHom":
        return GroupHom(inner.source, self.target,
                        tuple(self.images[inner.images[g]] for g in range(inner.source.order)))


def quotient(G: FiniteGroup, N: SubgroupHandle) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, with lowest-index coset representatives.

    Cached on G, so the same handle always yields the same quotient object.
    """
    if N.parent is not G:
        raise GroupError("subgroup handle belongs to a different group")
    if not N.normal:
        raise GroupError("cannot quotient by a non-normal subgroup")
    cached = G._cache.get(("quotient", N.elements))
    if cached is not None:
        return cached
    nset = set(N.elements)
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] != -1:
            continue
        members = sorted(G.mul(g, x) for x in nset)
        idx = len(reps)
        reps.append(members[0])
        for y in members:
            coset_of[y] = idx
    # reps are already in increasing order of their lowest member, identity first
    k = len(reps)
    table = np.zeros((k, k), dtype=np.int32)
    for i in range(k):
        for j in range(k):
            table[i, j] = coset_of[G.mul(reps[i], reps[j])]
    Q = FiniteGroup(table, provenance={"kind": "quotient", "parent_order": G.order,
                                       "coset_reps": tuple(reps)})
    proj = GroupHom(G, Q, tuple(coset_of))
    G._cache[("quotient", N.elements)] = (Q, proj)
    return Q, proj


def coset_representatives(G: FiniteGroup, H: SubgroupHandle, *, left: bool = True) -> list[int]:
    """Lowest-index representatives of gH (left=True) or Hg cosets."""
    seen = set()
    reps = []
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        for h in H.elements:
            seen.add(G.mul(g, h) if left else G.mul(h, g))
    return reps


def central_extension(Gamma: FiniteGroup, cocycle_exponents: Callable[[int, int], int],
                      m: int) -> tuple[FiniteGroup, GroupHom, SubgroupHandle]:
    """Schur-type extension: elements (z, gamma) with z in Z/m.

    cocycle_exponents(i, j) is the exponent of zeta_m in the cocycle value; it
    must be normalized (zero when i or j is the identity).
    """
    if m < 1:
        raise GroupError("m must be >= 1")
    for g in range(Gamma.order):
        if cocycle_exponents(0, g) % m or cocycle_exponents(g, 0) % m:
            raise GroupError("cocycle is not normalized at the identity")
    n = Gamma.order
    N = n * m
    table = np.zeros((N, N), dtype=np.int32)
    for g1 in range(n):
        for g2 in range(n):
            t = cocycle_exponents(g1, g2) % m
            g12 = Gamma.mul(g1, g2)
            for z1 in range(m):
                base = g1 * m + z1
                for z2 in range(m):
                    table[base, g2 * m + z2] = g12 * m + (z1 + z2 + t) % m
    ext = FiniteGroup(table, provenance={"kind": "central_extension", "m": m,
                                         "base_order": n})
    proj = GroupHom(ext, Gamma, tuple(x // m for x in range(N)))
    mu = ext.subgroup(range(m))
    center = set(ext.center().elements)
    if not set(mu.elements) <= center:
        raise GroupError("extension kernel is not central (invalid cocycle)")
    return ext, proj, mu


def automorphism_action(G: FiniteGroup, homs: Sequence[GroupHom]) -> list[tuple[int, ...]]:
    """Permutations of element indices induced by a family of automorphisms."""
    perms = []
    for h in homs:
        if h.source is not G or h.target is not G:
            raise GroupError("automorphism must map G to itself")
        if sorted(h.images) != list(range(G.order)):
            raise GroupError("homomorphism is not bijective")
        perms.append(tuple(h.images))
    return perms


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Backtracking isomorphism test (intended for order <= 64)."""
    if G.order != H.order:
        return False
    if G.signature() != H.signature():
        return False
    n = G.order
    # pick a small generating set of G deterministically
    gens: list[int] = []
    cur = {0}
    for g in sorted(range(n), key=lambda x: (-G.element_order(x), x)):
        if g not in cur:
            gens.append(g)
            cur = set(G.subgroup_generated(gens).elements)
            if len(cur) == n:
                break
    by_order_H: dict[int, list[int]] = {}
    for h in range(n):
        by_order_H.setdefault(H.element_order(h), []).append(h)

    def extend(mapping: dict[int, int], k: int) -> bool:
        if k == len(gens):
            return True
        g = gens[k]
        for h in by_order_H.get(G.element_order(g), []):
            new = dict(mapping)
            new[g] = h
            if _complete_hom(G, H, new):
                if extend(new, k + 1):
                    return True
        return False

    return extend({0: 0}, 0)


def _complete_hom(G: FiniteGroup, H: FiniteGroup, seed: dict[int, int]) -> bool:
    """Try to extend a partial generator assignment to an injective hom."""
    mapping = dict(seed)
    frontier = list(seed.keys())
    while frontier:
        a = frontier.pop()
        for b in list(mapping.keys()):
            for x, y in ((G.mul(a, b), H.mul(mapping[a], mapping[b])),
                         (G.mul(b, a), H.mul(mapping[b], mapping[a]))):
                if x in mapping:
                    if mapping[x] != y:
                        return False
                else:
                    mapping[x] = y
                    frontier.append(x)
    values = list(mapping.values())
    return len(set(values)) == len(values)


# -- JSON ------------------------------------------------------------------


def group_to_json(G: FiniteGroup) -> dict:
    return {"kind": "table", "order": G.order, "table": G.table.tolist()}


def group_from_json(obj: dict) -> FiniteGroup:
    kind = obj.get("kind")
    if kind == "table":
        return FiniteGroup(np.array(obj["table"], dtype=np.int32))
    if kind == "perm":
        return group_from_generators([tuple(g) for g in obj["generators"]],
                                     order_bound=int(obj.get("order_bound", DEFAULT_ORDER_BOUND)))
    if kind == "monomial":
        gens = []
        for g in obj["generators"]:
            gens.append([(int(r), int(c), Cyclotomic.from_json(v)) for r, c, v in g])
        return group_from_generators(gens,
                                     order_bound=int(obj.get("order_bound", DEFAULT_ORDER_BOUND)))
    raise GroupError(f"unknown group kind {kind!r}")
