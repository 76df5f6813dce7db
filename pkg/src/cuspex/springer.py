"""Combinatorial generalized-Springer data for classical groups.

Unipotent classes as partitions, component groups of centralizers, staircase
cuspidal pairs, the section cocycle built from epsilon and a chosen section,
relative Weyl groups, and the counting identity that cross-checks all the
component-group conventions at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

from .clifford import intertwiner_cocycle
from .exactnum import Cyclotomic, RootOfUnity
from .groups import FiniteGroup, GroupError, SubgroupHandle, cyclic_group, \
    direct_product, elementary_abelian, group_from_generators, trivial_group
from .reps import MatrixRep, mat_eq, mat_identity, mat_scale
from .tga import TwoCocycle, cocycle_from_values, cohomologous, trivial_cocycle, \
    validate_cocycle


class SpringerError(ValueError):
    pass


class NotSupportedError(SpringerError):
    """Raised for data the artifact deliberately refuses to invent."""


GROUP_TYPES = ("GL", "SLmod", "Sp", "SO_odd", "SO_even", "O", "Spin")


# -- partitions ------------------------------------------------------------


def partitions(n: int, max_part: Optional[int] = None) -> list[tuple[int, ...]]:
    """All partitions of n, weakly decreasing, lexicographically descending."""
    if n < 0:
        return []
    if n == 0:
        return [()]
    if max_part is None:
        max_part = n
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def bipartition_count(n: int) -> int:
    """Number of pairs of partitions with total n = |Irr W(B_n)|."""
    return sum(partition_count(j) * partition_count(n - j) for j in range(n + 1))


def validate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise SpringerError("partition parts must be positive")
    if list(parts) != sorted(parts, reverse=True):
        raise SpringerError("partition must be weakly decreasing")
    return parts


def multiplicities(parts: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in parts:
        out[p] = out.get(p, 0) + 1
    return out


# -- unipotent classes -------------------------------------------------------


@dataclass(frozen=True)
class UnipotentClassDescriptor:
    group_type: str
    modulus: Optional[int]       # k for SLmod(k), else None
    rank: int                    # N: the size of the matrices / partition total
    partition: tuple[int, ...]

    def __post_init__(self):
        _check_class(self.group_type, self.modulus, self.rank, self.partition)


def _check_class(group_type: str, modulus: Optional[int], N: int, parts: tuple[int, ...]):
    if group_type not in GROUP_TYPES:
        raise SpringerError(f"unknown group type {group_type!r}")
    if group_type == "Spin":
        raise NotSupportedError("Spin/HSpin component data is out of scope")
    validate_partition(parts) if parts else ()
    if sum(parts) != N:
        raise SpringerError(f"partition {parts} does not sum to {N}")
    mult = multiplicities(parts)
    if group_type == "Sp":
        if N % 2:
            raise SpringerError("Sp rank parameter must be even")
        for p, m in mult.items():
            if p % 2 == 1 and m % 2:
                raise SpringerError(f"odd part {p} with odd multiplicity in Sp class")
    if group_type in ("SO_odd", "SO_even", "O"):
        if group_type == "SO_odd" and N % 2 == 0:
            raise SpringerError("SO_odd needs odd N")
        if group_type == "SO_even" and N % 2:
            raise SpringerError("SO_even needs even N")
        for p, m in mult.items():
            if p % 2 == 0 and m % 2:
                raise SpringerError(f"even part {p} with odd multiplicity in orthogonal class")
    if group_type == "SLmod":
        if modulus is None or modulus <= 0:
            raise SpringerError("SLmod needs a positive modulus k")


def unipotent_classes(group_type: str, N: int, modulus: Optional[int] = None
                      ) -> list[UnipotentClassDescriptor]:
    if N < 0:
        raise SpringerError("rank must be >= 0")
    out = []
    for parts in partitions(N):
        try:
            out.append(UnipotentClassDescriptor(group_type, modulus, N, parts))
        except SpringerError as err:
            if isinstance(err, NotSupportedError):
                raise
            continue
    return out


# -- component groups ---------------------------------------------------------


@dataclass
class ComponentGroupPresentation:
    group_type: str
    partition: tuple[int, ...]
    group: FiniteGroup
    generators: dict[str, int]       # generator name -> element index
    neutral_subgroup: SubgroupHandle  # A_{G^o}(u) inside A_G(u)

    @property
    def order(self) -> int:
        return self.group.order

    def irreducible_count(self) -> int:
        # abelian in every supported case
        return self.group.order


def _sign_generator_parts(group_type: str, parts: Sequence[int]) -> list[int]:
    mult = multiplicities(parts)
    if group_type in ("O",):
        return sorted(p for p in mult if p % 2 == 1)
    if group_type == "Sp":
        return sorted(p for p in mult if p % 2 == 0)
    if group_type in ("SO_odd", "SO_even"):
        return sorted(p for p in mult if p % 2 == 1)
    return []


def component_group(group_type: str, parts: Sequence[int],
                    modulus: Optional[int] = None) -> ComponentGroupPresentation:
    """A_G(u) for the given class, with named generators.

    Conventions: GL trivial; SLmod(k) cyclic of order gcd(k, parts);
    O: (Z/2)^{#distinct odd parts}; Sp: (Z/2)^{#distinct even parts};
    SO: (Z/2)^{max(#distinct odd parts - 1, 0)} realized as the even-product
    subgroup of the O group.  The census identity validates these wholesale.
    """
    parts = validate_partition(parts) if parts else ()
    _check_class(group_type, modulus, sum(parts), parts)
    if group_type == "GL":
        G = trivial_group()
        return ComponentGroupPresentation(group_type, parts, G, {},
                                          G.subgroup([0]))
    if group_type == "SLmod":
        assert modulus is not None
        g = modulus
        for p in parts:
            g = gcd(g, p)
        G = cyclic_group(g) if g > 1 else trivial_group()
        gens = {"cyc": 1} if g > 1 else {}
        return ComponentGroupPresentation(group_type, parts, G, gens,
                                          G.subgroup(range(G.order)))
    sign_parts = _sign_generator_parts(group_type, parts)
    r = len(sign_parts)
    if group_type in ("O", "Sp"):
        G = elementary_abelian(2, r) if r else trivial_group()
        gens = {}
        for i, p in enumerate(sign_parts):
            # generator z_p: the i-th coordinate vector under mixed-radix indexing
            gens[f"z{p}"] = 2 ** (r - 1 - i) if r else 0
        if group_type == "O" and r:
            even = [e for e in range(G.order) if bin(e).count("1") % 2 == 0]
            neutral = G.subgroup(even)
        else:
            neutral = G.subgroup(range(G.order))
        return ComponentGroupPresentation(group_type, parts, G, gens, neutral)
    # SO: the even-product subgroup of the O group, as a group in its own right
    k = max(r - 1, 0)
    G = elementary_abelian(2, k) if k else trivial_group()
    gens = {}
    for i, p in enumerate(sign_parts[:-1]):
        # generator z_p z_{p'} pattern: products of consecutive sign generators
        gens[f"z{p}*z{sign_parts[i + 1]}"] = 2 ** (k - 1 - i) if k else 0
    return ComponentGroupPresentation(group_type, parts, G, gens,
                                      G.subgroup(range(G.order)))


# -- cuspidal pairs ------------------------------------------------------------


@dataclass(frozen=True)
class CuspidalPairDescriptor:
    group_type: str
    rank: int
    partition: tuple[int, ...]
    signs: tuple[tuple[int, int], ...]    # (part, +-1) per sign generator
    character_order: Optional[int] = None  # SLmod: required central character order

    def sign_of(self, part: int) -> int:
        for p, s in self.signs:
            if p == part:
                return s
        raise SpringerError(f"no sign recorded for part {part}")


def _staircase(step_start: int, d: int) -> tuple[int, ...]:
    return tuple(range(step_start, step_start + 2 * d, 2))[::-1]


def sp_staircase_depth(N: int) -> Optional[int]:
    """d with N = d(d+1), if any."""
    d = (isqrt(4 * N + 1) - 1) // 2
    for c in (d, d + 1):
        if c >= 0 and c * (c + 1) == N:
            return c
    return None


def so_staircase_depth(N: int) -> Optional[int]:
    d = isqrt(N)
    return d if d * d == N else None


def cuspidal_pairs(group_type: str, N: int, modulus: Optional[int] = None
                   ) -> list[CuspidalPairDescriptor]:
    """Descriptors of cuspidal pairs on groups of the given type and size.

    Sp: the even staircase (2,4,...,2d) when N = d(d+1), one alternating sign
    pattern; SO/O: the odd staircase (1,3,...,2d-1) when N = d^2, both
    alternating patterns; SLmod(k): the regular class with a character of
    order exactly N, which requires k = N.  N = 0 gives the trivial pair.
    """
    if group_type == "Spin":
        raise NotSupportedError("Spin/HSpin cuspidal data is out of scope")
    if N == 0:
        return [CuspidalPairDescriptor(group_type, 0, (), ())]
    if group_type == "GL":
        if N == 1:
            return [CuspidalPairDescriptor(group_type, 1, (1,), ())]
        return []
    if group_type == "SLmod":
        assert modulus is not None
        if modulus == N:
            return [CuspidalPairDescriptor(group_type, N, (N,), (), character_order=N)]
        return []
    if group_type == "Sp":
        if N % 2:
            return []
        d = sp_staircase_depth(N)
        if d is None or d == 0:
            return []
        parts = _staircase(2, d)
        signs = tuple((2 * a, (-1) ** a) for a in range(1, d + 1))
        return [CuspidalPairDescriptor(group_type, N, parts, signs)]
    if group_type in ("SO_odd", "SO_even", "O"):
        d = so_staircase_depth(N)
        if d is None or d == 0:
            return []
        if group_type == "SO_odd" and d % 2 == 0:
            return []
        if group_type == "SO_even" and d % 2:
            return []
        parts = _staircase(1, d)
        out = []
        for flip in (0, 1):
            signs = tuple((2 * a - 1, (-1) ** (a + flip)) for a in range(1, d + 1))
            out.append(CuspidalPairDescriptor(group_type, N, parts, signs))
        return out
    raise SpringerError(f"unknown group type {group_type!r}")


# -- the counting identity -----------------------------------------------------


@dataclass
class CensusReport:
    group_type: str
    rank: int
    lhs: int
    rhs: int
    lhs_detail: list[tuple[tuple[int, ...], int]]
    rhs_detail: list[tuple[int, int, int]]   # (staircase depth d, k, |Irr W_k|)

    @property
    def balanced(self) -> bool:
        return self.lhs == self.rhs


def census(group_type: str, N: int) -> CensusReport:
    """Sum of |Irr A(u)| over classes vs the Weyl-group count over supports.

    Supported for GL (n = N), Sp (N even) and SO_odd.  Raises
    SpringerError with the offending terms when the identity fails.
    """
    if group_type not in ("GL", "Sp", "SO_odd"):
        raise NotSupportedError(f"census not supported for type {group_type!r}")
    lhs_detail = []
    for cls in unipotent_classes(group_type, N):
        cg = component_group(group_type, cls.partition)
        lhs_detail.append((cls.partition, cg.irreducible_count()))
    lhs = sum(c for _, c in lhs_detail)
    rhs_detail = []
    if group_type == "GL":
        rhs_detail.append((0, N, partition_count(N)))
    elif group_type == "Sp":
        d = 0
        while d * (d + 1) <= N:
            tail = d * (d + 1)
            if (N - tail) % 2 == 0:
                k = (N - tail) // 2
                rhs_detail.append((d, k, bipartition_count(k)))
            d += 1
    else:  # SO_odd: one support per admissible odd staircase tail
        d = 1
        while d * d <= N:
            if (N - d * d) % 2 == 0:
                k = (N - d * d) // 2
                rhs_detail.append((d, k, bipartition_count(k)))
            d += 1
    rhs = sum(c for _, _, c in rhs_detail)
    report = CensusReport(group_type, N, lhs, rhs, lhs_detail, rhs_detail)
    if not report.balanced:
        raise SpringerError(
            f"census mismatch for ({group_type}, {N}): lhs={lhs} rhs={rhs}; "
            f"class terms {lhs_detail}; support terms {rhs_detail}")
    return report


# -- section cocycles (epsilon at section defects) ------------------------------


@dataclass
class SectionDatum:
    """An ambient group with A_{G^o}(u) normal, epsilon on it, and a section.

    ambient models A_G(u) (or Z_G(u)); neutral models A_{G^o}(u); epsilon is
    an irreducible representation of neutral.as_group(); section maps quotient
    elements to ambient element indices.
    """

    ambient: FiniteGroup
    neutral: SubgroupHandle
    epsilon: MatrixRep
    section: dict[int, int]       # quotient element index -> ambient element index

    def quotient(self):
        from .groups import quotient as _q
        return _q(self.ambient, self.neutral)

    def validate(self):
        Q, proj = self.quotient()
        if sorted(self.section) != list(range(Q.order)):
            raise SpringerError("section must cover every coset exactly once")
        for q, g in self.section.items():
            if proj(g) != q:
                raise SpringerError(f"section value {g} does not represent coset {q}")
        if self.section[0] != 0:
            raise SpringerError("section must send the identity coset to the identity")


def _scalar_of(M, dim) -> Cyclotomic:
    c = M[0][0]
    if not mat_eq(M, mat_scale(mat_identity(dim), c)):
        raise SpringerError("action is not scalar")
    return c


def cocycle_from_section(datum: SectionDatum) -> TwoCocycle:
    """The cocycle (q, q') -> epsilon(s(q) s(q') s(qq')^{-1}) on the quotient."""
    datum.validate()
    Q, proj = datum.quotient()
    G = datum.ambient
    sub, idx_map = datum.neutral.as_group()
    parent_to_sub = {v: k for k, v in idx_map.items()}
    if datum.epsilon.group.order != sub.order:
        raise SpringerError("epsilon must be a representation of the neutral subgroup")

    def value(q1: int, q2: int) -> RootOfUnity:
        g1, g2 = datum.section[q1], datum.section[q2]
        defect = G.mul(G.mul(g1, g2), G.inverse(datum.section[Q.mul(q1, q2)]))
        if defect not in parent_to_sub:
            raise SpringerError(
                f"section defect at coset pair ({q1},{q2}) lies outside the neutral subgroup")
        M = datum.epsilon.matrices[parent_to_sub[defect]]
        scalar = _scalar_of(M, datum.epsilon.dimension)
        rou = scalar.as_root_of_unity()
        if rou is None:
            raise SpringerError(
                f"epsilon value at coset pair ({q1},{q2}) is not a root of unity")
        return rou

    return validate_cocycle(cocycle_from_values(Q, value))


@dataclass
class Lemma42Report:
    kappa_trivial: bool
    section_trivial: bool
    cohomologous_ok: bool


def verify_intertwiner_vs_section(datum: SectionDatum) -> Lemma42Report:
    """Check that kappa_epsilon and the inverse section cocycle agree in H^2."""
    nat = cocycle_from_section(datum)
    cd = intertwiner_cocycle(datum.ambient, datum.neutral, datum.epsilon)
    Q, proj = datum.quotient()
    if cd.stabilizer.order != datum.ambient.order:
        raise SpringerError(
            "epsilon is not stabilized by the full ambient group; "
            "restrict the section first")
    # cd.quotient_group is built from the stabilizer copy of the ambient group;
    # for the full stabilizer the element indexing coincides, so compare tables
    if not (cd.quotient_group.table == Q.table).all():
        raise SpringerError("quotient mismatch between section and intertwiner data")
    nat_on_cd = TwoCocycle(cd.quotient_group, nat.m, nat.exponents)
    beta = cohomologous(cd.kappa, nat_on_cd.inverse())
    return Lemma42Report(
        kappa_trivial=cohomologous(cd.kappa, trivial_cocycle(cd.quotient_group)) is not None,
        section_trivial=cohomologous(nat, trivial_cocycle(Q)) is not None,
        cohomologous_ok=beta is not None,
    )


# -- relative Weyl groups --------------------------------------------------------


@dataclass
class WeylDatum:
    levi_shape: tuple
    ambient_shape: tuple
    group: FiniteGroup            # W_t (= W_t^o without extension data)
    neutral: SubgroupHandle       # W_t^o
    complement: Optional[SubgroupHandle]  # R_t when extension data is present
    weyl_type: str                # "A" (S_k) or "BC" (signed permutations)
    k: int

    @property
    def order(self) -> int:
        return self.group.order


def signed_permutation_group(k: int) -> FiniteGroup:
    """W(B_k) = W(C_k) as permutations of {0..2k-1} (i <-> i+k is the sign flip)."""
    if k == 0:
        return trivial_group()
    gens = []
    if k >= 2:
        swap = list(range(2 * k))
        swap[0], swap[1] = 1, 0
        swap[k], swap[k + 1] = k + 1, k
        gens.append(tuple(swap))
        cyc = list(range(2 * k))
        front = list(range(1, k)) + [0]
        for i in range(k):
            cyc[i] = front[i]
            cyc[i + k] = front[i] + k
        gens.append(tuple(cyc))
    flip = list(range(2 * k))
    flip[0], flip[k] = k, 0
    gens.append(tuple(flip))
    return group_from_generators(gens)


def weyl_datum(levi_shape: tuple, ambient_shape: tuple) -> WeylDatum:
    """The relative Weyl group of GL_1^k x tail inside a classical group.

    Shapes are ("GL", n), ("Sp", 2n), ("SO_odd", N), ("SO_even", N); the levi
    shape is (k, tail_shape).  Types: S_k for GL ambient, W(B_k)/W(C_k) for
    symplectic/orthogonal ambients.
    """
    k, tail = levi_shape
    ambient_type, ambient_size = ambient_shape
    tail_type, tail_size = tail
    if ambient_type == "GL":
        if tail_size + k != ambient_size or tail_type != "GL":
            raise SpringerError("levi does not embed in the ambient GL shape")
        from .groups import symmetric_group
        W = symmetric_group(k)
        wtype = "A"
    elif ambient_type in ("Sp", "SO_odd", "SO_even"):
        if tail_type != ambient_type:
            raise SpringerError("tail type must match the ambient type")
        if tail_size + 2 * k != ambient_size:
            raise SpringerError("levi does not embed: size mismatch")
        W = signed_permutation_group(k)
        wtype = "BC"
    else:
        raise SpringerError(f"unsupported ambient shape {ambient_shape!r}")
    neutral = W.subgroup(range(W.order))
    return WeylDatum(levi_shape, ambient_shape, W, neutral, None, wtype, k)


def weyl_irreducible_count(weyl_type: str, k: int) -> int:
    if weyl_type == "A":
        return partition_count(k)
    if weyl_type == "BC":
        return bipartition_count(k)
    raise SpringerError(f"unknown Weyl type {weyl_type!r}")


# -- quasi-cuspidal supports and the pluggable table -----------------------------


@dataclass(frozen=True)
class FactorSupport:
    """Cuspidal support of one classical factor: twist slots plus a staircase tail.

    slots: tuple of rational twist exponents s (each standing for a GL_1-type
    block pi |.|^s in the Levi); tail_depth: staircase depth d of the cuspidal
    tail (0 = no tail); tail_flip: which alternating pattern (O types only).
    """

    slots: tuple
    tail_depth: int
    tail_flip: int = 0


class SpringerTable:
    """Pluggable map (group_type, lambda, signs) -> FactorSupport.

    Built-in entries cover the sizes forced by counting at rank <= 2; anything
    else must come from a user-supplied table, otherwise NotSupportedError.
    """

    def __init__(self, entries: Optional[dict] = None):
        self.entries: dict = dict(_builtin_table())
        if entries:
            self.entries.update(entries)

    def lookup(self, group_type: str, partition: tuple[int, ...],
               signs: tuple[tuple[int, int], ...]) -> FactorSupport:
        key = (group_type, tuple(partition), tuple(sorted(signs)))
        if key in self.entries:
            return self.entries[key]
        raise NotSupportedError(
            f"no cuspidal-support table entry for {group_type} class {partition} "
            f"with signs {signs}; supply a SpringerTable")

    @staticmethod
    def from_json(obj: list) -> "SpringerTable":
        entries = {}
        for row in obj:
            key = (row["type"], tuple(row["lambda"]),
                   tuple(sorted((int(p), int(s)) for p, s in row["eta_signs"])))
            sup = row["support"]
            entries[key] = FactorSupport(
                tuple(_parse_fraction(x) for x in sup.get("slots", [])),
                int(sup.get("tail_depth", 0)), int(sup.get("tail_flip", 0)))
        return SpringerTable(entries)


def _parse_fraction(x):
    from fractions import Fraction
    return Fraction(x)


@lru_cache(maxsize=None)
def _builtin_table() -> tuple:
    from fractions import Fraction

    F = Fraction
    entries: dict = {}

    def put(gt, parts, signs, slots, depth, flip=0):
        entries[(gt, tuple(parts), tuple(sorted(signs)))] = FactorSupport(
            tuple(slots), depth, flip)

    # GL factors: a single block pi x S_a reduces to a twist ladder
    # (handled algorithmically, no table needed)

    # Sp factors, size 2 (rank 1): classes (2) and (1,1)
    put("Sp", (2,), ((2, -1),), (), 1)            # the cuspidal pair itself
    put("Sp", (2,), ((2, 1),), (F(1, 2),), 0)     # Steinberg-type: slot at 1/2
    put("Sp", (1, 1), (), (F(0),), 0)
    # Sp factors, size 4 (rank 2): the non-principal pairs are ((4),-) and
    # ((2,1,1),-); both local systems on (2,2) are principal-series type
    put("Sp", (4,), ((4, -1),), (F(3, 2),), 1)    # tail (2) with its sign, slot 3/2
    put("Sp", (4,), ((4, 1),), (F(3, 2), F(1, 2)), 0)
    put("Sp", (2, 2), ((2, -1),), (F(1, 2), F(1, 2)), 0)
    put("Sp", (2, 2), ((2, 1),), (F(1, 2), F(1, 2)), 0)
    put("Sp", (2, 1, 1), ((2, -1),), (F(0),), 1)
    put("Sp", (2, 1, 1), ((2, 1),), (F(1, 2), F(0)), 0)
    put("Sp", (1, 1, 1, 1), (), (F(0), F(0)), 0)
    # O factors, sizes 1 and 2 (identity component is a torus: every pair cuspidal
    # or a twist slot; both signs of the (1,1) class share the slot support)
    put("O", (1,), ((1, -1),), (), 1, 0)          # epsilon(z_1) = -1: pattern (-1)^a
    put("O", (1,), ((1, 1),), (), 1, 1)           # epsilon(z_1) = +1: flipped pattern
    put("O", (1, 1), ((1, 1),), (F(0),), 0)
    put("O", (1, 1), ((1, -1),), (F(0),), 0)
    return tuple(entries.items())


def type_a_block_slots(a: int, chunk: int) -> list:
    """Twist exponents when pi x S_a splits into blocks pi|.|^s x S_chunk."""
    from fractions import Fraction
    if a % chunk:
        raise SpringerError(f"chunk size {chunk} does not divide {a}")
    r = a // chunk
    top = Fraction(a - chunk, 2)
    return [top - i * chunk for i in range(r)]
