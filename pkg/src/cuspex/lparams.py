"""Enhanced L-parameters at the Jordan-block level.

Parameters are multisets of blocks (label x S_a with multiplicity) for the
groups GL_m(D), Sp_2n, split SO_n and U_n.  The module classifies validity,
discreteness, boundedness, relevance and cuspidality, computes cuspidal
supports and inertial classes, realizes Bernstein components as twisted
extended quotients, and converts to and from Langlands-classification
standard triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .exactnum import RootOfUnity
from .groups import FiniteGroup, cyclic_group, direct_product, elementary_abelian, \
    symmetric_group, trivial_group
from .springer import CuspidalPairDescriptor, NotSupportedError, SpringerError, \
    SpringerTable, component_group, cuspidal_pairs, type_a_block_slots

DUALITIES = ("orth", "symp", "conj-orth", "conj-symp", "none")
SELF_DUAL = ("orth", "symp")
CONJ_DUAL = ("conj-orth", "conj-symp")


class LParamError(ValueError):
    pass


# -- basic data ---------------------------------------------------------------


@dataclass(frozen=True)
class Twist:
    """An unramified twist q^s zeta: a rational exponent and a root of unity."""

    s: Fraction = Fraction(0)
    zeta: RootOfUnity = RootOfUnity(1, 0)

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))

    def shifted(self, ds: Fraction) -> "Twist":
        return Twist(self.s + ds, self.zeta)

    def times(self, other: "Twist") -> "Twist":
        return Twist(self.s + other.s, self.zeta * other.zeta)

    def is_clear(self) -> bool:
        return self.s == 0 and self.zeta.is_one()

    def sort_key(self):
        return (self.s, self.zeta.order, self.zeta.exp)

    def to_json(self):
        return {"s": str(self.s), "zeta": self.zeta.to_json()}

    @staticmethod
    def from_json(obj) -> "Twist":
        return Twist(Fraction(obj.get("s", 0)), RootOfUnity.from_json(obj.get("zeta", [1, 0])))


@dataclass(frozen=True)
class WeilLabel:
    """An irreducible Weil-group input: core identity, dimension, duality, twist."""

    core: str
    dim: int
    duality: str
    twist: Twist = Twist()

    def __post_init__(self):
        if self.duality not in DUALITIES:
            raise LParamError(f"unknown duality {self.duality!r}")
        if self.dim < 1:
            raise LParamError("label dimension must be positive")

    def twisted(self, ds: Fraction, dzeta: Optional[RootOfUnity] = None) -> "WeilLabel":
        t = Twist(self.twist.s + ds, self.twist.zeta * (dzeta or RootOfUnity(1, 0)))
        return replace(self, twist=t)

    def cleared(self) -> "WeilLabel":
        return replace(self, twist=Twist())

    def key(self):
        return (self.core, self.dim, self.duality, self.twist.sort_key())

    def core_key(self):
        return (self.core, self.dim, self.duality)

    def to_json(self):
        return {"core": self.core, "dim": self.dim, "duality": self.duality,
                "twist": self.twist.to_json()}

    @staticmethod
    def from_json(obj) -> "WeilLabel":
        return WeilLabel(obj["core"], int(obj["dim"]), obj["duality"],
                         Twist.from_json(obj.get("twist", {})))


@dataclass(frozen=True)
class Block:
    label: WeilLabel
    a: int
    mult: int = 1

    def __post_init__(self):
        if self.a < 1 or self.mult < 1:
            raise LParamError("block needs a >= 1 and mult >= 1")

    def key(self):
        return (self.label.key(), self.a)


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str            # GLinner | Sp | SOodd | SOeven | U
    n: int
    d: int = 1           # GLinner only: degree of the division algebra

    def __post_init__(self):
        if self.kind not in ("GLinner", "Sp", "SOodd", "SOeven", "U"):
            raise LParamError(f"unknown group descriptor kind {self.kind!r}")
        if self.kind == "GLinner":
            if self.n % self.d:
                raise LParamError("GLinner(n, d) needs d | n")
        elif self.d != 1:
            raise LParamError("d is meaningful only for GLinner")
        if self.kind == "Sp" and self.n % 2:
            raise LParamError("Sp takes the even symplectic size")
        if self.kind == "SOodd" and self.n % 2 == 0:
            raise LParamError("SOodd takes an odd size")
        if self.kind == "SOeven" and self.n % 2:
            raise LParamError("SOeven takes an even size")

    @property
    def dual_dim(self) -> int:
        if self.kind == "GLinner":
            return self.n
        if self.kind == "Sp":
            return self.n + 1        # Sp_n here means Sp_n(F) with n even; dual SO_{n+1}
        if self.kind == "SOodd":
            return self.n - 1        # SO_n, n odd; dual Sp_{n-1}
        if self.kind == "SOeven":
            return self.n
        return self.n                # U_n: dual GL_n with conjugate duality

    @property
    def dual_parity(self) -> Optional[str]:
        """The self-duality type every constituent must carry."""
        if self.kind == "GLinner":
            return None
        if self.kind == "Sp":
            return "orth"
        if self.kind == "SOodd":
            return "symp"
        if self.kind == "SOeven":
            return "orth"
        return "conj-orth"           # per the staircase shapes of the unitary case

    def to_json(self):
        out = {"type": self.kind, "n": self.n}
        if self.kind == "GLinner":
            out["d"] = self.d
        return out

    @staticmethod
    def from_json(obj) -> "GroupDescriptor":
        kind = obj["type"]
        n = int(obj["n"])
        if kind == "Sp" and n % 2:
            raise LParamError("Sp descriptor needs the even symplectic size n")
        if kind == "SOodd" and n % 2 == 0:
            raise LParamError("SOodd descriptor needs odd n")
        return GroupDescriptor(kind, n, int(obj.get("d", 1)))


def block_parity(duality: str, a: int) -> str:
    """Self-duality type of label x S_a (S_a is orth for a odd, symp for a even)."""
    if duality == "none":
        return "none"
    flip = (a % 2 == 0)
    table = {
        ("orth", False): "orth", ("orth", True): "symp",
        ("symp", False): "symp", ("symp", True): "orth",
        ("conj-orth", False): "conj-orth", ("conj-orth", True): "conj-symp",
        ("conj-symp", False): "conj-symp", ("conj-symp", True): "conj-orth",
    }
    return table[(duality, flip)]


@dataclass(frozen=True)
class LParameter:
    gd: GroupDescriptor
    blocks: tuple[Block, ...]

    def sorted_blocks(self) -> tuple[Block, ...]:
        return tuple(sorted(self.blocks, key=lambda b: b.key()))


def validate(gd: GroupDescriptor, blocks: Sequence[Block]) -> LParameter:
    """Dimension and duality-parity checks; returns the canonical parameter."""
    merged: dict = {}
    for b in blocks:
        key = b.key()
        if key in merged:
            merged[key] = Block(b.label, b.a, merged[key].mult + b.mult)
        else:
            merged[key] = b
    blocks = tuple(sorted(merged.values(), key=lambda b: b.key()))

    total = 0
    for b in blocks:
        dual = b.label.duality
        if gd.kind == "GLinner":
            if dual != "none":
                raise LParamError(
                    f"block {b.label.core} x S_{b.a}: GLinner labels carry no duality")
            total += b.label.dim * b.a * b.mult
        elif gd.kind == "U":
            if dual in SELF_DUAL:
                raise LParamError(
                    f"block {b.label.core}: unitary parameters use conjugate dualities")
            total += b.label.dim * b.a * b.mult * (2 if dual == "none" else 1)
        else:
            if dual in CONJ_DUAL:
                raise LParamError(
                    f"block {b.label.core}: conjugate duality in a split classical group")
            total += b.label.dim * b.a * b.mult * (2 if dual == "none" else 1)
    if total != gd.dual_dim:
        raise LParamError(
            f"blocks contribute dimension {total}, dual group needs {gd.dual_dim}")

    parity = gd.dual_parity
    if parity is not None:
        for b in blocks:
            bp = block_parity(b.label.duality, b.a)
            if bp == "none":
                continue
            if bp != parity and b.mult % 2:
                raise LParamError(
                    f"block {b.label.core} x S_{b.a} has {bp} parity opposite to the "
                    f"{parity} target and odd multiplicity {b.mult}")
            if b.label.duality != "none" and not b.label.twist.s == 0:
                raise LParamError(
                    f"self-dual label {b.label.core} carries a nonzero twist exponent; "
                    "twisted constituents must enter as dual 'none' pairs")
    return LParameter(gd, blocks)


# -- component groups of parameters -----------------------------------------------


def factor_type(gd: GroupDescriptor, duality: str) -> str:
    """Centralizer factor type for a label: O when the parities match, Sp else."""
    parity = gd.dual_parity
    if duality == "none":
        return "GL"
    if parity in ("orth", "conj-orth"):
        return "O" if duality in ("orth", "conj-orth") else "Sp"
    return "O" if duality in ("symp", "conj-symp") else "Sp"


def _label_groups(phi: LParameter) -> dict:
    """Blocks grouped by label, with the per-label partition of a's."""
    out: dict = {}
    for b in phi.blocks:
        out.setdefault(b.label, []).append(b)
    return out


def generator_names(phi: LParameter) -> list[str]:
    """Names of the z-generators of S_phi (classical/unitary groups)."""
    names = []
    for label, blocks in sorted(_label_groups(phi).items(), key=lambda kv: kv[0].key()):
        ft = factor_type(phi.gd, label.duality)
        if ft == "GL":
            continue
        parts = sorted({b.a for b in blocks
                        if (b.a % 2 == 1 if ft == "O" else b.a % 2 == 0)})
        for a in parts:
            names.append(f"z:{label.core}:{a}")
    return names


@dataclass
class ComponentGroupTower:
    s_group: FiniteGroup
    z_subgroup: "object"
    r_group: FiniteGroup
    generators: dict[str, int]
    cyclic_order: int            # |S_phi| for GLinner, else 1


def s_group(phi: LParameter) -> ComponentGroupTower:
    """S_phi as a product of per-label component groups (GLinner: cyclic)."""
    if phi.gd.kind == "GLinner":
        parts = []
        for b in phi.blocks:
            parts.extend([b.a] * (b.label.dim * b.mult))
        cg = component_group("SLmod", tuple(sorted(parts, reverse=True)),
                             modulus=phi.gd.n)
        G = cg.group
        Z = G.subgroup(range(G.order))
        return ComponentGroupTower(G, Z, trivial_group(), dict(cg.generators), G.order)
    names = generator_names(phi)
    G = elementary_abelian(2, len(names)) if names else trivial_group()
    gens = {nm: (2 ** (len(names) - 1 - i) if names else 0)
            for i, nm in enumerate(names)}
    # designated central element: the product of all z-generators (image of -1)
    center_elt = 0
    for e in gens.values():
        center_elt = G.mul(center_elt, e)
    Z = G.subgroup_generated([center_elt]) if names else G.subgroup([0])
    from .groups import quotient as _q
    R, _ = _q(G, Z)
    return ComponentGroupTower(G, Z, R, gens, 1)


@dataclass(frozen=True)
class Enhancement:
    """A character of S_phi: sign per z-generator, cyclic value for GLinner."""

    signs: tuple[tuple[str, int], ...] = ()
    cyc: RootOfUnity = RootOfUnity(1, 0)

    def sign(self, name: str) -> int:
        for nm, s in self.signs:
            if nm == name:
                return s
        raise LParamError(f"enhancement carries no sign for generator {name}")

    def sign_map(self) -> dict[str, int]:
        return dict(self.signs)

    def order(self) -> int:
        return self.cyc.order

    def to_json(self):
        return {"signs": {nm: s for nm, s in self.signs}, "cyc": self.cyc.to_json(),
                "zeta_center": self.central_character().to_json()}

    def central_character(self) -> RootOfUnity:
        z = self.cyc
        for _, s in self.signs:
            if s == -1:
                z = z * RootOfUnity.minus_one()
        return z

    @staticmethod
    def from_json(obj) -> "Enhancement":
        signs = tuple(sorted((str(k), int(v)) for k, v in obj.get("signs", {}).items()))
        return Enhancement(signs, RootOfUnity.from_json(obj.get("cyc", [1, 0])))


def check_enhancement(phi: LParameter, rho: Enhancement) -> Enhancement:
    if phi.gd.kind == "GLinner":
        tower = s_group(phi)
        if rho.signs:
            raise LParamError("GLinner enhancements are cyclic characters (no signs)")
        if tower.cyclic_order % rho.cyc.order:
            raise LParamError(
                f"enhancement order {rho.cyc.order} does not divide |S_phi| = "
                f"{tower.cyclic_order}")
        return rho
    names = set(generator_names(phi))
    given = {nm for nm, _ in rho.signs}
    if given != names:
        raise LParamError(
            f"enhancement signs {sorted(given)} do not match the generators "
            f"{sorted(names)}")
    if any(s not in (1, -1) for _, s in rho.signs):
        raise LParamError("sign values must be +-1")
    if not rho.cyc.is_one():
        raise LParamError("cyclic enhancement part is GLinner-only")
    return rho


# -- classifiers ----------------------------------------------------------------


def is_bounded(phi: LParameter) -> bool:
    return all(b.label.twist.s == 0 for b in phi.blocks)


def is_discrete(phi: LParameter) -> bool:
    if phi.gd.kind == "GLinner":
        return len(phi.blocks) == 1 and phi.blocks[0].mult == 1
    for b in phi.blocks:
        if b.mult != 1 or b.label.duality == "none":
            return False
        if block_parity(b.label.duality, b.a) != phi.gd.dual_parity:
            return False
    return True


def is_relevant(phi: LParameter, rho: Enhancement, zeta: RootOfUnity) -> bool:
    """The enhancement's central character must match the inner-twist character."""
    rho = check_enhancement(phi, rho)
    if rho.central_character() != zeta:
        return False
    if phi.gd.kind == "GLinner":
        if rho.cyc.order % phi.gd.d:
            return False
    return True


def kottwitz_character(gd: GroupDescriptor) -> RootOfUnity:
    """The canonical central character of the inner twist (trivial when split).

    For GLinner(n, d) this is the order-d character of the center; split
    classical and quasi-split unitary groups give the trivial character.
    """
    if gd.kind == "GLinner" and gd.d > 1:
        return RootOfUnity(gd.d, 1)
    return RootOfUnity.one()


def is_cuspidal(phi: LParameter, rho: Enhancement) -> bool:
    rho = check_enhancement(phi, rho)
    if not is_discrete(phi):
        return False
    if phi.gd.kind == "GLinner":
        b = phi.blocks[0]
        pairs = cuspidal_pairs("SLmod", b.a, modulus=b.a)
        if not pairs:
            return False
        required = pairs[0].character_order or 1
        return rho.order() == required
    sign_map = rho.sign_map()
    for label, blocks in _label_groups(phi).items():
        ft = factor_type(phi.gd, label.duality)
        m = sum(b.a * b.mult for b in blocks)
        parts = tuple(sorted((b.a for b in blocks for _ in range(b.mult)), reverse=True))
        descriptors = cuspidal_pairs(ft, m)
        matched = False
        for desc in descriptors:
            if desc.partition != parts:
                continue
            if all(sign_map[f"z:{label.core}:{p}"] == s for p, s in desc.signs):
                matched = True
                break
        if not matched:
            return False
    return True


# -- cuspidal data and supports -----------------------------------------------


@dataclass(frozen=True)
class LeviFactor:
    """A GL-type factor of a Levi, carrying label x S_a with the label's twist."""

    label: WeilLabel
    a: int

    def key(self):
        return (self.label.key(), self.a)


@dataclass(frozen=True)
class TailBlock:
    """A staircase constituent of the classical tail of a quasi-Levi."""

    label: WeilLabel
    a: int
    sign: int

    def key(self):
        return (self.label.key(), self.a)


@dataclass(frozen=True)
class CuspidalDatum:
    gd: GroupDescriptor
    gl_factors: tuple[LeviFactor, ...]
    tail: tuple[TailBlock, ...]
    chunk_order: int              # GLinner: the order of the cuspidal enhancement
    zeta: RootOfUnity             # central character carried by the enhancement

    def canonical(self) -> "CuspidalDatum":
        return replace(
            self,
            gl_factors=tuple(sorted(self.gl_factors, key=lambda f: f.key())),
            tail=tuple(sorted(self.tail, key=lambda t: t.key())))

    def infinitesimal_multiset(self) -> tuple:
        mirror = self.gd.kind != "GLinner"
        out = []
        for f in self.gl_factors:
            for s in type_a_block_slots(f.a, 1):
                out.append((f.label.core, f.label.dim, f.label.twist.s + s))
                if mirror:
                    # a GL slot of a self-dual group stands for the pair
                    # label |.|^s (+) dual |.|^{-s}
                    out.append((f.label.core, f.label.dim, -(f.label.twist.s + s)))
        for t in self.tail:
            for s in type_a_block_slots(t.a, 1):
                out.append((t.label.core, t.label.dim, t.label.twist.s + s))
        return tuple(sorted(out))


def datum_is_cuspidal(cd: CuspidalDatum) -> bool:
    """Cuspidality of the datum relative to its own Levi.

    GLinner: every factor is a single chunk of size chunk_order (the order of
    the cuspidal enhancement); classical: GL slots are a = 1 blocks and the
    tail matches a staircase cuspidal descriptor per label.
    """
    if cd.gd.kind == "GLinner":
        return all(f.a == cd.chunk_order for f in cd.gl_factors)
    if any(f.a != 1 for f in cd.gl_factors):
        return False
    by_label: dict = {}
    for t in cd.tail:
        by_label.setdefault(t.label, []).append(t)
    for label, tbs in by_label.items():
        ft = factor_type(cd.gd, label.duality)
        m = sum(t.a for t in tbs)
        parts = tuple(sorted((t.a for t in tbs), reverse=True))
        ok = False
        for desc in cuspidal_pairs(ft, m):
            if desc.partition == parts and all(
                    next(t.sign for t in tbs if t.a == p) == s for p, s in desc.signs):
                ok = True
        if not ok:
            return False
    return True


def infinitesimal_multiset(phi: LParameter) -> tuple:
    """The multiset of (core, dim, exponent) ladder points of the parameter.

    In self-dual groups a 'none' block stands for the pair pi (+) dual, so its
    ladder is counted together with the mirrored ladder; definite-duality
    blocks are self-mirrored already (twist exponent 0, symmetric ladder).
    """
    mirror = phi.gd.kind != "GLinner"
    out = []
    for b in phi.blocks:
        for s in type_a_block_slots(b.a, 1):
            for _ in range(b.mult):
                out.append((b.label.core, b.label.dim, b.label.twist.s + s))
                if mirror and b.label.duality == "none":
                    out.append((b.label.core, b.label.dim, -(b.label.twist.s + s)))
    return tuple(sorted(out))


def cuspidal_support(phi: LParameter, rho: Enhancement,
                     table: Optional[SpringerTable] = None) -> CuspidalDatum:
    """The cuspidal datum of (phi, rho): Definition-style block reduction.

    Type A (GLinner): each block splits into chunks of size o = ord(rho) at
    the twist ladder; classical/unitary: 'none' labels reduce the same way
    with o = 1, self-dual labels through the (built-in or supplied) table.
    """
    rho = check_enhancement(phi, rho)
    if phi.gd.kind == "GLinner":
        o = rho.order()
        factors = []
        for b in phi.blocks:
            if b.a % o:
                raise LParamError(
                    f"enhancement order {o} does not divide the block size {b.a}; "
                    "inconsistent with the component group")
            for s in type_a_block_slots(b.a, o):
                for _ in range(b.mult):
                    factors.append(LeviFactor(b.label.twisted(s), o))
        return CuspidalDatum(phi.gd, tuple(factors), (), o,
                             rho.central_character()).canonical()

    table = table or SpringerTable()
    sign_map = rho.sign_map()
    factors: list[LeviFactor] = []
    tail: list[TailBlock] = []
    for label, blocks in sorted(_label_groups(phi).items(), key=lambda kv: kv[0].key()):
        ft = factor_type(phi.gd, label.duality)
        if ft == "GL":
            for b in blocks:
                for s in type_a_block_slots(b.a, 1):
                    for _ in range(b.mult):
                        factors.append(LeviFactor(b.label.twisted(s), 1))
            continue
        parts = tuple(sorted((b.a for b in blocks for _ in range(b.mult)), reverse=True))
        gen_parts = sorted({p for p in parts if (p % 2 == 1 if ft == "O" else p % 2 == 0)})
        signs = tuple(sorted((p, sign_map[f"z:{label.core}:{p}"]) for p in gen_parts))
        # a factor that is already a cuspidal pair supports itself (no table needed)
        cusp = next((desc for desc in cuspidal_pairs(ft, sum(parts))
                     if desc.partition == parts and tuple(sorted(desc.signs)) == signs),
                    None)
        if cusp is not None:
            for a, s in sorted(signs):
                tail.append(TailBlock(label, a, s))
            continue
        support = table.lookup(ft, parts, signs)
        for s in support.slots:
            factors.append(LeviFactor(label.twisted(Fraction(s)), 1))
        if support.tail_depth:
            d = support.tail_depth
            start = 1 if ft == "O" else 2
            for i, a in enumerate(range(start, start + 2 * d, 2), start=1):
                tail.append(TailBlock(label, a, (-1) ** (i + support.tail_flip)))
    return CuspidalDatum(phi.gd, tuple(factors), tuple(tail), 1,
                         rho.central_character()).canonical()


def support_as_parameter(cd: CuspidalDatum) -> tuple[LParameter, Enhancement]:
    """The cuspidal datum re-read as an enhanced parameter on the ambient group.

    Useful for idempotence checks: the Levi's blocks, assembled back into the
    ambient dual group.
    """
    blocks: list[Block] = []
    for f in cd.gl_factors:
        blocks.append(Block(f.label, f.a, 1))
    for t in cd.tail:
        blocks.append(Block(t.label, t.a, 1))
    phi = validate(cd.gd, blocks)
    if cd.gd.kind == "GLinner":
        rho = Enhancement((), _cyclic_of_order(cd.zeta, cd.chunk_order))
        return phi, rho
    signs = []
    for nm in generator_names(phi):
        _, core, a_str = nm.split(":")
        a = int(a_str)
        sign = next((t.sign for t in cd.tail
                     if t.label.core == core and t.a == a), 1)
        signs.append((nm, sign))
    return phi, Enhancement(tuple(sorted(signs)))


def _cyclic_of_order(zeta: RootOfUnity, g: int) -> RootOfUnity:
    """The cyclic enhancement value of a chunk-order-g datum.

    Data produced by cuspidal_support carry zeta of order exactly g (the
    central character is the cyclic character itself); otherwise fall back to
    the canonical primitive value.
    """
    if g == 1:
        return RootOfUnity(1, 0)
    if zeta.order == g:
        return zeta
    return RootOfUnity(g, 1)


# -- inertial classes and Bernstein components --------------------------------------


@dataclass
class InertialClass:
    gd: GroupDescriptor
    gl_cores: tuple                  # sorted core keys of twist-cleared GL factors
    tail: tuple                      # tail blocks (twist-cleared labels)
    chunk_order: int
    zeta: RootOfUnity
    symmetry: FiniteGroup = field(default=None)  # W_{s_vee}
    symmetry_note: str = "computed"

    def key(self):
        return (self.gd.kind, self.gd.n, self.gd.d, self.gl_cores, self.tail,
                self.chunk_order, self.zeta.order, self.zeta.exp)

    def __eq__(self, other):
        return isinstance(other, InertialClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def inertial_class(cd: CuspidalDatum,
                   symmetry_override: Optional[FiniteGroup] = None,
                   symmetry_note: str = "supplied") -> InertialClass:
    """Clear all twists and record the residual symmetry group W_{s_vee}.

    The computed W_{s_vee} is the product of symmetric groups permuting equal
    twist-cleared GL factors (self-dual tails are fixed).  An explicitly
    supplied symmetry group overrides the computed one (used when the class is
    assembled from external group data).
    """
    cleared = []
    for f in cd.gl_factors:
        cleared.append((f.label.core_key(), f.a))
    cleared.sort()
    tail = tuple(sorted((TailBlock(t.label.cleared(), t.a, t.sign) for t in cd.tail),
                        key=lambda t: t.key())) if cd.tail else ()
    if symmetry_override is not None:
        W = symmetry_override
        note = symmetry_note
    else:
        W = None
        counts: dict = {}
        for ck in cleared:
            counts[ck] = counts.get(ck, 0) + 1
        for ck in sorted(counts):
            Sk = symmetric_group(counts[ck])
            W = Sk if W is None else direct_product(W, Sk)
        if W is None:
            W = trivial_group()
        note = "computed"
    return InertialClass(cd.gd, tuple(cleared), tail, cd.chunk_order, cd.zeta, W, note)


def bernstein_component(phi: LParameter, rho: Enhancement,
                        table: Optional[SpringerTable] = None) -> InertialClass:
    return inertial_class(cuspidal_support(phi, rho, table))


# -- the component's twisted extended quotient ----------------------------------------


@dataclass
class ComponentFiberPoint:
    dimension: int
    bounded: bool


@dataclass
class ComponentReport:
    inertial: InertialClass
    isotropy_order: int
    cocycle_trivial_class: bool
    fiber: list[ComponentFiberPoint]

    @property
    def fiber_size(self) -> int:
        return len(self.fiber)


def component_extended_quotient(s_vee: InertialClass,
                                extension: Optional["SectionDatumLike"] = None
                                ) -> ComponentReport:
    """Fiber of the extended quotient over the class's cleared representative.

    The isotropy group of the representative is the full W_{s_vee} (it is
    built as the stabilizer of the cleared datum); its cocycle is trivial
    unless section data is supplied, in which case the section cocycle twists
    the fiber (the nontrivial-cocycle regime of disconnected-group classes).
    """
    from .springer import cocycle_from_section
    from .tga import is_trivial_class, trivial_cocycle, twisted_character_data

    W = s_vee.symmetry
    if extension is not None:
        nat = cocycle_from_section(extension)
        if nat.group.order != W.order:
            raise LParamError(
                "section cocycle lives on a group of different order than W_{s_vee}")
        if nat.group.order != W.order or not (nat.group.table == W.table).all():
            raise LParamError(
                "section cocycle group is not the supplied W_{s_vee} realization")
        from .tga import TwoCocycle
        nat = TwoCocycle(W, nat.m, nat.exponents)
        trivial_class = is_trivial_class(nat)
    else:
        nat = trivial_cocycle(W)
        trivial_class = True
    data = twisted_character_data(W, nat)
    fiber = [ComponentFiberPoint(d, True) for d, _ in data]
    return ComponentReport(s_vee, W.order, trivial_class, fiber)


class SectionDatumLike:
    pass


# -- standard triples -----------------------------------------------------------------


@dataclass
class StandardTriple:
    gd: GroupDescriptor
    levi_twists: tuple               # strictly positive twist exponents, descending
    bounded_blocks: tuple[tuple[Twist, tuple[Block, ...]], ...]
    enhancement: Enhancement


def standard_triple(phi: LParameter, rho: Enhancement) -> StandardTriple:
    """Langlands-classification data: bounded part plus strictly positive twist.

    Supported for GLinner (blocks regrouped by twist exponent, dominance
    order); other descriptors raise NotSupportedError.
    """
    rho = check_enhancement(phi, rho)
    if phi.gd.kind != "GLinner":
        raise NotSupportedError(
            "standard triples are implemented for the GLinner family only")
    by_twist: dict = {}
    for b in phi.blocks:
        s = b.label.twist.s
        cleared = Block(replace(b.label, twist=Twist(Fraction(0), b.label.twist.zeta)),
                        b.a, b.mult)
        by_twist.setdefault(s, []).append(cleared)
    twists = tuple(sorted(by_twist, reverse=True))
    groups = tuple((Twist(s), tuple(sorted(by_twist[s], key=lambda b: b.key())))
                   for s in twists)
    return StandardTriple(phi.gd, twists, groups, rho)


def assemble(st: StandardTriple) -> tuple[LParameter, Enhancement]:
    """Inverse of standard_triple."""
    blocks = []
    for twist, blks in st.bounded_blocks:
        for b in blks:
            blocks.append(Block(b.label.twisted(twist.s), b.a, b.mult))
    return validate(st.gd, blocks), st.enhancement


# -- JSON ------------------------------------------------------------------------------


def parameter_to_json(phi: LParameter, rho: Optional[Enhancement] = None) -> dict:
    out = {
        "group": phi.gd.to_json(),
        "blocks": [dict(b.label.to_json(), a=b.a, mult=b.mult) for b in phi.blocks],
    }
    if rho is not None:
        out["enhancement"] = rho.to_json()
    return out


def parameter_from_json(obj: dict) -> tuple[LParameter, Optional[Enhancement]]:
    gd = GroupDescriptor.from_json(obj["group"])
    blocks = []
    for b in obj["blocks"]:
        label = WeilLabel.from_json(b)
        blocks.append(Block(label, int(b.get("a", 1)), int(b.get("mult", 1))))
    phi = validate(gd, blocks)
    rho = None
    if "enhancement" in obj:
        rho = check_enhancement(phi, Enhancement.from_json(obj["enhancement"]))
    return phi, rho
