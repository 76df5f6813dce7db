"""Twisted extended quotients (X // Gamma)_kappa for finite X.

A point of the quotient is a Gamma-orbit of pairs (x, rho) with rho an
irreducible module of the kappa_x-twisted algebra of the isotropy group of x.
Modules are moved between fibers by connecting maps; equivalence classes of
modules are tracked through their trace vectors on the T_w basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd as _gcd
from typing import Callable, Optional, Sequence

from .exactnum import Cyclotomic, RootOfUnity
from .groups import FiniteGroup, GroupError, SubgroupHandle
from .tga import CocycleError, TwoCocycle, cohomologous, trivial_cocycle, \
    twisted_character_data, validate_cocycle


class ExtQuotError(ValueError):
    pass


@dataclass
class ConnectingMap:
    """phi_{gamma,x}: K[Gamma_x, kappa_x] -> K[Gamma_{gamma x}, kappa_{gamma x}].

    group_map sends w in Gamma_x to an element of Gamma_{gamma x} (by default
    conjugation w -> gamma w gamma^{-1}); scalar(w) corrects the basis element:
    T_w -> scalar(w) T_{group_map(w)}.
    """

    group_map: Callable[[int], int]
    scalar: Callable[[int], RootOfUnity]


@dataclass
class ActionDatum:
    """A finite Gamma-set with a coherent family of isotropy cocycles.

    cocycle_factory(x, stab_group) builds kappa_x on the stabilizer group of x
    (None means the trivial family); connecting(gamma, x) overrides the default
    conjugation transport.
    """

    labels: list
    group: FiniteGroup
    action: Callable[[int, int], int]       # (gamma, x-index) -> x-index
    cocycle_factory: Optional[Callable[[int, FiniteGroup], TwoCocycle]] = None
    connecting: Optional[Callable[[int, int], ConnectingMap]] = None
    stab_groups: dict[int, tuple[FiniteGroup, dict[int, int]]] = field(default_factory=dict)
    cocycles: dict[int, TwoCocycle] = field(default_factory=dict)

    def __post_init__(self):
        G = self.group
        for x in range(len(self.labels)):
            for g in range(G.order):
                if self.action(g, self.action(G.inverse(g), x)) != x:
                    raise ExtQuotError(f"action is not invertible at (gamma={g}, x={x})")
        for x in range(len(self.labels)):
            stab = [g for g in range(G.order) if self.action(g, x) == x]
            handle = G.subgroup(stab)
            self.stab_groups[x] = handle.as_group()
        for x in range(len(self.labels)):
            sx, _ = self.stab_groups[x]
            if self.cocycle_factory is None:
                self.cocycles[x] = trivial_cocycle(sx)
            else:
                nat = self.cocycle_factory(x, sx)
                if nat.group is not sx:
                    raise ExtQuotError(f"cocycle at x={x} must live on the stabilizer group")
                self.cocycles[x] = validate_cocycle(nat)
        if self.connecting is None:
            self.connecting = self._default_connecting
        self.validate()

    # -- default transport: conjugation with trivial scalar correction ------

    def _default_connecting(self, gamma: int, x: int) -> ConnectingMap:
        G = self.group
        y = self.action(gamma, x)
        sx, mx = self.stab_groups[x]
        sy, my = self.stab_groups[y]
        inv_my = {v: k for k, v in my.items()}

        def group_map(w: int) -> int:
            parent = G.mul(G.mul(gamma, mx[w]), G.inverse(gamma))
            return inv_my[parent]

        return ConnectingMap(group_map, lambda w: RootOfUnity.one())

    # -- validation ---------------------------------------------------------

    def validate(self):
        G = self.group
        n = len(self.labels)
        for x in range(n):
            for gamma in range(G.order):
                y = self.action(gamma, x)
                phi = self.connecting(gamma, x)
                moved = self._push_cocycle(gamma, x, phi)
                target = self.cocycles[y]
                if cohomologous(moved, target) is None:
                    raise ExtQuotError(
                        f"cocycle family incoherent: gamma={gamma}, x={x}")
                m = moved.m * target.m // _gcd(moved.m, target.m)
                if moved.rescale_modulus(m).exponents != target.rescale_modulus(m).exponents:
                    raise ExtQuotError(
                        "connecting map is not an algebra isomorphism at "
                        f"(gamma={gamma}, x={x}): transported cocycle differs "
                        "from the target by a nonzero coboundary; adjust the "
                        "scalar corrections")
        # phi_{gamma,x} must be inner when gamma fixes x: it then fixes every
        # irreducible class, i.e. transported trace vectors are unchanged
        for x in range(n):
            sx, _ = self.stab_groups[x]
            module_keys = twisted_character_data(sx, self.cocycles[x])
            for gamma in range(G.order):
                if self.action(gamma, x) != x:
                    continue
                for dt in module_keys:
                    moved = _transport_trace(self, gamma, x, dt)
                    if _trace_key(moved[1]) != _trace_key(dt[1]):
                        raise ExtQuotError(
                            f"connecting map at (gamma={gamma}, x={x}) fixes x "
                            "but is not inner (it permutes irreducible classes)")
        # composition law phi_{g', gx} . phi_{g, x} = phi_{g'g, x}
        for x in range(n):
            for g1 in range(G.order):
                for g2 in range(G.order):
                    y = self.action(g1, x)
                    phi1 = self.connecting(g1, x)
                    phi2 = self.connecting(g2, y)
                    phi12 = self.connecting(G.mul(g2, g1), x)
                    sx, _ = self.stab_groups[x]
                    for w in range(sx.order):
                        if phi2.group_map(phi1.group_map(w)) != phi12.group_map(w):
                            raise ExtQuotError(
                                "connecting maps fail the composition law at "
                                f"(gamma'={g2}, gamma={g1}, x={x})")
                        combined = phi2.scalar(phi1.group_map(w)) * phi1.scalar(w)
                        if combined != phi12.scalar(w):
                            raise ExtQuotError(
                                "connecting scalar corrections fail composition at "
                                f"(gamma'={g2}, gamma={g1}, x={x})")

    def _push_cocycle(self, gamma: int, x: int, phi: ConnectingMap) -> TwoCocycle:
        """The cocycle (gamma_* kappa_x) twisted by phi's scalar correction."""
        sx, _ = self.stab_groups[x]
        y = self.action(gamma, x)
        sy, _ = self.stab_groups[y]
        nat = self.cocycles[x]
        inverse_map = {phi.group_map(w): w for w in range(sx.order)}

        def value(a: int, b: int) -> RootOfUnity:
            wa, wb = inverse_map[a], inverse_map[b]
            base = nat.value(wa, wb)
            corr = phi.scalar(wa) * phi.scalar(wb) * phi.scalar(sx.mul(wa, wb)).inverse()
            return base * corr

        return validate_cocycle(cocycle_from_values_on(sy, value))


def cocycle_from_values_on(G: FiniteGroup, value) -> TwoCocycle:
    from .tga import cocycle_from_values
    return cocycle_from_values(G, value)


@dataclass(frozen=True)
class QuotientPoint:
    """An orbit representative (x, rho), rho given by its trace vector."""

    x_index: int
    x_label: object
    dimension: int
    trace: tuple
    orbit_size: int


@dataclass
class ExtendedQuotient:
    datum: ActionDatum
    points: list[QuotientPoint]

    def size(self) -> int:
        return len(self.points)

    def fiber_sizes(self) -> dict[object, int]:
        out: dict[object, int] = {}
        for pt in self.points:
            out[pt.x_label] = out.get(pt.x_label, 0) + 1
        return out


def _module_keys_at(datum: ActionDatum, x: int) -> list[tuple[int, tuple]]:
    sx, _ = datum.stab_groups[x]
    return twisted_character_data(sx, datum.cocycles[x])


def _transport_trace(datum: ActionDatum, gamma: int, x: int,
                     dim_trace: tuple[int, tuple]) -> tuple[int, tuple]:
    """Trace vector of rho . phi_{gamma,x}^{-1} on the fiber over gamma x.

    (rho . phi^{-1})(T_a) = rho(phi^{-1}(T_a)) = scalar(w)^{-1} rho(T_w) with
    w = group_map^{-1}(a).
    """
    d, trace = dim_trace
    phi = datum.connecting(gamma, x)
    sx, _ = datum.stab_groups[x]
    y = datum.action(gamma, x)
    sy, _ = datum.stab_groups[y]
    inverse_map = {phi.group_map(w): w for w in range(sx.order)}
    out = []
    for a in range(sy.order):
        w = inverse_map[a]
        out.append(phi.scalar(w).inverse().to_cyclotomic() * trace[w])
    return d, tuple(out)


def build_extended_quotient(datum: ActionDatum) -> ExtendedQuotient:
    """Gamma-orbits of pairs (x, rho), with deterministic representatives."""
    G = datum.group
    n = len(datum.labels)
    pairs: dict[tuple[int, tuple], int] = {}
    all_pairs: list[tuple[int, int, tuple]] = []   # (x, dim, trace)
    for x in range(n):
        for d, trace in _module_keys_at(datum, x):
            all_pairs.append((x, d, trace))
    seen: set[tuple[int, int, tuple]] = set()
    points = []
    for x, d, trace in sorted(all_pairs, key=lambda t: (t[0], t[1],
                                                        tuple(v.sort_key() for v in t[2]))):
        key = (x, d, _trace_key(trace))
        if key in seen:
            continue
        orbit = set()
        for gamma in range(G.order):
            y = datum.action(gamma, x)
            dd, moved = _transport_trace(datum, gamma, x, (d, trace))
            okey = (y, dd, _trace_key(moved))
            orbit.add(okey)
        seen |= orbit
        points.append(QuotientPoint(x, datum.labels[x], d, trace, len(orbit)))
    return ExtendedQuotient(datum, points)


def _trace_key(trace: tuple) -> tuple:
    return tuple(v.sort_key() for v in trace)


def fiber_over(datum: ActionDatum, x: int) -> list[tuple[int, tuple]]:
    """The modules over the orbit representative Gamma-equivalent to x.

    Returns (dimension, trace vector) per irreducible of K[Gamma_x, kappa_x],
    transported along a connecting map to the minimal orbit representative.
    """
    G = datum.group
    orbit = sorted({datum.action(g, x) for g in range(G.order)})
    x0 = orbit[0]
    gamma = next(g for g in range(G.order) if datum.action(g, x) == x0)
    return [
        _transport_trace(datum, gamma, x, dt)
        for dt in _module_keys_at(datum, x)
    ]
