"""Clifford theory for a normal subgroup N of Gamma with a twist.

Given an irreducible N-representation pi, this module computes its
Gamma-orbit and stabilizer, pinned intertwiners I^gamma with the resulting
cocycle kappa_pi on Gamma_pi/N, cross-product modules tau x pi over a twisted
algebra K[Gamma, nat], and the full orbit/twisted-irrep matching with
Irr(K[Gamma, nat]).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactnum import Cyclotomic, RootOfUnity
from .groups import FiniteGroup, GroupError, GroupHom, SubgroupHandle, coset_representatives, \
    quotient
from .reps import Matrix, MatrixRep, character_table, hom_space, irreps_matrices, mat_eq, \
    mat_identity, mat_mul, mat_scale, mat_trace, mat_zero
from .tga import CocycleError, TGAIrrep, TwoCocycle, cocycle_from_values, cohomologous, \
    trivial_cocycle, twisted_character_data, twisted_irreps, validate_cocycle


class CliffordError(ValueError):
    pass


@dataclass
class CliffordDatum:
    gamma: FiniteGroup
    normal: SubgroupHandle
    pi: MatrixRep                      # representation of normal.as_group()
    stabilizer: SubgroupHandle         # Gamma_pi, as subgroup of gamma
    quotient_group: FiniteGroup        # Gamma_pi / N
    quotient_proj: GroupHom            # Gamma_pi(as group) -> quotient_group
    stab_index_map: dict[int, int]     # Gamma_pi-as-group index -> gamma index
    coset_reps: list[int]              # gamma indices, one per quotient element
    intertwiners: dict[int, Matrix]    # gamma index (all of Gamma_pi) -> I^gamma
    kappa: TwoCocycle                  # on quotient_group

    def intertwiner(self, g: int) -> Matrix:
        return self.intertwiners[g]


def _sub_conj_rep(N_group: FiniteGroup, idx_map: dict[int, int], parent: FiniteGroup,
                  pi: MatrixRep, g: int) -> MatrixRep:
    """(g . pi)(n) = pi(g^{-1} n g), as a representation of N_group."""
    ginv = parent.inverse(g)
    parent_to_sub = {v: k for k, v in idx_map.items()}
    mats = []
    for i in range(N_group.order):
        n_parent = idx_map[i]
        conj = parent.mul(parent.mul(ginv, n_parent), g)
        mats.append(pi.matrices[parent_to_sub[conj]])
    return MatrixRep(N_group, mats, check=False)


def _conj_character_key(parent: FiniteGroup, N_group: FiniteGroup,
                        idx_map: dict[int, int], chi_values: dict[int, Cyclotomic],
                        g: int) -> tuple:
    """Sort key of the character of g . pi (values on parent element indices)."""
    ginv = parent.inverse(g)
    out = []
    for i in range(N_group.order):
        n_parent = idx_map[i]
        conj = parent.mul(parent.mul(ginv, n_parent), g)
        out.append(chi_values[conj].sort_key())
    return tuple(out)


def orbit_and_stabilizer(Gamma: FiniteGroup, N: SubgroupHandle, pi: MatrixRep):
    """Gamma-orbit of pi in Irr(N) (as character keys) and the stabilizer Gamma_pi."""
    if not N.normal:
        raise CliffordError("N must be normal in Gamma")
    N_group, idx_map = N.as_group()
    if pi.group.order != N_group.order:
        raise CliffordError("pi must be a representation of N")
    chi = pi.character()
    if not chi.is_irreducible():
        raise CliffordError("pi must be irreducible")
    chi_values = {idx_map[i]: chi.value_at(i) for i in range(N_group.order)}
    base_key = _conj_character_key(Gamma, N_group, idx_map, chi_values, 0)
    stab = []
    orbit_keys = {}
    for g in range(Gamma.order):
        key = _conj_character_key(Gamma, N_group, idx_map, chi_values, g)
        if key == base_key:
            stab.append(g)
        orbit_keys.setdefault(key, g)
    stabilizer = Gamma.subgroup(stab)
    orbit = sorted(orbit_keys.items(), key=lambda kv: kv[0])
    if len(orbit) * stabilizer.order != Gamma.order:
        raise CliffordError("orbit-stabilizer count failed (pi not irreducible?)")
    return orbit, stabilizer


def intertwiner_cocycle(Gamma: FiniteGroup, N: SubgroupHandle, pi: MatrixRep) -> CliffordDatum:
    """Pinned intertwiners I^gamma and the cocycle kappa_pi on Gamma_pi/N.

    I^gamma for coset representatives is the hom-space basis vector scaled so
    its first nonzero entry (row-major) is 1; on the rest of Gamma_pi it is
    extended by I^{rep . n} = I^{rep} pi(n).
    """
    orbit, stabilizer = orbit_and_stabilizer(Gamma, N, pi)
    N_group, idx_map = N.as_group()
    parent_to_sub = {v: k for k, v in idx_map.items()}
    stab_group, stab_map = stabilizer.as_group()
    # N inside the stabilizer group
    n_in_stab = sorted(parent_to_sub_idx for parent_to_sub_idx, g in stab_map.items()
                       if g in parent_to_sub)
    N_in_stab = stab_group.subgroup(n_in_stab)
    Q, proj = quotient(stab_group, N_in_stab)
    # coset representatives: lowest stabilizer-group index per quotient element
    q_reps_sub = list(Q.provenance["coset_reps"])
    q_reps_parent = [stab_map[r] for r in q_reps_sub]

    intertwiners: dict[int, Matrix] = {}
    for q, rep_parent in enumerate(q_reps_parent):
        conj_rep = _sub_conj_rep(N_group, idx_map, Gamma, pi, rep_parent)
        basis = hom_space(conj_rep, pi)
        if len(basis) != 1:
            raise CliffordError(
                f"intertwiner space has dimension {len(basis)}, expected 1")
        I = _normalize_first_entry(basis[0])
        intertwiners[rep_parent] = I
    # extend to all of Gamma_pi by I^{rep n} = I^{rep} pi(n)
    for s_idx in range(stab_group.order):
        g = stab_map[s_idx]
        if g in intertwiners:
            continue
        q = proj(s_idx)
        rep_sub = q_reps_sub[q]
        n_sub = stab_group.mul(stab_group.inverse(rep_sub), s_idx)
        n_parent = stab_map[n_sub]
        pi_n = pi.matrices[parent_to_sub[n_parent]]
        intertwiners[g] = mat_mul(intertwiners[stab_map[rep_sub]], pi_n)

    def kappa_value(q1: int, q2: int) -> RootOfUnity:
        g1, g2 = q_reps_parent[q1], q_reps_parent[q2]
        g12 = Gamma.mul(g1, g2)
        lhs = intertwiners[g12]
        rhs = mat_mul(intertwiners[g1], intertwiners[g2])
        scalar = _matrix_ratio(lhs, rhs)
        rou = scalar.as_root_of_unity()
        if rou is None:
            raise CliffordError(
                f"intertwiner cocycle value {scalar.to_text()} is not a root of "
                "unity; rejected per the normalization policy")
        return rou

    kappa = validate_cocycle(cocycle_from_values(Q, kappa_value))
    return CliffordDatum(Gamma, N, pi, stabilizer, Q, proj, stab_map,
                         q_reps_parent, intertwiners, kappa)


def _normalize_first_entry(M: Matrix) -> Matrix:
    for row in M:
        for x in row:
            if not x.is_zero():
                return mat_scale(M, x.inverse())
    raise CliffordError("zero intertwiner")


def _matrix_ratio(A: Matrix, B: Matrix) -> Cyclotomic:
    """The scalar c with A = c B (for nonzero proportional matrices)."""
    for ra, rb in zip(A, B):
        for a, b in zip(ra, rb):
            if not b.is_zero():
                c = a * b.inverse()
                if not mat_eq(A, mat_scale(B, c)):
                    raise CliffordError("matrices are not proportional")
                return c
    raise CliffordError("zero matrix in scalar comparison")


def _restrict_cocycle_to_quotient(Gamma: FiniteGroup, N: SubgroupHandle,
                                  nat: Optional[TwoCocycle],
                                  stab: SubgroupHandle, Q: FiniteGroup,
                                  proj: GroupHom, stab_map: dict[int, int],
                                  q_reps_parent: list[int],
                                  gamma_quotient=None) -> TwoCocycle:
    """Pull a cocycle on Gamma/N back to one on Gamma_pi/N via representatives."""
    if nat is None:
        return trivial_cocycle(Q)
    # nat lives on Gamma/N: evaluate on images of representatives
    GQ, gproj = gamma_quotient
    def value(q1, q2):
        a = gproj(q_reps_parent[q1])
        b = gproj(q_reps_parent[q2])
        return nat.value(a, b)
    return validate_cocycle(cocycle_from_values(Q, value))


def cross_product_rep(tau: TGAIrrep, datum: CliffordDatum,
                      nat: Optional[TwoCocycle] = None,
                      gamma_quotient=None) -> "TwistedModule":
    """The module tau x pi over K[Gamma, nat].

    tau must be an irreducible module over K[Gamma_pi/N, nat kappa_pi]; nat is
    a cocycle on Gamma/N (None means untwisted), supplied together with the
    quotient (Gamma/N, projection) when nontrivial.
    """
    Gamma, N = datum.gamma, datum.normal
    Q = datum.quotient_group
    if tau.group is not Q:
        raise CliffordError("tau must live on Gamma_pi/N")
    nat_res = _restrict_cocycle_to_quotient(Gamma, N, nat, datum.stabilizer, Q,
                                            datum.quotient_proj, datum.stab_index_map,
                                            datum.coset_reps, gamma_quotient)
    expected = nat_res.product(datum.kappa)
    m = tau.cocycle.m * expected.m // __import__("math").gcd(tau.cocycle.m, expected.m)
    if tau.cocycle.rescale_modulus(m).exponents != expected.rescale_modulus(m).exponents:
        raise CliffordError(
            "cocycle mismatch: tau must live over nat * kappa_pi "
            f"(expected exponent table {expected.exponents} mod {expected.m})")

    stab_group, stab_map = datum.stabilizer.as_group()
    parent_stab = {v: k for k, v in stab_map.items()}
    d_tau, d_pi = tau.dimension, datum.pi.dimension
    d_w = d_tau * d_pi

    def w_action(g_parent: int) -> Matrix:
        # S_g (m (x) v) = tau(T_{gN}) m (x) I^g v on W = M (x) V_pi
        q = datum.quotient_proj(parent_stab[g_parent])
        A = tau.matrices[q]
        B = datum.intertwiners[g_parent]
        return _kron(A, B)

    # induced module over coset representatives of Gamma / Gamma_pi
    t_reps = coset_representatives(Gamma, datum.stabilizer)
    r = len(t_reps)
    stab_set = set(datum.stabilizer.elements)

    def nat_gamma(a: int, b: int) -> Cyclotomic:
        if nat is None:
            return Cyclotomic.one()
        GQ, gproj = gamma_quotient
        return nat.value(gproj(a), gproj(b)).to_cyclotomic()

    mats = []
    zero_block = mat_zero(d_w, d_w)
    for g in range(Gamma.order):
        blocks = [[zero_block] * r for _ in range(r)]
        for j, t_j in enumerate(t_reps):
            gt = Gamma.mul(g, t_j)
            for i, t_i in enumerate(t_reps):
                h = Gamma.mul(Gamma.inverse(t_i), gt)
                if h in stab_set:
                    # S_g S_{t_j} = nat(g,t_j) S_{g t_j} = nat(g,t_j) nat(t_i,h)^{-1} S_{t_i} S_h
                    c = nat_gamma(g, t_j) * nat_gamma(t_i, h).inverse()
                    blocks[i][j] = mat_scale(w_action(h), c)
                    break
        big = tuple(
            tuple(blocks[bi][bj][ri][rj] for bj in range(r) for rj in range(d_w))
            for bi in range(r) for ri in range(d_w))
        mats.append(big)
    module = TwistedModule(Gamma, nat, gamma_quotient, mats, r * d_w)
    module.verify_sampled()
    return module


def _kron(A: Matrix, B: Matrix) -> Matrix:
    na, nb = len(A), len(B)
    return tuple(
        tuple(A[ia][ja] * B[ib][jb] for ja in range(na) for jb in range(nb))
        for ia in range(na) for ib in range(nb))


@dataclass
class TwistedModule:
    """A K[Gamma, nat]-module given by matrices of the S_gamma basis."""

    gamma: FiniteGroup
    nat: Optional[TwoCocycle]          # on Gamma/N (None = untwisted)
    gamma_quotient: Optional[tuple]    # (Gamma/N group, projection hom)
    matrices: list[Matrix]
    dimension: int

    def trace_vector(self) -> tuple[Cyclotomic, ...]:
        return tuple(mat_trace(M) for M in self.matrices)

    def _nat_value(self, a: int, b: int) -> Cyclotomic:
        if self.nat is None:
            return Cyclotomic.one()
        GQ, gproj = self.gamma_quotient
        return self.nat.value(gproj(a), gproj(b)).to_cyclotomic()

    def verify_sampled(self, limit: int = 1600):
        import random
        G = self.gamma
        n = G.order
        rng = random.Random(7)
        pairs = [(a, b) for a in range(n) for b in range(n)] if n * n <= limit else \
            [(rng.randrange(n), rng.randrange(n)) for _ in range(limit)]
        for a, b in pairs:
            lhs = mat_mul(self.matrices[a], self.matrices[b])
            rhs = mat_scale(self.matrices[G.mul(a, b)], self._nat_value(a, b))
            if not mat_eq(lhs, rhs):
                raise CliffordError(f"twisted module law fails at ({a},{b})")

    def restriction_character(self, H: SubgroupHandle) -> dict[int, Cyclotomic]:
        return {h: mat_trace(self.matrices[h]) for h in H.elements}


@dataclass
class MatchedPair:
    orbit_representative_key: tuple
    pi_character_degree: int
    orbit_size: int
    kappa_class_trivial: bool
    tau_dimension: int
    module_dimension: int
    module_trace: tuple


def clifford_bijection(Gamma: FiniteGroup, N: SubgroupHandle,
                       nat: Optional[TwoCocycle] = None,
                       with_modules: bool = False):
    """Match Gamma-orbits of (pi, tau) with Irr(K[Gamma, nat]).

    Returns (pairs, target_data) where pairs is a list of MatchedPair (one per
    element of the twisted dual) and target_data the (dim, trace) list of
    Irr(K[Gamma, nat]).  With with_modules=True every cross product is built
    as explicit matrices and matched by trace vector (costlier).
    """
    if not N.normal:
        raise CliffordError("N must be normal")
    N_group, idx_map = N.as_group()
    gamma_quotient = None
    if nat is not None:
        GQ, gproj = quotient(Gamma, N)
        gamma_quotient = (GQ, gproj)
        if nat.group is not GQ:
            raise CliffordError("nat must live on Gamma/N (use the returned quotient)")

    n_irreps = irreps_matrices(N_group)
    # group into Gamma-orbits by conjugated-character keys
    chi_keys = {}
    for i, rho in enumerate(n_irreps):
        chi = rho.character()
        chi_keys[i] = _conj_character_key(
            Gamma, N_group, idx_map,
            {idx_map[j]: chi.value_at(j) for j in range(N_group.order)}, 0)
    remaining = set(range(len(n_irreps)))
    orbits = []
    while remaining:
        i = min(remaining, key=lambda t: chi_keys[t])
        rho = n_irreps[i]
        chi = rho.character()
        chi_values = {idx_map[j]: chi.value_at(j) for j in range(N_group.order)}
        keys = set()
        for g in range(Gamma.order):
            keys.add(_conj_character_key(Gamma, N_group, idx_map, chi_values, g))
        members = [t for t in remaining if chi_keys[t] in keys]
        orbits.append((i, members))
        remaining -= set(members)

    pairs = []
    modules = []
    for i, members in orbits:
        pi = n_irreps[i]
        datum = intertwiner_cocycle(Gamma, N, pi)
        Q = datum.quotient_group
        nat_res = _restrict_cocycle_to_quotient(
            Gamma, N, nat, datum.stabilizer, Q, datum.quotient_proj,
            datum.stab_index_map, datum.coset_reps, gamma_quotient)
        total_cocycle = nat_res.product(datum.kappa)
        kappa_trivial = cohomologous(datum.kappa, trivial_cocycle(Q)) is not None
        taus = twisted_irreps(Q, total_cocycle)
        for tau in taus:
            orbit_size = Gamma.order // datum.stabilizer.order
            dim_module = orbit_size * tau.dimension * pi.dimension
            trace = ()
            if with_modules:
                module = cross_product_rep(tau, datum, nat, gamma_quotient)
                if module.dimension != dim_module:
                    raise CliffordError("cross product dimension mismatch")
                trace = module.trace_vector()
                modules.append(module)
            pairs.append(MatchedPair(chi_keys[i], int(pi.character().degree),
                                     orbit_size, kappa_trivial, tau.dimension,
                                     dim_module, trace))

    if nat is None:
        target = [(int(c.degree), tuple(c.value_at(g) for g in range(Gamma.order)))
                  for c in character_table(Gamma)]
    else:
        target = twisted_character_data(Gamma, _lift_nat(Gamma, nat, gamma_quotient))
    # counting checks (Theorem-style bookkeeping)
    if len(pairs) != len(target):
        raise CliffordError(
            f"matching failed: {len(pairs)} pairs vs {len(target)} irreducibles")
    if sum(p.module_dimension ** 2 for p in pairs) != Gamma.order:
        raise CliffordError("sum of squared module dimensions != |Gamma|")
    if with_modules:
        target_traces = sorted((d, tuple(v.sort_key() for v in tr)) for d, tr in target)
        module_traces = sorted((m.dimension, tuple(v.sort_key() for v in m.trace_vector()))
                               for m in modules)
        if target_traces != module_traces:
            raise CliffordError("cross products do not exhaust the twisted dual")
    return pairs, target


def _lift_nat(Gamma: FiniteGroup, nat: TwoCocycle, gamma_quotient) -> TwoCocycle:
    """Inflate a cocycle on Gamma/N to Gamma."""
    GQ, gproj = gamma_quotient
    def value(a, b):
        return nat.value(gproj(a), gproj(b))
    return validate_cocycle(cocycle_from_values(Gamma, value))
