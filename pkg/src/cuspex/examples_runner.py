"""Built-in end-to-end example computations, used by tests and the CLI.

Each runner returns a JSON-serializable report with a top-level "pass" flag;
they assemble real group data (the order-8 quaternion group, its section
cocycle, the staircase classifiers, the counting identity) and check the
expected structural facts exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .clifford import clifford_bijection, intertwiner_cocycle
from .exactnum import Cyclotomic, RootOfUnity
from .groups import FiniteGroup, quaternion_group, quotient
from .lparams import Block, CuspidalDatum, Enhancement, GroupDescriptor, LeviFactor, \
    WeilLabel, bernstein_component, component_extended_quotient, cuspidal_support, \
    inertial_class, is_cuspidal, is_discrete, is_relevant, kottwitz_character, s_group, \
    validate
from .reps import irreps_matrices
from .springer import SectionDatum, census, cocycle_from_section, \
    verify_intertwiner_vs_section
from .tga import cohomologous, is_trivial_class, twisted_irreps


def quaternion_example_data():
    """Q8 with its center, the nontrivial central character, and the section."""
    Q8 = quaternion_group()
    Z = Q8.center()
    zsub, _ = Z.as_group()
    eps = next(r for r in irreps_matrices(zsub)
               if r.character().values[1] == Cyclotomic.from_rational(-1))
    GQ, proj = quotient(Q8, Z)
    section = {q: min(g for g in range(Q8.order) if proj(g) == q)
               for q in range(GQ.order)}
    return Q8, Z, eps, GQ, proj, SectionDatum(Q8, Z, eps, section)


def run_example_a() -> dict:
    """Quaternion normalizer data end to end."""
    Q8, Z, eps, GQ, proj, datum = quaternion_example_data()
    checks = {}
    checks["q8_order_8"] = Q8.order == 8
    checks["five_conjugacy_classes"] = len(Q8.conjugacy_classes()) == 5
    checks["quotient_is_klein_four"] = (GQ.order == 4 and GQ.exponent() == 2)

    cd = intertwiner_cocycle(Q8, Z, eps)
    checks["kappa_class_nontrivial"] = not is_trivial_class(cd.kappa)

    nat_e = cocycle_from_section(datum)
    checks["section_cocycle_nontrivial"] = not is_trivial_class(nat_e)
    report = verify_intertwiner_vs_section(datum)
    checks["kappa_cohomologous_inverse_section"] = report.cohomologous_ok

    irr = twisted_irreps(GQ, nat_e)
    checks["one_twisted_irrep_dim_2"] = (len(irr) == 1 and irr[0].dimension == 2)

    pairs, _ = clifford_bijection(Q8, Z)
    eps_pairs = [p for p in pairs if not p.kappa_class_trivial]
    checks["unique_eps_pair_dim_2"] = (
        len(eps_pairs) == 1 and eps_pairs[0].module_dimension == 2)
    return {"example": "A", "pass": all(checks.values()), "checks": checks}


def run_example_b() -> dict:
    """The quaternion-built inertial class: symmetry (Z/2)^2, twisted fiber 1."""
    Q8, Z, eps, GQ, proj, datum = quaternion_example_data()
    core = WeilLabel("q8-2dim", 2, "none")
    chars = [WeilLabel(f"q8-chi{i}", 2, "none") for i in range(4)]
    gd = GroupDescriptor("GLinner", 10, 2)
    cd = CuspidalDatum(gd,
                       tuple([LeviFactor(core, 1)] + [LeviFactor(c, 1) for c in chars]),
                       (), 1, RootOfUnity(2, 1))
    s_vee = inertial_class(cd, symmetry_override=GQ,
                           symmetry_note="quaternion normalizer component group")
    rep = component_extended_quotient(s_vee, extension=datum)
    checks = {
        "symmetry_klein_four": s_vee.symmetry.order == 4 and s_vee.symmetry.exponent() == 2,
        "cocycle_class_nontrivial": not rep.cocycle_trivial_class,
        "fiber_size_one": rep.fiber_size == 1,
        "fiber_dimension_two": rep.fiber and rep.fiber[0].dimension == 2,
    }
    return {"example": "B", "pass": all(checks.values()), "checks": checks}


def run_example_cusp3(n_bound: int = 8) -> dict:
    """Inner-form GL cuspidality: single block pi x S_d with order-d enhancement."""
    checks = {}
    # the flagship case: GL_1(D), d = 2
    chi = WeilLabel("chi", 1, "none")
    gd = GroupDescriptor("GLinner", 2, 2)
    phi = validate(gd, [Block(chi, 2)])
    rho = Enhancement((), RootOfUnity(2, 1))
    zeta = kottwitz_character(gd)
    checks["gl1d_cuspidal"] = is_cuspidal(phi, rho) and is_relevant(phi, rho, zeta)
    checks["gl1d_trivial_rho_not_relevant"] = not is_relevant(phi, Enhancement(), zeta)
    split = validate(GroupDescriptor("GLinner", 2, 1),
                     [Block(WeilLabel("pi2", 2, "none"), 1)])
    checks["glnf_irreducible_cuspidal"] = is_cuspidal(split, Enhancement())
    count_checked = 0
    agree = True
    from math import gcd as _gcd
    for n in range(1, n_bound + 1):
        for d in range(1, n + 1):
            if n % d:
                continue
            # the degree-d division algebras correspond to the primitive
            # order-d central characters (one per Hasse invariant)
            zetas_d = [RootOfUnity(d, j) for j in range(d) if _gcd(j, d) == 1] \
                if d > 1 else [RootOfUnity.one()]
            for e in range(1, n + 1):
                for a in range(1, n + 1):
                    if e * a != n:
                        continue
                    p = validate(GroupDescriptor("GLinner", n, d),
                                 [Block(WeilLabel("pi", e, "none"), a)])
                    g = s_group(p).cyclic_order
                    for j in range(g):
                        r = Enhancement((), RootOfUnity(g, j) if j else RootOfUnity(1, 0))
                        lhs = is_cuspidal(p, r) and any(
                            is_relevant(p, r, z) for z in zetas_d)
                        rhs = (a == d and r.cyc.order == d)
                        agree = agree and (lhs == rhs)
                        count_checked += 1
    checks[f"single_block_scan_{count_checked}_cases"] = agree
    return {"example": "cusp3", "pass": all(checks.values()), "checks": checks}


def run_example_unitary(n_bound: int = 6) -> dict:
    """Unitary staircases: cuspidal iff exact staircase with alternating signs."""
    from itertools import product as iproduct
    checks = {}
    tau = WeilLabel("tau", 1, "conj-orth")
    sig = WeilLabel("sig", 1, "conj-symp")
    phi = validate(GroupDescriptor("U", 4), [Block(tau, 1), Block(tau, 3)])
    names = [f"z:tau:{a}" for a in (1, 3)]
    results = {}
    for signs in iproduct((1, -1), repeat=2):
        rho = Enhancement(tuple(zip(names, signs)))
        results[signs] = is_cuspidal(phi, rho)
    checks["u4_alternating_both_ways"] = (
        results[(-1, 1)] and results[(1, -1)]
        and not results[(1, 1)] and not results[(-1, -1)])
    phi6 = validate(GroupDescriptor("U", 6), [Block(sig, 2), Block(sig, 4)])
    names6 = [f"z:sig:{a}" for a in (2, 4)]
    res6 = {}
    for signs in iproduct((1, -1), repeat=2):
        rho = Enhancement(tuple(zip(names6, signs)))
        res6[signs] = is_cuspidal(phi6, rho)
    checks["u6_conj_symp_one_pattern"] = (
        res6[(-1, 1)] and not res6[(1, -1)] and not res6[(1, 1)] and not res6[(-1, -1)])
    return {"example": "unitary", "pass": all(checks.values()), "checks": checks}


def run_example_census() -> dict:
    checks = {}
    for N in range(0, 17, 2):
        checks[f"Sp_{N}"] = census("Sp", N).balanced
    for N in range(1, 18, 2):
        checks[f"SOodd_{N}"] = census("SO_odd", N).balanced
    for n in range(0, 21):
        checks[f"GL_{n}"] = census("GL", n).balanced
    return {"example": "census", "pass": all(checks.values()), "checks": checks}


RUNNERS = {
    "A": run_example_a,
    "B": run_example_b,
    "cusp3": run_example_cusp3,
    "unitary": run_example_unitary,
    "census": run_example_census,
}


def run_examples(case: str = "all") -> dict:
    if case == "all":
        reports = [RUNNERS[name]() for name in ("A", "B", "cusp3", "unitary", "census")]
        return {"pass": all(r["pass"] for r in reports), "reports": reports}
    if case not in RUNNERS:
        raise ValueError(f"unknown example case {case!r}; choose from "
                         f"{sorted(RUNNERS)} or 'all'")
    return RUNNERS[case]()
