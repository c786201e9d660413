"""Invariant decompositions and finite-group analysis of the affine action.

Everything here is specific to the two catalog families: the quaternion
origami (genus 3) and the odd-q family (genus (3q-1)/2), plus generic
machinery for character multiplicities, congruence-kernel accounting, and
random-word growth probes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import cyclotomic, linalg
from .affine import AffineLift, automorphism_lift, lift, matrix_on
from .catalog import (QUATERNION_ORDER, Ornithorynque, Wollmilchsau,
                      quaternion_mul)
from .errors import ActionNotFinite, NotInCyclicImage, NotInvariant, WrongSurface
from .homology import ChainSpace, EdgeChain, Subspace, chain_space
from .linalg import Mat
from .origami import Origami
from .rootsys import UnboundedWitness, finite_closure
from .sl2z import CongruenceSubgroup, J_MAT, S_MAT, T_MAT, mat_pow

QUATERNION_CLASSES = (("1",), ("-1",), ("i", "-i"), ("j", "-j"), ("k", "-k"))
QUATERNION_CHARACTERS = {
    "chi_1": {"1": 1, "-1": 1, "i": 1, "j": 1, "k": 1},
    "chi_i": {"1": 1, "-1": 1, "i": 1, "j": -1, "k": -1},
    "chi_j": {"1": 1, "-1": 1, "i": -1, "j": 1, "k": -1},
    "chi_k": {"1": 1, "-1": 1, "i": -1, "j": -1, "k": 1},
    "chi_2": {"1": 2, "-1": -2, "i": 0, "j": 0, "k": 0},
}


def quaternion_character_value(name: str, g: str) -> int:
    rep = g if g in ("1", "-1") else g.lstrip("-")
    return QUATERNION_CHARACTERS[name][rep]


@dataclass
class DecompositionReport:
    origami: Origami
    subspaces: dict[str, Subspace]
    chains: dict[str, EdgeChain]
    lifts: dict[str, AffineLift]
    checks: dict[str, bool] = field(default_factory=dict)
    intersection_sign: int = 1

    @property
    def all_ok(self) -> bool:
        return all(self.checks.values())


def _span(space: ChainSpace, chains: Iterable[EdgeChain]) -> Subspace:
    return space.subspace_from(chains)


def _invariant_under(space: ChainSpace, sub: Subspace,
                     lifts: Iterable[AffineLift]) -> bool:
    for lf in lifts:
        for b in sub.basis:
            image = space.canonical_vec(linalg.mat_vec(lf.matrix, b))
            if not sub.contains_vec(image):
                return False
    return True


def _direct_sum_ok(space: ChainSpace, parts: Sequence[Subspace],
                   total_dim: int) -> bool:
    stacked = [v for p in parts for v in p.basis]
    return space.subspace_from_vecs(stacked).dim == sum(p.dim for p in parts) \
        == total_dim


def decompose_ew(ew: Wollmilchsau) -> DecompositionReport:
    if not isinstance(ew, Wollmilchsau):
        raise WrongSurface("decompose_ew needs the quaternion origami")
    origami = ew.origami
    space = chain_space(origami)
    st = lift(origami, S_MAT)
    tt = lift(origami, T_MAT)
    lifts = {"S": st, "T": tt}
    for g in QUATERNION_ORDER:
        lifts[f"aut_{g}"] = automorphism_lift(origami, ew.left_mult(g))
    chains: dict[str, EdgeChain] = {}
    chains["sigma"] = space.standard_splitting().sigma
    chains["zeta"] = space.standard_splitting().zeta
    for axis in ("i", "j", "k"):
        chains[f"w_{axis}"] = ew.w(axis)
    for v in ("1", "i", "j", "k"):
        chains[f"w_hat_{v}"] = ew.w_hat(v)
    for g in QUATERNION_ORDER:
        chains[f"sigma_hat_{g}"] = ew.sigma_hat(g)
        chains[f"zeta_hat_{g}"] = ew.zeta_hat(g)
        chains[f"epsilon_{g}"] = ew.epsilon(g)
    subspaces = {
        "H1_st": _span(space, [chains["sigma"], chains["zeta"]]),
        "H_rel": _span(space, [chains["w_i"], chains["w_j"], chains["w_k"]]),
        "H1_0": _span(space, [chains[f"epsilon_{g}"] for g in ("1", "i", "j", "k")]),
    }
    checks = {}
    checks["dim_H1_st"] = subspaces["H1_st"].dim == 2
    checks["dim_H_rel"] = subspaces["H_rel"].dim == 3
    checks["dim_H1_0"] = subspaces["H1_0"].dim == 4
    checks["direct_sum"] = _direct_sum_ok(
        space, [subspaces[k] for k in ("H1_st", "H1_0", "H_rel")],
        space.full_subspace().dim)
    all_lifts = list(lifts.values())
    for name, sub in subspaces.items():
        checks[f"invariant_{name}"] = _invariant_under(space, sub, all_lifts)
    checks["epsilon_negation"] = all(
        space.equivalent(ew.epsilon(quaternion_mul("-1", g)),
                         ew.epsilon(g).scale(-1))
        for g in ("1", "i", "j", "k"))
    checks["sigma_hat_half"] = all(
        space.equivalent(ew.sigma_hat(g),
                         (ew.epsilon(g) + ew.epsilon(quaternion_mul(g, "j")))
                         .scale(Fraction(1, 2)))
        for g in QUATERNION_ORDER)
    checks["zeta_hat_half"] = all(
        space.equivalent(ew.zeta_hat(g),
                         (ew.epsilon(g) + ew.epsilon(quaternion_mul(g, "i")))
                         .scale(Fraction(1, 2)))
        for g in QUATERNION_ORDER)
    return DecompositionReport(origami, subspaces, chains, lifts, checks)


def decompose_orn(orn: Ornithorynque) -> DecompositionReport:
    if not isinstance(orn, Ornithorynque):
        raise WrongSurface("decompose_orn needs the odd-q family")
    origami = orn.origami
    q = orn.q
    space = chain_space(origami)
    lifts: dict[str, AffineLift] = {}
    if q == 3:
        lifts["S"] = lift(origami, S_MAT)
        lifts["T"] = lift(origami, T_MAT)
        gen_names = ("S", "T")
    else:
        lifts["S2"] = lift(origami, mat_pow(S_MAT, 2))
        lifts["T2"] = lift(origami, mat_pow(T_MAT, 2))
        lifts["J"] = lift(origami, J_MAT)
        gen_names = ("S2", "T2", "J")
    for g in range(q):
        lifts[f"aut_{g}"] = automorphism_lift(origami, orn.shift(g))
    chains: dict[str, EdgeChain] = {
        "sigma": orn.sigma_total(), "zeta": orn.zeta_total(),
        "sigma_flat": orn.sigma_flat(), "zeta_flat": orn.zeta_flat(),
    }
    for i in range(q):
        chains[f"a_{i}"] = orn.a(i)
        chains[f"a_p_{i}"] = orn.a_p(i)
        chains[f"b_{i}"] = orn.b(i)
        chains[f"b_p_{i}"] = orn.b_p(i)
        chains[f"tau_{i}"] = orn.tau(i)
        chains[f"sigma_breve_{i}"] = orn.sigma_breve(i)
        chains[f"zeta_breve_{i}"] = orn.zeta_breve(i)
    subspaces = {
        "H1_st": _span(space, [chains["sigma"], chains["zeta"]]),
        "H_rel": _span(space, [chains["sigma_flat"], chains["zeta_flat"]]),
        "H_tau": _span(space, [orn.tau(i) for i in range(q)]),
        "H_breve": _span(space, [orn.sigma_breve(i) for i in range(q)]
                         + [orn.zeta_breve(i) for i in range(q)]),
    }
    checks = {}
    checks["dim_H_tau"] = subspaces["H_tau"].dim == q - 1
    checks["dim_H_breve"] = subspaces["H_breve"].dim == 2 * q - 2
    checks["dim_H_rel"] = subspaces["H_rel"].dim == 2
    zero = EdgeChain.zero(origami.n)
    checks["sum_tau"] = space.equivalent(
        sum((orn.tau(i) for i in range(q)), zero), zero)
    checks["sum_breve"] = space.equivalent(
        sum((orn.sigma_breve(i) for i in range(q)), zero), zero) and \
        space.equivalent(sum((orn.zeta_breve(i) for i in range(q)), zero), zero)
    checks["square_relation"] = all(
        space.equivalent(orn.a(i) - orn.a_p(i - 1) + orn.b(i - 1) - orn.b_p(i),
                         zero)
        for i in range(q))
    marked = space.marked_subspace(space.singular_vertices())
    parts = [subspaces[k] for k in ("H1_st", "H_rel", "H_tau", "H_breve")]
    checks["direct_sum"] = _direct_sum_ok(space, parts, marked.dim)
    all_lifts = list(lifts.values())
    for name, sub in subspaces.items():
        checks[f"invariant_{name}"] = _invariant_under(space, sub, all_lifts)
    report = DecompositionReport(origami, subspaces, chains, lifts, checks)
    report.gen_names = gen_names
    return report


# -- character analysis -------------------------------------------------------


def isotypic_multiplicities_quaternion(
        aut_lifts: dict[str, AffineLift], sub: Subspace,
        space: ChainSpace) -> dict[str, Fraction]:
    """Multiplicity of each irreducible of Q on an invariant subspace."""
    traces = {}
    for g in QUATERNION_ORDER:
        m = matrix_on(aut_lifts[f"aut_{g}"], sub)
        traces[g] = sum(m[i][i] for i in range(len(m)))
    out = {}
    for name in QUATERNION_CHARACTERS:
        total = sum(traces[g] * quaternion_character_value(name, g)
                    for g in QUATERNION_ORDER)
        out[name] = Fraction(total, 8)
    return out


def isotypic_multiplicities_cyclic(
        aut_lifts: Sequence[AffineLift], sub: Subspace, q: int) -> list:
    """Multiplicities of the Z/q characters, computed in Q[x]/(x^q - 1).

    Entry a is (1/q) sum_g tr(g) x^{-ag}; a rational multiple of 1 mod Phi_q
    when the action is by permutations of an invariant subspace.
    """
    traces = []
    for g in range(q):
        m = matrix_on(aut_lifts[g], sub)
        traces.append(sum(m[i][i] for i in range(len(m))))
    phi_q = cyclotomic.cyclotomic_polynomial(q)
    out = []
    for a in range(q):
        acc = [Fraction(0)] * q
        for g in range(q):
            acc[(-a * g) % q] += Fraction(traces[g], q)
        out.append(cyclotomic.reduce_mod(acc, phi_q))
    return out


# -- tau character and breve blocks -----------------------------------------


def tau_generator_matrix(orn: Ornithorynque, sub: Subspace) -> Mat:
    """Matrix of tau_i -> -tau_{i+(q+1)/2} on the tau subspace."""
    q = orn.q
    space = chain_space(orn.origami)
    shift = (q + 1) // 2
    cols = []
    for b in sub.basis:
        # express b in tau coordinates by linearity of the defining map
        chain = EdgeChain.from_flat(b)
        image = _apply_tau_rule(orn, chain, shift)
        coords = sub.coords_of(space.canonical_vec(image.flat()))
        if coords is None:
            raise NotInCyclicImage("tau rule leaves the subspace")
        cols.append(coords)
    return linalg.transpose(tuple(cols))


def _apply_tau_rule(orn: Ornithorynque, chain: EdgeChain, shift: int) -> EdgeChain:
    # solve chain = sum c_i tau_i, then map to -sum c_i tau_{i+shift}
    q = orn.q
    space = chain_space(orn.origami)
    cols = tuple(space.canonical_vec(orn.tau(i).flat()) for i in range(q))
    target = space.canonical_vec(chain.flat())
    sol = linalg.solve(linalg.transpose(cols), target)
    if sol is None:
        raise NotInCyclicImage("chain is not in the tau subspace")
    out = EdgeChain.zero(orn.origami.n)
    for i, c in enumerate(sol):
        if c:
            out = out + orn.tau((i + shift) % q).scale(-c)
    return out


def tau_character(orn: Ornithorynque, lift_: AffineLift) -> int:
    """The element of Z/2q through which the lift acts on the tau subspace."""
    q = orn.q
    space = chain_space(orn.origami)
    sub = space.subspace_from([orn.tau(i) for i in range(q)])
    m = matrix_on(lift_, sub)
    gen = tau_generator_matrix(orn, sub)
    acc = linalg.identity(sub.dim)
    for k in range(2 * q):
        if acc == m:
            return k
        acc = linalg.mat_mul(gen, acc)
    raise NotInCyclicImage("action is not a power of the cyclic generator")


def breve_blocks(orn: Ornithorynque, lift_: AffineLift) -> Mat:
    """2x2 matrix over Q[x]/(x^q-1) mod Psi_q for the action on H-breve.

    Columns are the images of (sigma_breve(rho), zeta_breve(rho)); entry
    polynomials evaluate at each nontrivial q-th root of unity rho = x.
    """
    q = orn.q
    space = chain_space(orn.origami)
    cols = tuple([space.canonical_vec(orn.sigma_breve(j).flat()) for j in range(q)]
                 + [space.canonical_vec(orn.zeta_breve(j).flat()) for j in range(q)])
    matrix_cols = []
    for seed in (orn.sigma_breve, orn.zeta_breve):
        image = space.canonical_vec(linalg.mat_vec(lift_.matrix, seed(0).flat()))
        sol = linalg.solve(linalg.transpose(cols), image)
        if sol is None:
            raise NotInvariant("lift does not preserve the breve subspace")
        c_poly = cyclotomic.mod_psi(tuple(sol[:q]))
        d_poly = cyclotomic.mod_psi(tuple(sol[q:]))
        matrix_cols.append((c_poly, d_poly))
        # shift-equivariance: the same polynomials must work at every index
        for i in range(q):
            predicted = EdgeChain.zero(orn.origami.n)
            for j in range(q):
                if sol[j]:
                    predicted = predicted + orn.sigma_breve((i + j) % q).scale(sol[j])
                if sol[q + j]:
                    predicted = predicted + orn.zeta_breve((i + j) % q).scale(sol[q + j])
            actual = space.canonical_vec(
                linalg.mat_vec(lift_.matrix, seed(i).flat()))
            if space.canonical_vec(predicted.flat()) != actual:
                raise NotInvariant("action is not shift-equivariant on H-breve")
    (c1, d1), (c2, d2) = matrix_cols
    return ((c1, c2), (d1, d2))


def breve_block_trace(block: Mat) -> cyclotomic.Poly:
    return cyclotomic.mod_psi(cyclotomic.p_add(block[0][0], block[1][1]))


# -- congruence kernels -------------------------------------------------------


@dataclass
class CongruenceReport:
    level: int
    holds: bool
    image_order: int
    expected_order: int
    generator_witnesses: list[tuple[str, int]]
    failed_words: list[str]


def combined_action(lift_: AffineLift, subspaces: Sequence[Subspace]) -> Mat:
    blocks = [matrix_on(lift_, v) for v in subspaces]
    size = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * size for _ in range(size)]
    at = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                out[at + i][at + j] = b[i][j]
        at += len(b)
    return tuple(tuple(row) for row in out)


def kernel_is_congruence(origami: Origami, subspaces: Sequence[Subspace],
                         level: int, sl_lifts: Sequence[AffineLift],
                         aut_lifts: Sequence[AffineLift],
                         cap: int = 2000) -> CongruenceReport:
    """Certify that the kernel of the combined action is Gamma(level).

    (i) every Reidemeister-Schreier generator of Gamma(level) lifts, for some
    composition with an automorphism, into the kernel; (ii) the image order
    equals |SL(2,Z/level)| times the order of the automorphism image.
    """
    gens = [combined_action(lf, subspaces) for lf in
            list(sl_lifts) + list(aut_lifts)]
    closure = finite_closure(gens, cap)
    if isinstance(closure, UnboundedWitness):
        raise ActionNotFinite(f"combined action grows along word {closure.word}")
    aut_part = finite_closure([combined_action(lf, subspaces)
                               for lf in aut_lifts], cap)
    subgroup = CongruenceSubgroup(level)
    expected = subgroup.index * aut_part.order
    identity = linalg.identity(len(gens[0]))
    witnesses = []
    failed = []
    for word in subgroup.generators():
        lifted = lift(origami, word.matrix())
        found = None
        for k, aut in enumerate(aut_lifts):
            action = combined_action(aut.compose(lifted), subspaces)
            if action == identity:
                found = k
                break
        if found is None:
            failed.append(str(word))
        else:
            witnesses.append((str(word), found))
    holds = not failed and closure.order == expected
    return CongruenceReport(level, holds, closure.order, expected,
                            witnesses, failed)


# -- growth probes ------------------------------------------------------------


def _log_abs(x: Fraction) -> float:
    def log_int(n: int) -> float:
        if n == 0:
            return float("-inf")
        n = abs(n)
        if n.bit_length() <= 900:
            return math.log(n)
        shift = n.bit_length() - 60
        return math.log(n >> shift) + shift * math.log(2)

    return log_int(x.numerator) - log_int(x.denominator)


def operator_norm(m: Mat) -> Fraction:
    """Max row sum of absolute values (the L-infinity operator norm)."""
    return max(sum(abs(x) for x in row) for row in m)


@dataclass
class GrowthReport:
    max_log_norm: float
    growth_rate: float
    max_norm_exceeded: bool
    trials: int
    length: int


def cocycle_growth(mats: Sequence[Mat], length: int, trials: int, seed: int,
                   norm_bound: Fraction | None = None) -> GrowthReport:
    """Random products of the given matrices; reports max norm and log slope."""
    rng = random.Random(seed)
    n = len(mats[0])
    max_log = float("-inf")
    exceeded = False
    rates = []
    for _ in range(trials):
        acc = linalg.identity(n)
        half_log = 0.0
        for step in range(length):
            acc = linalg.mat_mul(acc, mats[rng.randrange(len(mats))])
            if norm_bound is not None and operator_norm(acc) > norm_bound:
                exceeded = True
            if step + 1 == length // 2:
                half_log = _log_abs(operator_norm(acc))
        end_log = _log_abs(operator_norm(acc))
        max_log = max(max_log, end_log)
        denom = length - length // 2
        rates.append((end_log - half_log) / denom if denom else 0.0)
    return GrowthReport(max_log, sum(rates) / len(rates), exceeded,
                        trials, length)


def power_growth_rate(m: Mat, length: int) -> float:
    """log-norm slope of m^k between k = length/2 and k = length."""
    acc = linalg.identity(len(m))
    half_log = 0.0
    for step in range(length):
        acc = linalg.mat_mul(acc, m)
        if step + 1 == length // 2:
            half_log = _log_abs(operator_norm(acc))
    end_log = _log_abs(operator_norm(acc))
    return (end_log - half_log) / (length - length // 2)
