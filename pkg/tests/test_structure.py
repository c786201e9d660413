import math
import random
from fractions import Fraction

import pytest

from origamis import cyclotomic, linalg
from origamis.affine import matrix_on
from origamis.catalog import QUATERNION_ORDER, catalog
from origamis.errors import NotD4, NotInCyclicImage
from origamis.homology import chain_space
from origamis.rootsys import (FiniteMatrixGroup, UnboundedWitness, detect_d4,
                              finite_closure, symplectic_subgroup)

from origamis.structure import (QUATERNION_CHARACTERS, breve_block_trace,
                                breve_blocks, cocycle_growth,
                                isotypic_multiplicities_quaternion,
                                kernel_is_congruence, operator_norm,
                                power_growth_rate, tau_character)
from origamis.verification import _ew_root_system


def test_quaternion_character_orthogonality():
    class_sizes = {"1": 1, "-1": 1, "i": 2, "j": 2, "k": 2}
    names = list(QUATERNION_CHARACTERS)
    for a in names:
        for b in names:
            total = sum(class_sizes[g] * QUATERNION_CHARACTERS[a][g]
                        * QUATERNION_CHARACTERS[b][g] for g in class_sizes)
            assert total == (8 if a == b else 0)


@pytest.mark.parametrize("q", [3, 5, 9])
def test_cyclic_character_orthogonality(q):
    phi_q = cyclotomic.cyclotomic_polynomial(q)
    for a in range(q):
        for b in range(q):
            acc = [Fraction(0)] * q
            for g in range(q):
                acc[((a - b) * g) % q] += 1
            reduced = cyclotomic.reduce_mod(acc, phi_q)
            if a == b:
                assert reduced[0] == q and all(x == 0 for x in reduced[1:])
            else:
                assert all(x == 0 for x in reduced)


def test_isotypic_multiplicities_cyclic(orn3, orn3_report):
    from origamis.structure import isotypic_multiplicities_cyclic
    auts = [orn3_report.lifts[f"aut_{g}"] for g in range(3)]
    mult = isotypic_multiplicities_cyclic(auts, orn3_report.subspaces["H_breve"], 3)
    # constants mod Phi_3: trivial character multiplicity 0, nontrivial ones 2
    assert mult[0] == (0, 0) and mult[1] == (2, 0) and mult[2] == (2, 0)
    mult = isotypic_multiplicities_cyclic(auts, orn3_report.subspaces["H_tau"], 3)
    assert mult[0] == (0, 0) and mult[1] == (1, 0) and mult[2] == (1, 0)


def test_isotypic_multiplicities(ew, ew_report):
    space = chain_space(ew.origami)
    mult = isotypic_multiplicities_quaternion(
        ew_report.lifts, ew_report.subspaces["H1_0"], space)
    assert mult == {"chi_1": 0, "chi_i": 0, "chi_j": 0, "chi_k": 0, "chi_2": 2}
    mult = isotypic_multiplicities_quaternion(
        ew_report.lifts, ew_report.subspaces["H_rel"], space)
    assert mult == {"chi_1": 0, "chi_i": 1, "chi_j": 1, "chi_k": 1, "chi_2": 0}
    mult = isotypic_multiplicities_quaternion(
        ew_report.lifts, ew_report.subspaces["H1_st"], space)
    assert mult == {"chi_1": 2, "chi_i": 0, "chi_j": 0, "chi_k": 0, "chi_2": 0}


def test_decompositions_pass(ew_report, orn3_report, orn5_report):
    assert ew_report.all_ok
    assert orn3_report.all_ok
    assert orn5_report.all_ok


def test_tau_characters_q3(orn3, orn3_report):
    assert tau_character(orn3, orn3_report.lifts["T"]) == 1
    assert tau_character(orn3, orn3_report.lifts["S"]) == 5
    assert tau_character(orn3, orn3_report.lifts["aut_1"]) == 2
    assert tau_character(orn3, orn3_report.lifts["aut_0"]) == 0


def test_tau_characters_q5(orn5, orn5_report):
    assert tau_character(orn5, orn5_report.lifts["T2"]) == 2
    assert tau_character(orn5, orn5_report.lifts["S2"]) == 8  # -2 mod 10
    assert tau_character(orn5, orn5_report.lifts["J"]) == 5
    assert tau_character(orn5, orn5_report.lifts["aut_1"]) == 2


def test_tau_rejects_foreign_lift(orn3, ew_report):
    from origamis.errors import NotInvariant
    with pytest.raises((NotInCyclicImage, NotInvariant)):
        tau_character(orn3, ew_report.lifts["S"])


def test_breve_blocks_q3(orn3, orn3_report):
    q = 3
    one = cyclotomic.p_one(q)
    x = cyclotomic.x_power(1, q)
    x_inv = cyclotomic.x_power(q - 1, q)
    zero = cyclotomic.p_zero(q)
    block = breve_blocks(orn3, orn3_report.lifts["S"])
    assert cyclotomic.psi_equal(block[0][0], one)
    assert cyclotomic.psi_equal(block[1][0], x_inv)
    assert cyclotomic.psi_equal(block[0][1], zero)
    assert cyclotomic.psi_equal(block[1][1], x)
    block = breve_blocks(orn3, orn3_report.lifts["T"])
    assert cyclotomic.psi_equal(block[0][0], x_inv)
    assert cyclotomic.psi_equal(block[1][0], zero)
    assert cyclotomic.psi_equal(block[0][1], x)
    assert cyclotomic.psi_equal(block[1][1], one)


def test_breve_blocks_q5_j(orn5, orn5_report):
    q = 5
    block = breve_blocks(orn5, orn5_report.lifts["J"])
    assert cyclotomic.psi_equal(block[0][0], cyclotomic.p_zero(q))
    assert cyclotomic.psi_equal(block[0][1],
                                cyclotomic.p_scale(-1, cyclotomic.p_one(q)))
    assert cyclotomic.psi_equal(block[1][0], cyclotomic.p_one(q))
    assert cyclotomic.psi_equal(block[1][1], cyclotomic.p_zero(q))


@pytest.mark.parametrize("q", [3, 5])
def test_breve_trace_identity(q):
    orn = catalog("ornithorynque", q=q)
    from origamis.structure import decompose_orn
    rep = decompose_orn(orn)
    if q == 3:
        s2 = rep.lifts["S"].compose(rep.lifts["S"])
        t2 = rep.lifts["T"].compose(rep.lifts["T"])
    else:
        s2, t2 = rep.lifts["S2"], rep.lifts["T2"]
    block = breve_blocks(orn, s2.compose(t2))
    trace = breve_block_trace(block)
    one = cyclotomic.p_one(q)
    x = cyclotomic.x_power(1, q)
    x_inv = cyclotomic.x_power(q - 1, q)
    expected = cyclotomic.p_scale(
        2, cyclotomic.p_add(cyclotomic.p_add(one, x), x_inv))
    assert cyclotomic.psi_equal(trace, expected)
    # trace on all of H_breve is 2(q-3)
    sub = rep.subspaces["H_breve"]
    m = matrix_on(s2.compose(t2), sub)
    assert sum(m[i][i] for i in range(len(m))) == 2 * (q - 3)


def test_detect_d4_properties(ew):
    _, _, space, system = _ew_root_system()
    roots = system.roots_frame_coords()
    assert len(roots) == 24
    root_set = set(roots)
    for r in roots:
        assert tuple(-x for x in r) in root_set
        assert sum(x * x for x in r) == 2
        # reflection closure
        for r2 in roots:
            dot = sum(a * b for a, b in zip(r, r2))
            image = tuple(b - dot * a for a, b in zip(r, r2))
            assert image in root_set
    weyl = system.weyl_group()
    aut = system.automorphism_group()
    assert weyl.order == 192
    assert aut.order == 1152
    assert aut.order // weyl.order == 6
    for w in weyl.elements:
        assert system.preserves_roots(w)


def test_triality_is_weyl_coset_map(ew):
    _, _, _, system = _ew_root_system()
    weyl = system.weyl_group()
    rng = random.Random(6)
    sample = rng.sample(list(weyl.elements), 6)
    identity_img = {1: 1, 3: 3, 4: 4}
    for w in sample:
        assert system.triality_image(w, weyl) == identity_img


def test_detect_d4_rejects_garbage():
    with pytest.raises(NotD4):
        detect_d4([tuple(Fraction(x) for x in v)
                   for v in ((1, 0, 0, 0), (-1, 0, 0, 0))])


def test_finite_closure_unbounded_witness():
    shear = linalg.mat([[1, 1], [0, 1]])
    result = finite_closure([shear], 10)
    assert isinstance(result, UnboundedWitness)


def test_symplectic_subgroup_identity_only():
    gram = linalg.mat([[0, 1], [-1, 0]])
    group = FiniteMatrixGroup((), (linalg.identity(2),))
    assert symplectic_subgroup(group, gram).order == 1


def test_congruence_accounting_gamma2(ew, ew_report):
    space = chain_space(ew.origami)
    auts = [ew_report.lifts[f"aut_{g}"] for g in QUATERNION_ORDER]
    report = kernel_is_congruence(
        ew.origami, [ew_report.subspaces["H_rel"]], 2,
        [ew_report.lifts["S"], ew_report.lifts["T"]], auts, cap=100)
    assert report.holds and report.image_order == 24


def test_composite_odd_q_family():
    from origamis.affine import lift
    from origamis.origami import stratum_and_genus
    from origamis.sl2z import J_MAT, T_MAT, mat_pow
    orn9 = catalog("ornithorynque", q=9)
    stratum = stratum_and_genus(orn9.origami)
    assert stratum.genus == 13 and stratum.zero_orders == (8, 8, 8)
    t2 = lift(orn9.origami, mat_pow(T_MAT, 2))
    j = lift(orn9.origami, J_MAT)
    assert tau_character(orn9, t2) == 2
    assert tau_character(orn9, j) == 9
    block = breve_blocks(orn9, j)
    assert cyclotomic.psi_equal(block[0][1],
                                cyclotomic.p_scale(-1, cyclotomic.p_one(9)))
    assert cyclotomic.psi_equal(block[1][0], cyclotomic.p_one(9))


def test_growth_bounded_for_ew(ew_report):
    sub = ew_report.subspaces["H1_0"]
    gens = [matrix_on(ew_report.lifts[k], sub) for k in ("S", "T")]
    closure = finite_closure(gens, 200)
    bound = max(operator_norm(m) for m in closure.elements)
    report = cocycle_growth(gens, length=400, trials=2, seed=3,
                            norm_bound=bound)
    assert not report.max_norm_exceeded
    assert report.max_log_norm <= math.log(float(bound)) + 1e-9


def test_growth_rate_q5(orn5, orn5_report):
    sub = orn5_report.subspaces["H_breve"]
    w = linalg.mat_mul(matrix_on(orn5_report.lifts["S2"], sub),
                       matrix_on(orn5_report.lifts["T2"], sub))
    rate = power_growth_rate(w, 400)
    t = 2 * (1 + 2 * math.cos(2 * math.pi / 5))
    expected = math.log((t + math.sqrt(t * t - 4)) / 2)
    assert abs(rate - expected) / expected < 1e-3
