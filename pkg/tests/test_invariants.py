import random
from fractions import Fraction
from math import gcd

import pytest

from origamis import linalg
from origamis.affine import automorphism_lift, lift_all
from origamis.errors import (EvenConeMultiplicity, NotUnimodular,
                             OddOrderZeros, ProbeMovesMarks)
from origamis.homology import EdgeChain, chain_space
from origamis.invariants import (cylinders, index_parity,
                                 index_parity_clockwise, invariant_supplement,
                                 multitwist, quadratic_form_value, spin_parity,
                                 symplectic_basis, transversal_pairing)
from origamis.origami import make_origami
from origamis.permutations import Perm, random_transitive_pair

TORUS = make_origami(1, Perm([0]), Perm([0]))


def test_ew_horizontal_cylinders(ew):
    decomp = cylinders(ew.origami, (1, 0))
    assert sorted((c.width, c.height) for c in decomp.cylinders) == \
        [(4, 1), (4, 1)]


def test_appendix_b_cylinders(appendix_b):
    origami = appendix_b.origami
    assert sorted((c.width, c.height)
                  for c in cylinders(origami, (0, 1)).cylinders) == \
        [(3, 1), (5, 1), (8, 1)]
    assert sorted((c.width, c.height)
                  for c in cylinders(origami, (1, 0)).cylinders) == \
        [(4, 1), (12, 1)]
    assert sorted((c.width, c.height)
                  for c in cylinders(origami, (1, 1)).cylinders) == \
        [(4, 1), (6, 2)]


def test_area_conservation_random_directions(ew, orn3):
    rng = random.Random(12)
    surfaces = [ew.origami, orn3.origami]
    for _ in range(3):
        n = rng.randrange(2, 8)
        r, u = random_transitive_pair(n, rng)
        surfaces.append(make_origami(n, r, u))
    directions = set()
    while len(directions) < 20:
        p, q = rng.randrange(-5, 6), rng.randrange(-5, 6)
        if (p, q) != (0, 0) and gcd(abs(p), abs(q)) == 1:
            directions.add((p, q))
    for origami in surfaces:
        for direction in directions:
            decomp = cylinders(origami, direction)
            assert sum(c.width * c.height for c in decomp.cylinders) == origami.n


def test_cylinder_cores_are_absolute(appendix_b):
    origami = appendix_b.origami
    space = chain_space(origami)
    for direction in ((0, 1), (1, 0), (1, 1)):
        for cyl in cylinders(origami, direction).cylinders:
            assert all(x == 0 for x in space.boundary(cyl.core))


def test_appendix_b_twists(appendix_b):
    origami = appendix_b.origami
    assert multitwist(origami, (0, 1)).linear == ((1, 0), (120, 1))
    assert multitwist(origami, (1, 0)).linear == ((1, 12), (0, 1))
    assert multitwist(origami, (1, 1)).linear == ((-11, 12), (-12, 13))
    assert multitwist(origami, (0, 1)).k == 120
    counts = sorted(multitwist(origami, (0, 1)).twist_counts)
    assert counts == [15, 24, 40]


def test_twist_formula_matches_lift_up_to_automorphism(ew, orn3):
    for cat in (ew, orn3):
        origami = cat.origami
        space = chain_space(origami)
        marked = space.marked_subspace(space.singular_vertices())
        if cat is ew:
            auts = [automorphism_lift(origami, p)
                    for p in [cat.left_mult(g) for g in
                              ("1", "-1", "i", "-i", "j", "-j", "k", "-k")]]
        else:
            auts = [automorphism_lift(origami, cat.shift(g)) for g in range(3)]
        for direction in ((1, 0), (0, 1)):
            tw = multitwist(origami, direction)
            matches = [
                lf for lf in lift_all(origami, tw.linear)
                if any(
                    all(space.canonical_vec(
                        linalg.mat_vec(aut.compose(lf).matrix, b))
                        == space.canonical_vec(
                            linalg.mat_vec(tw.formula_matrix, b))
                        for b in marked.basis)
                    for aut in auts)]
            assert tw.lift.relabeling in [m.relabeling for m in matches]


def test_transversal_pairing_row_sums(ew):
    space = chain_space(ew.origami)
    rng = random.Random(8)
    rows = ew.origami.r.cycles()
    chain = EdgeChain(tuple(Fraction(rng.randrange(-3, 4)) for _ in range(8)),
                      tuple(Fraction(rng.randrange(-3, 4)) for _ in range(8)))
    for row in rows:
        expected = sum((chain.zeta[j] for j in row), Fraction(0))
        assert transversal_pairing(ew.origami, (1, 0), row, chain) == expected
    for col in ew.origami.u.cycles():
        expected = -sum((chain.sigma[j] for j in col), Fraction(0))
        assert transversal_pairing(ew.origami, (0, 1), col, chain) == expected


def test_index_parity_torus():
    assert index_parity(TORUS, [("s", 0, 1)]) == 0
    square = [("s", 0, 1), ("z", 0, 1), ("s", 0, -1), ("z", 0, -1)]
    assert index_parity(TORUS, square) == 1
    assert index_parity_clockwise(TORUS, square) == 1


def test_index_parity_rejects_even_multiplicity(ew):
    with pytest.raises(EvenConeMultiplicity):
        index_parity(ew.origami, [("s", 0, 1)])


def test_appendix_a_loop_indices(orn3):
    origami = orn3.origami
    alpha1 = orn3.sigma(1) + orn3.sigma_p(1)
    beta1 = orn3.zeta(0) + orn3.zeta_p(0)
    assert quadratic_form_value(origami, alpha1) == 1  # ind 0
    assert quadratic_form_value(origami, beta1) == 1


def test_quadratic_refinement_random(orn3, orn5):
    for cat, count in ((orn3, 60), (orn5, 40)):
        origami = cat.origami
        space = chain_space(origami)
        basis = space.integral_absolute_basis()
        rng = random.Random(21)
        for _ in range(count):
            coeffs_a = [rng.randrange(-2, 3) for _ in basis]
            coeffs_b = [rng.randrange(-2, 3) for _ in basis]

            def build(coeffs):
                v = [Fraction(0)] * (2 * origami.n)
                for c, b in zip(coeffs, basis):
                    if c:
                        v = [x + c * y for x, y in zip(v, b)]
                return EdgeChain.from_flat(v)

            a, b = build(coeffs_a), build(coeffs_b)
            lhs = quadratic_form_value(origami, a + b)
            rhs = (quadratic_form_value(origami, a)
                   + quadratic_form_value(origami, b)
                   + int(space.intersection(a, b))) % 2
            assert lhs == rhs


def test_symplectic_basis_standard_j():
    j2 = linalg.mat([[0, 1], [-1, 0]])
    assert symplectic_basis(j2) == linalg.identity(2)
    j4 = linalg.mat([[0, 1, 0, 0], [-1, 0, 0, 0],
                     [0, 0, 0, 1], [0, 0, -1, 0]])
    assert symplectic_basis(j4) == linalg.identity(4)


def test_symplectic_basis_rejects_non_unimodular():
    with pytest.raises(NotUnimodular):
        symplectic_basis(linalg.mat([[0, 2], [-2, 0]]))


def test_symplectic_basis_on_random_origamis():
    rng = random.Random(31)
    for _ in range(8):
        n = rng.randrange(2, 10)
        r, u = random_transitive_pair(n, rng)
        origami = make_origami(n, r, u)
        space = chain_space(origami)
        basis = space.integral_absolute_basis()
        gram = space.gram(basis)
        change = symplectic_basis(gram)
        product = linalg.mat_mul(linalg.mat_mul(change, gram),
                                 linalg.transpose(change))
        g = len(basis) // 2
        for i in range(2 * g):
            for j in range(2 * g):
                expected = (1 if (i % 2 == 0 and j == i + 1) else
                            -1 if (i % 2 == 1 and j == i - 1) else 0)
                assert product[i][j] == expected


def test_spin_parities(orn3, orn5, ew):
    assert spin_parity(TORUS).parity == "odd"
    assert spin_parity(orn3.origami).parity == "even"
    assert spin_parity(orn5.origami).parity == "even"
    with pytest.raises(OddOrderZeros):
        spin_parity(ew.origami)


def test_spin_parity_clockwise_and_random_bases(orn3):
    origami = orn3.origami
    base = spin_parity(origami).parity
    assert spin_parity(origami, clockwise=True).parity == base
    space = chain_space(origami)
    gram = space.gram(space.integral_absolute_basis())
    change = symplectic_basis(gram)
    rng = random.Random(17)
    g = len(change) // 2
    for _ in range(5):
        rows = [list(row) for row in change]
        # random symplectic moves: a_i += c b_i keeps the form standard
        for _ in range(6):
            i = rng.randrange(g)
            c = rng.randrange(-2, 3)
            which = rng.randrange(2)
            if which == 0:
                rows[2 * i] = [x + c * y for x, y in
                               zip(rows[2 * i], rows[2 * i + 1])]
            else:
                rows[2 * i + 1] = [x + c * y for x, y in
                                   zip(rows[2 * i + 1], rows[2 * i])]
        randomized = tuple(tuple(x) for x in rows)
        product = linalg.mat_mul(linalg.mat_mul(randomized, gram),
                                 linalg.transpose(randomized))
        for i in range(2 * g):
            for j in range(2 * g):
                expected = (1 if (i % 2 == 0 and j == i + 1) else
                            -1 if (i % 2 == 1 and j == i - 1) else 0)
                assert product[i][j] == expected
        assert spin_parity(origami, basis_rows=randomized).parity == base


def test_supplement_appendix_b(appendix_b):
    origami = appendix_b.origami
    space = chain_space(origami)
    probes = [multitwist(origami, d).lift for d in ((0, 1), (1, 0), (1, 1))]
    cert = invariant_supplement(origami, space.singular_vertices(), probes,
                                reps=[appendix_b.zeta_star()],
                                correction_basis=[appendix_b.zeta0(),
                                                  appendix_b.zeta1()])
    assert not cert.feasible
    assert cert.forced == {"s_0": Fraction(1, 6), "s_1": Fraction(-5, 24)}
    assert cert.violated_probe == 2
    assert any(x != 0 for x in cert.residual.flat())
    # monotone: the first two probes alone are feasible
    partial = invariant_supplement(origami, space.singular_vertices(),
                                   probes[:2], reps=[appendix_b.zeta_star()],
                                   correction_basis=[appendix_b.zeta0(),
                                                     appendix_b.zeta1()])
    assert partial.feasible


def test_supplement_feasible_ew(ew, ew_report):
    origami = ew.origami
    space = chain_space(origami)
    s2 = ew_report.lifts["S"] ** 2
    t2 = ew_report.lifts["T"] ** 2
    auts = [ew_report.lifts[f"aut_{g}"] for g in ("i", "j")]
    cert = invariant_supplement(origami, list(range(len(space.vclasses))),
                                [s2, t2] + auts)
    assert cert.feasible
    hrel = ew_report.subspaces["H_rel"]
    section_span = space.subspace_from(cert.section)
    assert section_span.dim == 3
    assert all(hrel.contains_vec(space.canonical_vec(c.flat()))
               for c in cert.section)


def test_supplement_feasible_orn3(orn3, orn3_report):
    origami = orn3.origami
    space = chain_space(origami)
    probes = [orn3_report.lifts["S"], orn3_report.lifts["T"],
              orn3_report.lifts["aut_1"]]
    cert = invariant_supplement(origami, space.singular_vertices(), probes)
    assert cert.feasible
    hrel = orn3_report.subspaces["H_rel"]
    assert all(hrel.contains_vec(space.canonical_vec(c.flat()))
               for c in cert.section)


def test_supplement_rejects_probes_leaving_marks(orn3, orn3_report):
    origami = orn3.origami
    vmap = orn3.vertex_index_of
    # mark one regular point; the shift automorphism moves it off the marks
    marks = [vmap(0, 0, 0), vmap(0, 1, 1)]
    with pytest.raises(ProbeMovesMarks):
        invariant_supplement(origami, marks, [orn3_report.lifts["aut_1"]])
