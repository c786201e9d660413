import random
from fractions import Fraction

import pytest

from origamis import linalg
from origamis.catalog import QUATERNION_ORDER, quaternion_mul
from origamis.errors import NotAbsolute
from origamis.homology import EdgeChain, chain_space
from origamis.origami import make_origami
from origamis.permutations import Perm, random_transitive_pair

TORUS = make_origami(1, Perm([0]), Perm([0]))


def random_chain(rng, n, integral=True):
    def coeff():
        value = rng.randrange(-4, 5)
        return Fraction(value) if integral else Fraction(value, rng.randrange(1, 4))
    return EdgeChain(tuple(coeff() for _ in range(n)),
                     tuple(coeff() for _ in range(n)))


def test_relation_ranks(ew, orn3):
    assert chain_space(ew.origami).relation_rank() == 7
    assert chain_space(orn3.origami).relation_rank() == 11
    assert chain_space(TORUS).relation_rank() == 0


def test_relations_reduce_to_zero(ew):
    space = chain_space(ew.origami)
    for g in range(8):
        assert all(x == 0 for x in space.canonical_vec(space.relation_rows[g]))


def test_canonical_form_idempotent_linear(ew):
    space = chain_space(ew.origami)
    rng = random.Random(3)
    for _ in range(25):
        a = random_chain(rng, 8)
        b = random_chain(rng, 8)
        ca = space.canonical(a)
        assert space.canonical(ca) == ca
        left = space.canonical(a + b)
        right = space.canonical_vec(linalg.vec_add(ca.flat(),
                                                   space.canonical(b).flat()))
        assert left.flat() == tuple(right)
        # integer chains stay integer
        assert ca.is_integral()


def test_canonical_separates_cosets(orn3):
    space = chain_space(orn3.origami)
    rng = random.Random(4)
    for _ in range(20):
        a = random_chain(rng, 12)
        shift = EdgeChain.zero(12)
        for g in range(12):
            c = rng.randrange(-2, 3)
            if c:
                shift = shift + space.relation_chain(g).scale(c)
        assert space.equivalent(a, a + shift)
        # a single edge is never a relation combination (it has boundary)
        b = a + EdgeChain.unit(12, "s", rng.randrange(12))
        assert not space.equivalent(a, b)


def test_ribbon_sector_walk(ew, orn3):
    """The quarter-sector walk follows the four corner-transition rules and
    closes up along the commutator cycle."""
    for cat in (ew, orn3):
        origami = cat.origami
        space = chain_space(origami)
        r, u = origami.r, origami.u
        ri, ui = r.inverse(), u.inverse()
        comm = origami.commutator()
        for vidx, vclass in enumerate(space.vclasses):
            sectors = space.sectors_at(vidx)
            assert len(sectors) == 4 * vclass.multiplicity
            for t, g in enumerate(vclass.cycle):
                assert sectors[4 * t] == ("LL", g)
                assert sectors[4 * t + 1] == ("LR", ri(g))
                assert sectors[4 * t + 2] == ("UR", ui(ri(g)))
                assert sectors[4 * t + 3] == ("UL", r(ui(ri(g))))
                following = sectors[(4 * t + 4) % len(sectors)]
                assert following == ("LL", comm(g))


def test_edge_chain_json_roundtrip():
    chain = EdgeChain((Fraction(1, 2), Fraction(-3)), (Fraction(0), Fraction(7, 4)))
    data = chain.to_json_dict()
    assert data == {"sigma": ["1/2", "-3"], "zeta": ["0", "7/4"]}
    assert EdgeChain.from_json_dict(data) == chain


def test_relation_lattice_basis(ew):
    from origamis.homology import relation_lattice
    basis = relation_lattice(ew.origami)
    assert len(basis) == 7
    rows = tuple(c.flat() for c in basis)
    assert linalg.rank(rows) == 7


def test_boundary_and_holonomy_vanish_on_relations(ew, orn3):
    for cat in (ew, orn3):
        space = chain_space(cat.origami)
        for g in range(cat.origami.n):
            rel = space.relation_chain(g)
            assert all(x == 0 for x in space.boundary(rel))
            assert rel.holonomy() == (0, 0)


def test_ew_w_class_identities(ew):
    space = chain_space(ew.origami)
    wk_sigma = EdgeChain.zero(8)
    for g, sign in [("1", 1), ("-1", 1), ("k", 1), ("-k", 1),
                    ("i", -1), ("-i", -1), ("j", -1), ("-j", -1)]:
        wk_sigma = wk_sigma + ew.sigma(g, sign)
    assert space.equivalent(ew.w("k"), wk_sigma)
    zero_identity = EdgeChain.zero(8)
    for g, sign in [("1", 1), ("-1", 1), ("j", 1), ("-j", 1),
                    ("i", -1), ("-i", -1), ("k", -1), ("-k", -1)]:
        zero_identity = zero_identity + ew.zeta(g, sign)
    assert space.equivalent(zero_identity, EdgeChain.zero(8))


def test_ew_alternative_expressions_differ_by_relation(ew):
    space = chain_space(ew.origami)
    # zeta_1 + sigma_j and sigma_1 + zeta_i differ by the square relation at 1
    assert space.equivalent(ew.zeta("1") + ew.sigma("j"),
                            ew.sigma("1") + ew.zeta("i"))


def test_ew_boundary_w_i(ew):
    space = chain_space(ew.origami)
    # vertex classes in square order: {1,-1}, {i,-i}, {j,-j}, {k,-k}
    assert space.boundary(ew.w("i")) == (-4, -4, 4, 4)


def test_full_sums_are_absolute(ew):
    space = chain_space(ew.origami)
    split = space.standard_splitting()
    assert all(x == 0 for x in space.boundary(split.sigma))
    assert all(x == 0 for x in space.boundary(split.zeta))
    assert split.sigma.holonomy() == (8, 0) and split.zeta.holonomy() == (0, 8)


def test_epsilon_half_identities(ew):
    space = chain_space(ew.origami)
    for g in QUATERNION_ORDER:
        half = Fraction(1, 2)
        lhs = ew.sigma_hat(g)
        rhs = (ew.epsilon(g) + ew.epsilon(quaternion_mul(g, "j"))).scale(half)
        assert space.equivalent(lhs, rhs)
        lhs = ew.zeta_hat(g)
        rhs = (ew.epsilon(g) + ew.epsilon(quaternion_mul(g, "i"))).scale(half)
        assert space.equivalent(lhs, rhs)
        assert space.equivalent(ew.epsilon(g),
                                ew.zeta_hat(g) - ew.zeta_hat(quaternion_mul(g, "i")))


def test_marked_subspace_dimensions(ew, orn3):
    space3 = chain_space(orn3.origami)
    marked = space3.marked_subspace(space3.singular_vertices())
    assert marked.dim == 10  # 2g + |Sigma| - 1 = 8 + 3 - 1
    space_ew = chain_space(ew.origami)
    assert space_ew.marked_subspace(space_ew.singular_vertices()).dim == 9
    assert space_ew.absolute_subspace().dim == 6


def test_standard_splitting_dims(ew, orn3):
    assert chain_space(ew.origami).standard_splitting().h1_0_abs.dim == 4
    assert chain_space(orn3.origami).standard_splitting().h1_0_abs.dim == 6
    assert chain_space(TORUS).standard_splitting().h1_0_abs.dim == 0


def test_orn_boundary_sigma_flat(orn3):
    space = chain_space(orn3.origami)
    boundary = space.boundary(orn3.sigma_flat())
    a01 = orn3.vertex_index_of(0, 0, 1)
    a11 = orn3.vertex_index_of(0, 1, 1)
    assert boundary[a01] == 6 and boundary[a11] == -6
    assert sum(boundary) == 0


def test_intersection_tables_ew(ew):
    space = chain_space(ew.origami)
    sh = ew.sigma_hat
    table = {("1", "i"): 2, ("i", "1"): -2, ("j", "k"): -2, ("k", "j"): 2,
             ("1", "j"): 0, ("1", "k"): 0, ("i", "j"): 0, ("i", "k"): 0}
    for (a, b), value in table.items():
        assert space.intersection(sh(a), sh(b)) == value
    eps = ew.epsilon
    eps_table = {("1", "k"): 4, ("i", "j"): -4, ("j", "i"): 4, ("k", "1"): -4,
                 ("1", "i"): 0, ("1", "j"): 0, ("i", "k"): 0, ("j", "k"): 0}
    for (a, b), value in eps_table.items():
        assert space.intersection(eps(a), eps(b)) == value


def test_intersection_tables_orn(orn3):
    space = chain_space(orn3.origami)
    for i in range(3):
        assert space.intersection(orn3.gamma(i), orn3.gamma(i + 1)) == 2
        assert space.intersection(orn3.delta(i), orn3.delta(i + 1)) == 2
        assert space.intersection(orn3.gamma(i), orn3.delta(i)) == 1
        assert space.intersection(orn3.gamma(i), orn3.delta(i + 1)) == 1
        assert space.intersection(orn3.gamma(i), orn3.delta(i - 1)) == -1
        assert space.intersection(orn3.sigma_breve(i), orn3.sigma_breve(i + 1)) == 6
        assert space.intersection(orn3.zeta_breve(i), orn3.zeta_breve(i + 1)) == 6
        assert space.intersection(orn3.sigma_breve(i), orn3.zeta_breve(i)) == -4
        assert space.intersection(orn3.sigma_breve(i), orn3.zeta_breve(i + 1)) == 2
        assert space.intersection(orn3.sigma_breve(i), orn3.zeta_breve(i - 1)) == 2


def test_intersection_antisymmetric_and_relation_invariant(ew):
    space = chain_space(ew.origami)
    rng = random.Random(11)
    basis = space.integral_absolute_basis()

    def random_absolute():
        v = [Fraction(0)] * 16
        for b in basis:
            c = rng.randrange(-3, 4)
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        return EdgeChain.from_flat(v)

    for _ in range(40):
        a, b = random_absolute(), random_absolute()
        ab = space.intersection(a, b)
        assert ab == -space.intersection(b, a)
        shifted = b + space.relation_chain(rng.randrange(8)).scale(rng.randrange(1, 3))
        assert space.intersection(a, shifted) == ab
        shifted_a = a + space.relation_chain(rng.randrange(8))
        assert space.intersection(shifted_a, b) == ab


def test_intersection_rejects_relative(ew):
    space = chain_space(ew.origami)
    with pytest.raises(NotAbsolute):
        space.intersection(ew.sigma("1"), ew.sigma("i"))


def test_unimodular_on_catalog(ew, orn3, appendix_b):
    for cat in (ew, orn3, appendix_b):
        space = chain_space(cat.origami)
        basis = space.integral_absolute_basis()
        gram = space.gram(basis)
        assert abs(linalg.det(gram)) == 1


def test_transversal_pairing_rows(ew):
    space = chain_space(ew.origami)
    rng = random.Random(2)
    rows = ew.origami.r.cycles()
    columns = ew.origami.u.cycles()
    for _ in range(10):
        chain = random_chain(rng, 8)
        total_zeta = sum((space.horizontal_core_pairing(row, chain)
                          for row in rows), Fraction(0))
        assert total_zeta == chain.holonomy()[1]
        total_sigma = sum((space.vertical_core_pairing(col, chain)
                           for col in columns), Fraction(0))
        assert total_sigma == -chain.holonomy()[0]


def test_transversal_pairing_torus():
    space = chain_space(TORUS)
    zeta = EdgeChain.unit(1, "z", 0)
    assert space.horizontal_core_pairing([0], zeta) == 1


def test_random_origamis_unimodular_antisymmetric():
    rng = random.Random(77)
    for _ in range(15):
        n = rng.randrange(2, 13)
        r, u = random_transitive_pair(n, rng)
        origami = make_origami(n, r, u)
        space = chain_space(origami)
        basis = space.integral_absolute_basis()
        gram = space.gram(basis)
        assert abs(linalg.det(gram)) == 1
        for i in range(len(basis)):
            for j in range(len(basis)):
                assert gram[i][j] == -gram[j][i]
