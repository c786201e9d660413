"""Cylinder decompositions, parabolic multitwists, turning numbers, spin
parity, and the invariant-supplement feasibility test.

Directions are primitive integer vectors; a direction is normalized to
horizontal by an SL(2,Z) word, cylinders are read off as merged r-cycle rows,
and everything is transported back through the exact edge substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linalg
from .affine import AffineLift, elementary_substitution, lift_all
from .errors import (EvenConeMultiplicity, NotClosed, NotUnimodular,
                     OddOrderZeros, ProbeMovesMarks)
from .homology import EdgeChain, chain_space
from .linalg import Mat, Vec
from .origami import Origami
from .sl2z import Mat2, Sl2zWord, sl2z_word


def normalize_direction(p: int, q: int) -> tuple[tuple[int, int], Mat2]:
    """Primitive direction and a matrix A in SL(2,Z) with A (p,q)^T = (1,0)^T."""
    if p == 0 and q == 0:
        raise ValueError("zero direction")
    d = gcd(abs(p), abs(q))
    p, q = p // d, q // d
    # extended euclid: x p + y q = 1
    old_r, r = p, q
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_x, x = x, old_x - quo * x
        old_y, y = y, old_y - quo * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return (p, q), ((old_x, old_y), (-q, p))


@dataclass(frozen=True)
class Cylinder:
    rows: tuple[tuple[int, ...], ...]  # squares per row, in normalized labels
    width: int
    height: int
    core: EdgeChain                    # in the original origami's coordinates

    @property
    def modulus(self) -> Fraction:
        return Fraction(self.width, self.height)


@dataclass
class CylinderDecomposition:
    origami: Origami
    direction: tuple[int, int]
    normalizer: Mat2
    normalized: Origami
    cylinders: list[Cylinder]
    to_normalized: Mat                 # chain map original -> normalized
    from_normalized: Mat

    def core_pairing(self, cyl: Cylinder, chain: EdgeChain) -> Fraction:
        """Signed crossings of the cylinder core with a chain (left push-off)."""
        moved = linalg.mat_vec(self.to_normalized, chain.flat())
        n = self.normalized.n
        return sum((moved[n + j] for j in cyl.rows[0]), Fraction(0))


def _word_substitution(origami: Origami, word: Sl2zWord) -> tuple[Origami, Mat]:
    current = origami
    total = linalg.identity(2 * origami.n)
    for letter in reversed(word.exact_letters()):
        sub = elementary_substitution(letter, current)
        total = sub.apply_rows(total)
        current = sub.target
    return current, total


def cylinders(origami: Origami, direction: tuple[int, int]) -> CylinderDecomposition:
    (p, q), normalizer = normalize_direction(*direction)
    word = sl2z_word(normalizer)
    normalized, to_norm = _word_substitution(origami, word)
    from_norm = linalg.mat_inv(to_norm)
    space = chain_space(normalized)
    rows = normalized.r.cycles()
    row_of = {}
    for k, row in enumerate(rows):
        for g in row:
            row_of[g] = k
    # rows merge across a circle carrying only regular vertices
    parent = list(range(len(rows)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, row in enumerate(rows):
        up = row_of[normalized.u(row[0])]
        circle_regular = all(
            space.vclasses[space.vowner[normalized.u(g)]].multiplicity == 1
            for g in row)
        if circle_regular:
            ra, rb = find(k), find(up)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for k in range(len(rows)):
        groups.setdefault(find(k), []).append(k)
    cyls = []
    for members in groups.values():
        # the bottom row has a non-regular circle below it, if any exists
        def circle_below_regular(k: int) -> bool:
            return all(space.vclasses[space.vowner[g]].multiplicity == 1
                       for g in rows[k])

        bottoms = [k for k in members if not circle_below_regular(k)]
        bottom = min(bottoms) if bottoms else min(members)
        ordered = [bottom]
        while len(ordered) < len(members):
            nxt = row_of[normalized.u(rows[ordered[-1]][0])]
            if nxt == bottom:
                break
            ordered.append(nxt)
        width = len(rows[bottom])
        if sorted(ordered) != sorted(members) or \
                any(len(rows[k]) != width for k in members):
            raise AssertionError("inconsistent cylinder rows")
        core_norm = EdgeChain.zero(normalized.n)
        for g in rows[bottom]:
            core_norm = core_norm + EdgeChain.unit(normalized.n, "s", g)
        core = EdgeChain.from_flat(linalg.mat_vec(from_norm, core_norm.flat()))
        cyls.append(Cylinder(tuple(tuple(rows[k]) for k in ordered),
                             width, len(members), core))
    cyls.sort(key=lambda c: c.rows[0][0])
    total_area = sum(c.width * c.height for c in cyls)
    assert total_area == origami.n, "cylinder areas must tile the surface"
    return CylinderDecomposition(origami, (p, q), normalizer, normalized,
                                 cyls, to_norm, from_norm)


def transversal_pairing(origami: Origami, direction: tuple[int, int],
                        row_squares: Sequence[int], chain: EdgeChain) -> Fraction:
    """Crossing count of a cylinder core push-off with a relative chain.

    Horizontal cores sum the zeta coefficients over the row; vertical cores
    sum -sigma over the column; other directions go through normalization.
    """
    if tuple(direction) == (1, 0):
        return chain_space(origami).horizontal_core_pairing(row_squares, chain)
    if tuple(direction) == (0, 1):
        return chain_space(origami).vertical_core_pairing(row_squares, chain)
    decomp = cylinders(origami, tuple(direction))
    moved = linalg.mat_vec(decomp.to_normalized, chain.flat())
    n = decomp.normalized.n
    return sum((moved[n + j] for j in row_squares), Fraction(0))


def _rational_lcm(values: Sequence[Fraction]) -> Fraction:
    num = 1
    den = 0
    for v in values:
        num = num * v.numerator // gcd(num, v.numerator)
        den = gcd(den, v.denominator)
    return Fraction(num, den)


@dataclass
class MultiTwist:
    direction: tuple[int, int]
    k: Fraction
    linear: Mat2
    twist_counts: list[Fraction]
    decomposition: CylinderDecomposition
    lift: AffineLift
    formula_matrix: Mat


def multitwist(origami: Origami, direction: tuple[int, int]) -> MultiTwist:
    """The parabolic multitwist in a rational direction.

    The linear part is Id + k v (Rv)^T with R a quarter turn, the sign pinned
    so that the first nonzero of (upper-right, lower-left) is positive. The
    homology matrix is the exact affine lift whose action on the marked
    subspace matches the Dehn twist formula
        c -> c + sum_cyl n_cyl <core~, c> core.
    """
    decomp = cylinders(origami, direction)
    v = decomp.direction
    k = _rational_lcm([c.modulus for c in decomp.cylinders])
    if k.denominator != 1:
        k = Fraction(k.numerator * k.denominator)
    counts = [k / c.modulus for c in decomp.cylinders]
    candidates = []
    for sign in (1, -1):
        shear = (
            (1 + sign * k * v[0] * (-v[1]), sign * k * v[0] * v[0]),
            (-sign * k * v[1] * v[1], 1 + sign * k * v[1] * v[0]),
        )
        mat2 = tuple(tuple(int(x) for x in row) for row in shear)
        candidates.append((sign, mat2))
    chosen = None
    for sign, mat2 in candidates:
        b, c = mat2[0][1], mat2[1][0]
        first = b if b != 0 else c
        if first > 0:
            chosen = (sign, mat2)
    assert chosen is not None
    sign, linear = chosen

    space = chain_space(origami)
    n = origami.n
    # twist formula on the chain space, transported from normalized coords
    formula = []
    for j in range(2 * n):
        unit = tuple(Fraction(1 if i == j else 0) for i in range(2 * n))
        chain = EdgeChain.from_flat(unit)
        image = list(unit)
        for cyl, count in zip(decomp.cylinders, counts):
            pairing = sign * count * decomp.core_pairing(cyl, chain)
            if pairing:
                image = [x + pairing * y for x, y in zip(image, cyl.core.flat())]
        formula.append(tuple(image))
    formula_matrix = linalg.transpose(tuple(formula))

    marked = space.marked_subspace(space.singular_vertices()) \
        if space.singular_vertices() else space.full_subspace()
    best = None
    for lf in lift_all(origami, linear):
        agree = all(
            space.canonical_vec(linalg.mat_vec(lf.matrix, b))
            == space.canonical_vec(linalg.mat_vec(formula_matrix, b))
            for b in marked.basis)
        if agree:
            best = lf
            break
    if best is None:
        raise AssertionError("no affine lift matches the twist formula")
    return MultiTwist(decomp.direction, k, linear, counts, decomp, best,
                      formula_matrix)


# -- turning numbers and spin parity ------------------------------------------


def index_parity(origami: Origami, walk: Sequence[tuple[str, int, int]]) -> int:
    """Turning parity of a closed edge walk [(etype, square, dir), ...].

    Each vertex passage contributes t - 2 quarter turns, t the ccw sector
    count from the arrival germ to the departure germ; the total is a
    multiple of 4 quarters and ind = total / 4.
    """
    space = chain_space(origami)
    if any(v.multiplicity % 2 == 0 for v in space.vclasses):
        raise EvenConeMultiplicity(
            "parity needs all cone multiplicities odd (even zero orders)")
    walk = [(etype, g, direction) for etype, g, direction in walk]
    k = len(walk)
    if k == 0:
        raise NotClosed("empty walk")
    quarters = 0
    for i in range(k):
        prev = walk[i]
        nxt = walk[(i + 1) % k]
        tail_p, head_p = space.edge_endpoints(prev[0], prev[1])
        tail_n, head_n = space.edge_endpoints(nxt[0], nxt[1])
        at_prev = head_p if prev[2] == 1 else tail_p
        at_next = tail_n if nxt[2] == 1 else head_n
        if at_prev != at_next:
            raise NotClosed("walk is not connected through vertices")
        arr_kind = "in" if prev[2] == 1 else "out"
        dep_kind = "out" if nxt[2] == 1 else "in"
        v1, pos_arr = space.germ_position(arr_kind, prev[0], prev[1])
        v2, pos_dep = space.germ_position(dep_kind, nxt[0], nxt[1])
        assert v1 == v2
        size = 4 * space.vclasses[v1].multiplicity
        t = (pos_dep - pos_arr) % size
        quarters += t - 2
    if quarters % 4 != 0:
        raise AssertionError("total turning is not a multiple of 2*pi")
    return (quarters // 4) % 2


def index_parity_clockwise(origami: Origami,
                           walk: Sequence[tuple[str, int, int]]) -> int:
    """Same parity computed with the clockwise sector count at each passage."""
    space = chain_space(origami)
    if any(v.multiplicity % 2 == 0 for v in space.vclasses):
        raise EvenConeMultiplicity(
            "parity needs all cone multiplicities odd (even zero orders)")
    quarters = 0
    k = len(walk)
    for i in range(k):
        prev = walk[i]
        nxt = walk[(i + 1) % k]
        arr_kind = "in" if prev[2] == 1 else "out"
        dep_kind = "out" if nxt[2] == 1 else "in"
        v1, pos_arr = space.germ_position(arr_kind, prev[0], prev[1])
        v2, pos_dep = space.germ_position(dep_kind, nxt[0], nxt[1])
        size = 4 * space.vclasses[v1].multiplicity
        t_cw = (pos_arr - pos_dep) % size
        quarters += 2 - t_cw
    if quarters % 4 != 0:
        raise AssertionError("total turning is not a multiple of 2*pi")
    return (quarters // 4) % 2


def quadratic_form_value(origami: Origami, chain: EdgeChain,
                         clockwise: bool = False) -> int:
    """The spin quadratic form on an absolute integer class.

    Per immersed walk q = ind + 1 + #self-crossings (Johnson's formula);
    walks combine by q(a+b) = q(a) + q(b) + <a,b>, all mod 2.
    """
    space = chain_space(origami)
    walks = space.decompose_walks(chain.flat())
    parity_fn = index_parity_clockwise if clockwise else index_parity
    total = 0
    chains = []
    for walk in walks:
        total += parity_fn(origami, walk) + 1 + space.walk_self_crossings(walk)
        c = EdgeChain.zero(origami.n)
        for etype, g, direction in walk:
            c = c + EdgeChain.unit(origami.n, etype, g, direction)
        chains.append(c)
    for i in range(len(chains)):
        for j in range(i + 1, len(chains)):
            total += int(space.intersection(chains[i], chains[j]))
    return total % 2


def symplectic_basis(gram: Mat) -> Mat:
    """Integer change of basis C with C gram C^T the standard block J.

    Pairs are interleaved: rows (a_1, b_1, a_2, b_2, ...), and
    <a_i, b_i> = 1.
    """
    m = len(gram)
    if m % 2 != 0:
        raise NotUnimodular("odd rank")
    for i in range(m):
        for j in range(m):
            if gram[i][j] != -gram[j][i] or gram[i][j].denominator != 1:
                raise NotUnimodular("not an integer antisymmetric matrix")
    if abs(linalg.det(gram)) != 1:
        raise NotUnimodular(f"determinant {linalg.det(gram)}")

    def form(x: Vec, y: Vec) -> Fraction:
        gy = linalg.mat_vec(gram, y)
        return sum(a * b for a, b in zip(x, gy))

    basis = [tuple(Fraction(1 if i == j else 0) for j in range(m))
             for i in range(m)]
    out: list[Vec] = []
    while basis:
        v1 = basis[0]
        # integer combination w with <v1, w> = gcd of pairings = 1
        vals = [form(v1, b) for b in basis]
        idxs = [i for i, val in enumerate(vals) if val != 0]
        if not idxs:
            raise NotUnimodular("degenerate block")
        w = basis[idxs[0]]
        cur = vals[idxs[0]]
        for i in idxs[1:]:
            # extended gcd on the pairing values
            a, b = int(cur), int(vals[i])
            g0, x0, y0 = _xgcd(a, b)
            w = tuple(x0 * wx + y0 * bx for wx, bx in zip(w, basis[i]))
            cur = Fraction(g0)
        if cur < 0:
            w = tuple(-x for x in w)
            cur = -cur
        if cur != 1:
            raise NotUnimodular("pairing gcd exceeds 1")
        v2 = w
        out.append(v1)
        out.append(v2)
        new_basis = []
        for x in basis:
            proj = tuple(
                xx + form(x, v1) * v2x - form(x, v2) * v1x
                for xx, v1x, v2x in zip(x, v1, v2))
            new_basis.append(proj)
        reduced = linalg.hermite_row_basis([[int(c) for c in row]
                                            for row in new_basis])
        basis = [linalg.vec(row) for row in reduced]
    return tuple(out)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_x, x = x, old_x - quo * x
        old_y, y = y, old_y - quo * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass
class SpinResult:
    parity: str                        # "even" | "odd"
    basis: list[EdgeChain]             # a_1, b_1, a_2, b_2, ...
    indices: list[int]                 # ind mod 2 per basis element


def spin_parity(origami: Origami, clockwise: bool = False,
                basis_rows: Mat | None = None) -> SpinResult:
    """Arf invariant sum((ind a_i + 1)(ind b_i + 1)) over a symplectic basis."""
    space = chain_space(origami)
    if any(v.zero_order % 2 == 1 for v in space.vclasses):
        raise OddOrderZeros("spin parity needs even zero orders")
    integral = space.integral_absolute_basis()
    gram = space.gram(integral)
    change = symplectic_basis(gram) if basis_rows is None else basis_rows
    chains = []
    for row in change:
        v = [Fraction(0)] * (2 * origami.n)
        for c, b in zip(row, integral):
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        chains.append(EdgeChain.from_flat(v))
    qvals = [quadratic_form_value(origami, c, clockwise) for c in chains]
    g = len(chains) // 2
    total = sum(qvals[2 * i] * qvals[2 * i + 1] for i in range(g)) % 2
    return SpinResult("even" if total == 0 else "odd", chains,
                      [(x + 1) % 2 for x in qvals])


# -- invariant supplements ------------------------------------------------------


@dataclass
class SupplementCertificate:
    feasible: bool
    section: list[EdgeChain] | None
    forced: dict[str, Fraction] | None
    violated_probe: int | None
    residual: EdgeChain | None


def invariant_supplement(origami: Origami, marks: Sequence[int],
                         probes: Sequence[AffineLift],
                         reps: Sequence[EdgeChain] | None = None,
                         correction_basis: Sequence[EdgeChain] | None = None
                         ) -> SupplementCertificate:
    """Decide whether the marked relative classes admit an invariant supplement.

    Probes must preserve the marked vertex set. For each probe P the section
    condition is P (rep_k + corr_k) = sum_l c_kl (rep_l + corr_l), where the
    coefficients c_kl are forced exactly by the boundary action (when every
    probe fixes each mark, c is the identity and the condition is the familiar
    (P - Id)(rep + corr) = 0). Feasible: returns the corrected sections.
    Infeasible: returns the correction forced by the longest consistent probe
    prefix, the first violated probe, and its nonzero residual.
    """
    space = chain_space(origami)
    mark_set = set(marks)
    for p in probes:
        if any(p.vertex_perm(m) not in mark_set for m in marks):
            raise ProbeMovesMarks("a probe moves a marked vertex class"
                                  " outside the marks")
    if correction_basis is None:
        correction_basis = [EdgeChain.from_flat(v)
                            for v in space.absolute_subspace().basis]
    if reps is None:
        marked = space.marked_subspace(marks)
        absolute = space.absolute_subspace()
        reps = []
        taken = list(absolute.basis)
        for b in marked.basis:
            stacked, _ = linalg.rref(tuple(taken + [b]))
            if len(stacked) > len(taken):
                reps.append(EdgeChain.from_flat(b))
                taken.append(b)
    reps = list(reps)
    n_reps = len(reps)
    n_corr = len(correction_basis)
    corr_cols = tuple(space.canonical_vec(c.flat()) for c in correction_basis)
    rep_cols = tuple(space.canonical_vec(c.flat()) for c in reps)
    boundary_matrix = linalg.transpose(tuple(space.boundary_vec(c)
                                             for c in rep_cols))
    n2 = 2 * origami.n

    rows_a: list[Vec] = []
    rhs: list[Fraction] = []
    solution: Vec | None = tuple(Fraction(0) for _ in range(n_reps * n_corr))
    for pidx, probe in enumerate(probes):
        moved_reps = [space.canonical_vec(linalg.mat_vec(probe.matrix, c))
                      for c in rep_cols]
        moved_corr = [space.canonical_vec(linalg.mat_vec(probe.matrix, c))
                      for c in corr_cols]
        coeffs = []
        for k in range(n_reps):
            c_k = linalg.solve(boundary_matrix,
                               space.boundary_vec(moved_reps[k]))
            if c_k is None:
                raise ProbeMovesMarks(
                    "probe boundary action leaves the span of the sections")
            coeffs.append(c_k)
        prev_rows, prev_rhs = list(rows_a), list(rhs)
        for k in range(n_reps):
            # P corr_k - sum_l c_kl corr_l = sum_l c_kl rep_l - P rep_k
            columns = []
            for l in range(n_reps):
                for b in range(n_corr):
                    col = [Fraction(0)] * n2
                    if l == k:
                        col = list(moved_corr[b])
                    if coeffs[k][l]:
                        col = [x - coeffs[k][l] * y
                               for x, y in zip(col, corr_cols[b])]
                    columns.append(tuple(col))
            target = [Fraction(0)] * n2
            for l in range(n_reps):
                if coeffs[k][l]:
                    target = [x + coeffs[k][l] * y
                              for x, y in zip(target, rep_cols[l])]
            target = [x - y for x, y in zip(target, moved_reps[k])]
            for row_idx in range(n2):
                rows_a.append(tuple(col[row_idx] for col in columns))
                rhs.append(target[row_idx])
        solution = linalg.solve(tuple(rows_a), tuple(rhs))
        if solution is None:
            prefix = linalg.solve(tuple(prev_rows), tuple(prev_rhs)) \
                if prev_rows else tuple(Fraction(0)
                                        for _ in range(n_reps * n_corr))
            forced = ({f"s_{b}": prefix[b] for b in range(n_corr)}
                      if n_reps == 1 else
                      {f"s_{k}_{b}": prefix[k * n_corr + b]
                       for k in range(n_reps) for b in range(n_corr)})
            corrected = reps[0]
            for b, c in enumerate(correction_basis):
                corrected = corrected + c.scale(prefix[b])
            delta = linalg.mat_sub(probe.matrix, linalg.identity(n2))
            residual = EdgeChain.from_flat(space.canonical_vec(
                linalg.mat_vec(delta, corrected.flat())))
            return SupplementCertificate(False, None, forced, pidx, residual)
    section = []
    for k in range(n_reps):
        corrected = reps[k]
        for b, c in enumerate(correction_basis):
            corrected = corrected + c.scale(solution[k * n_corr + b])
        section.append(corrected)
    return SupplementCertificate(True, section, None, None, None)
