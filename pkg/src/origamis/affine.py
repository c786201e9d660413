"""Affine diffeomorphisms as exact matrices on the edge chain space.

A Veech group element M is lifted by decomposing M into the generator word,
composing one elementary edge substitution per letter along the SL(2,Z) orbit
of the origami, and closing up with a relabeling isomorphism from the final
origami back to the start. Lifts act on the full 2n-dimensional chain space;
equality is always tested on canonical forms.

The letter substitutions (target origami listed first) are

    T:  (r, u r^-1)   sigma_g -> sigma_g,            zeta_g -> sigma_g + zeta_{r g}
    T-: (r, u r)      sigma_g -> sigma_g,            zeta_g -> zeta_{r^-1 g} - sigma_{r^-1 g}
    S:  (r u^-1, u)   zeta_g  -> zeta_g,             sigma_g -> zeta_g + sigma_{u g}
    S-: (r u, u)      zeta_g  -> zeta_g,             sigma_g -> sigma_{u^-1 g} - zeta_{u^-1 g}

each of which maps the square relations of the source exactly onto those of
the target and fixes every vertex (so vertex classes carry over by label).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotAutomorphism, NotInvariant, NotInVeechGroup, OrderExceedsCap
from .homology import EdgeChain, Subspace, chain_space
from .linalg import Mat, Vec
from .origami import Origami, isomorphisms, sl2z_act, vertex_of_square
from .permutations import Perm
from .sl2z import ID2, Mat2, mat_inv, mat_mul, sl2z_word


@dataclass(frozen=True)
class EdgeSubstitution:
    source: Origami
    target: Origami
    rows: tuple[tuple[tuple[int, int], ...], ...]  # row -> ((col, coeff), ...)

    def apply_rows(self, matrix: Mat) -> Mat:
        """Sparse row product: (substitution) * matrix."""
        return tuple(
            tuple(
                sum((coeff * matrix[col][j] for col, coeff in row), Fraction(0))
                for j in range(len(matrix))
            )
            for row in self.rows
        )

    def matrix(self) -> Mat:
        n2 = len(self.rows)
        return self.apply_rows(linalg.identity(n2))


def elementary_substitution(letter: str, origami: Origami) -> EdgeSubstitution:
    n = origami.n
    target = sl2z_act(letter, origami)
    r, u = origami.r, origami.u
    ri, ui = r.inverse(), u.inverse()
    cols: list[list[tuple[int, int]]] = [[] for _ in range(2 * n)]
    for g in range(n):
        if letter == "T":
            cols[g] = [(g, 1)]
            cols[n + g] = [(g, 1), (n + r(g), 1)]
        elif letter == "T-":
            cols[g] = [(g, 1)]
            cols[n + g] = [(n + ri(g), 1), (ri(g), -1)]
        elif letter == "S":
            cols[n + g] = [(n + g, 1)]
            cols[g] = [(n + g, 1), (u(g), 1)]
        elif letter == "S-":
            cols[n + g] = [(n + g, 1)]
            cols[g] = [(ui(g), 1), (n + ui(g), -1)]
        else:
            raise ValueError(f"unknown letter {letter!r}")
    rows: list[list[tuple[int, int]]] = [[] for _ in range(2 * n)]
    for col, entries in enumerate(cols):
        for row, coeff in entries:
            rows[row].append((col, coeff))
    return EdgeSubstitution(origami, target, tuple(tuple(r_) for r_ in rows))


def _relabel_matrix(n: int, phi: Perm) -> Mat:
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for g in range(n):
        out[phi(g)][g] = Fraction(1)
        out[n + phi(g)][n + g] = Fraction(1)
    return tuple(tuple(row) for row in out)


def _vertex_map_by_label(src: Origami, dst: Origami, phi: Perm | None = None) -> Perm:
    """Vertex-class permutation induced by square g of src -> phi(g) of dst."""
    vsrc = vertex_of_square(src)
    vdst = vertex_of_square(dst)
    n = src.n
    images: dict[int, int] = {}
    for g in range(n):
        h = phi(g) if phi is not None else g
        prior = images.get(vsrc[g])
        if prior is None:
            images[vsrc[g]] = vdst[h]
        elif prior != vdst[h]:
            raise AssertionError("square map does not respect vertex classes")
    return Perm([images[k] for k in range(len(images))])


@dataclass(frozen=True)
class AffineLift:
    """(derivative, chain matrix, vertex action) of an affine diffeomorphism."""

    origami: Origami
    linear: Mat2
    matrix: Mat
    vertex_perm: Perm
    relabeling: Perm | None = None

    @property
    def marked_fix(self) -> bool:
        space = chain_space(self.origami)
        return self.vertex_perm(space.vowner[self.origami.base]) == \
            space.vowner[self.origami.base]

    def apply(self, chain: EdgeChain) -> EdgeChain:
        return EdgeChain.from_flat(linalg.mat_vec(self.matrix, chain.flat()))

    def canonical_images(self) -> tuple[Vec, ...]:
        space = chain_space(self.origami)
        return tuple(space.canonical_vec(col) for col in linalg.transpose(self.matrix))

    def compose(self, other: "AffineLift") -> "AffineLift":
        """self after other."""
        assert self.origami == other.origami
        relabeling = None
        if self.relabeling is not None and other.relabeling is not None:
            relabeling = self.relabeling * other.relabeling
        return AffineLift(
            self.origami,
            mat_mul(self.linear, other.linear),
            linalg.mat_mul(self.matrix, other.matrix),
            self.vertex_perm * other.vertex_perm,
            relabeling,
        )

    def inverse(self) -> "AffineLift":
        relabeling = self.relabeling.inverse() if self.relabeling else None
        return AffineLift(
            self.origami,
            mat_inv(self.linear),
            linalg.mat_inv(self.matrix),
            self.vertex_perm.inverse(),
            relabeling,
        )

    def is_identity(self) -> bool:
        if self.linear != ID2 or not self.vertex_perm.is_identity():
            return False
        space = chain_space(self.origami)
        n2 = 2 * self.origami.n
        for j, col in enumerate(linalg.transpose(self.matrix)):
            unit = tuple(Fraction(1 if k == j else 0) for k in range(n2))
            if space.canonical_vec(col) != space.canonical_vec(unit):
                return False
        return True

    def same_action(self, other: "AffineLift") -> bool:
        return self.compose(other.inverse()).is_identity()

    def __pow__(self, k: int) -> "AffineLift":
        if k < 0:
            return self.inverse() ** (-k)
        out = identity_lift(self.origami)
        base = self
        while k:
            if k & 1:
                out = out.compose(base)
            base = base.compose(base)
            k >>= 1
        return out


def identity_lift(origami: Origami) -> AffineLift:
    space = chain_space(origami)
    return AffineLift(origami, ID2, linalg.identity(2 * origami.n),
                      Perm.identity(len(space.vclasses)), Perm.identity(origami.n))


def automorphism_lift(origami: Origami, a: Perm) -> AffineLift:
    if a * origami.r != origami.r * a or a * origami.u != origami.u * a:
        raise NotAutomorphism("permutation does not commute with r and u")
    return AffineLift(origami, ID2, _relabel_matrix(origami.n, a),
                      _vertex_map_by_label(origami, origami, a), a)


def lift_all(origami: Origami, m: Mat2) -> list[AffineLift]:
    """All lifts of m, one per closing isomorphism (torsor under Aut)."""
    word = sl2z_word(m).exact_letters()
    current = origami
    total = linalg.identity(2 * origami.n)
    vmap = Perm.identity(len(chain_space(origami).vclasses))
    for letter in reversed(word):
        sub = elementary_substitution(letter, current)
        total = sub.apply_rows(total)
        vmap = _vertex_map_by_label(current, sub.target) * vmap
        current = sub.target
    closings = isomorphisms(current, origami)
    if not closings:
        raise NotInVeechGroup(f"{m} does not stabilize the origami")
    lifts = []
    for phi in closings:
        matrix = linalg.mat_mul(_relabel_matrix(origami.n, phi), total)
        vperm = _vertex_map_by_label(current, origami, phi) * vmap
        lifts.append(AffineLift(origami, m, matrix, vperm, phi))
    return lifts


def lift(origami: Origami, m: Mat2, closing: Perm | None = None) -> AffineLift:
    """Lift m to an affine diffeomorphism.

    The closing relabeling is the isomorphism fixing the base square when one
    exists, else the lexicographically least; pass `closing` to pin another.
    """
    lifts = lift_all(origami, m)
    if closing is not None:
        for lf in lifts:
            if lf.relabeling == closing:
                return lf
        raise NotInVeechGroup("closing relabeling is not an isomorphism")
    for lf in lifts:
        if lf.relabeling(origami.base) == origami.base:
            return lf
    return lifts[0]


def power_order(lift_: AffineLift, cap: int) -> int:
    acc = lift_
    for k in range(1, cap + 1):
        if acc.is_identity():
            return k
        acc = acc.compose(lift_)
    raise OrderExceedsCap(f"order exceeds cap {cap}")


def matrix_on(lift_: AffineLift, subspace: Subspace) -> Mat:
    """Matrix of the lift in the subspace basis (columns are images)."""
    space = chain_space(lift_.origami)
    columns = []
    for b in subspace.basis:
        image = space.canonical_vec(linalg.mat_vec(lift_.matrix, b))
        coords = subspace.coords_of(image)
        if coords is None:
            raise NotInvariant("subspace is not preserved by the lift")
        columns.append(coords)
    return linalg.transpose(tuple(columns))


def preserves(lift_: AffineLift, subspace: Subspace) -> bool:
    try:
        matrix_on(lift_, subspace)
        return True
    except NotInvariant:
        return False


def matrix_in_chain_basis(lift_: AffineLift, basis: "list[Vec] | tuple"):
    """Matrix of the lift in an explicit (ordered, non-echelonized) basis."""
    space = chain_space(lift_.origami)
    cols_of_basis = linalg.transpose(tuple(space.canonical_vec(b) for b in basis))
    columns = []
    for b in basis:
        image = space.canonical_vec(linalg.mat_vec(lift_.matrix, b))
        coords = linalg.solve(cols_of_basis, image)
        if coords is None:
            raise NotInvariant("span of the basis is not preserved")
        columns.append(coords)
    return linalg.transpose(tuple(columns))
