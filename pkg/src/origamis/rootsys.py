"""D4 root systems from invariant vector sets: frames, Weyl group, triality.

A D4 system is 24 vectors of the shape {+-e_a +- e_b, a < b} for a frame
(e_1..e_4). The frame is recovered intrinsically: the 24 half-sums of root
pairs that occur three times each split into the three triality-related
frames, and frame-mates are the candidates e, e' with both e + e' and e - e'
roots. All matrices act on frame coordinates, where the frame is declared
orthonormal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import NotD4, NotInAut
from .linalg import Mat, Vec


@dataclass(frozen=True)
class FiniteMatrixGroup:
    generators: tuple[Mat, ...]
    elements: tuple[Mat, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m: Mat) -> bool:
        return m in set(self.elements)


@dataclass(frozen=True)
class UnboundedWitness:
    word: tuple[int, ...]
    matrix: Mat


def finite_closure(generators: Sequence[Mat], cap: int):
    """BFS closure of exact matrices; UnboundedWitness if it exceeds cap."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    start = linalg.identity(n)
    seen = {start}
    order = [start]
    queue = [start]
    while queue:
        nxt = []
        for m in queue:
            for g in gens:
                h = linalg.mat_mul(m, g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        return _unbounded_witness(gens, cap)
        queue = nxt
    return FiniteMatrixGroup(gens, tuple(order))


def _unbounded_witness(gens: Sequence[Mat], cap: int) -> UnboundedWitness:
    words: list[tuple[int, ...]] = [(i,) for i in range(len(gens))]
    words += [(i, j) for i in range(len(gens)) for j in range(len(gens))]
    words += [(i, j, k) for i in range(len(gens))
              for j in range(len(gens)) for k in range(len(gens))]
    bound = Fraction(10) ** 9
    for word in words:
        m = linalg.identity(len(gens[0]))
        for i in word:
            m = linalg.mat_mul(m, gens[i])
        probe = m
        for _ in range(40):
            if max(abs(x) for row in probe for x in row) > bound:
                return UnboundedWitness(word, m)
            probe = linalg.mat_mul(probe, probe)
    raise ArithmeticError(f"closure exceeded cap {cap} but no growing word found")


@dataclass(frozen=True)
class RootSystemD4:
    span_basis: tuple[Vec, ...]        # rows spanning the ambient 4-space
    roots: tuple[Vec, ...]             # in span coordinates
    frame: tuple[Vec, ...]             # 4 frame vectors, span coordinates
    frames_all: tuple[tuple[Vec, ...], ...]  # the three unsigned frames

    def frame_coords(self, v_span: Vec) -> Vec:
        coords = linalg.solve(linalg.transpose(self.frame), v_span)
        if coords is None:
            raise NotD4("vector outside the frame span")
        return coords

    def ambient_frame(self) -> tuple[Vec, ...]:
        """Frame vectors in ambient coordinates."""
        return tuple(
            tuple(sum(f[k] * self.span_basis[k][j] for k in range(4))
                  for j in range(len(self.span_basis[0])))
            for f in self.frame
        )

    def roots_frame_coords(self) -> tuple[Vec, ...]:
        return tuple(self.frame_coords(r) for r in self.roots)

    def simple_basis(self) -> tuple[Vec, ...]:
        """alpha_1 = e1-e2, alpha_2 = e2-e3, alpha_3 = e3-e4, alpha_4 = e3+e4
        in frame coordinates."""
        e = linalg.identity(4)
        return (
            linalg.vec_sub(e[0], e[1]),
            linalg.vec_sub(e[1], e[2]),
            linalg.vec_sub(e[2], e[3]),
            linalg.vec_add(e[2], e[3]),
        )

    def weyl_group(self) -> FiniteMatrixGroup:
        gens = []
        for root in self.roots_frame_coords():
            gens.append(_reflection(root))
        group = finite_closure(tuple(dict.fromkeys(gens)), 300)
        assert isinstance(group, FiniteMatrixGroup)
        return group

    def automorphism_group(self) -> FiniteMatrixGroup:
        """All orthogonal maps preserving the roots: frame to signed frame."""
        import itertools

        frames = [tuple(self.frame_coords(f) for f in fr) for fr in self.frames_all]
        elements = set()
        order = []
        for fr in frames:
            for perm in itertools.permutations(range(4)):
                for signs in itertools.product((1, -1), repeat=4):
                    cols = [linalg.vec_scale(signs[k], fr[perm[k]]) for k in range(4)]
                    m = linalg.transpose(tuple(cols))
                    if m not in elements:
                        elements.add(m)
                        order.append(m)
        root_set = set(self.roots_frame_coords())
        for m in order:
            image = {tuple(linalg.mat_vec(m, r)) for r in root_set}
            assert image == root_set, "frame map does not preserve the roots"
        return FiniteMatrixGroup((), tuple(order))

    def preserves_roots(self, m: Mat) -> bool:
        root_set = set(self.roots_frame_coords())
        return {tuple(linalg.mat_vec(m, r)) for r in root_set} == root_set

    def triality_image(self, m: Mat, weyl: FiniteMatrixGroup | None = None) -> dict[int, int]:
        """The permutation of {1, 3, 4} labeling the coset of m in A(R)/W(R)."""
        if not self.preserves_roots(m):
            raise NotInAut("matrix does not preserve the root system")
        if weyl is None:
            weyl = self.weyl_group()
        alphas = self.simple_basis()
        labeled = {1: alphas[0], 2: alphas[1], 3: alphas[2], 4: alphas[3]}
        for w in weyl.elements:
            winv = linalg.mat_inv(w)
            g = linalg.mat_mul(winv, m)
            if tuple(linalg.mat_vec(g, labeled[2])) != labeled[2]:
                continue
            images = {}
            ok = True
            for a in (1, 3, 4):
                image = tuple(linalg.mat_vec(g, labeled[a]))
                match = next((b for b in (1, 3, 4) if labeled[b] == image), None)
                if match is None:
                    ok = False
                    break
                images[a] = match
            if ok:
                return images
        raise NotInAut("no Weyl correction matches; not an automorphism")


def _reflection(root: Vec) -> Mat:
    n = len(root)
    norm2 = sum(x * x for x in root)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            val = Fraction(1 if i == j else 0) - 2 * root[i] * root[j] / norm2
            row.append(val)
        rows.append(tuple(row))
    return tuple(rows)


def detect_d4(vectors: Iterable[Vec],
              preferred_frame: Sequence[Vec] | None = None) -> RootSystemD4:
    """Recognize {+-e_a +- e_b} structure in a set of 24 ambient vectors.

    preferred_frame (ambient coordinates) pins the frame order and signs,
    so downstream triality labels match a chosen convention.
    """
    vecs = list(dict.fromkeys(tuple(v) for v in vectors))
    if len(vecs) != 24:
        raise NotD4(f"expected 24 distinct vectors, got {len(vecs)}")
    vset = set(vecs)
    if any(tuple(-x for x in v) not in vset for v in vecs):
        raise NotD4("set is not closed under negation")
    span_rows, pivots = linalg.rref(tuple(vecs))
    if len(span_rows) != 4:
        raise NotD4(f"vectors span dimension {len(span_rows)}, need 4")
    basis = span_rows

    def coords(v: Vec) -> Vec:
        return tuple(v[p] for p in pivots)

    roots = [coords(v) for v in vecs]
    rset = set(roots)
    halves: dict[Vec, int] = {}
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            s = tuple((x + y) / 2 for x, y in zip(roots[i], roots[j]))
            if any(s):
                halves[s] = halves.get(s, 0) + 1
    candidates = [v for v, c in halves.items() if c == 3]
    if len(candidates) != 24:
        raise NotD4(f"frame candidate count {len(candidates)} != 24")

    def mates(e, f) -> bool:
        plus = tuple(x + y for x, y in zip(e, f))
        minus = tuple(x - y for x, y in zip(e, f))
        return plus in rset and minus in rset

    remaining = set(candidates)
    frames = []
    while remaining:
        seed = min(remaining)
        frame = [seed]
        for c in sorted(remaining):
            if c != seed and all(mates(c, f) for f in frame):
                frame.append(c)
        for f in frame:
            remaining.discard(f)
            remaining.discard(tuple(-x for x in f))
        if len(frame) != 4:
            raise NotD4(f"frame completion failed: {len(frame)} mates")
        frames.append(tuple(frame))
    if len(frames) != 3:
        raise NotD4(f"found {len(frames)} frames, expected 3")

    chosen = None
    if preferred_frame is not None:
        want = [coords(linalg.vec(v)) for v in preferred_frame]
        for fr in frames:
            klass = {f for c in fr for f in (c, tuple(-x for x in c))}
            if all(w in klass for w in want):
                chosen = tuple(want)
        if chosen is None:
            raise NotD4("preferred frame is not a frame of this system")
    else:
        chosen = frames[0]

    expected = set()
    for a in range(4):
        for b in range(a + 1, 4):
            for sa in (1, -1):
                for sb in (1, -1):
                    expected.add(tuple(sa * x + sb * y
                                       for x, y in zip(chosen[a], chosen[b])))
    if expected != rset:
        raise NotD4("vectors are not {+-e_a +- e_b} over the frame")
    return RootSystemD4(basis, tuple(roots), chosen, tuple(frames))


def symplectic_subgroup(group: FiniteMatrixGroup, gram: Mat) -> FiniteMatrixGroup:
    """Elements g with g^T gram g = gram."""
    kept = tuple(
        m for m in group.elements
        if linalg.mat_mul(linalg.mat_mul(linalg.transpose(m), gram), m) == gram
    )
    return FiniteMatrixGroup((), kept)
