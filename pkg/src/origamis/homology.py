"""Relative homology H_1(M, Sigma', Z) of an origami, presented on the 2n edge
generators sigma_g (bottom sides, rightward) and zeta_g (left sides, upward)
modulo the square-boundary relations

    box_g = sigma_g + zeta_{r(g)} - zeta_g - sigma_{u(g)}.

Flat coordinates are (sigma_0..sigma_{n-1}, zeta_0..zeta_{n-1}). Canonical
forms are unique coset representatives obtained by zeroing the unit-pivot
columns of the relation lattice; integer chains stay integer.

The intersection form on absolute classes is computed combinatorially: a class
is decomposed into closed edge walks, each walk is pushed off to its left, and
signed crossings are counted on the boundary circle of each vertex disk using
the ribbon (quarter-sector) structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import NotAbsolute
from .linalg import Mat, Vec
from .origami import Origami, VertexClass, vertex_classes, vertex_of_square


@dataclass(frozen=True)
class EdgeChain:
    """Rational chain over the edge generators of one origami."""

    sigma: Vec
    zeta: Vec

    @staticmethod
    def zero(n: int) -> "EdgeChain":
        z = (Fraction(0),) * n
        return EdgeChain(z, z)

    @staticmethod
    def unit(n: int, etype: str, g: int, coeff=1) -> "EdgeChain":
        sigma = [Fraction(0)] * n
        zeta = [Fraction(0)] * n
        (sigma if etype == "s" else zeta)[g] = Fraction(coeff)
        return EdgeChain(tuple(sigma), tuple(zeta))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def flat(self) -> Vec:
        return self.sigma + self.zeta

    @staticmethod
    def from_flat(v: Sequence) -> "EdgeChain":
        v = linalg.vec(v)
        n = len(v) // 2
        return EdgeChain(v[:n], v[n:])

    def __add__(self, other: "EdgeChain") -> "EdgeChain":
        return EdgeChain(linalg.vec_add(self.sigma, other.sigma),
                         linalg.vec_add(self.zeta, other.zeta))

    def __sub__(self, other: "EdgeChain") -> "EdgeChain":
        return EdgeChain(linalg.vec_sub(self.sigma, other.sigma),
                         linalg.vec_sub(self.zeta, other.zeta))

    def __neg__(self) -> "EdgeChain":
        return self.scale(-1)

    def scale(self, c) -> "EdgeChain":
        return EdgeChain(linalg.vec_scale(c, self.sigma), linalg.vec_scale(c, self.zeta))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.sigma + self.zeta)

    def to_json_dict(self) -> dict:
        """{"sigma": [...], "zeta": [...]} with rationals as "p/q" strings."""
        def enc(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else \
                f"{x.numerator}/{x.denominator}"
        return {"sigma": [enc(x) for x in self.sigma],
                "zeta": [enc(x) for x in self.zeta]}

    @staticmethod
    def from_json_dict(data: dict) -> "EdgeChain":
        return EdgeChain(tuple(Fraction(x) for x in data["sigma"]),
                         tuple(Fraction(x) for x in data["zeta"]))

    def holonomy(self) -> tuple[Fraction, Fraction]:
        return (sum(self.sigma, Fraction(0)), sum(self.zeta, Fraction(0)))


def sigma_chain(n: int, g: int, coeff=1) -> EdgeChain:
    return EdgeChain.unit(n, "s", g, coeff)


def zeta_chain(n: int, g: int, coeff=1) -> EdgeChain:
    return EdgeChain.unit(n, "z", g, coeff)


@dataclass(frozen=True)
class Subspace:
    """Row-echelon basis of canonical-form flat vectors."""

    basis: tuple[Vec, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vec) -> Vec:
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def contains_vec(self, v: Vec) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def coords_of(self, v: Vec) -> Vec | None:
        """Coordinates in basis order, or None if v is outside the span."""
        coords = []
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            coords.append(v[p])
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return tuple(coords)


@dataclass(frozen=True)
class StandardSplitting:
    sigma: EdgeChain
    zeta: EdgeChain
    h1_0_abs: Subspace
    h1_0_rel: Subspace


class ChainSpace:
    """All per-origami homology machinery, built once and cached."""

    def __init__(self, origami: Origami):
        self.origami = origami
        n = origami.n
        self.n = n
        self.vclasses: list[VertexClass] = vertex_classes(origami)
        self.vowner: list[int] = vertex_of_square(origami)
        self.relation_rows: list[list[int]] = []
        r, u = origami.r, origami.u
        for g in range(n):
            row = [0] * (2 * n)
            row[g] += 1                    # sigma_g
            row[n + r(g)] += 1             # zeta_{r(g)}
            row[n + g] -= 1                # -zeta_g
            row[u(g)] -= 1                 # -sigma_{u(g)}
            self.relation_rows.append(row)
        self.reducer = linalg.unit_pivot_reducer(self.relation_rows)
        self._germs = self._build_germs()
        self._germ_pos: dict[tuple[str, str, int], tuple[int, int]] = {}
        for vidx, germs in enumerate(self._germs):
            for pos, germ in enumerate(germs):
                assert germ not in self._germ_pos, "duplicate germ"
                self._germ_pos[germ] = (vidx, pos)
        assert len(self._germ_pos) == 4 * n

    # -- relations and canonical forms ------------------------------------

    def relation_chain(self, g: int) -> EdgeChain:
        return EdgeChain.from_flat(self.relation_rows[g])

    def relation_rank(self) -> int:
        return len(self.reducer)

    def canonical_vec(self, v: Vec) -> Vec:
        v = list(Fraction(x) for x in v)
        for p, row in self.reducer:
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def canonical(self, chain: EdgeChain) -> EdgeChain:
        return EdgeChain.from_flat(self.canonical_vec(chain.flat()))

    def equivalent(self, a: EdgeChain, b: EdgeChain) -> bool:
        return self.canonical_vec(a.flat()) == self.canonical_vec(b.flat())

    # -- boundary and holonomy ---------------------------------------------

    def boundary_vec(self, v: Vec) -> Vec:
        """Coefficients on the vertex classes: d sigma_g = v(r g) - v(g), etc."""
        n = self.n
        out = [Fraction(0)] * len(self.vclasses)
        r, u = self.origami.r, self.origami.u
        for g in range(n):
            if v[g]:
                out[self.vowner[r(g)]] += v[g]
                out[self.vowner[g]] -= v[g]
            if v[n + g]:
                out[self.vowner[u(g)]] += v[n + g]
                out[self.vowner[g]] -= v[n + g]
        return tuple(out)

    def boundary(self, chain: EdgeChain) -> Vec:
        return self.boundary_vec(chain.flat())

    # -- subspaces ----------------------------------------------------------

    def subspace_from_vecs(self, vecs: Iterable[Vec]) -> Subspace:
        reduced, pivots = linalg.rref(tuple(self.canonical_vec(v) for v in vecs))
        return Subspace(reduced, tuple(pivots))

    def subspace_from(self, chains: Iterable[EdgeChain]) -> Subspace:
        return self.subspace_from_vecs(c.flat() for c in chains)

    def full_subspace(self) -> Subspace:
        n = self.n
        gens = [self.canonical_vec(tuple(Fraction(1 if i == j else 0)
                                         for j in range(2 * n)))
                for i in range(2 * n)]
        return self.subspace_from_vecs(gens)

    def _constrained_subspace(self, allowed_vertices: set[int],
                              zero_holonomy: bool) -> Subspace:
        """Classes with boundary supported on the given vertex classes."""
        full = self.full_subspace()
        rows = []
        for b in full.basis:
            constraints = [x for k, x in enumerate(self.boundary_vec(b))
                           if k not in allowed_vertices]
            if zero_holonomy:
                n = self.n
                constraints.append(sum(b[:n], Fraction(0)))
                constraints.append(sum(b[n:], Fraction(0)))
            rows.append(tuple(constraints))
        if not rows or not rows[0]:
            # no constraints at all: keep the whole space
            combos = list(linalg.identity(len(rows)))
        else:
            combos = linalg.nullspace(linalg.transpose(tuple(rows)))
        vecs = []
        for combo in combos:
            v = [Fraction(0)] * (2 * self.n)
            for coef, b in zip(combo, full.basis):
                if coef:
                    v = [x + coef * y for x, y in zip(v, b)]
            vecs.append(tuple(v))
        return self.subspace_from_vecs(vecs)

    def marked_subspace(self, marks: Sequence[int]) -> Subspace:
        if not marks:
            raise ValueError("marks must be nonempty")
        return self._constrained_subspace(set(marks), zero_holonomy=False)

    def absolute_subspace(self) -> Subspace:
        return self._constrained_subspace(set(), zero_holonomy=False)

    def singular_vertices(self) -> list[int]:
        return [k for k, v in enumerate(self.vclasses) if v.multiplicity > 1]

    def standard_splitting(self) -> StandardSplitting:
        n = self.n
        one = (Fraction(1),) * n
        zero = (Fraction(0),) * n
        sigma = EdgeChain(one, zero)
        zeta = EdgeChain(zero, one)
        h1_0_abs = self._constrained_subspace(set(), zero_holonomy=True)
        h1_0_rel = self._constrained_subspace(set(self.singular_vertices()),
                                              zero_holonomy=True)
        return StandardSplitting(sigma, zeta, h1_0_abs, h1_0_rel)

    def integral_absolute_basis(self) -> list[Vec]:
        """Z-basis of H_1(M, Z) = ker d / relations, as canonical integer rows."""
        nv = len(self.vclasses)
        n = self.n
        bmat = [[0] * (2 * n) for _ in range(nv)]
        r, u = self.origami.r, self.origami.u
        for g in range(n):
            bmat[self.vowner[r(g)]][g] += 1
            bmat[self.vowner[g]][g] -= 1
            bmat[self.vowner[u(g)]][n + g] += 1
            bmat[self.vowner[g]][n + g] -= 1
        kernel = linalg.integer_kernel(bmat)
        reduced = [self.canonical_vec(k) for k in kernel]
        int_rows = [[int(x) for x in row] for row in reduced]
        basis = linalg.hermite_row_basis(int_rows)
        return [linalg.vec(row) for row in basis]

    # -- ribbon structure ----------------------------------------------------

    def _build_germs(self) -> list[list[tuple[str, str, int]]]:
        """Edge germs at each vertex class, counterclockwise.

        For each square g in a commutator cycle the four germs between the
        quarter sectors LL(g), LR(r^-1 g), UR(u^-1 r^-1 g), UL(r u^-1 r^-1 g)
        are, in order: outgoing sigma_g (east), outgoing zeta_g (north),
        incoming sigma_{r^-1 g} (west), incoming zeta_{r u^-1 r^-1 g} (south).
        """
        r, u = self.origami.r, self.origami.u
        ri, ui = r.inverse(), u.inverse()
        out = []
        for v in self.vclasses:
            germs: list[tuple[str, str, int]] = []
            for g in v.cycle:
                germs.append(("out", "s", g))
                germs.append(("out", "z", g))
                germs.append(("in", "s", ri(g)))
                germs.append(("in", "z", r(ui(ri(g)))))
            out.append(germs)
        return out

    def germs_at(self, vidx: int) -> list[tuple[str, str, int]]:
        return list(self._germs[vidx])

    def sectors_at(self, vidx: int) -> list[tuple[str, int]]:
        """Quarter sectors ccw; sector k sits between germ k and germ k+1."""
        r, u = self.origami.r, self.origami.u
        ri, ui = r.inverse(), u.inverse()
        out = []
        for g in self.vclasses[vidx].cycle:
            out.extend([("LL", g), ("LR", ri(g)), ("UR", ui(ri(g))),
                        ("UL", r(ui(ri(g))))])
        return out

    def germ_position(self, kind: str, etype: str, g: int) -> tuple[int, int]:
        return self._germ_pos[(kind, etype, g)]

    # -- walks ----------------------------------------------------------------

    def edge_endpoints(self, etype: str, g: int) -> tuple[int, int]:
        """(tail vertex class, head vertex class) of the oriented edge."""
        if etype == "s":
            return self.vowner[g], self.vowner[self.origami.r(g)]
        return self.vowner[g], self.vowner[self.origami.u(g)]

    def decompose_walks(self, v: Vec) -> list[list[tuple[str, int, int]]]:
        """Closed walks (etype, g, dir) covering an integer absolute chain.

        Deterministic greedy: start from the least available edge use and exit
        each vertex along the least available use.
        """
        n = self.n
        if any(x.denominator != 1 for x in v):
            raise ValueError("integer chain required")
        if any(x != 0 for x in self.boundary_vec(v)):
            raise NotAbsolute("chain has nonzero boundary")
        remaining: dict[tuple[str, int, int], int] = {}
        for g in range(n):
            for etype, coeff in (("s", v[g]), ("z", v[n + g])):
                c = int(coeff)
                if c > 0:
                    remaining[(etype, g, 1)] = c
                elif c < 0:
                    remaining[(etype, g, -1)] = -c
        departures: dict[int, list[tuple[str, int, int]]] = {}
        for use in sorted(remaining):
            tail, head = self.edge_endpoints(use[0], use[1])
            start = tail if use[2] == 1 else head
            departures.setdefault(start, []).append(use)
        walks = []
        while remaining:
            first = min(u for u, c in remaining.items() if c > 0)
            walk = []
            use = first
            while True:
                remaining[use] -= 1
                if remaining[use] == 0:
                    del remaining[use]
                walk.append(use)
                tail, head = self.edge_endpoints(use[0], use[1])
                at = head if use[2] == 1 else tail
                nxt = min((u for u in departures.get(at, ()) if remaining.get(u, 0) > 0),
                          default=None)
                if nxt is None:
                    break
                use = nxt
            # balanced degrees guarantee the greedy walk closes up
            tail0, head0 = self.edge_endpoints(first[0], first[1])
            start0 = tail0 if first[2] == 1 else head0
            tail1, head1 = self.edge_endpoints(walk[-1][0], walk[-1][1])
            end1 = head1 if walk[-1][2] == 1 else tail1
            assert start0 == end1, "open walk from a balanced chain"
            walks.append(walk)
        return walks

    def walk_passages(self, walk: list[tuple[str, int, int]]) -> list[tuple[int, int, int]]:
        """(vertex class, arrival germ position, departure germ position) per visit."""
        out = []
        k = len(walk)
        for i in range(k):
            prev = walk[i]
            nxt = walk[(i + 1) % k]
            arr_kind = "in" if prev[2] == 1 else "out"
            dep_kind = "out" if nxt[2] == 1 else "in"
            v1, p1 = self.germ_position(arr_kind, prev[0], prev[1])
            v2, p2 = self.germ_position(dep_kind, nxt[0], nxt[1])
            assert v1 == v2, "walk is not connected through vertices"
            out.append((v1, p1, p2))
        return out

    def walk_self_crossings(self, walk: list[tuple[str, int, int]]) -> int:
        """Transverse self-crossings of an immersed realization of the walk.

        Parallel strands on one edge are separated by traversal order, placed
        consistently at both edge ends (reversed at incoming germs); each
        vertex passage becomes a chord on the vertex circle and crossings are
        interleaved chord pairs. Any consistent depth choice yields the same
        value mod 2.
        """
        counter: dict[tuple[str, int, int], int] = {}
        use_depth = []
        for use in walk:
            d = counter.get(use, 0)
            counter[use] = d + 1
            use_depth.append(d)
        k = len(walk)
        chords = []
        for i in range(k):
            prev, nxt = walk[i], walk[(i + 1) % k]
            d_prev, d_next = use_depth[i], use_depth[(i + 1) % k]
            arr_kind = "in" if prev[2] == 1 else "out"
            dep_kind = "out" if nxt[2] == 1 else "in"
            v1, p_arr = self.germ_position(arr_kind, prev[0], prev[1])
            v2, p_dep = self.germ_position(dep_kind, nxt[0], nxt[1])
            assert v1 == v2
            entry = (p_arr, d_prev if arr_kind == "out" else -d_prev)
            exit_ = (p_dep, d_next if dep_kind == "out" else -d_next)
            chords.append((v1, entry, exit_))
        crossings = 0
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                if chords[i][0] != chords[j][0]:
                    continue
                crossings += _chords_interleave(chords[i][1], chords[i][2],
                                                chords[j][1], chords[j][2])
        return crossings

    # -- intersection form -----------------------------------------------------

    def intersection(self, a: EdgeChain, b: EdgeChain) -> Fraction:
        """Algebraic intersection number of absolute classes.

        The first class is decomposed into closed walks; each walk is pushed
        slightly to its left, so all crossings with the edge strands of b
        happen on vertex disk boundaries in the open ccw germ arc from the
        departure germ to the arrival germ. An outgoing germ crossed
        contributes +1 times b's coefficient, an incoming one -1 times.
        """
        av, bv = a.flat(), b.flat()
        if any(x != 0 for x in self.boundary_vec(av)) or \
           any(x != 0 for x in self.boundary_vec(bv)):
            raise NotAbsolute("intersection form needs absolute classes")
        da = _common_denominator(av)
        db = _common_denominator(bv)
        ai = tuple(x * da for x in av)
        total = Fraction(0)
        n = self.n
        for walk in self.decompose_walks(ai):
            for vidx, arr, dep in self.walk_passages(walk):
                germs = self._germs[vidx]
                size = len(germs)
                pos = (dep + 1) % size
                while pos != arr:
                    kind, etype, g = germs[pos]
                    coeff = bv[g if etype == "s" else n + g]
                    if coeff:
                        total += coeff if kind == "out" else -coeff
                    pos = (pos + 1) % size
        return total / da

    def gram(self, basis: Sequence[Vec]) -> Mat:
        chains = [EdgeChain.from_flat(v) for v in basis]
        return tuple(
            tuple(self.intersection(a, b) for b in chains) for a in chains
        )

    # -- transversal pairing -----------------------------------------------------

    def horizontal_core_pairing(self, row_squares: Sequence[int], c: EdgeChain) -> Fraction:
        return sum((c.zeta[j] for j in row_squares), Fraction(0))

    def vertical_core_pairing(self, col_squares: Sequence[int], c: EdgeChain) -> Fraction:
        return -sum((c.sigma[j] for j in col_squares), Fraction(0))


def _chords_interleave(a1, a2, b1, b2) -> bool:
    """Whether chords {a1,a2}, {b1,b2} cross, endpoints as cyclic sort keys."""
    points = sorted([(a1, "a"), (a2, "a"), (b1, "b"), (b2, "b")])
    assert len({p for p, _ in points}) == 4, "chord endpoints collide"
    labels = [lab for _, lab in points]
    return labels in (["a", "b", "a", "b"], ["b", "a", "b", "a"])


def _common_denominator(v: Vec) -> int:
    d = 1
    for x in v:
        d = d * x.denominator // _gcd(d, x.denominator)
    return d


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


_SPACES: dict[Origami, ChainSpace] = {}


def chain_space(origami: Origami) -> ChainSpace:
    if origami not in _SPACES:
        _SPACES[origami] = ChainSpace(origami)
    return _SPACES[origami]


# -- functional wrappers matching the operation names -----------------------


def relation_lattice(origami: Origami) -> list[EdgeChain]:
    """Basis of n-1 independent square relations (their full sum is zero)."""
    space = chain_space(origami)
    return [space.relation_chain(g) for g in range(origami.n - 1)]


def canonical_form(origami: Origami, chain: EdgeChain) -> EdgeChain:
    return chain_space(origami).canonical(chain)


def boundary(origami: Origami, chain: EdgeChain) -> Vec:
    return chain_space(origami).boundary(chain)


def holonomy(chain: EdgeChain) -> tuple[Fraction, Fraction]:
    return chain.holonomy()


def marked_subspace(origami: Origami, marks: Sequence[int]) -> Subspace:
    return chain_space(origami).marked_subspace(marks)


def standard_splitting(origami: Origami) -> StandardSplitting:
    return chain_space(origami).standard_splitting()


def intersection_form(origami: Origami, a: EdgeChain, b: EdgeChain) -> Fraction:
    return chain_space(origami).intersection(a, b)
