"""Permutations of {0, ..., n-1} as immutable image tuples.

Composition is "apply right factor first" throughout: (p * q)(x) = p(q(x)).
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .errors import NotPermutation


class Perm:
    """A permutation stored as the tuple of images of 0..n-1."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise NotPermutation(f"not a permutation of [0, {n}): {images!r}")
            seen[x] = True
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Perm is immutable")

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(range(n))

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
                images[a] = b
        return Perm(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        # apply `other` first
        return Perm(tuple(self.images[other.images[x]] for x in range(self.n)))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, each cycle starting at its least element."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(self.images[x] == x for x in range(self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


def are_transitive(perms: Sequence[Perm]) -> bool:
    """Whether the group generated by ``perms`` acts transitively."""
    if not perms:
        return False
    n = perms[0].n
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        x = stack.pop()
        for p in perms:
            for y in (p.images[x], p.inverse().images[x]):
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return all(seen)


def random_transitive_pair(n: int, rng: random.Random) -> tuple[Perm, Perm]:
    """A uniformly-ish random pair (r, u) generating a transitive group."""
    while True:
        r = list(range(n))
        u = list(range(n))
        rng.shuffle(r)
        rng.shuffle(u)
        pair = (Perm(r), Perm(u))
        if are_transitive(pair):
            return pair


def iter_commuting(p: Perm, q: Perm) -> Iterator[Perm]:
    """All permutations commuting with both p and q (brute orbit propagation).

    A candidate is determined by the image of square 0 since <p, q> is
    transitive on its orbit; propagate and check consistency.
    """
    n = p.n
    gens = [p, q, p.inverse(), q.inverse()]
    for image0 in range(n):
        images = [-1] * n
        images[0] = image0
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for g in gens:
                y = g.images[x]
                fy = g.images[images[x]]
                if images[y] == -1:
                    images[y] = fy
                    stack.append(y)
                elif images[y] != fy:
                    ok = False
                    break
        if ok and all(v >= 0 for v in images):
            try:
                yield Perm(images)
            except NotPermutation:
                pass
