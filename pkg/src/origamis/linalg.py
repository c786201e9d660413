"""Exact linear algebra over Q and Z on tuple-of-tuples matrices.

Everything here is small and dense; clarity and exactness beat speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def vec(xs: Iterable) -> Vec:
    return tuple(Fraction(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(row) for row in rows)


def zeros(n: int, m: int) -> Mat:
    return tuple((Fraction(0),) * m for _ in range(n))


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(vec_add(x, y) for x, y in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(vec_sub(x, y) for x, y in zip(a, b))


def mat_scale(c, a: Mat) -> Mat:
    return tuple(vec_scale(c, row) for row in a)


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form over Q; returns (rref, pivot column list)."""
    rows = [list(row) for row in a]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(rank, nrows) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(nrows):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return tuple(tuple(row) for row in rows[:rank]), pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def nullspace(a: Mat) -> list[Vec]:
    """Basis of the right kernel of a over Q."""
    if not a:
        return []
    reduced, pivots = rref(a)
    ncols = len(a[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def solve(a: Mat, b: Vec) -> Vec | None:
    """One solution x of a x = b over Q, or None if inconsistent."""
    if not a:
        return () if all(x == 0 for x in b) else None
    ncols = len(a[0])
    augmented = tuple(row + (bv,) for row, bv in zip(a, b))
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[-1]
    return tuple(x)


def det(a: Mat) -> Fraction:
    rows = [list(row) for row in a]
    n = len(rows)
    result = Fraction(1)
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            result = -result
        result *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col] != 0:
                f = rows[i][col] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return result


def mat_inv(a: Mat) -> Mat:
    n = len(a)
    augmented = tuple(row + identity(n)[i] for i, row in enumerate(a))
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in reduced)


def mat_pow(a: Mat, k: int) -> Mat:
    n = len(a)
    if k < 0:
        return mat_pow(mat_inv(a), -k)
    out = identity(n)
    while k:
        if k & 1:
            out = mat_mul(out, a)
        a = mat_mul(a, a)
        k >>= 1
    return out


def unit_pivot_reducer(rows: Sequence[Sequence[int]]) -> list[tuple[int, Vec]]:
    """Integer row-reduce a lattice basis choosing only +-1 pivots.

    Returns a list of (pivot column, row) with pivot value 1, each pivot
    column zero in all other rows; the rows span the same lattice. Raises if
    some nonzero row never offers a +-1 pivot (cannot happen for boundary
    lattices of square complexes, where a spanning tree of the dual graph
    always provides one).
    """
    work = [[int(x) for x in row] for row in rows]
    done: list[tuple[int, list[int]]] = []
    while True:
        choice = None
        for i, row in enumerate(work):
            for j, x in enumerate(row):
                if x in (1, -1):
                    choice = (i, j)
                    break
            if choice:
                break
        if choice is None:
            if any(any(row) for row in work):
                raise ArithmeticError("lattice basis without unit pivot")
            break
        i, j = choice
        pivot_row = work.pop(i)
        if pivot_row[j] == -1:
            pivot_row = [-x for x in pivot_row]
        for row in work:
            if row[j]:
                f = row[j]
                for k in range(len(row)):
                    row[k] -= f * pivot_row[k]
        done.append((j, pivot_row))
    # back-substitute so each pivot column is zero in the other kept rows
    for idx in range(len(done) - 1, -1, -1):
        j, row = done[idx]
        for idx2 in range(len(done)):
            if idx2 != idx and done[idx2][1][j]:
                f = done[idx2][1][j]
                done[idx2] = (
                    done[idx2][0],
                    [a - f * b for a, b in zip(done[idx2][1], row)],
                )
    done.sort(key=lambda t: t[0])
    return [(j, vec(row)) for j, row in done]


def hermite_row_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form basis of the lattice spanned by integer rows."""
    work = [list(map(int, row)) for row in rows if any(row)]
    if not work:
        return []
    ncols = len(work[0])
    basis: list[list[int]] = []
    col = 0
    while work and col < ncols:
        live = [r for r in work if r[col] != 0]
        if not live:
            col += 1
            continue
        # gcd the column down to one row by repeated subtraction
        while len([r for r in work if r[col] != 0]) > 1:
            live = sorted((r for r in work if r[col] != 0), key=lambda r: abs(r[col]))
            small = live[0]
            for r in live[1:]:
                q = r[col] // small[col]
                for k in range(ncols):
                    r[k] -= q * small[k]
        pivot = next(r for r in work if r[col] != 0)
        work.remove(pivot)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        col += 1
    # reduce above-pivot entries
    for i in range(len(basis) - 1, -1, -1):
        pcol = next(j for j, x in enumerate(basis[i]) if x != 0)
        for k in range(i):
            q = basis[k][pcol] // basis[i][pcol]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return basis


def integer_kernel(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of {x integer: a x = 0} via unimodular column reduction."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    work = [[int(a[i][j]) for j in range(ncols)] for i in range(nrows)]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_addmul(j, k, q):  # col_j -= q * col_k
        for i in range(nrows):
            work[i][j] -= q * work[i][k]
        for i in range(ncols):
            u[i][j] -= q * u[i][k]

    def col_swap(j, k):
        for i in range(nrows):
            work[i][j], work[i][k] = work[i][k], work[i][j]
        for i in range(ncols):
            u[i][j], u[i][k] = u[i][k], u[i][j]

    row = 0
    fixed = 0
    while row < nrows and fixed < ncols:
        live = [j for j in range(fixed, ncols) if work[row][j] != 0]
        if not live:
            row += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda j: abs(work[row][j]))
            j0 = live[0]
            for j in live[1:]:
                col_addmul(j, j0, work[row][j] // work[row][j0])
            live = [j for j in range(fixed, ncols) if work[row][j] != 0]
        col_swap(fixed, live[0])
        fixed += 1
        row += 1
    kernel = []
    for j in range(fixed, ncols):
        if all(work[i][j] == 0 for i in range(nrows)):
            kernel.append([u[i][j] for i in range(ncols)])
    return kernel
