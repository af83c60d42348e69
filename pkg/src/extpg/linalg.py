"""Row-echelon bookkeeping over a :class:`FieldSpec`.

Vectors are tuples/lists of encoded field elements. Everything here is
table-driven Gaussian elimination; no numeric libraries are involved.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import FieldSpec


class Span:
    """Incrementally maintained reduced echelon basis of a subspace."""

    __slots__ = ("F", "basis", "pivots")

    def __init__(self, F: FieldSpec, vectors: Iterable[Sequence[int]] = ()):
        self.F = F
        self.basis: list[list[int]] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[int]) -> list[int]:
        F = self.F
        v = list(v)
        for b, j in zip(self.basis, self.pivots):
            c = v[j]
            if c:
                add = F.add_row
                m = F.mul_row(F.neg(c))
                v = [add(x)[m[y]] for x, y in zip(v, b)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; return whether it enlarged the span."""
        w = self.reduce(v)
        j = next((i for i, x in enumerate(w) if x), None)
        if j is None:
            return False
        F = self.F
        m = F.mul_row(F.inv(w[j]))
        w = [m[x] for x in w]
        # keep the basis fully reduced so reduce() is a single pass
        add = F.add_row
        for k, b in enumerate(self.basis):
            c = b[j]
            if c:
                mc = F.mul_row(F.neg(c))
                self.basis[k] = [add(x)[mc[y]] for x, y in zip(b, w)]
        self.basis.append(w)
        self.pivots.append(j)
        return True

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains


def rank(F: FieldSpec, vectors: Iterable[Sequence[int]]) -> int:
    return Span(F, vectors).dim


def normalize(F: FieldSpec, v: Sequence[int]) -> tuple[int, ...] | None:
    """Scale ``v`` so its first nonzero entry is 1; ``None`` for the zero vector."""
    for x in v:
        if x:
            m = F.mul_row(F.inv(x))
            return tuple(m[y] for y in v)
    return None


def mat_vec(F: FieldSpec, A: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return tuple(out)


def mat_mul(F: FieldSpec, A, B) -> list[list[int]]:
    cols = list(zip(*B))
    return [[_dot(F, row, col) for col in cols] for row in A]


def _dot(F: FieldSpec, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def left_inverse(F: FieldSpec, columns: Sequence[Sequence[int]], rows: int) -> list[list[int]]:
    """Invertible ``rows x rows`` matrix ``T`` with ``T @ [columns] = [I; 0]``.

    ``columns`` must be linearly independent. Gauss-Jordan on ``[C | I]``.
    """
    n = len(columns)
    aug = [[columns[j][i] for j in range(n)] + [int(i == k) for k in range(rows)] for i in range(rows)]
    for c in range(n):
        piv = next((r for r in range(c, rows) if aug[r][c]), None)
        if piv is None:
            raise ValueError("columns are linearly dependent")
        aug[c], aug[piv] = aug[piv], aug[c]
        m = F.mul_row(F.inv(aug[c][c]))
        aug[c] = [m[x] for x in aug[c]]
        for r in range(rows):
            if r != c and aug[r][c]:
                mc = F.mul_row(F.neg(aug[r][c]))
                aug[r] = [F.add(x, mc[y]) for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]
