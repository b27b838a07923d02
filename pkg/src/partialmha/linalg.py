"""Exact dense linear algebra over an arbitrary field.

Matrices are lists of row lists of field scalars; vectors are plain
lists.  Everything is deterministic: row reduction always picks the
first nonzero pivot, ``solve`` sets free variables to zero, and
subspaces are stored in reduced row echelon form so equality of
subspaces is literal equality of their canonical bases.
"""

from __future__ import annotations

from typing import Optional, Sequence


def zeros(field, n):
    return [field.zero() for _ in range(n)]


def identity_matrix(field, n):
    one, zero = field.one(), field.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_vec(A, v):
    out = []
    for row in A:
        acc = None
        for a, x in zip(row, v):
            term = a * x
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def rref(matrix):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` contains only the nonzero
    rows and ``pivots`` their pivot column indices, ascending.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix) -> int:
    return len(rref(matrix)[0])


def solve(field, A, b) -> Optional[list]:
    """One solution of ``A x = b`` or ``None``; free variables are zero."""
    n = len(A)
    if n == 0:
        return []
    ncols = len(A[0])
    if len(b) != n:
        raise ValueError(f"dimension mismatch: {n} rows, |b| = {len(b)}")
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    rows, pivots = rref(aug)
    x = zeros(field, ncols)
    for row, p in zip(rows, pivots):
        if p == ncols:
            return None
        x[p] = row[-1]
    return x


def kernel_basis(field, A, ncols=None):
    """Canonical basis of the null space of ``A`` (RREF of the kernel)."""
    if not A:
        return identity_matrix(field, ncols) if ncols else []
    ncols = len(A[0])
    rows, pivots = rref(A)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = zeros(field, ncols)
        v[f] = field.one()
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


class Subspace:
    """A subspace of a fixed coordinate space, held in canonical RREF."""

    def __init__(self, field, ambient_dim: int, vectors: Sequence[Sequence] = ()):
        self.field = field
        self.ambient_dim = ambient_dim
        rows, pivots = rref([list(v) for v in vectors])
        self.basis = rows
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec):
        """Canonical representative of ``vec`` modulo this subspace."""
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(r) for r in self.basis)))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def kernel(field, A, ncols=None) -> Subspace:
    if A:
        ncols = len(A[0])
    return Subspace(field, ncols, kernel_basis(field, A, ncols))


def image(field, A) -> Subspace:
    cols = transpose(A)
    return Subspace(field, len(A), cols)


class Quotient:
    """Quotient of a coordinate space by a subspace of relations.

    ``project`` sends an ambient vector to quotient coordinates (the
    non-pivot coordinates of its canonical representative); ``section``
    is the right inverse picking the representative with zero pivot
    coordinates, so ``project(section(q)) == q``.
    """

    def __init__(self, field, ambient_dim: int, relations: Subspace):
        if relations.ambient_dim != ambient_dim:
            raise ValueError("relations live in a different ambient space")
        self.field = field
        self.ambient_dim = ambient_dim
        self.relations = relations
        pivot_set = set(relations.pivots)
        self.coords = [c for c in range(ambient_dim) if c not in pivot_set]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def project(self, vec):
        red = self.relations.reduce(vec)
        return [red[c] for c in self.coords]

    def section(self, qvec):
        v = zeros(self.field, self.ambient_dim)
        for c, x in zip(self.coords, qvec):
            v[c] = x
        return v


def quotient(field, ambient_dim: int, relations: Subspace) -> Quotient:
    return Quotient(field, ambient_dim, relations)


def linear_map_from_spanning(field, inputs, outputs):
    """Matrix of the linear map sending each input vector to its output.

    ``inputs`` spans the domain (given in ambient coordinates of size
    n); ``outputs`` are the prescribed images (size m).  Returns the
    m-by-n matrix when the assignment is linearly consistent, ``None``
    when two dependent inputs demand incompatible images.
    """
    if not inputs:
        return []
    D = [list(v) for v in inputs]    # k x n, rows are the inputs
    m = len(outputs[0]) if outputs else 0
    rows_M = []
    for i in range(m):
        target = [out[i] for out in outputs]
        sol = solve(field, D, target)
        if sol is None:
            return None
        rows_M.append(sol)
    return rows_M
