"""Exact dense linear algebra over a field.

Matrices are lists of rows; vectors are plain lists. Entries are Fractions
or ModP elements; the integer 0 is accepted as a universal zero.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n, one=1):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = one
    return out


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def mat_vec(M, v):
    nz = [(j, x) for j, x in enumerate(v) if x != 0]
    out = []
    for row in M:
        s = 0
        for j, x in nz:
            a = row[j]
            if a != 0:
                s = s + a * x
        out.append(s)
    return out


def mat_mul(A, B):
    if not A:
        return []
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k, a in enumerate(row):
            if a == 0:
                continue
            for j, b in enumerate(B[k]):
                if b != 0:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, v):
    return [c * a for a in v]


def is_zero_vec(v):
    return all(x == 0 for x in v)


def is_zero_mat(M):
    return all(is_zero_vec(r) for r in M)


def rref(M, reverse=False):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` with only the nonzero rows kept. With
    ``reverse=True`` columns are scanned from the last to the first, so the
    pivots land on the highest-index coordinates.
    """
    rows = [list(r) for r in M if not is_zero_vec(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    order = range(ncols - 1, -1, -1) if reverse else range(ncols)
    pivots = []
    r = 0
    for c in order:
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if isinstance(lead, int):
            lead = Fraction(lead)
        if lead != 1:
            prow = [x / lead for x in prow]
            rows[r] = prow
        nzc = [j for j, x in enumerate(prow) if x != 0]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    for j in nzc:
                        ri[j] = ri[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(M):
    return len(rref(M)[1])


def nullspace(M, ncols=None):
    """Basis of {x : M x = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, pivots = rref(M)
    pset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, p in zip(R, pivots):
            if row[free] != 0:
                v[p] = -row[free]
        basis.append(v)
    return basis


def solve(M, b, ncols=None):
    """One solution of M x = b, or None when the system is inconsistent."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


class Subspace:
    """Subspace of K^n held as an RREF basis.

    Coordinates of a member vector with respect to the echelon basis are
    read off at the pivot positions.
    """

    def __init__(self, vectors, ambient_dim, reverse=False):
        self.n = ambient_dim
        self.reverse = reverse
        self.basis, self.pivots = rref(vectors, reverse=reverse)

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f != 0:
                for j, x in enumerate(row):
                    if x != 0:
                        v[j] = v[j] - f * x
        return v

    def contains(self, v):
        return is_zero_vec(self.reduce(v))

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def coords(self, v):
        return [v[p] for p in self.pivots]

    def from_coords(self, c):
        out = [0] * self.n
        for ci, row in zip(c, self.basis):
            if ci != 0:
                for j, x in enumerate(row):
                    if x != 0:
                        out[j] = out[j] + ci * x
        return out

    def complement_indices(self):
        p = set(self.pivots)
        return [i for i in range(self.n) if i not in p]

    def quotient_coords(self, v):
        """Coordinates of v + S in the quotient, on the complement indices."""
        r = self.reduce(v)
        return [r[i] for i in self.complement_indices()]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.n == other.n
            and self.dim == other.dim
            and self.contains_space(other)
        )

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.n)


def span_sum(*spaces):
    vecs = [v for s in spaces for v in s.basis]
    return Subspace(vecs, spaces[0].n)


def intersect(S, T):
    """S ∩ T via the kernel of [S | -T]."""
    if S.dim == 0 or T.dim == 0:
        return Subspace([], S.n)
    cols = S.basis + [vec_scale(-1, v) for v in T.basis]
    M = transpose(cols)
    out = []
    for c in nullspace(M, len(cols)):
        out.append(S.from_coords(c[: S.dim]))
    return Subspace(out, S.n)
