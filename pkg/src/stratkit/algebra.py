"""Finite-dimensional algebras given by structure constants."""

from __future__ import annotations

from .errors import UnknownVertex
from .linalg import Subspace, is_zero_vec, mat_mul, mat_vec


class AlgebraTable:
    """Algebra with basis ``labels`` and products ``table[i][j]`` (a vector).

    ``idempotents`` maps each vertex x to the vector of e_x; ``generators``
    is a list of vectors generating the algebra (used to shrink linear
    systems). ``paths`` keeps the normal-form paths when the table comes from
    a rewriting system.
    """

    def __init__(self, field, labels, table, idempotents, generators=None, paths=None):
        self.field = field
        self.labels = list(labels)
        self.table = table
        self.idempotents = dict(idempotents)
        self.dim = len(self.labels)
        self.paths = paths
        self.generators = generators if generators is not None else [
            self.basis_vector(i) for i in range(self.dim)
        ]
        self._sparse = [
            [[(k, c) for k, c in enumerate(table[i][j]) if c != 0] for j in range(self.dim)]
            for i in range(self.dim)
        ]

    @property
    def vertices(self):
        return tuple(self.idempotents)

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def zero_vec(self):
        return [self.field.zero] * self.dim

    def idempotent(self, x):
        try:
            return self.idempotents[x]
        except KeyError:
            raise UnknownVertex(x) from None

    def one(self):
        out = self.zero_vec()
        for e in self.idempotents.values():
            out = [a + b for a, b in zip(out, e)]
        return out

    def mul(self, u, v):
        out = [0] * self.dim
        nv = [(j, y) for j, y in enumerate(v) if y != 0]
        for i, x in enumerate(u):
            if x == 0:
                continue
            row = self._sparse[i]
            for j, y in nv:
                xy = x * y
                for k, c in row[j]:
                    out[k] = out[k] + xy * c
        return out

    def left_matrix(self, u):
        """Matrix of x -> u*x."""
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def right_matrix(self, u):
        """Matrix of x -> x*u."""
        cols = [self.mul(self.basis_vector(j), u) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def opposite(self):
        table = [[self.table[j][i] for j in range(self.dim)] for i in range(self.dim)]
        op = AlgebraTable(
            self.field, self.labels, table, self.idempotents, self.generators, self.paths
        )
        op.is_opposite_of = self
        return op

    def label(self, v):
        """Readable linear combination of basis labels."""
        terms = []
        for lab, c in zip(self.labels, v):
            if c == 0:
                continue
            cs = self.field.render(c)
            if cs == "1":
                terms.append(lab)
            elif cs == "-1":
                terms.append("-" + lab)
            else:
                terms.append("%s*%s" % (cs, lab))
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    # -- checks ----------------------------------------------------------

    def associativity_failures(self):
        """Exhaustive check of (uv)w = u(vw) on basis triples."""
        bad = []
        b = [self.basis_vector(i) for i in range(self.dim)]
        prods = [[self.table[i][j] for j in range(self.dim)] for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                uv = prods[i][j]
                for k in range(self.dim):
                    if self.mul(uv, b[k]) != self.mul(b[i], prods[j][k]):
                        bad.append((i, j, k))
        return bad

    def idempotent_failures(self):
        bad = []
        if self.one() != [self.field.zero] * self.dim and self.dim:
            for i in range(self.dim):
                u = self.basis_vector(i)
                if self.mul(self.one(), u) != u or self.mul(u, self.one()) != u:
                    bad.append(("unit", self.labels[i]))
        for x, ex in self.idempotents.items():
            for y, ey in self.idempotents.items():
                want = ex if x == y else self.zero_vec()
                if self.mul(ex, ey) != want:
                    bad.append(("orthogonality", x, y))
        return bad

    # -- subspaces -------------------------------------------------------

    def peirce_block(self, x, y):
        """Basis of e_x A e_y (elements u with e_x u e_y = u)."""
        ex, ey = self.idempotent(x), self.idempotent(y)
        imgs = [self.mul(ex, self.mul(self.basis_vector(i), ey)) for i in range(self.dim)]
        return Subspace(imgs, self.dim).basis

    def left_ideal_basis(self, x):
        """Basis of A e_x."""
        ex = self.idempotent(x)
        return Subspace([self.mul(self.basis_vector(i), ex) for i in range(self.dim)], self.dim).basis

    def right_ideal_basis(self, x):
        """Basis of e_x A."""
        ex = self.idempotent(x)
        return Subspace([self.mul(ex, self.basis_vector(i)) for i in range(self.dim)], self.dim).basis

    def ideal(self, vectors, reverse=True):
        """Two-sided ideal generated by ``vectors``."""
        left = Subspace(
            [self.mul(self.basis_vector(i), v) for v in vectors for i in range(self.dim)] + list(vectors),
            self.dim,
        )
        out = [self.mul(u, self.basis_vector(j)) for u in left.basis for j in range(self.dim)]
        return Subspace(out + left.basis, self.dim, reverse=reverse)

    def quotient(self, ideal: Subspace, keep=None):
        """Quotient by a two-sided ideal.

        Returns ``(table, projection)``; the quotient basis is the image of the
        standard basis vectors off the (reversed) pivots, so labels carry over.
        ``keep`` restricts the idempotent family to the listed vertices.
        """
        if not ideal.reverse:
            ideal = Subspace(ideal.basis, self.dim, reverse=True)
        comp = ideal.complement_indices()
        F = self.field

        def proj(v):
            r = ideal.reduce(v)
            return [F(r[i]) for i in comp]

        projection = [[None] * self.dim for _ in comp]
        for j in range(self.dim):
            col = proj(self.basis_vector(j))
            for i, c in enumerate(col):
                projection[i][j] = c
        table = [[proj(self.table[i][j]) for j in comp] for i in comp]
        keep = self.vertices if keep is None else keep
        idem = {x: proj(self.idempotents[x]) for x in keep}
        gens = [proj(g) for g in self.generators]
        gens = [g for g in gens if not is_zero_vec(g)]
        paths = tuple(self.paths[i] for i in comp) if self.paths else None
        q = AlgebraTable(F, [self.labels[i] for i in comp], table, idem, gens, paths)
        return q, projection


def check_anti_involution(A: AlgebraTable, sigma):
    """Verify that the linear map ``sigma`` (matrix) is an anti-involution:
    sigma(uv) = sigma(v) sigma(u) on all basis pairs and sigma^2 = 1.
    Returns a list of failures."""
    bad = []
    n = A.dim
    sq = mat_mul(sigma, sigma)
    if any(sq[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
        bad.append("sigma^2 != 1")
    cols = [mat_vec(sigma, A.basis_vector(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = mat_vec(sigma, A.table[i][j])
            rhs = A.mul(cols[j], cols[i])
            if lhs != rhs:
                bad.append((A.labels[i], A.labels[j]))
    return bad
