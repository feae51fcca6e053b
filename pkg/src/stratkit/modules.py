"""Finite-dimensional modules given by one action matrix per algebra basis element.

Right modules are represented as left modules over ``A.opposite()`` and carry
``side="right"``.
"""

from __future__ import annotations

import itertools
import random

import sympy

from .algebra import AlgebraTable
from .errors import IsomorphismUndecided, NotIsomorphic, NotStable, VectorOutOfSpace
from .linalg import (
    Subspace,
    identity,
    is_zero_mat,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    nullspace,
    rank,
    solve,
    transpose,
    zeros,
)

ISO_EXACT_HOM_DIM = 6
SEED = 20240917


class Module:
    def __init__(self, algebra: AlgebraTable, action, name="", side="left"):
        self.algebra = algebra
        self.action = action
        self.name = name
        self.side = side
        self.dim = len(action[0]) if action else 0
        self.ambient = None  # algebra vectors of the basis, for left ideals
        self.generator = None  # coordinates of a distinguished generator
        self._cache = {}

    @property
    def field(self):
        return self.algebra.field

    def __repr__(self):
        return "Module(%s, dim=%d)" % (self.name or "?", self.dim)

    def element_matrix(self, u):
        key = tuple(u)
        if key in self._cache:
            return self._cache[key]
        M = zeros(self.dim, self.dim)
        for k, c in enumerate(u):
            if c != 0:
                M = mat_add(M, mat_scale(c, self.action[k]))
        self._cache[key] = M
        return M

    def act(self, u, v):
        return mat_vec(self.element_matrix(u), v)

    def idempotent_matrix(self, x):
        return self.element_matrix(self.algebra.idempotent(x))

    def generator_matrices(self):
        return [self.element_matrix(g) for g in self.algebra.generators]

    def zero_vec(self):
        return [self.field.zero] * self.dim

    def basis_vector(self, i):
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    def verify(self):
        """Exhaustive check that the action is a unital homomorphism."""
        A = self.algebra
        bad = []
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = mat_mul(self.action[i], self.action[j])
                rhs = self.element_matrix(A.table[i][j])
                if lhs != rhs:
                    bad.append((A.labels[i], A.labels[j]))
        one = self.element_matrix(A.one())
        if any(one[i][j] != (1 if i == j else 0) for i in range(self.dim) for j in range(self.dim)):
            bad.append("unit")
        return bad

    def restrict(self, S: Subspace, name="", check=True):
        """Submodule on the stable subspace S (coordinates = echelon coords)."""
        action = []
        for k in range(self.algebra.dim):
            cols = []
            for s in S.basis:
                w = mat_vec(self.action[k], s)
                if check and not S.contains(w):
                    raise NotStable("subspace is not stable under %s" % self.algebra.labels[k])
                cols.append(S.coords(w))
            action.append(transpose(cols, S.dim) if cols else [])
        return _module_from(self.algebra, action, S.dim, name, self.side)

    def quotient(self, S: Subspace, name=""):
        if not S.reverse:
            S = Subspace(S.basis, S.n, reverse=True)
        comp = S.complement_indices()
        action = []
        for k in range(self.algebra.dim):
            cols = []
            for i in comp:
                w = [row[i] for row in self.action[k]]
                cols.append(S.quotient_coords(w))
            action.append(transpose(cols, len(comp)) if cols else [])
        return _module_from(self.algebra, action, len(comp), name, self.side), S


def _module_from(algebra, action, dim, name, side):
    if dim == 0:
        action = [[] for _ in range(algebra.dim)]
    m = Module(algebra, action, name, side)
    m.dim = dim
    return m


def zero_module(A: AlgebraTable, name="0", side="left"):
    return _module_from(A, [[] for _ in range(A.dim)], 0, name, side)


class ModuleMap:
    def __init__(self, source: Module, target: Module, matrix):
        self.source = source
        self.target = target
        self.matrix = matrix if matrix else [[] for _ in range(target.dim)]

    def apply(self, v):
        return mat_vec(self.matrix, v)

    def intertwines(self):
        for k in range(self.source.algebra.dim):
            lhs = mat_mul(self.matrix, self.source.action[k]) if self.source.dim else []
            rhs = mat_mul(self.target.action[k], self.matrix) if self.target.dim else []
            if self.source.dim and self.target.dim and lhs != rhs:
                if not is_zero_mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(lhs, rhs)]):
                    return False
        return True

    def rank(self):
        if not self.source.dim or not self.target.dim:
            return 0
        return rank(self.matrix)

    def is_iso(self):
        return (
            self.source.dim == self.target.dim
            and self.rank() == self.source.dim
            and self.intertwines()
        )

    def image(self):
        cols = transpose(self.matrix, self.source.dim) if self.target.dim else []
        return Subspace(cols, self.target.dim)

    def kernel(self):
        if not self.target.dim:
            return Subspace(identity(self.source.dim), self.source.dim)
        return Subspace(nullspace(self.matrix, self.source.dim), self.source.dim)


# -- constructions -----------------------------------------------------------


def regular_module(A: AlgebraTable, name="A"):
    action = [A.left_matrix(A.basis_vector(k)) for k in range(A.dim)]
    m = _module_from(A, action, A.dim, name, "left")
    m.ambient = [A.basis_vector(i) for i in range(A.dim)]
    m.generator = A.one()
    return m


def left_ideal_module(A: AlgebraTable, vectors, name=""):
    """The left ideal spanned by ``vectors`` (must be stable), as a module."""
    S = Subspace(vectors, A.dim)
    m = regular_module(A).restrict(S, name)
    m.ambient = S.basis
    m._space = S
    return m


def regular_projective(A: AlgebraTable, x, name=None):
    """The left module A e_x."""
    basis = A.left_ideal_basis(x)
    S = Subspace(basis, A.dim)
    m = regular_module(A).restrict(S, name or "A%s" % x, check=False)
    m.ambient = S.basis
    m._space = S
    m.generator = S.coords(A.idempotent(x))
    return m


def support(V: Module):
    return [x for x in V.algebra.vertices if V.dim and not is_zero_mat(V.idempotent_matrix(x))]


def stable_closure(V: Module, vectors):
    """Smallest action-stable subspace containing ``vectors``."""
    mats = V.generator_matrices()
    S = Subspace(vectors, V.dim)
    frontier = list(S.basis)
    while frontier:
        new = []
        for v in frontier:
            for M in mats:
                w = mat_vec(M, v)
                if not S.contains(w):
                    S = Subspace(S.basis + [w], V.dim)
                    new.append(w)
        frontier = new
    return S


def submodule_generated(V: Module, vectors, name=""):
    for v in vectors:
        if len(v) != V.dim:
            raise VectorOutOfSpace("vector of length %d in a module of dim %d" % (len(v), V.dim))
    S = stable_closure(V, vectors)
    sub = V.restrict(S, name, check=False)
    sub._space = S
    inc = ModuleMap(sub, V, transpose(S.basis, V.dim) if S.basis else [[] for _ in range(V.dim)])
    return sub, inc


def quotient_module(V: Module, S, name=""):
    """V/S with its projection map. ``S`` is a Subspace or a list of vectors."""
    if not isinstance(S, Subspace):
        S = Subspace(S, V.dim)
    for k in range(V.algebra.dim):
        for s in S.basis:
            if not S.contains(mat_vec(V.action[k], s)):
                raise NotStable("subspace not stable under %s" % V.algebra.labels[k])
    Q, S = V.quotient(S, name)
    comp = S.complement_indices()
    proj = [[None] * V.dim for _ in comp]
    for j in range(V.dim):
        col = S.quotient_coords(V.basis_vector(j))
        for i, c in enumerate(col):
            proj[i][j] = c
    return Q, ModuleMap(V, Q, proj)


def direct_sum(mods, name=""):
    A = mods[0].algebra
    n = sum(m.dim for m in mods)
    action = []
    for k in range(A.dim):
        M = zeros(n, n)
        off = 0
        for m in mods:
            for i in range(m.dim):
                for j in range(m.dim):
                    M[off + i][off + j] = m.action[k][i][j]
            off += m.dim
        action.append(M)
    return _module_from(A, action, n, name, mods[0].side)


def inflate(W: Module, A: AlgebraTable, projection, name=None):
    """Pull a module over a quotient B = A/I back to A along ``projection``."""
    action = []
    for k in range(A.dim):
        u = [projection[i][k] for i in range(len(projection))]
        action.append(W.element_matrix(u) if W.dim else [])
    return _module_from(A, action, W.dim, name or W.name, W.side)


def twisted_dual(M: Module, sigma, name=None):
    """Dual of M made into a left module through the anti-involution sigma:
    (a.f)(m) = f(sigma(a) m)."""
    A = M.algebra
    action = []
    for k in range(A.dim):
        s = [sigma[i][k] for i in range(A.dim)]
        action.append(transpose(M.element_matrix(s), M.dim) if M.dim else [])
    return _module_from(A, action, M.dim, name or "D(%s)" % M.name, M.side)


# -- homomorphisms -----------------------------------------------------------


def hom_space(V: Module, W: Module):
    """Basis of Hom_A(V, W) as a list of ModuleMaps."""
    dv, dw = V.dim, W.dim
    if dv == 0 or dw == 0:
        return []
    n = dv * dw
    rows = []
    for g in V.algebra.generators:
        RV, RW = V.element_matrix(g), W.element_matrix(g)
        for i in range(dw):
            for j in range(dv):
                row = [0] * n
                for l in range(dv):
                    c = RV[l][j]
                    if c != 0:
                        row[i * dv + l] = row[i * dv + l] + c
                for l in range(dw):
                    c = RW[i][l]
                    if c != 0:
                        row[l * dv + j] = row[l * dv + j] - c
                if any(x != 0 for x in row):
                    rows.append(row)
    sols = nullspace(rows, n) if rows else [[1 if t == s else 0 for t in range(n)] for s in range(n)]
    out = []
    for s in sols:
        out.append(ModuleMap(V, W, [[s[i * dv + j] for j in range(dv)] for i in range(dw)]))
    return out


def cyclic_map(M: Module, gen, W: Module, w):
    """The map M -> W sending ``gen`` (which must generate M) to ``w``;
    None when no such module map exists."""
    A = M.algebra
    if M.dim == 0:
        return ModuleMap(M, W, [[] for _ in range(W.dim)])
    cols_m = [mat_vec(M.action[k], gen) for k in range(A.dim)]
    cols_w = [mat_vec(W.action[k], w) for k in range(A.dim)]
    # pick algebra elements u_i with u_i.gen = basis_i of M
    P = transpose(cols_m, M.dim)
    pre = []
    for i in range(M.dim):
        u = solve(P, M.basis_vector(i), A.dim)
        if u is None:
            return None
        pre.append(u)
    Qw = transpose(cols_w, W.dim) if W.dim else []
    images = [mat_vec(Qw, u) if W.dim else [] for u in pre]
    f = ModuleMap(M, W, transpose(images, W.dim) if W.dim else [])
    return f if f.intertwines() else None


def _combine(maps, coeffs):
    dw, dv = maps[0].target.dim, maps[0].source.dim
    M = zeros(dw, dv)
    for c, f in zip(coeffs, maps):
        if c != 0:
            M = mat_add(M, mat_scale(c, f.matrix))
    return ModuleMap(maps[0].source, maps[0].target, M)


def _symbolic_det(maps, field):
    syms = sympy.symbols("t0:%d" % len(maps))
    n = maps[0].source.dim

    def conv(c):
        if field.characteristic:
            return sympy.Integer(field.to_int_rep(c))
        return sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else sympy.Integer(c)

    entries = [[0] * n for _ in range(n)]
    for s, f in zip(syms, maps):
        for i in range(n):
            for j in range(n):
                c = f.matrix[i][j]
                if c != 0:
                    entries[i][j] = entries[i][j] + conv(c) * s
    det = sympy.Matrix(entries).det(method="berkowitz")
    if field.characteristic:
        poly = sympy.Poly(det, *syms, modulus=field.characteristic)
    else:
        poly = sympy.Poly(det, *syms, domain="QQ")
    return poly


def isomorphism(V: Module, W: Module, seed=SEED):
    """An invertible module map V -> W.

    Raises NotIsomorphic with the reason when none exists and
    IsomorphismUndecided when the hom space is too large for the exact test
    and the randomised search found no witness.
    """
    if V.dim != W.dim:
        raise NotIsomorphic("dimension mismatch: %d vs %d" % (V.dim, W.dim))
    if V.dim == 0:
        return ModuleMap(V, W, [])
    H = hom_space(V, W)
    if not H:
        raise NotIsomorphic("Hom(V, W) = 0")
    for f in H:
        if f.rank() == V.dim:
            return f
    F = V.field
    rng = random.Random(seed)
    for _ in range(24):
        f = _combine(H, [F.random_element(rng) for _ in H])
        if f.rank() == V.dim:
            return f
    if len(H) > ISO_EXACT_HOM_DIM:
        raise IsomorphismUndecided("no invertible map found in a %d-dim hom space" % len(H))
    if F.characteristic and F.characteristic ** len(H) <= 4096:
        for coeffs in itertools.product(F.elements(), repeat=len(H)):
            f = _combine(H, coeffs)
            if f.rank() == V.dim:
                return f
        raise NotIsomorphic("no invertible element in Hom (exhaustive over the field)")
    poly = _symbolic_det(H, F)
    if poly.is_zero:
        raise NotIsomorphic("determinant vanishes identically on Hom")
    d = poly.total_degree()
    for coeffs in itertools.product(range(d + 1), repeat=len(H)):
        f = _combine(H, [F(c) for c in coeffs])
        if f.rank() == V.dim:
            return f
    raise IsomorphismUndecided("determinant is nonzero but no point found")  # pragma: no cover


def is_isomorphic(V: Module, W: Module):
    try:
        isomorphism(V, W)
        return True
    except NotIsomorphic:
        return False


def annihilator_in(V: Module, dual_vectors):
    """{v in V : f(v) = 0 for every f in dual_vectors}."""
    if not dual_vectors:
        return Subspace(identity(V.dim), V.dim)
    return Subspace(nullspace(dual_vectors, V.dim), V.dim)
