"""Jacobson radical and simple modules via a composition series of the
regular module (MeatAxe splitting with Norton's irreducibility test).

The radical is the common kernel of the composition factors of A, which
is valid in every characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

import sympy

from .algebra import AlgebraTable
from .errors import NotIsomorphic, StratkitError
from .linalg import Subspace, identity, mat_add, mat_mul, mat_scale, nullspace, transpose
from .modules import Module, hom_space, isomorphism, regular_module, stable_closure, support

SEED = 7919
MAX_TRIES = 200

_X = sympy.Symbol("x")


def _to_sympy(c, field):
    if field.characteristic:
        return sympy.Integer(field.to_int_rep(c))
    c = field(c)
    return sympy.Rational(c.numerator, c.denominator)


def irreducible_factors(M, field):
    """Distinct monic irreducible factors of the characteristic polynomial of M,
    as coefficient lists (highest degree first), sorted by degree."""
    SM = sympy.Matrix([[_to_sympy(c, field) for c in row] for row in M])
    cp = SM.charpoly(_X).as_expr()
    if field.characteristic:
        poly = sympy.Poly(cp, _X, modulus=field.characteristic)
    else:
        poly = sympy.Poly(cp, _X, domain="QQ")
    out = []
    for fac, _mult in poly.factor_list()[1]:
        if field.characteristic:
            coeffs = [field(int(c)) for c in fac.all_coeffs()]
        else:
            coeffs = [field(Fraction(int(c.p), int(c.q))) for c in map(sympy.Rational, fac.all_coeffs())]
        lead = coeffs[0]
        out.append([c / lead for c in coeffs])
    out.sort(key=len)
    return out


def poly_at(coeffs, M):
    n = len(M)
    out = [[0] * n for _ in range(n)]
    I = identity(n)
    for c in coeffs:
        out = mat_add(mat_mul(out, M), mat_scale(c, I))
    return out


def split(V: Module, rng=None):
    """A proper nonzero submodule of V (as a Subspace), or None if V is simple."""
    if V.dim <= 1:
        return None
    rng = rng or random.Random(SEED)
    F = V.field
    A = V.algebra
    tmats = [transpose(M) for M in V.generator_matrices()]
    for _ in range(MAX_TRIES):
        u = [F.random_element(rng) for _ in range(A.dim)]
        M = V.element_matrix(u)
        for p in irreducible_factors(M, F):
            pM = poly_at(p, M)
            N = nullspace(pM, V.dim)
            if not N:
                continue
            U = stable_closure(V, [N[0]])
            if U.dim < V.dim:
                return U
            if len(N) == len(p) - 1:
                Nt = nullspace(transpose(pM), V.dim)
                Ud = _closure(tmats, [Nt[0]], V.dim)
                if Ud.dim < V.dim:
                    return Subspace(nullspace(Ud.basis, V.dim), V.dim)
                return None
    raise StratkitError("MeatAxe could not decide irreducibility of %r" % V)


def _closure(mats, vectors, n):
    S = Subspace(vectors, n)
    frontier = list(S.basis)
    while frontier:
        new = []
        for v in frontier:
            for M in mats:
                w = [sum((M[i][j] * v[j] for j in range(n) if v[j] != 0), 0) for i in range(n)]
                if not S.contains(w):
                    S = Subspace(S.basis + [w], n)
                    new.append(w)
        frontier = new
    return S


def composition_factors(V: Module, rng=None):
    rng = rng or random.Random(SEED)
    if V.dim == 0:
        return []
    U = split(V, rng)
    if U is None:
        return [V]
    sub = V.restrict(U, check=False)
    quo, _ = V.quotient(Subspace(U.basis, U.n, reverse=True))
    return composition_factors(sub, rng) + composition_factors(quo, rng)


@dataclass
class SimpleList:
    algebra: AlgebraTable
    simples: list  # Module, with .name and .support
    radical: Subspace
    nilpotency: int  # least n with rad^n = 0
    composition_multiplicity: list  # [A : S] in the regular module
    top_multiplicity: list  # multiplicity of S in A/rad
    end_dims: list
    basic: bool  # A/rad isomorphic to K^X

    def by_name(self, name):
        for S in self.simples:
            if S.name == name:
                return S
        raise KeyError(name)


def nilpotency_index(A, J):
    """Least n with J^n = 0, or None if J is not nilpotent."""
    cur, n = J, 1
    while cur.dim:
        nxt = Subspace([A.mul(u, r) for u in cur.basis for r in J.basis], A.dim)
        if nxt.dim == cur.dim:
            return None
        cur, n = nxt, n + 1
    return n


def name_simples(simples):
    base = []
    for S in simples:
        base.append("S_" + "+".join(S.support))
    counts = {b: base.count(b) for b in base}
    seen = {}
    for S, b in zip(simples, base):
        if counts[b] > 1:
            seen[b] = seen.get(b, 0) + 1
            S.name = "%s.%d" % (b, seen[b])
        else:
            S.name = b


def radical_and_simples(A: AlgebraTable) -> SimpleList:
    if A.dim == 0:
        return SimpleList(A, [], Subspace([], 0), 1, [], [], [], True)
    factors = composition_factors(regular_module(A))
    classes = []  # [representative, count]
    for Sf in factors:
        for entry in classes:
            if entry[0].dim == Sf.dim:
                try:
                    isomorphism(Sf, entry[0])
                except NotIsomorphic:
                    continue
                entry[1] += 1
                break
        else:
            classes.append([Sf, 1])
    # radical = common kernel of the representations
    rows = []
    for S, _ in classes:
        for i in range(S.dim):
            for j in range(S.dim):
                rows.append([S.action[k][i][j] for k in range(A.dim)])
    rad = Subspace(nullspace(rows, A.dim) if rows else identity(A.dim), A.dim)
    nil = nilpotency_index(A, rad)
    if nil is None:  # pragma: no cover - cannot happen for a correct radical
        raise StratkitError("computed radical is not nilpotent")
    verts = list(A.vertices)
    for S, _ in classes:
        S.support = support(S)
    classes.sort(key=lambda c: (tuple(verts.index(x) for x in c[0].support), c[0].dim))
    simples = [S for S, _ in classes]
    name_simples(simples)
    end_dims = [len(hom_space(S, S)) for S in simples]
    top = [S.dim // e for S, e in zip(simples, end_dims)]
    nonzero_vertices = [x for x in verts if any(c != 0 for c in A.idempotent(x))]
    basic = (
        len(simples) == len(nonzero_vertices)
        and all(S.dim == 1 for S in simples)
        and sorted(tuple(S.support) for S in simples) == sorted((x,) for x in nonzero_vertices)
    )
    for S in simples:
        S.generator = None
    return SimpleList(
        A, simples, rad, nil, [c for _, c in classes], top, end_dims, basic
    )
