"""Posets on the vertex set, truncation quotients A(Y), standard modules,
standard filtrations and heredity chains."""

from __future__ import annotations

from dataclasses import dataclass, field
import itertools

from .algebra import AlgebraTable
from .errors import (
    DivisibilityFailure,
    HypothesisViolated,
    NoFiltrationFound,
    NotInitialSegment,
    NotIsomorphic,
    IsomorphismUndecided,
    TooLarge,
    UnknownVertex,
    WitnessFailure,
)
from .linalg import Subspace, mat_mul, mat_vec, rank, solve, transpose
from .modules import (
    Module,
    ModuleMap,
    cyclic_map,
    direct_sum,
    hom_space,
    isomorphism,
    quotient_module,
    regular_module,
    regular_projective,
    stable_closure,
    support,
)

MAX_ENUMERATION = 20


class Poset:
    """Partial order on a finite carrier given by covering pairs (x, y), x < y."""

    def __init__(self, elements, covers=()):
        self.elements = tuple(elements)
        idx = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        le = [[i == j for j in range(n)] for i in range(n)]
        for x, y in covers:
            if x not in idx or y not in idx:
                raise UnknownVertex("%s < %s" % (x, y))
            le[idx[x]][idx[y]] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise ValueError("order relation has a cycle through %s and %s"
                                     % (self.elements[i], self.elements[j]))
        self._le = le
        self._idx = idx
        self.covers = tuple(covers)

    @classmethod
    def from_presentation(cls, p):
        return cls(p.quiver.vertices, p.order)

    def le(self, x, y):
        return self._le[self._idx[x]][self._idx[y]]

    def lt(self, x, y):
        return x != y and self.le(x, y)

    def down(self, y):
        return tuple(x for x in self.elements if self.le(x, y))

    def not_above(self, y):
        return tuple(x for x in self.elements if not self.lt(y, x))

    def maximal(self, subset):
        subset = list(subset)
        return [y for y in self.elements if y in subset and not any(self.lt(y, z) for z in subset)]

    def is_initial_segment(self, Y):
        Y = set(Y)
        return all(x in Y for y in Y for x in self.down(y))

    def down_closure(self, S):
        S = set(S)
        return tuple(x for x in self.elements if any(self.le(x, y) for y in S))

    def initial_segments(self):
        """All down-closed subsets, ordered by size then declaration order."""
        if len(self.elements) > MAX_ENUMERATION:
            raise TooLarge("%d elements; enumerate segments explicitly" % len(self.elements))
        # a linear extension: sort by number of elements below
        ext = sorted(self.elements, key=lambda x: (len(self.down(x)), self._idx[x]))
        out = []

        def rec(i, chosen):
            if i == len(ext):
                out.append(tuple(x for x in self.elements if x in chosen))
                return
            x = ext[i]
            rec(i + 1, chosen)
            if all(z in chosen for z in self.down(x) if z != x):
                rec(i + 1, chosen | {x})

        rec(0, frozenset())
        return sorted(out, key=lambda Y: (len(Y), [self._idx[x] for x in Y]))


# -- truncation --------------------------------------------------------------


@dataclass
class TruncationQuotient:
    segment: tuple
    table: AlgebraTable
    projection: list  # matrix dim B x dim A
    kernel: Subspace  # sum of A e_x A over x outside the segment

    def factors_through(self, V: Module):
        """True when every kernel element acts as zero on V."""
        if V.dim == 0:
            return True
        return all(not any(c != 0 for row in V.element_matrix(u) for c in row) for u in self.kernel.basis)

    def lift(self, b):
        """A preimage in A of the quotient element b."""
        A_dim = len(self.projection[0]) if self.projection else self.kernel.n
        if not self.projection:
            return [0] * A_dim
        return solve(self.projection, b, A_dim)


def truncate(A: AlgebraTable, P: Poset, Y) -> TruncationQuotient:
    Y = tuple(x for x in A.vertices if x in set(Y))
    if not P.is_initial_segment(Y):
        raise NotInitialSegment("%s is not down-closed" % (list(Y),))
    outside = [A.idempotent(x) for x in A.vertices if x not in Y]
    kernel = A.ideal(outside) if outside else Subspace([], A.dim, reverse=True)
    table, proj = A.quotient(kernel, keep=Y)
    return TruncationQuotient(Y, table, proj, kernel)


def inflate_through(W: Module, A: AlgebraTable, tq: TruncationQuotient, name=None):
    from .modules import inflate

    return inflate(W, A, tq.projection, name)


def deflate(V: Module, tq: TruncationQuotient, name=None):
    """The B-module structure of an A-module whose action factors through B."""
    B = tq.table
    action = []
    for i in range(B.dim):
        u = tq.lift(B.basis_vector(i))
        action.append(V.element_matrix(u) if V.dim else [])
    from .modules import _module_from

    return _module_from(B, action, V.dim, name or V.name, V.side)


# -- standard modules ----------------------------------------------------------


@dataclass
class StandardModule:
    y: str
    segment: tuple
    module: Module
    generator: list  # coordinates of the image of e_y
    projection: ModuleMap  # A e_y -> module


def segment_projective(A: AlgebraTable, Y, y, name=None) -> StandardModule:
    """A(Y) e_y as an A-module: A e_y modulo the submodule generated by the
    e_x A e_y with x outside Y."""
    if y not in A.vertices:
        raise UnknownVertex(y)
    Ay = regular_projective(A, y)
    vecs = []
    for x in A.vertices:
        if x in Y:
            continue
        Ex = Ay.idempotent_matrix(x)
        vecs.extend(transpose(Ex, Ay.dim))
    S = stable_closure(Ay, vecs)
    Q, proj = quotient_module(Ay, S, name or "M_%s" % y)
    gen = proj.apply(Ay.generator)
    Q.generator = gen
    return StandardModule(y, tuple(Y), Q, gen, proj)


def standard_module(A: AlgebraTable, P: Poset, y) -> StandardModule:
    if y not in A.vertices:
        raise UnknownVertex(y)
    return segment_projective(A, P.down(y), y, "M_%s" % y)


def standard_modules(A, P):
    return {y: standard_module(A, P, y) for y in A.vertices}


@dataclass
class WelldefinedRow:
    y: str
    segment: tuple
    support: list
    dim: int
    ok: bool


def check_standard_welldefined(A: AlgebraTable, P: Poset):
    """One check per vertex on Y_max = {x : not x > y}."""
    out = {}
    for y in A.vertices:
        Y = P.not_above(y)
        sm = segment_projective(A, Y, y)
        supp = support(sm.module)
        out[y] = WelldefinedRow(y, Y, supp, sm.module.dim, set(supp) <= set(P.down(y)))
    return out


def check_standard_welldefined_exhaustive(A: AlgebraTable, P: Poset):
    """Brute force over all pairs (Y, y) with y maximal in Y: support of
    A(Y)e_y inside the down-set of y, and all A(Y)e_y isomorphic."""
    rows = {y: [] for y in A.vertices}
    for Y in P.initial_segments():
        for y in P.maximal(Y):
            sm = segment_projective(A, Y, y)
            supp = support(sm.module)
            rows[y].append((Y, sm, set(supp) <= set(P.down(y))))
    verdict = {}
    for y, items in rows.items():
        ok = all(flag for _, _, flag in items)
        ref = items[0][1].module
        same = True
        for _, sm, _ in items[1:]:
            try:
                isomorphism(sm.module, ref)
            except (NotIsomorphic, IsomorphismUndecided):
                same = False
        verdict[y] = ok and same
    return verdict


# -- filtrations -------------------------------------------------------------


@dataclass
class FiltrationCertificate:
    module: Module
    chain: list  # Subspaces 0 = V_0 < V_1 < ... < V_n = V, in module coordinates
    labels: list  # y_i for the layer V_i / V_{i-1}
    witnesses: list  # matrices M_{y_i} -> V with image in V_i, iso modulo V_{i-1}
    standards: dict = field(repr=False, default_factory=dict)

    def verify(self):
        """Re-check every claim; returns a list of problems (empty when sound)."""
        V = self.module
        bad = []
        if not self.chain or self.chain[0].dim != 0:
            bad.append("chain does not start at 0")
        if self.chain and self.chain[-1].dim != V.dim:
            bad.append("chain does not end at V")
        mats = V.generator_matrices()
        for i, S in enumerate(self.chain):
            for M in mats:
                if any(not S.contains(mat_vec(M, s)) for s in S.basis):
                    bad.append("V_%d not stable" % i)
                    break
            if i and not S.contains_space(self.chain[i - 1]):
                bad.append("V_%d does not contain V_%d" % (i, i - 1))
            if i and S.dim <= self.chain[i - 1].dim:
                bad.append("V_%d not strictly larger" % i)
        total = 0
        for i, (y, L) in enumerate(zip(self.labels, self.witnesses), 1):
            M = self.standards[y].module
            lo, hi = self.chain[i - 1], self.chain[i]
            total += M.dim
            cols = transpose(L, M.dim) if M.dim else []
            if any(not hi.contains(c) for c in cols):
                bad.append("witness %d leaves V_%d" % (i, i))
            if hi.dim - lo.dim != M.dim:
                bad.append("layer %d has dim %d, M_%s has %d" % (i, hi.dim - lo.dim, y, M.dim))
            if rank(lo.basis + cols) != lo.dim + M.dim if (lo.basis or cols) else False:
                bad.append("witness %d not injective modulo V_%d" % (i, i - 1))
            for g in V.algebra.generators:
                lhs = mat_mul(L, M.element_matrix(g)) if M.dim else []
                rhs = mat_mul(V.element_matrix(g), L) if M.dim else []
                diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(lhs, rhs)]
                if diff and any(not lo.contains(c) for c in transpose(diff, M.dim)):
                    bad.append("witness %d does not intertwine modulo V_%d" % (i, i - 1))
                    break
        if total != V.dim:
            bad.append("layer dimensions sum to %d, dim V = %d" % (total, V.dim))
        return bad


def _lift_from_quotient(comp, n, q):
    v = [0] * n
    for i, c in zip(comp, q):
        v[i] = c
    return v


def _layer_witness(My: StandardModule, Vp: Module, k):
    """Isomorphism M_y^k -> Vp as a matrix; canonical generators when e_y M_y is
    one-dimensional, otherwise a searched isomorphism."""
    M = My.module
    y = My.y
    if k == 0:
        return []
    eM = rank(transpose(M.idempotent_matrix(y), M.dim)) if M.dim else 0
    E = Vp.idempotent_matrix(y)
    gens = Subspace(transpose(E, Vp.dim), Vp.dim).basis
    if k == 1 and eM > 1:
        for g in gens:
            f = cyclic_map(M, My.generator, Vp, g)
            if f is not None and rank(f.matrix) == Vp.dim == M.dim:
                return f.matrix
    if eM == 1:
        blocks = []
        for g in gens:
            f = cyclic_map(M, My.generator, Vp, g)
            if f is None:
                blocks = None
                break
            blocks.append(f.matrix)
        if blocks is not None:
            W = [sum((b[i] for b in blocks), []) for i in range(Vp.dim)]
            if rank(W) == Vp.dim == M.dim * k:
                return W
    f = isomorphism(direct_sum([M] * k), Vp)
    return f.matrix


def standard_filtration(A: AlgebraTable, P: Poset, V: Module, standards=None) -> FiltrationCertificate:
    """Greedy descent: peel off the submodule generated by e_y V for a maximal y
    in the support, which must be a sum of copies of M_y."""
    standards = standards or standard_modules(A, P)
    order = list(A.vertices)
    n = V.dim
    sub = Subspace([], n, reverse=True)
    chain = [Subspace([], n)]
    labels, witnesses = [], []
    while sub.dim < n:
        Q, _ = V.quotient(sub)
        comp = sub.complement_indices()
        supp = support(Q)
        cands = P.maximal(supp)
        y = sorted(cands, key=order.index)[0]
        My = standards[y]
        E = Q.idempotent_matrix(y)
        layer_space = stable_closure(Q, transpose(E, Q.dim))
        Vp = Q.restrict(layer_space, check=False)
        ey_V = rank(transpose(Vp.idempotent_matrix(y), Vp.dim))
        ey_M = rank(transpose(My.module.idempotent_matrix(y), My.module.dim)) if My.module.dim else 0
        if ey_M == 0:
            raise NoFiltrationFound("%s: M_%s vanishes at %s but the layer does not" % (V.name, y, y))
        if ey_V % ey_M:
            raise DivisibilityFailure(
                "%s: dim e_%s V' = %d is not a multiple of dim e_%s M_%s = %d"
                % (V.name, y, ey_V, y, y, ey_M)
            )
        k = ey_V // ey_M
        if Vp.dim != k * My.module.dim:
            raise NoFiltrationFound(
                "%s: layer at %s has dim %d, expected %d copies of M_%s (dim %d)"
                % (V.name, y, Vp.dim, k, y, My.module.dim)
            )
        try:
            W = _layer_witness(My, Vp, k)
        except NotIsomorphic as exc:
            raise NoFiltrationFound("%s: layer at %s is not M_%s^%d (%s)" % (V.name, y, y, k, exc)) from None
        # W: Vp-coords columns; map to Q coords, then lift to V coords
        d = My.module.dim
        layer_in_Q = transpose(layer_space.basis, Q.dim)  # Q.dim x Vp.dim
        imgs_Q = mat_mul(layer_in_Q, W)  # Q.dim x (k*d)
        cols_V = [_lift_from_quotient(comp, n, [imgs_Q[r][c] for r in range(Q.dim)]) for c in range(k * d)]
        cur = list(sub.basis)
        for i in range(k):
            block = cols_V[i * d:(i + 1) * d]
            cur = cur + block
            chain.append(Subspace(cur, n))
            labels.append(y)
            witnesses.append(transpose(block, n) if block else [[] for _ in range(n)])
        sub = Subspace(cur, n, reverse=True)
    return FiltrationCertificate(V, chain, labels, witnesses, standards)


def dimension_vector(V: Module):
    return tuple(
        rank(transpose(V.idempotent_matrix(x), V.dim)) if V.dim else 0 for x in V.algebra.vertices
    )


def feasible_multiplicities(V: Module, standards):
    """All multiplicity vectors m with sum m_y dimvec(M_y) = dimvec(V)."""
    target = dimension_vector(V)
    ys = [y for y in standards if standards[y].module.dim]
    vecs = [dimension_vector(standards[y].module) for y in ys]
    out = []

    def rec(i, rem, acc):
        if i == len(ys):
            if not any(rem):
                out.append(dict(zip(ys, acc)))
            return
        m = 0
        r = rem
        while all(c >= 0 for c in r):
            rec(i + 1, r, acc + [m])
            m += 1
            r = tuple(a - b for a, b in zip(r, vecs[i]))
            if not any(vecs[i]):
                break

    rec(0, target, [])
    return out


def exhaustive_filtration_search(A, P, V: Module, standards=None, grid=(0, 1, -1, 2)):
    """Search over bottom layers φ(M_y) ⊂ V for injective φ in Hom(M_y, V).

    Returns ``(certificate or None, exact)``. ``exact`` is True when a negative
    answer is a proof: either no multiplicity vector matches the dimension
    vector, or the field is F_p and every hom was enumerated. Over the
    rationals the coefficients range over ``grid``.
    """
    standards = standards or standard_modules(A, P)
    if not feasible_multiplicities(V, standards):
        return None, True
    F = V.field
    coeffs = F.elements() if F.characteristic else [F(c) for c in grid]
    exact = [bool(F.characteristic)]

    def rec(W, lift_cols, base):
        # W: current quotient module; base: Subspace of V already peeled
        if W.dim == 0:
            return []
        if not feasible_multiplicities(W, standards):
            return None
        for y in A.vertices:
            M = standards[y].module
            if M.dim == 0 or M.dim > W.dim:
                continue
            H = hom_space(M, W)
            if len(H) > 4:
                exact[0] = False
                continue
            for cs in itertools.product(coeffs, repeat=len(H)):
                if not any(c != 0 for c in cs):
                    continue
                mat = [[sum((c * h.matrix[i][j] for c, h in zip(cs, H)), 0) for j in range(M.dim)] for i in range(W.dim)]
                if rank(mat) != M.dim:
                    continue
                img = Subspace(transpose(mat, M.dim), W.dim, reverse=True)
                Wq, _ = W.quotient(img)
                comp = img.complement_indices()
                sub_lift = [lift_cols(c) for c in transpose(mat, M.dim)]
                rest = rec(
                    Wq,
                    lambda q, comp=comp, lc=lift_cols, n=W.dim: lc(_lift_from_quotient(comp, n, q)),
                    None,
                )
                if rest is not None:
                    return [(y, sub_lift)] + rest
        return None

    layers = rec(V, lambda c: list(c), None)
    if layers is None:
        return None, exact[0]
    chain = [Subspace([], V.dim)]
    cur, labels, wits = [], [], []
    for y, cols in layers:
        cur = cur + cols
        chain.append(Subspace(cur, V.dim))
        labels.append(y)
        wits.append(transpose(cols, V.dim))
    return FiltrationCertificate(V, chain, labels, wits, standards), True


# -- hypotheses --------------------------------------------------------------


@dataclass
class StratificationReport:
    welldefined: dict  # y -> WelldefinedRow
    filtrations: dict  # x -> FiltrationCertificate or None
    failures: list  # messages
    standards: dict = field(repr=False, default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    @property
    def verdict(self):
        return "PASS" if self.passed else "FAIL"


def check_hypotheses(A: AlgebraTable, P: Poset) -> StratificationReport:
    wd = check_standard_welldefined(A, P)
    failures = ["standard module M_%s not well defined (support %s)" % (y, r.support)
                for y, r in wd.items() if not r.ok]
    standards = standard_modules(A, P)
    filtrations = {}
    for x in A.vertices:
        Ax = regular_projective(A, x)
        if Ax.dim == 0:
            filtrations[x] = None
            continue
        try:
            cert = standard_filtration(A, P, Ax, standards)
        except NoFiltrationFound as exc:
            filtrations[x] = None
            failures.append("filtration of A%s: %s" % (x, exc))
            continue
        problems = cert.verify()
        if problems:
            raise WitnessFailure("filtration of A%s: %s" % (x, problems))
        filtrations[x] = cert
    return StratificationReport(wd, filtrations, failures, standards)


# -- heredity chains ----------------------------------------------------------


@dataclass
class HeredityStep:
    vertex: str
    remaining: tuple  # vertices left after the step
    algebra: AlgebraTable  # algebra before the step
    ideal: Subspace  # A e_x A in the coordinates of ``algebra``
    multiplicities: dict  # y -> n_y with I e_y = (A e_x)^{n_y}
    generators: dict  # y -> list of vectors of e_x A e_y (images of the A e_x generators)
    witness: list  # matrix (A e_x)^n -> A, columns in algebra coordinates
    quotient: AlgebraTable
    projection: list  # algebra -> quotient

    @property
    def n(self):
        return sum(self.multiplicities.values())


@dataclass
class HeredityChainCertificate:
    algebra: AlgebraTable
    poset: Poset
    order: list  # removed vertices x_1, x_2, ...
    steps: list

    def verify(self):
        bad = []
        for st in self.steps:
            B = st.algebra
            I = st.ideal
            # two-sided
            for u in I.basis:
                for i in range(B.dim):
                    b = B.basis_vector(i)
                    if not I.contains(B.mul(b, u)) or not I.contains(B.mul(u, b)):
                        bad.append("step %s: ideal not two-sided" % st.vertex)
                        break
            # idempotent-generated
            if B.ideal([B.idempotent(st.vertex)]) != I:
                bad.append("step %s: ideal not generated by e_%s" % (st.vertex, st.vertex))
            # projectivity witness
            P = regular_projective(B, st.vertex)
            n = st.n
            src = direct_sum([P] * n) if n else None
            W = st.witness
            if n:
                if rank(W) != I.dim or P.dim * n != I.dim:
                    bad.append("step %s: witness not bijective onto I" % st.vertex)
                cols = transpose(W, src.dim)
                if any(not I.contains(c) for c in cols):
                    bad.append("step %s: witness image leaves I" % st.vertex)
                regA = regular_module(B)
                for g in B.generators:
                    lhs = mat_mul(W, src.element_matrix(g))
                    rhs = mat_mul(regA.element_matrix(g), W)
                    if lhs != rhs and any(a != b for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2)):
                        bad.append("step %s: witness does not intertwine" % st.vertex)
                        break
            elif I.dim:
                bad.append("step %s: empty witness for nonzero ideal" % st.vertex)
        # recomposition against direct truncation
        A = self.algebra
        removed = []
        cum = None
        for st in self.steps:
            removed.append(st.vertex)
            cum = st.projection if cum is None else mat_mul(st.projection, cum)
            Y = tuple(x for x in A.vertices if x not in removed)
            tq = truncate(A, self.poset, Y)
            problems = algebra_isomorphism_problems(A, cum, st.quotient, tq.projection, tq.table)
            bad.extend("prefix %s: %s" % (removed, p) for p in problems)
        return bad


def algebra_isomorphism_problems(A, proj1, B1, proj2, B2):
    """Check that phi(proj1(u)) = proj2(u) defines an algebra isomorphism B1 -> B2."""
    bad = []
    if B1.dim != B2.dim:
        return ["dimensions differ: %d vs %d" % (B1.dim, B2.dim)]
    if B1.dim == 0:
        return bad
    n = A.dim
    k1 = Subspace(_kernel(proj1, n), n)
    k2 = Subspace(_kernel(proj2, n), n)
    if k1 != k2:
        return ["kernels differ"]
    pre = [solve(proj1, B1.basis_vector(i), n) for i in range(B1.dim)]
    phi_cols = [mat_vec(proj2, u) for u in pre]
    phi = transpose(phi_cols, B2.dim)
    if rank(phi) != B2.dim:
        bad.append("induced map not bijective")
    for i in range(B1.dim):
        for j in range(B1.dim):
            lhs = mat_vec(phi, B1.table[i][j])
            rhs = B2.mul(phi_cols[i], phi_cols[j])
            if any(a != b for a, b in zip(lhs, rhs)):
                bad.append("not multiplicative on (%s, %s)" % (B1.labels[i], B1.labels[j]))
    return bad


def _kernel(M, n):
    from .linalg import nullspace

    return nullspace(M, n) if M else [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def heredity_chain(A: AlgebraTable, P: Poset, report: StratificationReport = None) -> HeredityChainCertificate:
    """Remove maximal vertices one at a time, certifying that each A e_x A is
    isomorphic to a direct sum of copies of A e_x as a left module."""
    report = report or check_hypotheses(A, P)
    if not report.passed:
        raise HypothesisViolated("; ".join(report.failures))
    order = list(A.vertices)
    remaining = list(order)
    cur = A
    steps = []
    while remaining:
        x = sorted(P.maximal(remaining), key=order.index)[0]
        ex = cur.idempotent(x)
        I = cur.ideal([ex])
        Px = regular_projective(cur, x)
        mult, gens, blocks = {}, {}, []
        eAe = len(cur.peirce_block(x, x))
        for y in remaining:
            Py = regular_projective(cur, y)
            E = Py.idempotent_matrix(x)
            layer = stable_closure(Py, transpose(E, Py.dim))
            ex_layer = rank(transpose(E, Py.dim)) if Py.dim else 0
            if ex_layer and (eAe == 0 or ex_layer % eAe):
                raise HypothesisViolated(
                    "dim e_%s A e_%s = %d is not a multiple of dim e_%s A e_%s = %d"
                    % (x, y, ex_layer, x, x, eAe)
                )
            k = ex_layer // eAe if eAe else 0
            mult[y] = k
            if not k:
                gens[y] = []
                continue
            Vp = Py.restrict(layer, check=False)
            sm = StandardModule(x, (), Px, Px.generator, None)
            try:
                W = _layer_witness(sm, Vp, k)
            except (NotIsomorphic, IsomorphismUndecided) as exc:
                raise WitnessFailure("A e_%s A e_%s is not (A e_%s)^%d: %s" % (x, y, x, k, exc)) from None
            # to algebra coordinates: Vp coords -> Py coords -> algebra
            in_Py = mat_mul(transpose(layer.basis, Py.dim), W)
            in_A = mat_mul(transpose(Py.ambient, cur.dim), in_Py)
            blocks.append(in_A)
            gens[y] = []
            for i in range(k):
                v = [0] * (k * Px.dim)
                v[i * Px.dim:(i + 1) * Px.dim] = Px.generator
                gens[y].append(mat_vec(in_A, v))
        witness = [sum((b[i] for b in blocks), []) for i in range(cur.dim)] if blocks else [[] for _ in range(cur.dim)]
        if sum(mult.values()) * Px.dim != I.dim:
            raise WitnessFailure(
                "dim A e_%s A = %d but %d copies of A e_%s have dim %d"
                % (x, I.dim, sum(mult.values()), x, sum(mult.values()) * Px.dim)
            )
        remaining.remove(x)
        quo, proj = cur.quotient(I, keep=tuple(remaining))
        steps.append(HeredityStep(x, tuple(remaining), cur, I, mult, gens, witness, quo, proj))
        cur = quo
    cert = HeredityChainCertificate(A, P, [s.vertex for s in steps], steps)
    problems = cert.verify()
    if problems:
        raise WitnessFailure("; ".join(problems))
    return cert
