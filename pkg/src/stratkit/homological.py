"""Projective resolutions, Ext and Tor dimensions, and the certificates for
the embedding of A(Y)-modules into A-modules."""

from __future__ import annotations

from dataclasses import dataclass, field
import random

from .algebra import AlgebraTable
from .errors import CertificateFailure, HypothesisViolated, NotTruncatedModule
from .linalg import Subspace, identity, mat_mul, mat_vec, nullspace, rank, solve, transpose
from .modules import (
    Module,
    _module_from,
    direct_sum,
    hom_space,
    inflate,
    regular_projective,
    stable_closure,
    support,
)
from .radical import radical_and_simples
from .stratification import Poset, check_hypotheses, deflate, truncate

SEED = 1729
DEFAULT_BOUND = 8


@dataclass(frozen=True)
class AtLeast:
    """A dimension that is only known to be at least ``bound``."""

    bound: int

    def __str__(self):
        return "≥ %d" % self.bound

    def to_json(self):
        return {"at_least": self.bound}


def dim_to_json(d):
    return d.to_json() if isinstance(d, AtLeast) else d


def opposite_of(A: AlgebraTable):
    op = getattr(A, "_opposite", None)
    if op is None:
        op = A.opposite()
        A._opposite = op
        op._opposite = A
    return op


# -- resolutions -------------------------------------------------------------


@dataclass
class Term:
    """P = direct sum of A e_{x_i}; ``slots[i]`` is the summand A e_{x_i}."""

    vertices: list
    slots: list
    module: Module
    offsets: list

    def generator(self, i):
        v = [0] * self.module.dim
        s = self.slots[i]
        v[self.offsets[i]:self.offsets[i] + s.dim] = s.generator
        return v

    def components(self, p):
        """Slot components of p as algebra elements."""
        out = []
        for s, off in zip(self.slots, self.offsets):
            c = p[off:off + s.dim]
            out.append(mat_vec(transpose(s.ambient, s.algebra.dim), c) if s.dim else [])
        return out


def _term(A, vertices):
    slots = [regular_projective(A, x) for x in vertices]
    offsets, off = [], 0
    for s in slots:
        offsets.append(off)
        off += s.dim
    module = direct_sum(slots) if slots else _module_from(A, [], 0, "0", "left")
    return Term(list(vertices), slots, module, offsets)


def _cover_matrix(term, M, images):
    """Matrix of P -> M sending generator i to images[i]."""
    cols = []
    for s, v in zip(term.slots, images):
        for u in s.ambient:
            cols.append(M.act(u, v))
    return transpose(cols, M.dim) if cols else [[] for _ in range(M.dim)]


def _choose_generators(M: Module, rad_basis, rng):
    """Generators (x, v) with v in e_x M. With ``rad_basis`` the choice is
    greedy modulo rad M (a projective cover for basic algebras); without it
    every basis vector of every e_x M is taken."""
    A = M.algebra
    gens = []
    if M.dim == 0:
        return gens
    if rad_basis is None:
        for x in A.vertices:
            for v in Subspace(transpose(M.idempotent_matrix(x), M.dim), M.dim).basis:
                gens.append((x, v))
        return gens
    S = Subspace([M.act(r, m) for r in rad_basis for m in identity(M.dim)], M.dim)
    for x in A.vertices:
        ex = Subspace(transpose(M.idempotent_matrix(x), M.dim), M.dim).basis
        while ex and S.dim < M.dim:
            v = [0] * M.dim
            for b in ex:
                c = rng.randint(1, 7)
                v = [a + c * bb for a, bb in zip(v, b)]
            if S.contains(v):
                v = next((b for b in ex if not S.contains(b)), None)
                if v is None:
                    break
            gens.append((x, v))
            S = stable_closure(M, S.basis + [v])
    return gens


@dataclass
class Resolution:
    """P_0 <- P_1 <- ... with augmentation P_0 -> V. ``maps[0]`` is the
    augmentation, ``maps[n]`` the differential P_n -> P_{n-1}."""

    algebra: AlgebraTable
    module: Module
    bound: int
    minimal: bool
    terms: list
    maps: list
    rad_basis: list = field(repr=False, default=None)

    def length(self):
        """Index of the last nonzero term (projective dimension when the
        resolution stopped before the bound), or None if V = 0."""
        nz = [n for n, t in enumerate(self.terms) if t.vertices]
        return nz[-1] if nz else None

    def verify(self):
        """d o d = 0, exactness by rank bookkeeping, module maps, and (if
        minimal) differentials into the radical."""
        bad = []
        V = self.module
        ranks = []
        for n, (t, D) in enumerate(zip(self.terms, self.maps)):
            tgt = V if n == 0 else self.terms[n - 1].module
            if t.module.dim and tgt.dim:
                for g in self.algebra.generators:
                    lhs = mat_mul(D, t.module.element_matrix(g))
                    rhs = mat_mul(tgt.element_matrix(g), D)
                    if lhs != rhs and any(a != b for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2)):
                        bad.append("map %d is not a module map" % n)
                        break
            r = rank(D) if t.module.dim and tgt.dim else 0
            ranks.append(r)
            if n >= 1 and t.module.dim and self.maps[n - 1] and tgt.dim:
                prev = self.maps[n - 1]
                src_prev = V if n == 1 else self.terms[n - 2].module
                if src_prev.dim:
                    dd = mat_mul(prev, D)
                    if any(c != 0 for row in dd for c in row):
                        bad.append("d_%d d_%d != 0" % (n - 1, n))
        if V.dim and ranks and ranks[0] != V.dim:
            bad.append("augmentation not surjective")
        for n in range(len(self.terms) - 1):
            if ranks[n + 1] != self.terms[n].module.dim - ranks[n]:
                bad.append("not exact at P_%d" % n)
        if self.minimal and self.rad_basis is not None:
            R = Subspace(self.rad_basis, self.algebra.dim)
            for n in range(1, len(self.terms)):
                D = self.maps[n]
                t = self.terms[n]
                for i in range(len(t.vertices)):
                    img = mat_vec(D, t.generator(i))
                    if any(not R.contains(c) for c in self.terms[n - 1].components(img) if c):
                        bad.append("d_%d leaves the radical" % n)
                        break
        return bad


def projective_resolution(A: AlgebraTable, V: Module, N: int = DEFAULT_BOUND, minimal=True, rad_basis=None):
    """Terms P_0..P_{N+1}, enough to read off Ext^n and Tor_n for n <= N."""
    rng = random.Random(SEED)
    if minimal and rad_basis is None:
        rad_basis = radical_and_simples(A).radical.basis
    cur = V
    embed = None  # matrix: cur coords -> previous term coords
    terms, maps = [], []
    for n in range(N + 2):
        gens = _choose_generators(cur, rad_basis if minimal else None, rng)
        term = _term(A, [x for x, _ in gens])
        cover = _cover_matrix(term, cur, [v for _, v in gens])
        D = cover if embed is None else (mat_mul(embed, cover) if term.module.dim else [[] for _ in embed])
        terms.append(term)
        maps.append(D)
        if not term.module.dim:
            break
        K = Subspace(nullspace(cover, term.module.dim) if cur.dim else identity(term.module.dim), term.module.dim)
        if K.dim == 0:
            break
        cur = term.module.restrict(K, check=False)
        embed = transpose(K.basis, term.module.dim)
    return Resolution(A, V, N, minimal, terms, maps, rad_basis)


# -- (co)chain complexes -------------------------------------------------------


def _slot_spaces(term, W):
    return [Subspace(transpose(W.idempotent_matrix(x), W.dim), W.dim) if W.dim else Subspace([], 0)
            for x in term.vertices]


def _evaluate(term, spaces, W, p, w_coords):
    """phi(p) for the cochain phi given by slot coordinates ``w_coords``."""
    out = [0] * W.dim
    off = 0
    for comp, S in zip(term.components(p), spaces):
        c = w_coords[off:off + S.dim]
        off += S.dim
        if not S.dim or not any(x != 0 for x in c):
            continue
        w = S.from_coords(c)
        out = [a + b for a, b in zip(out, W.act(comp, w))]
    return out


def _pullback_matrix(src_term, src_spaces, tgt_term, tgt_spaces, W, images):
    """Cochain map Hom(src, W) -> Hom(tgt, W), phi -> (phi(images[i]))_i,
    where images[i] lies in e_{x_i} src for the i-th slot of tgt."""
    dsrc = sum(S.dim for S in src_spaces)
    rows = sum(S.dim for S in tgt_spaces)
    cols = []
    for k in range(dsrc):
        e = [0] * dsrc
        e[k] = 1
        col = []
        for p, S in zip(images, tgt_spaces):
            col.extend(S.coords(_evaluate(src_term, src_spaces, W, p, e)) if S.dim else [])
        cols.append(col)
    return transpose(cols, rows) if cols else [[] for _ in range(rows)]


def _coboundaries(res: Resolution, W: Module, top):
    """Cochain dims and coboundary matrices delta_n : C^{n-1} -> C^n, n <= top."""
    spaces = [_slot_spaces(t, W) for t in res.terms]
    dims = [sum(S.dim for S in sp) for sp in spaces]
    deltas = {}
    for n in range(1, min(top, len(res.terms) - 1) + 1):
        t = res.terms[n]
        images = [mat_vec(res.maps[n], t.generator(i)) for i in range(len(t.vertices))]
        deltas[n] = _pullback_matrix(res.terms[n - 1], spaces[n - 1], t, spaces[n], W, images)
    return spaces, dims, deltas


def _rank(M, rows, cols):
    return rank(M) if rows and cols else 0


@dataclass
class ExtTable:
    source: str
    target: str
    dims: list

    def to_json(self):
        return {"from": self.source, "to": self.target, "dims": self.dims}


def ext_dims(A: AlgebraTable, V: Module, W: Module, N: int = DEFAULT_BOUND, resolution=None, minimal=True):
    res = resolution or projective_resolution(A, V, N, minimal)
    _, dims, deltas = _coboundaries(res, W, N + 1)
    out = []
    for n in range(N + 1):
        if n >= len(res.terms):
            out.append(0)
            continue
        dn = dims[n]
        r_in = _rank(deltas[n], dn, dims[n - 1]) if n in deltas else 0
        r_out = _rank(deltas[n + 1], dims[n + 1], dn) if n + 1 in deltas else 0
        out.append(dn - r_in - r_out)
    return ExtTable(V.name, W.name, out)


@dataclass
class TorTable:
    right: str
    left: str
    dims: list

    def to_json(self):
        return {"right": self.right, "left": self.left, "dims": self.dims}


def _tensor_boundaries(res: Resolution, W: Module, top):
    """Chain dims and boundary matrices of P_n (x) W = sum e_{x_i} W; the
    resolution is over the opposite algebra, W a left module."""
    spaces = [_slot_spaces(t, W) for t in res.terms]
    dims = [sum(S.dim for S in sp) for sp in spaces]
    bounds = {}
    for n in range(1, min(top, len(res.terms) - 1) + 1):
        t, s = res.terms[n], res.terms[n - 1]
        cols = []
        for i in range(len(t.vertices)):
            comps = s.components(mat_vec(res.maps[n], t.generator(i)))
            for w in spaces[n][i].basis:
                col = []
                for m, S in zip(comps, spaces[n - 1]):
                    col.extend(S.coords(W.act(m, w)) if S.dim else [])
                cols.append(col)
        bounds[n] = transpose(cols, dims[n - 1]) if cols else [[] for _ in range(dims[n - 1])]
    return dims, bounds


def tor_dims(A: AlgebraTable, R: Module, W: Module, N: int = DEFAULT_BOUND, resolution=None):
    """dim Tor_n^A(R, W) for a right module R (a module over the opposite table)."""
    Aop = R.algebra
    res = resolution or projective_resolution(Aop, R, N)
    dims, bounds = _tensor_boundaries(res, W, N + 1)
    out = []
    for n in range(N + 1):
        if n >= len(res.terms):
            out.append(0)
            continue
        r_out = _rank(bounds[n], dims[n - 1], dims[n]) if n in bounds else 0
        r_in = _rank(bounds[n + 1], dims[n], dims[n + 1]) if n + 1 in bounds else 0
        out.append(dims[n] - r_out - r_in)
    return TorTable(R.name, W.name, out)


def _top_degree(dims, N):
    nz = [n for n, d in enumerate(dims) if d]
    if not nz:
        return 0
    if nz[-1] >= N:
        return AtLeast(N)
    return nz[-1]


def _dim_max(values):
    out = 0
    for v in values:
        if isinstance(v, AtLeast):
            return v
        out = max(out, v)
    return out


# -- truncation bimodule ---------------------------------------------------------


def segment_modules(A: AlgebraTable, tq):
    """B = A(Y) as a left A-module and as a right A-module (over A^op)."""
    B = tq.table
    Aop = opposite_of(A)
    left, right = [], []
    for k in range(A.dim):
        u = [tq.projection[i][k] for i in range(B.dim)]
        left.append(B.left_matrix(u) if B.dim else [])
        right.append(B.right_matrix(u) if B.dim else [])
    BL = _module_from(A, left, B.dim, "B", "left")
    BR = _module_from(Aop, right, B.dim, "B", "right")
    return BL, BR


def right_flat_dimension(A: AlgebraTable, tq, N: int = DEFAULT_BOUND, simples=None, resolution=None):
    """max q <= N with Tor_q(A(Y), S) != 0 over the simple left A-modules."""
    if tq.table.dim == 0:
        return 0
    simples = simples if simples is not None else radical_and_simples(A).simples
    _, BR = segment_modules(A, tq)
    res = resolution or projective_resolution(opposite_of(A), BR, N)
    return _dim_max(_top_degree(tor_dims(A, BR, S, N, res).dims, N) for S in simples)


def projective_dimension(A, V, N: int = DEFAULT_BOUND, simples=None):
    simples = simples if simples is not None else radical_and_simples(A).simples
    res = projective_resolution(A, V, N)
    return _dim_max(_top_degree(ext_dims(A, V, T, N, res).dims, N) for T in simples)


def global_dimension(A: AlgebraTable, N: int = DEFAULT_BOUND, simples=None):
    """Max projective dimension over the simple modules, truncated at N."""
    if A.dim == 0:
        return 0
    simples = simples if simples is not None else radical_and_simples(A).simples
    return _dim_max(projective_dimension(A, S, N, simples) for S in simples)


# -- degree-zero maps -------------------------------------------------------------


def evaluation_check(BL: Module, one, W: Module):
    """Hom_A(B, W) -> W, phi -> phi(1): returns (dim Hom, is_iso)."""
    H = hom_space(BL, W)
    if not W.dim:
        return len(H), len(H) == 0
    vals = [mat_vec(h.matrix, one) for h in H]
    r = rank(vals) if vals else 0
    return len(H), len(H) == W.dim and r == W.dim


def tensor_check(A: AlgebraTable, tq, W: Module):
    """B (x)_A W with the multiplication map to W: returns (dim, is_iso)."""
    B = tq.table
    nb, nw = B.dim, W.dim
    if not nb or not nw:
        return 0, nw == 0
    rels = []
    BL, BR = segment_modules(A, tq)
    for k in range(A.dim):
        u = A.basis_vector(k)
        Rb = BR.element_matrix(u)  # b -> b.u
        Lw = W.element_matrix(u)
        for i in range(nb):
            for j in range(nw):
                v = [0] * (nb * nw)
                for i2 in range(nb):
                    if Rb[i2][i]:
                        v[i2 * nw + j] += Rb[i2][i]
                for j2 in range(nw):
                    if Lw[j2][j]:
                        v[i * nw + j2] -= Lw[j2][j]
                rels.append(v)
    Rel = Subspace(rels, nb * nw)
    dim_t = nb * nw - Rel.dim
    # multiplication b (x) w -> lift(b).w
    cols = []
    for i in range(nb):
        Mi = W.element_matrix(tq.lift(B.basis_vector(i)))
        for j in range(nw):
            cols.append([Mi[r][j] for r in range(nw)])
    mu = transpose(cols, nw)
    kills = all(not any(c != 0 for c in mat_vec(mu, r)) for r in Rel.basis)
    return dim_t, kills and dim_t == nw and rank(mu) == nw


# -- embedding certificate -------------------------------------------------------


@dataclass
class EmbeddingCertificate:
    segment: tuple
    bound: int
    flat_dim: object
    unit: list
    counit: list  # None when the flat dimension is not below the bound
    fullness: list
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        rows = self.unit + (self.counit or []) + self.fullness
        return all(r["ok"] for r in rows)

    @property
    def verdict(self):
        return "PASS" if self.passed else "FAIL"

    def first_failure(self):
        for r in self.unit + (self.counit or []) + self.fullness:
            if not r["ok"]:
                return r
        return None

    def to_json(self):
        return {
            "segment": list(self.segment),
            "bound": self.bound,
            "flat_dim": dim_to_json(self.flat_dim),
            "unit": self.unit,
            "counit": self.counit,
            "fullness": self.fullness,
            "notes": self.notes,
            "verdict": self.verdict,
        }


def embedding_certificate(A: AlgebraTable, P: Poset, Y, N: int = DEFAULT_BOUND, report=None, strict=False):
    report = report or check_hypotheses(A, P)
    if not report.passed:
        raise HypothesisViolated("; ".join(report.failures))
    tq = truncate(A, P, Y)
    B = tq.table
    BL, BR = segment_modules(A, tq)
    simples_A = radical_and_simples(A).simples
    simples_B = radical_and_simples(B).simples if B.dim else []
    inflated = [inflate(S, A, tq.projection, S.name) for S in simples_B]

    one = B.one() if B.dim else []
    res_BL = projective_resolution(A, BL, N) if B.dim else None
    unit = []
    for S, W in zip(simples_B, inflated):
        hd, iso = evaluation_check(BL, one, W)
        ext = ext_dims(A, BL, W, N, res_BL).dims[1:]
        unit.append({"module": S.name, "dim": W.dim, "hom_dim": hd, "evaluation_iso": iso,
                     "ext": ext, "ok": iso and not any(ext)})

    res_BR = projective_resolution(opposite_of(A), BR, N) if B.dim else None
    flat = right_flat_dimension(A, tq, N, simples_A, res_BR)
    counit = None
    notes = []
    if not isinstance(flat, AtLeast) and flat < N:
        counit = []
        for S, W in zip(simples_B, inflated):
            td, iso = tensor_check(A, tq, W)
            tor = tor_dims(A, BR, W, N, res_BR).dims[1:]
            counit.append({"module": S.name, "dim": W.dim, "tensor_dim": td, "multiplication_iso": iso,
                           "tor": tor, "ok": iso and not any(tor)})
    else:
        notes.append("right flat dimension of B is not below the bound; counit rows skipped")

    fullness = []
    for S, SA in zip(simples_B, inflated):
        rB = projective_resolution(B, S, N)
        rA = projective_resolution(A, SA, N)
        for T, TA in zip(simples_B, inflated):
            dB = ext_dims(B, S, T, N, rB).dims
            dA = ext_dims(A, SA, TA, N, rA).dims
            fullness.append({"pair": [S.name, T.name], "B": dB, "A": dA, "ok": dB == dA})
    cert = EmbeddingCertificate(tuple(tq.segment), N, flat, unit, counit, fullness, notes)
    if strict and not cert.passed:
        raise CertificateFailure(str(cert.first_failure()))
    return cert


# -- spectral corner -------------------------------------------------------------


def _lift_chain_map(res: Resolution, g, top):
    """Chain maps f_n : P_n -> P_n over the module endomorphism g of V (a matrix),
    as lists of generator images."""
    out = []
    prev = None
    for n in range(min(top, len(res.terms) - 1) + 1):
        t = res.terms[n]
        D = res.maps[n]
        imgs = []
        for i, x in enumerate(t.vertices):
            gi = t.generator(i)
            if n == 0:
                target = mat_vec(g, mat_vec(D, gi))
            else:
                target = mat_vec(prev, mat_vec(D, gi))
            U = Subspace(transpose(t.module.idempotent_matrix(x), t.module.dim), t.module.dim).basis
            DU = transpose([mat_vec(D, u) for u in U], len(target))
            c = solve(DU, target, len(U))
            if c is None:
                raise CertificateFailure("chain map does not lift at degree %d" % n)
            imgs.append([sum(ci * u[k] for ci, u in zip(c, U)) for k in range(t.module.dim)])
        out.append(imgs)
        cols = []
        for s, p in zip(t.slots, imgs):
            for u in s.ambient:
                cols.append(t.module.act(u, p))
        prev = transpose(cols, t.module.dim) if cols else []
    return out


def ext_module(A: AlgebraTable, tq, W: Module, q: int, res_BL: Resolution = None):
    """Ext^q_A(B, W) as a left B-module, (b.phi) = phi o (right multiplication by b)."""
    B = tq.table
    BL, _ = segment_modules(A, tq)
    res = res_BL or projective_resolution(A, BL, q)
    spaces, dims, deltas = _coboundaries(res, W, q + 1)
    if q >= len(res.terms):
        return _module_from(B, [], 0, "Ext^%d(B,%s)" % (q, W.name), "left")
    dq = dims[q]
    Z = Subspace(nullspace(deltas[q + 1], dq) if q + 1 in deltas and dims[q + 1] else identity(dq), dq)
    if q in deltas and dims[q - 1]:
        Bd = Subspace(transpose(deltas[q], dims[q - 1]), dq, reverse=True)
    else:
        Bd = Subspace([], dq, reverse=True)
    reps = Subspace([Bd.reduce(z) for z in Z.basis], dq).basis
    k = len(reps)
    basis_all = reps + Bd.basis
    action = []
    for i in range(B.dim):
        if not k:
            action.append([])
            continue
        g = B.right_matrix(B.basis_vector(i))
        f = _lift_chain_map(res, g, q)
        T = _pullback_matrix(res.terms[q], spaces[q], res.terms[q], spaces[q], W, f[q])
        cols = []
        for r in reps:
            c = solve(transpose(basis_all, dq), mat_vec(T, r), len(basis_all))
            cols.append(c[:k])
        action.append(transpose(cols, k))
    return _module_from(B, action, k, "Ext^%d(B,%s)" % (q, W.name), "left")


@dataclass
class SpectralReport:
    segment: tuple
    bound: int
    collapse: bool
    e_dims: list  # dim Ext^q_A(B, W)
    rows: list

    @property
    def passed(self):
        return all(r["ok"] for r in self.rows)

    def to_json(self):
        return {"segment": list(self.segment), "bound": self.bound, "collapse": self.collapse,
                "e_dims": self.e_dims, "rows": self.rows, "verdict": "PASS" if self.passed else "FAIL"}


def spectral_corner_check(A: AlgebraTable, P: Poset, Y, V: Module, W: Module, N: int = DEFAULT_BOUND):
    tq = truncate(A, P, Y)
    for M in (V, W):
        if not set(support(M)) <= set(tq.segment) or not tq.factors_through(M):
            raise NotTruncatedModule("%s is supported on %s, outside %s" % (M.name, support(M), list(tq.segment)))
    B = tq.table
    BL, _ = segment_modules(A, tq)
    res_BL = projective_resolution(A, BL, N)
    e_dims = ext_dims(A, BL, W, N, res_BL).dims
    collapse = not any(e_dims[1:])
    VB = deflate(V, tq)
    rVB = projective_resolution(B, VB, N)
    ext_A = ext_dims(A, V, W, N).dims
    rows = []
    if collapse:
        E0 = ext_module(A, tq, W, 0, res_BL)
        ext_B = ext_dims(B, VB, E0, N, rVB).dims
        for p in range(N + 1):
            rows.append({"degree": p, "A": ext_A[p], "B": ext_B[p], "ok": ext_A[p] == ext_B[p]})
    else:
        page = []
        for q in range(N + 1):
            Eq = ext_module(A, tq, W, q, res_BL) if e_dims[q] else None
            page.append(ext_dims(B, VB, Eq, N, rVB).dims if Eq is not None else [0] * (N + 1))
        for n in range(N + 1):
            total = sum(page[q][n - q] for q in range(n + 1))
            rows.append({"degree": n, "A": ext_A[n], "bound": total, "ok": ext_A[n] <= total})
    return SpectralReport(tuple(tq.segment), N, collapse, e_dims, rows)
