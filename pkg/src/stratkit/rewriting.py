"""Rewriting systems for path algebras and the normal-form basis they produce.

Completion resolves overlap ambiguities between leading path monomials
(Buchberger/Knuth-Bendix style, length-lexicographic order). Once every
ambiguity resolves, the irreducible paths form a basis of the quotient
(Bergman's Diamond Lemma).
"""

from __future__ import annotations

from dataclasses import dataclass
import heapq
import random

from .errors import CompletionOverflow, NotFinite, NotFiniteWithinBound
from .presentation import Path, Presentation, Quiver, compose, path_label

DEFAULT_BOUND = 8
DEFAULT_RULE_CAP = 10_000


def _visited(quiver: Quiver, path: Path):
    out = {path.source, path.target}
    for name in path.arrows:
        _, s, t = quiver.arrow(name)
        out.add(s)
        out.add(t)
    return out


def _find(word, sub):
    n, k = len(word), len(sub)
    return [i for i in range(n - k + 1) if word[i:i + k] == sub]


def _mul_left(quiver, arrows, poly):
    """path(arrows) * poly"""
    if not arrows:
        return dict(poly)
    u = quiver.path_from_arrows(arrows)
    return {compose(u, p): c for p, c in poly.items()}


def _mul_right(quiver, poly, arrows):
    """poly * path(arrows)"""
    if not arrows:
        return dict(poly)
    v = quiver.path_from_arrows(arrows)
    return {compose(p, v): c for p, c in poly.items()}


def _axpy(acc, c, poly):
    for p, d in poly.items():
        s = acc.get(p, 0) + c * d
        if s == 0:
            acc.pop(p, None)
        else:
            acc[p] = s


@dataclass(frozen=True)
class RewriteSystem:
    quiver: Quiver
    field: object
    order: str
    rules: tuple  # ((lead Path, tail {Path: scalar}), ...)
    normal_forms: tuple
    degree_bound: int
    killed: frozenset = frozenset()

    def _occurrences(self, path):
        """All (rule index, position) at which a rule's lead occurs in path."""
        out = []
        for i, (lead, _) in enumerate(self.rules):
            for pos in _find(path.arrows, lead.arrows):
                out.append((i, pos))
        return out

    def _rewrite_at(self, path, rule_index, pos):
        lead, tail = self.rules[rule_index]
        k = len(lead.arrows)
        left, right = path.arrows[:pos], path.arrows[pos + k:]
        return _mul_right(self.quiver, _mul_left(self.quiver, left, tail), right)

    def reduce_once(self, path):
        """One rewrite step at the first matching rule; None if irreducible."""
        if self.killed and _visited(self.quiver, path) & self.killed:
            return {}
        for i, (lead, _) in enumerate(self.rules):
            hits = _find(path.arrows, lead.arrows)
            if hits:
                return self._rewrite_at(path, i, hits[0])
        return None

    def is_irreducible(self, path):
        return self.reduce_once(path) is None

    def normal_form(self, expr):
        key = self.quiver.order_key
        work = {p: c for p, c in expr.items() if c != 0}
        out = {}
        while work:
            p = max(work, key=key)
            c = work.pop(p)
            r = self.reduce_once(p)
            if r is None:
                _axpy(out, c, {p: 1})
            else:
                _axpy(work, c, r)
        return out

    def reduce_randomly(self, expr, rng: random.Random):
        """Normal form by applying rewrites at random terms and positions."""
        key = self.quiver.order_key
        work = {p: c for p, c in expr.items() if c != 0}
        while True:
            reducible = []
            for p in sorted(work, key=key):
                if self.killed and _visited(self.quiver, p) & self.killed:
                    reducible.append((p, None))
                    continue
                occ = self._occurrences(p)
                if occ:
                    reducible.append((p, occ))
            if not reducible:
                return work
            p, occ = rng.choice(reducible)
            c = work.pop(p)
            if occ is None:
                continue
            i, pos = rng.choice(occ)
            _axpy(work, c, self._rewrite_at(p, i, pos))

    def overlaps(self):
        """All overlap ambiguities (i, j, k): suffix of lead i of length k equals
        prefix of lead j."""
        out = []
        for i, (l1, _) in enumerate(self.rules):
            for j, (l2, _) in enumerate(self.rules):
                a, b = l1.arrows, l2.arrows
                for k in range(1, min(len(a), len(b))):
                    if a[-k:] == b[:k]:
                        out.append((i, j, k))
        return out

    def check_local_confluence(self):
        """Resolve every overlap ambiguity; returns the list of unresolved ones."""
        bad = []
        for i, j, k in self.overlaps():
            s = _s_poly(self.quiver, self.rules[i], self.rules[j], k)
            if self.normal_form(s):
                bad.append((i, j, k))
        return bad


def _s_poly(quiver, r1, r2, k):
    (l1, t1), (l2, t2) = r1, r2
    u = l1.arrows[: len(l1.arrows) - k]
    v = l2.arrows[k:]
    s = _mul_right(quiver, t1, v)
    _axpy(s, -1, _mul_left(quiver, u, t2))
    return s


def irreducible_paths(quiver, rules, killed, max_length):
    """Irreducible paths of length <= max_length, grouped by length."""
    probe = RewriteSystem(quiver, None, "", tuple(rules), (), max_length, frozenset(killed))
    layer = [quiver.trivial(v) for v in quiver.vertices if v not in killed]
    by_len = [layer]
    for _ in range(max_length):
        nxt = []
        for p in layer:
            for name, s, t in quiver.arrows:
                if s != p.target:
                    continue
                q = Path(p.source, t, (name,) + p.arrows)
                if probe.is_irreducible(q):
                    nxt.append(q)
        by_len.append(nxt)
        layer = nxt
        if not nxt:
            break
    return by_len


def complete_rewriting(
    p: Presentation, degree_bound: int = DEFAULT_BOUND, max_rules: int = DEFAULT_RULE_CAP
) -> RewriteSystem:
    """Complete the relations of ``p`` into a locally confluent rewriting system.

    Overlaps longer than ``degree_bound`` are postponed; if irreducible paths of
    length ``degree_bound`` remain, finiteness is not established and
    NotFiniteWithinBound is raised. Otherwise the postponed overlaps are
    resolved as well, so the returned system is fully locally confluent.
    """
    if degree_bound < p.relation_degree():
        raise ValueError(
            "degree bound %d below relation degree %d" % (degree_bound, p.relation_degree())
        )
    quiver = p.quiver
    key = quiver.order_key
    rules = {}  # id -> (lead, tail)
    killed = set()
    next_id = [0]
    pairs = []  # heap of (overlap length, id1, id2, k)
    deferred = []

    def current():
        return RewriteSystem(
            quiver, p.field, "", tuple(rules[i] for i in sorted(rules)), (),
            degree_bound, frozenset(killed),
        )

    def push_pairs(new_id):
        lead_new = rules[new_id][0].arrows
        for other in list(rules):
            lead_o = rules[other][0].arrows
            combos = [(new_id, other, lead_new, lead_o)]
            if other != new_id:
                combos.append((other, new_id, lead_o, lead_new))
            for i, j, a, b in combos:
                for k in range(1, min(len(a), len(b))):
                    if a[-k:] == b[:k]:
                        heapq.heappush(pairs, (len(a) + len(b) - k, i, j, k))

    def add(poly):
        queue = [poly]
        while queue:
            rs = current()
            f = rs.normal_form(queue.pop())
            if not f:
                continue
            lead = max(f, key=key)
            lc = f[lead]
            tail = {q: -c / lc for q, c in f.items() if q != lead}
            if lead.is_trivial():
                killed.add(lead.source)
                for rid in list(rules):
                    l, t = rules.pop(rid)
                    g = dict(t)
                    _axpy(g, -1, {l: 1})
                    queue.append(g)
                continue
            for rid in list(rules):
                l, t = rules[rid]
                if _find(l.arrows, lead.arrows):
                    del rules[rid]
                    g = dict(t)
                    _axpy(g, -1, {l: 1})
                    queue.append(g)
            rid = next_id[0]
            next_id[0] += 1
            rules[rid] = (lead, tail)
            if len(rules) > max_rules:
                raise CompletionOverflow("more than %d rules" % max_rules)
            push_pairs(rid)

    for rel in p.relations:
        add(dict(rel))

    def drain(defer):
        while pairs:
            length, i, j, k = heapq.heappop(pairs)
            if i not in rules or j not in rules:
                continue
            if defer and length > degree_bound:
                deferred.append((length, i, j, k))
                continue
            add(_s_poly(quiver, rules[i], rules[j], k))

    drain(defer=True)
    by_len = irreducible_paths(quiver, [rules[i] for i in sorted(rules)], killed, degree_bound)
    if len(by_len) > degree_bound and by_len[degree_bound]:
        raise NotFiniteWithinBound(
            "irreducible paths of length %d persist, e.g. %s"
            % (degree_bound, path_label(by_len[degree_bound][0]))
        )
    for item in deferred:
        heapq.heappush(pairs, item)
    drain(defer=False)

    # tail-reduce for a canonical final system
    final = current()
    reduced = tuple((lead, final.normal_form(tail)) for lead, tail in final.rules)
    reduced = tuple(sorted(reduced, key=lambda r: key(r[0])))
    by_len = irreducible_paths(quiver, reduced, killed, degree_bound)
    nfs = tuple(sorted((q for layer in by_len for q in layer), key=key))
    arrow_order = "<".join(a[0] for a in quiver.arrows)
    rs = RewriteSystem(
        quiver, p.field, "length-lex(%s)" % arrow_order, reduced, nfs,
        degree_bound, frozenset(killed),
    )
    bad = rs.check_local_confluence()
    if bad:  # pragma: no cover - completion invariant
        raise RuntimeError("completion left unresolved ambiguities %r" % bad)
    return rs


def normal_form(rs: RewriteSystem, expr):
    return rs.normal_form(expr)


def build_algebra(rs: RewriteSystem):
    """Materialise the structure constants on the normal-form basis."""
    from .algebra import AlgebraTable

    if rs.normal_forms and rs.normal_forms[-1].length >= rs.degree_bound:
        raise NotFinite("normal forms reach the degree bound")
    basis = list(rs.normal_forms)
    index = {q: i for i, q in enumerate(basis)}
    n = len(basis)
    F = rs.field
    zero = F.zero

    def to_vec(poly):
        v = [zero] * n
        for q, c in poly.items():
            v[index[q]] = F(c)
        return v

    table = []
    for u in basis:
        row = []
        for w in basis:
            if u.source != w.target:
                row.append([zero] * n)
            else:
                row.append(to_vec(rs.normal_form({compose(u, w): F.one})))
        table.append(row)
    idem = {}
    for v in rs.quiver.vertices:
        t = rs.quiver.trivial(v)
        idem[v] = to_vec(rs.normal_form({t: F.one}))
    gens = list(idem.values())
    for name, _, _ in rs.quiver.arrows:
        vec = to_vec(rs.normal_form({rs.quiver.arrow_path(name): F.one}))
        if any(x != 0 for x in vec):
            gens.append(vec)
    labels = [path_label(q) for q in basis]
    return AlgebraTable(F, labels, table, idem, generators=gens, paths=tuple(basis))
