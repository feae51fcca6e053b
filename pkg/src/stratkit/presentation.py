"""Quivers, paths and the line-oriented presentation format.

Composition convention: ``u*v`` means "u after v", so the source of ``u*v``
is the source of ``v``. A path is stored as the tuple of its arrows in
written order, leftmost arrow applied last.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
import re

from .errors import (
    NonComposablePath,
    NonHomogeneousRelation,
    PresentationSyntaxError,
    UnknownSymbol,
)
from .fields import QQ, GF


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    def is_trivial(self):
        return not self.arrows


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (name, source, target) in declaration order

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationSyntaxError("duplicate vertex label")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationSyntaxError("duplicate arrow name")
        if set(names) & set(self.vertices):
            raise PresentationSyntaxError("arrow names must differ from vertex labels")
        for name, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise UnknownSymbol("arrow %s uses an undeclared vertex" % name)

    def arrow(self, name):
        for a in self.arrows:
            if a[0] == name:
                return a
        raise UnknownSymbol(name)

    def arrow_index(self, name):
        return [a[0] for a in self.arrows].index(name)

    def vertex_index(self, v):
        return self.vertices.index(v)

    def trivial(self, v):
        return Path(v, v, ())

    def arrow_path(self, name):
        _, s, t = self.arrow(name)
        return Path(s, t, (name,))

    def path_from_arrows(self, arrows):
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("use trivial() for length-zero paths")
        for left, right in zip(arrows, arrows[1:]):
            if self.arrow(left)[1] != self.arrow(right)[2]:
                raise NonComposablePath("%s*%s" % (left, right))
        return Path(self.arrow(arrows[-1])[1], self.arrow(arrows[0])[2], arrows)

    def order_key(self, p: Path):
        """Length-lexicographic key; arrows compared by declaration order."""
        if not p.arrows:
            return (0, (self.vertex_index(p.source),))
        idx = {a[0]: i for i, a in enumerate(self.arrows)}
        return (len(p.arrows), tuple(idx[a] for a in p.arrows))


def compose(u: Path, v: Path) -> Path:
    """u after v; raises NonComposablePath when the endpoints do not match."""
    if u.source != v.target:
        raise NonComposablePath("cannot compose %r after %r" % (u, v))
    return Path(v.source, u.target, u.arrows + v.arrows)


def path_label(p: Path) -> str:
    if not p.arrows:
        return p.source
    parts = []
    i = 0
    arrows = p.arrows
    while i < len(arrows):
        j = i
        while j < len(arrows) and arrows[j] == arrows[i]:
            j += 1
        n = j - i
        parts.append(arrows[i] if n == 1 else "%s^%d" % (arrows[i], n))
        i = j
    return "*".join(parts)


@dataclass
class Presentation:
    field: object
    quiver: Quiver
    params: dict = dc_field(default_factory=dict)
    relations: list = dc_field(default_factory=list)  # list of {Path: scalar}
    order: list = dc_field(default_factory=list)  # covering pairs (x, y) meaning x < y

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.field == other.field
            and self.quiver == other.quiver
            and self.params == other.params
            and self.relations == other.relations
            and self.order == other.order
        )

    def relation_degree(self):
        return max((p.length for r in self.relations for p in r), default=0)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def _split_terms(text):
    text = text.strip()
    if not text:
        raise PresentationSyntaxError("empty linear combination")
    if text[0] not in "+-":
        text = "+" + text
    pieces = _TERM_SPLIT.split(text)
    # pieces: ['', sign, term, sign, term, ...]
    if pieces[0].strip():
        raise PresentationSyntaxError("cannot parse %r" % text)
    out = []
    for k in range(1, len(pieces), 2):
        sign, term = pieces[k], pieces[k + 1].strip()
        if not term:
            raise PresentationSyntaxError("dangling sign in %r" % text)
        out.append((sign, term))
    return out


_NUMBER = re.compile(r"^\d+(/\d+)?$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def _parse_term(sign, term, field, quiver, params, lineno):
    coeff = field.one if sign == "+" else -field.one
    path = None
    factors = []
    for raw in term.split("*"):
        raw = raw.strip()
        if not raw:
            raise PresentationSyntaxError("empty factor in %r" % term, lineno)
        base, _, power = raw.partition("^")
        if power:
            if not power.isdigit() or int(power) < 1:
                raise PresentationSyntaxError("bad exponent in %r" % raw, lineno)
            factors.extend([base.strip()] * int(power))
        else:
            factors.append(base)
    for f in factors:
        if _NUMBER.match(f):
            coeff = coeff * field.parse(f)
        elif not _NAME.match(f):
            raise PresentationSyntaxError("bad factor %r" % f, lineno)
        elif f in params:
            coeff = coeff * params[f]
        elif f in quiver.vertices:
            p = quiver.trivial(f)
            path = p if path is None else compose(path, p)
        elif f in {a[0] for a in quiver.arrows}:
            p = quiver.arrow_path(f)
            path = p if path is None else compose(path, p)
        else:
            raise UnknownSymbol("unknown symbol %r" % f)
    if path is None:
        raise PresentationSyntaxError("term %r has no path factor" % term, lineno)
    return coeff, path


def parse_combination(text, field, quiver, params, lineno=None):
    """Parse ``lhs`` or ``lhs = rhs`` into a {Path: scalar} dict (lhs - rhs)."""
    sides = text.split("=")
    if len(sides) > 2:
        raise PresentationSyntaxError("more than one '='", lineno)
    out = {}
    for side_sign, side in zip((1, -1), sides):
        if side.strip() == "0":
            continue
        for sign, term in _split_terms(side):
            try:
                c, p = _parse_term(sign, term, field, quiver, params, lineno)
            except NonComposablePath as exc:
                raise NonComposablePath("line %s: %s" % (lineno, exc)) from None
            out[p] = out.get(p, field.zero) + (c if side_sign == 1 else -c)
    return {p: c for p, c in out.items() if c != 0}


def parse_presentation(text: str, overrides=None) -> Presentation:
    """Parse the line-oriented presentation format.

    ``overrides`` maps parameter names to values (strings or numbers) that
    replace the PARAM lines of the file.
    """
    overrides = dict(overrides or {})
    field = None
    raw_params = {}
    vertices = None
    arrows = []
    rel_lines = []
    order_lines = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "FIELD":
            parts = rest.split()
            if parts == ["rational"]:
                field = QQ
            elif len(parts) == 2 and parts[0] == "prime" and parts[1].isdigit():
                try:
                    field = GF(int(parts[1]))
                except ValueError as exc:
                    raise PresentationSyntaxError(str(exc), lineno) from None
            else:
                raise PresentationSyntaxError("bad FIELD line", lineno)
        elif key == "PARAM":
            m = re.match(r"^([A-Za-z_]\w*)\s*=\s*(-?\d+(?:/\d+)?)$", rest)
            if not m:
                raise PresentationSyntaxError("bad PARAM line", lineno)
            raw_params[m.group(1)] = m.group(2)
        elif key == "VERTICES":
            vertices = tuple(rest.split())
            if not vertices:
                raise PresentationSyntaxError("no vertices", lineno)
        elif key == "ARROW":
            m = re.match(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", rest)
            if not m:
                raise PresentationSyntaxError("bad ARROW line", lineno)
            arrows.append((m.group(1), m.group(2), m.group(3)))
        elif key == "REL":
            rel_lines.append((lineno, rest))
        elif key == "ORDER":
            m = re.match(r"^(\S+)\s*<\s*(\S+)$", rest)
            if not m:
                raise PresentationSyntaxError("bad ORDER line", lineno)
            order_lines.append((lineno, m.group(1), m.group(2)))
        else:
            raise PresentationSyntaxError("unknown keyword %r" % key, lineno)
    if field is None:
        field = QQ
    if vertices is None:
        raise PresentationSyntaxError("missing VERTICES line")
    for name, value in overrides.items():
        if name not in raw_params:
            raise UnknownSymbol("override for undeclared parameter %r" % name)
        raw_params[name] = str(value)
    params = {name: field.parse(value) for name, value in raw_params.items()}
    for name in params:
        if name in vertices or name in {a[0] for a in arrows}:
            raise PresentationSyntaxError("parameter %r shadows a quiver symbol" % name)
    quiver = Quiver(vertices, tuple(arrows))
    relations = []
    for lineno, body in rel_lines:
        rel = parse_combination(body, field, quiver, params, lineno)
        ends = {(p.source, p.target) for p in rel}
        if len(ends) > 1:
            raise NonHomogeneousRelation(
                "line %d: relation mixes endpoint pairs %s" % (lineno, sorted(ends))
            )
        if rel:
            relations.append(rel)
    order = []
    for lineno, x, y in order_lines:
        for v in (x, y):
            if v not in vertices:
                raise UnknownSymbol("line %d: ORDER uses unknown vertex %r" % (lineno, v))
        order.append((x, y))
    return Presentation(field, quiver, params, relations, order)


def load_presentation(path, overrides=None) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), overrides)


def render_presentation(p: Presentation) -> str:
    """Inverse of parse_presentation; parameters are written out but relations
    carry resolved coefficients."""
    f = p.field
    lines = [f.describe()]
    for name, value in p.params.items():
        lines.append("PARAM %s = %s" % (name, f.render(value)))
    lines.append("VERTICES " + " ".join(p.quiver.vertices))
    for name, s, t in p.quiver.arrows:
        lines.append("ARROW %s : %s -> %s" % (name, s, t))
    for rel in p.relations:
        terms = []
        for path in sorted(rel, key=p.quiver.order_key, reverse=True):
            c = rel[path]
            word = "*".join(path.arrows) if path.arrows else path.source
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
            else:
                sign, mag = "+", c
            mag_s = f.render(mag)
            term = word if mag_s == "1" else "%s*%s" % (mag_s, word)
            terms.append((sign, term))
        body = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, term in terms[1:]:
            body += " %s %s" % (sign, term)
        lines.append("REL " + body)
    for x, y in p.order:
        lines.append("ORDER %s < %s" % (x, y))
    return "\n".join(lines) + "\n"
