"""Command-line front end: ``stratkit <command> <file> [options]``.

Exit codes: 0 success or PASS, 1 certified FAIL, 2 error.
"""

from __future__ import annotations

import argparse
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
import json
import os
import sys

from . import __version__
from .errors import HypothesisViolated, StratkitError
from .homological import (
    dim_to_json,
    embedding_certificate,
    ext_dims,
    global_dimension,
    spectral_corner_check,
)
from .linalg import mat_vec, rank, solve, transpose
from .modules import inflate, regular_projective
from .presentation import parse_presentation, path_label
from .radical import radical_and_simples
from .rewriting import DEFAULT_BOUND, build_algebra, complete_rewriting
from .stratification import Poset, check_hypotheses, heredity_chain, standard_module, truncate

COMMANDS = ("basis", "peirce", "simples", "check", "chain", "ext", "certify", "report")


@dataclass
class RunConfig:
    input: str
    command: str
    bound: int = DEFAULT_BOUND
    segment: list = None
    json: bool = False
    params: dict = field(default_factory=dict)
    source: str = None
    target: str = None


class Failed(Exception):
    """A certified negative verdict (exit code 1)."""


def corpus_names():
    root = resources.files("stratkit") / "corpus"
    return sorted(p.name[:-6] for p in root.iterdir() if p.name.endswith(".strat"))


def read_source(path):
    if os.path.exists(path):
        with open(path) as fh:
            return fh.read()
    name = os.path.basename(path)
    if name.endswith(".strat"):
        name = name[:-6]
    res = resources.files("stratkit") / "corpus" / (name + ".strat")
    if res.is_file():
        return res.read_text()
    raise FileNotFoundError(path)


# -- shared pipeline state ---------------------------------------------------------


class Session:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        text = read_source(cfg.input)
        self.presentation = parse_presentation(text, cfg.params)
        # the rewriting bound never drops below the default, so small N still builds
        self.rs = complete_rewriting(self.presentation, max(cfg.bound, DEFAULT_BOUND))
        self.A = build_algebra(self.rs)
        self.P = Poset.from_presentation(self.presentation)
        self.warnings = []
        self._simples = None
        self._report = None

    @property
    def field(self):
        return self.A.field

    def simples(self):
        if self._simples is None:
            self._simples = radical_and_simples(self.A)
        return self._simples

    def hypotheses(self):
        if self._report is None:
            self._report = check_hypotheses(self.A, self.P)
        return self._report

    def segments(self):
        if self.cfg.segment is None:
            return self.P.initial_segments()
        seg = list(self.cfg.segment)
        for x in seg:
            self.A.idempotent(x)
        closed = self.P.down_closure(seg)
        if set(closed) != set(seg):
            self.warnings.append("segment %s is not down-closed; using %s" % (seg, list(closed)))
        return [closed]

    def module(self, name):
        if name.startswith("P_"):
            return regular_projective(self.A, name[2:], name)
        if name.startswith("M_"):
            return standard_module(self.A, self.P, name[2:]).module
        try:
            return self.simples().by_name(name)
        except KeyError:
            raise StratkitError(
                "unknown module %r; use a simple (%s), P_x or M_x"
                % (name, ", ".join(S.name for S in self.simples().simples))
            ) from None


def _poly_label(s, poly):
    terms = []
    for q in sorted(poly, key=s.presentation.quiver.order_key, reverse=True):
        c = s.field.render(poly[q])
        word = path_label(q)
        terms.append(word if c == "1" else "-" + word if c == "-1" else "%s*%s" % (c, word))
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _label(A, v):
    return A.label(v)


# -- commands -------------------------------------------------------------------


def cmd_basis(s: Session):
    A, rs = s.A, s.rs
    rules = ["%s -> %s" % (path_label(lead), _poly_label(s, tail)) for lead, tail in rs.rules]
    return {
        "field": s.field.describe(),
        "order": rs.order,
        "rules": rules,
        "normal_forms": list(A.labels),
        "dimension": A.dim,
    }


def cmd_peirce(s: Session):
    A = s.A
    blocks = []
    for x in A.vertices:
        for y in A.vertices:
            b = A.peirce_block(x, y)
            blocks.append({"x": x, "y": y, "dim": len(b), "basis": [_label(A, v) for v in b]})
    return {"blocks": blocks, "dimension": A.dim}


def cmd_simples(s: Session):
    sl = s.simples()
    A = s.A
    return {
        "simples": [
            {"name": S.name, "dim": S.dim, "support": S.support, "end_dim": e,
             "composition_multiplicity": m}
            for S, e, m in zip(sl.simples, sl.end_dims, sl.composition_multiplicity)
        ],
        "radical": [_label(A, v) for v in sl.radical.basis],
        "radical_dim": sl.radical.dim,
        "nilpotency": sl.nilpotency,
        "basic": sl.basic,
    }


def _filtration_json(A, cert):
    V = cert.module
    amb = transpose(V.ambient, A.dim) if V.ambient else None
    layers = []
    for y, L in zip(cert.labels, cert.witnesses):
        My = cert.standards[y]
        img = mat_vec(L, My.generator)
        layers.append({
            "standard": "M_%s" % y,
            "dim": My.module.dim,
            "generator_image": _label(A, mat_vec(amb, img)) if amb else [str(c) for c in img],
        })
    return {"layers": layers, "verified": not cert.verify()}


def cmd_check(s: Session):
    rep = s.hypotheses()
    A = s.A
    out = {
        "welldefined": {y: r.ok for y, r in rep.welldefined.items()},
        "standard_dims": {y: st.module.dim for y, st in rep.standards.items()},
        "filtrations": {
            "A%s" % x: (_filtration_json(A, c) if c is not None else None)
            for x, c in rep.filtrations.items()
        },
        "failures": rep.failures,
        "verdict": rep.verdict,
    }
    return out


def cmd_chain(s: Session):
    rep = s.hypotheses()
    if not rep.passed:
        raise Failed("hypotheses fail: " + "; ".join(rep.failures))
    cert = heredity_chain(s.A, s.P, rep)
    steps = []
    for st in cert.steps:
        B = st.algebra
        steps.append({
            "vertex": st.vertex,
            "ideal_dim": st.ideal.dim,
            "ideal_basis": [_label(B, v) for v in st.ideal.basis],
            "copies": st.n,
            "multiplicities": st.multiplicities,
            "generators": {y: [_label(B, v) for v in g] for y, g in st.generators.items()},
            "quotient_basis": list(st.quotient.labels),
            "quotient_dim": st.quotient.dim,
        })
    return {"order": cert.order, "steps": steps, "verified": not cert.verify()}


def cmd_ext(s: Session):
    if not s.cfg.source or not s.cfg.target:
        raise StratkitError("ext needs --from and --to")
    V, W = s.module(s.cfg.source), s.module(s.cfg.target)
    t = ext_dims(s.A, V, W, s.cfg.bound)
    return {"from": s.cfg.source, "to": s.cfg.target, "bound": s.cfg.bound, "dims": t.dims}


def _certify(s: Session):
    rep = s.hypotheses()
    if not rep.passed:
        raise Failed("hypotheses fail: " + "; ".join(rep.failures))
    certs = []
    for Y in s.segments():
        certs.append(embedding_certificate(s.A, s.P, Y, s.cfg.bound, rep).to_json())
    verdict = "PASS" if all(c["verdict"] == "PASS" for c in certs) else "FAIL"
    return {"certificates": certs, "verdict": verdict}


def cmd_certify(s: Session):
    return _certify(s)


def _monogenic(B):
    """``K[t]/(m(t))`` when some basis element generates B as an algebra, else None."""
    n = B.dim
    for i in range(n):
        g = B.basis_vector(i)
        powers = [B.one()]
        for _ in range(n - 1):
            powers.append(B.mul(powers[-1], g))
        if rank(powers) < n:
            continue
        top = B.mul(powers[-1], g)
        coeffs = solve(transpose(powers, n), top)
        terms = ["t^%d" % n if n > 1 else "t"]
        for k in range(n - 1, -1, -1):
            c = coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else "t" if k == 1 else "t^%d" % k
            c = -c
            neg = isinstance(c, Fraction) and c < 0
            mag = B.field.render(-c if neg else c)
            body = mag if not mono else mono if mag == "1" else "%s*%s" % (mag, mono)
            terms.append(("- " if neg else "+ ") + body)
        return "K[t]/(%s), t = %s" % (" ".join(terms), B.labels[i])
    return None


def _segment_algebra(s: Session, Y):
    tq = truncate(s.A, s.P, Y)
    B = tq.table
    products = []
    for i in range(B.dim):
        for j in range(B.dim):
            v = B.table[i][j]
            if any(c != 0 for c in v):
                products.append("%s*%s = %s" % (B.labels[i], B.labels[j], B.label(v)))
    sl = radical_and_simples(B) if B.dim else None
    return tq, {
        "segment": list(tq.segment),
        "dim": B.dim,
        "basis": list(B.labels),
        "products": products,
        "structure": _monogenic(B) if B.dim else None,
        "simples": [S.name for S in sl.simples] if sl else [],
        "semisimple": bool(sl is None or sl.radical.dim == 0),
        "global_dim": dim_to_json(global_dimension(B, s.cfg.bound, sl.simples if sl else [])),
    }


def cmd_report(s: Session):
    out = {
        "basis": cmd_basis(s),
        "peirce": cmd_peirce(s),
        "simples": cmd_simples(s),
        "check": cmd_check(s),
        "global_dim": dim_to_json(global_dimension(s.A, s.cfg.bound, s.simples().simples)),
    }
    if not s.hypotheses().passed:
        out["verdict"] = "FAIL"
        return out
    out["chain"] = cmd_chain(s)
    out["certify"] = _certify(s)
    segs, corners = [], []
    for Y in s.segments():
        tq, info = _segment_algebra(s, Y)
        segs.append(info)
        if not tq.table.dim:
            continue
        Bs = radical_and_simples(tq.table).simples
        infl = [inflate(S, s.A, tq.projection, S.name) for S in Bs]
        for V in infl:
            for W in infl:
                r = spectral_corner_check(s.A, s.P, Y, V, W, s.cfg.bound)
                corners.append({"segment": list(tq.segment), "V": V.name, "W": W.name,
                                "collapse": r.collapse, "verdict": "PASS" if r.passed else "FAIL"})
    out["segments"] = segs
    out["spectral"] = corners
    ok = out["certify"]["verdict"] == "PASS" and all(c["verdict"] == "PASS" for c in corners)
    out["verdict"] = "PASS" if ok else "FAIL"
    return out


HANDLERS = {
    "basis": cmd_basis, "peirce": cmd_peirce, "simples": cmd_simples, "check": cmd_check,
    "chain": cmd_chain, "ext": cmd_ext, "certify": cmd_certify, "report": cmd_report,
}


# -- text rendering ----------------------------------------------------------------


def _render_text(cmd, r):
    lines = []
    if cmd == "basis":
        lines.append("%s, order %s" % (r["field"], r["order"]))
        lines.append("rules:")
        lines.extend("  " + x for x in r["rules"])
        lines.append("normal forms (%d): %s" % (r["dimension"], ", ".join(r["normal_forms"])))
    elif cmd == "peirce":
        for b in r["blocks"]:
            lines.append("e_%s A e_%s  dim %d  [%s]" % (b["x"], b["y"], b["dim"], ", ".join(b["basis"])))
    elif cmd == "simples":
        for S in r["simples"]:
            lines.append("%-10s dim %d  support %s  End dim %d  [A:S] = %d"
                         % (S["name"], S["dim"], "+".join(S["support"]), S["end_dim"], S["composition_multiplicity"]))
        lines.append("radical (dim %d): [%s]" % (r["radical_dim"], ", ".join(r["radical"])))
        lines.append("nilpotency index %d, basic %s" % (r["nilpotency"], r["basic"]))
    elif cmd == "check":
        for y, ok in r["welldefined"].items():
            lines.append("M_%s well defined: %s (dim %d)" % (y, "yes" if ok else "no", r["standard_dims"][y]))
        for name, f in r["filtrations"].items():
            if f is None:
                lines.append("%s: no standard filtration" % name)
            else:
                desc = ", ".join("%s via %s" % (l["standard"], l["generator_image"]) for l in f["layers"])
                lines.append("%s: bottom to top [%s]" % (name, desc))
        lines.extend("FAIL " + x for x in r["failures"])
        lines.append("verdict: %s" % r["verdict"])
    elif cmd == "chain":
        for st in r["steps"]:
            lines.append("remove %s: I = A e_%s A, dim %d, I = (A e_%s)^%d, I = span[%s]"
                         % (st["vertex"], st["vertex"], st["ideal_dim"], st["vertex"], st["copies"],
                            ", ".join(st["ideal_basis"])))
            for y, g in st["generators"].items():
                if g:
                    lines.append("    I e_%s generated by [%s]" % (y, ", ".join(g)))
            lines.append("    quotient dim %d: [%s]" % (st["quotient_dim"], ", ".join(st["quotient_basis"])))
        lines.append("verified: %s" % r["verified"])
    elif cmd == "ext":
        lines.append("dim Ext^n(%s, %s), n = 0..%d: %s" % (r["from"], r["to"], r["bound"], r["dims"]))
    elif cmd == "certify":
        for c in r["certificates"]:
            lines.extend(_render_cert(c))
        lines.append("verdict: %s" % r["verdict"])
    elif cmd == "report":
        for key in ("basis", "peirce", "simples", "check"):
            lines.append("== %s" % key)
            lines.extend(_render_text(key, r[key]))
        gd = r["global_dim"]
        lines.append("global dimension: %s" % (("≥ %d" % gd["at_least"]) if isinstance(gd, dict) else gd))
        if "chain" in r:
            lines.append("== chain")
            lines.extend(_render_text("chain", r["chain"]))
            lines.append("== segments")
            for info in r["segments"]:
                gd = info["global_dim"]
                lines.append("A(%s): dim %d, basis [%s], global dim %s, semisimple %s"
                             % ("{%s}" % ",".join(info["segment"]), info["dim"], ", ".join(info["basis"]),
                                ("≥ %d" % gd["at_least"]) if isinstance(gd, dict) else gd, info["semisimple"]))
                if info["structure"]:
                    lines.append("    structure %s" % info["structure"])
                lines.extend("    " + p for p in info["products"])
            lines.append("== certify")
            lines.extend(_render_text("certify", r["certify"]))
            lines.append("== spectral corner")
            for c in r["spectral"]:
                lines.append("Y={%s} (%s, %s): %s%s" % (",".join(c["segment"]), c["V"], c["W"], c["verdict"],
                                                        " (collapse)" if c["collapse"] else ""))
        lines.append("verdict: %s" % r["verdict"])
    return lines


def _render_cert(c):
    fd = c["flat_dim"]
    fd = ("≥ %d" % fd["at_least"]) if isinstance(fd, dict) else fd
    out = ["segment {%s}, bound %d, right flat dim %s: %s" % (",".join(c["segment"]), c["bound"], fd, c["verdict"])]
    for u in c["unit"]:
        out.append("  unit   %-8s Hom dim %d/%d iso %s  Ext^q %s" % (u["module"], u["hom_dim"], u["dim"], u["evaluation_iso"], u["ext"]))
    for u in c["counit"] or []:
        out.append("  counit %-8s tensor dim %d/%d iso %s  Tor_q %s" % (u["module"], u["tensor_dim"], u["dim"], u["multiplication_iso"], u["tor"]))
    for f in c["fullness"]:
        out.append("  full   (%s, %s) B %s A %s %s" % (f["pair"][0], f["pair"][1], f["B"], f["A"], "ok" if f["ok"] else "MISMATCH"))
    out.extend("  note: " + n for n in c["notes"])
    return out


# -- entry point ----------------------------------------------------------------------


def _parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise StratkitError("--param expects name=value, got %r" % item)
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="presentation file, or corpus/NAME for a bundled one")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="degree bound N (default %(default)s)")
    common.add_argument("--segment", default=None, help="comma-separated vertices; down-closed automatically")
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--param", action="append", metavar="NAME=VALUE", help="override a PARAM line")
    parser = argparse.ArgumentParser(prog="stratkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="stratkit " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "ext":
            p.add_argument("--from", dest="source", required=True)
            p.add_argument("--to", dest="target", required=True)
    return parser


def config_from_args(args) -> RunConfig:
    seg = None
    if args.segment is not None:
        seg = [x.strip() for x in args.segment.split(",") if x.strip()]
    return RunConfig(
        input=args.file, command=args.command, bound=args.bound, segment=seg, json=args.json,
        params=_parse_params(args.param), source=getattr(args, "source", None),
        target=getattr(args, "target", None),
    )


def run(cfg: RunConfig):
    """Returns (exit code, result dict or None, warnings, error message or None)."""
    if cfg.bound < 1:
        return 2, None, [], "--bound must be at least 1"
    try:
        s = Session(cfg)
        result = HANDLERS[cfg.command](s)
    except Failed as exc:
        return 1, {"verdict": "FAIL", "reason": str(exc)}, [], None
    except HypothesisViolated as exc:
        return 1, {"verdict": "FAIL", "reason": str(exc)}, [], None
    except (StratkitError, OSError, ValueError) as exc:
        return 2, None, [], "%s: %s" % (type(exc).__name__, exc)
    code = 1 if result.get("verdict") == "FAIL" else 0
    return code, result, s.warnings, None


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    code, result, warnings, err = run(cfg)
    for w in warnings:
        print("warning: " + w, file=sys.stderr)
    if err:
        print("error: " + err, file=sys.stderr)
        return code
    if cfg.json:
        doc = {"version": __version__, "config": asdict(cfg), "command": cfg.command, "result": result}
        print(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False))
    elif "reason" in result:
        print("FAIL: " + result["reason"])
    else:
        print("\n".join(_render_text(cfg.command, result)))
    return code


if __name__ == "__main__":
    sys.exit(main())
