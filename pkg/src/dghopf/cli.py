"""Command-line front end: ``dghopf COMMAND BUNDLE [options]``.

Exit status is 0 when every check passes, 1 when a check fails or a
requested object does not exist (no antipode, no homotopy found), and 2 on
usage, parse or reference errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import bundle as bundle_mod
from .bundle import Bundle, load_bundle
from .cohomology import (
    ORDERS,
    cohomology_summary,
    compare_splittings,
    defect_report,
    induced_structure,
    sdr_of,
    verify_nonneg_reduction,
)
from .comodules import finite_subcomodule, regular_comodule, verify_comodule, verify_comodule_morphism
from .convolution import (
    conv_unit,
    exp_conv,
    group_report,
    is_group_element,
    is_tangential,
    lie_bracket,
    ln_conv,
    search_homotopy,
    star2,
    tangential_report,
    verify_homotopy_pair,
)
from .free_modules import r_op
from .dg_structures import solve_antipode, verify_antipode_properties, verify_structure
from .errors import (
    DimensionError,
    DgHopfError,
    NoSolution,
    NotConilpotent,
    NotHopf,
    ParseError,
    ReferenceError_,
    WindowError,
)
from .graded_core import GradedMap, format_scalar, label_str, zero
from .report import Report
from .rigidity import (
    NatEndo,
    agreement_report,
    dual_comodule,
    dual_report,
    extract_alpha,
    nat_component,
    probe_pairs,
    tensor_nat_report,
    verify_nat_homotopy_pair,
)

COMMANDS = ("verify", "antipode", "star", "exp", "ln", "bracket", "homotopy",
            "dualize", "reconstruct", "subcomodule", "cohomology")
VERIFY_KINDS = ("algebra", "coalgebra", "bialgebra", "hopf", "comodule", "group", "tangential")


class UsageError(Exception):
    pass


def map_payload(f: GradedMap) -> Dict[str, Any]:
    """Entries keyed by source label plus the dense matrix block of every source degree."""
    images: Dict[str, Dict[str, str]] = {}
    for a, b, c in f.entries():
        images.setdefault(label_str(a), {})[label_str(b)] = format_scalar(c)
    return {
        "source": f.source.name,
        "target": f.target.name,
        "degree": f.degree,
        "images": images,
        "blocks": {str(n): [[format_scalar(c) for c in row] for row in rows] for n, rows in f.blocks().items()},
    }


def map_lines(symbol: str, f: GradedMap) -> List[str]:
    lines = []
    for j, lab in enumerate(f.source.labels):
        col = f.cols.get(j, {})
        if not col:
            continue
        terms = []
        for i in sorted(col):
            c = col[i]
            name = label_str(f.target.labels[i])
            if c == 1:
                terms.append(f"+ {name}")
            elif c == -1:
                terms.append(f"− {name}")
            elif c > 0:
                terms.append(f"+ {format_scalar(c)} {name}")
            else:
                terms.append(f"− {format_scalar(-c)} {name}")
        text = " ".join(terms)
        text = text[2:] if text.startswith("+ ") else "−" + text[2:]
        lines.append(f"{symbol}({label_str(lab)}) = {text}")
    if not lines:
        lines.append(f"{symbol} = 0")
    return lines


class Outcome:
    def __init__(self, command: str, report: Report):
        self.command = command
        self.report = report
        self.result: Dict[str, Any] = {}
        self.lines: List[str] = []

    @property
    def ok(self) -> bool:
        return self.report.ok

    def to_json(self) -> Dict[str, Any]:
        out = {"command": self.command}
        out.update(self.report.to_json())
        out["result"] = self.result
        return out

    def to_text(self) -> str:
        parts = list(self.lines)
        parts.append(self.report.to_text())
        return "\n".join(parts)


# ---------------------------------------------------------------------------
# commands


def cmd_verify(b: Bundle, args) -> Outcome:
    kind = args.kind or "hopf"
    if kind in ("comodule",):
        name, C = b.comodule(args.target)
        return Outcome("verify", verify_comodule(C))
    if kind in ("group", "tangential"):
        name, f, B, A, _ = b.element(args.element or args.target, kind)
        rep = group_report(f, B, A) if kind == "group" else tangential_report(f, B, A)
        return Outcome("verify", rep)
    kinds = {"algebra": ("algebra", "bialgebra", "hopf"), "coalgebra": ("coalgebra", "bialgebra", "hopf"),
             "bialgebra": ("bialgebra", "hopf"), "hopf": ("hopf",)}[kind]
    name, H = b.structure(args.target, kinds)
    rep = verify_structure(H, kind)
    if kind == "hopf" and rep.ok:
        rep.extend(verify_antipode_properties(H), "antipode: ")
    return Outcome("verify", rep)


def cmd_antipode(b: Bundle, args) -> Outcome:
    name, H = b.structure(args.target, ("bialgebra", "hopf"))
    r = Report(f"antipode of {name}")
    out = Outcome("antipode", r)
    try:
        S = solve_antipode(H)
    except NoSolution:
        r.flag("antipode exists", False, note="the antipode equations are inconsistent")
        return out
    r.flag("antipode exists", True)
    r.extend(verify_structure(H.with_antipode(S), "hopf"))
    if H.antipode is not None:
        r.equal("agrees with stored antipode", S, H.antipode)
    out.lines = map_lines("ς", S)
    out.result["antipode"] = map_payload(S)
    return out


def cmd_star(b: Bundle, args) -> Outcome:
    n1, f1, B, A, _ = b.element(args.left)
    n2, f2, B2, A2, _ = b.element(args.right or args.left)
    if B.space != B2.space or A.space != A2.space:
        raise UsageError("both elements must run between the same structures")
    prod = star2(f1, f2, B, A)
    r = Report(f"{n1} ⋆ {n2}")
    if is_group_element(f1, B, A) and is_group_element(f2, B, A):
        r.flag("product of group elements is a group element", is_group_element(prod, B, A))
    out = Outcome("star", r)
    out.lines = map_lines(f"({n1}⋆{n2})", prod)
    out.result["product"] = map_payload(prod)
    return out


def cmd_exp(b: Bundle, args) -> Outcome:
    name, v, B, A, _ = b.element(args.element, "tangential")
    r = Report(f"exp({name})")
    r.extend(tangential_report(v, B, A), "input: ")
    g = exp_conv(v, B, A)
    r.extend(group_report(g, B, A), "exp: ")
    r.equal("ln(exp v) = v", ln_conv(g, B, A), v)
    out = Outcome("exp", r)
    out.lines = map_lines(f"exp({name})", g)
    out.result["exp"] = map_payload(g)
    return out


def cmd_ln(b: Bundle, args) -> Outcome:
    name, g, B, A, _ = b.element(args.element, "group")
    r = Report(f"ln({name})")
    r.extend(group_report(g, B, A), "input: ")
    v = ln_conv(g, B, A)
    r.extend(tangential_report(v, B, A), "ln: ")
    r.equal("exp(ln g) = g", exp_conv(v, B, A), g)
    out = Outcome("ln", r)
    out.lines = map_lines(f"ln({name})", v)
    out.result["ln"] = map_payload(v)
    return out


def cmd_bracket(b: Bundle, args) -> Outcome:
    n1, v1, B, A, _ = b.element(args.left, "tangential")
    n2, v2, _, _, _ = b.element(args.right or args.left, "tangential")
    br = lie_bracket(v1, v2, B, A)
    r = Report(f"[{n1}, {n2}]")
    r.flag("bracket is tangential", is_tangential(br, B, A))
    r.equal("antisymmetry", br, lie_bracket(v2, v1, B, A).scale(-1))
    out = Outcome("bracket", r)
    out.lines = map_lines(f"[{n1},{n2}]", br)
    out.result["bracket"] = map_payload(br)
    return out


def cmd_homotopy(b: Bundle, args) -> Outcome:
    n1, g1, B, A, k1 = b.element(args.left)
    flavor = args.flavor or ("tangential" if k1 == "tangential" else "algebra")
    if args.right is not None:
        n2, g2, _, _, _ = b.element(args.right)
    elif flavor == "tangential":
        n2, g2 = "0", zero(B.space, A.space, 0)
    else:
        n2, g2 = "e", conv_unit(B, A)
    r = Report(f"homotopy {n1} ~ {n2}")
    out = Outcome("homotopy", r)
    pair = search_homotopy(g1, g2, B, A, flow_degree=args.flow_degree, flavor=flavor)
    r.flag("homotopy pair found", pair is not None,
           note="" if pair is not None else f"no flow of s-degree ≤ {args.flow_degree} on the straight line")
    if pair is None:
        return out
    r.extend(verify_homotopy_pair(pair))
    if flavor == "algebra" and B.has("hopf") and args.probe_pairs:
        from .rigidity import corpus_comodules

        probes = probe_pairs(B)[: args.probe_pairs]
        r.extend(verify_nat_homotopy_pair(pair, A, corpus_comodules(B, with_tensors=False), probes), "natural: ")
    out.result["flow"] = [map_payload(c) for c in pair.xi.coeffs]
    for k, c in enumerate(pair.xi.coeffs):
        out.lines.extend(map_lines(f"ξ_{k}", c))
    return out


def cmd_dualize(b: Bundle, args) -> Outcome:
    name, C = b.comodule(args.target)
    D = dual_comodule(C)
    out = Outcome("dualize", dual_report(C))
    out.lines = map_lines("γ∨", D.dual.gamma)
    out.result["coaction"] = map_payload(D.dual.gamma)
    out.result["differential"] = map_payload(D.dual.d)
    return out


def cmd_reconstruct(b: Bundle, args) -> Outcome:
    name, alpha, B, A, kind = b.element(args.element)
    eta = NatEndo(alpha, A, B)
    r = Report(f"natural endomorphism from {name}")
    comps = list(b.comodules.items())
    for cname, C in comps:
        if C.B.space != B.space:
            continue
        r.flag(f"component at {cname} is a module map",
               r_op(nat_component(eta, C), C.space, C.space, A).is_zero())
    reg = regular_comodule(B)
    r.equal("ğ(η̆(α)) = α", extract_alpha(nat_component(eta, reg), B, A), alpha)
    probes = probe_pairs(B)[: args.probe_pairs]
    tens = tensor_nat_report(eta, probes)
    group = is_group_element(alpha, B, A)
    r.flag("tensor natural ⇔ group element", tens.ok == group,
           note=f"tensor natural: {tens.ok}, group element: {group}")
    mods = [C for _, C in comps if C.B.space == B.space]
    if B.has("hopf") and mods:
        r.extend(agreement_report(eta, mods))
    out = Outcome("reconstruct", r)
    out.result["components"] = {cname: map_payload(nat_component(eta, C)) for cname, C in comps
                                if C.B.space == B.space}
    return out


def _parse_vector(text: str) -> Dict[Any, Any]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"--vector: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise UsageError("--vector is a JSON object {label: scalar}")
    out = {}
    for k, c in raw.items():
        lab = tuple(k.split("⊗")) if "⊗" in k else k
        out[lab] = bundle_mod.parse_scalar(c, text)
    return out


def cmd_subcomodule(b: Bundle, args) -> Outcome:
    name, C = b.comodule(args.target)
    if args.vector is None:
        vec = {C.space.labels[-1]: 1} if C.space.dim else {}
    else:
        vec = _parse_vector(args.vector)
        for lab in vec:
            if not C.space.has_label(lab):
                raise ReferenceError_(f"{label_str(lab)!r} is not a basis label of {name}")
    sub, incl = finite_subcomodule(C, vec)
    r = Report(f"subcomodule of {name}")
    r.extend(verify_comodule(sub))
    r.flag("inclusion is a comodule morphism", verify_comodule_morphism(incl, sub, C))
    out = Outcome("subcomodule", r)
    out.lines = [f"basis: {', '.join(label_str(l) for l in sub.space.labels) or '(zero)'}"]
    out.lines.extend(map_lines("ι", incl))
    out.result["basis"] = [label_str(l) for l in sub.space.labels]
    out.result["inclusion"] = map_payload(incl)
    return out


def cmd_cohomology(b: Bundle, args) -> Outcome:
    name, H = b.structure(args.target)
    s1 = sdr_of(H, args.order)
    other = "reversed" if args.order == "canonical" else "canonical"
    s2 = sdr_of(H, other)
    r = Report(f"cohomology of {name}")
    r.extend(s1.verify(H.u))
    r.extend(s2.verify(H.u), f"{other}: ")
    r.extend(compare_splittings(H, s1, s2))
    kind = "hopf" if H.has("hopf") else "bialgebra" if H.has("bialgebra") else \
        "algebra" if H.u is not None else "coalgebra"
    r.extend(verify_structure(induced_structure(H, s1), kind), "H: ")
    if min(H.space.degs) >= 0:
        r.extend(verify_nonneg_reduction(H, s1))
    out = Outcome("cohomology", r)
    summary = cohomology_summary(s1)
    out.lines = [f"H^{n}: {', '.join(labs)}" for n, labs in sorted(summary.items())] or ["H = 0"]
    defects = defect_report(H, s1)
    out.lines.append(f"defects of p, q: {'none' if defects.ok else ', '.join(c.name for c in defects.failures)}")
    out.result["H"] = {str(n): labs for n, labs in sorted(summary.items())}
    out.result["chi"] = map_payload(s1.chi)
    out.result["defects"] = [c.name for c in defects.failures]
    return out


HANDLERS = {
    "verify": cmd_verify, "antipode": cmd_antipode, "star": cmd_star, "exp": cmd_exp, "ln": cmd_ln,
    "bracket": cmd_bracket, "homotopy": cmd_homotopy, "dualize": cmd_dualize,
    "reconstruct": cmd_reconstruct, "subcomodule": cmd_subcomodule, "cohomology": cmd_cohomology,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dghopf", description="Verify and compute with finite cdg-Hopf data.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("bundle", help="path to a structure bundle (JSON)")
    p.add_argument("--kind", choices=VERIFY_KINDS, help="what to verify (default hopf)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--target", help="structure or comodule name")
    p.add_argument("--element", help="element name")
    p.add_argument("--left", help="first element")
    p.add_argument("--right", help="second element")
    p.add_argument("--flavor", choices=("algebra", "hopf", "tangential"))
    p.add_argument("--flow-degree", type=int, default=1, help="s-degree bound for the flow")
    p.add_argument("--probe-pairs", type=int, default=2, help="number of tensor probe pairs")
    p.add_argument("--order", choices=ORDERS, default="canonical", help="pivot order of the splitting")
    p.add_argument("--vector", help="JSON object {label: scalar} generating a subcomodule")
    return p


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """Execute one command; return (exit code, output text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), ""
    if args.flow_degree < 0 or args.probe_pairs < 0:
        return 2, "error: --flow-degree and --probe-pairs must be non-negative"
    try:
        b = load_bundle(args.bundle)
        outcome = HANDLERS[args.command](b, args)
    except OSError as exc:
        return 2, f"error: {exc}"
    except ParseError as exc:
        return 2, f"parse error: {exc}"
    except (ReferenceError_, DimensionError, UsageError, WindowError) as exc:
        return 2, f"error: {exc}"
    except (NotHopf, NotConilpotent) as exc:
        r = Report(args.command)
        r.flag("preconditions", False, note=str(exc))
        outcome = Outcome(args.command, r)
    except DgHopfError as exc:
        r = Report(args.command)
        r.flag("computation", False, note=str(exc))
        outcome = Outcome(args.command, r)
    if args.format == "json":
        text = json.dumps(outcome.to_json(), ensure_ascii=False, indent=2)
    else:
        text = outcome.to_text()
    return (0 if outcome.ok else 1), text


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        stream = sys.stdout if code != 2 else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
