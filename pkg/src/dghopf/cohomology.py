"""Splittings of finite complexes and the induced graded structure on cohomology.

A splitting decomposes each C^n = H^n ⊕ B^n ⊕ L^n where B^n = d(C^{n-1}),
Z^n = H^n ⊕ B^n and d maps L^n isomorphically onto B^{n+1}.  The homotopy
χ inverts d from B^{n+1} back to L^n and vanishes on H ⊕ L, so that

    q∘p = I_H,   p∘q = I - d∘χ - χ∘d,   d∘χ∘d = d.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import linalg
from .dg_structures import HopfData
from .errors import NotHopf, WindowError
from .graded_core import (
    GradedMap,
    GradedSpace,
    Vector,
    compose,
    compose_all,
    identity,
    label_str,
    tensor_map,
    zero,
)
from .report import Report

ORDERS = ("canonical", "reversed")


@dataclass(frozen=True, eq=False)
class SDR:
    """Strong deformation retract (p, q, χ) of (V, d) onto H with zero differential."""

    space: GradedSpace
    d: GradedMap
    H: GradedSpace
    p: GradedMap
    q: GradedMap
    chi: GradedMap
    order: str = "canonical"

    def verify(self, unit: Optional[GradedMap] = None) -> Report:
        V, H = self.space, self.H
        d, p, q, chi = self.d, self.p, self.q, self.chi
        r = Report(f"SDR of {V.name} ({self.order})")
        r.equal("q∘p = I_H", compose(q, p), identity(H))
        r.equal("p∘q = I - dχ - χd", compose(p, q),
                identity(V) - compose(d, chi) - compose(chi, d))
        r.equal("dχd = d", compose_all(d, chi, d), d)
        r.zero("d∘p = 0", compose(d, p))
        r.zero("q∘d = 0", compose(q, d))
        r.zero("χ∘χ = 0", compose(chi, chi))
        r.zero("χ∘p = 0", compose(chi, p))
        r.zero("q∘χ = 0", compose(q, chi))
        if unit is not None:
            r.zero("χ∘u = 0", compose(chi, unit))
        return r


def _rank_key(V: GradedSpace, order: str):
    if order == "canonical":
        return lambda k: k
    if order == "reversed":
        return lambda k: -k
    raise ValueError(f"unknown pivot order {order!r}")


def compute_sdr(V: GradedSpace, d: GradedMap, unit: Optional[GradedMap] = None,
                order: str = "canonical") -> SDR:
    """Deterministic splitting by exact elimination, pivots taken in the given order.

    When a unit u: k -> V is supplied and u(1) is a non-exact cocycle it is
    the first cohomology representative in its degree, so χ∘u = 0.
    """
    key = _rank_key(V, order)
    step = 1 if order == "canonical" else -1
    by_deg: Dict[int, List[int]] = {}
    for i, n in enumerate(V.degs):
        by_deg.setdefault(n, []).append(i)
    one = unit.cols.get(0, {}) if unit is not None else {}

    # boundaries B^{n+1} with chosen preimages in L^n
    bnd: Dict[int, List[Tuple[Vector, Vector]]] = {}
    for n, idx in by_deg.items():
        e = linalg.Echelon(key)
        for j in idx[::step]:
            e.add(d.cols.get(j, {}), {j: 1})
        bnd[n + 1] = [(e.rows[piv], e.payload[piv]) for piv in sorted(e.rows, key=key)]

    reps: List[Tuple[int, Vector, int]] = []
    chi_cols: Dict[int, Vector] = {}
    q_cols: Dict[int, Vector] = {}
    for n in sorted(by_deg):
        idx = by_deg[n]
        boundaries = bnd.get(n, [])
        sub_cols = {j: d.cols.get(j, {}) for j in idx}
        cycles = linalg.kernel(sub_cols, idx[::step], key)
        probe = linalg.Echelon(key)
        for b, _ in boundaries:
            probe.add(b)
        candidates = []
        if one and all(V.degs[i] == n for i in one) and not d.apply(one):
            candidates.append(dict(one))
        candidates.extend(cycles)
        h_here: List[Vector] = []
        for z in candidates:
            piv = probe.add(z)
            if piv is not None:
                h_here.append(z)
                reps.append((n, z, piv))
        preimages = [w for _, w in bnd.get(n + 1, [])]
        # decompose each basis vector along H ⊕ B ⊕ L
        dec = linalg.Echelon(key)
        tags = ([("h", len(reps) - len(h_here) + k) for k in range(len(h_here))]
                + [("b", k) for k in range(len(boundaries))]
                + [("l", k) for k in range(len(preimages))])
        vecs = h_here + [b for b, _ in boundaries] + preimages
        for t, v in zip(tags, vecs):
            if dec.add(v, {t: 1}) is None:
                raise ArithmeticError("splitting pieces are not independent")
        for j in idx:
            rest, coords = dec.reduce({j: 1}, {})
            if rest:
                raise ArithmeticError("splitting pieces do not span")
            qcol: Vector = {}
            ccol: Vector = {}
            for (kind, k), c in coords.items():
                c = -c
                if kind == "h":
                    qcol[k] = c
                elif kind == "b":
                    linalg.axpy(ccol, c, boundaries[k][1])
            if qcol:
                q_cols[j] = qcol
            if ccol:
                chi_cols[j] = ccol

    H = GradedSpace(f"H({V.name})", [(V.labels[piv], n) for n, _, piv in reps],
                    V.window if reps else (0, 0))
    p = GradedMap(H, V, 0, {k: dict(z) for k, (_, z, _) in enumerate(reps)})
    q = GradedMap(V, H, 0, q_cols)
    chi = GradedMap(V, V, -1, chi_cols)
    return SDR(V, d, H, p, q, chi, order)


def sdr_of(C: HopfData, order: str = "canonical") -> SDR:
    return compute_sdr(C.space, C.d, C.u, order)


def induced_structure(C: HopfData, sdr: SDR, name: str = "") -> HopfData:
    """Transfer every operation C carries: q∘u, ε∘p, q∘m∘(p⊗p), (q⊗q)∘Δ∘p, q∘ς∘p."""
    p, q = sdr.p, sdr.q
    H = sdr.H
    fields = dict(space=H, d=zero(H, H, 1), name=name or H.name)
    if C.u is not None:
        fields["u"] = compose(q, C.u)
    if C.m is not None:
        fields["m"] = compose_all(q, C.m, tensor_map(p, p))
    if C.eps is not None:
        fields["eps"] = compose(C.eps, p)
    if C.delta is not None:
        fields["delta"] = compose_all(tensor_map(q, q), C.delta, p)
    if C.antipode is not None:
        fields["antipode"] = compose_all(q, C.antipode, p)
    return HopfData(**fields)


def induced_hopf_on_H(B: HopfData, sdr: SDR) -> HopfData:
    if not B.has("hopf"):
        raise NotHopf(f"{B.label} carries no antipode")
    return induced_structure(B, sdr)


def compare_splittings(C: HopfData, s1: SDR, s2: SDR) -> Report:
    """φ = q2∘p1 must be an isomorphism H1 -> H2 carrying each induced operation to the other."""
    H1, H2 = induced_structure(C, s1), induced_structure(C, s2)
    phi = compose(s2.q, s1.p)
    psi = compose(s1.q, s2.p)
    r = Report("splitting independence")
    r.equal("φ invertible (left)", compose(psi, phi), identity(s1.H))
    r.equal("φ invertible (right)", compose(phi, psi), identity(s2.H))
    if C.u is not None:
        r.equal("φ∘u1 = u2", compose(phi, H1.u), H2.u)
    if C.m is not None:
        r.equal("φ∘m1 = m2∘(φ⊗φ)", compose(phi, H1.m), compose(H2.m, tensor_map(phi, phi)))
    if C.eps is not None:
        r.equal("ε2∘φ = ε1", compose(H2.eps, phi), H1.eps)
    if C.delta is not None:
        r.equal("(φ⊗φ)∘Δ1 = Δ2∘φ", compose(tensor_map(phi, phi), H1.delta), compose(H2.delta, phi))
    if C.antipode is not None:
        r.equal("φ∘ς1 = ς2∘φ", compose(phi, H1.antipode), compose(H2.antipode, phi))
    return r


def structure_defects(C: HopfData, sdr: SDR) -> Dict[str, GradedMap]:
    """Failure of p and q to respect the operations; these vanish only up to homotopy."""
    Hs = induced_structure(C, sdr)
    p, q = sdr.p, sdr.q
    out: Dict[str, GradedMap] = {}
    if C.m is not None:
        out["m∘(p⊗p) - p∘m_H"] = compose(C.m, tensor_map(p, p)) - compose(p, Hs.m)
        out["q∘m - m_H∘(q⊗q)"] = compose(q, C.m) - compose(Hs.m, tensor_map(q, q))
    if C.delta is not None:
        out["Δ∘p - (p⊗p)∘Δ_H"] = compose(C.delta, p) - compose(tensor_map(p, p), Hs.delta)
        out["(q⊗q)∘Δ - Δ_H∘q"] = compose(tensor_map(q, q), C.delta) - compose(Hs.delta, q)
    return out


def defect_report(C: HopfData, sdr: SDR) -> Report:
    """Measured defects; a failing entry records a nonzero difference, not an error."""
    r = Report(f"defects of p, q on {C.label}")
    for name, f in structure_defects(C, sdr).items():
        r.zero(name, f)
    return r


def _degree_zero_part(f: GradedMap) -> GradedMap:
    return GradedMap(f.source, f.target, f.degree,
                     {j: col for j, col in f.cols.items() if f.source.degs[j] == 0})


def verify_nonneg_reduction(B: HopfData, sdr: SDR) -> Report:
    """In non-negative degrees, χ vanishes on C^0 and p, q are inverse structure maps in degree 0."""
    if any(n < 0 for n in B.space.degs):
        raise WindowError(f"{B.label} has populated negative degrees")
    V, H = B.space, sdr.H
    p, q = sdr.p, sdr.q
    Hs = induced_structure(B, sdr)
    r = Report(f"degree-zero reduction of {B.label}")
    r.zero("χ on degree 0", _degree_zero_part(sdr.chi))
    r.equal("q∘p = I on H^0", _degree_zero_part(compose(q, p)), _degree_zero_part(identity(H)))
    z0 = [v for v in linalg.kernel(sdr.d.cols, [i for i in range(V.dim) if V.degs[i] == 0])]
    pq = compose(p, q)
    r.flag("p∘q = I on Z^0", all(pq.apply(v) == v for v in z0))
    if B.m is not None:
        r.zero("p algebra map in degree 0",
               _degree_zero_part(compose(B.m, tensor_map(p, p)) - compose(p, Hs.m)))
    if B.u is not None:
        r.equal("p∘u_H = u", compose(p, Hs.u), B.u)
    if B.delta is not None:
        r.zero("p coalgebra map in degree 0",
               _degree_zero_part(compose(B.delta, p) - compose(tensor_map(p, p), Hs.delta)))
    if B.eps is not None:
        r.equal("ε∘p = ε_H", compose(B.eps, p), Hs.eps)
    if B.antipode is not None:
        r.zero("p antipode map in degree 0",
               _degree_zero_part(compose(B.antipode, p) - compose(p, Hs.antipode)))
    return r


def cohomology_summary(sdr: SDR) -> Dict[int, List[str]]:
    out: Dict[int, List[str]] = {}
    for lab, n in zip(sdr.H.labels, sdr.H.degs):
        out.setdefault(n, []).append(label_str(lab))
    return out
