"""Natural endomorphisms of the forgetful functor on comodules, and rigid duals.

A natural endomorphism η is stored through α = ğ(η): B -> A.  Its component
at a comodule (M, γ) is the module map

    η̆(α)^M = (I_M⊗m_A)∘(I_M⊗α⊗I_A)∘(γ^M⊗I_A) : M⊗A -> M⊗A.

Finite comodules have duals M∨ with evaluation and coevaluation, which give
a second formula S(ξ) for the inverse of a tensor natural automorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .comodules import (
    Comodule,
    cofree_comodule,
    finite_subcomodule,
    point_comodule,
    regular_comodule,
    star_comodule,
    tensor_comodule,
    trivial_comodule,
    verify_comodule,
    verify_comodule_morphism,
)
from .convolution import HomotopyPair, PolyMap
from .dg_structures import HopfData, verify_morphism
from .errors import NotAlgebraMorphism, NotHopf, SpaceMismatch
from .free_modules import free_module, p_op, q_op, tensor_module_morphism, transport_endo
from .graded_core import (
    K,
    GradedMap,
    GradedSpace,
    braiding,
    compose,
    compose_all,
    dual_space,
    hom_differential,
    identity,
    left_unitor,
    left_unitor_inv,
    right_unitor,
    right_unitor_inv,
    sign,
    tensor,
    tensor_differential,
    tensor_map,
    zero,
)
from .report import Report


@dataclass(frozen=True, eq=False)
class NatEndo:
    """The natural endomorphism represented by α: B -> A."""

    alpha: GradedMap
    A: HopfData
    B: HopfData

    def __post_init__(self):
        if self.alpha.source != self.B.space or self.alpha.target != self.A.space:
            raise SpaceMismatch("alpha must be a map B -> A")

    @property
    def degree(self) -> int:
        return self.alpha.degree


def nat_component(eta: NatEndo, C: Comodule) -> GradedMap:
    """η̆(α)^M = 𝔭((I_M⊗α)∘γ^M)."""
    if C.B.space != eta.B.space:
        raise SpaceMismatch("comodule is over a different Hopf algebra")
    return p_op(compose(tensor_map(identity(C.space), eta.alpha), C.gamma), C.space, eta.A)


def component_at_alpha(alpha: GradedMap, C: Comodule, A: HopfData) -> GradedMap:
    return nat_component(NatEndo(alpha, A, C.B), C)


def extract_alpha(component: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    """ğ(η) = ı_A∘(ε_B⊗I_A)∘𝔮(η^B) from the component at the regular comodule."""
    q = q_op(component, B.space, A)
    return compose_all(left_unitor(A.space), tensor_map(B.eps, identity(A.space)), q)


def nat_from_component(component: GradedMap, B: HopfData, A: HopfData) -> NatEndo:
    return NatEndo(extract_alpha(component, B, A), A, B)


def naturality_holds(eta: NatEndo, psi: GradedMap, C: Comodule, C2: Comodule) -> bool:
    """(ψ⊗I_A)∘η^M = (-1)^{|ψ||η|} η^{M′}∘(ψ⊗I_A) for a comodule morphism ψ: M -> M′."""
    IA = identity(eta.A.space)
    psiA = tensor_map(psi, IA)
    lhs = compose(psiA, nat_component(eta, C))
    rhs = compose(nat_component(eta, C2), psiA).scale(sign(psi.degree * eta.degree))
    return lhs == rhs


def tensor_nat_report(eta: NatEndo, probes: Iterable[Tuple[Comodule, Comodule]]) -> Report:
    """η^k = id and η^{M⊗M′} = η^M⊗_{m_A}η^{M′} on every probe pair."""
    A, B = eta.A, eta.B
    r = Report("tensor natural")
    k = trivial_comodule(B)
    r.equal("η^k = id", nat_component(eta, k), identity(tensor(K, A.space)))
    for C, C2 in probes:
        F, F2 = free_module(C.space, C.d, A), free_module(C2.space, C2.d, A)
        T = tensor_comodule(C, C2)
        lhs = nat_component(eta, T)
        rhs = tensor_module_morphism(nat_component(eta, C), F, F, nat_component(eta, C2), F2, F2)
        r.equal(f"η^{{{C.label}⊗{C2.label}}}", lhs, rhs)
    return r


def is_tensor_nat(eta: NatEndo, probes: Iterable[Tuple[Comodule, Comodule]]) -> bool:
    return tensor_nat_report(eta, probes).ok


def nat_transport(f: GradedMap, eta: NatEndo, A2: HopfData) -> NatEndo:
    """Push η along an algebra morphism f: A -> A′; represented by f∘α."""
    if not verify_morphism(f, eta.A, A2, "algebra").ok:
        raise NotAlgebraMorphism("transport requires a cdg-algebra morphism")
    return NatEndo(compose(f, eta.alpha), A2, eta.B)


def transported_component(f: GradedMap, eta: NatEndo, A2: HopfData, C: Comodule) -> GradedMap:
    """Componentwise route 𝔭((I_M⊗f)∘𝔮(η^M))."""
    F = free_module(C.space, C.d, eta.A)
    return transport_endo(f, eta.A, A2, nat_component(eta, C), F, F)


# ---------------------------------------------------------------------------
# rigid duals


@dataclass(frozen=True)
class DualityData:
    """An object X, its dual X∨ and ev: X∨⊗X -> k, cv: k -> X⊗X∨."""

    obj: GradedSpace
    dual: GradedSpace
    ev: GradedMap
    cv: GradedMap

    def flipped(self) -> "DualityData":
        """Data exhibiting X as the dual of X∨: ev_X∘τ and τ∘cv_X."""
        X, Xv = self.obj, self.dual
        return DualityData(Xv, X, compose(self.ev, braiding(X, Xv)), compose(braiding(X, Xv), self.cv))


def basis_duality(M: GradedSpace) -> DualityData:
    """ev(eⁱ⊗x_j) = δ_ij and cv(1) = Σ x_i⊗eⁱ."""
    Mv = dual_space(M)
    n = M.dim
    ev = GradedMap(tensor(Mv, M), K, 0, {i * n + i: {0: 1} for i in range(n)})
    cv = GradedMap(K, tensor(M, Mv), 0, {0: {i * n + i: 1 for i in range(n)}} if n else {})
    return DualityData(M, Mv, ev, cv)


def triangle_report(D: DualityData) -> Report:
    X, Xv = D.obj, D.dual
    r = Report("triangle identities")
    r.equal("(I⊗ev)∘(cv⊗I) = I_X",
            compose_all(right_unitor(X), tensor_map(identity(X), D.ev), tensor_map(D.cv, identity(X)),
                        left_unitor_inv(X)),
            identity(X))
    r.equal("(ev⊗I)∘(I⊗cv) = I_X∨",
            compose_all(left_unitor(Xv), tensor_map(D.ev, identity(Xv)), tensor_map(identity(Xv), D.cv),
                        right_unitor_inv(Xv)),
            identity(Xv))
    return r


def dual_morphism_data(psi: GradedMap, DX: DualityData, DY: DualityData) -> GradedMap:
    """ψ∨ = ı∘(ev_Y⊗I)∘(I⊗ψ⊗I)∘(I⊗cv_X)∘ȷ⁻¹ : Y∨ -> X∨ for ψ: X -> Y."""
    if psi.source != DX.obj or psi.target != DY.obj:
        raise SpaceMismatch("morphism does not match the duality data")
    Yv, Xv = DY.dual, DX.dual
    return compose_all(
        left_unitor(Xv),
        tensor_map(DY.ev, identity(Xv)),
        tensor_map(identity(Yv), psi, identity(Xv)),
        tensor_map(identity(Yv), DX.cv),
        right_unitor_inv(Yv),
    )


def dual_morphism(psi: GradedMap) -> GradedMap:
    """Dual of a map between finite complexes, using the basis duality data."""
    return dual_morphism_data(psi, basis_duality(psi.source), basis_duality(psi.target))


def double_dual_morphism(psi: GradedMap) -> GradedMap:
    """ψ∨∨ : X -> Y, taking X∨∨ = X through the flipped duality data."""
    DX, DY = basis_duality(psi.source), basis_duality(psi.target)
    return dual_morphism_data(dual_morphism_data(psi, DX, DY), DY.flipped(), DX.flipped())


def dual_characterization_holds(psi: GradedMap, psi_dual: GradedMap) -> bool:
    """ev_Y∘(I_{Y∨}⊗ψ) = ev_X∘(ψ∨⊗I_X)."""
    DX, DY = basis_duality(psi.source), basis_duality(psi.target)
    lhs = compose(DY.ev, tensor_map(identity(DY.dual), psi))
    rhs = compose(DX.ev, tensor_map(psi_dual, identity(DX.obj)))
    return lhs == rhs


def _need_hopf(B: HopfData) -> None:
    if not B.has("hopf"):
        raise NotHopf(f"{B.label} carries no antipode")


def _dual_differential(C: Comodule, Mv: GradedSpace) -> GradedMap:
    """d(eⁱ) = -(-1)^{|i|} Σ_j D_ij e^j where d x_j = Σ_i D_ij x_i."""
    M = C.space
    cols = {}
    for j, col in C.d.cols.items():
        for i, c in col.items():
            cols.setdefault(i, {})[j] = -sign(M.degs[i]) * c
    return GradedMap(Mv, Mv, 1, cols)


def dual_coaction_basis(C: Comodule) -> GradedMap:
    """γ^{M∨}(eⁱ) = Σ_k (-1)^{|k|+|i||k|} e^k⊗ς(γⁱ_k), with γ(x_k) = Σ_i x_i⊗γⁱ_k."""
    B = C.B
    _need_hopf(B)
    M = C.space
    Mv = dual_space(M)
    nb = B.space.dim
    cols = {}
    for k in range(M.dim):
        for idx, c in C.gamma.cols.get(k, {}).items():
            i, b = divmod(idx, nb)
            s = sign(M.degs[k] + M.degs[i] * M.degs[k])
            for b2, c2 in B.antipode.cols.get(b, {}).items():
                col = cols.setdefault(i, {})
                key = k * nb + b2
                v = col.get(key, 0) + s * c * c2
                if v:
                    col[key] = v
                else:
                    col.pop(key, None)
    return GradedMap(Mv, tensor(Mv, B.space), 0, cols)


def dual_coaction_hom(C: Comodule) -> GradedMap:
    """γ^{M∨} through Hom(M, k): h ↦ ı_B∘(h⊗ς)∘γ^M, then identified with M∨⊗B."""
    B = C.B
    _need_hopf(B)
    M = C.space
    Mv = dual_space(M)
    nb = B.space.dim
    cols = {}
    for i in range(M.dim):
        h = GradedMap(M, K, -M.degs[i], {i: {0: 1}})
        ell = compose_all(left_unitor(B.space), tensor_map(h, B.antipode), C.gamma)
        col = {}
        for k, image in ell.cols.items():
            s = sign(M.degs[k] * (ell.degree + M.degs[k]))
            for b, c in image.items():
                col[k * nb + b] = s * c
        if col:
            cols[i] = col
    return GradedMap(Mv, tensor(Mv, B.space), 0, cols)


@dataclass(frozen=True, eq=False)
class DualComodule:
    dual: Comodule
    ev: GradedMap
    cv: GradedMap
    source: Comodule

    @property
    def data(self) -> DualityData:
        return DualityData(self.source.space, self.dual.space, self.ev, self.cv)


def dual_comodule(C: Comodule) -> DualComodule:
    _need_hopf(C.B)
    D = basis_duality(C.space)
    Mv = D.dual
    dual = Comodule(Mv, _dual_differential(C, Mv), dual_coaction_basis(C), C.B, f"{C.label}∨")
    return DualComodule(dual, D.ev, D.cv, C)


def double_dual_iso(C: Comodule) -> GradedMap:
    """x_i ↦ (-1)^{|i|} E^i, identifying M with M∨∨ compatibly with ev_{M∨} = ev_M∘τ."""
    M = C.space
    Mvv = dual_space(dual_space(M))
    return GradedMap(M, Mvv, 0, {i: {i: sign(M.degs[i])} for i in range(M.dim)})


def dual_report(C: Comodule) -> Report:
    """Comodule axioms for M∨, comodule-ness of ev and cv, triangles and double dual."""
    D = dual_comodule(C)
    r = Report(f"dual of {C.label}")
    r.extend(verify_comodule(D.dual), "M∨: ")
    r.equal("basis and Hom routes agree", D.dual.gamma, dual_coaction_hom(C))
    k = trivial_comodule(C.B)
    kk = Comodule(K, zero(K, K, 1), k.gamma, C.B, "k")
    r.flag("ev comodule morphism",
           verify_comodule_morphism(D.ev, tensor_comodule(D.dual, C), kk))
    r.flag("cv comodule morphism",
           verify_comodule_morphism(D.cv, kk, tensor_comodule(C, D.dual)))
    r.extend(triangle_report(D.data))
    r.extend(triangle_report(D.data.flipped()), "flipped ")
    DD = dual_comodule(D.dual).dual
    phi = double_dual_iso(C)
    r.equal("M∨∨ ≅ M coaction", compose(DD.gamma, phi), compose(tensor_map(phi, identity(C.B.space)), C.gamma))
    r.equal("M∨∨ ≅ M differential", compose(DD.d, phi), compose(phi, C.d))
    return r


# ---------------------------------------------------------------------------
# inverses of natural automorphisms


def sigma_component(eta: NatEndo, C: Comodule) -> GradedMap:
    """ς(η)^M = (ȷ_M⊗I_A)∘(I_M⊗ε_B⊗I_A)∘(I_M⊗η^{B*})∘(γ^M⊗I_A)."""
    B, A = eta.B, eta.A
    M = C.space
    IM, IA = identity(M), identity(A.space)
    eta_star = nat_component(eta, star_comodule(B))
    return compose_all(
        tensor_map(right_unitor(M), IA),
        tensor_map(IM, B.eps, IA),
        tensor_map(IM, eta_star),
        tensor_map(C.gamma, IA),
    )


def sigma_component_alpha(eta: NatEndo, C: Comodule) -> GradedMap:
    """Independent route η̆(α∘ς)^M."""
    return nat_component(NatEndo(compose(eta.alpha, eta.B.antipode), eta.A, eta.B), C)


def S_component(eta: NatEndo, C: Comodule) -> GradedMap:
    """S(ξ)^M built from ξ^{M∨} with ev_{M∨} and cv_{M∨}:

    τ_{A,M}∘ı∘(ev_{M∨}⊗I⊗I)∘(I_M⊗ξ^{M∨}⊗I_M)∘(I⊗I⊗τ_{M,A})∘(I_M⊗cv_{M∨}⊗I_A)∘(ȷ⁻¹_M⊗I_A)
    """
    A = eta.A
    M = C.space
    D = dual_comodule(C)
    flipped = D.data.flipped()
    Mv = D.dual.space
    IM, IA = identity(M), identity(A.space)
    xi_dual = nat_component(eta, D.dual)
    return compose_all(
        braiding(A.space, M),
        left_unitor(tensor(A.space, M)),
        tensor_map(flipped.ev, IA, IM),
        tensor_map(IM, xi_dual, IM),
        tensor_map(IM, identity(Mv), braiding(M, A.space)),
        tensor_map(IM, flipped.cv, IA),
        tensor_map(right_unitor_inv(M), IA),
    )


def agreement_report(eta: NatEndo, comodules: Sequence[Comodule]) -> Report:
    r = Report("ς(η) = S(η)")
    for C in comodules:
        r.equal(f"at {C.label}", sigma_component(eta, C), S_component(eta, C))
    return r


def inverse_report(eta: NatEndo, comodules: Sequence[Comodule]) -> Report:
    """S(ξ)∘ξ = ξ∘S(ξ) = id and the same for ς, at each comodule."""
    r = Report("inverse components")
    for C in comodules:
        xi = nat_component(eta, C)
        S = S_component(eta, C)
        sig = sigma_component(eta, C)
        I = identity(xi.source)
        r.equal(f"S∘ξ at {C.label}", compose(S, xi), I)
        r.equal(f"ξ∘S at {C.label}", compose(xi, S), I)
        r.equal(f"ς∘ξ at {C.label}", compose(sig, xi), I)
        r.equal(f"ξ∘ς at {C.label}", compose(xi, sig), I)
    return r


# ---------------------------------------------------------------------------
# homotopy pairs of natural endomorphisms


def _poly_component(P: PolyMap, C: Comodule, A: HopfData) -> List[GradedMap]:
    return [component_at_alpha(c, C, A) for c in P.coeffs]


def verify_nat_homotopy_pair(pair: HomotopyPair, A: HopfData, comodules: Sequence[Comodule],
                             probe_pairs: Sequence[Tuple[Comodule, Comodule]] = ()) -> Report:
    """Check (η̆(g(s)), η̆(χ(s))) is a homotopy pair of tensor natural endomorphisms.

    At each comodule: d/ds η^M = δλ^M coefficientwise; λ^k = 0; and on each
    probe pair λ^{M⊗M′} = λ^M⊗_{m_A}η^{M′} + η^M⊗_{m_A}λ^{M′}.
    """
    B = pair.src
    g, chi = pair.f, pair.xi
    r = Report("natural homotopy pair")
    for C in comodules:
        dMA = tensor_differential(C.d, A.d)
        etas = _poly_component(g.derivative(), C, A)
        lams = _poly_component(chi, C, A)
        n = max(len(etas), len(lams))
        for j in range(n):
            lhs = etas[j] if j < len(etas) else None
            lam = lams[j] if j < len(lams) else zero(dMA.source, dMA.source, chi.degree)
            rhs = hom_differential(lam, dMA, dMA)
            if lhs is None:
                r.zero(f"flow at {C.label}, s^{j}", rhs)
            else:
                r.equal(f"flow at {C.label}, s^{j}", lhs, rhs)
    k = trivial_comodule(B)
    for j, lam in enumerate(_poly_component(chi, k, A)):
        r.zero(f"λ^k = 0, s^{j}", lam)
    for C, C2 in probe_pairs:
        F, F2 = free_module(C.space, C.d, A), free_module(C2.space, C2.d, A)
        T = tensor_comodule(C, C2)
        lamT = _poly_component(chi, T, A)
        l1, l2 = _poly_component(chi, C, A), _poly_component(chi, C2, A)
        e1, e2 = _poly_component(g, C, A), _poly_component(g, C2, A)
        top = max(len(lamT), len(l1) + len(e2), len(e1) + len(l2))
        for n in range(top):
            TA = tensor(T.space, A.space)
            rhs = zero(TA, TA, chi.degree)
            for a in range(n + 1):
                b = n - a
                if a < len(l1) and b < len(e2):
                    rhs = rhs + tensor_module_morphism(l1[a], F, F, e2[b], F2, F2)
                if a < len(e1) and b < len(l2):
                    rhs = rhs + tensor_module_morphism(e1[a], F, F, l2[b], F2, F2)
            lhs = lamT[n] if n < len(lamT) else zero(rhs.source, rhs.target, chi.degree)
            r.equal(f"co-Leibniz on {C.label}⊗{C2.label}, s^{n}", lhs, rhs)
    return r


# ---------------------------------------------------------------------------
# a corpus of finite comodules


def _interval_complex() -> Tuple[GradedSpace, GradedMap]:
    M = GradedSpace("P", [("a", 0), ("b", 1)], (0, 1))
    return M, GradedMap.from_entries(M, M, 1, [("a", "b", 1)])


def corpus_comodules(B: HopfData, with_tensors: bool = True) -> List[Comodule]:
    """Trivial, regular, star, cofree, point, tensor and subcomodule examples over B."""
    _need_hopf(B)
    Z = GradedSpace("Z", [("z", 0)], (0, 0))
    W = GradedSpace("W", [("w", -1)], (-1, -1))
    P, dP = _interval_complex()
    out = [
        trivial_comodule(B),
        regular_comodule(B),
        star_comodule(B),
        cofree_comodule(Z, None, B),
        cofree_comodule(W, None, B),
        point_comodule(P, dP, B),
        point_comodule(W, None, B),
    ]
    if with_tensors:
        out.append(tensor_comodule(out[1], out[2]))
        out.append(tensor_comodule(out[4], out[5]))
    top = B.space.labels[-1]
    if top != "1":
        sub, _ = finite_subcomodule(cofree_comodule(Z, None, B), {("z", top): 1})
        out.append(sub)
    return out


def probe_pairs(B: HopfData) -> List[Tuple[Comodule, Comodule]]:
    reg = regular_comodule(B)
    star = star_comodule(B)
    W = GradedSpace("W", [("w", -1)], (-1, -1))
    P, dP = _interval_complex()
    return [(reg, reg), (reg, star), (cofree_comodule(W, None, B), point_comodule(P, dP, B))]
