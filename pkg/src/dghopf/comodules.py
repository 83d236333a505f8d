"""Right dg-comodules over a cdg-Hopf algebra B.

A comodule is a complex (M, d_M) with a degree-0 coaction γ: M -> M⊗B.
Representations are stored through their universal element, the module
automorphism of M⊗B obtained from g = I_B.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple, Union

from . import linalg
from .convolution import is_group_element
from .dg_structures import HopfData
from .errors import NotGroupElement, NotHopf, NotRepresentation, SpaceMismatch
from .free_modules import p_op, q_op, r_op
from .graded_core import (
    K,
    GradedMap,
    GradedSpace,
    Vector,
    braiding,
    compose,
    compose_all,
    hom_differential,
    identity,
    left_unitor_inv,
    right_unitor_inv,
    scalar,
    tensor,
    tensor_differential,
    tensor_map,
    zero,
)
from .report import Report


@dataclass(frozen=True, eq=False)
class Comodule:
    space: GradedSpace
    d: GradedMap
    gamma: GradedMap
    B: HopfData
    name: str = ""

    def __post_init__(self):
        M = self.space
        if self.d.source != M or self.d.target != M:
            raise SpaceMismatch("comodule differential must be an endomorphism of M")
        if self.gamma.source != M or self.gamma.target != tensor(M, self.B.space):
            raise SpaceMismatch("coaction must map M -> M⊗B")

    @property
    def label(self) -> str:
        return self.name or self.space.name

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self) -> str:
        return f"Comodule({self.label}, dim={self.dim})"


def verify_comodule(C: Comodule) -> Report:
    """Cochain coaction, coassociativity and counit, with witnesses."""
    B = C.B
    M = C.space
    IM, IB = identity(M), identity(B.space)
    r = Report(f"comodule {C.label}")
    r.zero("d∘d = 0", compose(C.d, C.d))
    r.flag("γ has degree 0", C.gamma.degree == 0 or C.gamma.is_zero())
    dMB = tensor_differential(C.d, B.d)
    r.equal("γ cochain map", compose(dMB, C.gamma), compose(C.gamma, C.d))
    r.equal("(γ⊗I)∘γ = (I⊗Δ)∘γ",
            compose(tensor_map(C.gamma, IB), C.gamma), compose(tensor_map(IM, B.delta), C.gamma))
    r.equal("(I⊗ε)∘γ = ȷ⁻¹", compose(tensor_map(IM, B.eps), C.gamma), right_unitor_inv(M))
    return r


def verify_comodule_morphism(psi: GradedMap, C: Comodule, C2: Comodule) -> bool:
    """γ′∘ψ = (ψ⊗I_B)∘γ."""
    if psi.source != C.space or psi.target != C2.space:
        raise SpaceMismatch("morphism does not connect the given comodules")
    return compose(C2.gamma, psi) == compose(tensor_map(psi, identity(C.B.space)), C.gamma)


def comodule_morphism_differential(psi: GradedMap, C: Comodule, C2: Comodule) -> GradedMap:
    return hom_differential(psi, C.d, C2.d)


def _need_hopf(B: HopfData) -> None:
    if not B.has("hopf"):
        raise NotHopf(f"{B.label} carries no antipode")


def trivial_comodule(B: HopfData) -> Comodule:
    """(k, ı⁻¹∘u_B)."""
    _need_hopf(B)
    return Comodule(K, zero(K, K, 1), compose(left_unitor_inv(B.space), B.u), B, "k")


def regular_comodule(B: HopfData) -> Comodule:
    """(B, Δ_B)."""
    _need_hopf(B)
    return Comodule(B.space, B.d, B.delta, B, B.label)


def cofree_comodule(M: GradedSpace, dM: Optional[GradedMap], B: HopfData) -> Comodule:
    """(M⊗B, I_M⊗Δ_B)."""
    _need_hopf(B)
    dM = dM if dM is not None else zero(M, M, 1)
    return Comodule(tensor(M, B.space), tensor_differential(dM, B.d),
                    tensor_map(identity(M), B.delta), B, f"{M.name}⊗{B.label}")


def star_comodule(B: HopfData) -> Comodule:
    """(B, τ∘(ς⊗I)∘Δ)."""
    _need_hopf(B)
    gamma = compose_all(braiding(B.space, B.space), tensor_map(B.antipode, identity(B.space)), B.delta)
    return Comodule(B.space, B.d, gamma, B, f"{B.label}*")


def point_comodule(M: GradedSpace, dM: Optional[GradedMap], B: HopfData) -> Comodule:
    """(M, (I⊗u_B)∘ȷ⁻¹): the coaction through the unit."""
    _need_hopf(B)
    dM = dM if dM is not None else zero(M, M, 1)
    gamma = compose(tensor_map(identity(M), B.u), right_unitor_inv(M))
    return Comodule(M, dM, gamma, B, f"{M.name}_*")


STANDARD_KINDS = ("trivial", "regular", "cofree", "star", "point")


def standard_comodule(kind: str, B: HopfData, M: Optional[GradedSpace] = None,
                      dM: Optional[GradedMap] = None) -> Comodule:
    if kind == "trivial":
        return trivial_comodule(B)
    if kind == "regular":
        return regular_comodule(B)
    if kind == "star":
        return star_comodule(B)
    if kind in ("cofree", "point"):
        if M is None:
            raise ValueError(f"{kind} comodule needs an underlying complex M")
        return cofree_comodule(M, dM, B) if kind == "cofree" else point_comodule(M, dM, B)
    raise ValueError(f"unknown comodule kind {kind!r}")


def tensor_comodule(C: Comodule, C2: Comodule) -> Comodule:
    """γ^{M⊗N} = (I⊗I⊗m_B)∘(I⊗τ_{B,N}⊗I)∘(γ^M⊗γ^N)."""
    if C.B.space != C2.B.space:
        raise SpaceMismatch("comodules over different Hopf algebras")
    B = C.B
    M, N = C.space, C2.space
    IB = identity(B.space)
    gamma = compose_all(
        tensor_map(identity(M), identity(N), B.m),
        tensor_map(identity(M), braiding(B.space, N), IB),
        tensor_map(C.gamma, C2.gamma),
    )
    return Comodule(tensor(M, N), tensor_differential(C.d, C2.d), gamma, B, f"({C.label})⊗({C2.label})")


# ---------------------------------------------------------------------------
# representations


def rep_from_comodule(C: Comodule, g: GradedMap, A: HopfData) -> GradedMap:
    """ρ̆(g) = 𝔭((I_M⊗g)∘γ^M) = (I⊗m_A)∘(I⊗g⊗I)∘(γ^M⊗I)."""
    if not is_group_element(g, C.B, A):
        raise NotGroupElement("representations are evaluated on group elements")
    return p_op(compose(tensor_map(identity(C.space), g), C.gamma), C.space, A)


@dataclass(frozen=True, eq=False)
class RepresentationData:
    """A representation stored through its universal element ρ(I_B) on M⊗B."""

    space: GradedSpace
    d: GradedMap
    B: HopfData
    universal: GradedMap


def representation_of(C: Comodule) -> RepresentationData:
    return RepresentationData(C.space, C.d, C.B, rep_from_comodule(C, identity(C.B.space), C.B))


def comodule_from_rep(R: RepresentationData) -> Comodule:
    """γ̆ = 𝔮(universal), checked against the comodule axioms."""
    B = R.B
    M = R.space
    U = R.universal
    carrier = tensor(M, B.space)
    if U.source != carrier or U.target != carrier:
        raise SpaceMismatch("universal element must be an endomorphism of M⊗B")
    if not r_op(U, M, M, B).is_zero():
        raise NotRepresentation("universal element is not a module morphism")
    gamma = q_op(U, M, B)
    C = Comodule(M, R.d, GradedMap(M, carrier, 0, gamma.cols), B, M.name)
    rep = verify_comodule(C)
    if not rep.ok:
        raise NotRepresentation(f"derived coaction fails: {rep.failures[0].name}")
    return C


# ---------------------------------------------------------------------------
# finite subcomodules


def _split_homogeneous(V: GradedSpace, v: Vector) -> List[Vector]:
    parts: Dict[int, Vector] = {}
    for i, c in v.items():
        parts.setdefault(V.degs[i], {})[i] = c
    return [parts[n] for n in sorted(parts)]


def _coaction_components(C: Comodule, v: Vector) -> List[Vector]:
    """The M-components mⁱ in γ(v) = Σ mⁱ⊗bᵢ over the basis bᵢ of B."""
    comps = _components_by_b(C, v)
    return [comps[b] for b in sorted(comps)]


def _closure_step(C: Comodule, vectors: List[Vector]) -> List[Vector]:
    out = []
    for v in vectors:
        out.append(v)
        out.append(C.d.apply(v))
        for w in _coaction_components(C, v):
            out.append(w)
            out.append(C.d.apply(w))
    return [w for w in out if w]


def _echelon_by_degree(V: GradedSpace, vectors: List[Vector]) -> List[Vector]:
    e = linalg.Echelon()
    for v in vectors:
        for part in _split_homogeneous(V, v):
            e.add(part)
    return e.basis()


def one_step_span(C: Comodule, m: Vector) -> List[Vector]:
    """Basis of span{m, mⁱ, dm, dmⁱ} taken over homogeneous parts of m."""
    return _echelon_by_degree(C.space, _closure_step(C, _split_homogeneous(C.space, m)))


def _as_vector(C: Comodule, m: Union[Vector, Mapping[str, object]]) -> Vector:
    out: Vector = {}
    for k, c in m.items():
        i = k if isinstance(k, int) else C.space.index(k)
        c = scalar(c)
        if c:
            out[i] = c
    return out


def finite_subcomodule(C: Comodule, m) -> Tuple[Comodule, GradedMap]:
    """Smallest d- and γ-stable graded subspace containing m, with its inclusion.

    The subcomodule basis is the reduced echelon basis; each vector is
    labelled by its pivot label in M.
    """
    M = C.space
    vec = _as_vector(C, m)
    basis = _echelon_by_degree(M, _split_homogeneous(M, vec))
    while True:
        grown = _echelon_by_degree(M, _closure_step(C, basis) + basis)
        if len(grown) == len(basis):
            break
        basis = grown
    pivots = [min(v) for v in basis]
    order = sorted(range(len(basis)), key=lambda k: (M.degs[pivots[k]], pivots[k]))
    basis = [basis[k] for k in order]
    pivots = [pivots[k] for k in order]
    S = GradedSpace(f"⟨{C.label}⟩", [(M.labels[p], M.degs[p]) for p in pivots],
                    C.space.window if basis else (0, 0))
    incl = GradedMap(S, M, 0, {k: dict(v) for k, v in enumerate(basis)})

    def coords(w: Vector) -> Vector:
        out = {k: w[p] for k, p in enumerate(pivots) if w.get(p)}
        check: Vector = {}
        for k, c in out.items():
            linalg.axpy(check, c, basis[k])
        if check != w:
            raise ArithmeticError("vector escaped the computed subcomodule")
        return out

    nb = C.B.space.dim
    d_cols: Dict[int, Vector] = {}
    g_cols: Dict[int, Vector] = {}
    for k, v in enumerate(basis):
        d_cols[k] = coords(C.d.apply(v))
        col: Vector = {}
        for b, comp in _components_by_b(C, v).items():
            for j, c in coords(comp).items():
                col[j * nb + b] = c
        g_cols[k] = col
    sub = Comodule(S, GradedMap(S, S, 1, d_cols), GradedMap(S, tensor(S, C.B.space), 0, g_cols), C.B,
                   f"sub({C.label})")
    return sub, incl


def _components_by_b(C: Comodule, v: Vector) -> Dict[int, Vector]:
    nb = C.B.space.dim
    comps: Dict[int, Vector] = {}
    for idx, c in C.gamma.apply(v).items():
        i, b = divmod(idx, nb)
        comps.setdefault(b, {})[i] = c
    return comps
