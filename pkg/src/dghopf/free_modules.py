"""Free right dg-modules M⊗A over a cdg-algebra A.

Module morphisms M⊗A -> N⊗A correspond to plain maps M -> N⊗A through
the operators

    𝔭(α) = (I_N⊗m_A)∘(α⊗I_A)                       Hom(M, N⊗A)   -> Hom(M⊗A, N⊗A)
    𝔮(φ) = φ∘(I_M⊗u_A)∘ȷ⁻¹_M                       Hom(M⊗A, N⊗A) -> Hom(M, N⊗A)
    𝔯(φ) = φ∘(I_M⊗m_A) - (I_N⊗m_A)∘(φ⊗I_A)         Hom(M⊗A, N⊗A) -> Hom(M⊗A⊗A, N⊗A)
    𝔰(β) = β∘(I_M⊗u_A⊗I_A)∘(ȷ⁻¹_M⊗I_A)             Hom(M⊗A⊗A, N⊗A) -> Hom(M⊗A, N⊗A)

with 𝔯∘𝔭 = 0, 𝔮∘𝔭 = I and 𝔭∘𝔮 + 𝔰∘𝔯 = I.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from . import linalg
from .dg_structures import HopfData, verify_morphism
from .errors import NotAlgebraMorphism, NotModuleMorphism, SpaceMismatch
from .graded_core import (
    GradedMap,
    GradedSpace,
    braiding,
    compose,
    compose_all,
    elementary,
    hom_differential,
    identity,
    map_slots,
    right_unitor_inv,
    solve_maps,
    tensor,
    tensor_differential,
    tensor_map,
    zero,
)
from .report import Report


@dataclass(frozen=True, eq=False)
class FreeModule:
    """The free right dg-module (M⊗A, d_{M⊗A}) with action I_M⊗m_A."""

    M: GradedSpace
    dM: GradedMap
    A: HopfData

    @property
    def carrier(self) -> GradedSpace:
        return tensor(self.M, self.A.space)

    @property
    def d(self) -> GradedMap:
        return tensor_differential(self.dM, self.A.d)

    @property
    def action(self) -> GradedMap:
        return tensor_map(identity(self.M), self.A.m)


def free_module(M: GradedSpace, dM: Optional[GradedMap], A: HopfData) -> FreeModule:
    return FreeModule(M, dM if dM is not None else zero(M, M, 1), A)


def p_op(alpha: GradedMap, N: GradedSpace, A: HopfData) -> GradedMap:
    """𝔭(α) for α: M -> N⊗A."""
    return compose(tensor_map(identity(N), A.m), tensor_map(alpha, identity(A.space)))


def q_op(phi: GradedMap, M: GradedSpace, A: HopfData) -> GradedMap:
    """𝔮(φ) for φ: M⊗A -> N⊗A."""
    return compose_all(phi, tensor_map(identity(M), A.u), right_unitor_inv(M))


def r_op(phi: GradedMap, M: GradedSpace, N: GradedSpace, A: HopfData) -> GradedMap:
    """𝔯(φ); vanishes exactly on module morphisms."""
    IA = identity(A.space)
    return (compose(phi, tensor_map(identity(M), A.m))
            - compose(tensor_map(identity(N), A.m), tensor_map(phi, IA)))


def s_op(beta: GradedMap, M: GradedSpace, A: HopfData) -> GradedMap:
    """𝔰(β) for β: M⊗A⊗A -> N⊗A."""
    IA = identity(A.space)
    return compose_all(beta, tensor_map(identity(M), A.u, IA), tensor_map(right_unitor_inv(M), IA))


@dataclass(frozen=True)
class PQRS:
    M: GradedSpace
    N: GradedSpace
    A: HopfData

    def p(self, alpha: GradedMap) -> GradedMap:
        return p_op(alpha, self.N, self.A)

    def q(self, phi: GradedMap) -> GradedMap:
        return q_op(phi, self.M, self.A)

    def r(self, phi: GradedMap) -> GradedMap:
        return r_op(phi, self.M, self.N, self.A)

    def s(self, beta: GradedMap) -> GradedMap:
        return s_op(beta, self.M, self.A)


def pqrs(M: GradedSpace, N: GradedSpace, A: HopfData) -> PQRS:
    return PQRS(M, N, A)


def _all_degrees(V: GradedSpace, W: GradedSpace) -> List[int]:
    return sorted({w - v for v in set(V.degs) for w in set(W.degs)})


def _elementary_maps(V: GradedSpace, W: GradedSpace):
    for deg in _all_degrees(V, W):
        for j, i in map_slots(V, W, deg):
            yield elementary(V, W, deg, j, i)


def pqrs_report(M: GradedSpace, N: GradedSpace, A: HopfData) -> Report:
    """Check 𝔯∘𝔭 = 0, 𝔮∘𝔭 = I and 𝔭∘𝔮 + 𝔰∘𝔯 = I on every elementary map.

    The operators are linear, so agreement on a basis of each Hom space is
    agreement as operators.
    """
    ops = pqrs(M, N, A)
    r = Report(f"free module operators {M.name}, {N.name} over {A.label}")
    MA, NA = tensor(M, A.space), tensor(N, A.space)
    rp_ok = qp_ok = split_ok = True
    for alpha in _elementary_maps(M, NA):
        p = ops.p(alpha)
        rp_ok = rp_ok and ops.r(p).is_zero()
        qp_ok = qp_ok and ops.q(p) == alpha
    for phi in _elementary_maps(MA, NA):
        split_ok = split_ok and ops.p(ops.q(phi)) + ops.s(ops.r(phi)) == phi
    r.flag("𝔯∘𝔭 = 0", rp_ok)
    r.flag("𝔮∘𝔭 = I", qp_ok)
    r.flag("𝔭∘𝔮 + 𝔰∘𝔯 = I", split_ok)
    return r


def is_module_morphism(phi: GradedMap, src: FreeModule, dst: FreeModule) -> bool:
    if phi.source != src.carrier or phi.target != dst.carrier:
        raise SpaceMismatch("map does not connect the given free modules")
    return r_op(phi, src.M, dst.M, src.A).is_zero()


def module_hom_differential(phi: GradedMap, src: FreeModule, dst: FreeModule) -> GradedMap:
    return hom_differential(phi, src.d, dst.d)


def commutator(phi: GradedMap, psi: GradedMap) -> GradedMap:
    """[φ, ψ] = φ∘ψ - (-1)^{|φ||ψ|} ψ∘φ."""
    a, b = compose(phi, psi), compose(psi, phi)
    return a - b if (phi.degree * psi.degree) % 2 == 0 else a + b


def tensor_module_morphism(
    phi: GradedMap, src: FreeModule, dst: FreeModule,
    phi2: GradedMap, src2: FreeModule, dst2: FreeModule,
) -> GradedMap:
    """φ⊗_{m_A}φ′ = (I_{N⊗N′}⊗m_A)∘(I_N⊗τ_{A,N′}⊗I_A)∘(𝔮(φ)⊗φ′)."""
    A = src.A
    if not is_module_morphism(phi, src, dst) or not is_module_morphism(phi2, src2, dst2):
        raise NotModuleMorphism("both factors must be module morphisms")
    N, N2 = dst.M, dst2.M
    IA = identity(A.space)
    q = q_op(phi, src.M, A)
    return compose_all(
        tensor_map(identity(tensor(N, N2)), A.m),
        tensor_map(identity(N), braiding(A.space, N2), IA),
        tensor_map(q, phi2),
    )


def tensor_free_module(a: FreeModule, b: FreeModule) -> FreeModule:
    return FreeModule(tensor(a.M, b.M), tensor_differential(a.dM, b.dM), a.A)


def transport_endo(f: GradedMap, A: HopfData, A2: HopfData, phi: GradedMap, src: FreeModule, dst: FreeModule) -> GradedMap:
    """𝓔^M(f)(φ) = 𝔭((I_N⊗f)∘𝔮(φ)), moving a module map over A to one over A′."""
    if not verify_morphism(f, A, A2, "algebra").ok:
        raise NotAlgebraMorphism("transport requires a cdg-algebra morphism")
    alpha = compose(tensor_map(identity(dst.M), f), q_op(phi, src.M, A))
    return p_op(alpha, dst.M, A2)


def module_hom_basis(src: FreeModule, dst: FreeModule, degree: int) -> List[GradedMap]:
    """Basis of the module morphisms M⊗A -> N⊗A of the given degree, as the kernel of 𝔯."""
    M, N, A = src.M, dst.M, src.A

    def residual(xs):
        return [r_op(xs[0], M, N, A)]

    _, kern = solve_maps([(src.carrier, dst.carrier, degree)], residual)
    return [k[0] for k in kern]


def _flat(f: GradedMap):
    return {(j, i): c for j, col in f.cols.items() for i, c in col.items()}


def find_module_homotopy(phi: GradedMap, phi_tilde: GradedMap, src: FreeModule, dst: FreeModule,
                         basis: Optional[List[GradedMap]] = None) -> Optional[GradedMap]:
    """A degree -1 module morphism λ with d λ = φ̃ - φ, or None."""
    if basis is None:
        basis = module_hom_basis(src, dst, -1)
    target = _flat(phi_tilde - phi)
    columns = {k: _flat(module_hom_differential(b, src, dst)) for k, b in enumerate(basis)}
    rows = {}
    for k, col in columns.items():
        for key, c in col.items():
            rows.setdefault(key, {})[k] = c
    system = [(rows.get(key, {}), c) for key, c in target.items()]
    system.extend((r, Fraction(0)) for key, r in rows.items() if key not in target)
    res = linalg.solve(system, list(range(len(basis))))
    if res is None:
        return None
    lam = zero(src.carrier, dst.carrier, -1)
    for k, c in res[0].items():
        lam = lam + basis[k].scale(c)
    return lam


def homotopy_class_equal(phi: GradedMap, phi_tilde: GradedMap, src: FreeModule, dst: FreeModule) -> bool:
    return find_module_homotopy(phi, phi_tilde, src, dst) is not None
