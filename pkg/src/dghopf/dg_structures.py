"""Commutative dg-algebras, dg-coalgebras, bialgebras and Hopf algebras.

All four structures share one container, :class:`HopfData`.  Fields that a
structure does not need may be left as ``None``: an algebra only needs
``u`` and ``m``, a coalgebra only ``eps`` and ``delta``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional

from . import linalg
from .errors import DegreeError, DgHopfError, NotABialgebra, SpaceMismatch
from .graded_core import (
    K,
    GradedMap,
    GradedSpace,
    Vector,
    braiding,
    compose,
    compose_all,
    identity,
    kernel_basis,
    left_unitor,
    left_unitor_inv,
    relabel,
    right_unitor,
    right_unitor_inv,
    solve_maps,
    tensor,
    tensor_differential,
    tensor_map,
    zero,
)
from .report import Report

KINDS = ("algebra", "coalgebra", "bialgebra", "hopf")


@dataclass(frozen=True)
class HopfData:
    """Structure maps on a single graded space ``space``.

    ``u: k -> B``, ``m: B⊗B -> B``, ``eps: B -> k``, ``delta: B -> B⊗B``,
    ``antipode: B -> B`` and the differential ``d`` (degree +1).
    """

    space: GradedSpace
    d: GradedMap
    u: Optional[GradedMap] = None
    m: Optional[GradedMap] = None
    eps: Optional[GradedMap] = None
    delta: Optional[GradedMap] = None
    antipode: Optional[GradedMap] = None
    name: str = ""

    def __post_init__(self):
        B = self.space
        BB = tensor(B, B)
        shapes = {
            "d": (B, B),
            "u": (K, B),
            "m": (BB, B),
            "eps": (B, K),
            "delta": (B, BB),
            "antipode": (B, B),
        }
        for field_name, (src, tgt) in shapes.items():
            f = getattr(self, field_name)
            if f is None:
                continue
            if f.source != src or f.target != tgt:
                raise SpaceMismatch(f"{field_name} must map {src.name} -> {tgt.name}")
            if field_name != "d" and f.degree != 0 and not f.is_zero():
                raise DegreeError(f"{field_name} must have degree 0")

    @property
    def label(self) -> str:
        return self.name or self.space.name

    def has(self, kind: str) -> bool:
        need = {
            "algebra": ("u", "m"),
            "coalgebra": ("eps", "delta"),
            "bialgebra": ("u", "m", "eps", "delta"),
            "hopf": ("u", "m", "eps", "delta", "antipode"),
        }[kind]
        return all(getattr(self, f) is not None for f in need)

    def with_antipode(self, antipode: Optional[GradedMap]) -> "HopfData":
        return replace(self, antipode=antipode)

    @property
    def counit_unit(self) -> GradedMap:
        """e = u∘ε, the unit of the convolution algebra End(B)."""
        return compose(self.u, self.eps)


# aliases used in signatures to document which fields are required
CdgAlgebra = HopfData
DgCoalgebra = HopfData
CdgHopfAlgebra = HopfData


def ground_field() -> HopfData:
    """k itself with every structure map the canonical identification."""
    KK = tensor(K, K)
    return HopfData(
        space=K,
        d=zero(K, K, 1),
        u=identity(K),
        m=relabel(KK, K),
        eps=identity(K),
        delta=relabel(K, KK),
        antipode=identity(K),
        name="k",
    )


def m_k() -> GradedMap:
    return relabel(tensor(K, K), K)


def delta_k() -> GradedMap:
    return relabel(K, tensor(K, K))


def tensor_square_product(A: HopfData) -> GradedMap:
    """m_{A⊗A} = (m⊗m)∘(I⊗τ⊗I)."""
    I = identity(A.space)
    return compose(tensor_map(A.m, A.m), tensor_map(I, braiding(A.space, A.space), I))


def tensor_square_coproduct(B: HopfData) -> GradedMap:
    """Δ_{B⊗B} = (I⊗τ⊗I)∘(Δ⊗Δ)."""
    I = identity(B.space)
    return compose(tensor_map(I, braiding(B.space, B.space), I), tensor_map(B.delta, B.delta))


def tensor_algebra(A1: HopfData, A2: HopfData, name: str = "") -> HopfData:
    """The cdg-algebra A1⊗A2 with the Koszul-signed product."""
    S = tensor(A1.space, A2.space)
    I1, I2 = identity(A1.space), identity(A2.space)
    m = compose(tensor_map(A1.m, A2.m), tensor_map(I1, braiding(A2.space, A1.space), I2))
    u = compose(tensor_map(A1.u, A2.u), delta_k())
    d = tensor_differential(A1.d, A2.d)
    return HopfData(space=S, d=d, u=u, m=m, name=name or f"{A1.label}⊗{A2.label}")


# ---------------------------------------------------------------------------
# verification


def _check_algebra(H: HopfData, r: Report) -> None:
    B = H.space
    I = identity(B)
    dBB = tensor_differential(H.d, H.d)
    r.zero("algebra: d∘u = 0", compose(H.d, H.u))
    r.equal("algebra: m∘d_{A⊗A} = d∘m", compose(H.m, dBB), compose(H.d, H.m))
    r.equal("algebra: left unit", compose(H.m, tensor_map(H.u, I)), left_unitor(B))
    r.equal("algebra: right unit", compose(H.m, tensor_map(I, H.u)), right_unitor(B))
    r.equal("algebra: associativity", compose(H.m, tensor_map(H.m, I)), compose(H.m, tensor_map(I, H.m)))
    r.equal("algebra: commutativity", compose(H.m, braiding(B, B)), H.m)


def _check_coalgebra(H: HopfData, r: Report) -> None:
    B = H.space
    I = identity(B)
    dBB = tensor_differential(H.d, H.d)
    r.zero("coalgebra: ε∘d = 0", compose(H.eps, H.d))
    r.equal("coalgebra: Δ∘d = d_{B⊗B}∘Δ", compose(H.delta, H.d), compose(dBB, H.delta))
    r.equal("coalgebra: left counit", compose(tensor_map(H.eps, I), H.delta), left_unitor_inv(B))
    r.equal("coalgebra: right counit", compose(tensor_map(I, H.eps), H.delta), right_unitor_inv(B))
    r.equal("coalgebra: coassociativity",
            compose(tensor_map(H.delta, I), H.delta), compose(tensor_map(I, H.delta), H.delta))


def _check_bialgebra(H: HopfData, r: Report) -> None:
    r.equal("bialgebra: ε∘u = u_k", compose(H.eps, H.u), identity(K))
    r.equal("bialgebra: ε∘m = m_k∘(ε⊗ε)", compose(H.eps, H.m), compose(m_k(), tensor_map(H.eps, H.eps)))
    r.equal("bialgebra: Δ∘u = (u⊗u)∘Δ_k", compose(H.delta, H.u), compose(tensor_map(H.u, H.u), delta_k()))
    r.equal("bialgebra: Δ∘m = m_{B⊗B}∘(Δ⊗Δ)",
            compose(H.delta, H.m), compose(tensor_square_product(H), tensor_map(H.delta, H.delta)))


def _check_antipode(H: HopfData, r: Report) -> None:
    I = identity(H.space)
    e = H.counit_unit
    r.equal("hopf: m∘(ς⊗I)∘Δ = u∘ε", compose_all(H.m, tensor_map(H.antipode, I), H.delta), e)
    r.equal("hopf: m∘(I⊗ς)∘Δ = u∘ε", compose_all(H.m, tensor_map(I, H.antipode), H.delta), e)
    r.equal("hopf: ς cochain map", compose(H.d, H.antipode), compose(H.antipode, H.d))


def verify_structure(H: HopfData, kind: str) -> Report:
    """Check every defining identity of the requested kind of structure."""
    if kind not in KINDS:
        raise ValueError(f"unknown structure kind {kind!r}")
    if not H.has(kind):
        raise SpaceMismatch(f"bundle {H.label} lacks the maps required for {kind}")
    r = Report(f"{kind} {H.label}")
    r.zero("complex: d∘d = 0", compose(H.d, H.d))
    if kind in ("algebra", "bialgebra", "hopf"):
        _check_algebra(H, r)
    if kind in ("coalgebra", "bialgebra", "hopf"):
        _check_coalgebra(H, r)
    if kind in ("bialgebra", "hopf"):
        _check_bialgebra(H, r)
    if kind == "hopf":
        _check_antipode(H, r)
    return r


def solve_antipode(H: HopfData) -> GradedMap:
    """The unique degree-0 ς with m(ς⊗I)Δ = m(I⊗ς)Δ = u∘ε."""
    bi = verify_structure(H, "bialgebra")
    if not bi.ok:
        raise NotABialgebra(f"{H.label} is not a bialgebra: {bi.failures[0].name}")
    B = H.space
    I = identity(B)
    e = H.counit_unit

    def residual(xs):
        s = xs[0]
        return [
            compose_all(H.m, tensor_map(s, I), H.delta) - e,
            compose_all(H.m, tensor_map(I, s), H.delta) - e,
        ]

    sol, kern = solve_maps([(B, B, 0)], residual)
    if kern:
        raise DgHopfError("antipode equations have a non-unique solution; bialgebra data is inconsistent")
    s = sol[0]
    if compose(H.d, s) != compose(s, H.d):
        raise DgHopfError("solved antipode is not a cochain map")
    return s


def verify_antipode_properties(H: HopfData) -> Report:
    """ς is a cdg-algebra map and a dg-coalgebra anti-map."""
    B = H.space
    s = H.antipode
    r = Report(f"antipode properties {H.label}")
    r.equal("ς∘u = u", compose(s, H.u), H.u)
    r.equal("ς∘m = m∘(ς⊗ς)", compose(s, H.m), compose(H.m, tensor_map(s, s)))
    r.equal("ε∘ς = ε", compose(H.eps, s), H.eps)
    r.equal("Δ∘ς = τ∘(ς⊗ς)∘Δ", compose(H.delta, s), compose_all(braiding(B, B), tensor_map(s, s), H.delta))
    r.equal("d∘ς = ς∘d", compose(H.d, s), compose(s, H.d))
    return r


def verify_morphism(f: GradedMap, src: HopfData, dst: HopfData, kind: str) -> Report:
    """Check that f: src -> dst preserves the structure of the given kind."""
    if f.degree != 0 and not f.is_zero():
        raise DegreeError(f"a structure morphism has degree 0, got {f.degree}")
    if f.source != src.space or f.target != dst.space:
        raise SpaceMismatch("morphism does not connect the given structures")
    r = Report(f"{kind} morphism {src.label} -> {dst.label}")
    r.equal("cochain map", compose(dst.d, f), compose(f, src.d))
    if kind in ("algebra", "bialgebra", "hopf"):
        r.equal("f∘u = u'", compose(f, src.u), dst.u)
        r.equal("f∘m = m'∘(f⊗f)", compose(f, src.m), compose(dst.m, tensor_map(f, f)))
    if kind in ("coalgebra", "bialgebra", "hopf"):
        r.equal("ε'∘f = ε", compose(dst.eps, f), src.eps)
        r.equal("Δ'∘f = (f⊗f)∘Δ", compose(dst.delta, f), compose(tensor_map(f, f), src.delta))
    if kind == "hopf":
        r.equal("f∘ς = ς'∘f", compose(f, src.antipode), compose(dst.antipode, f))
    return r


# ---------------------------------------------------------------------------
# iterated structure maps


def iterated_product(A: HopfData, n: int) -> GradedMap:
    """m^{(n)}: A^{⊗n} -> A with m^{(1)} = I and m^{(n+1)} = m∘(m^{(n)}⊗I)."""
    if n < 1:
        raise ValueError("iterated product needs n >= 1")
    out = identity(A.space)
    I = identity(A.space)
    for _ in range(n - 1):
        out = compose(A.m, tensor_map(out, I))
    return out


def reduced_coproduct(C: HopfData) -> GradedMap:
    """Δ̄(x) = Δ(x) - u(1)⊗x - x⊗u(1)."""
    I = identity(C.space)
    return (C.delta
            - compose(tensor_map(C.u, I), left_unitor_inv(C.space))
            - compose(tensor_map(I, C.u), right_unitor_inv(C.space)))


def iterated_coproduct(C: HopfData, n: int, variant: str = "plain") -> GradedMap:
    """Δ^{(n)} with Δ^{(1)} = I and Δ^{(n+1)} = (Δ^{(n)}⊗I)∘Δ.

    ``variant`` selects the coproduct: ``plain`` uses Δ, ``reduced`` uses
    Δ̄, and ``on_tensor_square`` uses Δ_{B⊗B} on B⊗B.
    """
    if n < 1:
        raise ValueError("iterated coproduct needs n >= 1")
    if variant == "plain":
        base, space = C.delta, C.space
    elif variant == "reduced":
        base, space = reduced_coproduct(C), C.space
    elif variant == "on_tensor_square":
        base, space = tensor_square_coproduct(C), tensor(C.space, C.space)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    out = identity(space)
    I = identity(space)
    for _ in range(n - 1):
        out = compose(tensor_map(out, I), base)
    return out


def iterated_coproduct_right(C: HopfData, n: int) -> GradedMap:
    """Right-handed recursion Δ^{(n+1)} = (I⊗Δ^{(n)})∘Δ, equal by coassociativity."""
    out = identity(C.space)
    I = identity(C.space)
    for _ in range(n - 1):
        out = compose(tensor_map(I, out), C.delta)
    return out


def iterated_product_right(A: HopfData, n: int) -> GradedMap:
    out = identity(A.space)
    I = identity(A.space)
    for _ in range(n - 1):
        out = compose(A.m, tensor_map(I, out))
    return out


# ---------------------------------------------------------------------------
# conilpotency


def _restrict(f: GradedMap, basis: List[Vector]) -> List[Vector]:
    return [f.apply(v) for v in basis]


def _tensor_vec(a: Vector, b: Vector, dim_b: int) -> Vector:
    return {i * dim_b + j: x * y for i, x in a.items() for j, y in b.items()}


@dataclass
class ConilpotencyFiltration:
    """Layers B̄_0 ⊆ B̄_1 ⊆ ... of Ker ε, where B̄_n = Ker Δ̄^{(n+1)} ∩ Ker ε."""

    hopf: HopfData
    layers: List[List[Vector]]
    augmentation: List[Vector]
    index: Optional[int]

    def layer_contains(self, n: int, v: Vector) -> bool:
        e = linalg.Echelon()
        for b in self.layers[n]:
            e.add(b)
        return e.contains(v)

    def verify(self) -> Report:
        H = self.hopf
        r = Report(f"conilpotency filtration {H.label}")
        dimB = H.space.dim
        for n in range(1, len(self.layers)):
            r.flag(f"B̄_{n-1} ⊆ B̄_{n}", all(self.layer_contains(n, b) for b in self.layers[n - 1]))
        dbar = reduced_coproduct(H)
        for n, layer in enumerate(self.layers):
            r.flag(f"d(B̄_{n}) ⊆ B̄_{n}", all(self.layer_contains(n, H.d.apply(b)) for b in layer))
            span = linalg.Echelon()
            for k in range(1, n):
                for a in self.layers[k]:
                    for b in self.layers[n - k]:
                        span.add(_tensor_vec(a, b, dimB))
            r.flag(f"Δ̄(B̄_{n}) ⊆ Σ B̄_r⊗B̄_(n-r)", all(span.contains(dbar.apply(b)) for b in layer))
        return r


def conilpotency_filtration(H: HopfData, max_index: Optional[int] = None) -> ConilpotencyFiltration:
    """Compute B̄_n until it exhausts Ker ε (index) or the bound is reached (index None).

    The layers strictly increase until they stabilize, so ``dim Ker ε``
    steps always suffice.
    """
    aug = kernel_basis(H.eps)
    aug_dim = len(aug)
    bound = aug_dim if max_index is None else max_index
    layers: List[List[Vector]] = [[]]
    if aug_dim == 0:
        return ConilpotencyFiltration(H, layers, aug, 0)
    dbar = reduced_coproduct(H)
    power = dbar
    index = None
    for n in range(1, bound + 1):
        images = _restrict(power, aug)
        cols = {k: v for k, v in enumerate(images)}
        kern = linalg.kernel(cols, list(range(aug_dim)))
        layer = linalg.span_basis(_sum_vectors(aug, kv) for kv in kern)
        layers.append(layer)
        if len(layer) == aug_dim:
            index = n
            break
        power = compose(tensor_map(power, identity(H.space)), dbar)
    return ConilpotencyFiltration(H, layers, aug, index)


def _sum_vectors(basis: List[Vector], coeffs: Vector) -> Vector:
    out: Vector = {}
    for k, c in coeffs.items():
        linalg.axpy(out, c, basis[k])
    return out
