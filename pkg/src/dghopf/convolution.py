"""Convolution algebra Hom(B, A), its group and Lie algebra, exp/ln, homotopy pairs.

For a Hopf algebra B and a cdg-algebra A the convolution product of maps
B -> A is ``α⋆β = m_A∘(α⊗β)∘Δ_B`` with unit ``e = u_A∘ε_B``.  Group
elements are the cdg-algebra maps; tangential elements are the degree-0
cocycles υ with υ∘u = 0 and υ∘m = m∘(e⊗υ + υ⊗e).

One-parameter families are polynomials in a formal parameter ``s`` with
:class:`GradedMap` coefficients (:class:`PolyMap`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .dg_structures import (
    HopfData,
    conilpotency_filtration,
    iterated_coproduct,
    iterated_product,
    verify_morphism,
)
from .errors import (
    DegreeError,
    FlavorMismatch,
    NoSolution,
    NotConilpotent,
    NotGroupElement,
    NotTangential,
    SpaceMismatch,
)
from .graded_core import (
    GradedMap,
    compose,
    compose_all,
    hom_differential,
    scalar,
    solve_maps,
    tensor_map,
    zero,
)
from .report import Report


# ---------------------------------------------------------------------------
# the convolution product


def conv_unit(B: HopfData, A: HopfData) -> GradedMap:
    """e = u_A∘ε_B."""
    return compose(A.u, B.eps)


def _check_shape(alpha: GradedMap, B: HopfData, A: HopfData) -> None:
    if alpha.source != B.space or alpha.target != A.space:
        raise SpaceMismatch(f"expected a map {B.space.name} -> {A.space.name}")


def star2(a: GradedMap, b: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    """α⋆β = m_A∘(α⊗β)∘Δ_B."""
    return compose_all(A.m, tensor_map(a, b), B.delta)


def star(elements: Sequence[GradedMap], B: HopfData, A: HopfData) -> GradedMap:
    """α₁⋆...⋆αₙ = m_A^{(n)}∘(α₁⊗...⊗αₙ)∘Δ_B^{(n)}; the empty product is e."""
    for a in elements:
        _check_shape(a, B, A)
    n = len(elements)
    if n == 0:
        return conv_unit(B, A)
    if n == 1:
        return elements[0]
    return compose_all(iterated_product(A, n), tensor_map(*elements), iterated_coproduct(B, n))


def conv_power(a: GradedMap, n: int, B: HopfData, A: HopfData) -> GradedMap:
    """a^{⋆n} by repeated binary products."""
    out = conv_unit(B, A)
    for _ in range(n):
        out = star2(out, a, B, A)
    return out


def conv_differential(a: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    return hom_differential(a, B.d, A.d)


def graded_bracket(a: GradedMap, b: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    """[a, b] = a⋆b - (-1)^{|a||b|} b⋆a."""
    x, y = star2(a, b, B, A), star2(b, a, B, A)
    return x - y if (a.degree * b.degree) % 2 == 0 else x + y


# ---------------------------------------------------------------------------
# group and Lie algebra


def group_report(g: GradedMap, B: HopfData, A: HopfData) -> Report:
    _check_shape(g, B, A)
    r = Report("group element")
    r.flag("degree 0", g.degree == 0 or g.is_zero())
    r.zero("d_{B,A} g = 0", conv_differential(g, B, A))
    r.equal("g∘u_B = u_A", compose(g, B.u), A.u)
    r.equal("g∘m_B = m_A∘(g⊗g)", compose(g, B.m), compose(A.m, tensor_map(g, g)))
    return r


def is_group_element(g: GradedMap, B: HopfData, A: HopfData) -> bool:
    return group_report(g, B, A).ok


def group_inverse(g: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    """g⁻¹ = g∘ς_B, checked on both sides."""
    if not is_group_element(g, B, A):
        raise NotGroupElement("inverse requested for a non-group element")
    inv = compose(g, B.antipode)
    e = conv_unit(B, A)
    if star2(g, inv, B, A) != e or star2(inv, g, B, A) != e:
        raise NotGroupElement("g∘ς is not a two-sided convolution inverse")
    return inv


def tangential_report(v: GradedMap, B: HopfData, A: HopfData) -> Report:
    _check_shape(v, B, A)
    e = conv_unit(B, A)
    r = Report("tangential element")
    r.flag("degree 0", v.degree == 0 or v.is_zero())
    r.zero("d_{B,A} υ = 0", conv_differential(v, B, A))
    r.zero("υ∘u_B = 0", compose(v, B.u))
    r.equal("υ∘m_B = m_A∘(e⊗υ + υ⊗e)", compose(v, B.m), compose(A.m, tensor_map(e, v) + tensor_map(v, e)))
    return r


def is_tangential(v: GradedMap, B: HopfData, A: HopfData) -> bool:
    return tangential_report(v, B, A).ok


def lie_bracket(v1: GradedMap, v2: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    if not (is_tangential(v1, B, A) and is_tangential(v2, B, A)):
        raise NotTangential("bracket arguments must be tangential")
    return star2(v1, v2, B, A) - star2(v2, v1, B, A)


def group_action(g: GradedMap, x: GradedMap, B: HopfData, A: HopfData, k: HopfData) -> GradedMap:
    """g.x = (u_A∘g)⋆x for g a group element B -> k and x one B -> A."""
    if g.source != B.space or g.target != k.space:
        raise SpaceMismatch("acting element must be a map B -> k")
    _check_shape(x, B, A)
    return star2(compose(A.u, g), x, B, A)


# ---------------------------------------------------------------------------
# exp and ln


def conilpotency_index(B: HopfData) -> int:
    cached = B.__dict__.get("_conilpotency_index")
    if cached is None:
        cached = conilpotency_filtration(B).index
        cached = -1 if cached is None else cached
        object.__setattr__(B, "_conilpotency_index", cached)
    if cached < 0:
        raise NotConilpotent(f"{B.label} is not conilpotent")
    return cached


def exp_conv(v: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    """exp(υ) = Σ_{n=0}^{N} υ^{⋆n}/n!, N the conilpotency index of B."""
    if not is_tangential(v, B, A):
        raise NotTangential("exp is defined on tangential elements")
    N = conilpotency_index(B)
    out = conv_unit(B, A)
    power = out
    for n in range(1, N + 1):
        power = star2(power, v, B, A)
        out = out + power.scale(Fraction(1, factorial(n)))
    return out


def ln_conv(g: GradedMap, B: HopfData, A: HopfData) -> GradedMap:
    """ln(g) = -Σ_{n=1}^{N} ((-1)^n/n) ḡ^{⋆n} with ḡ = g - e."""
    if not is_group_element(g, B, A):
        raise NotGroupElement("ln is defined on group elements")
    N = conilpotency_index(B)
    e = conv_unit(B, A)
    gbar = g - e
    out = zero(B.space, A.space, 0)
    power = e
    for n in range(1, N + 1):
        power = star2(power, gbar, B, A)
        out = out + power.scale(Fraction(-((-1) ** n), n))
    return out


def exp_series_direct(v: GradedMap, B: HopfData, A: HopfData, terms: int) -> GradedMap:
    """exp through the n-fold formula m^{(n)}(υ⊗...⊗υ)Δ^{(n)}, without truncation logic."""
    out = conv_unit(B, A)
    for n in range(1, terms + 1):
        out = out + star([v] * n, B, A).scale(Fraction(1, factorial(n)))
    return out


# ---------------------------------------------------------------------------
# polynomial families


class PolyMap:
    """Σ_k s^k c_k with GradedMap coefficients sharing source, target and degree."""

    __slots__ = ("source", "target", "degree", "coeffs")

    def __init__(self, coeffs: Sequence[GradedMap], degree: Optional[int] = None):
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        c0 = coeffs[0]
        self.source, self.target = c0.source, c0.target
        if degree is None:
            nz = [c.degree for c in coeffs if not c.is_zero()]
            degree = nz[0] if nz else c0.degree
        self.degree = degree
        cs = []
        for c in coeffs:
            if not c.same_shape(c0):
                raise SpaceMismatch("polynomial coefficients must share source and target")
            if not c.is_zero() and c.degree != degree:
                raise DegreeError("polynomial coefficients must share one degree")
            cs.append(GradedMap(c.source, c.target, degree, c.cols, check=False))
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        self.coeffs: Tuple[GradedMap, ...] = tuple(cs)

    @classmethod
    def const(cls, f: GradedMap) -> "PolyMap":
        return cls([f])

    @classmethod
    def lift(cls, f: Union["PolyMap", GradedMap]) -> "PolyMap":
        return f if isinstance(f, PolyMap) else cls([f])

    def __repr__(self) -> str:
        return f"PolyMap({self.source.name} -> {self.target.name}, deg {self.degree}, order {len(self.coeffs) - 1})"

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> GradedMap:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return zero(self.source, self.target, self.degree)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        other = PolyMap.lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(k) == other.coeff(k) for k in range(n))

    __hash__ = None

    def __add__(self, other) -> "PolyMap":
        other = PolyMap.lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyMap([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self) -> "PolyMap":
        return self.scale(-1)

    def __sub__(self, other) -> "PolyMap":
        return self + (-PolyMap.lift(other))

    def scale(self, c) -> "PolyMap":
        return PolyMap([x.scale(c) for x in self.coeffs], self.degree)

    def derivative(self) -> "PolyMap":
        if len(self.coeffs) == 1:
            return PolyMap([zero(self.source, self.target, self.degree)], self.degree)
        return PolyMap([self.coeffs[k].scale(k) for k in range(1, len(self.coeffs))], self.degree)

    def at(self, s) -> GradedMap:
        s = scalar(s)
        out = zero(self.source, self.target, self.degree)
        p = Fraction(1)
        for c in self.coeffs:
            out = out + c.scale(p)
            p *= s
        return out

    def map_coeffs(self, fn: Callable[[GradedMap], GradedMap]) -> "PolyMap":
        return PolyMap([fn(c) for c in self.coeffs])


def poly_bilinear(op: Callable[[GradedMap, GradedMap], GradedMap], P, Q) -> PolyMap:
    P, Q = PolyMap.lift(P), PolyMap.lift(Q)
    terms: List[Optional[GradedMap]] = [None] * (len(P.coeffs) + len(Q.coeffs) - 1)
    for i, a in enumerate(P.coeffs):
        for j, b in enumerate(Q.coeffs):
            t = op(a, b)
            terms[i + j] = t if terms[i + j] is None else terms[i + j] + t
    return PolyMap(terms)


def poly_compose(P, Q) -> PolyMap:
    return poly_bilinear(compose, P, Q)


def poly_tensor(P, Q) -> PolyMap:
    return poly_bilinear(tensor_map, P, Q)


def poly_star(P, Q, B: HopfData, A: HopfData) -> PolyMap:
    return poly_bilinear(lambda a, b: star2(a, b, B, A), P, Q)


def poly_bracket(P, Q, B: HopfData, A: HopfData) -> PolyMap:
    return poly_bilinear(lambda a, b: graded_bracket(a, b, B, A), P, Q)


def poly_star_power(P, n: int, B: HopfData, A: HopfData) -> PolyMap:
    out = PolyMap.const(conv_unit(B, A))
    for _ in range(n):
        out = poly_star(out, P, B, A)
    return out


# ---------------------------------------------------------------------------
# homotopy pairs

FLAVORS = ("algebra", "hopf", "tangential")


@dataclass
class HomotopyPair:
    """A family f(s) of degree-0 maps together with its flow ξ(s) of degree -1.

    ``src`` and ``dst`` are the structures the maps run between; for the
    ``hopf`` flavor both must be Hopf algebras.
    """

    f: PolyMap
    xi: PolyMap
    flavor: str
    src: HopfData
    dst: HopfData

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        self.f = PolyMap.lift(self.f)
        self.xi = PolyMap.lift(self.xi)
        if self.xi.is_zero():
            self.xi = PolyMap([zero(self.src.space, self.dst.space, -1)], -1)

    @property
    def start(self) -> GradedMap:
        return self.f.at(0)

    @property
    def end(self) -> GradedMap:
        return self.f.at(1)


def pair_defects(hp: HomotopyPair) -> List[Tuple[str, PolyMap]]:
    """Polynomial identities (as differences that must vanish) that depend on ξ."""
    B, A = hp.src, hp.dst
    f, xi = hp.f, hp.xi
    dxi = xi.map_coeffs(lambda c: hom_differential(c, B.d, A.d))
    out = [("flow d/ds f = d ξ", f.derivative() - dxi)]
    if hp.flavor in ("algebra", "hopf"):
        out.append(("ξ∘u = 0", poly_compose(xi, B.u)))
        rhs = poly_compose(A.m, poly_tensor(f, xi) + poly_tensor(xi, f))
        out.append(("ξ∘m = m∘(f⊗ξ + ξ⊗f)", poly_compose(xi, B.m) - rhs))
    if hp.flavor == "hopf":
        out.append(("ε∘ξ = 0", poly_compose(A.eps, xi)))
        rhs = poly_compose(poly_tensor(f, xi) + poly_tensor(xi, f), B.delta)
        out.append(("Δ∘ξ = (f⊗ξ + ξ⊗f)∘Δ", poly_compose(A.delta, xi) - rhs))
    if hp.flavor == "tangential":
        e = conv_unit(B, A)
        out.append(("σ∘u = 0", poly_compose(xi, B.u)))
        rhs = poly_compose(A.m, poly_tensor(e, xi) + poly_tensor(xi, e))
        out.append(("σ∘m = m∘(e⊗σ + σ⊗e)", poly_compose(xi, B.m) - rhs))
    return out


def verify_homotopy_pair(hp: HomotopyPair) -> Report:
    """Flow equation and flavor conditions as exact polynomial identities in s."""
    r = Report(f"{hp.flavor} homotopy pair")
    r.flag("f has degree 0", hp.f.degree == 0 or hp.f.is_zero())
    r.flag("ξ has degree -1", hp.xi.degree == -1 or hp.xi.is_zero())
    f0 = hp.start
    if hp.flavor in ("algebra", "hopf"):
        r.extend(verify_morphism(f0, hp.src, hp.dst, "algebra"), "f(0): ")
    if hp.flavor == "hopf":
        r.extend(verify_morphism(f0, hp.src, hp.dst, "coalgebra"), "f(0): ")
    if hp.flavor == "tangential":
        r.extend(tangential_report(f0, hp.src, hp.dst), "υ(0): ")
    for name, defect in pair_defects(hp):
        for k, c in enumerate(defect.coeffs):
            r.zero(f"{name} [s^{k}]", c)
    return r


def constant_pair(f: GradedMap, src: HopfData, dst: HopfData, flavor: str = "algebra") -> HomotopyPair:
    return HomotopyPair(PolyMap.const(f), PolyMap.const(zero(src.space, dst.space, -1)), flavor, src, dst)


def search_homotopy(g: GradedMap, g_tilde: GradedMap, src: HopfData, dst: HopfData,
                    flow_degree: int = 1, flavor: str = "algebra") -> Optional[HomotopyPair]:
    """Look for a pair along f(s) = (1-s) g + s g̃ with ξ of s-degree ≤ flow_degree.

    Returns None when the bounded family has no solution; that is not a
    proof that g and g̃ are not homotopic.
    """
    if not g.same_shape(g_tilde):
        raise SpaceMismatch("endpoints must share source and target")
    f = PolyMap([g, g_tilde - g])
    unknowns = [(src.space, dst.space, -1)] * (flow_degree + 1)

    def residual(xs):
        hp = HomotopyPair(f, PolyMap(xs, -1), flavor, src, dst)
        out = []
        for _, defect in pair_defects(hp):
            out.extend(defect.coeff(k) for k in range(flow_degree + 3))
        return out

    try:
        sol, _ = solve_maps(unknowns, residual)
    except NoSolution:
        return None
    hp = HomotopyPair(f, PolyMap(sol, -1), flavor, src, dst)
    return hp


# ---------------------------------------------------------------------------
# transports of homotopy pairs


def _need(hp: HomotopyPair, flavor: str) -> None:
    if hp.flavor != flavor:
        raise FlavorMismatch(f"expected a {flavor} pair, got {hp.flavor}")


def transport_product(p1: HomotopyPair, p2: HomotopyPair) -> HomotopyPair:
    """(g₁⋆g₂, λ₁⋆g₂ + g₁⋆λ₂)."""
    _need(p1, "algebra")
    _need(p2, "algebra")
    B, A = p1.src, p1.dst
    f = poly_star(p1.f, p2.f, B, A)
    xi = poly_star(p1.xi, p2.f, B, A) + poly_star(p1.f, p2.xi, B, A)
    return HomotopyPair(f, xi, "algebra", B, A)


def transport_inverse(p: HomotopyPair) -> HomotopyPair:
    """(g∘ς, λ∘ς)."""
    _need(p, "algebra")
    s = p.src.antipode
    return HomotopyPair(poly_compose(p.f, s), poly_compose(p.xi, s), "algebra", p.src, p.dst)


def transport_postcompose(pf: HomotopyPair, pg: HomotopyPair) -> HomotopyPair:
    """(f∘g, f∘λ + σ∘g) for (f, σ) on A -> A′ and (g, λ) on B -> A."""
    _need(pf, "algebra")
    _need(pg, "algebra")
    f = poly_compose(pf.f, pg.f)
    xi = poly_compose(pf.f, pg.xi) + poly_compose(pf.xi, pg.f)
    return HomotopyPair(f, xi, "algebra", pg.src, pf.dst)


def transport_precompose(pg: HomotopyPair, ppsi: HomotopyPair) -> HomotopyPair:
    """(g′∘ψ, λ′∘ψ + g′∘ξ) for (g′, λ′) on B′ -> A and a Hopf pair (ψ, ξ) on B -> B′."""
    _need(pg, "algebra")
    _need(ppsi, "hopf")
    f = poly_compose(pg.f, ppsi.f)
    xi = poly_compose(pg.xi, ppsi.f) + poly_compose(pg.f, ppsi.xi)
    return HomotopyPair(f, xi, "algebra", ppsi.src, pg.dst)


def transport_bracket(p1: HomotopyPair, p2: HomotopyPair) -> HomotopyPair:
    """([υ₁,υ₂], [σ₁,υ₂] + [υ₁,σ₂])."""
    _need(p1, "tangential")
    _need(p2, "tangential")
    B, A = p1.src, p1.dst
    f = poly_bracket(p1.f, p2.f, B, A)
    xi = poly_bracket(p1.xi, p2.f, B, A) + poly_bracket(p1.f, p2.xi, B, A)
    return HomotopyPair(f, xi, "tangential", B, A)


def transport_tangent_postcompose(pf: HomotopyPair, pv: HomotopyPair) -> HomotopyPair:
    """(f∘υ, f∘σ + λ∘υ) for an algebra pair (f, λ) on A -> A′."""
    _need(pf, "algebra")
    _need(pv, "tangential")
    f = poly_compose(pf.f, pv.f)
    xi = poly_compose(pf.f, pv.xi) + poly_compose(pf.xi, pv.f)
    return HomotopyPair(f, xi, "tangential", pv.src, pf.dst)


def transport_tangent_precompose(pv: HomotopyPair, ppsi: HomotopyPair) -> HomotopyPair:
    """(υ′∘ψ, υ′∘ξ + σ′∘ψ) for a Hopf pair (ψ, ξ) on B -> B′."""
    _need(pv, "tangential")
    _need(ppsi, "hopf")
    f = poly_compose(pv.f, ppsi.f)
    xi = poly_compose(pv.f, ppsi.xi) + poly_compose(pv.xi, ppsi.f)
    return HomotopyPair(f, xi, "tangential", ppsi.src, pv.dst)


def transport_exp(pv: HomotopyPair) -> HomotopyPair:
    """(exp υ(s), Σ_n Σ_j (1/n!) υ^{⋆j-1}⋆σ⋆υ^{⋆n-j})."""
    _need(pv, "tangential")
    B, A = pv.src, pv.dst
    N = conilpotency_index(B)
    powers = [poly_star_power(pv.f, n, B, A) for n in range(N + 1)]
    g = powers[0]
    lam = PolyMap.const(zero(B.space, A.space, -1))
    for n in range(1, N + 1):
        c = Fraction(1, factorial(n))
        g = g + powers[n].scale(c)
        for j in range(1, n + 1):
            term = poly_star(poly_star(powers[j - 1], pv.xi, B, A), powers[n - j], B, A)
            lam = lam + term.scale(c)
    return HomotopyPair(g, lam, "algebra", B, A)


def transport_ln(pg: HomotopyPair) -> HomotopyPair:
    """(ln g(s), -Σ_n Σ_j ((-1)^n/n) ḡ^{⋆j-1}⋆λ⋆ḡ^{⋆n-j})."""
    _need(pg, "algebra")
    B, A = pg.src, pg.dst
    N = conilpotency_index(B)
    gbar = pg.f - conv_unit(B, A)
    powers = [poly_star_power(gbar, n, B, A) for n in range(N + 1)]
    v = PolyMap.const(zero(B.space, A.space, 0))
    sigma = PolyMap.const(zero(B.space, A.space, -1))
    for n in range(1, N + 1):
        c = Fraction(-((-1) ** n), n)
        v = v + powers[n].scale(c)
        for j in range(1, n + 1):
            term = poly_star(poly_star(powers[j - 1], pg.xi, B, A), powers[n - j], B, A)
            sigma = sigma + term.scale(c)
    return HomotopyPair(v, sigma, "tangential", B, A)


TRANSPORTS = {
    "a": transport_product,
    "b": transport_inverse,
    "c": transport_postcompose,
    "d": transport_precompose,
    "lie_a": transport_bracket,
    "lie_b": transport_tangent_postcompose,
    "lie_c": transport_tangent_precompose,
    "exp": transport_exp,
    "ln": transport_ln,
}


def homotopy_transport(kind: str, *pairs: HomotopyPair) -> HomotopyPair:
    try:
        fn = TRANSPORTS[kind]
    except KeyError:
        raise ValueError(f"unknown transport kind {kind!r}") from None
    return fn(*pairs)
