import random

import pytest
from hypothesis import given, settings

from conftest import random_map, random_space, seeds
from dghopf.comodules import (
    cofree_comodule,
    finite_subcomodule,
    point_comodule,
    regular_comodule,
    verify_comodule_morphism,
)
from dghopf.convolution import HomotopyPair, PolyMap, conv_unit, search_homotopy, star2
from dghopf.corpus import (
    exterior_derivation,
    exterior_hopf,
    exterior_morphism,
    interval_algebra,
    sample_group_elements,
)
from dghopf.dg_structures import HopfData, tensor_algebra
from dghopf.graded_core import K, GradedMap, GradedSpace, compose, identity, sign, tensor, zero
from dghopf.rigidity import (
    NatEndo,
    S_component,
    agreement_report,
    basis_duality,
    component_at_alpha,
    corpus_comodules,
    double_dual_morphism,
    dual_characterization_holds,
    dual_coaction_basis,
    dual_coaction_hom,
    dual_comodule,
    dual_morphism,
    dual_report,
    extract_alpha,
    inverse_report,
    is_tensor_nat,
    nat_component,
    nat_transport,
    naturality_holds,
    probe_pairs,
    sigma_component,
    sigma_component_alpha,
    transported_component,
    triangle_report,
    verify_nat_homotopy_pair,
)

Lx = exterior_hopf(("x",))
Lxy = exterior_hopf(("x", "y"))
A = interval_algebra()
AA = tensor_algebra(A, A, "A⊗A")
P = GradedSpace("P", [("a", 0), ("b", 1)], (0, 1))
dP = GradedMap.from_entries(P, P, 1, [("a", "b", 1)])
CORPUS_X = corpus_comodules(Lx)
CORPUS_XY = corpus_comodules(Lxy)


# ---------------------------------------------------------------------------
# duals of finite complexes


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_triangle_identities_for_random_spaces(seed):
    rng = random.Random(seed)
    D = basis_duality(random_space(rng, "V", 4))
    assert triangle_report(D).ok
    assert triangle_report(D.flipped()).ok


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_double_dual_and_characterization(seed):
    rng = random.Random(seed)
    X, Y = random_space(rng, "X"), random_space(rng, "Y")
    psi = random_map(rng, X, Y, rng.randint(-1, 2))
    psi_dual = dual_morphism(psi)
    assert dual_characterization_holds(psi, psi_dual)
    assert double_dual_morphism(psi) == psi


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_dual_reverses_composition_with_koszul_sign(seed):
    rng = random.Random(seed)
    X, Y, Z = (random_space(rng, n) for n in "XYZ")
    d1, d2 = rng.randint(-1, 1), rng.randint(-1, 1)
    psi = random_map(rng, X, Y, d1)
    phi = random_map(rng, Y, Z, d2)
    lhs = dual_morphism(compose(phi, psi))
    rhs = compose(dual_morphism(psi), dual_morphism(phi))
    assert lhs == rhs.scale(sign(d1 * d2))


def test_dual_of_odd_map_picks_up_sign():
    # ψ∨(f) = (-1)^{|ψ||f|} f∘ψ: for ψ: a -> b of degree 1, ψ∨(e^b) = -e^a
    psi = GradedMap.from_entries(P, P, 1, [("a", "b", 1)])
    assert dual_morphism(psi).image("e^b") == {"e^a": -1}


# ---------------------------------------------------------------------------
# dual comodules


def test_dual_of_regular_comodule():
    D = dual_comodule(regular_comodule(Lx)).dual
    assert D.gamma.image("e^1") == {("e^1", "1"): 1, ("e^x", "x"): 1}
    assert D.gamma.image("e^x") == {("e^x", "1"): 1}


def test_dual_differential_of_point_complex():
    # d(e^i) = -(-1)^{|i|} Σ_j D_ij e^j with d a = b gives d(e^b) = e^a
    D = dual_comodule(point_comodule(P, dP, Lx)).dual
    assert D.d.image("e^b") == {"e^a": 1}
    assert D.d.image("e^a") == {}


@pytest.mark.parametrize("C", CORPUS_X + CORPUS_XY, ids=lambda C: C.label)
def test_dual_report_on_corpus(C):
    rep = dual_report(C)
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("C", CORPUS_XY, ids=lambda C: C.label)
def test_dual_coaction_routes_agree(C):
    assert dual_coaction_basis(C) == dual_coaction_hom(C)


def test_dual_of_comodule_morphism_is_comodule_morphism():
    cof = cofree_comodule(GradedSpace("Z", [("z", 0)], (0, 0)), None, Lxy)
    sub, incl = finite_subcomodule(cof, {("z", "x"): 1})
    assert verify_comodule_morphism(incl, sub, cof)
    dual_incl = dual_morphism(incl)
    assert verify_comodule_morphism(dual_incl, dual_comodule(cof).dual, dual_comodule(sub).dual)


# ---------------------------------------------------------------------------
# natural endomorphisms


def test_unit_gives_identity_components():
    e = NatEndo(conv_unit(Lxy, AA), AA, Lxy)
    for C in CORPUS_XY:
        assert nat_component(e, C) == identity(tensor(C.space, AA.space))


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_components_turn_convolution_into_composition(seed):
    rng = random.Random(seed)
    a = random_map(rng, Lxy.space, AA.space, rng.randint(-1, 1))
    b = random_map(rng, Lxy.space, AA.space, rng.randint(-1, 1))
    C = rng.choice(CORPUS_XY)
    lhs = component_at_alpha(star2(a, b, Lxy, AA), C, AA)
    assert lhs == compose(component_at_alpha(a, C, AA), component_at_alpha(b, C, AA))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_alpha_is_recovered_from_regular_component(seed):
    rng = random.Random(seed)
    a = random_map(rng, Lxy.space, AA.space, rng.randint(-1, 2))
    comp = component_at_alpha(a, regular_comodule(Lxy), AA)
    assert extract_alpha(comp, Lxy, AA) == a


def test_naturality_against_comodule_morphisms():
    a = GradedMap.from_entries(Lx.space, AA.space, 1, [("1", ("dt", "t"), 1), ("x", ("dt", "dt"), 2)])
    eta = NatEndo(a, AA, Lx)
    for C in CORPUS_X:
        cof = cofree_comodule(C.space, C.d, Lx)
        assert naturality_holds(eta, C.gamma, C, cof)
    reg = regular_comodule(Lx)
    triv = CORPUS_X[0]
    assert naturality_holds(eta, Lx.u, triv, reg)


@pytest.mark.parametrize("B", [Lx, Lxy], ids=["Λ(x)", "Λ(x,y)"])
def test_tensor_naturality_matches_group_elements(B):
    probes = probe_pairs(B)
    g = sample_group_elements(B, A, 1, seed=2)[0]
    v = exterior_derivation(B, A, {"x": {"dt": 1}})
    assert is_tensor_nat(NatEndo(g, A, B), probes)
    assert not is_tensor_nat(NatEndo(g.scale(2), A, B), probes)
    assert not is_tensor_nat(NatEndo(v, A, B), probes)


def test_transport_along_algebra_map():
    # A -> A⊗A, a -> a⊗1
    f = GradedMap.from_entries(A.space, AA.space, 0, [(l, (l, "1"), 1) for l in A.space.labels])
    g = exterior_morphism(Lxy, A, {"x": {"dt": 1}, "y": {"dt": -1}})
    eta = NatEndo(g, A, Lxy)
    moved = nat_transport(f, eta, AA)
    for C in CORPUS_XY[:7]:
        assert nat_component(moved, C) == transported_component(f, eta, AA, C)


# ---------------------------------------------------------------------------
# the two inverse formulas


@pytest.mark.parametrize("degree", [-1, 0, 1, 2])
def test_sigma_and_S_agree_for_any_alpha_degree(degree):
    rng = random.Random(degree)
    a = random_map(rng, Lx.space, AA.space, degree, density=1.0)
    eta = NatEndo(a, AA, Lx)
    rep = agreement_report(eta, CORPUS_X)
    assert rep.ok, rep.to_text()
    for C in CORPUS_X:
        assert sigma_component(eta, C) == sigma_component_alpha(eta, C)


def test_sigma_and_S_agree_on_two_generators():
    rng = random.Random(99)
    a = random_map(rng, Lxy.space, A.space, 1, density=1.0)
    eta = NatEndo(a, A, Lxy)
    comodules = CORPUS_XY[:7]
    assert agreement_report(eta, comodules).ok


def test_S_inverts_group_components():
    g = exterior_morphism(Lxy, A, {"x": {"dt": 2}, "y": {"dt": 1}})
    rep = inverse_report(NatEndo(g, A, Lxy), CORPUS_XY)
    assert rep.ok, rep.to_text()


def test_S_of_basic_group_element_at_regular():
    # S(ξ) is ξ for g∘ς, here x -> -dt
    g = exterior_morphism(Lx, A, {"x": {"dt": 1}})
    inv = exterior_morphism(Lx, A, {"x": {"dt": -1}})
    C = regular_comodule(Lx)
    assert S_component(NatEndo(g, A, Lx), C) == component_at_alpha(inv, C, A)


# ---------------------------------------------------------------------------
# homotopy pairs of natural endomorphisms


def test_nat_homotopy_pair_from_search():
    g = exterior_morphism(Lx, A, {"x": {"dt": 1}})
    hp = search_homotopy(g, conv_unit(Lx, A), Lx, A)
    rep = verify_nat_homotopy_pair(hp, A, CORPUS_X, probe_pairs(Lx))
    assert rep.ok, rep.to_text()


def test_nat_homotopy_pair_with_nonzero_unit_component_fails():
    # A′ = span{1, w}, |w| = -1; ξ(1) = w makes λ^k multiplication by w
    W = GradedSpace("Aw", [("w", -1), ("1", 0)], (-1, 0))
    WW = tensor(W, W)
    m = GradedMap.from_entries(WW, W, 0, [(("1", "1"), "1", 1), (("1", "w"), "w", 1), (("w", "1"), "w", 1)])
    u = GradedMap.from_entries(K, W, 0, [("1", "1", 1)])
    Aw = HopfData(space=W, d=zero(W, W, 1), u=u, m=m, name="Aw")
    e = conv_unit(Lx, Aw)
    xi = GradedMap.from_entries(Lx.space, W, -1, [("1", "w", 1)])
    hp = HomotopyPair(PolyMap.const(e), PolyMap.const(xi), "algebra", Lx, Aw)
    rep = verify_nat_homotopy_pair(hp, Aw, CORPUS_X[:3])
    assert not rep.ok
    assert {c.name for c in rep.failures} == {"λ^k = 0, s^0"}
