import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import seeds
from dghopf import linalg
from dghopf.comodules import (
    STANDARD_KINDS,
    Comodule,
    RepresentationData,
    cofree_comodule,
    comodule_from_rep,
    comodule_morphism_differential,
    finite_subcomodule,
    one_step_span,
    point_comodule,
    regular_comodule,
    rep_from_comodule,
    representation_of,
    standard_comodule,
    star_comodule,
    tensor_comodule,
    trivial_comodule,
    verify_comodule,
    verify_comodule_morphism,
)
from dghopf.corpus import exterior_hopf, exterior_morphism, interval_algebra
from dghopf.errors import NotGroupElement, NotHopf, NotRepresentation
from dghopf.free_modules import p_op
from dghopf.graded_core import GradedMap, GradedSpace, identity, tensor
from dghopf.rigidity import corpus_comodules

Lx = exterior_hopf(("x",))
Lxy = exterior_hopf(("x", "y"))
Z = GradedSpace("Z", [("z", 0)], (0, 0))
P = GradedSpace("P", [("a", 0), ("b", 1)], (0, 1))
dP = GradedMap.from_entries(P, P, 1, [("a", "b", 1)])
CORPUS = {B.label: corpus_comodules(B) for B in (Lx, Lxy)}


@pytest.mark.parametrize("B", [Lx, Lxy], ids=["Λ(x)", "Λ(x,y)"])
@pytest.mark.parametrize("kind", STANDARD_KINDS)
def test_standard_comodules_verify(B, kind):
    C = standard_comodule(kind, B, P, dP)
    rep = verify_comodule(C)
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("bname", sorted(CORPUS))
def test_corpus_comodules_verify(bname):
    assert len(CORPUS[bname]) >= 9
    for C in CORPUS[bname]:
        assert verify_comodule(C).ok, C.label


def test_star_coaction_on_generators():
    # τ∘(ς⊗I)∘Δ(x) = τ(-x⊗1 + 1⊗x)
    C = star_comodule(Lx)
    assert C.gamma.image("x") == {("x", "1"): 1, ("1", "x"): -1}


def test_star_coaction_on_top_word():
    # ς(xy) = xy, and each swap of two odd letters in τ costs a sign
    C = star_comodule(Lxy)
    assert C.gamma.image("xy") == {
        ("1", "xy"): 1, ("x", "y"): -1, ("y", "x"): 1, ("xy", "1"): 1,
    }


def test_trivial_and_point_coactions_go_through_the_unit():
    assert trivial_comodule(Lx).gamma.image("1") == {("1", "1"): 1}
    C = point_comodule(P, dP, Lx)
    assert C.gamma.image("b") == {("b", "1"): 1}


def test_comodules_need_an_antipode(monoid):
    with pytest.raises(NotHopf):
        regular_comodule(monoid)


def test_injected_counit_failure_is_witnessed():
    # γ(x) = 2 x⊗1 + 1⊗x gives (I⊗ε)γ(x) = 2x and breaks coassociativity
    C = regular_comodule(Lx)
    bad_gamma = C.gamma + GradedMap.from_entries(C.space, tensor(C.space, Lx.space), 0, [("x", ("x", "1"), 1)])
    rep = verify_comodule(Comodule(C.space, C.d, bad_gamma, Lx, "bad"))
    failed = {c.name: c for c in rep.failures}
    assert set(failed) == {"(γ⊗I)∘γ = (I⊗Δ)∘γ", "(I⊗ε)∘γ = ȷ⁻¹"}
    assert failed["(I⊗ε)∘γ = ȷ⁻¹"].witness.element == "x"


def test_rescaled_coaction_is_still_a_comodule():
    # γ(x) = x⊗1 + 2·1⊗x is Δ twisted by the Hopf automorphism x -> 2x
    C = regular_comodule(Lx)
    twisted = C.gamma + GradedMap.from_entries(C.space, tensor(C.space, Lx.space), 0, [("x", ("1", "x"), 1)])
    assert verify_comodule(Comodule(C.space, C.d, twisted, Lx, "twisted")).ok


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_tensor_of_corpus_comodules_verifies(i, j):
    C1, C2 = CORPUS[Lx.label][i], CORPUS[Lx.label][j]
    assert verify_comodule(tensor_comodule(C1, C2)).ok


def test_coaction_is_a_morphism_into_the_cofree_comodule():
    for C in CORPUS[Lxy.label]:
        cof = cofree_comodule(C.space, C.d, Lxy)
        assert verify_comodule_morphism(C.gamma, C, cof)
        assert comodule_morphism_differential(C.gamma, C, cof).is_zero()


# ---------------------------------------------------------------------------
# representations


@pytest.mark.parametrize("bname", sorted(CORPUS))
def test_comodule_rep_roundtrip(bname):
    for C in CORPUS[bname]:
        R = representation_of(C)
        back = comodule_from_rep(R)
        assert back.gamma == C.gamma
        assert representation_of(back).universal == R.universal


def test_representation_evaluated_on_a_group_element():
    A = interval_algebra()
    g = exterior_morphism(Lx, A, {"x": {"dt": 1}})
    C = regular_comodule(Lx)
    rho = rep_from_comodule(C, g, A)
    # ρ(g)(x⊗1) = (I⊗g)Δ(x) = x⊗1 + 1⊗dt
    assert rho.image(("x", "1")) == {("1", "dt"): 1, ("x", "1"): 1}
    with pytest.raises(NotGroupElement):
        rep_from_comodule(C, g.scale(2), A)


def test_non_module_universal_element_is_rejected():
    C = regular_comodule(Lx)
    carrier = tensor(C.space, Lx.space)
    bad = GradedMap.from_entries(carrier, carrier, 0, [(("1", "1"), ("1", "1"), 1)])
    with pytest.raises(NotRepresentation):
        comodule_from_rep(RepresentationData(C.space, C.d, Lx, bad))


def test_universal_element_failing_counit_is_rejected():
    carrier = tensor(Z, Lx.space)
    twice = p_op(GradedMap.from_entries(Z, carrier, 0, [("z", ("z", "1"), 2)]), Z, Lx)
    with pytest.raises(NotRepresentation):
        comodule_from_rep(RepresentationData(Z, GradedMap(Z, Z, 1, {}), Lx, twice))


# ---------------------------------------------------------------------------
# finite subcomodules


def test_subcomodule_of_cofree_at_constant():
    sub, incl = finite_subcomodule(cofree_comodule(Z, None, Lx), {("z", "1"): 1})
    assert sub.space.labels == (("z", "1"),)


def test_subcomodule_of_cofree_at_generator():
    # (I⊗Δ)(z⊗x) = z⊗x⊗1 + z⊗1⊗x, whose M-components are z⊗x and z⊗1
    C = cofree_comodule(Z, None, Lx)
    sub, incl = finite_subcomodule(C, {("z", "x"): 1})
    assert sub.space.labels == (("z", "1"), ("z", "x"))
    assert verify_comodule(sub).ok
    assert verify_comodule_morphism(incl, sub, C)


def test_subcomodule_of_regular_at_top_word_is_everything():
    sub, _ = finite_subcomodule(regular_comodule(Lxy), {"xy": 1})
    assert sub.dim == 4


def test_one_step_span_of_point_vector():
    C = point_comodule(P, dP, Lx)
    assert one_step_span(C, {0: 1}) == [{0: 1}, {1: 1}]


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_random_subcomodules_are_subcomodules(seed):
    rng = random.Random(seed)
    C = rng.choice(CORPUS[Lxy.label][:9])
    support = rng.sample(range(C.dim), rng.randint(1, min(3, C.dim)))
    m = {i: rng.choice([-2, -1, 1, 3]) for i in support}
    sub, incl = finite_subcomodule(C, m)
    assert verify_comodule(sub).ok
    assert verify_comodule_morphism(incl, sub, C)
    e = linalg.Echelon()
    for k in range(sub.dim):
        e.add(incl.apply({k: 1}))
    assert e.contains(m)


def test_identity_is_a_comodule_morphism():
    C = star_comodule(Lxy)
    assert verify_comodule_morphism(identity(C.space), C, C)
    assert not verify_comodule_morphism(identity(C.space), C, regular_comodule(Lxy))
