import random

import pytest
from hypothesis import given, settings

from conftest import random_map, random_space, seeds
from dghopf.corpus import exterior_hopf, exterior_morphism, interval_algebra
from dghopf.dg_structures import ground_field
from dghopf.errors import NotAlgebraMorphism, NotModuleMorphism
from dghopf.free_modules import (
    commutator,
    find_module_homotopy,
    free_module,
    homotopy_class_equal,
    is_module_morphism,
    module_hom_basis,
    p_op,
    pqrs,
    pqrs_report,
    tensor_free_module,
    tensor_module_morphism,
    transport_endo,
)
from dghopf.graded_core import GradedMap, GradedSpace, compose, identity, map_slots, tensor, zero

P = GradedSpace("P", [("a", 0), ("b", 1)])
W = GradedSpace("W", [("a", -1), ("b", 0)])
Z = GradedSpace("Z", [("z", 0)])

ALGEBRAS = {
    "A": interval_algebra(),
    "Λ(x)": exterior_hopf(("x",)),
    "Λ(x,y)": exterior_hopf(("x", "y")),
    "k": ground_field(),
}


@pytest.mark.parametrize("aname", sorted(ALGEBRAS))
@pytest.mark.parametrize("M,N", [(P, P), (P, W), (W, P), (Z, W)])
def test_operator_identities_on_corpus_triples(aname, M, N):
    rep = pqrs_report(M, N, ALGEBRAS[aname])
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("aname", ["A", "Λ(x,y)"])
@pytest.mark.parametrize("degree", [-1, 0, 1])
def test_module_maps_are_counted_by_plain_maps(aname, degree):
    # 𝔭 is a bijection onto module morphisms, so both sides have the same dimension
    A = ALGEBRAS[aname]
    src, dst = free_module(P, None, A), free_module(W, None, A)
    basis = module_hom_basis(src, dst, degree)
    assert len(basis) == len(map_slots(P, tensor(W, A.space), degree))
    assert all(is_module_morphism(b, src, dst) for b in basis)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_maps_split_into_module_part_and_defect(seed):
    rng = random.Random(seed)
    A = ALGEBRAS[rng.choice(sorted(ALGEBRAS))]
    M, N = random_space(rng, "M", 2, (0, 1)), random_space(rng, "N", 2, (-1, 0, 1))
    ops = pqrs(M, N, A)
    deg = rng.randint(-1, 1)
    alpha = random_map(rng, M, tensor(N, A.space), deg)
    phi = random_map(rng, tensor(M, A.space), tensor(N, A.space), deg)
    assert ops.r(ops.p(alpha)).is_zero()
    assert ops.q(ops.p(alpha)) == alpha
    assert ops.p(ops.q(phi)) + ops.s(ops.r(phi)) == phi


def test_non_module_map_has_nonzero_defect():
    A = ALGEBRAS["A"]
    src = free_module(Z, None, A)
    # z⊗1 -> z⊗1 and nothing else ignores the action of t
    phi = GradedMap.from_entries(src.carrier, src.carrier, 0, [(("z", "1"), ("z", "1"), 1)])
    assert not is_module_morphism(phi, src, src)


def test_homotopy_between_module_maps():
    A = ALGEBRAS["A"]
    M = GradedSpace("M", [("m", 1)])
    src, dst = free_module(M, None, A), free_module(Z, None, A)
    # p(m -> z⊗dt) = d p(m -> z⊗t), so it is null-homotopic
    target = p_op(GradedMap.from_entries(M, tensor(Z, A.space), 0, [("m", ("z", "dt"), 1)]), Z, A)
    lam = find_module_homotopy(zero(src.carrier, dst.carrier, 0), target, src, dst)
    assert lam is not None and is_module_morphism(lam, src, dst)
    assert lam == p_op(GradedMap.from_entries(M, tensor(Z, A.space), -1, [("m", ("z", "t"), 1)]), Z, A)


def test_unit_map_is_not_null_homotopic():
    A = ALGEBRAS["A"]
    src = free_module(Z, None, A)
    one = p_op(GradedMap.from_entries(Z, tensor(Z, A.space), 0, [("z", ("z", "1"), 1)]), Z, A)
    assert one == identity(src.carrier)
    assert not homotopy_class_equal(zero(src.carrier, src.carrier, 0), one, src, src)


def test_commutator_sign():
    V = GradedSpace("V", [("a", 0), ("b", 1), ("c", 2)])
    f = GradedMap.from_entries(V, V, 1, [("a", "b", 1), ("b", "c", 1)])
    # two odd maps anticommute: [f, f] = 2 f∘f
    assert commutator(f, f) == compose(f, f).scale(2)
    assert commutator(identity(V), f).is_zero()


def test_tensor_of_module_maps_over_identity():
    A = ALGEBRAS["Λ(x)"]
    a, b = free_module(P, None, A), free_module(Z, None, A)
    ab = tensor_free_module(a, b)
    out = tensor_module_morphism(identity(a.carrier), a, a, identity(b.carrier), b, b)
    assert out == identity(ab.carrier)


def test_tensor_of_module_maps_rejects_non_module_maps():
    A = ALGEBRAS["A"]
    a = free_module(Z, None, A)
    bad = GradedMap.from_entries(a.carrier, a.carrier, 0, [(("z", "1"), ("z", "1"), 1)])
    with pytest.raises(NotModuleMorphism):
        tensor_module_morphism(bad, a, a, identity(a.carrier), a, a)


def test_transport_along_identity_and_along_morphism():
    B, A = ALGEBRAS["Λ(x)"], ALGEBRAS["A"]
    src = free_module(Z, None, B)
    phi = p_op(GradedMap.from_entries(Z, tensor(Z, B.space), 0, [("z", ("z", "1"), 1)]), Z, B)
    assert transport_endo(identity(B.space), B, B, phi, src, src) == phi
    g = exterior_morphism(B, A, {"x": {"dt": 1}})
    moved = transport_endo(g, B, A, phi, src, src)
    assert moved == identity(tensor(Z, A.space))
    not_alg = GradedMap.from_entries(B.space, A.space, 0, [("x", "dt", 2)])
    with pytest.raises(NotAlgebraMorphism):
        transport_endo(not_alg, B, A, phi, src, src)
