import pytest

from dghopf.corpus import exterior_hopf, exterior_morphism, standard_hopf_algebras
from dghopf.dg_structures import (
    HopfData,
    conilpotency_filtration,
    iterated_coproduct,
    iterated_coproduct_right,
    iterated_product,
    iterated_product_right,
    reduced_coproduct,
    solve_antipode,
    tensor_algebra,
    tensor_square_coproduct,
    tensor_square_product,
    verify_antipode_properties,
    verify_morphism,
    verify_structure,
)
from dghopf.errors import DegreeError, NoSolution, NotABialgebra, SpaceMismatch
from dghopf.graded_core import GradedMap, compose, identity, tensor, tensor_map


@pytest.mark.parametrize("name", ["Λ(x)", "Λ(x,y)", "k"])
def test_corpus_hopf_algebras_verify(name):
    H = standard_hopf_algebras()[name]
    rep = verify_structure(H, "hopf")
    assert rep.ok, rep.to_text()
    assert verify_antipode_properties(H).ok


@pytest.mark.parametrize("name", ["Λ(x)", "Λ(x,y)", "k"])
def test_solved_antipode_matches_stored(name):
    H = standard_hopf_algebras()[name]
    assert solve_antipode(H) == H.antipode


def test_antipode_negates_primitive(Lx):
    # forced by m∘(ς⊗I)∘Δ(x) = ς(x) + x = ε(x) = 0
    assert solve_antipode(Lx).image("x") == {"x": -1}


def test_exterior_product_sign(Lxy):
    assert Lxy.m.image(("y", "x")) == {"xy": -1}
    assert Lxy.m.image(("x", "x")) == {}


def test_exterior_coproduct_of_top_word(Lxy):
    # Δ(xy) = (x⊗1 + 1⊗x)(y⊗1 + 1⊗y) with the Koszul sign on (1⊗x)(y⊗1)
    assert Lxy.delta.image("xy") == {
        ("1", "xy"): 1, ("x", "y"): 1, ("y", "x"): -1, ("xy", "1"): 1,
    }


def test_monoid_bialgebra_has_no_antipode(monoid):
    assert verify_structure(monoid, "bialgebra").ok
    with pytest.raises(NoSolution):
        solve_antipode(monoid)


def test_solve_antipode_needs_bialgebra_maps(interval):
    with pytest.raises(SpaceMismatch):
        solve_antipode(interval)


def test_injected_coproduct_sign_error_is_witnessed(Lx):
    bad_delta = GradedMap.from_entries(Lx.space, tensor(Lx.space, Lx.space), 0, [
        ("1", ("1", "1"), 1), ("x", ("x", "1"), 1), ("x", ("1", "x"), -1),
    ])
    bad = HopfData(space=Lx.space, d=Lx.d, u=Lx.u, m=Lx.m, eps=Lx.eps, delta=bad_delta, name="bad")
    rep = verify_structure(bad, "bialgebra")
    assert not rep.ok
    fail = rep.failures[0]
    assert fail.witness is not None and fail.witness.element
    with pytest.raises(NotABialgebra):
        solve_antipode(bad)


def test_interval_algebra_verifies(interval):
    assert verify_structure(interval, "algebra").ok


def test_tensor_algebra_is_a_cdg_algebra(interval, Lx):
    assert verify_structure(tensor_algebra(interval, interval), "algebra").ok
    assert verify_structure(tensor_algebra(Lx, interval), "algebra").ok


def test_reduced_coproduct_of_product(Lxy):
    assert reduced_coproduct(Lxy).image("xy") == {("x", "y"): 1, ("y", "x"): -1}
    assert reduced_coproduct(Lxy).image("x") == {}


def test_coproduct_is_multiplicative(Lxy):
    lhs = compose(Lxy.delta, Lxy.m)
    rhs = compose(tensor_square_product(Lxy), tensor_map(Lxy.delta, Lxy.delta))
    assert lhs == rhs


@pytest.mark.parametrize("n", [2, 3])
def test_reduced_iterated_coproduct_kills_low_words(Lxy, n):
    # Δ̄^{(n)} vanishes on words of length < n
    D = iterated_coproduct(Lxy, n, variant="reduced")
    for word in ("x", "y", "xy"):
        assert (D.image(word) == {}) == (len(word) < n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_left_and_right_recursions_agree(Lxy, n):
    assert iterated_coproduct(Lxy, n) == iterated_coproduct_right(Lxy, n)
    assert iterated_product(Lxy, n) == iterated_product_right(Lxy, n)


def test_tensor_square_coproduct_is_coassociative(Lx):
    D = tensor_square_coproduct(Lx)
    I = identity(tensor(Lx.space, Lx.space))
    assert compose(tensor_map(D, I), D) == compose(tensor_map(I, D), D)


@pytest.mark.parametrize("name,index", [("Λ(x)", 1), ("Λ(x,y)", 2), ("k", 0)])
def test_conilpotency_index(name, index):
    F = conilpotency_filtration(standard_hopf_algebras()[name])
    assert F.index == index
    assert F.verify().ok


def test_monoid_is_not_conilpotent(monoid):
    assert conilpotency_filtration(monoid).index is None


def test_conilpotency_index_of_three_generators():
    F = conilpotency_filtration(exterior_hopf(("x", "y", "z")))
    assert F.index == 3
    assert [len(layer) for layer in F.layers] == [0, 3, 6, 7]


def test_morphism_checks(Lx, interval):
    g = exterior_morphism(Lx, interval, {"x": {"dt": 1}})
    assert verify_morphism(g, Lx, interval, "algebra").ok
    bad = GradedMap.from_entries(interval.space, interval.space, -1, [("dt", "t", 1)])
    with pytest.raises(DegreeError):
        verify_morphism(bad, interval, interval, "algebra")
