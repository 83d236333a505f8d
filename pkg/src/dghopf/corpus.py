"""Concrete structures used as worked examples and test fixtures.

* exterior Hopf algebras Λ(x1, ..., xr) on primitive odd generators,
* the interval cdg-algebra {1, t, dt} with d t = dt,
* a commutative bialgebra without antipode,
* constructors for group elements and tangential maps out of Λ.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence

from .dg_structures import HopfData, ground_field
from .errors import DegreeError, NotGroupElement
from .graded_core import K, GradedMap, GradedSpace, scalar, tensor, zero

Element = Mapping[str, object]


def _word(S: Sequence[str]) -> str:
    return "".join(S) if S else "1"


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


def exterior_hopf(generators: Sequence[str] = ("x",), name: str = "") -> HopfData:
    """Λ(generators) with every generator odd of degree 1 and primitive.

    Basis words are subsets of the generators in their given order, listed
    by length.  The antipode is (-1)^{|S|} on the word x_S.
    """
    gens = list(generators)
    r = len(gens)
    subsets = [S for n in range(r + 1) for S in itertools.combinations(range(r), n)]
    label = {S: _word([gens[i] for i in S]) for S in subsets}
    B = GradedSpace(name or f"Λ({','.join(gens)})", [(label[S], len(S)) for S in subsets], (0, r))
    BB = tensor(B, B)

    m_entries = []
    delta_entries = []
    for S in subsets:
        for T in subsets:
            if set(S) & set(T):
                continue
            merged = S + T
            m_entries.append(((label[S], label[T]), label[tuple(sorted(merged))], _perm_sign(merged)))
    for S in subsets:
        for n in range(len(S) + 1):
            for T in itertools.combinations(S, n):
                U = tuple(i for i in S if i not in T)
                delta_entries.append((label[S], (label[T], label[U]), _perm_sign(T + U)))
    m = GradedMap.from_entries(BB, B, 0, m_entries)
    delta = GradedMap.from_entries(B, BB, 0, delta_entries)
    u = GradedMap.from_entries(K, B, 0, [("1", "1", 1)])
    eps = GradedMap.from_entries(B, K, 0, [("1", "1", 1)])
    antipode = GradedMap.from_entries(B, B, 0, [(label[S], label[S], (-1) ** len(S)) for S in subsets])
    return HopfData(space=B, d=zero(B, B, 1), u=u, m=m, eps=eps, delta=delta, antipode=antipode, name=B.name)


def interval_algebra() -> HopfData:
    """A = span{1, t, dt}, |t| = 0, |dt| = 1, d t = dt, products of t and dt vanish."""
    A = GradedSpace("A", [("1", 0), ("t", 0), ("dt", 1)], (0, 1))
    AA = tensor(A, A)
    m = GradedMap.from_entries(AA, A, 0, [
        (("1", "1"), "1", 1), (("1", "t"), "t", 1), (("t", "1"), "t", 1),
        (("1", "dt"), "dt", 1), (("dt", "1"), "dt", 1),
    ])
    u = GradedMap.from_entries(K, A, 0, [("1", "1", 1)])
    d = GradedMap.from_entries(A, A, 1, [("t", "dt", 1)])
    return HopfData(space=A, d=d, u=u, m=m, name="A")


def idempotent_bialgebra() -> HopfData:
    """Monoid bialgebra of {1, g} with g² = g; it has no antipode."""
    B = GradedSpace("Mon", [("1", 0), ("g", 0)], (0, 0))
    BB = tensor(B, B)
    m = GradedMap.from_entries(BB, B, 0, [
        (("1", "1"), "1", 1), (("1", "g"), "g", 1), (("g", "1"), "g", 1), (("g", "g"), "g", 1),
    ])
    delta = GradedMap.from_entries(B, BB, 0, [("1", ("1", "1"), 1), ("g", ("g", "g"), 1)])
    u = GradedMap.from_entries(K, B, 0, [("1", "1", 1)])
    eps = GradedMap.from_entries(B, K, 0, [("1", "1", 1), ("g", "1", 1)])
    return HopfData(space=B, d=zero(B, B, 1), u=u, m=m, eps=eps, delta=delta, name="Mon")


def standard_hopf_algebras() -> Dict[str, HopfData]:
    return {
        "Λ(x)": exterior_hopf(("x",)),
        "Λ(x,y)": exterior_hopf(("x", "y")),
        "k": ground_field(),
    }


def standard_algebras() -> Dict[str, HopfData]:
    return {
        "A": interval_algebra(),
        "k": ground_field(),
        "Λ(x)": exterior_hopf(("x",)),
        "Λ(x,y)": exterior_hopf(("x", "y")),
    }


# ---------------------------------------------------------------------------
# maps out of exterior algebras


def _parse_element(V: GradedSpace, value: Element) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for lab, c in value.items():
        c = scalar(c)
        if c:
            out[V.index(lab)] = c
    return out


def _generators(B: HopfData) -> List[str]:
    return [lab for lab, d in zip(B.space.labels, B.space.degs) if d == 1]


def _word_factors(B: HopfData, word: str) -> List[str]:
    gens = _generators(B)
    out, rest = [], word
    while rest:
        g = next(g for g in gens if rest.startswith(g))
        out.append(g)
        rest = rest[len(g):]
    return out


def exterior_morphism(B: HopfData, A: HopfData, images: Mapping[str, Element]) -> GradedMap:
    """Algebra map Λ(gens) -> A sending each generator to the given element.

    The images must be degree-1 elements of A; since B has zero
    differential they must also be cocycles for the result to be a cochain
    map, which is checked.
    """
    gens = _generators(B)
    vals = {g: _parse_element(A.space, images.get(g, {})) for g in gens}
    for g, v in vals.items():
        if any(A.space.degs[i] != 1 for i in v):
            raise DegreeError(f"image of {g} must lie in degree 1")
        if A.d.apply(v):
            raise NotGroupElement(f"image of {g} is not a cocycle")
    cols = {}
    one = A.u.cols.get(0, {})
    for j, lab in enumerate(B.space.labels):
        vec = dict(one)
        for g in _word_factors(B, lab) if lab != "1" else []:
            vec = _multiply(A, vec, vals[g])
        if vec:
            cols[j] = vec
    return GradedMap(B.space, A.space, 0, cols)


def exterior_derivation(B: HopfData, A: HopfData, images: Mapping[str, Element]) -> GradedMap:
    """Tangential map Λ(gens) -> A: generators to the given cocycles, other words to 0."""
    gens = _generators(B)
    cols = {}
    for g in gens:
        v = _parse_element(A.space, images.get(g, {}))
        if any(A.space.degs[i] != 1 for i in v):
            raise DegreeError(f"image of {g} must lie in degree 1")
        if v:
            cols[B.space.index(g)] = v
    return GradedMap(B.space, A.space, 0, cols)


def _multiply(A: HopfData, a: Dict[int, Fraction], b: Dict[int, Fraction]) -> Dict[int, Fraction]:
    n = A.space.dim
    out: Dict[int, Fraction] = {}
    for i, x in a.items():
        for j, y in b.items():
            for k, c in A.m.cols.get(i * n + j, {}).items():
                s = out.get(k, 0) + x * y * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


def closed_degree_one(A: HopfData) -> List[str]:
    """Basis labels of A^1 that are cocycles (used for sampling images)."""
    labs = []
    for j, lab in enumerate(A.space.labels):
        if A.space.degs[j] == 1 and j not in A.d.cols:
            labs.append(lab)
    return labs


def sample_images(B: HopfData, A: HopfData, coeffs: Sequence[int]) -> Dict[str, Dict[str, int]]:
    """Deterministically build generator images from an integer coefficient stream."""
    targets = closed_degree_one(A)
    out: Dict[str, Dict[str, int]] = {}
    it = iter(itertools.cycle(coeffs or [0]))
    for g in _generators(B):
        out[g] = {t: next(it) for t in targets}
    return out


def sample_group_elements(B: HopfData, A: HopfData, count: int, seed: int = 0) -> List[GradedMap]:
    """A deterministic list of distinct-ish group elements B -> A."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        coeffs = [rng.randint(-3, 3) for _ in range(8)]
        out.append(exterior_morphism(B, A, sample_images(B, A, coeffs)))
    return out


def sample_tangentials(B: HopfData, A: HopfData, count: int, seed: int = 0) -> List[GradedMap]:
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        coeffs = [rng.randint(-3, 3) for _ in range(8)]
        out.append(exterior_derivation(B, A, sample_images(B, A, coeffs)))
    return out
