"""Build the shipped example bundles from the library corpus.

``python3 -m dghopf.corpus_bundles DIR`` rewrites the JSON files; the test
suite checks the shipped files are byte-identical to a fresh build.
"""
from __future__ import annotations

import os
import sys
from typing import Callable, Dict

from .bundle import Bundle, BundleBuilder, serialize_bundle
from .comodules import (
    cofree_comodule,
    point_comodule,
    regular_comodule,
    star_comodule,
    tensor_comodule,
    trivial_comodule,
)
from .convolution import exp_conv
from .corpus import exterior_derivation, exterior_hopf, exterior_morphism, idempotent_bialgebra, interval_algebra
from .dg_structures import ground_field, tensor_algebra
from .graded_core import GradedMap, GradedSpace, identity

HOPF_FIELDS = ("u", "m", "eps", "delta", "antipode")


def _point_space():
    P = GradedSpace("P", [("a", 0), ("b", 1)], (0, 1))
    return P, GradedMap.from_entries(P, P, 1, [("a", "b", 1)])


def _add_hopf(bb: BundleBuilder, B, name: str, prefix: str) -> Dict[str, str]:
    bb.structure(name, B, "hopf", prefix)
    decl = bb.bundle.decls["structures"][name]
    return {k: decl[k] for k in HOPF_FIELDS}


def _exterior_bundle(gens) -> Bundle:
    B = exterior_hopf(gens)
    name = B.label
    pre = "".join(gens)
    bb = BundleBuilder()
    refs = _add_hopf(bb, B, name, pre)
    bb.structure(f"{name} bialgebra", B.with_antipode(None), "bialgebra", pre, reuse=refs)
    Z = GradedSpace("Z", [("z", 0)], (0, 0))
    P, dP = _point_space()
    bb.comodule("regular", regular_comodule(B), name, "reg", gamma_name=refs["delta"])
    bb.comodule("star", star_comodule(B), name, "star")
    bb.comodule("trivial", trivial_comodule(B), name, "triv")
    bb.comodule("cofree", cofree_comodule(Z, None, B), name, "cofree")
    bb.comodule("point", point_comodule(P, dP, B), name, "point")
    if len(gens) > 1:
        bb.comodule("regular⊗star", tensor_comodule(regular_comodule(B), star_comodule(B)), name, "rs")
    bb.element("id", identity(B.space), name, name, "group")
    bb.element("v", exterior_derivation(B, B, {g: {g: 1} for g in gens}), name, name, "tangential")
    top = "".join(gens)
    examples = [
        ["verify", "--kind", "hopf"],
        ["verify", "--kind", "bialgebra", "--target", f"{name} bialgebra"],
        ["antipode", "--target", f"{name} bialgebra"],
        ["verify", "--kind", "comodule", "--target", "star"],
        ["verify", "--kind", "group", "--element", "id"],
        ["star", "--left", "id", "--right", "id"],
        ["exp", "--element", "v"],
        ["ln", "--element", "id"],
        ["bracket", "--left", "v", "--right", "v"],
        ["homotopy", "--left", "id", "--right", "id"],
        ["dualize", "--target", "regular"],
        ["dualize", "--target", "point"],
        ["reconstruct", "--element", "id", "--probe-pairs", "3"],
        ["subcomodule", "--target", "cofree", "--vector", '{"z⊗%s": "1"}' % top],
        ["cohomology"],
    ]
    if len(gens) > 1:
        bb.element("w", exterior_derivation(B, B, {gens[0]: {gens[1]: 1}}), name, name, "tangential")
        examples.append(["bracket", "--left", "v", "--right", "w"])
        examples.append(["exp", "--element", "w"])
        examples.append(["dualize", "--target", "regular⊗star"])
    bb.examples(*examples)
    return bb.bundle


def lambda_x_bundle() -> Bundle:
    return _exterior_bundle(("x",))


def lambda_xy_bundle() -> Bundle:
    return _exterior_bundle(("x", "y"))


def ground_bundle() -> Bundle:
    k = ground_field()
    bb = BundleBuilder()
    _add_hopf(bb, k, "k", "k")
    bb.comodule("trivial", trivial_comodule(k), "k", "triv")
    bb.element("id", identity(k.space), "k", "k", "group")
    bb.examples(
        ["verify", "--kind", "hopf"],
        ["antipode"],
        ["verify", "--kind", "comodule"],
        ["dualize", "--target", "trivial"],
        ["reconstruct", "--element", "id"],
        ["ln", "--element", "id"],
        ["cohomology"],
    )
    return bb.bundle


def monoid_bundle() -> Bundle:
    """A bialgebra with no antipode; ``antipode`` on it exits 1."""
    M = idempotent_bialgebra()
    bb = BundleBuilder()
    bb.structure("Mon", M, "bialgebra", "mon")
    bb.examples(
        ["verify", "--kind", "bialgebra"],
        ["verify", "--kind", "algebra"],
        ["cohomology"],
    )
    return bb.bundle


def interval_bundle() -> Bundle:
    """Λ(x) with maps into the interval algebra A = {1, t, dt}."""
    B = exterior_hopf(("x",))
    A = interval_algebra()
    AA = tensor_algebra(A, A, "A⊗A")
    bb = BundleBuilder()
    _add_hopf(bb, B, "Λ(x)", "x")
    bb.structure("A", A, "algebra", "A")
    bb.structure("A⊗A", AA, "algebra", "AA")
    bb.comodule("regular", regular_comodule(B), "Λ(x)", "reg", gamma_name="delta_x")
    bb.comodule("star", star_comodule(B), "Λ(x)", "star")
    v = exterior_derivation(B, A, {"x": {"dt": 1}})
    g = exterior_morphism(B, A, {"x": {"dt": 1}})
    assert g == exp_conv(v, B, A)
    bb.element("v", v, "Λ(x)", "A", "tangential")
    bb.element("g", g, "Λ(x)", "A", "group")
    bb.examples(
        ["verify", "--kind", "algebra", "--target", "A"],
        ["verify", "--kind", "tangential", "--element", "v"],
        ["verify", "--kind", "group", "--element", "g"],
        ["exp", "--element", "v"],
        ["ln", "--element", "g"],
        ["star", "--left", "g", "--right", "g"],
        ["bracket", "--left", "v", "--right", "v"],
        ["homotopy", "--left", "g", "--probe-pairs", "2"],
        ["homotopy", "--left", "v", "--flavor", "tangential"],
        ["reconstruct", "--element", "g", "--probe-pairs", "3"],
        ["cohomology", "--target", "A"],
        ["cohomology", "--target", "A⊗A", "--order", "reversed"],
    )
    return bb.bundle


BUNDLES: Dict[str, Callable[[], Bundle]] = {
    "lambda_x.json": lambda_x_bundle,
    "lambda_xy.json": lambda_xy_bundle,
    "ground.json": ground_bundle,
    "monoid_bialgebra.json": monoid_bundle,
    "interval.json": interval_bundle,
}


def corpus_dir() -> str:
    return os.path.join(os.path.dirname(__file__), "corpus")


def write_corpus(directory: str) -> None:
    os.makedirs(directory, exist_ok=True)
    for fname, build in BUNDLES.items():
        with open(os.path.join(directory, fname), "w", encoding="utf-8") as fh:
            fh.write(serialize_bundle(build()))


if __name__ == "__main__":
    write_corpus(sys.argv[1] if len(sys.argv) > 1 else corpus_dir())
