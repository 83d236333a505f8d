"""Exact Z-graded linear algebra with the Koszul sign rule.

A :class:`GradedSpace` is a finite ordered basis in which every basis label
carries an integer degree.  Tensor products are always flattened, so
``(U⊗V)⊗W`` and ``U⊗(V⊗W)`` are the same space with tuple labels
``(u, v, w)`` enumerated lexicographically in factor order.

A :class:`GradedMap` is a degree-homogeneous linear map stored sparsely
column by column.  The per-degree matrix blocks are available through
:meth:`GradedMap.block`; absent entries are zero.

Sign conventions::

    (f⊗g)(v⊗w) = (-1)^{|g||v|} f(v)⊗g(w)
    τ(v⊗w)     = (-1)^{|v||w|} w⊗v
    d_{V,W} f  = d_W∘f - (-1)^{|f|} f∘d_V
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import DegreeError, NoSolution, SpaceMismatch, WindowError, WindowOverflow

Scalar = Fraction
Label = Hashable
Vector = Dict[int, Fraction]

MAX_DIMENSION = 1 << 16


def scalar(x: Union[int, str, Fraction]) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def format_scalar(c: Fraction) -> str:
    """"p/q", or just "p" for integers."""
    return str(Fraction(c))


def sign(n: int) -> int:
    return -1 if n & 1 else 1


def label_str(label: Label) -> str:
    if isinstance(label, tuple):
        return "⊗".join(label_str(x) for x in label)
    return str(label)


class GradedSpace:
    """Finite graded vector space with an ordered, degree-labelled basis."""

    __slots__ = ("name", "labels", "degs", "window", "factors", "_index", "_key", "_hash")

    def __init__(
        self,
        name: str,
        basis: Sequence[Tuple[Label, int]],
        window: Optional[Tuple[int, int]] = None,
        factors: Optional[Tuple["GradedSpace", ...]] = None,
    ):
        self.name = name
        self.labels: Tuple[Label, ...] = tuple(b[0] for b in basis)
        self.degs: Tuple[int, ...] = tuple(int(b[1]) for b in basis)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"basis labels of {name} are not unique")
        if window is None:
            window = (min(self.degs), max(self.degs)) if self.degs else (0, 0)
        self.window = (int(window[0]), int(window[1]))
        for d in self.degs:
            if not self.window[0] <= d <= self.window[1]:
                raise WindowError(f"degree {d} of {name} lies outside window {self.window}")
        self.factors = factors
        self._index: Optional[Dict[Label, int]] = None
        if factors is not None:
            self._key = ("⊗",) + tuple(f._key for f in factors)
        else:
            self._key = (name, self.labels, self.degs, self.window)
        self._hash = hash(self._key)

    @classmethod
    def from_degrees(cls, name: str, degrees: Mapping[int, Sequence[Label]], window=None) -> "GradedSpace":
        basis = [(lab, int(n)) for n in sorted(degrees, key=int) for lab in degrees[n]]
        return cls(name, basis, window)

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSpace) and (self is other or self._key == other._key)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GradedSpace({self.name}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not a basis label of {self.name}") from None

    def has_label(self, label: Label) -> bool:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return label in self._index

    def degree(self, label: Label) -> int:
        return self.degs[self.index(label)]

    def degrees(self) -> Dict[int, List[Label]]:
        out: Dict[int, List[Label]] = {}
        for lab, d in zip(self.labels, self.degs):
            out.setdefault(d, []).append(lab)
        return out

    def indices_of_degree(self, n: int) -> List[int]:
        return [i for i, d in enumerate(self.degs) if d == n]

    def atoms(self) -> Tuple["GradedSpace", ...]:
        return self.factors if self.factors is not None else (self,)


K = GradedSpace("k", [("1", 0)])


def tensor(*spaces: GradedSpace) -> GradedSpace:
    """Flattened tensor product; the empty product is the ground field."""
    atoms: List[GradedSpace] = []
    for s in spaces:
        atoms.extend(s.atoms())
    if not atoms:
        return K
    if len(atoms) == 1:
        return atoms[0]
    dim = 1
    for a in atoms:
        dim *= a.dim
    if dim > MAX_DIMENSION:
        raise WindowOverflow(f"tensor product of dimension {dim} exceeds {MAX_DIMENSION}")
    basis = []
    for combo in itertools.product(*[list(zip(a.labels, a.degs)) for a in atoms]):
        basis.append((tuple(c[0] for c in combo), sum(c[1] for c in combo)))
    window = (sum(a.window[0] for a in atoms), sum(a.window[1] for a in atoms))
    name = "⊗".join(a.name for a in atoms)
    return GradedSpace(name, basis, window, factors=tuple(atoms))


def dual_label(label: Label) -> str:
    return "e^" + label_str(label)


def dual_space(V: GradedSpace) -> GradedSpace:
    """Hom(V, k) with the dual basis e^i in degree -|x_i|."""
    basis = [(dual_label(lab), -d) for lab, d in zip(V.labels, V.degs)]
    return GradedSpace(V.name + "^v", basis, (-V.window[1], -V.window[0]))


class GradedMap:
    """Degree-homogeneous linear map ``source -> target``.

    ``cols[j]`` holds the image of the j-th source basis vector as a sparse
    dict over target indices.
    """

    __slots__ = ("source", "target", "degree", "cols")

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int, cols: Mapping[int, Mapping[int, Fraction]], check: bool = True):
        self.source = source
        self.target = target
        self.degree = int(degree)
        clean: Dict[int, Dict[int, Fraction]] = {}
        for j, col in cols.items():
            c = {i: v for i, v in col.items() if v}
            if c:
                clean[j] = c
        if check:
            sd, td = source.degs, target.degs
            for j, col in clean.items():
                for i in col:
                    if td[i] != sd[j] + self.degree:
                        raise DegreeError(
                            f"entry {label_str(source.labels[j])} -> {label_str(target.labels[i])} "
                            f"violates degree {self.degree}"
                        )
        self.cols = clean

    # construction -----------------------------------------------------
    @classmethod
    def from_entries(cls, source, target, degree, entries: Iterable[Tuple[Label, Label, object]]) -> "GradedMap":
        cols: Dict[int, Dict[int, Fraction]] = {}
        for s, t, c in entries:
            col = cols.setdefault(source.index(s), {})
            i = target.index(t)
            col[i] = col.get(i, 0) + scalar(c)
        return cls(source, target, degree, cols)

    @classmethod
    def from_function(cls, source, target, degree, fn: Callable[[Label], Mapping[Label, object]]) -> "GradedMap":
        cols = {}
        for j, lab in enumerate(source.labels):
            img = fn(lab)
            if img:
                cols[j] = {target.index(t): scalar(c) for t, c in img.items()}
        return cls(source, target, degree, cols)

    @classmethod
    def from_blocks(cls, source, target, degree, blocks: Mapping[int, Sequence[Sequence[object]]]) -> "GradedMap":
        cols: Dict[int, Dict[int, Fraction]] = {}
        for n, mat in blocks.items():
            src = source.indices_of_degree(n)
            tgt = target.indices_of_degree(n + degree)
            for r, row in enumerate(mat):
                for c, v in enumerate(row):
                    v = scalar(v)
                    if v:
                        cols.setdefault(src[c], {})[tgt[r]] = v
        return cls(source, target, degree, cols)

    # inspection -------------------------------------------------------
    def __repr__(self) -> str:
        return f"GradedMap({self.source.name} -> {self.target.name}, deg {self.degree}, nnz={self.nnz})"

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def is_zero(self) -> bool:
        return not self.cols

    def block(self, n: int) -> List[List[Fraction]]:
        """Matrix of the component V^n -> W^{n+deg} (rows = target basis)."""
        src = self.source.indices_of_degree(n)
        tgt = self.target.indices_of_degree(n + self.degree)
        return [[self.cols.get(j, {}).get(i, Fraction(0)) for j in src] for i in tgt]

    def blocks(self) -> Dict[int, List[List[Fraction]]]:
        out = {}
        for n in sorted(set(self.source.degs)):
            if any(j in self.cols for j in self.source.indices_of_degree(n)):
                out[n] = self.block(n)
        return out

    def entries(self) -> List[Tuple[Label, Label, Fraction]]:
        out = []
        for j in sorted(self.cols):
            for i in sorted(self.cols[j]):
                out.append((self.source.labels[j], self.target.labels[i], self.cols[j][i]))
        return out

    def apply(self, v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for j, c in v.items():
            col = self.cols.get(j)
            if col:
                linalg.axpy(out, c, col)
        return out

    def image(self, label: Label) -> Dict[Label, Fraction]:
        col = self.cols.get(self.source.index(label), {})
        return {self.target.labels[i]: c for i, c in sorted(col.items())}

    def same_shape(self, other: "GradedMap") -> bool:
        return self.source == other.source and self.target == other.target

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap) or not self.same_shape(other):
            return False
        if self.cols != other.cols:
            return False
        return self.degree == other.degree or not self.cols

    __hash__ = None  # mutable-looking container semantics

    # arithmetic -------------------------------------------------------
    def _check_sum(self, other: "GradedMap") -> None:
        if not self.same_shape(other):
            raise SpaceMismatch(f"cannot add {self!r} and {other!r}")
        if self.degree != other.degree and self.cols and other.cols:
            raise DegreeError(f"cannot add maps of degree {self.degree} and {other.degree}")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._check_sum(other)
        deg = self.degree if self.cols else other.degree
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            tgt = cols.setdefault(j, {})
            linalg.axpy(tgt, Fraction(1), col)
        return GradedMap(self.source, self.target, deg, cols, check=False)

    def __neg__(self) -> "GradedMap":
        return self.scale(-1)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def scale(self, c) -> "GradedMap":
        c = scalar(c)
        if not c:
            return GradedMap(self.source, self.target, self.degree, {}, check=False)
        return GradedMap(self.source, self.target, self.degree,
                         {j: {i: c * v for i, v in col.items()} for j, col in self.cols.items()}, check=False)

    def __rmul__(self, c) -> "GradedMap":
        return self.scale(c)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return compose(self, other)


def identity(V: GradedSpace) -> GradedMap:
    return GradedMap(V, V, 0, {j: {j: Fraction(1)} for j in range(V.dim)}, check=False)


def zero(V: GradedSpace, W: GradedSpace, degree: int = 0) -> GradedMap:
    return GradedMap(V, W, degree, {}, check=False)


def compose(f: GradedMap, g: GradedMap) -> GradedMap:
    """f∘g; degrees add."""
    if g.target != f.source:
        raise SpaceMismatch(f"cannot compose {f!r} after {g!r}")
    cols: Dict[int, Dict[int, Fraction]] = {}
    for j, col in g.cols.items():
        out: Dict[int, Fraction] = {}
        for k, c in col.items():
            fk = f.cols.get(k)
            if fk:
                linalg.axpy(out, c, fk)
        if out:
            cols[j] = out
    return GradedMap(g.source, f.target, f.degree + g.degree, cols, check=False)


def compose_all(*maps: GradedMap) -> GradedMap:
    """compose_all(f, g, h) = f∘g∘h."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


def _tensor2(f: GradedMap, g: GradedMap) -> GradedMap:
    S = tensor(f.source, g.source)
    T = tensor(f.target, g.target)
    ns, nt = g.source.dim, g.target.dim
    sdeg = f.source.degs
    odd_g = g.degree & 1
    cols: Dict[int, Dict[int, Fraction]] = {}
    for i, fcol in f.cols.items():
        flip = odd_g and (sdeg[i] & 1)
        for j, gcol in g.cols.items():
            out: Dict[int, Fraction] = {}
            for a, fa in fcol.items():
                base = a * nt
                for b, gb in gcol.items():
                    v = fa * gb
                    out[base + b] = -v if flip else v
            cols[i * ns + j] = out
    return GradedMap(S, T, f.degree + g.degree, cols, check=False)


def tensor_map(*maps: GradedMap) -> GradedMap:
    """Koszul tensor product of maps, (f⊗g)(v⊗w) = (-1)^{|g||v|} f(v)⊗g(w)."""
    if not maps:
        return identity(K)
    out = maps[0]
    for m in maps[1:]:
        out = _tensor2(out, m)
    return out


def braiding(V: GradedSpace, W: GradedSpace) -> GradedMap:
    """τ: V⊗W -> W⊗V, v⊗w -> (-1)^{|v||w|} w⊗v."""
    S = tensor(V, W)
    T = tensor(W, V)
    nv, nw = V.dim, W.dim
    cols = {}
    for i in range(nv):
        for j in range(nw):
            s = -1 if (V.degs[i] & 1) and (W.degs[j] & 1) else 1
            cols[i * nw + j] = {j * nv + i: Fraction(s)}
    return GradedMap(S, T, 0, cols, check=False)


def relabel(V: GradedSpace, W: GradedSpace) -> GradedMap:
    """Index-preserving isomorphism between spaces with matching degrees."""
    if V.degs != W.degs:
        raise SpaceMismatch(f"{V.name} and {W.name} have different degree patterns")
    return GradedMap(V, W, 0, {j: {j: Fraction(1)} for j in range(V.dim)}, check=False)


def left_unitor(V: GradedSpace) -> GradedMap:
    """ı_V: k⊗V -> V."""
    return relabel(tensor(K, V), V)


def left_unitor_inv(V: GradedSpace) -> GradedMap:
    return relabel(V, tensor(K, V))


def right_unitor(V: GradedSpace) -> GradedMap:
    """ȷ_V: V⊗k -> V."""
    return relabel(tensor(V, K), V)


def right_unitor_inv(V: GradedSpace) -> GradedMap:
    return relabel(V, tensor(V, K))


def elementary(V: GradedSpace, W: GradedSpace, degree: int, j: int, i: int) -> GradedMap:
    return GradedMap(V, W, degree, {j: {i: Fraction(1)}}, check=False)


def map_slots(V: GradedSpace, W: GradedSpace, degree: int) -> List[Tuple[int, int]]:
    """All (source index, target index) pairs allowed for a map of this degree."""
    by_deg: Dict[int, List[int]] = {}
    for i, d in enumerate(W.degs):
        by_deg.setdefault(d, []).append(i)
    return [(j, i) for j, d in enumerate(V.degs) for i in by_deg.get(d + degree, [])]


# ---------------------------------------------------------------------------
# complexes and the Hom differential


class CochainComplex:
    __slots__ = ("space", "d")

    def __init__(self, space: GradedSpace, d: Optional[GradedMap] = None):
        if d is None:
            d = zero(space, space, 1)
        if d.source != space or d.target != space:
            raise SpaceMismatch("differential must be an endomorphism of the space")
        if d.degree != 1 and not d.is_zero():
            raise DegreeError("differential must have degree +1")
        self.space = space
        self.d = GradedMap(space, space, 1, d.cols, check=False)

    def __repr__(self) -> str:
        return f"CochainComplex({self.space.name})"

    def is_valid(self) -> bool:
        return compose(self.d, self.d).is_zero()


def tensor_differential(*ds: GradedMap) -> GradedMap:
    """d_{V1⊗...⊗Vn} = Σ I⊗..⊗d_i⊗..⊗I."""
    spaces = [d.source for d in ds]
    total = None
    for k, d in enumerate(ds):
        parts = [identity(s) for s in spaces]
        parts[k] = d
        term = tensor_map(*parts)
        total = term if total is None else total + term
    if total is None:
        return zero(K, K, 1)
    return GradedMap(total.source, total.target, 1, total.cols, check=False)


def hom_differential(f: GradedMap, dV: GradedMap, dW: GradedMap) -> GradedMap:
    """d_{V,W} f = d_W∘f - (-1)^{|f|} f∘d_V."""
    if dV.source != f.source or dV.target != f.source:
        raise SpaceMismatch("dV must be an endomorphism of the source")
    if dW.source != f.target or dW.target != f.target:
        raise SpaceMismatch("dW must be an endomorphism of the target")
    left = compose(dW, f)
    right = compose(f, dV)
    out = left - right if f.degree % 2 == 0 else left + right
    return GradedMap(f.source, f.target, f.degree + 1, out.cols, check=False)


def is_cochain_map(f: GradedMap, dV: GradedMap, dW: GradedMap) -> bool:
    if f.degree != 0:
        raise DegreeError(f"a cochain map has degree 0, got {f.degree}")
    return hom_differential(f, dV, dW).is_zero()


# ---------------------------------------------------------------------------
# solving linear equations whose unknowns are graded maps

Unknown = Tuple[GradedSpace, GradedSpace, int]


def _flatten(results: Sequence[GradedMap]) -> Dict[Tuple[int, int, int], Fraction]:
    out = {}
    for e, m in enumerate(results):
        for j, col in m.cols.items():
            for i, c in col.items():
                out[(e, j, i)] = c
    return out


def solve_maps(
    unknowns: Sequence[Unknown],
    residual: Callable[[List[GradedMap]], Sequence[GradedMap]],
    rank_key=None,
) -> Tuple[List[GradedMap], List[List[GradedMap]]]:
    """Solve ``residual(X) == 0`` for maps X, where residual is affine in X.

    Returns a particular solution and a basis of the solution space of the
    associated homogeneous system.  Raises :class:`NoSolution` when the
    system is inconsistent.
    """
    variables = []
    for k, (V, W, deg) in enumerate(unknowns):
        variables.extend((k, j, i) for j, i in map_slots(V, W, deg))
    zeros = [zero(V, W, deg) for V, W, deg in unknowns]
    const = _flatten(residual(zeros))
    columns = {}
    for var in variables:
        k, j, i = var
        trial = list(zeros)
        trial[k] = elementary(*unknowns[k], j, i)
        col = _flatten(residual(trial))
        for key, c in const.items():
            v = col.get(key, 0) - c
            if v:
                col[key] = v
            else:
                col.pop(key, None)
        columns[var] = col
    rows: Dict[Tuple[int, int, int], Dict] = {}
    for var, col in columns.items():
        for key, c in col.items():
            rows.setdefault(key, {})[var] = c
    system = [(rows.get(key, {}), -c) for key, c in const.items()]
    system.extend((r, Fraction(0)) for key, r in rows.items() if key not in const)
    res = linalg.solve(system, variables, rank_key)
    if res is None:
        raise NoSolution("linear system is inconsistent")
    particular, kern = res

    def build(vec) -> List[GradedMap]:
        cols: List[Dict[int, Dict[int, Fraction]]] = [dict() for _ in unknowns]
        for (k, j, i), c in vec.items():
            cols[k].setdefault(j, {})[i] = c
        return [GradedMap(V, W, deg, cols[k], check=False) for k, (V, W, deg) in enumerate(unknowns)]

    return build(particular), [build(v) for v in kern]


def solve_chain_homotopy(f: GradedMap, f_tilde: GradedMap, dV: GradedMap, dW: GradedMap) -> GradedMap:
    """Find λ with d_{V,W} λ = f̃ - f; raises NoSolution if none exists."""
    if not f.same_shape(f_tilde):
        raise SpaceMismatch("homotopy endpoints must share source and target")
    deg = f.degree if f.cols else f_tilde.degree
    target = f_tilde - f

    def residual(xs):
        return [hom_differential(xs[0], dV, dW) - target]

    sol, _ = solve_maps([(f.source, f.target, deg - 1)], residual)
    return sol[0]


# ---------------------------------------------------------------------------
# subspaces


def kernel_basis(f: GradedMap, rank_key=None) -> List[Vector]:
    """Basis of Ker f as sparse vectors over source indices."""
    variables = list(range(f.source.dim))
    return linalg.kernel(f.cols, variables, rank_key)


def span_basis(vectors: Iterable[Vector], rank_key=None) -> List[Vector]:
    return linalg.span_basis(vectors, rank_key)


def image_basis(f: GradedMap, rank_key=None) -> List[Vector]:
    return linalg.span_basis(f.cols.values(), rank_key)


def vector_str(V: GradedSpace, v: Mapping[int, Fraction]) -> Dict[str, str]:
    return {label_str(V.labels[i]): format_scalar(c) for i, c in sorted(v.items())}
