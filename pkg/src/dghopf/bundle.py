"""Structure bundles: a JSON text format for spaces, maps and structures.

Layout::

    {
      "format": "dghopf-bundle/1",
      "spaces": {"B": {"basis": [["1", 0], ["x", 1]], "window": [0, 1]}},
      "maps": {
        "m": {"source": ["B", "B"], "target": ["B"], "degree": 0,
              "entries": [[["1", "x"], "x", "1"], ...]}
      },
      "structures": {"Λ(x)": {"kind": "hopf", "space": "B", "u": "u", "m": "m", ...}},
      "comodules": {"regular": {"over": "Λ(x)", "space": "B", "d": "d", "gamma": "delta"}},
      "elements": {"g": {"map": "g", "from": "Λ(x)", "to": "A", "kind": "group"}},
      "examples": [["verify", "--kind", "hopf"]]
    }

Sources and targets are lists of space names read as a tensor product; the
name "k" is the ground field.  An entry is [source label, target label,
scalar] where labels of tensor spaces are lists and scalars are "p/q"
strings.  Omitted differentials are zero.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .comodules import Comodule
from .dg_structures import HopfData
from .errors import DegreeError, DgHopfError, DimensionError, ParseError, ReferenceError, SpaceMismatch, WindowError
from .graded_core import K, GradedMap, GradedSpace, format_scalar, tensor, zero

FORMAT = "dghopf-bundle/1"
STRUCTURE_KINDS = ("algebra", "coalgebra", "bialgebra", "hopf")
STRUCTURE_FIELDS = ("d", "u", "m", "eps", "delta", "antipode")
ELEMENT_KINDS = ("group", "tangential", "map")
_SCALAR = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


@dataclass
class Bundle:
    spaces: Dict[str, GradedSpace] = field(default_factory=dict)
    maps: Dict[str, GradedMap] = field(default_factory=dict)
    structures: Dict[str, HopfData] = field(default_factory=dict)
    comodules: Dict[str, Comodule] = field(default_factory=dict)
    elements: Dict[str, Tuple[GradedMap, str, str, str]] = field(default_factory=dict)
    examples: List[List[str]] = field(default_factory=list)
    decls: Dict[str, Dict[str, Dict[str, Any]]] = field(default_factory=dict)
    map_refs: Dict[str, Tuple[List[str], List[str]]] = field(default_factory=dict)

    def structure(self, name: Optional[str] = None, kinds: Sequence[str] = STRUCTURE_KINDS) -> Tuple[str, HopfData]:
        if name is not None:
            if name not in self.structures:
                raise ReferenceError(f"no structure named {name!r}")
            return name, self.structures[name]
        for key, decl in self.decls.get("structures", {}).items():
            if decl["kind"] in kinds:
                return key, self.structures[key]
        raise ReferenceError(f"bundle declares no structure of kind {'/'.join(kinds)}")

    def comodule(self, name: Optional[str] = None) -> Tuple[str, Comodule]:
        if name is not None:
            if name not in self.comodules:
                raise ReferenceError(f"no comodule named {name!r}")
            return name, self.comodules[name]
        if not self.comodules:
            raise ReferenceError("bundle declares no comodule")
        key = next(iter(self.comodules))
        return key, self.comodules[key]

    def element(self, name: Optional[str] = None, kind: Optional[str] = None):
        """(name, map, source structure, target structure, kind)."""
        if name is None:
            for key, (_, _, _, k) in self.elements.items():
                if kind is None or k == kind:
                    name = key
                    break
            else:
                raise ReferenceError(f"bundle declares no {kind or ''} element".replace("  ", " "))
        if name not in self.elements:
            raise ReferenceError(f"no element named {name!r}")
        f, src, dst, k = self.elements[name]
        return name, f, self.structures[src], self.structures[dst], k


# ---------------------------------------------------------------------------
# parsing


def _position(text: str, needle: str) -> Tuple[int, int]:
    at = text.find(needle)
    if at < 0:
        return 1, 1
    line = text.count("\n", 0, at) + 1
    col = at - (text.rfind("\n", 0, at) + 1) + 1
    return line, col


def parse_scalar(value: Any, text: str = "") -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        line, col = _position(text, json.dumps(value, ensure_ascii=False))
        raise ParseError(f"scalar must be an integer or a 'p/q' string, got {value!r}", line, col)
    if isinstance(value, int):
        return Fraction(value)
    if not _SCALAR.match(value):
        line, col = _position(text, json.dumps(value, ensure_ascii=False))
        raise ParseError(f"malformed scalar {value!r}", line, col)
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError:
        line, col = _position(text, json.dumps(value, ensure_ascii=False))
        raise ParseError(f"zero denominator in scalar {value!r}", line, col) from None


def _need(obj: Dict[str, Any], key: str, where: str, kind=None):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return v


def _space_list(value: Any, where: str) -> List[str]:
    if isinstance(value, str):
        return [value]
    if isinstance(value, list) and value and all(isinstance(v, str) for v in value):
        return list(value)
    raise ParseError(f"{where}: expected a space name or a list of space names")


def _resolve_space(names: List[str], spaces: Dict[str, GradedSpace], where: str) -> GradedSpace:
    parts = []
    for n in names:
        if n == "k":
            parts.append(K)
        elif n in spaces:
            parts.append(spaces[n])
        else:
            raise ReferenceError(f"{where}: unknown space {n!r}")
    return parts[0] if len(parts) == 1 else tensor(*parts)


def _resolve_label(V: GradedSpace, names: List[str], raw: Any, where: str):
    arity = len(V.atoms()) if V.factors is not None else 1
    if arity == 1:
        if isinstance(raw, list):
            if len(raw) != 1:
                raise DimensionError(f"{where}: label {raw!r} has {len(raw)} factors, expected 1")
            raw = raw[0]
        if not isinstance(raw, str):
            raise ParseError(f"{where}: labels must be strings")
        if not V.has_label(raw):
            raise ReferenceError(f"{where}: {raw!r} is not a basis label of {'⊗'.join(names)}")
        return raw
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ParseError(f"{where}: labels of tensor spaces are lists of strings")
    if len(raw) != arity:
        raise DimensionError(f"{where}: label {raw!r} has {len(raw)} factors, expected {arity}")
    label = tuple(raw)
    if not V.has_label(label):
        raise ReferenceError(f"{where}: {raw!r} is not a basis label of {'⊗'.join(names)}")
    return label


def _parse_space(name: str, obj: Any, text: str) -> GradedSpace:
    where = f"space {name!r}"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    basis = []
    for item in _need(obj, "basis", where, list):
        if (not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str)
                or isinstance(item[1], bool) or not isinstance(item[1], int)):
            line, col = _position(text, f'"{name}"')
            raise ParseError(f"{where}: basis items are [label, degree]", line, col)
        basis.append((item[0], item[1]))
    window = obj.get("window")
    if window is not None and (not isinstance(window, list) or len(window) != 2):
        raise ParseError(f"{where}: window is [min, max]")
    try:
        return GradedSpace(name, basis, tuple(window) if window else None)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None
    except WindowError as exc:
        raise DimensionError(f"{where}: {exc}") from None


def _parse_map(name: str, obj: Any, spaces: Dict[str, GradedSpace], text: str):
    where = f"map {name!r}"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    src_names = _space_list(_need(obj, "source", where), where)
    tgt_names = _space_list(_need(obj, "target", where), where)
    V = _resolve_space(src_names, spaces, where)
    W = _resolve_space(tgt_names, spaces, where)
    degree = _need(obj, "degree", where, int)
    cols: Dict[int, Dict[int, Fraction]] = {}
    for entry in _need(obj, "entries", where, list):
        if not isinstance(entry, list) or len(entry) != 3:
            raise DimensionError(f"{where}: entries are [source label, target label, scalar]")
        j = V.index(_resolve_label(V, src_names, entry[0], where))
        i = W.index(_resolve_label(W, tgt_names, entry[1], where))
        c = parse_scalar(entry[2], text)
        if i in cols.get(j, {}):
            raise ParseError(f"{where}: duplicate entry {entry[0]!r} -> {entry[1]!r}")
        if c:
            cols.setdefault(j, {})[i] = c
    try:
        f = GradedMap(V, W, degree, cols)
    except DegreeError as exc:
        raise DimensionError(f"{where}: {exc}") from None
    return f, (src_names, tgt_names)


def _lookup_map(maps: Dict[str, GradedMap], name: Any, where: str) -> GradedMap:
    if not isinstance(name, str):
        raise ParseError(f"{where}: map references are names")
    if name not in maps:
        raise ReferenceError(f"{where}: unknown map {name!r}")
    return maps[name]


def _parse_structure(name: str, obj: Any, spaces, maps) -> HopfData:
    where = f"structure {name!r}"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    kind = _need(obj, "kind", where, str)
    if kind not in STRUCTURE_KINDS:
        raise ParseError(f"{where}: unknown kind {kind!r}")
    space = _resolve_space(_space_list(_need(obj, "space", where), where), spaces, where)
    required = {"algebra": ("u", "m"), "coalgebra": ("eps", "delta"),
                "bialgebra": ("u", "m", "eps", "delta"),
                "hopf": ("u", "m", "eps", "delta", "antipode")}[kind]
    fields: Dict[str, GradedMap] = {}
    for key in STRUCTURE_FIELDS:
        if key in obj:
            fields[key] = _lookup_map(maps, obj[key], where)
        elif key in required:
            raise ParseError(f"{where}: a {kind} needs field {key!r}")
    fields.setdefault("d", zero(space, space, 1))
    extra = set(obj) - set(STRUCTURE_FIELDS) - {"kind", "space"}
    if extra:
        raise ParseError(f"{where}: unknown fields {sorted(extra)}")
    try:
        return HopfData(space=space, name=name, **fields)
    except (SpaceMismatch, DegreeError) as exc:
        raise DimensionError(f"{where}: {exc}") from None


def _parse_comodule(name: str, obj: Any, spaces, maps, structures) -> Comodule:
    where = f"comodule {name!r}"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    over = _need(obj, "over", where, str)
    if over not in structures:
        raise ReferenceError(f"{where}: unknown structure {over!r}")
    M = _resolve_space(_space_list(_need(obj, "space", where), where), spaces, where)
    d = _lookup_map(maps, obj["d"], where) if "d" in obj else zero(M, M, 1)
    gamma = _lookup_map(maps, _need(obj, "gamma", where), where)
    try:
        return Comodule(M, d, gamma, structures[over], name)
    except SpaceMismatch as exc:
        raise DimensionError(f"{where}: {exc}") from None


def _parse_element(name: str, obj: Any, maps, structures):
    where = f"element {name!r}"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    f = _lookup_map(maps, _need(obj, "map", where), where)
    src, dst = _need(obj, "from", where, str), _need(obj, "to", where, str)
    kind = obj.get("kind", "map")
    if kind not in ELEMENT_KINDS:
        raise ParseError(f"{where}: unknown kind {kind!r}")
    for s in (src, dst):
        if s not in structures:
            raise ReferenceError(f"{where}: unknown structure {s!r}")
    if f.source != structures[src].space or f.target != structures[dst].space:
        raise DimensionError(f"{where}: map does not run {src} -> {dst}")
    return f, src, dst, kind


def parse_bundle(text: str) -> Bundle:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise ParseError("a bundle is a JSON object", 1, 1)
    if raw.get("format") != FORMAT:
        line, col = _position(text, '"format"')
        raise ParseError(f"expected format {FORMAT!r}", line, col)
    unknown = set(raw) - {"format", "spaces", "maps", "structures", "comodules", "elements", "examples"}
    if unknown:
        raise ParseError(f"unknown top-level fields {sorted(unknown)}")
    b = Bundle()
    for section in ("spaces", "maps", "structures", "comodules", "elements"):
        value = raw.get(section, {})
        if not isinstance(value, dict):
            raise ParseError(f"section {section!r} must be an object")
        b.decls[section] = value
    for name, obj in b.decls["spaces"].items():
        if name == "k":
            raise ParseError("the space name 'k' is reserved for the ground field")
        b.spaces[name] = _parse_space(name, obj, text)
    for name, obj in b.decls["maps"].items():
        b.maps[name], b.map_refs[name] = _parse_map(name, obj, b.spaces, text)
    for name, obj in b.decls["structures"].items():
        b.structures[name] = _parse_structure(name, obj, b.spaces, b.maps)
    for name, obj in b.decls["comodules"].items():
        b.comodules[name] = _parse_comodule(name, obj, b.spaces, b.maps, b.structures)
    for name, obj in b.decls["elements"].items():
        b.elements[name] = _parse_element(name, obj, b.maps, b.structures)
    examples = raw.get("examples", [])
    if not isinstance(examples, list) or not all(
            isinstance(e, list) and e and all(isinstance(x, str) for x in e) for e in examples):
        raise ParseError("examples are lists of command-line words")
    b.examples = [list(e) for e in examples]
    return b


def load_bundle(path: str) -> Bundle:
    with open(path, encoding="utf-8") as fh:
        return parse_bundle(fh.read())


# ---------------------------------------------------------------------------
# serialization


def _label_json(label):
    return list(label) if isinstance(label, tuple) else label


def map_to_json(f: GradedMap, source: Sequence[str], target: Sequence[str]) -> Dict[str, Any]:
    return {
        "source": list(source),
        "target": list(target),
        "degree": f.degree,
        "entries": [[_label_json(a), _label_json(b), format_scalar(c)] for a, b, c in f.entries()],
    }


def space_to_json(V: GradedSpace) -> Dict[str, Any]:
    return {"basis": [[lab, n] for lab, n in zip(V.labels, V.degs)], "window": list(V.window)}


def bundle_to_json(b: Bundle) -> Dict[str, Any]:
    out: Dict[str, Any] = {"format": FORMAT}
    out["spaces"] = {name: space_to_json(V) for name, V in b.spaces.items()}
    out["maps"] = {name: map_to_json(f, *b.map_refs[name]) for name, f in b.maps.items()}
    for section in ("structures", "comodules", "elements"):
        decls = b.decls.get(section, {})
        if decls:
            out[section] = {name: dict(decl) for name, decl in decls.items()}
    if b.examples:
        out["examples"] = [list(e) for e in b.examples]
    return out


def _compact(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def dumps(value: Any, indent: int = 0) -> str:
    """Canonical JSON: objects one key per line, lists of lists one item per line."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {dumps(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and value and all(isinstance(v, (list, dict)) for v in value):
        items = [inner + (_compact(v) if isinstance(v, list) else dumps(v, indent + 1)) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _compact(value)


def serialize_bundle(b: Bundle) -> str:
    return dumps(bundle_to_json(b)) + "\n"


# ---------------------------------------------------------------------------
# building bundles from library objects


class BundleBuilder:
    """Accumulates spaces, maps and declarations under chosen names."""

    def __init__(self):
        self.bundle = Bundle()
        for section in ("spaces", "maps", "structures", "comodules", "elements"):
            self.bundle.decls[section] = {}
        self._space_names: Dict[GradedSpace, str] = {K: "k"}

    def space(self, V: GradedSpace, name: Optional[str] = None) -> List[str]:
        if V.factors is not None:
            out: List[str] = []
            for f in V.factors:
                out.extend(self.space(f))
            return out
        if V not in self._space_names:
            name = name or V.name
            if name in self.bundle.spaces or name == "k":
                raise DgHopfError(f"space name {name!r} already used")
            self._space_names[V] = name
            self.bundle.spaces[name] = V
            self.bundle.decls["spaces"][name] = space_to_json(V)
        return [self._space_names[V]]

    def map(self, name: str, f: GradedMap) -> str:
        if name in self.bundle.maps:
            raise DgHopfError(f"map name {name!r} already used")
        refs = (self.space(f.source), self.space(f.target))
        self.bundle.maps[name] = f
        self.bundle.map_refs[name] = refs
        self.bundle.decls["maps"][name] = map_to_json(f, *refs)
        return name

    def structure(self, name: str, H: HopfData, kind: str, prefix: str, space_name: Optional[str] = None,
                  reuse: Optional[Dict[str, str]] = None) -> str:
        names = self.space(H.space, space_name)
        decl: Dict[str, Any] = {"kind": kind, "space": names[0] if len(names) == 1 else names}
        for key in STRUCTURE_FIELDS:
            f = getattr(H, key)
            if f is None or (key == "d" and f.is_zero()):
                continue
            if kind != "hopf" and key == "antipode":
                continue
            if reuse and key in reuse:
                decl[key] = reuse[key]
            else:
                decl[key] = self.map(f"{key}_{prefix}", f)
        self.bundle.decls["structures"][name] = decl
        self.bundle.structures[name] = HopfData(space=H.space, name=name, **{
            k: getattr(H, k) for k in STRUCTURE_FIELDS if k in decl or k == "d"})
        return name

    def comodule(self, name: str, C: Comodule, over: str, prefix: str, gamma_name: Optional[str] = None,
                 d_name: Optional[str] = None) -> str:
        names = self.space(C.space)
        decl: Dict[str, Any] = {"over": over, "space": names[0] if len(names) == 1 else names}
        if not C.d.is_zero():
            decl["d"] = d_name or self.map(f"d_{prefix}", C.d)
        decl["gamma"] = gamma_name or self.map(f"gamma_{prefix}", C.gamma)
        self.bundle.decls["comodules"][name] = decl
        self.bundle.comodules[name] = Comodule(C.space, C.d, C.gamma, self.bundle.structures[over], name)
        return name

    def element(self, name: str, f: GradedMap, src: str, dst: str, kind: str) -> str:
        self.map(name, f)
        self.bundle.decls["elements"][name] = {"map": name, "from": src, "to": dst, "kind": kind}
        self.bundle.elements[name] = (f, src, dst, kind)
        return name

    def examples(self, *commands: Sequence[str]) -> None:
        self.bundle.examples.extend(list(c) for c in commands)
