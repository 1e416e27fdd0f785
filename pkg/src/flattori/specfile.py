"""JSON spec files.

Schema 1::

    {"schema": 1,
     "dim": 2,
     "generators": [{"linear": [[1, 1], [0, 1]], "translation": [0, 1]}, ...],
     "structure": {"kind": "complex", "I": [[0, -1], [1, 0]]}}

Scalars are JSON integers or strings ``"p/q"`` in lowest terms.  ``K`` is
never written; it is recomputed as ``IJ``.  A file with
``"gallery_negative": true`` holds holonomy data of an incomplete example.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .affine import AffineMap
from .linalg import LinearStructure, Matrix, StructureKind, Vector
from .reporting import to_jsonable
from .torus import FlatAffineTorusSpec, GalleryNegative

SCHEMA_VERSION = 1

_RATIONAL = re.compile(r"^(-?)(0|[1-9]\d*)(?:/([1-9]\d*))?$")


class SpecFormatError(ValueError):
    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location


def parse_scalar(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise SpecFormatError("boolean is not a scalar", where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if not m:
            raise SpecFormatError(f"malformed rational {x!r}", where)
        sign, num, den = m.groups()
        q = Fraction(int(sign + num), int(den or 1))
        if den is not None and (den == "1" or q.denominator != int(den)):
            raise SpecFormatError(f"rational {x!r} is not in lowest terms", where)
        return q
    if isinstance(x, float):
        raise SpecFormatError(f"floating-point value {x!r}; write it as a \"p/q\" string", where)
    raise SpecFormatError(f"expected a scalar, got {type(x).__name__}", where)


def render_scalar(x: Fraction):
    return to_jsonable(Fraction(x))


def _matrix(obj, n, where) -> Matrix:
    if not isinstance(obj, list) or len(obj) != n:
        raise SpecFormatError(f"expected a list of {n} rows", where)
    rows = []
    for i, r in enumerate(obj):
        if not isinstance(r, list) or len(r) != n:
            raise SpecFormatError(f"expected a row of length {n}", f"{where}[{i}]")
        rows.append([parse_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)])
    return Matrix(rows, ncols=n)


def _vector(obj, n, where) -> Vector:
    if not isinstance(obj, list) or len(obj) != n:
        raise SpecFormatError(f"expected a list of {n} scalars", where)
    return Vector(parse_scalar(x, f"{where}[{i}]") for i, x in enumerate(obj))


def _generators(doc, n):
    gens = doc.get("generators")
    if not isinstance(gens, list):
        raise SpecFormatError("missing generator list", "$.generators")
    out = []
    for k, g in enumerate(gens):
        where = f"$.generators[{k}]"
        if not isinstance(g, dict) or set(g) - {"linear", "translation"} or len(g) != 2:
            raise SpecFormatError("generator needs exactly 'linear' and 'translation'", where)
        out.append(AffineMap(_matrix(g["linear"], n, where + ".linear"),
                             _vector(g["translation"], n, where + ".translation")))
    return tuple(out)


def _structure(obj, n) -> LinearStructure:
    where = "$.structure"
    if not isinstance(obj, dict):
        raise SpecFormatError("structure must be an object", where)
    try:
        kind = StructureKind(obj.get("kind"))
    except ValueError:
        raise SpecFormatError(f"unknown structure kind {obj.get('kind')!r}", where + ".kind") from None
    expected = {StructureKind.REAL: set(), StructureKind.COMPLEX: {"I"},
                StructureKind.QUATERNIONIC: {"I", "J"}}[kind]
    keys = set(obj) - {"kind"}
    if keys != expected:
        raise SpecFormatError(f"{kind.value} structure takes operators {sorted(expected)}, got {sorted(keys)}", where)
    ops = {name: _matrix(obj[name], n, f"{where}.{name}") for name in expected}
    return LinearStructure(kind, n, **ops)


def spec_from_dict(doc) -> FlatAffineTorusSpec | GalleryNegative:
    if not isinstance(doc, dict):
        raise SpecFormatError("top level must be an object")
    schema = doc.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise SpecFormatError(f"unsupported schema {schema!r}", "$.schema")
    known = {"schema", "dim", "generators", "structure", "gallery_negative", "note"}
    extra = set(doc) - known
    if extra:
        raise SpecFormatError(f"unknown keys {sorted(extra)}")
    n = doc.get("dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SpecFormatError("dim must be a positive integer", "$.dim")
    gens = _generators(doc, n)
    if doc.get("gallery_negative"):
        return GalleryNegative(n, gens, doc.get("note", ""))
    if len(gens) != n:
        raise SpecFormatError(f"expected {n} generators, got {len(gens)}", "$.generators")
    structure = _structure(doc["structure"], n) if doc.get("structure") is not None else None
    return FlatAffineTorusSpec(n, gens, structure)


def spec_to_dict(spec: FlatAffineTorusSpec | GalleryNegative) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "dim": spec.dim,
        "generators": [{"linear": to_jsonable(g.linear), "translation": to_jsonable(g.translation)}
                       for g in spec.generators],
    }
    if isinstance(spec, GalleryNegative):
        doc["gallery_negative"] = True
        if spec.note:
            doc["note"] = spec.note
        return doc
    S = spec.structure
    if S is not None:
        s = {"kind": S.kind.value}
        if S.I is not None:
            s["I"] = to_jsonable(S.I)
        if S.J is not None:
            s["J"] = to_jsonable(S.J)
        doc["structure"] = s
    return doc


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_spec(spec, path: str | Path | None = None) -> str:
    text = dumps(spec_to_dict(spec))
    if path is not None:
        Path(path).write_text(text)
    return text


def loads_spec(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    try:
        return spec_from_dict(doc)
    except SpecFormatError:
        raise
    except ValueError as exc:
        raise SpecFormatError(str(exc)) from None


def load_spec(path: str | Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecFormatError(f"cannot read file: {exc.strerror}", str(path)) from None
    return loads_spec(text)
