"""Reading and writing category, functor, span and presheaf documents.

Documents are YAML (JSON is accepted as a subset).  All ids are read as
strings.  Emission is canonical: objects and morphisms sorted by id,
composites with an identity left out, JSON with sorted keys.
"""
from __future__ import annotations

import json
from pathlib import Path

import yaml

from .core import (
    CategoryError,
    FinCat,
    FunctorData,
    SetFunctor,
    SpanData,
    inclusion_functor,
    opposite,
    validate_category,
    validate_functor,
    validate_set_functor,
)


class ParseError(ValueError):
    """Malformed input, with the field path and (when known) the line."""

    def __init__(self, message: str, where: str = "", line: int | None = None):
        loc = where
        if line is not None:
            loc = f"line {line}" + (f", {where}" if where else "")
        super().__init__(f"{loc}: {message}" if loc else message)
        self.where = where
        self.line = line


def load_document(path) -> dict:
    text = Path(path).read_text()
    return parse_text(text)


def parse_text(text: str) -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(str(getattr(exc, "problem", exc)), line=None if mark is None else mark.line + 1) from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a mapping")
    return doc


def _need(raw: dict, key: str, where: str):
    if not isinstance(raw, dict):
        raise ParseError("expected a mapping", where)
    if key not in raw:
        raise ParseError(f"missing field '{key}'", where)
    return raw[key]


def _s(x) -> str:
    return str(x)


def parse_category(raw, where: str = "category") -> FinCat:
    """Category from ``objects``, ``morphisms``, ``identities``, ``compose``.

    Identities may be left out, in which case ``id_<object>`` is used, and
    identity morphisms need not be listed among ``morphisms``.
    """
    objects = _need(raw, "objects", where)
    if not isinstance(objects, list):
        raise ParseError("'objects' must be a list", f"{where}.objects")
    objects = [_s(x) for x in objects]
    morphisms = []
    for i, m in enumerate(raw.get("morphisms") or []):
        w = f"{where}.morphisms[{i}]"
        if isinstance(m, dict):
            morphisms.append((_s(_need(m, "id", w)), _s(_need(m, "src", w)), _s(_need(m, "dst", w))))
        elif isinstance(m, (list, tuple)) and len(m) == 3:
            morphisms.append(tuple(_s(v) for v in m))
        else:
            raise ParseError("morphism must be {id, src, dst}", w)
    identities = {_s(k): _s(v) for k, v in (raw.get("identities") or {}).items()}
    listed = {m for m, _, _ in morphisms}
    for x in objects:
        identities.setdefault(x, f"id_{x}")
        if identities[x] not in listed:
            morphisms.append((identities[x], x, x))
            listed.add(identities[x])
    compose = []
    for i, c in enumerate(raw.get("compose") or []):
        w = f"{where}.compose[{i}]"
        if isinstance(c, dict):
            compose.append((_s(_need(c, "g", w)), _s(_need(c, "f", w)), _s(_need(c, "result", w))))
        elif isinstance(c, (list, tuple)) and len(c) == 3:
            compose.append(tuple(_s(v) for v in c))
        else:
            raise ParseError("composition entry must be {g, f, result}", w)
    return validate_category(objects=objects, morphisms=morphisms, identities=identities, compose=compose)


def parse_functor(raw, source: FinCat, target: FinCat, where: str = "functor") -> FunctorData:
    """``inclusion`` or a mapping with ``objects`` and ``morphisms`` maps."""
    if raw == "inclusion":
        return inclusion_functor(source, target)
    if not isinstance(raw, dict):
        raise ParseError("functor must be 'inclusion' or a mapping", where)
    obj = raw.get("objects", raw.get("obj_map"))
    if obj is None:
        raise ParseError("missing field 'objects'", where)
    mor = raw.get("morphisms", raw.get("mor_map")) or {}
    return validate_functor(
        {
            "obj_map": {_s(k): _s(v) for k, v in obj.items()},
            "mor_map": {_s(k): _s(v) for k, v in mor.items()},
        },
        source,
        target,
    )


def parse_span(raw, where: str = "") -> SpanData:
    pre = f"{where}." if where else ""
    A = parse_category(_need(raw, "A", where), f"{pre}A")
    B = parse_category(_need(raw, "B", where), f"{pre}B")
    C = parse_category(_need(raw, "C", where), f"{pre}C")
    f = parse_functor(_need(raw, "left", where), A, B, f"{pre}left")
    g = parse_functor(_need(raw, "right", where), A, C, f"{pre}right")
    return SpanData(f, g)


def parse_presheaf(raw, C: FinCat, where: str = "presheaf") -> SetFunctor:
    """A presheaf on C: ``sets`` per object, ``maps`` per morphism m: x -> y
    sending elements of the set at y to the set at x."""
    sets = {_s(k): tuple(_s(e) for e in v) for k, v in (_need(raw, "sets", where) or {}).items()}
    for x in C.objects:
        sets.setdefault(x, ())
    maps = {
        _s(m): {_s(k): _s(v) for k, v in (table or {}).items()}
        for m, table in (raw.get("maps") or {}).items()
    }
    return validate_set_functor(opposite(C), sets, maps)


def object_list(raw, C: FinCat, where: str) -> list:
    if not isinstance(raw, list):
        raise ParseError("expected a list of objects", where)
    out = [_s(x) for x in raw]
    for x in out:
        if x not in C.object_set:
            raise ParseError(f"unknown object {x!r}", where)
    return out


# --------------------------------------------------------------- emission


def _sort_key(x):
    return (str(type(x).__name__), str(x))


def category_to_dict(C: FinCat) -> dict:
    ids = set(C.identities.values())
    compose = [
        {"g": g, "f": f, "result": h}
        for (g, f), h in C.compose.items()
        if g not in ids and f not in ids
    ]
    compose.sort(key=lambda e: (str(e["g"]), str(e["f"])))
    return {
        "objects": sorted((x for x in C.objects), key=_sort_key),
        "morphisms": [
            {"id": m, "src": s, "dst": t} for m, s, t in sorted(C.morphisms, key=lambda r: _sort_key(r[0]))
        ],
        "identities": {x: C.identities[x] for x in sorted(C.objects, key=_sort_key)},
        "compose": compose,
    }


def functor_to_dict(F: FunctorData) -> dict:
    return {
        "objects": {x: F.obj_map[x] for x in sorted(F.obj_map, key=_sort_key)},
        "morphisms": {m: F.mor_map[m] for m in sorted(F.mor_map, key=_sort_key)},
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def canonical_category_text(C: FinCat) -> str:
    return dumps(category_to_dict(C))


def span_to_dict(span: SpanData) -> dict:
    return {
        "A": category_to_dict(span.A),
        "B": category_to_dict(span.B),
        "C": category_to_dict(span.C),
        "left": functor_to_dict(span.left),
        "right": functor_to_dict(span.right),
    }


__all__ = [
    "CategoryError",
    "ParseError",
    "load_document",
    "parse_text",
    "parse_category",
    "parse_functor",
    "parse_span",
    "parse_presheaf",
    "object_list",
    "category_to_dict",
    "functor_to_dict",
    "span_to_dict",
    "canonical_category_text",
    "dumps",
]
