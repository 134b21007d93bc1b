"""Versioned JSON documents ("schema": "tilekit/1") for every artifact.

Each document names its kind; unknown kinds and unknown fields are errors.
Output is emitted with sorted keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .aztec import Domino, KTiling, Tiling
from .hexagon import HexRegion, LozengeTiling, tiling_from_chain
from .schroder import STEP_DELTA, SchroderPathFamily

SCHEMA = "tilekit/1"

FIELDS = {
    "tiling": {"rank", "dominos"},
    "ktiling": {"rank", "layers"},
    "paths": {"rank", "paths"},
    "statistics": {"rank", "colors", "samples", "counts"},
    "lozenge": {"a", "b", "c", "layers"},
    "curves": {"name", "branches", "region"},
    "polynomial": {"text", "factored"},
    "enumeration": {"rank", "colors", "count", "tilings", "histogram"},
    "verification": {"check", "ok", "details", "failures"},
    "table": {"rows", "ok"},
}
OPTIONAL = {"metadata"}


class SchemaError(ValueError):
    pass


def document(kind: str, **body) -> dict:
    if kind not in FIELDS:
        raise SchemaError(f"unknown kind {kind!r}")
    extra = set(body) - FIELDS[kind] - OPTIONAL
    if extra:
        raise SchemaError(f"unknown fields for {kind}: {sorted(extra)}")
    return {"schema": SCHEMA, "kind": kind, **body}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}") from None
    validate(doc)
    return doc


def validate(doc: Any) -> None:
    if not isinstance(doc, dict):
        raise SchemaError("a document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"expected schema {SCHEMA!r}, got {doc.get('schema')!r}")
    kind = doc.get("kind")
    if kind not in FIELDS:
        raise SchemaError(f"unknown kind {kind!r}")
    keys = set(doc) - {"schema", "kind"}
    extra = keys - FIELDS[kind] - OPTIONAL
    if extra:
        raise SchemaError(f"unknown fields for {kind}: {sorted(extra)}")


# ------------------------------------------------------------ encoders

def _dominos(t: Tiling) -> list:
    return [[d.x, d.y, d.o] for d in t.dominos]


def tiling_doc(t: Tiling, metadata: dict | None = None) -> dict:
    body = {"rank": t.rank, "dominos": _dominos(t)}
    if metadata:
        body["metadata"] = metadata
    return document("tiling", **body)


def ktiling_doc(kt: KTiling, metadata: dict | None = None) -> dict:
    body = {"rank": kt.rank, "layers": [_dominos(t) for t in kt.layers]}
    if metadata:
        body["metadata"] = metadata
    return document("ktiling", **body)


def paths_doc(fam: SchroderPathFamily) -> dict:
    return document("paths", rank=fam.rank, paths=fam.to_json())


def statistics_doc(stats, metadata: dict | None = None) -> dict:
    body = stats.to_json()
    if metadata:
        body["metadata"] = metadata
    return document("statistics", **body)


def lozenge_doc(layers, metadata: dict | None = None) -> dict:
    reg = layers[0].region
    body = {"a": reg.a, "b": reg.b, "c": reg.c,
            "layers": [[list(p) for p in t.chain] for t in layers]}
    if metadata:
        body["metadata"] = metadata
    return document("lozenge", **body)


# ------------------------------------------------------------ decoders

def _need(doc: dict, *names) -> None:
    missing = [n for n in names if n not in doc]
    if missing:
        raise SchemaError(f"missing fields: {missing}")


def _tiling(rank, doms) -> Tiling:
    try:
        return Tiling.make(int(rank), [Domino(int(x), int(y), str(o)) for x, y, o in doms])
    except (TypeError, ValueError) as e:
        raise SchemaError(f"bad tiling: {e}") from None


def to_tiling(doc: dict) -> Tiling:
    validate(doc)
    if doc["kind"] != "tiling":
        raise SchemaError(f"expected a tiling, got {doc['kind']}")
    _need(doc, "rank", "dominos")
    return _tiling(doc["rank"], doc["dominos"])


def to_ktiling(doc: dict) -> KTiling:
    validate(doc)
    if doc["kind"] == "tiling":
        return KTiling.make([to_tiling(doc)])
    if doc["kind"] != "ktiling":
        raise SchemaError(f"expected a ktiling, got {doc['kind']}")
    _need(doc, "rank", "layers")
    return KTiling.make([_tiling(doc["rank"], layer) for layer in doc["layers"]])


def to_paths(doc: dict) -> SchroderPathFamily:
    validate(doc)
    _need(doc, "rank", "paths")
    paths = tuple(tuple(p) for p in doc["paths"])
    if any(s not in STEP_DELTA for p in paths for s in p):
        raise SchemaError("unknown step name")
    return SchroderPathFamily(int(doc["rank"]), paths)


def to_lozenge(doc: dict) -> list:
    validate(doc)
    if doc["kind"] != "lozenge":
        raise SchemaError(f"expected a lozenge document, got {doc['kind']}")
    _need(doc, "a", "b", "c", "layers")
    reg = HexRegion(int(doc["a"]), int(doc["b"]), int(doc["c"]))
    try:
        return [tiling_from_chain(reg, chain) for chain in doc["layers"]]
    except (TypeError, ValueError) as e:
        raise SchemaError(f"bad lozenge tiling: {e}") from None


def to_statistics(doc: dict):
    from .sampler import CellStatistics

    validate(doc)
    _need(doc, "rank", "colors", "samples", "counts")
    counts = np.asarray(doc["counts"], dtype=np.int64)
    m, k = int(doc["rank"]), int(doc["colors"])
    if counts.shape != (k, 2 * m, 2 * m, 4):
        raise SchemaError("counts have the wrong shape")
    return CellStatistics(m, k, counts, int(doc["samples"]))


def is_lozenge(obj) -> bool:
    return isinstance(obj, (list, tuple)) and bool(obj) and isinstance(obj[0], LozengeTiling)
