"""Canonical JSON for graphs with an optional embedded model.

Documents look like::

    {"edges": [[0, 1], ...], "ids": [...], "model": {"assign": [...], "kind": "circle"}, "n": 4}

Serialisation sorts keys, uses integers only and no whitespace, so equal
content gives equal bytes and a stable digest.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .graph import Graph, GraphError
from .models import CLASSES, AnyModel, ModelError, model_from_assign


class DocumentError(ValueError):
    pass


def canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def graph_document(g: Graph, model: AnyModel | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"n": g.n, "ids": list(g.ids), "edges": [list(e) for e in g.edges()]}
    if model is not None:
        m: dict[str, Any] = {"kind": model.kind, "assign": model.assign()}
        if model.kind == "polygon":
            m["k"] = model.k  # type: ignore[union-attr]
        doc["model"] = m
    return doc


def dumps(g: Graph, model: AnyModel | None = None) -> str:
    return canonical(graph_document(g, model))


def graph_digest(g: Graph) -> str:
    """Hash of the graph alone (nodes, ids, edges); the model does not enter."""
    return sha256(dumps(g))


def _ints(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise DocumentError(f"{what} must be a list of integers")
    return value


def from_document(doc: Any) -> tuple[Graph, AnyModel | None]:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    missing = {"n", "ids", "edges"} - doc.keys()
    if missing:
        raise DocumentError(f"missing keys: {', '.join(sorted(missing))}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise DocumentError("n must be an integer")
    ids = _ints(doc["ids"], "ids")
    if not isinstance(doc["edges"], list):
        raise DocumentError("edges must be a list of [i, j] pairs")
    edges = []
    for e in doc["edges"]:
        pair = _ints(e, "edge")
        if len(pair) != 2:
            raise DocumentError("edges must be [i, j] pairs")
        edges.append((pair[0], pair[1]))
    try:
        g = Graph.from_edges(n, edges, ids)
    except (GraphError, IndexError) as exc:
        raise DocumentError(f"invalid graph: {exc}") from exc
    model = None
    if doc.get("model") is not None:
        m = doc["model"]
        if not isinstance(m, dict) or m.get("kind") not in CLASSES or not isinstance(m.get("assign"), list):
            raise DocumentError("model needs kind in " + "/".join(CLASSES) + " and an assign list")
        rows = [_ints(r, "model row") for r in m["assign"]]
        try:
            model = model_from_assign(m["kind"], rows, m.get("k"))
        except (ModelError, TypeError) as exc:
            raise DocumentError(f"invalid model: {exc}") from exc
        if model.n != g.n:
            raise DocumentError(f"model has {model.n} nodes, graph has {g.n}")
    return g, model


def loads(text: str) -> tuple[Graph, AnyModel | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def load(path: str | Path) -> tuple[Graph, AnyModel | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def dump(path: str | Path, g: Graph, model: AnyModel | None = None) -> str:
    text = dumps(g, model)
    Path(path).write_text(text)
    return sha256(text)
