"""Text formats for graphs and families.

Graph files are DIMACS-like::

    # comment
    v 5          (declares a vertex; needed only for isolated ones)
    e 1 2        (declares an edge)

Family files hold one word per line, cells separated by single spaces and
``*`` for the placeholder.  Lines starting with ``#`` are ignored, except
that a first line of the form ``# {...}`` is read as a JSON metadata header.
"""

from __future__ import annotations

import json

from .core import COLLIDING, DIFFERENT, STAR, Family, InputError, NaturalGraph

SCHEMA_VERSION = 1


def parse_graph(text: str) -> NaturalGraph:
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c "):
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 2:
                vertices.append(int(parts[1]))
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "p":
                continue
            else:
                raise ValueError
        except ValueError:
            raise InputError(f"graph line {lineno}: cannot parse {raw!r}") from None
    return NaturalGraph(vertices, edges)


def format_graph(g: NaturalGraph) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"e {a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def parse_word(line: str) -> tuple:
    cells = []
    for tok in line.split():
        if tok == "*":
            cells.append(STAR)
        else:
            v = int(tok)
            if v < 1:
                raise ValueError(f"symbol {v} is not a positive integer")
            cells.append(v)
    return tuple(cells)


def format_word(word) -> str:
    return " ".join("*" if c == STAR else str(c) for c in word)


def read_family_text(text: str) -> tuple[list, dict]:
    """Return (words, header) without building a Family."""
    header: dict = {}
    words = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if not words and not header and body.startswith("{"):
                try:
                    header = json.loads(body)
                except json.JSONDecodeError as exc:
                    raise InputError(f"family line {lineno}: bad JSON header ({exc})") from None
            continue
        try:
            words.append(parse_word(line))
        except ValueError as exc:
            raise InputError(f"family line {lineno}: {exc}") from None
    return words, header


def parse_family(text: str, graph: NaturalGraph | None = None, relation: str | None = None) -> Family:
    words, header = read_family_text(text)
    if graph is None:
        if "graph" not in header:
            raise InputError("family file carries no graph; pass one explicitly")
        graph = NaturalGraph.from_dict(header["graph"])
    relation = relation or header.get("relation", DIFFERENT)
    order = header.get("order")
    meta = {k: v for k, v in header.items() if k not in ("graph", "relation", "order")}
    return Family(tuple(words), graph, relation, tuple(order) if order else None, meta)


def family_header(f: Family) -> dict:
    head = {"schema_version": SCHEMA_VERSION}
    head.update({k: v for k, v in f.meta.items() if k != "schema_version"})
    head["size"] = len(f)
    head["length"] = f.length
    head["graph"] = f.graph.to_dict()
    head["relation"] = f.relation
    if f.order:
        head["order"] = list(f.order)
    return head


def format_family(f: Family) -> str:
    lines = ["# " + json.dumps(family_header(f), sort_keys=True)]
    lines += [format_word(w) for w in f.words]
    return "\n".join(lines) + "\n"


__all__ = [
    "COLLIDING",
    "DIFFERENT",
    "SCHEMA_VERSION",
    "format_family",
    "format_graph",
    "format_word",
    "parse_family",
    "parse_graph",
    "parse_word",
    "read_family_text",
]
