"""Reading and writing graphs, forbidden sets and orientations.

Graph text format: first line ``n m``, then ``m`` lines ``u v`` (0-based).
Graph JSON: ``{"n": ..., "edges": [[u, v], ...]}``.
Forbidden sets JSON: ``{"mode": "outdeg" | "imbalance", "sets": [[...], ...]}``.
Orientation JSON: ``{"arcs": [[tail, head], ...]}``.
"""

from __future__ import annotations

import json

from .graph import ForbiddenSets, Graph, Mode, Orientation


def parse_graph(text: str) -> Graph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json(json.loads(stripped))
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(data: dict) -> Graph:
    return Graph(int(data["n"]), data["edges"])


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def forbidden_to_json(f: ForbiddenSets) -> dict:
    return {"mode": f.mode.value, "sets": [sorted(s) for s in f.sets]}


def forbidden_from_json(g: Graph, data: dict, mode: str | None = None) -> ForbiddenSets:
    return ForbiddenSets.build(g, data["sets"], mode or data.get("mode", Mode.OUTDEG.value))


def read_forbidden(g: Graph, path: str, mode: str | None = None) -> ForbiddenSets:
    with open(path) as fh:
        return forbidden_from_json(g, json.load(fh), mode)


def orientation_to_json(d: Orientation) -> dict:
    return {"arcs": [list(a) for a in d.arcs()]}


def orientation_from_json(g: Graph, data: dict) -> Orientation:
    return Orientation.from_arcs(g, data["arcs"])


def read_orientation(g: Graph, path: str) -> Orientation:
    with open(path) as fh:
        return orientation_from_json(g, json.load(fh))


def orientation_to_dot(d: Orientation, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {v};" for v in range(d.graph.n))
    lines.extend(f"  {t} -> {h};" for t, h in d.arcs())
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_json(path: str):
    with open(path) as fh:
        return json.load(fh)
