"""File formats: edge-list text, GraphML, JSON artifacts, optional DOT dump."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, Optional, Union

from .graph import Graph

SCHEMA_VERSION = 1


def read_edge_list(path_or_text: Union[str, Path], *, is_text: bool = False) -> Graph:
    """Parse the `u v` per-line format; `#` starts a comment.

    A line with a single token declares an isolated vertex.
    """
    if is_text:
        text = str(path_or_text)
    else:
        text = Path(path_or_text).read_text(encoding="utf-8")
    g = Graph()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            g.add_vertex(int(parts[0]))
        elif len(parts) == 2:
            u, v = int(parts[0]), int(parts[1])
            g.add_vertex(u)
            g.add_vertex(v)
            g.add_edge(u, v)
        else:
            raise ValueError(f"line {ln}: expected 'u v', got {raw!r}")
    return g


def write_edge_list(g: Graph, path: Union[str, Path]) -> None:
    lines = []
    covered = set()
    for _eid, u, v in g.edges():
        lines.append(f"{u} {v}")
        covered.add(u)
        covered.add(v)
    for v in g.vertices():
        if v not in covered:
            lines.append(str(v))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_graphml(path: Union[str, Path]) -> Graph:
    import networkx as nx

    nxg = nx.read_graphml(str(path))
    g = Graph()
    relabel: Dict[str, int] = {}
    for node in sorted(nxg.nodes, key=str):
        try:
            vid = int(node)
        except (TypeError, ValueError):
            vid = len(relabel)
        while g.has_vertex(vid):
            vid += 1
        relabel[node] = vid
        g.add_vertex(vid)
    for u, v in sorted(nxg.edges(), key=lambda e: (str(e[0]), str(e[1]))):
        g.add_edge(relabel[u], relabel[v])
    return g


def write_graphml(g: Graph, path: Union[str, Path]) -> None:
    import networkx as nx

    nxg = nx.MultiGraph()
    nxg.add_nodes_from(g.vertices())
    for eid, u, v in g.edges():
        nxg.add_edge(u, v, key=eid)
    nx.write_graphml(nxg, str(path))


def load_graph(path: Union[str, Path]) -> Graph:
    """Dispatch on extension: .graphml or edge-list text."""
    p = Path(path)
    if p.suffix.lower() == ".graphml":
        return read_graphml(p)
    return read_edge_list(p)


def dump_json(obj: dict, path: Optional[Union[str, Path]] = None) -> str:
    """Deterministic JSON: sorted keys, no whitespace drift."""
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_json(path: Union[str, Path]) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def to_dot(g: Graph) -> str:
    """DOT dump for eyeballing; not part of any pipeline."""
    lines = ["graph G {"]
    for v in g.vertices():
        label = g.labels.get(v)
        lines.append(f'  {v}' + (f' [label="{label}"]' if label else "") + ";")
    for eid, u, v in g.edges():
        lines.append(f"  {u} -- {v} [label={eid}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
