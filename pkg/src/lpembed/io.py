"""Edge-list files and DOT export.

An edge-list line is ``u v`` or ``u v w`` with vertex names as whitespace-free
tokens and an optional exact weight (``p/q``, integer or decimal). A line with
a single token declares an isolated vertex. ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .graph import DisconnectedGraph, Graph, GraphError, WeightedGraph


class EdgeListError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeList:
    names: tuple[str, ...]
    edges: tuple[tuple[int, int, Fraction | None], ...]
    line_numbers: tuple[int, ...]

    @property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}


def parse_edge_list(text: str) -> EdgeList:
    names: list[str] = []
    index: dict[str, int] = {}
    edges = []

    def vid(tok: str) -> int:
        if tok not in index:
            index[tok] = len(names)
            names.append(tok)
        return index[tok]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) == 1:
            vid(toks[0])
            continue
        if len(toks) > 3:
            raise EdgeListError(f"line {lineno}: expected 'u v [weight]', got {raw.strip()!r}")
        weight = None
        if len(toks) == 3:
            try:
                weight = Fraction(toks[2])
            except (ValueError, ZeroDivisionError):
                raise EdgeListError(f"line {lineno}: bad weight {toks[2]!r}") from None
            if weight < 0:
                raise EdgeListError(f"line {lineno}: negative weight {toks[2]!r}")
        edges.append((vid(toks[0]), vid(toks[1]), weight, lineno))

    if not names:
        raise EdgeListError("empty graph")
    return EdgeList(tuple(names), tuple((u, v, w) for u, v, w, _ in edges), tuple(e[3] for e in edges))


def load_graph(text: str) -> tuple[Graph, list[str]]:
    """Parse an unweighted input graph; weights, if present, must be absent or 1."""
    el = parse_edge_list(text)
    seen = set()
    for (u, v, w), lineno in zip(el.edges, el.line_numbers):
        a, b = el.names[u], el.names[v]
        if u == v:
            raise EdgeListError(f"line {lineno}: self-loop {a} {b}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(f"line {lineno}: duplicate edge {a} {b}")
        seen.add(key)
        if w is not None and w != 1:
            raise EdgeListError(f"line {lineno}: input graphs are unweighted, edge {a} {b} has weight {w}")
    try:
        g = Graph.from_edges(len(el.names), [(u, v) for u, v, _ in el.edges])
    except DisconnectedGraph as exc:
        raise EdgeListError(
            f"graph disconnected: {el.names[exc.vertex]} unreachable from {el.names[0]}") from None
    except GraphError as exc:
        raise EdgeListError(str(exc)) from None
    return g, list(el.names)


def load_host(text: str) -> tuple[list[str], list[tuple[int, int, Fraction]]]:
    """Parse a weighted host graph; missing weights default to 1."""
    el = parse_edge_list(text)
    return list(el.names), [(u, v, Fraction(1) if w is None else w) for u, v, w in el.edges]


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def format_edge_list(names: list[str], edges: Iterable[tuple[int, int]] | Iterable[tuple[int, int, Fraction]],
                     header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    for e in edges:
        if len(e) == 3:
            lines.append(f"{names[e[0]]} {names[e[1]]} {e[2]}")
        else:
            lines.append(f"{names[e[0]]} {names[e[1]]}")
    return "\n".join(lines) + "\n"


def host_names(names: list[str], wg: WeightedGraph) -> list[str]:
    """Vertex names followed by fresh names for Steiner points."""
    taken = set(names)
    out = list(names)
    for k in range(wg.n_nodes - wg.n_real):
        cand = f"@p{k}"
        while cand in taken:
            cand = "@" + cand
        taken.add(cand)
        out.append(cand)
    return out


def to_dot(names: list[str], edges: list[tuple[int, int, Fraction]], graph_name: str = "host") -> str:
    lines = [f"graph {graph_name} {{"]
    for name in names:
        lines.append(f'  "{name}";')
    for u, v, w in edges:
        lines.append(f'  "{names[u]}" -- "{names[v]}" [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
