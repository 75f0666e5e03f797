"""Text formats: plain graphs, bi-colored graphs, DIMACS CNF.

Graph files are line oriented.  Blank lines and lines starting with
``#`` are ignored.  An optional ``nodes N`` line fixes the node count
(required for graphs with trailing isolated nodes; otherwise the
maximum label wins).  Plain graph edges are ``u v``; bi-colored edges
are ``u v b`` or ``u v w``.  Duplicate edges are rejected, and the same
pair appearing with both colors is a format error.  The writers emit a
canonical form that round-trips byte-identically.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

from .setsystem import SetSystemError
from .systems import BiColoredGraph, Graph


class ParseError(SetSystemError):
    """Malformed input line; message carries the 1-based line number."""


class FormatError(ParseError):
    """Structurally invalid input (e.g. an edge that is both colors)."""


def _edge_lines(text: str):
    declared_n = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "nodes":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"line {lineno}: expected 'nodes N'")
            declared_n = int(parts[1])
            continue
        rows.append((lineno, parts))
    return declared_n, rows


def parse_graph_text(text: str) -> Graph:
    declared_n, rows = _edge_lines(text)
    edges = []
    seen = set()
    top = declared_n or 0
    for lineno, parts in rows:
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: labels must be integers") from None
        if u < 1 or v < 1 or u == v:
            raise ParseError(f"line {lineno}: invalid edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge ({u}, {v})")
        seen.add(key)
        edges.append(key)
        top = max(top, u, v)
    if declared_n is not None and top > declared_n:
        raise ParseError(f"edge label {top} exceeds declared node count {declared_n}")
    return Graph.from_edges(top, edges)


def parse_bicolored_text(text: str) -> BiColoredGraph:
    declared_n, rows = _edge_lines(text)
    blacks, whites = [], []
    colors: dict[tuple[int, int], str] = {}
    top = declared_n or 0
    for lineno, parts in rows:
        if len(parts) != 3 or parts[2] not in ("b", "w"):
            raise ParseError(f"line {lineno}: expected 'u v b' or 'u v w'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: labels must be integers") from None
        if u < 1 or v < 1 or u == v:
            raise ParseError(f"line {lineno}: invalid edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in colors:
            if colors[key] != parts[2]:
                raise FormatError(
                    f"line {lineno}: edge ({u}, {v}) already declared "
                    f"with color '{colors[key]}'")
            raise ParseError(f"line {lineno}: duplicate edge ({u}, {v})")
        colors[key] = parts[2]
        (blacks if parts[2] == "b" else whites).append(key)
        top = max(top, u, v)
    if declared_n is not None and top > declared_n:
        raise ParseError(f"edge label {top} exceeds declared node count {declared_n}")
    return BiColoredGraph.build(top, blacks, whites)


def parse_graph(path: str | os.PathLike) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def parse_bicolored(path: str | os.PathLike) -> BiColoredGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_bicolored_text(fh.read())


def format_graph(g: Graph) -> str:
    lines = [f"nodes {g.n}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges())]
    return "\n".join(lines) + "\n"


def format_bicolored(g: BiColoredGraph, header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"nodes {g.n}")
    tagged = [(u, v, "b") for u, v in g.black_edges()]
    tagged += [(u, v, "w") for u, v in g.white_edges()]
    lines += [f"{u} {v} {c}" for u, v, c in sorted(tagged)]
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


def write_bicolored(g: BiColoredGraph, path: str | os.PathLike,
                    header: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_bicolored(g, header))


# ---------------------------------------------------------------------------
# DIMACS CNF
# ---------------------------------------------------------------------------

@dataclass
class CNF:
    num_vars: int
    clauses: list = field(default_factory=list)


def parse_dimacs_text(text: str) -> CNF:
    num_vars = 0
    clauses: list[list[int]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"line {lineno}: expected 'p cnf VARS CLAUSES'")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if pending:
                    clauses.append(pending)
                    pending = []
            else:
                pending.append(lit)
                num_vars = max(num_vars, abs(lit))
    if pending:
        clauses.append(pending)
    return CNF(num_vars=num_vars, clauses=clauses)


def parse_dimacs(path: str | os.PathLike) -> CNF:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dimacs_text(fh.read())
