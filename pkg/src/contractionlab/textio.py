"""Line-oriented instance files: parsing and serialization.

Vertex ids are 1-based on the wire (DIMACS convention for the graph section)
and 0-based in memory.  Parsing re-validates every type invariant and rejects
violations rather than repairing them; syntax errors carry line numbers.

A bare graph file is just the graph section::

    c optional comments
    p edge <n> <m>
    e <u> <v>
    t <u> <label>

Instance files start with ``problem <id>`` followed by parameter lines
(``budget``, ``target``, ``class``, ``mode``, ``palette``), one or more named
``graph`` sections (whose ``col`` lines give that graph's coloring), and
``part`` / ``list`` lines.  ``end`` closes the file (optional).
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .errors import InvariantError, ParseError
from .graphs import Graph, ProperColoring
from .problems import (
    CliqueContractionInstance,
    CrossMatchingInstance,
    FContractionInstance,
    HOMOMORPHISM,
    HadwigerInstance,
    ISOMORPHISM,
    Instance,
    ListInstance,
    StructuredInstance,
    ThreeColoringInstance,
)

PROBLEM_IDS = ("3col", "lsh", "lsi", "xmatch", "structured", "cliquecon", "hadwiger", "fcon")

_SECTION_KEYWORDS = {"graph", "part", "list", "end", "problem"}


class _Cursor:
    def __init__(self, text: str):
        self.rows: List[Tuple[int, List[str]]] = []
        for i, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("c ") or line == "c":
                continue
            self.rows.append((i, line.split()))
        self.pos = 0

    def peek(self) -> Optional[Tuple[int, List[str]]]:
        return self.rows[self.pos] if self.pos < len(self.rows) else None

    def take(self) -> Tuple[int, List[str]]:
        row = self.rows[self.pos]
        self.pos += 1
        return row


def _int(tok: str, line_no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line_no, f"{what}: expected an integer, got {tok!r}")


def _parse_graph_block(cur: _Cursor) -> Tuple[Graph, Optional[ProperColoring]]:
    row = cur.peek()
    if row is None or row[1][0] != "p":
        raise ParseError(row[0] if row else 0, "expected a 'p edge <n> <m>' line")
    line_no, toks = cur.take()
    if len(toks) != 4 or toks[1] != "edge":
        raise ParseError(line_no, "malformed problem line, expected 'p edge <n> <m>'")
    n = _int(toks[2], line_no, "vertex count")
    m = _int(toks[3], line_no, "edge count")
    edges = []
    tags: Dict[int, str] = {}
    colors: Dict[int, int] = {}
    while True:
        row = cur.peek()
        if row is None or row[1][0] in _SECTION_KEYWORDS:
            break
        line_no, toks = cur.take()
        kind = toks[0]
        if kind == "e":
            if len(toks) != 3:
                raise ParseError(line_no, "edge line needs exactly two endpoints")
            u = _int(toks[1], line_no, "endpoint") - 1
            v = _int(toks[2], line_no, "endpoint") - 1
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(line_no, f"edge endpoint out of range 1..{n}")
            edges.append((u, v))
        elif kind == "t":
            if len(toks) != 3:
                raise ParseError(line_no, "tag line needs a vertex and a label")
            v = _int(toks[1], line_no, "vertex") - 1
            if not 0 <= v < n:
                raise ParseError(line_no, f"tagged vertex out of range 1..{n}")
            tags[v] = toks[2]
        elif kind == "col":
            if len(toks) != 3:
                raise ParseError(line_no, "coloring line needs a vertex and a color")
            v = _int(toks[1], line_no, "vertex") - 1
            if not 0 <= v < n:
                raise ParseError(line_no, f"colored vertex out of range 1..{n}")
            colors[v] = _int(toks[2], line_no, "color")
        else:
            raise ParseError(line_no, f"unexpected line kind {kind!r} inside a graph section")
    if len(edges) != m:
        raise ParseError(line_no, f"p line promises {m} edges but section has {len(edges)}")
    try:
        g = Graph.from_edges(n, edges, tags)
    except InvariantError as exc:
        raise ParseError(line_no, str(exc))
    coloring = None
    if colors:
        if set(colors) != set(range(n)):
            raise ParseError(line_no, "coloring must assign every vertex exactly once")
        coloring = ProperColoring.from_colors([colors[v] for v in range(n)])
    return g, coloring


def parse_graph_text(text: str) -> Graph:
    """Parse a bare graph file (p/e/c/t lines only)."""
    cur = _Cursor(text)
    g, coloring = _parse_graph_block(cur)
    if coloring is not None:
        raise ParseError(0, "bare graph files carry no coloring lines")
    row = cur.peek()
    if row is not None and row[1][0] != "end":
        raise ParseError(row[0], f"unexpected trailing line {' '.join(row[1])!r}")
    return g


def serialize_graph_text(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.edge_count()}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    lines += [f"t {v + 1} {label}" for v, label in g.tags]
    return "\n".join(lines) + "\n"


def _graph_lines(g: Graph, name: str, coloring: Optional[ProperColoring] = None) -> List[str]:
    lines = [f"graph {name}", f"p edge {g.n} {g.edge_count()}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    lines += [f"t {v + 1} {label}" for v, label in g.tags]
    if coloring is not None:
        lines += [f"col {v + 1} {coloring.color_of[v]}" for v in range(g.n)]
    return lines


def _part_line(name: str, vertices) -> str:
    ids = " ".join(str(v + 1) for v in sorted(vertices))
    return f"part {name} {ids}".rstrip()


def serialize_instance(inst: Instance) -> str:
    if isinstance(inst, ThreeColoringInstance):
        return serialize_graph_text(inst.g)
    lines: List[str]
    if isinstance(inst, ListInstance):
        lines = [f"problem {inst.problem}", f"mode {inst.mode}", f"palette {inst.c_g.k}"]
        lines += _graph_lines(inst.g, "g", inst.c_g)
        lines += _graph_lines(inst.h, "h", inst.c_h)
        for u, lst in enumerate(inst.lists):
            ids = " ".join(str(v + 1) for v in lst)
            lines.append(f"list {u + 1} {ids}".rstrip())
    elif isinstance(inst, CrossMatchingInstance):
        lines = ["problem xmatch"]
        lines += _graph_lines(inst.l, "l")
        lines.append(_part_line("a", inst.a))
        lines.append(_part_line("b", inst.b))
    elif isinstance(inst, StructuredInstance):
        lines = ["problem structured", f"budget {inst.n}"]
        lines += _graph_lines(inst.g, "g")
        for name, part in (("a", inst.a), ("b", inst.b), ("c", inst.c), ("d", inst.d), ("noise", inst.noise)):
            lines.append(_part_line(name, part))
    elif isinstance(inst, CliqueContractionInstance):
        lines = ["problem cliquecon", f"budget {inst.t}"]
        lines += _graph_lines(inst.g, "g")
    elif isinstance(inst, HadwigerInstance):
        lines = ["problem hadwiger", f"target {inst.h}"]
        lines += _graph_lines(inst.g, "g")
    elif isinstance(inst, FContractionInstance):
        lines = ["problem fcon", f"budget {inst.t}", f"class {inst.class_id}"]
        lines += _graph_lines(inst.g, "g")
    else:
        raise InvariantError(f"cannot serialize {type(inst).__name__}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    cur = _Cursor(text)
    row = cur.peek()
    if row is None:
        raise ParseError(0, "empty instance file")
    if row[1][0] != "problem":
        return ThreeColoringInstance(parse_graph_text(text)).validate()
    line_no, toks = cur.take()
    if len(toks) != 2:
        raise ParseError(line_no, "problem line needs exactly one id")
    problem = toks[1]
    if problem not in PROBLEM_IDS:
        raise ParseError(line_no, f"unknown problem id {problem!r}")

    params: Dict[str, str] = {}
    graphs: Dict[str, Tuple[Graph, Optional[ProperColoring]]] = {}
    parts: Dict[str, List[int]] = {}
    lists: Dict[int, List[int]] = {}
    graph_order: List[str] = []

    while True:
        row = cur.peek()
        if row is None:
            break
        line_no, toks = row
        kind = toks[0]
        if kind == "end":
            cur.take()
            if cur.peek() is not None:
                raise ParseError(cur.peek()[0], "content after 'end'")
            break
        if kind == "graph":
            cur.take()
            if len(toks) != 2:
                raise ParseError(line_no, "graph line needs a name")
            if toks[1] in graphs:
                raise ParseError(line_no, f"duplicate graph section {toks[1]!r}")
            graphs[toks[1]] = _parse_graph_block(cur)
            graph_order.append(toks[1])
        elif kind == "part":
            cur.take()
            if len(toks) < 2:
                raise ParseError(line_no, "part line needs a name")
            parts[toks[1]] = [_int(t, line_no, "part member") - 1 for t in toks[2:]]
        elif kind == "list":
            cur.take()
            if len(toks) < 2:
                raise ParseError(line_no, "list line needs a pattern vertex")
            u = _int(toks[1], line_no, "pattern vertex") - 1
            lists[u] = [_int(t, line_no, "list member") - 1 for t in toks[2:]]
        elif kind in ("mode", "budget", "target", "class", "palette"):
            cur.take()
            if len(toks) != 2:
                raise ParseError(line_no, f"{kind} line needs exactly one value")
            params[kind] = toks[1]
        else:
            raise ParseError(line_no, f"unexpected line kind {kind!r}")

    def need_graph(name: str) -> Tuple[Graph, Optional[ProperColoring]]:
        if name not in graphs:
            raise ParseError(0, f"problem {problem!r} requires a 'graph {name}' section")
        return graphs[name]

    def need_param(name: str) -> str:
        if name not in params:
            raise ParseError(0, f"problem {problem!r} requires a '{name}' line")
        return params[name]

    try:
        if problem == "3col":
            g, coloring = need_graph("g")
            if coloring is not None:
                raise ParseError(0, "3col instances carry no coloring")
            return ThreeColoringInstance(g).validate()
        if problem in ("lsh", "lsi"):
            mode = params.get("mode", HOMOMORPHISM if problem == "lsh" else ISOMORPHISM)
            expected_mode = HOMOMORPHISM if problem == "lsh" else ISOMORPHISM
            if mode != expected_mode:
                raise ParseError(0, f"problem {problem} implies mode {expected_mode}")
            g, c_g = need_graph("g")
            h, c_h = need_graph("h")
            if c_g is None or c_h is None:
                raise ParseError(0, "both graphs of a Prop-Col instance need colorings")
            k = max(c_g.k, c_h.k)
            if "palette" in params:
                k = _int(params["palette"], 0, "palette")
                if k < max(c_g.k, c_h.k):
                    raise ParseError(0, "palette smaller than a used color")
            c_g = ProperColoring(c_g.color_of, k)
            c_h = ProperColoring(c_h.color_of, k)
            lst = tuple(tuple(sorted(lists.get(u, []))) for u in range(g.n))
            for u in lists:
                if not 0 <= u < g.n:
                    raise ParseError(0, f"list for out-of-range pattern vertex {u + 1}")
            return ListInstance(g, h, c_g, c_h, lst, mode).validate()
        if problem == "xmatch":
            l, _ = need_graph("l")
            if "a" not in parts or "b" not in parts:
                raise ParseError(0, "cross-matching instances need 'part a' and 'part b'")
            return CrossMatchingInstance(l, frozenset(parts["a"]), frozenset(parts["b"])).validate()
        if problem == "structured":
            g, _ = need_graph("g")
            for name in ("a", "b", "c", "d"):
                if name not in parts:
                    raise ParseError(0, f"structured instances need 'part {name}'")
            return StructuredInstance(
                g,
                frozenset(parts["a"]),
                frozenset(parts["b"]),
                frozenset(parts["c"]),
                frozenset(parts["d"]),
                frozenset(parts.get("noise", [])),
                _int(need_param("budget"), 0, "budget"),
            ).validate()
        if problem == "cliquecon":
            g, _ = need_graph("g")
            return CliqueContractionInstance(g, _int(need_param("budget"), 0, "budget")).validate()
        if problem == "hadwiger":
            g, _ = need_graph("g")
            return HadwigerInstance(g, _int(need_param("target"), 0, "target")).validate()
        if problem == "fcon":
            g, _ = need_graph("g")
            return FContractionInstance(
                g, _int(need_param("budget"), 0, "budget"), need_param("class")
            ).validate()
    except InvariantError:
        raise
    raise ParseError(0, f"unhandled problem id {problem!r}")
