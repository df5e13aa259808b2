"""Undirected simple graphs over dense integer vertex ids, plus the
contraction / quotient / coloring primitives everything else is built from.

Adjacency is stored both as bitset rows (one int per vertex) and as a sorted
edge list.  Graphs here stay at desk scale (at most a few hundred vertices),
so quadratic storage is fine and bitset rows give O(1) adjacency tests and
fast neighborhood algebra.

Graphs are immutable after construction; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import InvariantError

Edge = Tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    """Normalize an unordered pair to (min, max)."""
    if u == v:
        raise InvariantError("no self-loops: edge endpoints must differ")
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``adj[u]`` is the neighborhood of u as a bitmask.  ``tags`` optionally
    labels vertices with opaque strings; constructions use them to record
    which gadget part a vertex belongs to.
    """

    n: int
    adj: Tuple[int, ...]
    tags: Tuple[Tuple[int, str], ...] = field(default=())

    @staticmethod
    def from_edges(n: int, edges: Iterable[Edge], tags: Optional[Dict[int, str]] = None) -> "Graph":
        if n < 0:
            raise InvariantError("vertex count must be non-negative")
        rows = [0] * n
        for u, v in edges:
            u, v = norm_edge(u, v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvariantError(f"edge ({u},{v}) out of range for {n} vertices")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        tag_items: Tuple[Tuple[int, str], ...] = ()
        if tags:
            for v in tags:
                if not 0 <= v < n:
                    raise InvariantError(f"tagged vertex {v} out of range")
            tag_items = tuple(sorted(tags.items()))
        return Graph(n, tuple(rows), tag_items)

    def __post_init__(self):
        for u in range(self.n):
            if self.adj[u] >> self.n:
                raise InvariantError(f"adjacency row of {u} references vertices >= {self.n}")
            if self.adj[u] & (1 << u):
                raise InvariantError(f"no self-loops: vertex {u} adjacent to itself")
        for u in range(self.n):
            for v in bits(self.adj[u]):
                if not self.adj[v] & (1 << u):
                    raise InvariantError(f"adjacency not symmetric at ({u},{v})")

    # -- queries ----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def neighbors(self, u: int) -> Iterator[int]:
        return bits(self.adj[u])

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def edges(self) -> List[Edge]:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def tag_map(self) -> Dict[int, str]:
        return dict(self.tags)

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def with_tags(self, tags: Dict[int, str]) -> "Graph":
        return Graph(self.n, self.adj, tuple(sorted(tags.items())))


# -- constructions --------------------------------------------------------


def complement(g: Graph) -> Graph:
    """Edge iff non-edge in g, same vertex set, no self-loops."""
    full = g.vertex_mask()
    rows = tuple((full & ~g.adj[u]) & ~(1 << u) for u in range(g.n))
    return Graph(g.n, rows, g.tags)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Subgraph induced by s, re-indexed densely.

    Returns the new graph and the old->new vertex id map.
    """
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.n:
            raise InvariantError(f"vertex {v} out of range")
    remap = {old: new for new, old in enumerate(keep)}
    keep_mask = mask_of(keep)
    rows = []
    for old in keep:
        row = 0
        for w in bits(g.adj[old] & keep_mask):
            row |= 1 << remap[w]
        rows.append(row)
    old_tags = g.tag_map()
    tags = {remap[v]: old_tags[v] for v in keep if v in old_tags}
    return Graph(len(keep), tuple(rows), tuple(sorted(tags.items()))), remap


def contract(g: Graph, f: Iterable[Edge]) -> Tuple[Graph, Dict[int, int]]:
    """Contract the edge set f.

    Each connected component of the subgraph (V(f), f) -- the graph spanned by
    the contracted edges themselves -- collapses to one new vertex that
    inherits every adjacency of its members; untouched vertices survive.
    Parallel edges merge and loops vanish, so the result is simple.  Returns
    the quotient and the surjective old->new vertex map.  New ids are ordered
    by the smallest old id in each class, so contracting the empty set is the
    identity.
    """
    f = {norm_edge(u, v) for u, v in f}
    for u, v in f:
        if not g.has_edge(u, v):
            raise InvariantError(f"cannot contract non-edge ({u},{v})")
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in f:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    classes: Dict[int, List[int]] = {}
    for v in range(g.n):
        classes.setdefault(find(v), []).append(v)
    roots = sorted(classes)  # root is the smallest member of its class
    new_of_root = {r: i for i, r in enumerate(roots)}
    vmap = {v: new_of_root[find(v)] for v in range(g.n)}
    rows = [0] * len(roots)
    for u in range(g.n):
        nu = vmap[u]
        for w in bits(g.adj[u]):
            nw = vmap[w]
            if nu != nw:
                rows[nu] |= 1 << nw
                rows[nw] |= 1 << nu
    return Graph(len(roots), tuple(rows)), vmap


def square(g: Graph) -> Graph:
    """Edge iff adjacent or sharing a common neighbor in g."""
    rows = []
    for u in range(g.n):
        row = g.adj[u]
        for w in bits(g.adj[u]):
            row |= g.adj[w]
        rows.append(row & ~(1 << u))
    return Graph(g.n, tuple(rows), g.tags)


def connected_components(g: Graph) -> List[List[int]]:
    """Maximal connected vertex sets, each sorted, ordered by smallest member."""
    seen = 0
    comps = []
    for start in range(g.n):
        if seen & (1 << start):
            continue
        comp = 1 << start
        frontier = 1 << start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_connected_set(g: Graph, vertices_mask: int) -> bool:
    """True iff the given non-empty vertex set induces a connected subgraph."""
    start = vertices_mask & -vertices_mask
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & vertices_mask & ~comp
        comp |= frontier
    return comp == vertices_mask


# -- colorings ------------------------------------------------------------


@dataclass(frozen=True)
class ProperColoring:
    """color_of[v] is the color of v, colors drawn from 1..k."""

    color_of: Tuple[int, ...]
    k: int

    @staticmethod
    def from_colors(colors: Sequence[int]) -> "ProperColoring":
        if any(c < 1 for c in colors):
            raise InvariantError("colors must be >= 1")
        return ProperColoring(tuple(colors), max(colors, default=0))

    def check(self, g: Graph) -> bool:
        """Test the defining invariant against a carried graph."""
        if len(self.color_of) != g.n:
            return False
        return all(self.color_of[u] != self.color_of[v] for u, v in g.edges())


def greedy_proper_coloring(g: Graph, order: Sequence[int]) -> ProperColoring:
    """First-fit coloring along ``order`` (a permutation of the vertices).

    Always proper; uses at most max-degree + 1 colors.
    """
    if sorted(order) != list(range(g.n)):
        raise InvariantError("order must be a permutation of the vertex set")
    colors = [0] * g.n
    for v in order:
        used = {colors[w] for w in bits(g.adj[v]) if colors[w]}
        c = 1
        while c in used:
            c += 1
        colors[v] = c
    return ProperColoring.from_colors(colors)


# -- cliques and chromatic number ------------------------------------------


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    sm = mask_of(s)
    for v in bits(sm):
        if (sm & ~(1 << v)) & ~g.adj[v]:
            return False
    return True


def clique_number(g: Graph) -> int:
    """Exact maximum clique size, by branch and bound over vertex subsets."""
    best = 0

    def grow(candidates: int, size: int):
        nonlocal best
        if size > best:
            best = size
        if size + candidates.bit_count() <= best:
            return
        rest = candidates
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if size + 1 + (rest & g.adj[v]).bit_count() <= best:
                # taking v plus everything compatible after it cannot beat best
                continue
            grow(rest & g.adj[v], size + 1)

    grow(g.vertex_mask(), 0)
    return best


def _k_colorable(g: Graph, k: int, order: Sequence[int]) -> Optional[List[int]]:
    colors = [0] * g.n

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {colors[w] for w in bits(g.adj[v]) if colors[w]}
        cap = min(k, max((colors[w] for w in order[:i]), default=0) + 1)
        for c in range(1, cap + 1):  # first unused color index breaks symmetry
            if c not in used:
                colors[v] = c
                if assign(i + 1):
                    return True
                colors[v] = 0
        return False

    return colors if assign(0) else None


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by branching over colorings."""
    if g.n == 0:
        return 0
    if g.edge_count() == 0:
        return 1
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    k = clique_number(g)
    while _k_colorable(g, k, order) is None:
        k += 1
    return k


# -- edge sets and partitions ----------------------------------------------


def validate_edge_set(g: Graph, edges: Iterable[Edge]) -> Set[Edge]:
    """Normalize an edge set and check every pair is an edge of g."""
    out = set()
    for u, v in edges:
        e = norm_edge(u, v)
        if not g.has_edge(*e):
            raise InvariantError(f"edge set member ({e[0]},{e[1]}) is not an edge of the graph")
        out.add(e)
    return out


def is_matching(edges: Iterable[Edge]) -> bool:
    seen: Set[int] = set()
    for u, v in edges:
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


def validate_partition(blocks: Sequence[Iterable[int]], ground: Iterable[int]) -> List[List[int]]:
    """Check blocks are disjoint, non-empty and cover the ground set."""
    ground_set = set(ground)
    seen: Set[int] = set()
    out = []
    for block in blocks:
        bl = sorted(set(block))
        if not bl:
            raise InvariantError("partition blocks must be non-empty")
        if seen.intersection(bl):
            raise InvariantError("partition blocks must be pairwise disjoint")
        seen.update(bl)
        out.append(bl)
    if seen != ground_set:
        raise InvariantError("partition blocks must cover the ground set exactly")
    return out


# -- small named graphs (used all over the tests) ---------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    edges = a.edges() + [(u + a.n, v + a.n) for u, v in b.edges()]
    tags = a.tag_map()
    tags.update({v + a.n: t for v, t in b.tags})
    return Graph.from_edges(a.n + b.n, edges, tags)
