"""Constructive reductions between the contraction-type decision problems.

Every construction materializes its target instance fully, asserts the
target's invariants before returning, and tags gadget vertices with their
role so tests can recover partitions without re-deriving them.

The ``omit`` hooks drop one gadget edge family at a time; they exist only for
mutation-sensitivity tests and are never used by production paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import InvariantError
from .graphs import (
    Edge,
    Graph,
    ProperColoring,
    bits,
    complement,
    greedy_proper_coloring,
    is_connected,
    mask_of,
    norm_edge,
    square,
)
from .problems import (
    CrossMatchingInstance,
    FContractionInstance,
    HOMOMORPHISM,
    HadwigerInstance,
    ISOMORPHISM,
    ListInstance,
    StructuredInstance,
)

DEFAULT_MAX_DEGREE = 4

# The gadget edge families that the mutation-sensitivity tests remove.
EDGE_FAMILIES = ("ac-join", "bd-join", "noise-join", "pendant")

FAMILY_CLASSES: Dict[str, Tuple[str, ...]] = {
    "chordal-family": ("chordal", "interval", "proper-interval", "threshold", "trivially-perfect"),
    "split-family": ("split", "complete-split"),
    "perfect": ("perfect",),
}

FAMILY_OF_CLASS = {c: fam for fam, cs in FAMILY_CLASSES.items() for c in cs}


# -- grouping surrogate --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Grouping:
    """A quotient of G with a coloring proper on the quotient's square.

    ``phi[i]`` maps a color to the unique member of block i with a neighbor in
    some block of that color (absent keys mean "no such member").
    """

    blocks: Tuple[Tuple[int, ...], ...]
    quotient: Graph
    coloring: Tuple[int, ...]
    L: int
    r: int
    phi: Tuple[Dict[int, int], ...]


def verify_grouping(g: Graph, grouping: Grouping):
    """Assert the four grouping properties plus phi consistency."""
    blocks = grouping.blocks
    if len(blocks) * grouping.r > g.n:
        raise InvariantError("grouping property 1 violated: more than |V(G)|/r blocks")
    sq = square(grouping.quotient)
    for i in range(sq.n):
        for j in bits(sq.adj[i]):
            if grouping.coloring[i] == grouping.coloring[j]:
                raise InvariantError("grouping property 2 violated: coloring not proper on the quotient square")
    block_of = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            block_of[v] = i
    for i, blk in enumerate(blocks):
        for u in blk:
            for w in bits(g.adj[u]):
                if block_of[w] == i:
                    raise InvariantError("grouping property 3 violated: block is not independent")
    for i in range(len(blocks)):
        for j in bits(grouping.quotient.adj[i]):
            if i < j:
                witnesses = [
                    (u, w) for u in blocks[i] for w in bits(g.adj[u]) if block_of[w] == j
                ]
                if len(witnesses) != 1:
                    raise InvariantError(
                        "grouping property 4 violated: quotient edge needs exactly one witness pair"
                    )
    for i, blk in enumerate(blocks):
        expected: Dict[int, int] = {}
        for u in blk:
            for w in bits(g.adj[u]):
                j = block_of[w]
                if j != i:
                    color = grouping.coloring[j]
                    if expected.get(color, u) != u:
                        raise InvariantError("phi inconsistent: two members claim the same color")
                    expected[color] = u
        if grouping.phi[i] != expected:
            raise InvariantError("phi inconsistent with the grouping")


def build_grouping(g: Graph, r: int = 1, max_degree: int = DEFAULT_MAX_DEGREE) -> Grouping:
    """Singleton-block grouping with a greedy coloring of the quotient square.

    The color budget is L = (max_degree^2 + 1) * r; greedy coloring of the
    square of a degree-d graph needs at most d^2 + 1 colors, so the budget
    always suffices.  Only r = 1 is supported.
    """
    if r != 1:
        raise InvariantError("only r = 1 is supported by the surrogate grouping")
    if g.max_degree() > max_degree:
        raise InvariantError(f"maximum degree {g.max_degree()} exceeds the configured bound {max_degree}")
    lam = max_degree * max_degree + 1
    big_l = lam * r
    blocks = tuple((v,) for v in range(g.n))
    quotient = Graph(g.n, g.adj)
    coloring = greedy_proper_coloring(square(quotient), list(range(quotient.n)))
    if coloring.k > big_l:
        raise InvariantError("greedy square coloring exceeded the color budget")
    phi: List[Dict[int, int]] = []
    for v in range(g.n):
        entries: Dict[int, int] = {}
        for w in bits(g.adj[v]):
            entries[coloring.color_of[w]] = v
        phi.append(entries)
    grouping = Grouping(blocks, quotient, coloring.color_of, big_l, r, tuple(phi))
    verify_grouping(g, grouping)
    return grouping


# -- 3-coloring -> Prop-Col LSH --------------------------------------------------


def _labels_for_block(grouping: Grouping, block_index: int) -> List[Tuple[Tuple[int, ...], int]]:
    """All (R, l) pairs a block may map to: l is the block's color and R
    encodes a recoloring f of the block members that are visible from
    outside, one entry per quotient color."""
    phi = grouping.phi[block_index]
    l = grouping.coloring[block_index]
    image = sorted(set(phi.values()))
    labels = []
    for values in product((1, 2, 3), repeat=len(image)):
        f = dict(zip(image, values))
        r_vec = tuple(f[phi[i]] if i in phi else 0 for i in range(1, grouping.L + 1))
        labels.append((r_vec, l))
    return labels


def reduce_3col_to_lsh(
    g: Graph, r: int = 1, max_degree: int = DEFAULT_MAX_DEGREE
) -> Tuple[ListInstance, Grouping]:
    """Build the list-homomorphism instance whose solvability mirrors
    3-colorability of g.

    The host graph is built directly on the union of the blocks' label sets
    (the full label space never materializes); two labels are adjacent iff
    each one's vector, read at the other's color, disagrees.
    """
    if any(not g.adj[v] for v in range(g.n)):
        raise InvariantError("3-coloring source graph must have no isolated vertices")
    grouping = build_grouping(g, r, max_degree)
    per_block = [_labels_for_block(grouping, i) for i in range(len(grouping.blocks))]
    all_labels = sorted({lab for labs in per_block for lab in labs}, key=lambda t: (t[1], t[0]))
    index_of = {lab: i for i, lab in enumerate(all_labels)}

    edges = []
    for i in range(len(all_labels)):
        r_i, l_i = all_labels[i]
        for j in range(i + 1, len(all_labels)):
            r_j, l_j = all_labels[j]
            if r_i[l_j - 1] != r_j[l_i - 1]:
                edges.append((i, j))
    tags = {
        i: f"{lab[1]}:" + "".join(str(x) for x in lab[0]) for i, lab in enumerate(all_labels)
    }
    host = Graph.from_edges(len(all_labels), edges, tags)
    c_host = ProperColoring(tuple(lab[1] for lab in all_labels), grouping.L)
    c_pattern = ProperColoring(grouping.coloring, grouping.L)
    lists = tuple(tuple(sorted(index_of[lab] for lab in labs)) for labs in per_block)
    inst = ListInstance(grouping.quotient, host, c_pattern, c_host, lists, HOMOMORPHISM)
    return inst.validate(), grouping


# -- Prop-Col LSH -> stream of Prop-Col LSI ---------------------------------------


def occupancy_vectors(inst: ListInstance, prune: bool = True) -> Iterator[Tuple[int, ...]]:
    """All vectors of per-host-vertex copy counts summing to |V(G)|.

    With pruning on, a host vertex never receives more copies than the number
    of lists containing it, and every pattern vertex must keep at least one
    listed host vertex with a positive count; both rules preserve solvable
    vectors, since each copy used must be the image of a pattern vertex
    listing the original.
    """
    total = inst.g.n
    m = inst.h.n
    listed_by = [0] * m  # how many lists mention each host vertex
    for lst in inst.lists:
        for v in lst:
            listed_by[v] += 1
    caps = [listed_by[v] if prune else total for v in range(m)]
    suffix_cap = [0] * (m + 1)
    for v in range(m - 1, -1, -1):
        suffix_cap[v] = suffix_cap[v + 1] + caps[v]

    def covered(p: Sequence[int]) -> bool:
        return all(any(p[v] for v in lst) for lst in inst.lists)

    def rec(v: int, remaining: int, acc: List[int]) -> Iterator[Tuple[int, ...]]:
        if v == m:
            if remaining == 0 and (not prune or covered(acc)):
                yield tuple(acc)
            return
        if remaining > suffix_cap[v]:
            return
        for count in range(0, min(caps[v], remaining) + 1):
            acc.append(count)
            yield from rec(v + 1, remaining - count, acc)
            acc.pop()

    yield from rec(0, total, [])


def occupancy_vector_count(inst: ListInstance) -> int:
    """Closed form for the unpruned stream length."""
    n, m = inst.g.n, inst.h.n
    return math.comb(n + m - 1, m - 1)


def instance_for_occupancy(inst: ListInstance, p: Sequence[int]) -> ListInstance:
    """The isomorphism-mode instance whose host replaces each vertex v by
    p[v] mutually non-adjacent copies."""
    if len(p) != inst.h.n or sum(p) != inst.g.n:
        raise InvariantError("occupancy vector must have one entry per host vertex summing to |V(G)|")
    copies: List[Tuple[int, int]] = []
    first_copy = [0] * inst.h.n
    for v in range(inst.h.n):
        first_copy[v] = len(copies)
        copies.extend((v, i) for i in range(p[v]))
    edges = []
    for u, v in inst.h.edges():
        for i in range(p[u]):
            for j in range(p[v]):
                edges.append((first_copy[u] + i, first_copy[v] + j))
    host = Graph.from_edges(len(copies), edges)
    c_host = ProperColoring(
        tuple(inst.c_h.color_of[v] for v, _ in copies), inst.c_h.k
    )
    lists = tuple(
        tuple(
            first_copy[v] + i
            for v in lst
            for i in range(p[v])
        )
        for lst in inst.lists
    )
    out = ListInstance(inst.g, host, inst.c_g, c_host, lists, ISOMORPHISM)
    return out.validate()


def lsh_to_lsi_stream(inst: ListInstance, prune: bool = True) -> Iterator[ListInstance]:
    """Lazy Turing reduction: the source is solvable iff some streamed
    instance is."""
    if inst.mode != HOMOMORPHISM:
        raise InvariantError("the LSI stream starts from a homomorphism-mode instance")
    inst.validate()
    for p in occupancy_vectors(inst, prune):
        yield instance_for_occupancy(inst, p)


# -- Prop-Col LSI -> Cross Matching ------------------------------------------------


def lsi_to_cross_matching(inst: ListInstance) -> CrossMatchingInstance:
    """One side is the complement of the pattern, the other the host; the
    crossing edges are exactly the list pairs."""
    if inst.mode != ISOMORPHISM:
        raise InvariantError("cross-matching construction requires an isomorphism-mode instance")
    inst.validate()
    n = inst.g.n
    cg = complement(inst.g)
    edges: List[Edge] = list(cg.edges())
    edges += [(u + n, v + n) for u, v in inst.h.edges()]
    for u in range(n):
        edges += [(u, v + n) for v in inst.lists[u]]
    tags = {v: "a" for v in range(n)}
    tags.update({v + n: "b" for v in range(n)})
    l = Graph.from_edges(2 * n, edges, tags)
    out = CrossMatchingInstance(l, frozenset(range(n)), frozenset(range(n, 2 * n)))
    return out.validate()


def claim_cross_matching_holds(inst: CrossMatchingInstance) -> bool:
    """Structural consequence of the load-bearing proper colorings: whenever
    {x,x'} and {y,y'} cross and {x,y} was a pattern edge (a non-edge of the
    complement side), x' and y' differ and neither {x,y'} nor {y,x'} crosses.
    """
    a = sorted(inst.a)
    b_mask = mask_of(inst.b)
    cross = {x: inst.l.adj[x] & b_mask for x in a}
    for xi, x in enumerate(a):
        for y in a[xi + 1 :]:
            if inst.l.has_edge(x, y):
                continue  # adjacent on the complement side: not a pattern edge
            if cross[x] & cross[y]:
                return False  # shared cross endpoint is impossible
            for xp in bits(cross[x]):
                if inst.l.adj[y] & (1 << xp):
                    return False
            for yp in bits(cross[y]):
                if inst.l.adj[x] & (1 << yp):
                    return False
    return True


# -- Cross Matching -> Structured Clique Contraction --------------------------------


def cross_matching_to_structured(
    inst: CrossMatchingInstance, omit: FrozenSet[str] = frozenset()
) -> StructuredInstance:
    """Attach a clique on 4n fresh vertices, half joined to each side."""
    inst.validate()
    _check_omit(omit)
    n = inst.n
    base = inst.l.n
    c_part = list(range(base, base + 2 * n))
    d_part = list(range(base + 2 * n, base + 4 * n))
    edges: List[Edge] = list(inst.l.edges())
    kk = c_part + d_part
    edges += [(u, v) for i, u in enumerate(kk) for v in kk[i + 1 :]]
    if "ac-join" not in omit:
        edges += [(u, v) for u in sorted(inst.a) for v in c_part]
    if "bd-join" not in omit:
        edges += [(u, v) for u in sorted(inst.b) for v in d_part]
    tags = {v: "a" for v in inst.a}
    tags.update({v: "b" for v in inst.b})
    tags.update({v: "c" for v in c_part})
    tags.update({v: "d" for v in d_part})
    g = Graph.from_edges(base + 4 * n, edges, tags)
    out = StructuredInstance(
        g,
        frozenset(inst.a),
        frozenset(inst.b),
        frozenset(c_part),
        frozenset(d_part),
        frozenset(),
        n,
    )
    out.validate()
    assert g.n == 6 * n, "structured construction must have exactly 6n vertices"
    return out


# -- Clique Contraction -> Hadwiger ---------------------------------------------------


@dataclass(frozen=True)
class HadwigerReduction:
    """Either an immediate no (disconnected input) or a target instance."""

    immediate_no: bool
    instance: Optional[HadwigerInstance]


def cc_to_hadwiger(g: Graph, t: int) -> HadwigerReduction:
    """Ask for a clique minor on |V(G)| - t vertices; disconnected graphs can
    never contract to a clique."""
    if t < 0:
        raise InvariantError("budget t must be non-negative")
    if not is_connected(g):
        return HadwigerReduction(True, None)
    return HadwigerReduction(False, HadwigerInstance(g, g.n - t).validate())


# -- Structured -> F-Contraction gadgets ------------------------------------------------


def _check_omit(omit: FrozenSet[str]):
    unknown = set(omit) - set(EDGE_FAMILIES)
    if unknown:
        raise InvariantError(f"unknown edge families {sorted(unknown)}")


def structured_to_class(
    inst: StructuredInstance,
    family: str,
    class_id: Optional[str] = None,
    omit: FrozenSet[str] = frozenset(),
) -> FContractionInstance:
    """Build the gadget instance for one of the three gadget families.

    chordal-family: two cliques on 2n fresh vertices each, both fully joined
    to the core and mutually non-adjacent (vertex count 10n).  split-family:
    an independent set of n+2 fresh vertices joined to the core (7n+2).
    perfect: a tagged clique copy of the core with pendant edges plus an
    independent set of n+1 fresh vertices joined to the core only (13n+1).
    The budget is always n.
    """
    inst.validate()
    _check_omit(omit)
    if inst.noise:
        raise InvariantError("gadget constructions start from noise-free structured instances")
    if family not in FAMILY_CLASSES:
        raise InvariantError(f"unknown gadget family {family!r}")
    if class_id is None:
        class_id = FAMILY_CLASSES[family][0]
    elif class_id not in FAMILY_CLASSES[family]:
        raise InvariantError(f"class {class_id!r} is not covered by the {family} gadget")
    n = inst.n
    core = inst.g.n
    assert core == 6 * n
    edges: List[Edge] = list(inst.g.edges())
    tags = inst.g.tag_map()
    join = "noise-join" not in omit

    if family == "chordal-family":
        k1 = list(range(core, core + 2 * n))
        k2 = list(range(core + 2 * n, core + 4 * n))
        for grp, tag in ((k1, "k1"), (k2, "k2")):
            edges += [(u, v) for i, u in enumerate(grp) for v in grp[i + 1 :]]
            tags.update({v: tag for v in grp})
        if join:
            edges += [(u, v) for u in range(core) for v in k1 + k2]
        total = 10 * n
    elif family == "split-family":
        s = list(range(core, core + n + 2))
        tags.update({v: "s" for v in s})
        if join:
            edges += [(u, v) for u in range(core) for v in s]
        total = 7 * n + 2
    else:  # perfect
        copies = list(range(core, 2 * core))
        indep = list(range(2 * core, 2 * core + n + 1))
        tags.update({v: "copy" for v in copies})
        tags.update({v: "i" for v in indep})
        if "pendant" not in omit:
            edges += [(u, core + u) for u in range(core)]
        edges += [(u, v) for i, u in enumerate(copies) for v in copies[i + 1 :]]
        if join:
            edges += [(u, v) for u in range(core) for v in indep]
        total = 13 * n + 1
    g = Graph.from_edges(total, edges, tags)
    out = FContractionInstance(g, n, class_id).validate()
    assert g.n == total
    return out


# -- solution shape (the noisy-structured lemma) ------------------------------------------


def check_solution_shape(inst: StructuredInstance, f: FrozenSet[Edge]) -> bool:
    """True iff f is a perfect A-B cross matching of size n."""
    if len(f) != inst.n:
        return False
    touched: Set[int] = set()
    for u, v in f:
        e = norm_edge(u, v)
        if not inst.g.has_edge(*e):
            return False
        if e[0] in touched or e[1] in touched:
            return False
        touched.update(e)
        if not (
            (e[0] in inst.a and e[1] in inst.b) or (e[0] in inst.b and e[1] in inst.a)
        ):
            return False
    return touched == inst.a | inst.b


def check_partition_shape(inst: StructuredInstance, blocks: Sequence[int]) -> bool:
    """Partition-level version: the non-trivial blocks are exactly n pairs,
    each crossing A and B."""
    a_mask = mask_of(inst.a)
    b_mask = mask_of(inst.b)
    pairs = 0
    for blk in blocks:
        size = blk.bit_count()
        if size == 1:
            continue
        if size != 2:
            return False
        if not (blk & a_mask and blk & b_mask):
            return False
        pairs += 1
    return pairs == inst.n
