"""Exact decision procedures for every problem in the chain.

These are the ground-truth oracles for reduction verification, so they stay
independent of the constructions: each one searches its own problem space and
every returned witness is re-checkable with graph-core primitives alone
(see the ``check_*_witness`` helpers).

All searches are deterministic: vertices, candidates and blocks are always
iterated in ascending id order, so the first witness found is the same on
every run.

Contraction searches use the forest normal form: any edge set F has the same
quotient as a spanning forest of the components of (V(F), F), with at most as
many edges, so it suffices to enumerate partitions of the vertex set into
connected blocks with sum(block size - 1) within budget.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .classes import recognize
from .errors import GuardExceeded, InvariantError
from .graphs import (
    Edge,
    Graph,
    ProperColoring,
    bits,
    connected_components,
    contract,
    induced_subgraph,
    is_clique,
    is_connected,
    mask_of,
    norm_edge,
    validate_edge_set,
)
from .problems import (
    Assignment,
    CrossMatchingInstance,
    FContractionInstance,
    ISOMORPHISM,
    ListInstance,
    StructuredInstance,
)

PARTITION_GUARD = 14  # default ceiling for partition-enumeration searches


def _check_guard(n: int, guard: int, what: str):
    if n > guard:
        raise GuardExceeded(f"{what}: {n} vertices exceeds the guard of {guard}")


# -- 3-coloring --------------------------------------------------------------


def solve_3coloring(g: Graph) -> Optional[ProperColoring]:
    """A proper 3-coloring if one exists; backtracking with forward pruning."""
    colors = [0] * g.n
    domains = [0b111] * g.n  # bit i set <=> color i+1 still available

    def assign(v: int) -> bool:
        if v == g.n:
            return True
        dom = domains[v]
        for c in bits(dom):
            colors[v] = c + 1
            touched = []
            dead = False
            for w in bits(g.adj[v]):
                if w > v and domains[w] & (1 << c):
                    domains[w] &= ~(1 << c)
                    touched.append(w)
                    if not domains[w]:
                        dead = True
            if not dead and assign(v + 1):
                return True
            for w in touched:
                domains[w] |= 1 << c
        colors[v] = 0
        return False

    if assign(0):
        return ProperColoring.from_colors(colors)
    return None


# -- list embedding (Prop-Col LSH / LSI) --------------------------------------


def solve_list_embedding(inst: ListInstance) -> Optional[Assignment]:
    """An assignment respecting edges and lists; bijective in isomorphism mode."""
    inst.validate()
    iso = inst.mode == ISOMORPHISM
    g, h = inst.g, inst.h
    mapping = [-1] * g.n
    used = 0

    def assign(u: int) -> bool:
        nonlocal used
        if u == g.n:
            return True
        for v in inst.lists[u]:
            if iso and used & (1 << v):
                continue
            ok = True
            for w in bits(g.adj[u] & ((1 << u) - 1)):  # assigned neighbors
                if not h.adj[mapping[w]] & (1 << v):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used |= 1 << v
            if assign(u + 1):
                return True
            used &= ~(1 << v)
            mapping[u] = -1
        return False

    if assign(0):
        return Assignment(tuple(mapping), bijective=iso).validate()
    return None


def check_list_embedding_witness(inst: ListInstance, witness: Assignment) -> bool:
    phi = witness.mapping
    if len(phi) != inst.g.n:
        return False
    if any(phi[u] not in inst.lists[u] for u in range(inst.g.n)):
        return False
    if any(not inst.h.has_edge(phi[u], phi[v]) for u, v in inst.g.edges()):
        return False
    if inst.mode == ISOMORPHISM:
        return len(set(phi)) == inst.g.n == inst.h.n
    return True


# -- cross matching -----------------------------------------------------------


def solve_cross_matching(inst: CrossMatchingInstance) -> Optional[FrozenSet[Edge]]:
    """A perfect A-B matching whose contraction makes the graph complete.

    Enumerates cross matchings in ascending order with pairwise pruning: two
    finished pairs that share no edge can never become adjacent in the
    quotient, so the branch dies immediately.
    """
    inst.validate()
    l = inst.l
    a_order = sorted(inst.a)
    b_mask = mask_of(inst.b)
    pair_of: List[Tuple[int, int]] = []
    pair_adj: List[int] = []  # union of the two adjacency rows per pair
    used = 0

    def assign(i: int) -> bool:
        nonlocal used
        if i == len(a_order):
            return True
        u = a_order[i]
        for v in bits(l.adj[u] & b_mask & ~used):
            merged = l.adj[u] | l.adj[v]
            ok = True
            for (x, y), am in zip(pair_of, pair_adj):
                if not (merged & ((1 << x) | (1 << y)) or am & ((1 << u) | (1 << v))):
                    ok = False
                    break
            if not ok:
                continue
            pair_of.append((u, v))
            pair_adj.append(merged)
            used |= 1 << v
            if assign(i + 1):
                return True
            used &= ~(1 << v)
            pair_of.pop()
            pair_adj.pop()
        return False

    if assign(0):
        return frozenset(norm_edge(u, v) for u, v in pair_of)
    return None


def check_cross_matching_witness(inst: CrossMatchingInstance, f: FrozenSet[Edge]) -> bool:
    edges = validate_edge_set(inst.l, f)
    touched: Set[int] = set()
    for u, v in edges:
        if u in touched or v in touched:
            return False
        touched.update((u, v))
        if not ((u in inst.a and v in inst.b) or (u in inst.b and v in inst.a)):
            return False
    if len(edges) != inst.n:
        return False
    q, _ = contract(inst.l, edges)
    return is_clique(q, range(q.n))


# -- partition enumeration engine ---------------------------------------------


def _connected_supersets(g: Graph, seed: int, avail: int, max_size: int) -> Iterator[int]:
    """All connected subsets of ``avail`` containing ``seed``, each once,
    of size at most ``max_size``, in a deterministic order."""

    def grow(cur: int, border: int, ban: int) -> Iterator[int]:
        yield cur
        if cur.bit_count() >= max_size:
            return
        local_ban = ban
        for v in bits(border & ~local_ban):
            bit = 1 << v
            nxt = cur | bit
            yield from grow(nxt, (border | (g.adj[v] & avail)) & ~nxt, local_ban)
            local_ban |= bit

    yield from grow(1 << seed, g.adj[seed] & avail & ~(1 << seed), 0)


def quotient_of_blocks(g: Graph, blocks: Sequence[int]) -> Graph:
    """Quotient graph over the given block masks (blocks adjacent iff some
    cross edge exists); block order is preserved."""
    adj_of = [0] * len(blocks)
    for i, blk in enumerate(blocks):
        m = 0
        for v in bits(blk):
            m |= g.adj[v]
        adj_of[i] = m
    rows = [0] * len(blocks)
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if adj_of[i] & blocks[j]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(len(blocks), tuple(rows))


def spanning_forest_edges(g: Graph, blocks: Sequence[int]) -> FrozenSet[Edge]:
    """A deterministic spanning forest of each block: BFS from the smallest
    member, taking smallest-id neighbors first."""
    out: Set[Edge] = set()
    for blk in blocks:
        if blk.bit_count() <= 1:
            continue
        start = (blk & -blk).bit_length() - 1
        seen = 1 << start
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for w in bits(g.adj[v] & blk & ~seen):
                    seen |= 1 << w
                    out.add(norm_edge(v, w))
                    nxt.append(w)
            frontier = nxt
        assert seen == blk, "block must be connected in the carried graph"
    return frozenset(out)


def iter_contraction_partitions(g: Graph, max_merges: int, within: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """All partitions of the vertex set into connected blocks using at most
    ``max_merges`` merges (sum of block size - 1), as tuples of block masks
    ordered by smallest member."""
    full = g.vertex_mask() if within is None else within

    def rec(avail: int, blocks: Tuple[int, ...], merges_left: int) -> Iterator[Tuple[int, ...]]:
        if not avail:
            yield blocks
            return
        seed = (avail & -avail).bit_length() - 1
        for blk in _connected_supersets(g, seed, avail, merges_left + 1):
            yield from rec(avail & ~blk, blocks + (blk,), merges_left - (blk.bit_count() - 1))

    yield from rec(full, (), max_merges)


# -- clique contraction / Hadwiger --------------------------------------------


def solve_clique_contraction(g: Graph, t: int, guard: int = PARTITION_GUARD) -> Optional[FrozenSet[Edge]]:
    """F of size at most t with a complete quotient, else None."""
    if t < 0:
        raise InvariantError("budget t must be non-negative")
    _check_guard(g.n, guard, "clique-contraction search")
    if g.n == 0:
        return frozenset()
    if not is_connected(g):
        return None  # contractions cannot join components

    def rec(avail: int, blocks: List[int], adjs: List[int], merges_left: int) -> Optional[List[int]]:
        if not avail:
            return list(blocks)
        seed = (avail & -avail).bit_length() - 1
        for blk in _connected_supersets(g, seed, avail, merges_left + 1):
            m = 0
            for v in bits(blk):
                m |= g.adj[v]
            if any(not (m & other or am & blk) for other, am in zip(blocks, adjs)):
                continue  # two finished blocks with no cross edge: dead branch
            blocks.append(blk)
            adjs.append(m)
            got = rec(avail & ~blk, blocks, adjs, merges_left - (blk.bit_count() - 1))
            if got is not None:
                return got
            blocks.pop()
            adjs.pop()
        return None

    blocks = rec(g.vertex_mask(), [], [], min(t, g.n - 1))
    if blocks is None:
        return None
    return spanning_forest_edges(g, blocks)


def check_clique_contraction_witness(g: Graph, t: int, f: FrozenSet[Edge]) -> bool:
    edges = validate_edge_set(g, f)
    if len(edges) > t:
        return False
    q, _ = contract(g, edges)
    return is_clique(q, range(q.n))


def solve_hadwiger(g: Graph, guard: int = PARTITION_GUARD) -> int:
    """Largest block count over partitions into connected, pairwise adjacent
    blocks, taken per connected component (a clique minor lives inside one
    component).  Zero for the empty graph."""
    if g.n == 0:
        return 0
    best_overall = 0
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        _check_guard(sub.n, guard, "Hadwiger partition enumeration")
        best = 1

        def rec(avail: int, blocks: List[int], adjs: List[int]):
            nonlocal best
            if not avail:
                best = max(best, len(blocks))
                return
            if len(blocks) + avail.bit_count() <= best:
                return
            seed = (avail & -avail).bit_length() - 1
            for blk in _connected_supersets(sub, seed, avail, avail.bit_count()):
                m = 0
                for v in bits(blk):
                    m |= sub.adj[v]
                if any(not (m & other or am & blk) for other, am in zip(blocks, adjs)):
                    continue
                blocks.append(blk)
                adjs.append(m)
                rec(avail & ~blk, blocks, adjs)
                blocks.pop()
                adjs.pop()

        rec(sub.vertex_mask(), [], [])
        best_overall = max(best_overall, best)
    return best_overall


# -- general F-contraction -----------------------------------------------------


def solve_f_contraction(inst: FContractionInstance, guard: int = PARTITION_GUARD) -> Optional[FrozenSet[Edge]]:
    """F of size at most t whose quotient belongs to the class, else None."""
    inst.validate()
    _check_guard(inst.g.n, guard, "F-contraction search")
    for blocks in iter_contraction_partitions(inst.g, min(inst.t, max(inst.g.n - 1, 0))):
        if recognize(inst.class_id, quotient_of_blocks(inst.g, blocks)):
            return spanning_forest_edges(inst.g, blocks)
    return None


def iter_f_contraction_witness_partitions(
    inst: FContractionInstance, guard: int = PARTITION_GUARD
) -> Iterator[Tuple[int, ...]]:
    """Every within-budget partition whose quotient lands in the class.

    Used by the theorem tests: the paper's solution-shape lemma quantifies
    over all solutions, so the tests must see all of them.
    """
    inst.validate()
    _check_guard(inst.g.n, guard, "F-contraction witness enumeration")
    for blocks in iter_contraction_partitions(inst.g, min(inst.t, max(inst.g.n - 1, 0))):
        if recognize(inst.class_id, quotient_of_blocks(inst.g, blocks)):
            yield blocks


def check_f_contraction_witness(inst: FContractionInstance, f: FrozenSet[Edge]) -> bool:
    edges = validate_edge_set(inst.g, f)
    if len(edges) > inst.t:
        return False
    q, _ = contract(inst.g, edges)
    return recognize(inst.class_id, q)


# -- structured clique contraction ----------------------------------------------


def compute_noise_set(inst: StructuredInstance, f: FrozenSet[Edge]) -> FrozenSet[int]:
    """Noise vertices sharing a connected component of (V(f), f) with a core
    vertex."""
    edges = validate_edge_set(inst.g, f)
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    core = inst.core()
    core_roots = {find(v) for v in parent if v in core}
    return frozenset(v for v in parent if v in inst.noise and find(v) in core_roots)


def _core_quotient_complete(inst: StructuredInstance, blocks: Sequence[int]) -> bool:
    """Is G[A u B u C u D u X] / F a clique for the partition's edge set?

    Blocks containing a core vertex lie entirely inside core-union-X, so the
    relevant quotient vertices are exactly those blocks.
    """
    core_mask = mask_of(inst.core())
    relevant = [blk for blk in blocks if blk & core_mask]
    g = inst.g
    adjs = []
    for blk in relevant:
        m = 0
        for v in bits(blk):
            m |= g.adj[v]
        adjs.append(m)
    for i in range(len(relevant)):
        for j in range(i + 1, len(relevant)):
            if not (adjs[i] & relevant[j]):
                return False
    return True


def solve_structured(inst: StructuredInstance) -> Optional[FrozenSet[Edge]]:
    """Primary strategy: enumerate perfect A-B cross matchings only.

    The solution-shape lemma guarantees every solution of a (noisy)
    structured instance is such a matching; the unrestricted fallback below
    exists to test that lemma rather than assume it.
    """
    inst.validate()
    g = inst.g
    cd = sorted(inst.c | inst.d)
    if not is_clique(g, cd):
        return None  # C u D survive as singletons and must end up pairwise adjacent
    cd_mask = mask_of(cd)
    a_order = sorted(inst.a)
    b_mask = mask_of(inst.b)
    pairs: List[Tuple[int, int]] = []
    pair_adj: List[int] = []
    used = 0

    def assign(i: int) -> bool:
        nonlocal used
        if i == len(a_order):
            return True
        u = a_order[i]
        for v in bits(g.adj[u] & b_mask & ~used):
            merged = g.adj[u] | g.adj[v]
            if (cd_mask & ~merged) or any(
                not (merged & ((1 << x) | (1 << y)) or am & ((1 << u) | (1 << v)))
                for (x, y), am in zip(pairs, pair_adj)
            ):
                continue
            pairs.append((u, v))
            pair_adj.append(merged)
            used |= 1 << v
            if assign(i + 1):
                return True
            used &= ~(1 << v)
            pairs.pop()
            pair_adj.pop()
        return False

    if assign(0):
        return frozenset(norm_edge(u, v) for u, v in pairs)
    return None


def solve_structured_unrestricted(
    inst: StructuredInstance, guard: int = PARTITION_GUARD
) -> Optional[FrozenSet[Edge]]:
    """Validation fallback: search all edge sets (in forest normal form),
    computing the noise-interaction set per candidate."""
    inst.validate()
    _check_guard(inst.g.n, guard, "unrestricted structured search")
    for blocks in iter_contraction_partitions(inst.g, inst.n):
        if _core_quotient_complete(inst, blocks):
            return spanning_forest_edges(inst.g, blocks)
    return None


def iter_structured_witness_partitions_unrestricted(
    inst: StructuredInstance, guard: int = PARTITION_GUARD
) -> Iterator[Tuple[int, ...]]:
    """Every within-budget partition solving the instance; for theorem tests."""
    inst.validate()
    _check_guard(inst.g.n, guard, "unrestricted structured witness enumeration")
    for blocks in iter_contraction_partitions(inst.g, inst.n):
        if _core_quotient_complete(inst, blocks):
            yield blocks


def check_structured_witness(inst: StructuredInstance, f: FrozenSet[Edge]) -> bool:
    """Re-check a claimed solution from graph-core primitives alone."""
    edges = validate_edge_set(inst.g, f)
    if len(edges) > inst.n:
        return False
    x = compute_noise_set(inst, frozenset(edges))
    keep = sorted(inst.core() | x)
    sub, remap = induced_subgraph(inst.g, keep)
    inner = {(remap[u], remap[v]) for u, v in edges if u in remap and v in remap}
    q, _ = contract(sub, inner)
    return is_clique(q, range(q.n))
