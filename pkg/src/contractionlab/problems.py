"""Typed instances for every decision problem in the reduction chain.

Each type re-validates its declared invariants in ``validate`` and raises
:class:`InvariantError` naming the violated rule, so parsers and constructors
can reject malformed instances without repairing them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Optional, Tuple

from .errors import InvariantError
from .graphs import Graph, ProperColoring, bits, mask_of

HOMOMORPHISM = "homomorphism"
ISOMORPHISM = "isomorphism"


@dataclass(frozen=True)
class ThreeColoringInstance:
    g: Graph

    problem = "3col"

    def validate(self) -> "ThreeColoringInstance":
        return self


@dataclass(frozen=True)
class ListInstance:
    """(G, H, c_G, c_H, lists) with a homomorphism/isomorphism mode flag.

    ``lists[u]`` is the sorted tuple of h-vertices u may map to.
    """

    g: Graph
    h: Graph
    c_g: ProperColoring
    c_h: ProperColoring
    lists: Tuple[Tuple[int, ...], ...]
    mode: str

    @property
    def problem(self) -> str:
        return "lsi" if self.mode == ISOMORPHISM else "lsh"

    def validate(self) -> "ListInstance":
        if self.mode not in (HOMOMORPHISM, ISOMORPHISM):
            raise InvariantError(f"unknown mode {self.mode!r}")
        if not self.c_g.check(self.g):
            raise InvariantError("coloring of the pattern graph is not proper")
        if not self.c_h.check(self.h):
            raise InvariantError("coloring of the host graph is not proper")
        if self.c_g.k != self.c_h.k:
            raise InvariantError("both colorings must share one palette 1..k")
        if max(self.c_g.color_of, default=0) > self.c_g.k or max(self.c_h.color_of, default=0) > self.c_h.k:
            raise InvariantError("a color exceeds the declared palette")
        if len(self.lists) != self.g.n:
            raise InvariantError("exactly one list per pattern vertex required")
        for u, lst in enumerate(self.lists):
            for v in lst:
                if not 0 <= v < self.h.n:
                    raise InvariantError(f"list of {u} mentions out-of-range host vertex {v}")
                if self.c_g.color_of[u] != self.c_h.color_of[v]:
                    raise InvariantError(
                        "Prop-Col color compatibility violated: "
                        f"vertex {u} (color {self.c_g.color_of[u]}) lists host vertex {v} "
                        f"(color {self.c_h.color_of[v]})"
                    )
        if self.mode == ISOMORPHISM and self.g.n != self.h.n:
            raise InvariantError("isomorphism mode requires |V(G)| = |V(H)|")
        return self


@dataclass(frozen=True)
class Assignment:
    """Map pattern vertex -> host vertex; flagged bijective in isomorphism mode."""

    mapping: Tuple[int, ...]
    bijective: bool

    def validate(self) -> "Assignment":
        if self.bijective and len(set(self.mapping)) != len(self.mapping):
            raise InvariantError("assignment flagged bijective but is not injective")
        return self


@dataclass(frozen=True)
class CrossMatchingInstance:
    """Graph l with a balanced bipartition (a, b) of its vertex set."""

    l: Graph
    a: FrozenSet[int]
    b: FrozenSet[int]

    problem = "xmatch"

    def validate(self) -> "CrossMatchingInstance":
        if self.a & self.b:
            raise InvariantError("cross-matching sides must be disjoint")
        if self.a | self.b != set(range(self.l.n)):
            raise InvariantError("cross-matching sides must cover the vertex set")
        if len(self.a) != len(self.b):
            raise InvariantError("cross-matching sides must have equal size |A| = |B|")
        return self

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class StructuredInstance:
    """Clique-contraction instance with a prescribed partition (A,B,C,D,N)
    and budget n; the Structured special case is noise = empty."""

    g: Graph
    a: FrozenSet[int]
    b: FrozenSet[int]
    c: FrozenSet[int]
    d: FrozenSet[int]
    noise: FrozenSet[int]
    n: int

    problem = "structured"

    def validate(self) -> "StructuredInstance":
        parts = [self.a, self.b, self.c, self.d, self.noise]
        total = 0
        for p in parts:
            total += len(p)
        union = self.a | self.b | self.c | self.d | self.noise
        if total != len(union) or union != set(range(self.g.n)):
            raise InvariantError("(A,B,C,D,N) must partition the vertex set")
        if not (len(self.a) == len(self.b) == self.n):
            raise InvariantError("|A| = |B| = n required")
        if not (len(self.c) == len(self.d) == 2 * self.n):
            raise InvariantError("|C| = |D| = 2n required")
        d_mask = mask_of(self.d)
        for u in self.a:
            if self.g.adj[u] & d_mask:
                raise InvariantError("no vertex in A may be adjacent to any vertex in D")
        c_mask = mask_of(self.c)
        for u in self.b:
            if self.g.adj[u] & c_mask:
                raise InvariantError("no vertex in B may be adjacent to any vertex in C")
        return self

    def core(self) -> FrozenSet[int]:
        return self.a | self.b | self.c | self.d


@dataclass(frozen=True)
class CliqueContractionInstance:
    g: Graph
    t: int

    problem = "cliquecon"

    def validate(self) -> "CliqueContractionInstance":
        if self.t < 0:
            raise InvariantError("budget t must be non-negative")
        return self


@dataclass(frozen=True)
class HadwigerInstance:
    g: Graph
    h: int

    problem = "hadwiger"

    def validate(self) -> "HadwigerInstance":
        if self.h < 0:
            raise InvariantError("target h must be non-negative")
        return self


@dataclass(frozen=True)
class FContractionInstance:
    g: Graph
    t: int
    class_id: str

    problem = "fcon"

    def validate(self) -> "FContractionInstance":
        from .classes import CLASS_IDS

        if self.t < 0:
            raise InvariantError("budget t must be non-negative")
        if self.class_id not in CLASS_IDS:
            raise InvariantError(f"unknown class id {self.class_id!r}")
        return self

    def with_class(self, class_id: str) -> "FContractionInstance":
        return replace(self, class_id=class_id).validate()


Instance = (
    ThreeColoringInstance
    | ListInstance
    | CrossMatchingInstance
    | StructuredInstance
    | CliqueContractionInstance
    | HadwigerInstance
    | FContractionInstance
)


def full_lists(g: Graph, h: Graph, c_g: ProperColoring, c_h: ProperColoring) -> Tuple[Tuple[int, ...], ...]:
    """The largest color-compatible list function for the given colorings."""
    by_color: Dict[int, list] = {}
    for v in range(h.n):
        by_color.setdefault(c_h.color_of[v], []).append(v)
    return tuple(tuple(by_color.get(c_g.color_of[u], ())) for u in range(g.n))
