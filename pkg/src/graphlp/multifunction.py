"""Multifunctions on vertex multisets, their weights, and cycle families.

A multifunction on a vertex multiset ``I`` is a directed multigraph on the
ambient vertex set whose out-degree at ``v`` equals the multiplicity of
``v`` in ``I``; every non-loop edge must be an edge of the ambient graph.
Loops are allowed here (and only here): a loop at ``v`` contributes the
coefficient variable ``A_v`` to the weight, a non-loop edge ``(v, w)``
contributes ``X_w``.  When ``I`` is a set, a multifunction is a function
``I -> V`` and acyclicity means the only periodic orbits are fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator

from .digraph import Digraph, _iter_bits
from .errors import PreconditionError
from .laurent import CoefPoly, LaurentPoly
from .multiset import Multiset

__all__ = [
    "Multifunction",
    "CycleFamily",
    "weight",
    "normalized_weight",
    "multifunction_sum",
    "enumerate_acyclic_functions",
    "enumerate_functions",
    "enumerate_multifunctions",
    "enumerate_cycle_families",
    "simple_cycles",
]


@dataclass(frozen=True)
class Multifunction:
    """An immutable multifunction: a domain multiset plus an edge multiset.

    Edges are ``(source, target)`` label pairs; a loop has equal entries.
    """

    graph: Digraph
    domain: Multiset
    edges: Multiset

    def __post_init__(self):
        outdeg: dict = {}
        for (u, v), m in self.edges.items():
            self.graph.index(u)
            if u != v and not self.graph.has_edge(u, v):
                raise ValueError(f"edge {u!r} -> {v!r} is not in the ambient graph")
            outdeg[u] = outdeg.get(u, 0) + m
        for v, m in self.domain.items():
            self.graph.index(v)
            if outdeg.get(v, 0) != m:
                raise ValueError(
                    f"out-degree {outdeg.get(v, 0)} at {v!r} != multiplicity {m}"
                )
        for v in outdeg:
            if v not in self.domain:
                raise ValueError(f"edge from {v!r} outside the domain")

    def weight(self) -> LaurentPoly:
        """Product over edges of X_target (non-loops) and A_source (loops)."""
        g = self.graph
        n = g.n
        xexp = [0] * n
        aexp = [0] * n
        for (u, v), m in self.edges.items():
            if u == v:
                aexp[g.index(u)] += m
            else:
                xexp[g.index(v)] += m
        coef = CoefPoly(n, {tuple(aexp): 1})
        return LaurentPoly(n, {tuple(xexp): coef})

    def normalized_weight(self) -> LaurentPoly:
        """The weight divided exactly by prod_{v in domain} X_v."""
        g = self.graph
        shift = [0] * g.n
        for v, m in self.domain.items():
            shift[g.index(v)] -= m
        return self.weight().mul_x_monomial(shift)

    def is_acyclic(self) -> bool:
        """True iff the only cycles are loops."""
        # a length >= 2 cycle exists iff the simple digraph of non-loop
        # edges has one; detect via DFS coloring
        adj: dict = {}
        for (u, v) in self.edges:
            if u != v:
                adj.setdefault(u, set()).add(v)
        state: dict = {}
        for start in adj:
            if start in state:
                continue
            stack = [(start, iter(adj.get(start, ())))]
            state[start] = 1
            while stack:
                node, it = stack[-1]
                for nxt in it:
                    s = state.get(nxt)
                    if s == 1:
                        return False
                    if s is None:
                        state[nxt] = 1
                        stack.append((nxt, iter(adj.get(nxt, ()))))
                        break
                else:
                    state[node] = 2
                    stack.pop()
        return True

    def __add__(self, other: "Multifunction") -> "Multifunction":
        if not isinstance(other, Multifunction):
            return NotImplemented
        if self.graph != other.graph:
            raise PreconditionError("multifunctions live on different graphs")
        return Multifunction(self.graph, self.domain + other.domain,
                             self.edges + other.edges)


def weight(f: Multifunction) -> LaurentPoly:
    return f.weight()


def normalized_weight(f: Multifunction) -> LaurentPoly:
    return f.normalized_weight()


def multifunction_sum(f: Multifunction, g: Multifunction) -> Multifunction:
    """Domain and edge multisets add; weights multiply."""
    return f + g


def _choices(g: Digraph, i: int) -> tuple[int, ...]:
    # self-loop first, then out-neighbors in vertex order
    return (i,) + g.out_indices(i)


def _iter_function_targets(g: Digraph, verts: tuple[int, ...],
                           acyclic_only: bool) -> Iterator[tuple[int, ...]]:
    """Backtracking enumeration of functions ``verts -> V`` as target tuples,
    lexicographic in the per-vertex choice lists (loop first, then neighbors).

    With ``acyclic_only`` a partial assignment is pruned as soon as it
    closes a cycle of length >= 2.
    """
    k = len(verts)
    if k == 0:
        yield ()
        return
    pos = {v: i for i, v in enumerate(verts)}
    choice_lists = [_choices(g, v) for v in verts]
    chosen: list[int] = [0] * k
    counters = [0] * k
    depth = 0
    while True:
        if counters[depth] >= len(choice_lists[depth]):
            depth -= 1
            if depth < 0:
                return
            counters[depth] += 1
            continue
        target = choice_lists[depth][counters[depth]]
        v = verts[depth]
        if acyclic_only and target != v:
            # follow already-assigned arrows from the target; if the chain
            # returns to v the assignment closes a real cycle
            w = target
            bad = False
            while True:
                j = pos.get(w)
                if j is None or j > depth:
                    break
                if w == v:
                    bad = True
                    break
                nxt = chosen[j] if j < depth else None
                if nxt is None or nxt == w:
                    break
                w = nxt
            if bad:
                counters[depth] += 1
                continue
        chosen[depth] = target
        if depth == k - 1:
            yield tuple(chosen)
            counters[depth] += 1
        else:
            depth += 1
            counters[depth] = 0


def _function_from_targets(g: Digraph, verts: tuple[int, ...],
                           targets: tuple[int, ...]) -> Multifunction:
    labels = g.labels
    domain = Multiset(labels[i] for i in verts)
    edges = Multiset((labels[v], labels[w]) for v, w in zip(verts, targets))
    return Multifunction(g, domain, edges)


def _sorted_indices(g: Digraph, subset: Iterable) -> tuple[int, ...]:
    return tuple(sorted(g.index(v) for v in set(subset)))


def enumerate_acyclic_functions(g: Digraph, I: Iterable) -> Iterator[Multifunction]:
    """All acyclic multifunctions on the vertex set ``I`` (functions whose
    functional graph has no cycle except loops), in deterministic order."""
    verts = _sorted_indices(g, I)
    for targets in _iter_function_targets(g, verts, acyclic_only=True):
        yield _function_from_targets(g, verts, targets)


def enumerate_functions(g: Digraph, I: Iterable) -> Iterator[Multifunction]:
    """All multifunctions on the vertex set ``I`` (no acyclicity filter)."""
    verts = _sorted_indices(g, I)
    for targets in _iter_function_targets(g, verts, acyclic_only=False):
        yield _function_from_targets(g, verts, targets)


def enumerate_multifunctions(g: Digraph, domain: Multiset) -> Iterator[Multifunction]:
    """All multifunctions on a vertex *multiset* domain, in deterministic
    order: each vertex independently picks a multiset of targets of size
    equal to its multiplicity."""
    items = sorted(((g.index(v), m) for v, m in domain.items()))
    labels = g.labels
    per_vertex = [
        list(combinations_with_replacement(_choices(g, i), m)) for i, m in items
    ]
    for pick in product(*per_vertex):
        edges: list[tuple] = []
        for (i, _m), targets in zip(items, pick):
            edges.extend((labels[i], labels[t]) for t in targets)
        yield Multifunction(g, domain, Multiset(edges))


@dataclass(frozen=True)
class CycleFamily:
    """A set of pairwise vertex-disjoint directed cycles (length >= 2).

    Each cycle is stored as a vertex tuple rotated to start at its minimal
    vertex; the family is sorted by those starting vertices.
    """

    cycles: tuple[tuple, ...]

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for c in self.cycles for v in c)

    def __len__(self) -> int:
        return len(self.cycles)


def simple_cycles(g: Digraph, S: Iterable) -> list[tuple]:
    """All simple directed cycles of length >= 2 in the subgraph induced on
    ``S``, each canonically rotated to start at its minimal vertex, sorted."""
    mask = g.mask(S)
    labels = g.labels
    cycles: list[tuple[int, ...]] = []
    for s in _iter_bits(mask):
        # paths from s through vertices > s inside the mask, closing at s
        stack: list[tuple[tuple[int, ...], int]] = [((s,), 1 << s)]
        while stack:
            path, used = stack.pop()
            last = path[-1]
            for t in g.out_indices(last):
                if not (mask >> t) & 1:
                    continue
                if t == s and len(path) >= 2:
                    cycles.append(path)
                elif t > s and not (used >> t) & 1:
                    stack.append((path + (t,), used | (1 << t)))
    cycles.sort()
    return [tuple(labels[i] for i in c) for c in cycles]


def enumerate_cycle_families(g: Digraph, S: Iterable) -> Iterator[CycleFamily]:
    """Every family of pairwise vertex-disjoint cycles in the subgraph
    induced on ``S``, the empty family first, in deterministic order."""
    cyc = simple_cycles(g, S)
    masks = [g.mask(c) for c in cyc]

    def rec(start: int, picked: tuple, used: int) -> Iterator[CycleFamily]:
        yield CycleFamily(picked)
        for j in range(start, len(cyc)):
            if masks[j] & used:
                continue
            yield from rec(j + 1, picked + (cyc[j],), used | masks[j])

    yield from rec(0, (), 0)
