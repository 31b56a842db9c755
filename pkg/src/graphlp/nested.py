"""Nested collections, the multiset <-> nested-multicollection bijection,
and cluster-monomial indexing.

A multiset of vertex sets is *nested* when (N1) any two members are nested
or disjoint and (N2) every pairwise-disjoint subfamily consists of the
strongly connected components of the union it induces.  Summing the members
of a nested multicollection is a bijection onto vertex multisets; the
inverse takes a multiset ``T`` to the components of its layers.  That
bijection is what lets cluster monomials be indexed by a disjoint pair
``(U, T)`` of vertex multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .digraph import Digraph
from .multiset import Multiset

__all__ = [
    "NestedMulticollection",
    "MonomialIndex",
    "ClusterMonomialIndex",
    "is_nested",
    "multiset_to_nested",
    "nested_to_multiset",
    "enumerate_maximal_nested_collections",
    "canonical_cluster_index",
    "set_key",
    "collection_key",
]

# A nested multicollection is represented as a Multiset whose elements are
# frozensets of vertex labels; nestedness is a property checked against a
# graph, not a separate runtime type.
NestedMulticollection = Multiset


def set_key(s: Iterable) -> tuple:
    """Canonical order for vertex sets: by size, then sorted members."""
    t = tuple(sorted(s))
    return (len(t), t)


def collection_key(members: Iterable[frozenset]) -> tuple:
    return tuple(sorted((set_key(m) for m in members)))


def _as_member_multiset(members) -> Multiset:
    if isinstance(members, Multiset):
        return Multiset({frozenset(m): c for m, c in members.items()})
    return Multiset(frozenset(m) for m in members)


def is_nested(g: Digraph, members, *, full_n2: bool = False) -> bool:
    """Whether a (multi)collection of vertex sets is nested on ``g``.

    Multiplicities never matter: a multiset is nested iff its support is.
    By default (N2) is checked on the sibling antichains of the containment
    forest (the maximal members, and for each member the maximal members
    strictly inside it); ``full_n2=True`` quantifies over every disjoint
    subfamily instead.  The two agree on every family at tested scale; the
    flag keeps the full check available.
    """
    sets = {frozenset(m) for m in (members.support if isinstance(members, Multiset) else members)}
    masks = sorted(g.mask(s) for s in sets)
    if any(m == 0 for m in masks):
        return False  # the empty set is never a component of anything
    # (N1): pairwise nested or disjoint
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            a, b = masks[i], masks[j]
            inter = a & b
            if inter and inter != a and inter != b:
                return False
    if full_n2:
        return _n2_full(g, masks)
    return _n2_siblings(g, masks)


def _is_scc_of_union(g: Digraph, family: list[int]) -> bool:
    union = 0
    for m in family:
        union |= m
    comps = set(g.scc_masks(union))
    return all(m in comps for m in family)


def _n2_siblings(g: Digraph, masks: list[int]) -> bool:
    roots = [m for m in masks if not any(m != o and m & o == m for o in masks)]
    if not _is_scc_of_union(g, roots):
        return False
    for parent in masks:
        inside = [m for m in masks if m != parent and m & parent == m]
        children = [m for m in inside
                    if not any(m != o and m & o == m for o in inside)]
        if children and not _is_scc_of_union(g, children):
            return False
    return True


def _n2_full(g: Digraph, masks: list[int]) -> bool:
    k = len(masks)

    def rec(start: int, family: list[int], used: int) -> bool:
        if family and not _is_scc_of_union(g, family):
            return False
        for j in range(start, k):
            if masks[j] & used:
                continue
            if masks[j] in family:
                continue
            if not rec(j + 1, family + [masks[j]], used | masks[j]):
                return False
        return True

    return rec(0, [], 0)


def multiset_to_nested(g: Digraph, T: Multiset) -> Multiset:
    """The nested multicollection corresponding to a vertex multiset: the
    sum over layers of the strongly connected components of each layer."""
    if not T:
        return Multiset()
    bits = [(1 << g.index(v), m) for v, m in T.items()]
    counts: dict[frozenset, int] = {}
    depth = 1
    while True:
        layer = 0
        for b, m in bits:
            if m >= depth:
                layer |= b
        if not layer:
            break
        for comp in g.scc_masks(layer):
            s = g.unmask(comp)
            counts[s] = counts.get(s, 0) + 1
        depth += 1
    return Multiset(counts)


def nested_to_multiset(n: Multiset) -> Multiset:
    """Sum of the members of a multicollection, counting multiplicities."""
    counts: dict = {}
    for member, m in n.items():
        for v in member:
            counts[v] = counts.get(v, 0) + m
    return Multiset(counts)


def enumerate_maximal_nested_collections(g: Digraph, W: Iterable) -> Iterator[frozenset]:
    """Every nested collection on ``W`` (sets only) that is maximal under
    inclusion, yielded as a frozenset of frozensets in canonical order.

    Enumeration goes through the bijection: walk all strictly decreasing
    chains of nonempty subsets of ``W`` (the layer chains of candidate
    vertex multisets), keep those whose layer components are pairwise
    distinct, then filter by the direct no-extension test.
    """
    wmask = g.mask(W)
    if wmask == 0:
        yield frozenset()
        return
    # all strongly connected nonempty subsets of W, as masks
    sc_masks = []
    sub = wmask
    while True:
        if sub and len(g.scc_masks(sub)) == 1:
            sc_masks.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & wmask

    results = []
    stack: list[list[int]] = [[wmask]]
    while stack:
        chain = stack.pop()
        comp_masks: list[int] = []
        ok = True
        for layer in chain:
            for c in g.scc_masks(layer):
                if c in comp_masks:
                    ok = False
                    break
                comp_masks.append(c)
            if not ok:
                break
        if ok:
            if _is_maximal(g, comp_masks, sc_masks):
                results.append(frozenset(g.unmask(c) for c in comp_masks))
            # descend to proper nonempty subsets of the last layer
            last = chain[-1]
            sub = (last - 1) & last
            while sub:
                stack.append(chain + [sub])
                sub = (sub - 1) & last
    results.sort(key=collection_key)
    yield from results


def _is_maximal(g: Digraph, comp_masks: list[int], sc_masks: list[int]) -> bool:
    have = set(comp_masks)
    for cand in sc_masks:
        if cand in have:
            continue
        if _extends(g, comp_masks, cand):
            return False
    return True


def _extends(g: Digraph, masks: list[int], cand: int) -> bool:
    """Whether adding ``cand`` keeps the family nested ((N1) + sibling (N2))."""
    for m in masks:
        inter = m & cand
        if inter and inter != m and inter != cand:
            return False
    all_masks = masks + [cand]
    return _n2_siblings(g, all_masks)


@dataclass(frozen=True)
class MonomialIndex:
    """Index of a general monomial: a vertex multiset ``U`` (X part) and a
    multiset ``S`` of vertex sets (Y part).  No compatibility required."""

    U: Multiset
    S: Multiset

    def __post_init__(self):
        object.__setattr__(self, "S", _as_member_multiset(self.S))

    def total_y_vertices(self) -> int:
        return sum(len(member) * m for member, m in self.S.items())


@dataclass(frozen=True)
class ClusterMonomialIndex:
    """Index of a cluster monomial: disjoint vertex multisets ``(U, T)``;
    ``T`` determines the Y part through the layer bijection."""

    U: Multiset
    T: Multiset

    def __post_init__(self):
        if not self.U.isdisjoint(self.T):
            raise ValueError("cluster index parts must be disjoint multisets")

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.U.elements())), tuple(sorted(self.T.elements())))


def canonical_cluster_index(g: Digraph, m: MonomialIndex) -> ClusterMonomialIndex | None:
    """The ``(U, T)`` reindexing of a monomial whose Y part is a nested
    multicollection away from ``U``; ``None`` when it is not a cluster
    monomial (a status, not a failure)."""
    u_support = m.U.support
    for member in m.S.support:
        if member & u_support:
            return None
    if not is_nested(g, m.S):
        return None
    return ClusterMonomialIndex(m.U, nested_to_multiset(m.S))
