"""The Y Laurent polynomials and monomials built from them.

``compute_Y(g, I)`` sums the normalized weights of all acyclic functions
on the vertex set ``I``; it is the definitional enumeration, memoized per
graph because the same Y values recur heavily during expansion and
verification.  The memo lives in the graph's internal cache and its
inserts are idempotent, so concurrent use is safe.
"""

from __future__ import annotations

from typing import Iterable

from .digraph import Digraph, strongly_connected_components
from .laurent import CoefPoly, LaurentPoly
from .multifunction import (
    _iter_function_targets,
    _sorted_indices,
    enumerate_cycle_families,
)
from .multiset import Multiset
from .nested import ClusterMonomialIndex, multiset_to_nested

__all__ = [
    "compute_Y",
    "y_scc_factorization",
    "function_weight_sum",
    "monomial_laurent",
    "cluster_monomial_laurent",
]


def _sum_over_functions(g: Digraph, verts: tuple[int, ...], acyclic_only: bool,
                        normalized: bool) -> LaurentPoly:
    n = g.n
    acc: dict[tuple, dict[tuple, int]] = {}
    base = [0] * n
    if normalized:
        for i in verts:
            base[i] -= 1
    for targets in _iter_function_targets(g, verts, acyclic_only):
        xexp = list(base)
        aexp = [0] * n
        for v, w in zip(verts, targets):
            if v == w:
                aexp[v] += 1
            else:
                xexp[w] += 1
        xkey, akey = tuple(xexp), tuple(aexp)
        acc.setdefault(xkey, {})[akey] = acc.get(xkey, {}).get(akey, 0) + 1
    terms = {xkey: CoefPoly(n, amap) for xkey, amap in acc.items()}
    return LaurentPoly(n, terms)


def compute_Y(g: Digraph, I: Iterable) -> LaurentPoly:
    """Sum of normalized weights over all acyclic functions on the set ``I``.

    ``I`` need not be strongly connected; ``Y`` of the empty set is 1.
    """
    verts = _sorted_indices(g, I)
    mask = 0
    for i in verts:
        mask |= 1 << i
    cache = g.cache.setdefault("y", {})
    got = cache.get(mask)
    if got is None:
        got = _sum_over_functions(g, verts, acyclic_only=True, normalized=True)
        cache[mask] = got
    return got


def function_weight_sum(g: Digraph, S: Iterable, *, acyclic: bool = False,
                        normalized: bool = False) -> LaurentPoly:
    """Sum of (normalized) weights over all (acyclic) functions on the set
    ``S``; the unmemoized building block behind identity tests."""
    return _sum_over_functions(g, _sorted_indices(g, S), acyclic, normalized)


def y_scc_factorization(g: Digraph, I: Iterable) -> list[tuple[frozenset, LaurentPoly]]:
    """The strongly connected components of the subgraph induced on ``I``
    paired with their Y polynomials; the product of the factors equals
    ``compute_Y(g, I)``."""
    return [(comp, compute_Y(g, comp))
            for comp in strongly_connected_components(g, I)]


def monomial_laurent(g: Digraph, U: Multiset, S: Multiset) -> LaurentPoly:
    """The Laurent polynomial of the monomial prod_{v in U} X_v *
    prod_{I in S} Y_I, for a vertex multiset ``U`` and a multiset ``S`` of
    vertex sets."""
    exps = [0] * g.n
    for v, m in U.items():
        exps[g.index(v)] += m
    p = LaurentPoly.x_monomial(g.n, exps)
    for I, m in S.items():
        y = compute_Y(g, I)
        for _ in range(m):
            p = p * y
    return p


def cluster_monomial_laurent(g: Digraph, idx: ClusterMonomialIndex) -> LaurentPoly:
    """The Laurent polynomial of the cluster monomial indexed by the
    disjoint pair ``(U, T)``: the Y part is the nested multicollection that
    the vertex multiset ``T`` corresponds to."""
    return monomial_laurent(g, idx.U, multiset_to_nested(g, idx.T))
