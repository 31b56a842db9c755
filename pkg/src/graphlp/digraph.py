"""Finite directed graphs with labelled vertices and induced-subgraph queries.

Vertices carry externally supplied labels; internally every vertex gets a
dense index in ``0..n-1`` assigned by sorting the labels once at
construction time, so all outputs are deterministic regardless of input
order.  Vertex subsets are handled as bitmasks over the dense indices in
the hot paths.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

from .errors import GraphFormatError, UnknownVertexError

__all__ = [
    "Digraph",
    "strongly_connected_components",
    "is_strongly_connected",
    "parse_graph_text",
]


class Digraph:
    """An immutable directed graph without self-loops or parallel edges.

    ``labels`` may be any homogeneous sortable hashable values (strings when
    loaded from text, often small ints in programmatic use).  The ``cache``
    dict is internal memo storage used by other modules; it never affects
    equality, hashing, or pickling, and inserts into it are idempotent
    (the same key always receives an equal value), so sharing a graph
    between concurrent tasks is safe.
    """

    __slots__ = ("labels", "_index", "_out", "_out_masks", "_in_masks",
                 "edges", "cache", "_hash")

    def __init__(self, labels: Iterable, edges: Iterable[tuple] = ()):
        self.labels: tuple = tuple(sorted(set(labels)))
        self._index = {v: i for i, v in enumerate(self.labels)}
        edge_set = set()
        for (u, v) in edges:
            if u not in self._index:
                raise UnknownVertexError(u)
            if v not in self._index:
                raise UnknownVertexError(v)
            if u == v:
                raise ValueError(f"self-loop rejected: {u!r} -> {v!r}")
            if (u, v) in edge_set:
                raise ValueError(f"duplicate edge rejected: {u!r} -> {v!r}")
            edge_set.add((u, v))
        self.edges: frozenset = frozenset(edge_set)
        n = len(self.labels)
        out: list[list[int]] = [[] for _ in range(n)]
        out_masks = [0] * n
        in_masks = [0] * n
        for (u, v) in edge_set:
            i, j = self._index[u], self._index[v]
            out[i].append(j)
            out_masks[i] |= 1 << j
            in_masks[j] |= 1 << i
        self._out: tuple = tuple(tuple(sorted(row)) for row in out)
        self._out_masks = tuple(out_masks)
        self._in_masks = tuple(in_masks)
        self.cache: dict = {"scc": {}}
        self._hash = hash((self.labels, self.edges))

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertexError(label) from None

    def label(self, i: int):
        return self.labels[i]

    def has_edge(self, u, v) -> bool:
        return (u, v) in self.edges

    def out_neighbors(self, label) -> tuple:
        return tuple(self.labels[j] for j in self._out[self.index(label)])

    def out_indices(self, i: int) -> tuple[int, ...]:
        return self._out[i]

    # -- bitmask helpers --------------------------------------------------

    def mask(self, subset: Iterable) -> int:
        m = 0
        for v in subset:
            m |= 1 << self.index(v)
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(self.labels[i] for i in _iter_bits(m))

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # -- strongly connected components ------------------------------------

    def scc_masks(self, mask: int) -> tuple[int, ...]:
        """SCCs of the subgraph induced on ``mask``, each as a bitmask,
        sorted by lowest set bit.  Cached per mask."""
        cache = self.cache["scc"]
        got = cache.get(mask)
        if got is None:
            got = _tarjan_masks(self._out, mask)
            cache[mask] = got
        return got

    # -- text format -------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Digraph":
        return parse_graph_text(text)

    def to_text(self) -> str:
        """Canonical rendering of the graph text format."""
        lines = ["vertices: " + " ".join(str(v) for v in self.labels)]
        for (u, v) in sorted(self.edges, key=lambda e: (self.index(e[0]), self.index(e[1]))):
            lines.append(f"{u} -> {v}")
        return "\n".join(lines) + "\n"

    def short_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:12]

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Digraph, (self.labels, sorted(self.edges)))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={len(self.edges)})"


def _iter_bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _tarjan_masks(out: Sequence[Sequence[int]], mask: int) -> tuple[int, ...]:
    """Iterative Tarjan on the subgraph induced by ``mask``; components as
    bitmasks ordered by their minimal vertex index."""
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[int] = []
    counter = 0
    for root in _iter_bits(mask):
        if root in index:
            continue
        work = [(root, iter(out[root]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not (mask >> w) & 1:
                    continue
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(out[w])))
                    advanced = True
                    break
                elif w in on_stack:
                    if index[w] < lowlink[v]:
                        lowlink[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
            if lowlink[v] == index[v]:
                comp = 0
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp |= 1 << w
                    if w == v:
                        break
                comps.append(comp)
    comps.sort(key=lambda c: c & -c)
    return tuple(comps)


def strongly_connected_components(g: Digraph, subset: Iterable) -> list[frozenset]:
    """SCCs of the subgraph induced on ``subset``, sorted by minimal vertex.

    The returned components partition ``subset``; the empty subset yields
    the empty list.
    """
    mask = g.mask(subset)
    return [g.unmask(c) for c in g.scc_masks(mask)]


def is_strongly_connected(g: Digraph, subset: Iterable) -> bool:
    """True iff the induced subgraph is strongly connected.

    Singletons and the empty set count as strongly connected.
    """
    mask = g.mask(subset)
    if mask == 0:
        return True
    comps = g.scc_masks(mask)
    return len(comps) == 1


def parse_graph_text(text: str) -> Digraph:
    """Parse the graph text format.

    One ``vertices: a b c`` line, then one edge per line: ``u -> v`` for a
    directed edge or ``u -- v`` for a pair of opposite edges.  ``#`` starts
    a comment.  Self-loops and repeated edges are rejected.
    """
    labels: list[str] | None = None
    directed: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if labels is not None:
                raise GraphFormatError("repeated vertices line", lineno)
            labels = line[len("vertices:"):].split()
            if not labels:
                raise GraphFormatError("empty vertex list", lineno)
            if len(set(labels)) != len(labels):
                raise GraphFormatError("duplicate vertex label", lineno)
            continue
        if labels is None:
            raise GraphFormatError("edge before vertices line", lineno)
        if "->" in line:
            parts = [p.strip() for p in line.split("->")]
            pairs = [(parts[0], parts[1])] if len(parts) == 2 else None
        elif "--" in line:
            parts = [p.strip() for p in line.split("--")]
            pairs = ([(parts[0], parts[1]), (parts[1], parts[0])]
                     if len(parts) == 2 else None)
        else:
            raise GraphFormatError(f"unrecognized line: {line!r}", lineno)
        if pairs is None or any(not u or not v for u, v in pairs):
            raise GraphFormatError(f"malformed edge line: {line!r}", lineno)
        for (u, v) in pairs:
            directed.append((u, v, lineno))

    if labels is None:
        raise GraphFormatError("missing vertices line", 1)
    known = set(labels)
    seen: set[tuple[str, str]] = set()
    edges = []
    for (u, v, lineno) in directed:
        if u not in known:
            raise GraphFormatError(f"unknown vertex {u!r}", lineno)
        if v not in known:
            raise GraphFormatError(f"unknown vertex {v!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop {u!r} -> {v!r} not allowed", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge {u!r} -> {v!r}", lineno)
        seen.add((u, v))
        edges.append((u, v))
    return Digraph(labels, edges)
