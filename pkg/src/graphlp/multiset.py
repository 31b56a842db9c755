"""Immutable multisets over an arbitrary hashable element universe.

A multiset is determined by its multiplicity function; equivalently by its
descending chain of layers ``layer(1) >= layer(2) >= ...`` where ``layer(i)``
is the set of elements with multiplicity at least ``i``.  Both views are
exposed because the layer view drives the cluster-monomial bookkeeping
elsewhere in the package.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import ContainmentError

__all__ = ["Multiset", "multiset_sum", "multiset_subtract"]


class Multiset:
    """An immutable multiset: a map from element to positive multiplicity.

    Construct from an iterable of elements (counted with repetition), a
    mapping ``{element: multiplicity}``, or another ``Multiset``.
    """

    __slots__ = ("_entries", "_hash")

    def __init__(self, items: "Iterable | Mapping | Multiset" = ()):
        if isinstance(items, Multiset):
            entries = dict(items._entries)
        elif isinstance(items, Mapping):
            entries = {}
            for x, m in items.items():
                if not isinstance(m, int):
                    raise TypeError(f"multiplicity of {x!r} must be an int, got {m!r}")
                if m < 0:
                    raise ValueError(f"negative multiplicity for {x!r}: {m}")
                if m > 0:
                    entries[x] = m
        else:
            entries = {}
            for x in items:
                entries[x] = entries.get(x, 0) + 1
        self._entries = entries
        self._hash = None

    @classmethod
    def from_items(cls, pairs: Iterable[tuple]) -> "Multiset":
        """Build from ``(element, multiplicity)`` pairs; multiplicities add up."""
        entries: dict = {}
        for x, m in pairs:
            entries[x] = entries.get(x, 0) + m
        return cls(entries)

    def multiplicity(self, x) -> int:
        return self._entries.get(x, 0)

    def layer(self, i: int) -> frozenset:
        """The set of elements with multiplicity at least ``i`` (``i >= 1``)."""
        if i < 1:
            raise ValueError("layer index must be >= 1")
        return frozenset(x for x, m in self._entries.items() if m >= i)

    def layers(self) -> tuple[frozenset, ...]:
        """All nonempty layers, largest first.  Empty tuple for the empty multiset."""
        if not self._entries:
            return ()
        out = []
        for i in range(1, max(self._entries.values()) + 1):
            out.append(frozenset(x for x, m in self._entries.items() if m >= i))
        return tuple(out)

    @property
    def support(self) -> frozenset:
        """Elements with multiplicity >= 1 (the first layer)."""
        return frozenset(self._entries)

    def items(self) -> Iterator[tuple]:
        return iter(self._entries.items())

    def elements(self) -> Iterator:
        """Iterate elements with repetition (unspecified order)."""
        for x, m in self._entries.items():
            for _ in range(m):
                yield x

    def __len__(self) -> int:
        """Number of elements counted with multiplicity."""
        return sum(self._entries.values())

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __contains__(self, x) -> bool:
        return x in self._entries

    def __iter__(self) -> Iterator:
        """Iterate the support (distinct elements)."""
        return iter(self._entries)

    def __add__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        entries = dict(self._entries)
        for x, m in other._entries.items():
            entries[x] = entries.get(x, 0) + m
        return Multiset(entries)

    def __sub__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        entries = dict(self._entries)
        for x, m in other._entries.items():
            have = entries.get(x, 0)
            if m > have:
                raise ContainmentError(
                    f"cannot subtract: {x!r} has multiplicity {m} > {have}"
                )
            if m == have:
                del entries[x]
            else:
                entries[x] = have - m
        return Multiset(entries)

    def __le__(self, other: "Multiset") -> bool:
        """Layerwise containment: every multiplicity here is <= the one there."""
        if not isinstance(other, Multiset):
            return NotImplemented
        return all(m <= other._entries.get(x, 0) for x, m in self._entries.items())

    def __lt__(self, other: "Multiset") -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self <= other and self != other

    def isdisjoint(self, other: "Multiset") -> bool:
        return not (self.support & other.support)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        try:
            body = ", ".join(repr(x) for x in sorted(self.elements(), key=_sort_key))
        except TypeError:
            body = ", ".join(repr(x) for x in self.elements())
        return f"Multiset({{{body}}})"


def _sort_key(x):
    # frozensets of labels sort by (size, sorted members); plain labels by value
    if isinstance(x, frozenset):
        return (1, len(x), tuple(sorted(x)))
    return (0, x)


def multiset_sum(a: Multiset, b: Multiset) -> Multiset:
    """Pointwise sum of multiplicities."""
    return a + b


def multiset_subtract(a: Multiset, b: Multiset) -> Multiset:
    """Pointwise difference; raises ContainmentError unless ``b <= a``."""
    return a - b
