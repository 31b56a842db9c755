"""Exact sparse arithmetic in the ring Z[A_v][X_v^{+-1}].

Coefficients live in the integer polynomial ring with one (never inverted)
``A`` variable per vertex; the ambient ring adds one invertible ``X``
variable per vertex.  Exponent vectors are dense tuples of length ``n``
(the number of vertices), which at desk scale beats sparse keying for
hashing and ordering.  All values are immutable after construction and all
operations are pure, so polynomials can be shared freely.

Python integers are arbitrary precision, so no overflow handling is needed
anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import UniverseMismatchError
from .multiset import Multiset

__all__ = [
    "CoefPoly",
    "LaurentPoly",
    "LaurentMonomialIndex",
    "poly_add",
    "poly_mul",
    "coefficient_of",
    "is_coefficientwise_nonnegative",
]


class CoefPoly:
    """An integer polynomial in the A variables (exponents >= 0)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, int] | None = None):
        self.n = n
        clean: dict[tuple, int] = {}
        if terms:
            for exps, c in terms.items():
                if c == 0:
                    continue
                if len(exps) != n or any(e < 0 for e in exps):
                    raise ValueError(f"bad A-exponent vector {exps!r} for n={n}")
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "CoefPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c: int) -> "CoefPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def one(cls, n: int) -> "CoefPoly":
        return cls.constant(n, 1)

    @classmethod
    def variable(cls, n: int, i: int) -> "CoefPoly":
        """The polynomial A_i (by dense vertex index)."""
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.n in self.terms)

    def constant_value(self) -> int:
        """The integer value; raises if the polynomial is not constant."""
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError(f"not a constant: {self.terms!r}")
        return self.terms[(0,) * self.n]

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def coefficient_total(self) -> int:
        return sum(self.terms.values())

    def _check(self, other: "CoefPoly"):
        if self.n != other.n:
            raise UniverseMismatchError(f"universes of size {self.n} and {other.n}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CoefPoly.constant(self.n, other)
        if not isinstance(other, CoefPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = CoefPoly.__new__(CoefPoly)
        out.n, out.terms = self.n, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = CoefPoly.__new__(CoefPoly)
        out.n = self.n
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = CoefPoly.constant(self.n, other)
        if not isinstance(other, CoefPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return CoefPoly.zero(self.n)
            out = CoefPoly.__new__(CoefPoly)
            out.n = self.n
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        if not isinstance(other, CoefPoly):
            return NotImplemented
        self._check(other)
        terms: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        out = CoefPoly.__new__(CoefPoly)
        out.n, out.terms = self.n, terms
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, CoefPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def evaluate(self, a_values: Sequence[int], mod: int | None = None) -> int:
        """Substitute integers for the A variables (optionally mod a prime)."""
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t *= pow(a_values[i], k, mod) if mod else a_values[i] ** k
            total += t
            if mod:
                total %= mod
        return total

    def render(self, labels: Sequence | None = None) -> str:
        """Canonical text: terms in ascending exponent order."""
        if not self.terms:
            return "0"
        labels = labels if labels is not None else list(range(self.n))
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = [f"A_{labels[i]}" + (f"^{k}" if k != 1 else "")
                       for i, k in enumerate(e) if k]
            parts.append(_join_term(c, factors, first=not parts))
        return "".join(parts)

    def __repr__(self):
        return f"CoefPoly({self.render()})"


class LaurentPoly:
    """A Laurent polynomial in the X variables with CoefPoly coefficients.

    ``terms`` maps dense X-exponent tuples (entries may be negative) to
    nonzero ``CoefPoly`` values.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, CoefPoly] | None = None):
        self.n = n
        clean: dict[tuple, CoefPoly] = {}
        if terms:
            for exps, p in terms.items():
                if len(exps) != n:
                    raise ValueError(f"bad X-exponent vector {exps!r} for n={n}")
                if p.n != n:
                    raise UniverseMismatchError("coefficient over wrong universe")
                if not p.is_zero():
                    clean[tuple(exps)] = p
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[tuple, CoefPoly]) -> "LaurentPoly":
        out = cls.__new__(cls)
        out.n, out.terms = n, terms
        return out

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: "CoefPoly | int") -> "LaurentPoly":
        if isinstance(c, int):
            c = CoefPoly.constant(n, c)
        return cls(n, {(0,) * n: c})

    @classmethod
    def one(cls, n: int) -> "LaurentPoly":
        return cls.constant(n, 1)

    @classmethod
    def x_monomial(cls, n: int, exps: Sequence[int], coef: "CoefPoly | int" = 1) -> "LaurentPoly":
        if isinstance(coef, int):
            coef = CoefPoly.constant(n, coef)
        return cls(n, {tuple(exps): coef})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "LaurentPoly"):
        if self.n != other.n:
            raise UniverseMismatchError(f"universes of size {self.n} and {other.n}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for e, p in other.terms.items():
            got = terms.get(e)
            s = p if got is None else got + p
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return LaurentPoly._raw(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.n, {e: -p for e, p in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = CoefPoly.constant(self.n, other)
        if isinstance(other, CoefPoly):
            if other.is_zero():
                return LaurentPoly.zero(self.n)
            return LaurentPoly(self.n, {e: p * other for e, p in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms: dict[tuple, CoefPoly] = {}
        for e1, p1 in self.terms.items():
            for e2, p2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = p1 * p2
                got = terms.get(e)
                s = prod if got is None else got + prod
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return LaurentPoly._raw(self.n, terms)

    __rmul__ = __mul__

    def mul_x_monomial(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by a bare X monomial (negative entries divide exactly)."""
        exps = tuple(exps)
        return LaurentPoly._raw(
            self.n,
            {tuple(a + b for a, b in zip(e, exps)): p for e, p in self.terms.items()},
        )

    def coefficient_at(self, xexps: Sequence[int]) -> CoefPoly:
        return self.terms.get(tuple(xexps), CoefPoly.zero(self.n))

    def is_coefficientwise_nonnegative(self) -> bool:
        return all(p.is_nonnegative() for p in self.terms.values())

    def coefficient_total(self) -> int:
        """Sum of all integer coefficients over X and A monomials jointly."""
        return sum(p.coefficient_total() for p in self.terms.values())

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset((e, hash(p)) for e, p in self.terms.items())))

    def evaluate(self, x_values: Sequence[int], a_values: Sequence[int],
                 mod: int) -> int:
        """Substitute units mod a prime for X and integers for A.

        All ``x_values`` must be invertible mod ``mod``; negative exponents
        use the modular inverse.  A fast probabilistic cross-check for the
        exact arithmetic.
        """
        total = 0
        for e, p in self.terms.items():
            t = p.evaluate(a_values, mod)
            for i, k in enumerate(e):
                if k > 0:
                    t *= pow(x_values[i], k, mod)
                elif k < 0:
                    t *= pow(x_values[i], -k * (mod - 2), mod)
                t %= mod
            total = (total + t) % mod
        return total

    def sorted_terms(self) -> list[tuple[tuple, CoefPoly]]:
        """Terms in the canonical order: lexicographic on X exponents."""
        return [(e, self.terms[e]) for e in sorted(self.terms)]

    def render(self, labels: Sequence | None = None) -> str:
        """Canonical text rendering, terms in the fixed order."""
        if not self.terms:
            return "0"
        labels = labels if labels is not None else list(range(self.n))
        parts = []
        for e, p in self.sorted_terms():
            xfactors = [f"X_{labels[i]}" + (f"^{k}" if k != 1 else "")
                        for i, k in enumerate(e) if k]
            for ae in sorted(p.terms):
                c = p.terms[ae]
                afactors = [f"A_{labels[i]}" + (f"^{k}" if k != 1 else "")
                            for i, k in enumerate(ae) if k]
                parts.append(_join_term(c, afactors + xfactors, first=not parts))
        return "".join(parts)

    def as_fraction(self) -> tuple["LaurentPoly", tuple[int, ...]]:
        """Write ``self`` as numerator / X-monomial with the minimal monomial
        denominator; returns (numerator, denominator exponents >= 0)."""
        denom = [0] * self.n
        for e in self.terms:
            for i, k in enumerate(e):
                if -k > denom[i]:
                    denom[i] = -k
        num = self.mul_x_monomial(denom)
        return num, tuple(denom)

    def render_fraction(self, labels: Sequence | None = None) -> str:
        num, denom = self.as_fraction()
        if not any(denom):
            return self.render(labels)
        labels = labels if labels is not None else list(range(self.n))
        dfactors = [f"X_{labels[i]}" + (f"^{k}" if k != 1 else "")
                    for i, k in enumerate(denom) if k]
        return "(" + num.render(labels) + ") / (" + "*".join(dfactors) + ")"

    def __repr__(self):
        return f"LaurentPoly({self.render()})"


def _join_term(c: int, factors: list[str], first: bool) -> str:
    if not factors:
        body = str(abs(c))
    elif abs(c) == 1:
        body = "*".join(factors)
    else:
        body = str(abs(c)) + "*" + "*".join(factors)
    if first:
        return body if c > 0 else "-" + body
    return (" + " if c > 0 else " - ") + body


@dataclass(frozen=True)
class LaurentMonomialIndex:
    """A Laurent monomial prod X_U / prod X_T for disjoint vertex multisets."""

    U: Multiset
    T: Multiset

    def __post_init__(self):
        if not self.U.isdisjoint(self.T):
            raise ValueError("numerator and denominator multisets must be disjoint")

    def x_exponents(self, graph) -> tuple[int, ...]:
        exps = [0] * graph.n
        for v, m in self.U.items():
            exps[graph.index(v)] += m
        for v, m in self.T.items():
            exps[graph.index(v)] -= m
        return tuple(exps)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact sum in canonical form."""
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact product in canonical form."""
    return a * b


def coefficient_of(p: LaurentPoly, m: LaurentMonomialIndex, graph) -> CoefPoly:
    """The CoefPoly attached to the X monomial indexed by ``m`` (zero when
    absent)."""
    return p.coefficient_at(m.x_exponents(graph))


def is_coefficientwise_nonnegative(p: LaurentPoly) -> bool:
    """True iff every integer coefficient in every CoefPoly is >= 0."""
    return p.is_coefficientwise_nonnegative()
