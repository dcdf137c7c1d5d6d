"""Free graded-commutative algebras over the rationals.

A monomial is a tuple of ``(generator id, exponent)`` pairs sorted by id.
Odd generators square to zero, so their exponent is always 1. Elements are
finite rational combinations of monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple  # tuple[tuple[int, int], ...]
ONE: Monomial = ()


class UnknownGenerator(KeyError):
    pass


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    degree: int


@dataclass(frozen=True)
class GeneratorTable:
    generators: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        names = set()
        for i, g in enumerate(gens):
            if g.id != i:
                raise ValueError(f"generator ids must be contiguous from 0, got {g.id} at {i}")
            if g.degree < 1:
                raise ValueError(f"generator {g.name!r} has degree {g.degree}; degrees must be >= 1")
            if g.name in names:
                raise ValueError(f"duplicate generator name {g.name!r}")
            names.add(g.name)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "GeneratorTable":
        return cls(tuple(Generator(i, name, deg) for i, (name, deg) in enumerate(pairs)))

    def __len__(self):
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __getitem__(self, gid: int) -> Generator:
        if not 0 <= gid < len(self.generators):
            raise UnknownGenerator(gid)
        return self.generators[gid]

    def degree(self, gid: int) -> int:
        return self[gid].degree

    def is_odd(self, gid: int) -> bool:
        return self[gid].degree % 2 == 1

    def index(self, name: str) -> int:
        lookup = self._cache.get("names")
        if lookup is None:
            lookup = {g.name: g.id for g in self.generators}
            self._cache["names"] = lookup
        try:
            return lookup[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def with_generators(self, pairs: Iterable[tuple[str, int]]) -> "GeneratorTable":
        """Return a new table with the given ``(name, degree)`` generators appended."""
        gens = list(self.generators)
        for name, deg in pairs:
            gens.append(Generator(len(gens), name, deg))
        return GeneratorTable(tuple(gens))

    def count_by_degree(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for g in self.generators:
            counts[g.degree] = counts.get(g.degree, 0) + 1
        return counts


def monomial_degree(m: Monomial, table: GeneratorTable) -> int:
    return sum(e * table.degree(g) for g, e in m)


def monomial_word(m: Monomial) -> tuple[int, ...]:
    """Expand a monomial into its word of generator ids, e.g. x^2 y -> (x, x, y)."""
    return tuple(g for g, e in m for _ in range(e))


def _merge_count(left, right, odd):
    # returns merged list and the number of (odd, odd) inversions across the halves
    out = []
    flips = 0
    odd_left = sum(1 for g in left if odd[g])
    i = j = 0
    while i < len(left) and j < len(right):
        if right[j] < left[i]:
            if odd[right[j]]:
                flips += odd_left
            out.append(right[j])
            j += 1
        else:
            if odd[left[i]]:
                odd_left -= 1
            out.append(left[i])
            i += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out, flips


def _sort_counting(word, odd):
    if len(word) <= 1:
        return list(word), 0
    mid = len(word) // 2
    left, a = _sort_counting(word[:mid], odd)
    right, b = _sort_counting(word[mid:], odd)
    merged, c = _merge_count(left, right, odd)
    return merged, a + b + c


def sort_word(word: Sequence[int], table: GeneratorTable) -> tuple[int, Monomial]:
    """Bring a product of generators into canonical order.

    Returns ``(sign, monomial)``; sign is 0 when an odd generator repeats.
    """
    odd = {g: table.is_odd(g) for g in word}
    ordered, flips = _sort_counting(list(word), odd)
    factors: list[list[int]] = []
    for g in ordered:
        if factors and factors[-1][0] == g:
            if odd[g]:
                return 0, None
            factors[-1][1] += 1
        else:
            factors.append([g, 1])
    sign = -1 if flips % 2 else 1
    return sign, tuple((g, e) for g, e in factors)


def multiply_monomials(m1: Monomial, m2: Monomial, table: GeneratorTable) -> tuple[int, Monomial]:
    """Product of two canonical monomials as ``(sign, monomial)``; sign 0 means the product vanishes."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    odd_left = 0
    for g, _ in m1:
        if table.is_odd(g):
            odd_left += 1
    out = []
    flips = 0
    i = j = 0
    while i < len(m1) and j < len(m2):
        g1, e1 = m1[i]
        g2, e2 = m2[j]
        if g1 == g2:
            if table.is_odd(g1):
                return 0, None
            out.append((g1, e1 + e2))
            i += 1
            j += 1
        elif g2 < g1:
            if table.is_odd(g2):
                flips += odd_left
            out.append((g2, e2))
            j += 1
        else:
            if table.is_odd(g1):
                odd_left -= 1
            out.append((g1, e1))
            i += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    for g, _ in m2[j:]:
        table[g]
    return (-1 if flips % 2 else 1), tuple(out)


class Element:
    """A finite rational combination of canonical monomials. Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = cls.__new__(cls)
        e._terms = terms
        e._hash = None
        return e

    @classmethod
    def one(cls) -> "Element":
        return cls._raw({ONE: Fraction(1)})

    @classmethod
    def zero(cls) -> "Element":
        return cls._raw({})

    @classmethod
    def generator(cls, gid: int, coeff=1) -> "Element":
        return cls({((gid, 1),): coeff})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "Element":
        return cls({m: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return Element.zero()
        return Element._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented  # products need a generator table, see multiply()
        return self.scale(c)

    __rmul__ = __mul__

    def generator_ids(self) -> set[int]:
        return {g for m in self._terms for g, _ in m}

    def degree(self, table: GeneratorTable) -> int | None:
        """Common degree of all monomials; None for zero or inhomogeneous elements."""
        degs = {monomial_degree(m, table) for m in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def __repr__(self):
        if not self._terms:
            return "Element(0)"
        return f"Element({self._terms!r})"


def canonical_sort_key(m: Monomial):
    return monomial_word(m)


def multiply(a: Element, b: Element, table: GeneratorTable) -> Element:
    """Graded-commutative product of two elements."""
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            sign, m = multiply_monomials(m1, m2, table)
            if not sign:
                continue
            v = out.get(m, 0) + sign * c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    if not out:
        # still reject unknown ids even when every product cancelled
        for m in list(a.monomials()) + list(b.monomials()):
            for g, _ in m:
                table[g]
    return Element._raw(out)


def product(factors: Iterable[Element], table: GeneratorTable) -> Element:
    out = Element.one()
    for f in factors:
        out = multiply(out, f, table)
    return out


def power(e: Element, k: int, table: GeneratorTable) -> Element:
    out = Element.one()
    for _ in range(k):
        out = multiply(out, e, table)
    return out


def word_element(word: Sequence[int], table: GeneratorTable, coeff=1) -> Element:
    """Element for a product of generators written in arbitrary order."""
    for g in word:
        table[g]
    sign, m = sort_word(word, table)
    if not sign:
        return Element.zero()
    return Element.monomial(m, sign * Fraction(coeff))


def normalize(e: Element, table: GeneratorTable) -> Element:
    """Re-canonicalize every monomial of ``e`` (idempotent on canonical input)."""
    out = Element.zero()
    for m, c in e.items():
        out = out + word_element(monomial_word(m), table, c)
    return out


def decompose_homogeneous(e: Element, table: GeneratorTable) -> dict[int, Element]:
    parts: dict[int, dict] = {}
    for m, c in e.items():
        parts.setdefault(monomial_degree(m, table), {})[m] = c
    return {d: Element._raw(t) for d, t in sorted(parts.items())}


def monomial_basis(table: GeneratorTable, n: int) -> list[Monomial]:
    """All canonical monomials of total degree ``n``, ordered lexicographically by word."""
    if n < 0:
        return []
    cache = table._cache.setdefault("basis", {})
    hit = cache.get(n)
    if hit is not None:
        return list(hit)
    gens = [g for g in table.generators if g.degree <= n]
    found: list[Monomial] = []

    def extend(k, remaining, acc):
        if remaining == 0:
            found.append(tuple(acc))
            return
        if k == len(gens):
            return
        g = gens[k]
        top = 1 if g.degree % 2 else remaining // g.degree
        for e in range(min(top, remaining // g.degree), -1, -1):
            if e:
                acc.append((g.id, e))
            extend(k + 1, remaining - e * g.degree, acc)
            if e:
                acc.pop()

    extend(0, n, [])
    found.sort(key=canonical_sort_key)
    cache[n] = tuple(found)
    return found



def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, table: GeneratorTable) -> str:
    parts = []
    for g, e in m:
        name = table[g].name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_element(e: Element, table: GeneratorTable) -> str:
    """Render ``e`` in the textual polynomial grammar, terms in basis order."""
    if not e:
        return "0"
    key = lambda item: (monomial_degree(item[0], table), canonical_sort_key(item[0]))
    out = []
    for m, c in sorted(e.items(), key=key):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not m:
            body = _format_coeff(mag)
        elif mag == 1:
            body = format_monomial(m, table)
        else:
            body = f"{_format_coeff(mag)}*{format_monomial(m, table)}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)
