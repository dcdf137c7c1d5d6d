"""Builders for standard input algebras and Chevalley-Eilenberg models."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cdga import FreeCDGA, PresentedCDGA, apply_differential, make_free
from .graded_algebra import Element, GeneratorTable, monomial_word, multiply, power
from .linalg import Subspace


class JacobiFailure(ValueError):
    """``triple`` holds the 0-based basis indices of a nonzero term of d^2(e^generator)."""

    def __init__(self, triple, generator, names):
        self.triple = triple
        self.generator = generator
        term = " ".join(names[i] for i in triple)
        super().__init__(f"Jacobi identity fails: d^2({names[generator]}) contains {term}")


def sphere_model(n: int) -> PresentedCDGA:
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    if n % 2:
        return PresentedCDGA(make_free([("e", n)]))
    free = make_free([("e", n)])
    return PresentedCDGA(free, (power(free.generator("e"), 2, free.table),))


def projective_model(n: int) -> PresentedCDGA:
    """Cohomology ring of complex projective n-space, Q[e]/(e^(n+1)) with |e| = 2."""
    if n < 1:
        raise ValueError("projective dimension must be >= 1")
    free = make_free([("e", 2)])
    return PresentedCDGA(free, (power(free.generator("e"), n + 1, free.table),))


def torus_model(n: int) -> FreeCDGA:
    return make_free([(f"a{i}", 1) for i in range(1, n + 1)])


def ground_field() -> FreeCDGA:
    return make_free([])


def _rename(name: str, taken: set) -> str:
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def _shift(e: Element, offset: int) -> Element:
    return Element({tuple((g + offset, x) for g, x in m): c for m, c in e.items()})


def tensor_product(A, B) -> PresentedCDGA:
    """Tensor product; B's generators follow A's and are renamed on clashes."""
    names = set(A.table.names)
    pairs = [(g.name, g.degree) for g in A.table]
    for g in B.table:
        new = _rename(g.name, names)
        names.add(new)
        pairs.append((new, g.degree))
    table = GeneratorTable.from_pairs(pairs)
    offset = len(A.table)
    d = {gid: A.d_generator(gid) for gid in range(offset)}
    for g in B.table:
        d[g.id + offset] = _shift(B.d_generator(g.id), offset)
    relations = tuple(A.relations) + tuple(_shift(r, offset) for r in B.relations)
    return PresentedCDGA(FreeCDGA(table, d), relations)


@dataclass(frozen=True)
class LieAlgebraPresentation:
    """Structure constants ``[e_i, e_j] = sum_k c[i, j][k] e_k`` stored for i < j (0-based)."""

    dimension: int
    brackets: Mapping = field(default_factory=dict)
    names: tuple = ()

    def __post_init__(self):
        clean = {}
        for (i, j), coeffs in dict(self.brackets).items():
            if not (0 <= i < self.dimension and 0 <= j < self.dimension):
                raise ValueError(f"bracket index ({i}, {j}) out of range")
            if i == j:
                if any(coeffs.values()):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            vec = {k: sign * Fraction(c) for k, c in coeffs.items() if c}
            if any(not 0 <= k < self.dimension for k in vec):
                raise ValueError("bracket value index out of range")
            if vec:
                clean[i, j] = vec
        object.__setattr__(self, "brackets", clean)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(1, self.dimension + 1)))
        if len(self.names) != self.dimension:
            raise ValueError("one name per basis vector is required")

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                if i == j:
                    continue
                sign = 1 if i < j else -1
                for k, c in self.brackets.get((min(i, j), max(i, j)), {}).items():
                    w = out.get(k, 0) + sign * a * b * c
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out


def chevalley_eilenberg(L: LieAlgebraPresentation) -> FreeCDGA:
    """Dual generators in degree one with d(e^k) = -sum_{i<j} c^k_ij e^i e^j."""
    table = GeneratorTable.from_pairs((name, 1) for name in L.names)
    d = {k: {} for k in range(L.dimension)}
    for (i, j), coeffs in L.brackets.items():
        for k, c in coeffs.items():
            m = ((i, 1), (j, 1))
            d[k][m] = d[k].get(m, 0) - c
    A = FreeCDGA(table, {k: Element(t) for k, t in d.items()})
    for k in range(L.dimension):
        dd = apply_differential(A, A.differential[k])
        if dd:
            m = min(dd.monomials(), key=monomial_word)
            raise JacobiFailure(tuple(g for g, _ in m), k, L.names)
    return A


def lie_nilpotency_class(L: LieAlgebraPresentation) -> int | None:
    """Length of the lower central series, or None when it stalls above zero."""
    n = L.dimension
    current = Subspace([{i: Fraction(1)} for i in range(n)], n)
    step = 0
    while current.dim:
        step += 1
        spanning = [L.bracket({i: Fraction(1)}, row) for i in range(n) for row in current.rows]
        nxt = Subspace(spanning, n)
        if nxt.dim == current.dim:
            return None
        current = nxt
    return step


def heisenberg_lie() -> LieAlgebraPresentation:
    return LieAlgebraPresentation(3, {(0, 1): {2: 1}}, ("a", "b", "c"))


def heisenberg_model() -> FreeCDGA:
    """Heisenberg nilmanifold model with a, b closed and d(c) = a b."""
    pairs = [("a", 1), ("b", 1), ("c", 1)]
    ab = multiply(Element.generator(0), Element.generator(1), GeneratorTable.from_pairs(pairs))
    return make_free(pairs, {"c": ab})


def filiform4_lie() -> LieAlgebraPresentation:
    """[e1, e2] = e3, [e1, e3] = e4; nilpotent of class 3."""
    return LieAlgebraPresentation(4, {(0, 1): {2: 1}, (0, 2): {3: 1}})


def heisenberg_times_line_lie() -> LieAlgebraPresentation:
    """Heisenberg algebra plus a central line; nilpotent of class 2."""
    return LieAlgebraPresentation(4, {(0, 1): {2: 1}})


def abelian_lie(n: int) -> LieAlgebraPresentation:
    return LieAlgebraPresentation(n, {})


def sl2_lie() -> LieAlgebraPresentation:
    """[h, x] = 2x, [h, y] = -2y, [x, y] = h; semisimple, so not nilpotent."""
    return LieAlgebraPresentation(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, ("h", "x", "y"))


LIBRARY = {
    "sphere": sphere_model,
    "cpn": projective_model,
    "torus": torus_model,
    "heisenberg": heisenberg_model,
    "filiform4": lambda: chevalley_eilenberg(filiform4_lie()),
    "heisenberg-x-line": lambda: chevalley_eilenberg(heisenberg_times_line_lie()),
}
