"""Degreewise cohomology of presented CDGAs and maps induced by morphisms.

All vectors live in the coordinates of the quotient normal basis of a degree.
Class representatives are the RREF rows of the kernel after reducing it
modulo the image, so every choice is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cdga import Morphism, apply_differential, apply_morphism, normal_form, quotient_degree
from .graded_algebra import Element
from .linalg import RationalMatrix, Subspace, nullspace, solve


class NoSolution(ArithmeticError):
    """The requested element is not in the image of the differential."""


class NotACocycle(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: Element


@dataclass
class DegreeData:
    """Everything needed to work with cohomology in one degree."""

    degree: int
    basis: list  # quotient normal basis monomials
    index: dict
    d_matrix: RationalMatrix  # d: degree n -> degree n+1, in normal-basis coordinates
    kernel: list
    image: Subspace
    classes: Subspace

    @property
    def betti(self) -> int:
        return self.classes.dim

    def to_vector(self, e: Element) -> dict:
        try:
            return {self.index[m]: c for m, c in e.items()}
        except KeyError as exc:
            raise ValueError(f"element is not in normal form of degree {self.degree}") from exc

    def from_vector(self, vec: dict) -> Element:
        return Element({self.basis[i]: c for i, c in vec.items()})

    def representatives(self) -> list[Element]:
        return [self.from_vector(row) for row in self.classes.rows]

    def class_coordinates(self, e: Element) -> list[Fraction]:
        """Coordinates of the class of the cocycle ``e`` in the representative basis."""
        reduced = self.image.reduce(self.to_vector(e))
        coords = self.classes.coordinates(reduced)
        if coords is None:
            raise NotACocycle(f"element of degree {self.degree} is not a cocycle")
        return coords


def _normal_index(A, n):
    if n < 0:
        return [], {}
    basis = quotient_degree(A, n).normal_basis
    return basis, {m: i for i, m in enumerate(basis)}


def differential_matrix(A, n: int) -> RationalMatrix:
    """Matrix of d from degree n to degree n+1 in normal-basis coordinates."""
    cache = A._cache.setdefault("dmatrix", {})
    hit = cache.get(n)
    if hit is not None:
        return hit
    src, _ = _normal_index(A, n)
    tgt, tindex = _normal_index(A, n + 1)
    cols = []
    for m in src:
        de = apply_differential(A, Element.monomial(m))
        cols.append({tindex[mm]: c for mm, c in de.items()})
    mat = RationalMatrix.from_column_vectors(cols, len(tgt))
    cache[n] = mat
    return mat


def degree_data(A, n: int) -> DegreeData:
    cache = A._cache.setdefault("cohomology", {})
    hit = cache.get(n)
    if hit is not None:
        return hit
    basis, index = _normal_index(A, n)
    dn = differential_matrix(A, n)
    kernel = nullspace(dn)
    if n >= 1:
        image_vectors = differential_matrix(A, n - 1).column_vectors()
    else:
        image_vectors = []
    image = Subspace(image_vectors, len(basis))
    classes = Subspace([image.reduce(z) for z in kernel], len(basis))
    data = DegreeData(n, basis, index, dn, kernel, image, classes)
    if len(kernel) - image.dim != classes.dim:
        raise ArithmeticError(f"inconsistent ranks in degree {n}")
    cache[n] = data
    return data


def cohomology(A, n: int) -> tuple[int, list[CohomologyClass]]:
    """Betti number and deterministic class basis in degree ``n``."""
    data = degree_data(A, n)
    return data.betti, [CohomologyClass(n, rep) for rep in data.representatives()]


def betti_numbers(A, max_degree: int) -> list[int]:
    return [degree_data(A, n).betti for n in range(max_degree + 1)]


@dataclass
class CohomologySummary:
    max_degree: int
    betti: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)


def cohomology_summary(A, max_degree: int) -> CohomologySummary:
    summary = CohomologySummary(max_degree)
    for n in range(max_degree + 1):
        b, classes = cohomology(A, n)
        summary.betti[n] = b
        summary.classes[n] = classes
    return summary


@dataclass
class InducedMap:
    degree: int
    matrix: RationalMatrix  # target betti x source betti
    kernel: list  # source cocycles spanning the kernel
    cokernel: list  # target representatives spanning a complement of the image

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    @property
    def injective(self) -> bool:
        return not self.kernel

    @property
    def surjective(self) -> bool:
        return not self.cokernel

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective


def induced_map(f: Morphism, n: int) -> InducedMap:
    src = degree_data(f.source, n)
    tgt = degree_data(f.target, n)
    src_reps = src.representatives()
    tgt_reps = tgt.representatives()
    columns = []
    for rep in src_reps:
        img = apply_morphism(f, rep)
        coords = tgt.class_coordinates(img)
        columns.append({i: c for i, c in enumerate(coords) if c})
    matrix = RationalMatrix.from_column_vectors(columns, tgt.betti)
    kernel = []
    for v in nullspace(matrix):
        z = Element.zero()
        for i, c in sorted(v.items()):
            z = z + src_reps[i].scale(c)
        kernel.append(z)
    image = Subspace(columns, tgt.betti)
    cokernel = [tgt_reps[i] for i in image.complement_units()]
    return InducedMap(n, matrix, kernel, cokernel)


def solve_in_degree(A, target: Element, n: int) -> Element:
    """Some ``e`` of degree ``n`` with ``d e = target``; raises NoSolution if none exists."""
    target = normal_form(A, target)
    if not target:
        return Element.zero()
    dn = differential_matrix(A, n)
    _, tindex = _normal_index(A, n + 1)
    try:
        b = {tindex[m]: c for m, c in target.items()}
    except KeyError:
        raise NoSolution(f"target is not homogeneous of degree {n + 1}") from None
    x = solve(dn, b)
    if x is None:
        raise NoSolution(f"target is not exact in degree {n + 1}")
    basis, _ = _normal_index(A, n)
    return Element({basis[i]: c for i, c in x.items()})
