"""Twisted tensor products of a base model with a fiber model.

The total algebra has the base generators first, then the fiber generators.
Base generators keep the base differential; each fiber generator may be sent
to any element of the total algebra of one degree higher.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .cdga import (
    FreeCDGA,
    ValidationReport,
    check_minimality,
    layered_order,
    validate,
)
from .graded_algebra import Element, GeneratorTable, format_element


class NotMinimal(ValueError):
    pass


@dataclass(frozen=True)
class KSExtension:
    base: FreeCDGA
    fiber: FreeCDGA
    total: FreeCDGA

    @property
    def base_ids(self) -> range:
        return range(len(self.base.table))

    @property
    def fiber_ids(self) -> range:
        return range(len(self.base.table), len(self.total.table))


def _shift(e: Element, offset: int) -> Element:
    return Element({tuple((g + offset, x) for g, x in m): c for m, c in e.items()})


def total_table(base: FreeCDGA, fiber: FreeCDGA) -> GeneratorTable:
    clash = set(base.table.names) & set(fiber.table.names)
    if clash:
        raise ValueError(f"base and fiber share generator names: {sorted(clash)}")
    return GeneratorTable.from_pairs(
        [(g.name, g.degree) for g in base.table] + [(g.name, g.degree) for g in fiber.table]
    )


def ks_extension(base: FreeCDGA, fiber: FreeCDGA, twist: Mapping[str, Element] | None = None) -> KSExtension:
    """Build the extension; ``twist`` maps fiber names to elements over ``total_table``.

    Fiber generators missing from ``twist`` keep their own differential.
    """
    if base.relations or fiber.relations:
        raise ValueError("base and fiber must be free")
    table = total_table(base, fiber)
    offset = len(base.table)
    twist = dict(twist or {})
    unknown = set(twist) - set(fiber.table.names)
    if unknown:
        raise ValueError(f"twist names are not fiber generators: {sorted(unknown)}")
    d = {g.id: base.d_generator(g.id) for g in base.table}
    for g in fiber.table:
        if g.name in twist:
            d[g.id + offset] = twist[g.name]
        else:
            d[g.id + offset] = _shift(fiber.d_generator(g.id), offset)
    return KSExtension(base, fiber, FreeCDGA(table, d))


def validate_extension(E: KSExtension, max_degree: int | None = None) -> ValidationReport:
    """D squares to zero, degrees are right, and D restricts to the base differential."""
    if max_degree is None:
        max_degree = max((g.degree for g in E.total.table), default=1)
    report = validate(E.total, max(max_degree, 1))
    for gid in E.base_ids:
        if E.total.differential[gid] != E.base.differential[gid]:
            report.add("BaseDifferentialChanged", E.base.table[gid].name)
    return report


@dataclass(frozen=True)
class TriangularityResult:
    order: tuple | None  # fiber generator names
    problem: str = ""
    nodes: tuple = ()

    @property
    def ok(self) -> bool:
        return self.order is not None


def check_triangularity(E: KSExtension) -> TriangularityResult:
    """Find a degree-monotone order of the fiber generators in which every
    D(v) involves only base generators and earlier fiber generators."""
    table = E.total.table
    fiber = set(E.fiber_ids)
    degrees = {g: table.degree(g) for g in fiber}
    deps = {g: E.total.differential[g].generator_ids() & fiber for g in fiber}
    order, problem = layered_order(degrees, deps)
    if order is None:
        names = tuple(table[g].name for g in problem.nodes)
        kind = "NoValidOrder: dependency cycle" if problem.kind == "cycle" else "NoValidOrder: dependency on higher degree"
        return TriangularityResult(None, kind, names)
    return TriangularityResult(tuple(table[g].name for g in order))


@dataclass
class TensorMinimalityVerdict:
    minimal: bool
    order: tuple | None  # global generator names, base first
    base_in_degree_one: bool
    fiber_simply_connected: bool
    triangularity: TriangularityResult
    fallback: bool = False
    flags: list = field(default_factory=list)


def _respects(order, A: FreeCDGA) -> bool:
    seen = set()
    last = 0
    for g in order:
        deg = A.table.degree(g)
        if deg < last or not A.differential[g].generator_ids() <= seen:
            return False
        seen.add(g)
        last = deg
    return True


def check_tensor_minimality(E: KSExtension) -> TensorMinimalityVerdict:
    """Minimality of the total algebra.

    Under the standing hypotheses (base generated in degree one, fiber with no
    generators of degree <= 1, triangular twist) the base order is followed
    by the fiber order and the result is checked directly. Otherwise the
    general minimality check runs on the total algebra and the failing
    hypothesis is flagged.
    """
    table = E.total.table
    base_deg1 = all(g.degree == 1 for g in E.base.table)
    fiber_sc = all(g.degree >= 2 for g in E.fiber.table)
    tri = check_triangularity(E)
    flags = []
    if not base_deg1:
        flags.append("base has generators of degree > 1")
    if not fiber_sc:
        flags.append("fiber not simply-connected (has generators of degree <= 1)")
    if not tri.ok:
        flags.append(tri.problem)
    if not flags:
        base_verdict = check_minimality(E.base)
        if base_verdict.minimal:
            order = list(base_verdict.ordering) + [table.index(n) for n in tri.order]
            ok = _respects(order, E.total)
            return TensorMinimalityVerdict(
                ok, tuple(table[g].name for g in order) if ok else None, base_deg1, fiber_sc, tri, False, flags
            )
        flags.append("base is not minimal")
    general = check_minimality(E.total)
    return TensorMinimalityVerdict(
        general.minimal,
        tuple(general.ordering_names()) if general.minimal else None,
        base_deg1,
        fiber_sc,
        tri,
        True,
        flags,
    )


def total_space_dims(E: KSExtension, max_degree: int, verdict: TensorMinimalityVerdict | None = None) -> dict:
    """Generator counts of the total algebra in degrees 2..max_degree."""
    verdict = verdict or check_tensor_minimality(E)
    if not verdict.minimal:
        raise NotMinimal("the twisted tensor product is not minimal")
    counts = E.total.table.count_by_degree()
    return {k: counts.get(k, 0) for k in range(2, max_degree + 1)}


def describe_twist(E: KSExtension) -> dict:
    table = E.total.table
    return {table[g].name: format_element(E.total.differential[g], table) for g in E.fiber_ids}
