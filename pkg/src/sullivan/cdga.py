"""Differentials, finitely presented quotients, morphisms and minimality."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .graded_algebra import (
    Element,
    GeneratorTable,
    Monomial,
    decompose_homogeneous,
    format_element,
    monomial_basis,
    monomial_degree,
    monomial_word,
    multiply,
)
from .linalg import Subspace


class MissingDifferential(LookupError):
    pass


class NotFree(ValueError):
    pass


class ValidationError(ValueError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.summary())


@dataclass(frozen=True)
class FreeCDGA:
    """Free graded-commutative algebra with a differential given on generators."""

    table: GeneratorTable
    differential: Mapping[int, Element]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "differential", dict(self.differential))

    relations = ()

    @property
    def free(self) -> "FreeCDGA":
        return self

    def d_generator(self, gid: int) -> Element:
        self.table[gid]
        try:
            return self.differential[gid]
        except KeyError:
            raise MissingDifferential(self.table[gid].name) from None

    def generator(self, name: str) -> Element:
        return Element.generator(self.table.index(name))

    def __hash__(self):
        return hash((self.table, tuple(sorted(self.differential.items()))))


@dataclass(frozen=True)
class PresentedCDGA:
    """A free CDGA modulo the ideal generated by homogeneous relations."""

    free: FreeCDGA
    relations: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))

    @property
    def table(self) -> GeneratorTable:
        return self.free.table

    @property
    def differential(self) -> Mapping[int, Element]:
        return self.free.differential

    def d_generator(self, gid: int) -> Element:
        return self.free.d_generator(gid)

    def generator(self, name: str) -> Element:
        return self.free.generator(name)

    def __hash__(self):
        return hash((self.free, self.relations))


def make_free(pairs: Sequence[tuple[str, int]], differential: Mapping[str, Element] | None = None) -> FreeCDGA:
    """Build a free CDGA from ``(name, degree)`` pairs; unlisted differentials are zero."""
    table = GeneratorTable.from_pairs(pairs)
    differential = differential or {}
    d = {g.id: differential.get(g.name, Element.zero()) for g in table}
    return FreeCDGA(table, d)


# -- quotient normal forms -------------------------------------------------


@dataclass
class QuotientDegree:
    degree: int
    basis: list  # all monomials of this degree
    index: dict  # monomial -> column
    ideal: Subspace
    normal_basis: list  # monomials not eliminated by the ideal

    def to_vector(self, e: Element) -> dict:
        return {self.index[m]: c for m, c in e.items()}

    def from_vector(self, vec: dict) -> Element:
        return Element({self.basis[i]: c for i, c in vec.items()})


def quotient_degree(A, n: int) -> QuotientDegree:
    cache = A._cache.setdefault("quotient", {})
    hit = cache.get(n)
    if hit is not None:
        return hit
    table = A.table
    basis = monomial_basis(table, n)
    index = {m: i for i, m in enumerate(basis)}
    spanning = []
    for r in A.relations:
        rd = r.degree(table)
        if rd is None or rd > n:
            continue
        for m in monomial_basis(table, n - rd):
            prod = multiply(Element.monomial(m), r, table)
            if prod:
                spanning.append({index[mm]: c for mm, c in prod.items()})
    ideal = Subspace(spanning, len(basis))
    pivots = set(ideal.pivots)
    normal = [m for i, m in enumerate(basis) if i not in pivots]
    q = QuotientDegree(n, basis, index, ideal, normal)
    cache[n] = q
    return q


def normal_form(A, e: Element) -> Element:
    """Canonical representative of ``e`` modulo the relation ideal."""
    if not A.relations or not e:
        return e
    out = Element.zero()
    for n, part in decompose_homogeneous(e, A.table).items():
        q = quotient_degree(A, n)
        out = out + q.from_vector(q.ideal.reduce(q.to_vector(part)))
    return out


def _d_monomial(A, m: Monomial) -> Element:
    cache = A._cache.setdefault("dmono", {})
    hit = cache.get(m)
    if hit is not None:
        return hit
    table = A.table
    word = monomial_word(m)
    out = Element.zero()
    sign_deg = 0
    for i, g in enumerate(word):
        dg = A.d_generator(g)
        if dg:
            prefix = _word_monomial(word[:i])
            suffix = _word_monomial(word[i + 1 :])
            term = multiply(multiply(Element.monomial(prefix), dg, table), Element.monomial(suffix), table)
            out = out + (term if sign_deg % 2 == 0 else -term)
        sign_deg += table.degree(g)
    cache[m] = out
    return out


def _word_monomial(word) -> Monomial:
    # word is a sorted sub-word of a canonical monomial, so no sign arises
    out = []
    for g in word:
        if out and out[-1][0] == g:
            out[-1][1] += 1
        else:
            out.append([g, 1])
    return tuple((g, e) for g, e in out)


def free_differential(A, e: Element) -> Element:
    """Leibniz extension of the generator differential, without quotient reduction."""
    out = Element.zero()
    for m, c in e.items():
        if m:
            out = out + _d_monomial(A, m).scale(c)
    return out


def apply_differential(A, e: Element) -> Element:
    return normal_form(A, free_differential(A, e))


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Issue:
    kind: str
    subject: str
    detail: str = ""

    def __str__(self):
        return f"{self.kind}: {self.subject}" + (f" ({self.detail})" if self.detail else "")


@dataclass
class ValidationReport:
    max_degree: int
    issues: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def kinds(self) -> set[str]:
        return {i.kind for i in self.issues}

    def add(self, kind, subject, detail=""):
        self.issues.append(Issue(kind, subject, detail))

    def summary(self) -> str:
        if self.ok:
            return f"all checks passed through degree {self.max_degree}"
        return "; ".join(str(i) for i in self.issues)


def validate(A, max_degree: int) -> ValidationReport:
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    table = A.table
    report = ValidationReport(max_degree)

    for r_index, r in enumerate(A.relations):
        label = f"relation {r_index}: {format_element(r, table)}"
        if not r:
            report.notes.append(f"{label} is zero")
            continue
        deg = r.degree(table)
        if deg is None:
            report.add("RelationNotHomogeneous", label)
        elif deg < 2:
            report.add("RelationDegreeTooLow", label, f"degree {deg}")

    relations_ok = report.ok
    checked_d = {}
    for g in table:
        if g.degree > max_degree:
            continue
        if g.id not in A.differential:
            report.add("MissingDifferential", g.name)
            continue
        dg = A.differential[g.id]
        bad = [m for m in dg.monomials() if monomial_degree(m, table) != g.degree + 1]
        if bad:
            report.add("DegreeMismatch", g.name, f"d({g.name}) = {format_element(dg, table)} must have degree {g.degree + 1}")
            continue
        checked_d[g.id] = dg

    if report.kinds() & {"MissingDifferential"}:
        return report

    if A.relations and relations_ok:
        for g_id, dg in checked_d.items():
            reduced = normal_form(A, dg)
            if reduced != dg:
                name = table[g_id].name
                report.notes.append(
                    f"d({name}) = {format_element(dg, table)} reduces to {format_element(reduced, table)} in the quotient"
                )
        for r_index, r in enumerate(A.relations):
            deg = r.degree(table)
            if not r or deg > max_degree:
                continue
            dr = normal_form(A, free_differential(A, r))
            if dr:
                report.add(
                    "IdealNotPreserved",
                    f"relation {r_index}: {format_element(r, table)}",
                    f"d = {format_element(free_differential(A, r), table)} is not in the ideal",
                )

    if "DegreeMismatch" in report.kinds():
        return report
    for g_id, dg in checked_d.items():
        dd = apply_differential(A, dg)
        if dd:
            name = table[g_id].name
            report.add("DSquaredNonzero", name, f"d(d({name})) = {format_element(dd, table)}")
    return report


# -- morphisms -------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """Multiplicative map determined by generator images in the target."""

    source: object
    target: object
    images: Mapping[int, Element]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "images", dict(self.images))

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.images.items()))))


def identity_morphism(A) -> Morphism:
    return Morphism(A, A, {g.id: Element.generator(g.id) for g in A.table})


def _image_monomial(f: Morphism, m: Monomial) -> Element:
    hit = f._cache.get(m)
    if hit is not None:
        return hit
    tt = f.target.table
    out = Element.one()
    for g in monomial_word(m):
        out = multiply(out, f.images[g], tt)
        if not out:
            break
    out = normal_form(f.target, out)
    f._cache[m] = out
    return out


def apply_morphism(f: Morphism, e: Element) -> Element:
    out = Element.zero()
    for m, c in e.items():
        out = out + _image_monomial(f, m).scale(c)
    return normal_form(f.target, out)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """The morphism ``g o f``."""
    return Morphism(f.source, g.target, {i: apply_morphism(g, img) for i, img in f.images.items()})


def validate_morphism(f: Morphism, max_degree: int) -> ValidationReport:
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    src, tgt = f.source, f.target
    st, tt = src.table, tgt.table
    report = ValidationReport(max_degree)
    usable = True
    for g in st:
        if g.degree > max_degree:
            continue
        img = f.images.get(g.id)
        if img is None:
            report.add("MissingImage", g.name)
            usable = False
            continue
        try:
            ok = all(monomial_degree(m, tt) == g.degree for m in img.monomials())
        except KeyError:
            report.add("UnknownGenerator", g.name, "image uses a generator absent from the target")
            usable = False
            continue
        if not ok:
            report.add("DegreeMismatch", g.name, f"image {format_element(img, tt)} is not of degree {g.degree}")
            usable = False
    if not usable:
        return report
    for r_index, r in enumerate(src.relations):
        if r.degree(st) is not None and r.degree(st) <= max_degree:
            if apply_morphism(f, r):
                report.add("RelationNotPreserved", f"relation {r_index}: {format_element(r, st)}")
    for g in st:
        if g.degree > max_degree:
            continue
        lhs = apply_morphism(f, apply_differential(src, Element.generator(g.id)))
        rhs = apply_differential(tgt, f.images[g.id])
        if lhs != rhs:
            report.add(
                "NotChainMap",
                g.name,
                f"f(d {g.name}) = {format_element(lhs, tt)} but d(f {g.name}) = {format_element(rhs, tt)}",
            )
    return report


# -- minimality ------------------------------------------------------------


@dataclass(frozen=True)
class OrderProblem:
    kind: str  # "degree" or "cycle"
    nodes: tuple


def layered_order(degrees: Mapping[int, int], deps: Mapping[int, set], placed_before=()):
    """Order nodes by non-decreasing degree so each node follows all of its dependencies.

    Within a degree the order is a topological sort that prefers smaller ids.
    Returns ``(order, None)`` or ``(None, OrderProblem)``.
    """
    placed = set(placed_before)
    order: list[int] = []
    for deg in sorted(set(degrees.values())):
        layer = sorted(k for k in degrees if degrees[k] == deg)
        layer_set = set(layer)
        waiting = {}
        for k in layer:
            inside = set()
            for l in deps.get(k, ()):
                if l in placed:
                    continue
                if l in layer_set:
                    inside.add(l)
                else:
                    return None, OrderProblem("degree", (l, k))
            waiting[k] = inside
        users: dict[int, list] = {k: [] for k in layer}
        for k, ins in waiting.items():
            for l in ins:
                users[l].append(k)
        ready = [k for k in layer if not waiting[k]]
        heapq.heapify(ready)
        count = 0
        while ready:
            k = heapq.heappop(ready)
            order.append(k)
            placed.add(k)
            count += 1
            for u in users[k]:
                waiting[u].discard(k)
                if not waiting[u]:
                    heapq.heappush(ready, u)
        if count < len(layer):
            return None, OrderProblem("cycle", _find_cycle(waiting))
    return order, None


def _find_cycle(waiting) -> tuple:
    stuck = {k: v for k, v in waiting.items() if v}
    start = min(stuck)
    path, seen = [], {}
    node = start
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        node = min(stuck[node])
    return tuple(path[seen[node]:])


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    ordering: tuple | None
    decomposable: bool
    linear_terms: tuple = ()
    problem: OrderProblem | None = None
    names: tuple = ()

    def ordering_names(self) -> list[str] | None:
        if self.ordering is None:
            return None
        return [self.names[i] for i in self.ordering]

    def problem_names(self) -> tuple:
        if self.problem is None:
            return ()
        return tuple(self.names[i] for i in self.problem.nodes)


def check_minimality(A) -> MinimalityVerdict:
    """Decide minimality of a free CDGA.

    ``minimal`` is the well-ordering condition: generators can be ordered with
    non-decreasing degree so that each differential only involves earlier
    generators. ``decomposable`` is the separate test that no differential has
    a linear term. Both are reported because they differ for some algebras
    generated in degree one.
    """
    if A.relations:
        raise NotFree("minimality is only defined here for free algebras (relations present)")
    table = A.table
    degrees = {g.id: g.degree for g in table}
    deps = {}
    linear = []
    for g in table:
        dg = A.d_generator(g.id)
        deps[g.id] = dg.generator_ids()
        if any(len(monomial_word(m)) < 2 for m in dg.monomials()):
            linear.append(g.name)
    order, problem = layered_order(degrees, deps)
    return MinimalityVerdict(
        minimal=order is not None,
        ordering=tuple(order) if order is not None else None,
        decomposable=not linear,
        linear_terms=tuple(linear),
        problem=problem,
        names=tuple(table.names),
    )
