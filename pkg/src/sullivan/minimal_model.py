"""Inductive construction of minimal models by adding and killing cohomology.

Stage ``k`` holds a free minimal CDGA ``M`` with a morphism ``rho: M -> A``
that is an isomorphism on cohomology through degree ``k`` and injective in
degree ``k + 1``. The next stage adjoins closed generators for the cokernel
in degree ``k + 1`` and then non-closed generators of degree ``k + 1`` that
kill the kernel in degree ``k + 2``. When degree-one generators are present
the killing can produce new kernel, so it is repeated up to a cap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cdga import (
    FreeCDGA,
    Morphism,
    ValidationError,
    apply_morphism,
    check_minimality,
    validate,
)
from .cohomology import NoSolution, degree_data, induced_map, solve_in_degree
from .graded_algebra import Element, GeneratorTable

log = logging.getLogger(__name__)

DEFAULT_KILL_CAP = 16


class ConstructionError(RuntimeError):
    pass


class PreconditionViolated(ConstructionError):
    pass


class InternalError(ConstructionError):
    pass


class NonConnectedTarget(ValueError):
    pass


class KillCapExceeded(ConstructionError):
    def __init__(self, degree: int, kernel_dim: int, cap: int):
        self.degree = degree
        self.kernel_dim = kernel_dim
        self.cap = cap
        super().__init__(
            f"kernel in degree {degree} still has dimension {kernel_dim} after {cap} kill iteration(s)"
        )


@dataclass(frozen=True)
class StageLog:
    action: str  # "add" or "kill"
    degree: int  # cohomological degree acted on
    round: int
    added: tuple  # names of adjoined generators
    dimension_before: int  # cokernel dim for add, kernel dim for kill
    dimension_after: int

    def as_dict(self) -> dict:
        return {
            "action": self.action,
            "degree": self.degree,
            "round": self.round,
            "added": list(self.added),
            "dimension_before": self.dimension_before,
            "dimension_after": self.dimension_after,
        }


@dataclass(frozen=True)
class ModelStage:
    model: FreeCDGA
    rho: Morphism
    degree: int = 0
    kill_rounds: tuple = ()  # ((degree, rounds), ...)
    log: tuple = ()


def initial_stage(target) -> ModelStage:
    """The ground field mapping to ``target`` by the unit."""
    empty = FreeCDGA(GeneratorTable(()), {})
    return ModelStage(empty, Morphism(empty, target, {}), 0)


def _extend(stage: ModelStage, new: list[tuple[str, int, Element, Element]]) -> tuple[FreeCDGA, Morphism]:
    """Adjoin ``(name, degree, differential, image)`` generators to the stage."""
    model = stage.model
    table = model.table.with_generators((name, deg) for name, deg, _, _ in new)
    d = dict(model.differential)
    images = dict(stage.rho.images)
    start = len(model.table)
    for offset, (_, _, dy, img) in enumerate(new):
        d[start + offset] = dy
        images[start + offset] = img
    new_model = FreeCDGA(table, d)
    return new_model, Morphism(new_model, stage.rho.target, images)


def add_cohomology(stage: ModelStage, degree: int) -> ModelStage:
    """Adjoin closed generators so that ``rho*`` becomes onto in ``degree``."""
    before = induced_map(stage.rho, degree)
    if not before.injective:
        raise PreconditionViolated(f"rho* is not injective in degree {degree} before adding cohomology")
    if before.surjective:
        entry = StageLog("add", degree, 1, (), 0, 0)
        return ModelStage(stage.model, stage.rho, stage.degree, stage.kill_rounds, stage.log + (entry,))
    new = []
    for i, rep in enumerate(before.cokernel, start=1):
        new.append((f"x_{degree}_{i}", degree, Element.zero(), rep))
    model, rho = _extend(stage, new)
    after = induced_map(rho, degree)
    if not after.isomorphism:
        raise InternalError(f"adding cohomology did not produce an isomorphism in degree {degree}")
    entry = StageLog("add", degree, 1, tuple(n for n, *_ in new), len(before.cokernel), len(after.cokernel))
    log.debug("added %d closed generator(s) in degree %d", len(new), degree)
    return ModelStage(model, rho, stage.degree, stage.kill_rounds, stage.log + (entry,))


def kill_kernel(stage: ModelStage, degree: int, round: int = 1) -> ModelStage:
    """Adjoin generators of ``degree - 1`` whose differentials kill ``ker rho*`` in ``degree``."""
    if degree < 2:
        raise PreconditionViolated("kernels are killed in degrees >= 2")
    before = induced_map(stage.rho, degree)
    if before.injective:
        return stage
    target = stage.rho.target
    new = []
    for j, z in enumerate(before.kernel, start=1):
        try:
            b = solve_in_degree(target, apply_morphism(stage.rho, z), degree - 1)
        except NoSolution as exc:
            raise InternalError(f"image of a kernel class in degree {degree} is not exact") from exc
        new.append((f"y_{degree - 1}_{j}_{round}", degree - 1, z, b))
    model, rho = _extend(stage, new)
    after = induced_map(rho, degree)
    entry = StageLog("kill", degree, round, tuple(n for n, *_ in new), len(before.kernel), len(after.kernel))
    log.debug("kill round %d in degree %d: kernel %d -> %d", round, degree, len(before.kernel), len(after.kernel))
    return ModelStage(model, rho, stage.degree, stage.kill_rounds, stage.log + (entry,))


@dataclass
class QuasiIsoDegree:
    degree: int
    source_betti: int
    target_betti: int
    rank: int
    injective: bool
    surjective: bool

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective


@dataclass
class VerificationReport:
    max_degree: int
    degrees: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(d.isomorphism for d in self.degrees)

    def iso_through(self) -> int:
        """Largest n such that rho* is an isomorphism in all degrees <= n (-1 if none)."""
        last = -1
        for d in self.degrees:
            if not d.isomorphism:
                break
            last = d.degree
        return last

    def first_failure(self) -> QuasiIsoDegree | None:
        return next((d for d in self.degrees if not d.isomorphism), None)

    def at(self, n: int) -> QuasiIsoDegree:
        return self.degrees[n]


def verify_quasi_isomorphism(f: Morphism, max_degree: int) -> VerificationReport:
    report = VerificationReport(max_degree)
    for n in range(max_degree + 1):
        m = induced_map(f, n)
        report.degrees.append(
            QuasiIsoDegree(n, m.matrix.cols, m.matrix.rows, m.rank, m.injective, m.surjective)
        )
    return report


@dataclass
class MinimalModelResult:
    model: FreeCDGA
    rho: Morphism
    max_degree: int
    dims: dict  # degree -> number of generators, 1..max_degree
    diagnostics: list
    verification: VerificationReport
    mono_next: bool  # rho* injective in degree max_degree + 1

    def generators_of_degree(self, k: int) -> list[str]:
        return [g.name for g in self.model.table if g.degree == k]


def construct_minimal_model(A, max_degree: int, kill_cap: int = DEFAULT_KILL_CAP) -> MinimalModelResult:
    """Build the minimal model of ``A`` with generators in degrees ``<= max_degree``."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if kill_cap < 1:
        raise ValueError("kill_cap must be >= 1")
    report = validate(A, max_degree + 2)
    if not report.ok:
        raise ValidationError(report)
    if degree_data(A, 0).betti != 1:
        raise NonConnectedTarget("H^0 of the target is not one-dimensional")

    stage = initial_stage(A)
    for k in range(max_degree):
        stage = add_cohomology(stage, k + 1)
        kill_degree = k + 2
        rounds = 0
        while True:
            kernel = induced_map(stage.rho, kill_degree).kernel
            if not kernel:
                break
            if rounds == kill_cap:
                raise KillCapExceeded(kill_degree, len(kernel), kill_cap)
            rounds += 1
            stage = kill_kernel(stage, kill_degree, rounds)
            if not stage.model.table.count_by_degree().get(1) and stage.log[-1].dimension_after:
                raise InternalError(f"kill in degree {kill_degree} left kernel without degree-one generators")
        stage = ModelStage(
            stage.model,
            stage.rho,
            k + 1,
            stage.kill_rounds + ((kill_degree, rounds),),
            stage.log,
        )
        if not check_minimality(stage.model).minimal:
            raise InternalError(f"stage {k + 1} model is not minimal")

    verification = verify_quasi_isomorphism(stage.rho, max_degree)
    mono_next = induced_map(stage.rho, max_degree + 1).injective
    if verification.iso_through() < max_degree - 1 or not verification.at(max_degree).injective:
        raise InternalError("constructed rho fails the quasi-isomorphism audit")
    counts = stage.model.table.count_by_degree()
    dims = {k: counts.get(k, 0) for k in range(1, max_degree + 1)}
    return MinimalModelResult(
        stage.model, stage.rho, max_degree, dims, list(stage.log), verification, mono_next
    )


HOMOTOPY_HYPOTHESES = (
    "dims are counts of minimal-model generators; they equal dim Hom(pi_k(X), Q) for k >= 2 "
    "when the input models a path-connected nilpotent CW complex X with finitely generated homotopy groups",
    "more generally when each pi_k(X), k >= 2, is a finitely generated nilpotent pi_1(X)-module and the "
    "minimal model of K(pi_1(X), 1) is generated in degree one",
    "only degrees <= max_degree are resolved by the truncated construction",
)


@dataclass(frozen=True)
class HomotopyDims:
    dims: dict
    hypotheses: tuple = HOMOTOPY_HYPOTHESES


def rational_homotopy_dims(result: MinimalModelResult) -> HomotopyDims:
    return HomotopyDims({k: v for k, v in result.dims.items() if k >= 2})
