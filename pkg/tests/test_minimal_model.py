import pytest
from hypothesis import given, settings, strategies as st

from sullivan.cdga import Morphism, check_minimality, validate, validate_morphism
from sullivan.cohomology import betti_numbers, induced_map
from sullivan.description import model_to_description, parse_model
from sullivan.graded_algebra import Element
from sullivan.minimal_model import (
    KillCapExceeded,
    PreconditionViolated,
    add_cohomology,
    construct_minimal_model,
    initial_stage,
    kill_kernel,
    rational_homotopy_dims,
    verify_quasi_isomorphism,
)
from sullivan.models_library import (
    chevalley_eilenberg,
    filiform4_lie,
    ground_field,
    heisenberg_model,
    projective_model,
    sphere_model,
    tensor_product,
    torus_model,
)


def dims(A, N, **kw):
    return construct_minimal_model(A, N, **kw).dims


def test_sphere_two_steps():
    S2 = sphere_model(2)
    stage = add_cohomology(initial_stage(S2), 1)
    assert stage.model.table.names == []
    stage = add_cohomology(stage, 2)
    assert stage.model.table.names == ["x_2_1"]
    assert stage.rho.images[0] == S2.generator("e")
    assert not induced_map(stage.rho, 4).injective
    stage = kill_kernel(stage, 4)
    assert stage.model.table.names == ["x_2_1", "y_3_1_1"]
    assert stage.model.d_generator(1) == Element.monomial(((0, 2),))
    assert stage.rho.images[1].is_zero()
    assert stage.log[-1].dimension_before == 1 and stage.log[-1].dimension_after == 0


def test_kill_kernel_precondition():
    with pytest.raises(PreconditionViolated):
        kill_kernel(initial_stage(sphere_model(2)), 1)


@pytest.mark.parametrize(
    "A, N, expected",
    [
        (sphere_model(2), 6, {1: 0, 2: 1, 3: 1, 4: 0, 5: 0, 6: 0}),
        (sphere_model(3), 6, {1: 0, 2: 0, 3: 1, 4: 0, 5: 0, 6: 0}),
        (sphere_model(4), 8, {1: 0, 2: 0, 3: 0, 4: 1, 5: 0, 6: 0, 7: 1, 8: 0}),
        (projective_model(3), 8, {1: 0, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0, 7: 1, 8: 0}),
        (torus_model(3), 5, {1: 3, 2: 0, 3: 0, 4: 0, 5: 0}),
        (heisenberg_model(), 4, {1: 3, 2: 0, 3: 0, 4: 0}),
        (ground_field(), 4, {1: 0, 2: 0, 3: 0, 4: 0}),
    ],
)
def test_minimal_model_dims(A, N, expected):
    result = construct_minimal_model(A, N)
    assert result.dims == expected
    assert check_minimality(result.model).minimal
    assert validate_morphism(result.rho, N).ok
    assert result.verification.ok and result.mono_next


def test_contractible_target_has_trivial_model():
    A = parse_model({"generators": [{"name": "t", "degree": 2}, {"name": "s", "degree": 3}], "differential": {"t": "s"}})
    result = construct_minimal_model(A, 5)
    assert result.model.table.names == []


def test_filiform_needs_two_kill_rounds():
    A = chevalley_eilenberg(filiform4_lie())
    result = construct_minimal_model(A, 4)
    assert result.dims[1] == 4
    kills = [e for e in result.diagnostics if e.action == "kill" and e.degree == 2]
    assert [(e.round, e.dimension_before, e.dimension_after) for e in kills] == [(1, 1, 1), (2, 1, 0)]
    with pytest.raises(KillCapExceeded) as info:
        construct_minimal_model(A, 4, kill_cap=1)
    assert (info.value.degree, info.value.kernel_dim, info.value.cap) == (2, 1, 1)


def test_wedge_of_circles_hits_the_cap():
    A = parse_model(
        {"generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}], "relations": ["a*b"]}
    )
    with pytest.raises(KillCapExceeded) as info:
        construct_minimal_model(A, 2, kill_cap=4)
    assert info.value.degree == 2


def test_product_of_spheres():
    A = tensor_product(sphere_model(2), sphere_model(3))
    assert dims(A, 6) == {1: 0, 2: 1, 3: 2, 4: 0, 5: 0, 6: 0}


def test_homotopy_dims():
    h = rational_homotopy_dims(construct_minimal_model(sphere_model(2), 6))
    assert h.dims == {2: 1, 3: 1, 4: 0, 5: 0, 6: 0}
    assert h.hypotheses


def test_verify_detects_non_quasi_isomorphism(heisenberg, torus2):
    f = Morphism(torus2, heisenberg, {0: heisenberg.generator("a"), 1: heisenberg.generator("b")})
    report = verify_quasi_isomorphism(f, 3)
    assert not report.ok
    assert report.iso_through() == 1
    assert report.first_failure().degree == 2


def test_model_of_minimal_model_is_itself():
    first = construct_minimal_model(sphere_model(4), 8)
    again = construct_minimal_model(first.model, 8)
    assert again.dims == first.dims
    assert betti_numbers(again.model, 8) == betti_numbers(first.model, 8)


def test_minimal_input_is_reproduced(heisenberg):
    result = construct_minimal_model(heisenberg, 3)
    assert result.dims == {1: 3, 2: 0, 3: 0}


def test_single_pass_when_simply_connected():
    result = construct_minimal_model(projective_model(2), 6)
    rounds = [e.round for e in result.diagnostics if e.action == "kill" and e.added]
    assert rounds and max(rounds) == 1


@settings(max_examples=20, deadline=None)
@given(st.permutations(range(3)))
def test_dims_invariant_under_generator_order(perm):
    base = tensor_product(tensor_product(sphere_model(2), sphere_model(3)), projective_model(2))
    desc = model_to_description(base)
    desc["generators"] = [desc["generators"][i] for i in perm]
    B = parse_model(desc)
    assert dims(B, 6) == dims(base, 6)


def test_deterministic_names():
    a = construct_minimal_model(projective_model(2), 6)
    b = construct_minimal_model(projective_model(2), 6)
    assert a.model.table.names == b.model.table.names
    assert model_to_description(a.model) == model_to_description(b.model)
