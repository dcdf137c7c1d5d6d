import pytest
from hypothesis import given, settings, strategies as st

from sullivan.cdga import FreeCDGA, check_minimality
from sullivan.description import parse_expression, parse_model
from sullivan.ks_extension import (
    KSExtension,
    NotMinimal,
    check_tensor_minimality,
    check_triangularity,
    describe_twist,
    ks_extension,
    total_space_dims,
    total_table,
    validate_extension,
)
from sullivan.models_library import heisenberg_model, sphere_model, torus_model


def twist(base, fiber, **exprs):
    table = total_table(base, fiber)
    return {k: parse_expression(v, table) for k, v in exprs.items()}


def free(gens, d=None):
    return parse_model({"generators": [{"name": n, "degree": k} for n, k in gens], "differential": d or {}}).free


def test_untwisted_product():
    base, fiber = torus_model(2), free([("w", 3)])
    E = ks_extension(base, fiber)
    assert validate_extension(E, 5).ok
    assert check_triangularity(E).order == ("w",)
    v = check_tensor_minimality(E)
    assert v.minimal and not v.fallback
    assert v.order == ("a1", "a2", "w")
    assert total_space_dims(E, 4, v) == {2: 0, 3: 1, 4: 0}


def test_twist_by_volume_form():
    base, fiber = torus_model(3), free([("w", 2)])
    E = ks_extension(base, fiber, twist(base, fiber, w="a1*a2*a3"))
    assert validate_extension(E, 4).ok
    assert describe_twist(E) == {"w": "a1*a2*a3"}
    assert check_tensor_minimality(E).minimal


def test_twisted_fiber_with_internal_dependency():
    base, fiber = torus_model(2), free([("w", 2), ("z", 3)], {"z": "w^2"})
    E = ks_extension(base, fiber, twist(base, fiber, z="w^2 + a1*a2*w"))
    assert validate_extension(E, 5).ok
    assert check_triangularity(E).order == ("w", "z")
    v = check_tensor_minimality(E)
    assert v.minimal and v.order == ("a1", "a2", "w", "z")
    assert total_space_dims(E, 3, v) == {2: 1, 3: 1}


def test_untwisted_fiber_keeps_its_differential():
    base, fiber = torus_model(1), free([("w", 2), ("z", 3)], {"z": "w^2"})
    E = ks_extension(base, fiber)
    assert describe_twist(E) == {"w": "0", "z": "w^2"}


def test_dependency_cycle():
    base, fiber = torus_model(2), free([("u", 3), ("v", 3)])
    E = ks_extension(base, fiber, twist(base, fiber, u="a1*v", v="a1*u"))
    assert validate_extension(E, 4).ok
    tri = check_triangularity(E)
    assert not tri.ok
    assert tri.problem == "NoValidOrder: dependency cycle"
    assert set(tri.nodes) == {"u", "v"}
    v = check_tensor_minimality(E)
    assert not v.minimal and v.fallback
    with pytest.raises(NotMinimal):
        total_space_dims(E, 4, v)


def test_dependency_on_higher_degree():
    base, fiber = torus_model(1), free([("w", 2), ("z", 3)])
    E = ks_extension(base, fiber, twist(base, fiber, w="a1*z"))
    assert check_triangularity(E).problem == "NoValidOrder: dependency on higher degree"


def test_degree_one_fiber_falls_back():
    base, fiber = torus_model(2), free([("c", 1)])
    E = ks_extension(base, fiber, twist(base, fiber, c="a1*a2"))
    v = check_tensor_minimality(E)
    assert v.fallback
    assert "fiber not simply-connected (has generators of degree <= 1)" in v.flags
    assert v.minimal
    assert v.order == ("a1", "a2", "c")


def test_base_not_in_degree_one():
    base, fiber = free([("x", 2)]), free([("y", 3)])
    E = ks_extension(base, fiber, twist(base, fiber, y="x^2"))
    v = check_tensor_minimality(E)
    assert v.fallback and v.minimal


def test_changed_base_differential_is_reported():
    base, fiber = torus_model(2), free([("w", 3)])
    E = ks_extension(base, fiber)
    d = dict(E.total.differential)
    d[0] = parse_expression("a1*a2", E.total.table)
    E = KSExtension(base, fiber, FreeCDGA(E.total.table, d))
    assert "BaseDifferentialChanged" in validate_extension(E, 3).kinds()


def test_errors():
    with pytest.raises(ValueError):
        ks_extension(torus_model(1), torus_model(1))
    with pytest.raises(ValueError):
        ks_extension(torus_model(1), sphere_model(2))
    base, fiber = torus_model(1), free([("w", 2)])
    with pytest.raises(ValueError):
        ks_extension(base, fiber, {"nope": parse_expression("0", total_table(base, fiber))})


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["0", "a*b*c", "y"]), st.sampled_from(["0", "x^2", "a*b*x", "a*c*x", "b*c*x"]))
def test_tensor_verdict_agrees_with_general_check(dx, dy):
    base, fiber = heisenberg_model(), free([("x", 2), ("y", 3)])
    E = ks_extension(base, fiber, twist(base, fiber, x=dx, y=dy))
    assert check_tensor_minimality(E).minimal == check_minimality(E.total).minimal
