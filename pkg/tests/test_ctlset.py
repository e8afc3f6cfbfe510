import pytest

from ctlhom.ctlset import (
    ALL,
    ConstantAssignment,
    ControlError,
    ControlledMap,
    ShiftAssignment,
    TableAssignment,
    UnsupportedRepresentationError,
    adjunction_check,
    all_set_maps,
    cofinal_tail,
    compose,
    finite_carrier,
    finite_list,
    generated_ctl,
    identity_map,
    is_controlled,
    max_ctl,
    min_ctl,
    naturals,
    same_controlled_sets,
    validate_map,
    validate_structure,
)

N = naturals()
ABC = finite_carrier(["a", "b", "c"])


# ---------------------------------------------------------------- structures

def test_min_and_max_agree_on_finite_carriers():
    assert same_controlled_sets(min_ctl(ABC), max_ctl(ABC))


def test_min_and_max_differ_on_the_naturals():
    assert not same_controlled_sets(min_ctl(N), max_ctl(N))


def test_structure_axioms_hold_for_builtins():
    for X in (min_ctl(ABC), max_ctl(ABC), min_ctl(N), max_ctl(N),
              generated_ctl(ABC, [["a", "b"]])):
        report = validate_structure(X)
        assert report.ok, report.violations


def test_generated_structure_contains_generators():
    X = generated_ctl(ABC, [["a", "b"]])
    assert is_controlled(X, finite_list("a", "b"))
    assert is_controlled(X, finite_list("a"))          # subset closure
    assert is_controlled(X, finite_list("a", "b", "c"))  # union with a finite set


def test_controlled_subsets_of_the_naturals():
    """The minimal structure on N admits exactly the finite subsets."""
    assert is_controlled(min_ctl(N), finite_list(1, 2, 3))
    assert not is_controlled(min_ctl(N), ALL)
    assert not is_controlled(min_ctl(N), cofinal_tail(5))
    assert is_controlled(max_ctl(N), ALL)
    assert is_controlled(max_ctl(N), cofinal_tail(5))


# ---------------------------------------------------------------------- maps

def test_identity_is_controlled():
    for X in (min_ctl(ABC), min_ctl(N), max_ctl(N)):
        assert validate_map(identity_map(X)).ok


def test_every_map_from_a_minimal_source_is_controlled():
    X = min_ctl(finite_carrier([0, 1]))
    Y = max_ctl(ABC)
    for table in all_set_maps(X.carrier, Y.carrier):
        assert validate_map(ControlledMap(X, Y, table)).ok


def test_constant_from_max_naturals_is_not_proper():
    f = ControlledMap(max_ctl(N), max_ctl(N), ConstantAssignment(0))
    report = validate_map(f)
    assert not report.ok
    assert any("fiber over 0 is infinite" in v for v in report.violations)


def test_shift_into_minimal_naturals_has_uncontrolled_image():
    f = ControlledMap(max_ctl(N), min_ctl(N), ShiftAssignment(1))
    report = validate_map(f)
    assert not report.ok
    assert any("not controlled" in v for v in report.violations)


def test_shift_between_max_naturals_is_controlled():
    f = ControlledMap(max_ctl(N), max_ctl(N), ShiftAssignment(2, {0: 7}))
    assert validate_map(f).ok


def test_shift_rejects_negative_offset():
    with pytest.raises(ControlError):
        ShiftAssignment(-1)


def test_shift_drops_redundant_patches():
    assert ShiftAssignment(2, {3: 5}).patch == {}
    assert ShiftAssignment(2, {3: 9}).patch == {3: 9}


def test_table_needs_finite_source():
    with pytest.raises(UnsupportedRepresentationError):
        ControlledMap(min_ctl(N), min_ctl(N), TableAssignment({0: 0}))


def test_table_must_cover_the_carrier():
    with pytest.raises(ControlError):
        ControlledMap(min_ctl(ABC), min_ctl(ABC), TableAssignment({"a": "a"}))


# ------------------------------------------------------------- composition

def test_compose_tables():
    X = min_ctl(finite_carrier([0, 1]))
    f = ControlledMap(X, X, TableAssignment({0: 1, 1: 0}))
    g = compose(f, f)
    assert g.assignment.mapping == {0: 0, 1: 1}


def test_compose_shifts_stays_in_catalogue():
    X = max_ctl(N)
    f = ControlledMap(X, X, ShiftAssignment(1, {0: 5}))
    g = ControlledMap(X, X, ShiftAssignment(2, {6: 0}))
    h = compose(g, f)
    assert isinstance(h.assignment, ShiftAssignment)
    for n in range(20):
        assert h.evaluate(n) == g.evaluate(f.evaluate(n))


def test_compose_constant_then_shift():
    X = max_ctl(N)
    f = ControlledMap(X, X, ConstantAssignment(3))
    g = ControlledMap(X, X, ShiftAssignment(4))
    h = compose(g, f)
    assert isinstance(h.assignment, ConstantAssignment)
    assert h.evaluate(11) == 7


def test_compose_requires_matching_middle_structure():
    f = ControlledMap(max_ctl(N), min_ctl(N), ShiftAssignment(0))
    g = ControlledMap(max_ctl(N), max_ctl(N), ShiftAssignment(0))
    with pytest.raises(ControlError):
        compose(g, f)


# -------------------------------------------------------------- adjunction

@pytest.mark.parametrize("size", [0, 1, 2, 3])
def test_min_is_left_adjoint_to_forget(size):
    S = finite_carrier(list(range(size)))
    for X in (min_ctl(ABC), max_ctl(ABC), generated_ctl(ABC, [["b", "c"]])):
        report = adjunction_check(S, X)
        assert report.ok, report.failures
        assert report.set_map_count == report.controlled_map_count
        assert report.set_map_count == len(ABC.elements) ** size
