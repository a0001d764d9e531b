"""Interval classifications, full-group censuses, and normaliser transport."""

from __future__ import annotations

import random

import pytest

from cayleykit import (
    CapabilityError,
    ModelError,
    build_interval,
    build_oracle,
    census,
    circular_model,
    classify,
    custom_model,
    cyclic_model,
    in_normaliser,
    normaliser,
    theorem1_check,
    z2_model,
)


def _oracle(model):
    return build_oracle(model)


def test_classify_by_length():
    model = circular_model(4)
    oracle = _oracle(model)
    elements = [
        model.parse_element(s) for s in ("e", "(1,2)", "(3,4)", "(1,2)(3,4)", "(1,3)")
    ]
    result = classify(oracle, elements, "length")
    assert result.signatures == [0, 1, 2, 3]
    assert result.classes[1] == [model.parse_element("(1,2)"), model.parse_element("(3,4)")]
    assert result.signature_of[model.parse_element("(1,3)")] == 3
    assert not result.unclassified


def test_classify_relations_refine_each_other():
    model = circular_model(4)
    oracle = _oracle(model)
    elements = list(model.elements())
    by_iso = classify(oracle, elements, "iso")
    for relation in ("length", "paths", "size"):
        coarse = classify(oracle, elements, relation)
        # members of one iso class never split across classes of a weaker relation
        for members in by_iso.classes:
            sigs = {coarse.signature_of[g] for g in members}
            assert len(sigs) == 1


def test_classify_size_classes_of_the_full_group():
    model = circular_model(4)
    oracle = _oracle(model)
    result = classify(oracle, list(model.elements()), "size")
    histogram = {
        result.signatures[i]: len(members) for i, members in enumerate(result.classes)
    }
    assert histogram == {1: 1, 2: 4, 3: 8, 4: 2, 8: 4, 10: 4, 20: 1}


def test_classify_iso_cap_routes_to_unclassified():
    model = circular_model(4)
    oracle = _oracle(model)
    elements = [model.parse_element("(1,3)(2,4)"), model.parse_element("(1,2)")]
    result = classify(oracle, elements, "iso", iso_size_cap=10)
    assert result.unclassified == [model.parse_element("(1,3)(2,4)")]
    assert result.classes == [[model.parse_element("(1,2)")]]


def test_classify_rejects_unknown_relations():
    model = circular_model(4)
    with pytest.raises(ModelError):
        classify(_oracle(model), [model.identity], "conjugacy")


def test_census_length_matches_classify():
    model = circular_model(4)
    oracle = _oracle(model)
    result = census(model, "length")
    assert result.total == 24
    coarse = classify(oracle, list(model.elements()), "length")
    assert result.counts == {
        coarse.signatures[i]: len(members) for i, members in enumerate(coarse.classes)
    }
    assert result.representatives[0] == "e"


def test_census_size_matches_interval_construction():
    model = circular_model(5)
    oracle = _oracle(model)
    result = census(model, "size")
    assert result.total == 120
    seen: dict = {}
    for g in model.elements():
        seen.setdefault(build_interval(oracle, model.identity, g).size, 0)
        seen[build_interval(oracle, model.identity, g).size] += 1
    assert result.counts == seen


def test_census_worker_pool_agrees_with_single_core():
    model = circular_model(5)
    solo = census(model, "size", workers=1)
    pooled = census(model, "size", workers=2)
    assert pooled.counts == solo.counts
    assert pooled.representatives == solo.representatives


def test_census_on_cyclic_models():
    result = census(cyclic_model(6), "size")
    assert result.counts == {1: 1, 2: 2, 3: 2, 6: 1}
    assert result.total == 6
    rows = list(result.csv_rows())
    assert rows[0] == "signature,count,representative"
    assert rows[1] == "1,1,0"


def test_census_capability_errors():
    with pytest.raises(CapabilityError):
        census(z2_model(), "size")
    with pytest.raises(ModelError):
        census(circular_model(4), "paths")
    with pytest.raises(CapabilityError):
        census(circular_model(10), "length")


def test_normaliser_orders_are_dihedral():
    for n, expected in ((4, 8), (5, 10), (6, 12)):
        result = normaliser(circular_model(n))
        assert result.order == expected


def test_normaliser_members_rotate_or_reflect():
    model = circular_model(5)
    rot = model.parse_element("(1,2,3,4,5)")
    flip = model.check_element(tuple(4 - i for i in range(5)))
    assert in_normaliser(model, rot)
    assert in_normaliser(model, flip)
    assert not in_normaliser(model, model.parse_element("(1,2)"))
    members = set(normaliser(model).members)
    assert rot in members and flip in members and model.identity in members


def test_adjacent_set_normaliser_is_tiny():
    from cayleykit import adjacent_model

    result = normaliser(adjacent_model(5))
    assert result.order == 2  # identity and the order-reversing relabeling


def test_mixed_seven_point_set_has_dihedral_normaliser():
    gens = ["(1,2)", "(2,3)", "(3,4)", "(4,5)", "(5,6)", "(6,7)", "(7,1)",
            "(1,3)", "(3,5)", "(5,7)", "(7,2)", "(2,4)", "(4,6)", "(6,1)"]
    model = custom_model(7, gens)
    result = normaliser(model)
    assert result.order == 14


def test_normaliser_modes_and_limits():
    assert normaliser(circular_model(5), mode="predicate").members is None
    assert normaliser(circular_model(5), mode="predicate").order is None
    with pytest.raises(ModelError):
        normaliser(circular_model(5), mode="guess")
    with pytest.raises(CapabilityError):
        normaliser(circular_model(9))
    with pytest.raises(CapabilityError):
        normaliser(z2_model())


def test_theorem1_transport():
    model = circular_model(5)
    oracle = _oracle(model)
    members = normaliser(model).members
    rng = random.Random(13)
    everyone = list(model.elements())
    for _ in range(20):
        g = rng.choice(everyone)
        pi = rng.choice(members)
        assert theorem1_check(oracle, g, pi)
    with pytest.raises(ModelError):
        theorem1_check(oracle, everyone[7], model.parse_element("(1,2)"))
