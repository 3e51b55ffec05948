import pytest

from brickline.model import Model
from brickline.triz import (
    NO_DOCUMENTED_PATTERN,
    SELF_CONTRADICTION,
    PrincipleTag,
    UnknownParameter,
    cell_text,
    lookup,
    parameters,
    principle,
    principle_name,
    tag_report,
)


def test_parameters_cover_the_documented_set():
    assert sorted(parameters()) == [1, 12, 14, 26, 32, 33, 34, 35, 36, 39]
    assert parameters()[1].lower().startswith("weight")


def test_lookup_reference_cells():
    assert lookup(1, 12) == (10, 36, 37, 40)
    assert lookup(1, 14) == (1, 8, 40, 15)
    assert lookup(14, 1) == (28, 27, 18, 40)
    assert lookup(35, 34) == (1, 35, 11, 10)


def test_lookup_is_direction_sensitive():
    assert lookup(1, 14) != lookup(14, 1)


def test_lookup_sentinels():
    assert lookup(14, 14) is SELF_CONTRADICTION
    assert lookup(14, 33) is NO_DOCUMENTED_PATTERN
    assert lookup(34, 1) is NO_DOCUMENTED_PATTERN


def test_lookup_unknown_parameter():
    with pytest.raises(UnknownParameter):
        lookup(2, 14)
    with pytest.raises(UnknownParameter):
        lookup(1, 99)


def test_cell_text():
    assert cell_text(lookup(1, 12)) == "10, 36, 37, 40"
    assert "self-contradiction" in cell_text(SELF_CONTRADICTION)
    assert "no documented pattern" in cell_text(NO_DOCUMENTED_PATTERN)


def test_principles_reference():
    first = principle(1)
    assert first["number"] == 1
    assert first["name"] == "Segmentation"
    assert principle_name(40) == "Composite materials"
    with pytest.raises(UnknownParameter):
        principle(41)
    with pytest.raises(UnknownParameter):
        principle(0)


def test_principle_tag_validation():
    tag = PrincipleTag(1, "modular sections")
    assert tag.name == "Segmentation"
    with pytest.raises(ValueError):
        PrincipleTag(0)
    with pytest.raises(ValueError):
        PrincipleTag(41)


def test_tag_report_counts_models_once_per_principle():
    def tagged(*numbers):
        model = Model()
        model.tags = [PrincipleTag(n) for n in numbers]
        return model

    rows = tag_report([
        tagged(1, 1, 15),        # duplicate tag counts once
        tagged(1),
        tagged(15, 26),
        tagged(),
    ])
    assert rows == [(1, 2), (15, 2), (26, 1)]
    assert tag_report([]) == []
