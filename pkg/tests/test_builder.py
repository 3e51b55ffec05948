import pytest

from brickline.builder import (
    BuildError,
    NegativeLevel,
    NonTilingDimensions,
    UnknownPart,
    UnknownSubmodel,
    compile_text,
    load_spec,
    pack_steps,
    parse_spec,
)
from brickline.geometry import YAW_MATRICES
from brickline.model import Model, Placement, flatten, total_parts
from brickline.triz import PrincipleTag


def positions(model):
    return [p.position for p in flatten(model)]


def test_parse_header_and_comments():
    spec = parse_spec(
        "# a build\n"
        'name "Tiny Hut"\n'
        "author someone\n"
        "part brick_1x1 color 4  # trailing note\n")
    assert spec.name == "Tiny Hut"
    assert spec.author == "someone"
    assert len(spec.directives) == 1
    assert spec.directives[0].args == {"part": "brick_1x1", "color": 4}


def test_parse_punctuation_is_whitespace():
    a = parse_spec("part brick_1x1 at (2, 3) level 1\n")
    b = parse_spec("part brick_1x1 at 2 3 level 1\n")
    c = parse_spec("part brick_1x1 start 2 3 1\n")
    assert a.directives[0].args == b.directives[0].args == c.directives[0].args


def test_parse_errors():
    with pytest.raises(BuildError):
        parse_spec("step now\n")
    with pytest.raises(BuildError):
        parse_spec("teleport brick_1x1\n")
    with pytest.raises(BuildError):
        parse_spec("phase\n")
    with pytest.raises(BuildError):
        parse_spec("part brick_1x1 color four\n")
    with pytest.raises(BuildError):
        parse_spec("part brick_1x1 at 1 2\n")
    with pytest.raises(BuildError):
        parse_spec("triz 41\n")
    with pytest.raises(BuildError):
        parse_spec("submodel maybe\n")


def test_part_anchoring(catalog):
    model = compile_text("part brick_1x4 color 4 at 2 3 level 1\n", catalog)
    placed = flatten(model)[0]
    # the named cell holds the minimum-corner stud; origin sits half a
    # footprint further along each axis
    assert placed.position == (40.0, -8.0, 90.0)
    assert placed.orientation == YAW_MATRICES[0]
    assert placed.color == 4

    model = compile_text("part brick_1x4 color 4 at 2 3 level 1 rot 90\n", catalog)
    assert flatten(model)[0].position == (70.0, -8.0, 60.0)


def test_part_defaults(catalog):
    placed = flatten(compile_text("part brick_1x1\n", catalog))[0]
    assert placed.position == (0.0, 0.0, 0.0)
    assert placed.color == 16


def test_row_lays_parts_lengthwise(catalog):
    model = compile_text("row brick_1x4 color 4 count 3 axis x\n", catalog)
    assert positions(model) == [(30.0, 0.0, 0.0), (110.0, 0.0, 0.0),
                                (190.0, 0.0, 0.0)]
    assert all(p.orientation == YAW_MATRICES[90] for p in flatten(model))

    model = compile_text("row brick_1x4 count 2 axis z stride 5\n", catalog)
    assert positions(model) == [(0.0, 0.0, 30.0), (0.0, 0.0, 130.0)]


def test_wall_running_bond(catalog):
    model = compile_text("wall brick_1x4 color 4 width 8 layers 2 axis x\n",
                         catalog)
    # layer 1 is one brick height up and shifted one stud
    assert positions(model) == [
        (30.0, 0.0, 0.0), (110.0, 0.0, 0.0),
        (50.0, -24.0, 0.0), (130.0, -24.0, 0.0),
    ]

    model = compile_text("wall plate_1x4 width 4 layers 2 axis z\n", catalog)
    assert positions(model) == [(0.0, 0.0, 30.0), (0.0, -8.0, 50.0)]


def test_wall_requires_tiling_width(catalog):
    with pytest.raises(NonTilingDimensions):
        compile_text("wall brick_1x4 width 7 layers 1 axis x\n", catalog)


def test_plate_fill_rotates_to_tile(catalog):
    model = compile_text("plate_fill plate_2x4 color 7 w 4 d 2\n", catalog)
    placed = flatten(model)
    assert len(placed) == 1
    assert placed[0].orientation == YAW_MATRICES[90]
    assert placed[0].position == (30.0, 0.0, 10.0)

    model = compile_text("plate_fill plate_2x4 w 4 d 4\n", catalog)
    assert total_parts(model) == 2
    assert all(p.orientation == YAW_MATRICES[0] for p in flatten(model))


def test_plate_fill_rejects_non_tiling(catalog):
    with pytest.raises(NonTilingDimensions):
        compile_text("plate_fill plate_2x4 w 3 d 3\n", catalog)


def test_ring_snaps_to_grid(catalog):
    model = compile_text("ring round_1x1 color 4 count 12 radius 1\n", catalog)
    cells = [(int(p.position[0] // 20), int(p.position[2] // 20))
             for p in flatten(model)]
    # twelve angular stations fold onto eight distinct cells
    assert cells == [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1),
                     (0, -1), (1, -1)]

    model = compile_text("ring round_1x1 count 6 radius 2\n", catalog)
    cells = [(int(p.position[0] // 20), int(p.position[2] // 20))
             for p in flatten(model)]
    assert cells == [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]


def test_compile_errors(catalog):
    with pytest.raises(UnknownPart):
        compile_text("part warp_core\n", catalog)
    with pytest.raises(NegativeLevel):
        compile_text("part brick_1x1 at 0 0 level -1\n", catalog)
    with pytest.raises(BuildError):
        compile_text("part brick_1x1 rot 45\n", catalog)
    with pytest.raises(BuildError):
        compile_text("row brick_1x1 count 0 axis x\n", catalog)
    with pytest.raises(BuildError):
        compile_text("ring round_1x1 count 4 radius 0\n", catalog)
    with pytest.raises(BuildError):
        compile_text("wall brick_1x4 width 4 axis x\n", catalog)  # layers missing


def test_steps_partition_output(catalog):
    model = compile_text(
        "part brick_1x1 at 0 0 level 0\n"
        "step\n"
        "part brick_1x1 at 0 0 level 3\n"
        "step\n"
        "step\n"                      # consecutive markers add no empty step
        "part brick_1x1 at 0 0 level 6\n",
        catalog)
    assert [len(s) for s in model.steps] == [1, 1, 1]
    assert [p.step_index for p in flatten(model)] == [0, 1, 2]


def test_submodels_compile_and_call(catalog):
    text = (
        "submodel begin pillar\n"
        "part brick_1x1 at 0 0 level 0\n"
        "part brick_1x1 at 0 0 level 3\n"
        "submodel end pillar\n"
        "call pillar at 0 0 0\n"
        "call pillar at 4 0 0 color 4\n")
    model = compile_text(text, catalog)
    assert "pillar" in model.submodels
    placed = flatten(model)
    assert len(placed) == 4
    assert placed[2].position == (80.0, 0.0, 0.0)
    assert placed[2].color == 4            # color 16 inherits the call color
    assert placed[0].submodel == ("pillar",)


def test_submodel_errors(catalog):
    with pytest.raises(UnknownSubmodel):
        compile_text("call ghost\n", catalog)
    with pytest.raises(BuildError):
        compile_text("submodel begin a\nsubmodel begin b\n", catalog)
    with pytest.raises(BuildError):
        compile_text("submodel begin a\npart brick_1x1\nsubmodel end b\n",
                     catalog)
    with pytest.raises(BuildError):
        compile_text("submodel begin a\nsubmodel end a\n", catalog)  # empty
    with pytest.raises(BuildError):
        compile_text("submodel begin a\npart brick_1x1\n", catalog)  # no end
    with pytest.raises(BuildError):
        compile_text(
            "submodel begin a\npart brick_1x1\nsubmodel end\n"
            "submodel begin a\npart brick_1x1\nsubmodel end\n", catalog)


def test_phase_labels_and_roles(catalog):
    text = (
        "phase structure\n"
        "part brick_1x1 at 0 0 level 0\n"
        "step\n"
        "phase detailing\n"
        "part plate_1x1 at 0 0 level 3\n")
    model = compile_text(text, catalog)
    assert model.phases == {0: "structure", 1: "detailing"}
    assert model.part_roles == {"brick_1x1": ("structure",),
                                "plate_1x1": ("detailing",)}


def test_phase_rejected_inside_submodel(catalog):
    with pytest.raises(BuildError):
        compile_text("submodel begin a\nphase oops\n", catalog)


def test_phase_covers_called_submodel_parts(catalog):
    text = (
        "submodel begin duo\n"
        "part brick_1x1 at 0 0 level 0\n"
        "part plate_1x1 at 1 0 level 0\n"
        "submodel end\n"
        "phase core\n"
        "call duo at 0 0 0\n")
    model = compile_text(text, catalog)
    assert model.part_roles == {"brick_1x1": ("core",),
                                "plate_1x1": ("core",)}


def test_triz_directive_tags_model(catalog):
    model = compile_text("triz 1 split the assembly\npart brick_1x1\n",
                         catalog)
    assert model.tags == [PrincipleTag(1, "split the assembly")]


def test_pack_steps_respects_directive_atoms(catalog):
    text = "\n".join("row brick_1x1 count 4 axis x at 0 %d 0" % i
                     for i in range(3))
    model = compile_text(text, catalog)
    packed = pack_steps(model, target=3)
    assert [len(s) for s in packed.steps] == [4, 4, 4]


def test_pack_steps_merges_small_groups(catalog):
    text = "\n".join("row brick_1x1 count 2 axis x at 0 %d 0" % i
                     for i in range(3))
    model = compile_text(text, catalog)
    packed = pack_steps(model, target=3)
    assert [len(s) for s in packed.steps] == [4, 2]


def test_pack_steps_double_target_guard(catalog):
    text = ("row brick_1x1 count 9 axis x at 0 0 0\n"
            "row brick_1x1 count 12 axis x at 0 2 0\n")
    model = compile_text(text, catalog)
    packed = pack_steps(model, target=10)
    assert [len(s) for s in packed.steps] == [9, 12]


def test_pack_steps_oversize_group_stays_whole(catalog):
    model = compile_text("row brick_1x1 count 25 axis x\n", catalog)
    packed = pack_steps(model, target=10)
    assert [len(s) for s in packed.steps] == [25]


def test_pack_steps_part_granularity_for_imported_models(catalog):
    model = Model(steps=[[
        Placement("brick_1x1", 4, (i * 20.0, 0.0, 0.0))
        for i in range(30)
    ]])
    packed = pack_steps(model, target=10)
    assert [len(s) for s in packed.steps] == [10, 10, 10]


def test_pack_steps_preserves_order_and_phases(catalog):
    text = (
        "phase base\n"
        "row brick_1x1 count 2 axis x at 0 0 0\n"
        "step\n"
        "phase top\n"
        "row brick_1x1 count 2 axis x at 0 2 0\n")
    model = compile_text(text, catalog)
    packed = pack_steps(model, target=10)
    assert [len(s) for s in packed.steps] == [4]
    assert positions(packed) == positions(model)
    assert packed.phases == {0: "base"}   # merged step keeps its first label
    with pytest.raises(ValueError):
        pack_steps(model, target=0)


def test_load_spec(tmp_path, catalog):
    path = tmp_path / "hut.bspec"
    path.write_text("name hut\npart brick_1x1\n")
    model = compile_text(path.read_text(), catalog)
    assert model.name == "hut"
    spec = load_spec(str(path))
    assert spec.name == "hut"
    assert len(spec.directives) == 1
