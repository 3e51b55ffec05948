import pytest

from brickline.catalog import (
    Catalog,
    DuplicateId,
    Family,
    InvalidGeometry,
    MissingField,
    PartNotFound,
    make_part,
    parse_catalog,
)


def test_default_catalog_contents(catalog):
    for part_id in ("brick_1x1", "brick_2x4", "plate_1x4", "plate_4x6",
                    "round_1x1", "cone_1x1", "arch_1x4", "clip_light"):
        assert part_id in catalog.parts
    assert catalog.parts["brick_2x4"].footprint_studs == (2, 4)
    assert catalog.parts["brick_2x4"].height_ldu == 24.0
    assert catalog.parts["plate_1x4"].height_ldu == 8.0


def test_height_levels(catalog):
    assert catalog.parts["plate_2x2"].height_levels == 1
    assert catalog.parts["brick_2x2"].height_levels == 3


def test_default_connector_grids(catalog):
    brick = catalog.parts["brick_2x4"]
    assert len(brick.studs) == 8
    assert len(brick.sockets) == 8
    assert all(p[1] == -24.0 for p in brick.studs)
    assert all(p[1] == 0.0 for p in brick.sockets)


def test_arch_grips_only_at_its_feet(catalog):
    arch = catalog.parts["arch_1x4"]
    assert len(arch.studs) == 4                   # full top grid
    assert sorted(p[2] for p in arch.sockets) == [-30.0, 30.0]


def test_clip_light_single_connectors(catalog):
    clip = catalog.parts["clip_light"]
    assert clip.studs == ((0.0, -8.0, 0.0),)
    assert clip.sockets == ((0.0, 0.0, 0.0),)


def test_find_resolves_ids_and_ldraw_files(catalog):
    assert catalog.find("brick_1x2").id == "brick_1x2"
    assert catalog.find("3004.dat").id == "brick_1x2"
    assert catalog.find("nope.dat") is None
    assert "3004.dat" in catalog
    assert "nope.dat" not in catalog


def test_lookup_raises(catalog):
    with pytest.raises(PartNotFound):
        catalog.lookup("no_such_part")


def test_local_bbox_spans_body(catalog):
    box = catalog.parts["brick_1x4"].local_bbox
    assert box.min == (-10.0, -24.0, -40.0)
    assert box.max == (10.0, 0.0, 40.0)


def test_color_legal(catalog):
    assert catalog.color_legal(0)
    assert catalog.color_legal(16)    # inherit pseudo-color is in palette
    assert catalog.color_legal(484)
    assert not catalog.color_legal(999)


def test_make_part_validates_dimensions():
    with pytest.raises(InvalidGeometry):
        make_part("bad", "bad.dat", "brick", (0, 2), 24.0)
    with pytest.raises(InvalidGeometry):
        make_part("bad", "bad.dat", "brick", (1, 2), 0.0)


def test_make_part_rejects_off_grid_connectors():
    with pytest.raises(InvalidGeometry):
        make_part("bad", "bad.dat", "plate", (1, 1), 8.0,
                  studs=((3.0, -8.0, 0.0),))
    with pytest.raises(InvalidGeometry):
        make_part("bad", "bad.dat", "plate", (1, 1), 8.0,
                  sockets=((0.0, -1.0, 0.0),))      # wrong face
    with pytest.raises(InvalidGeometry):
        make_part("bad", "bad.dat", "plate", (1, 1), 8.0,
                  studs=((40.0, -8.0, 0.0),))       # outside the footprint


def test_catalog_add_rejects_duplicates():
    cat = Catalog()
    cat.add(make_part("p", "p.dat", "plate", (1, 1), 8.0))
    with pytest.raises(DuplicateId):
        cat.add(make_part("p", "other.dat", "plate", (1, 1), 8.0))
    with pytest.raises(DuplicateId):
        cat.add(make_part("q", "p.dat", "plate", (1, 1), 8.0))


def test_parse_catalog_part_and_color_lines():
    cat = parse_catalog(
        "# comment\n"
        "part tile_2x2 3068b.dat plate 2x2 h=8 mass=0.5 name=\"Tile 2x2\"\n"
        "color 5 Dark Pink\n")
    assert cat.parts["tile_2x2"].display_name == "Tile 2x2"
    assert cat.parts["tile_2x2"].family is Family.PLATE
    assert cat.parts["tile_2x2"].mass_g == 0.5
    assert cat.palette[5] == "Dark Pink"


def test_parse_catalog_errors():
    with pytest.raises(MissingField):
        parse_catalog("part nub nub.dat brick\n")
    with pytest.raises(MissingField):
        parse_catalog("part nub nub.dat brick 1x1\n")    # no h=
    with pytest.raises(MissingField):
        parse_catalog("color 9\n")
    with pytest.raises(InvalidGeometry):
        parse_catalog("part nub nub.dat brick 1xq h=24\n")


def test_ids_sorted(catalog):
    ids = catalog.ids()
    assert ids == sorted(ids)
    assert "brick_1x1" in ids
