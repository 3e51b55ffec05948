"""Part catalog: footprints, connector layouts, LDraw filenames, colors.

The catalog is data, not code. The default part set and palette ship as
text files under brickline/data and can be replaced wholesale with the
same line-oriented format:

    part <id> <ldraw_file> <family> <W>x<D> h=<ldu> mass=<grams> \
        [name="display name"] [studs=x,y,z;...] [sockets=x,y,z;...]

Explicit studs= / sockets= lists override the default full grid, which
specialty parts need (an arch only grips at its feet). Palette files hold
`color <code> <name>` lines.
"""

from __future__ import annotations

import enum
import shlex
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .geometry import Aabb, STUD_PITCH, Vec3, local_stud_grid


class CatalogError(Exception):
    """Base for catalog definition problems."""


class DuplicateId(CatalogError):
    pass


class MissingField(CatalogError):
    pass


class InvalidGeometry(CatalogError):
    pass


class PartNotFound(KeyError):
    """Lookup of an id or LDraw filename that the catalog does not define."""


class Family(str, enum.Enum):
    BRICK = "brick"
    PLATE = "plate"
    ROUND = "round"
    CONE = "cone"
    ARCH = "arch"
    SPECIALTY = "specialty"


@dataclass(frozen=True)
class PartSpec:
    id: str
    ldraw_file: str
    family: Family
    footprint_studs: tuple[int, int]   # (width, depth) in studs
    height_ldu: float
    studs: tuple[Vec3, ...]            # local, on the y = -height face
    sockets: tuple[Vec3, ...]          # local, on the y = 0 face
    mass_g: float = 0.0
    display_name: str = ""

    @property
    def local_bbox(self) -> Aabb:
        # round/cone parts keep their full square footprint: collision
        # checks stay conservative
        w, d = self.footprint_studs
        half_w = w * STUD_PITCH / 2.0
        half_d = d * STUD_PITCH / 2.0
        return Aabb((-half_w, -self.height_ldu, -half_d), (half_w, 0.0, half_d))

    @property
    def height_levels(self) -> int:
        return int(round(self.height_ldu / 8.0))


def _check_connectors(part_id: str, w: int, d: int, points: tuple[Vec3, ...],
                      face_y: float) -> None:
    # connector x/z must land on the footprint's own 20 LDU grid; the grid
    # is offset half a pitch when the extent is even
    off_x = 0.0 if w % 2 else 10.0
    off_z = 0.0 if d % 2 else 10.0
    for x, y, z in points:
        if abs(y - face_y) > 1e-6:
            raise InvalidGeometry(f"{part_id}: connector at y={y}, expected {face_y}")
        if (x - off_x) % STUD_PITCH != 0 or (z - off_z) % STUD_PITCH != 0:
            raise InvalidGeometry(f"{part_id}: connector at x={x}, z={z} off the stud grid")
        if abs(x) > w * 10.0 or abs(z) > d * 10.0:
            raise InvalidGeometry(f"{part_id}: connector outside the footprint")


def make_part(id: str, ldraw_file: str, family: Family | str,
              footprint: tuple[int, int], height_ldu: float, mass_g: float = 0.0,
              display_name: str = "", studs: tuple[Vec3, ...] | None = None,
              sockets: tuple[Vec3, ...] | None = None) -> PartSpec:
    """Build a validated PartSpec, defaulting connectors to the full grid."""
    w, d = footprint
    if w < 1 or d < 1 or height_ldu <= 0:
        raise InvalidGeometry(f"{id}: non-positive dimensions")
    fam = Family(family)
    if studs is None:
        studs = local_stud_grid(w, d, -height_ldu)
    if sockets is None:
        sockets = local_stud_grid(w, d, 0.0)
    _check_connectors(id, w, d, studs, -height_ldu)
    _check_connectors(id, w, d, sockets, 0.0)
    return PartSpec(id, ldraw_file, fam, (w, d), height_ldu, tuple(studs),
                    tuple(sockets), mass_g, display_name or id)


@dataclass
class Catalog:
    parts: dict[str, PartSpec] = field(default_factory=dict)
    palette: dict[int, str] = field(default_factory=dict)
    _by_file: dict[str, str] = field(default_factory=dict)

    def add(self, part: PartSpec) -> None:
        if part.id in self.parts:
            raise DuplicateId(f"duplicate part id {part.id!r}")
        if part.ldraw_file in self._by_file:
            raise DuplicateId(f"duplicate LDraw file {part.ldraw_file!r}")
        self.parts[part.id] = part
        self._by_file[part.ldraw_file] = part.id

    def find(self, key: str) -> PartSpec | None:
        """Resolve a part id or an LDraw filename; None when unknown."""
        spec = self.parts.get(key)
        if spec is None:
            mapped = self._by_file.get(key)
            if mapped is not None:
                spec = self.parts[mapped]
        return spec

    def lookup(self, key: str) -> PartSpec:
        spec = self.find(key)
        if spec is None:
            raise PartNotFound(key)
        return spec

    def __contains__(self, key: str) -> bool:
        return self.find(key) is not None

    def ids(self) -> list[str]:
        return sorted(self.parts)

    def color_legal(self, code: int) -> bool:
        return code in self.palette


def _parse_points(text: str) -> tuple[Vec3, ...]:
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        coords = [float(c) for c in chunk.split(",")]
        if len(coords) != 3:
            raise InvalidGeometry(f"connector {chunk!r} is not x,y,z")
        points.append(tuple(coords))
    return tuple(points)


def parse_catalog(text: str, catalog: Catalog | None = None) -> Catalog:
    """Parse `part` and `color` lines into a Catalog."""
    cat = catalog if catalog is not None else Catalog()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tokens = shlex.split(line)
        except ValueError as exc:
            raise CatalogError(f"line {line_no}: {exc}") from exc
        kind = tokens[0]
        if kind == "color":
            if len(tokens) < 3:
                raise MissingField(f"line {line_no}: color needs a code and a name")
            cat.palette[int(tokens[1])] = " ".join(tokens[2:])
            continue
        if kind != "part":
            raise CatalogError(f"line {line_no}: unknown entry {kind!r}")
        if len(tokens) < 5:
            raise MissingField(f"line {line_no}: part needs id, file, family, WxD")
        part_id, ldraw_file, family, size = tokens[1:5]
        try:
            w_txt, d_txt = size.lower().split("x")
            footprint = (int(w_txt), int(d_txt))
        except ValueError as exc:
            raise InvalidGeometry(f"line {line_no}: bad footprint {size!r}") from exc
        height = mass = None
        name = ""
        studs = sockets = None
        for extra in tokens[5:]:
            if "=" not in extra:
                raise CatalogError(f"line {line_no}: stray token {extra!r}")
            key, value = extra.split("=", 1)
            if key == "h":
                height = float(value)
            elif key == "mass":
                mass = float(value)
            elif key == "name":
                name = value
            elif key == "studs":
                studs = _parse_points(value)
            elif key == "sockets":
                sockets = _parse_points(value)
            else:
                raise CatalogError(f"line {line_no}: unknown field {key!r}")
        if height is None:
            raise MissingField(f"line {line_no}: part {part_id} has no h=")
        try:
            cat.add(make_part(part_id, ldraw_file, family, footprint, height,
                              mass if mass is not None else 0.0, name,
                              studs, sockets))
        except CatalogError as exc:
            raise type(exc)(f"line {line_no}: {exc}") from exc
    return cat


def load_catalog(parts_path: str | None = None,
                 palette_path: str | None = None) -> Catalog:
    """Load a catalog from files, defaulting to the bundled data."""
    if parts_path is None:
        parts_text = resources.files("brickline.data").joinpath("parts.txt").read_text()
    else:
        with open(parts_path, encoding="utf-8") as fh:
            parts_text = fh.read()
    if palette_path is None:
        palette_text = resources.files("brickline.data").joinpath("colors.txt").read_text()
    else:
        with open(palette_path, encoding="utf-8") as fh:
            palette_text = fh.read()
    cat = parse_catalog(parts_text)
    parse_catalog(palette_text, cat)
    return cat


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return load_catalog()
