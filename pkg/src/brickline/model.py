"""Model data: placements, steps, submodels, and world-space queries."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Union

from .catalog import Catalog, PartSpec
from .geometry import (
    Aabb,
    IDENTITY,
    MATE_TOL,
    Mat3,
    Vec3,
    cells_from_bbox,
    mat_mul,
    transform_bbox,
    transform_point,
)


class ModelError(Exception):
    pass


class CircularSubmodel(ModelError):
    pass


@dataclass(frozen=True)
class Placement:
    """One part instance. position is the world location of the part's
    local origin (bottom-center); orientation is a row-major 3x3 matrix."""

    part: str                       # catalog id, or raw filename if unresolved
    color: int
    position: Vec3
    orientation: Mat3 = IDENTITY
    step_index: int = 0
    submodel: tuple[str, ...] = ()  # path of submodel names, () for the root
    group: int = -1                 # directive group; -1 when not builder-made


@dataclass(frozen=True)
class SubRef:
    """A call placing a named submodel."""

    name: str
    color: int
    position: Vec3
    orientation: Mat3 = IDENTITY
    group: int = -1


Item = Union[Placement, SubRef]


@dataclass
class Model:
    name: str = ""
    author: str = ""
    steps: list[list[Item]] = field(default_factory=list)
    submodels: dict[str, list[list[Item]]] = field(default_factory=dict)
    part_roles: dict[str, tuple[str, ...]] = field(default_factory=dict)
    phases: dict[int, str] = field(default_factory=dict)  # step index -> label
    tags: list = field(default_factory=list)  # triz.PrincipleTag entries

    def step_sizes(self) -> list[int]:
        """Flattened part count per step."""
        sizes = [0] * len(self.steps)
        for p in flatten(self):
            sizes[p.step_index] += 1
        return sizes


def _flatten_items(model: Model, items: list[Item], step_index: int,
                   position: Vec3, orientation: Mat3, color: int,
                   path: tuple[str, ...], group: int,
                   out: list[Placement]) -> None:
    for item in items:
        item_color = color if item.color == 16 else item.color
        world_pos = transform_point(position, orientation, item.position)
        world_ori = mat_mul(orientation, item.orientation)
        if isinstance(item, Placement):
            out.append(replace(
                item,
                color=item_color,
                position=world_pos,
                orientation=world_ori,
                step_index=step_index,
                submodel=path,
                group=group if group != -1 else item.group,
            ))
            continue
        if item.name in path:
            raise CircularSubmodel(" -> ".join(path + (item.name,)))
        sub_steps = model.submodels.get(item.name)
        if sub_steps is None:
            raise ModelError(f"call to undefined submodel {item.name!r}")
        sub_group = item.group if group == -1 else group
        for sub_items in sub_steps:
            _flatten_items(model, sub_items, step_index, world_pos, world_ori,
                           item_color, path + (item.name,), sub_group, out)


def flatten(model: Model) -> list[Placement]:
    """Expand submodel calls into a flat placement list.

    Every placement keeps the top-level step of the call that produced it,
    so the step partition covers the flattened model. Color 16 inherits
    from the call.
    """
    out: list[Placement] = []
    for step_index, items in enumerate(model.steps):
        _flatten_items(model, items, step_index, (0.0, 0.0, 0.0), IDENTITY,
                       16, (), -1, out)
    return out


def total_parts(model: Model) -> int:
    return len(flatten(model))


# -- world-space queries ----------------------------------------------------

def world_bbox(placement: Placement, part: PartSpec) -> Aabb:
    return transform_bbox(placement.position, placement.orientation,
                          part.local_bbox)


def world_studs(placement: Placement, part: PartSpec) -> list[Vec3]:
    return [transform_point(placement.position, placement.orientation, p)
            for p in part.studs]


def world_sockets(placement: Placement, part: PartSpec) -> list[Vec3]:
    return [transform_point(placement.position, placement.orientation, p)
            for p in part.sockets]


def occupancy_cells(placement: Placement, part: PartSpec) -> frozenset[tuple[int, int, int]]:
    """Grid cells (20 x 8 x 20 LDU) covered by the placement's body."""
    return cells_from_bbox(world_bbox(placement, part))


def rests_on_ground(placement: Placement, part: PartSpec) -> bool:
    """True when the bottom face sits on the ground plane (y = 0)."""
    return abs(world_bbox(placement, part).max[1]) <= MATE_TOL


def resolve(catalog: Catalog, placement: Placement) -> PartSpec | None:
    return catalog.find(placement.part)


def connector_tables(placements: list[Placement],
                     catalog: Catalog) -> tuple[list, list]:
    """World studs and sockets per placement; unknown parts get empty rows."""
    studs: list[list[Vec3]] = []
    sockets: list[list[Vec3]] = []
    for placement in placements:
        spec = catalog.find(placement.part)
        if spec is None:
            studs.append([])
            sockets.append([])
        else:
            studs.append(world_studs(placement, spec))
            sockets.append(world_sockets(placement, spec))
    return studs, sockets
