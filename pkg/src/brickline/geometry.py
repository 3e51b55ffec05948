"""Placement arithmetic on the stud lattice.

All distances are LDU (LDraw units): 20 LDU per stud of pitch, 8 LDU per
plate of height, 24 LDU per brick. -y is up, so a part resting on the
ground has its top surface at negative y and its bottom face at y = 0.

Parts use a local frame with the origin at the bottom-center of the body:
the body spans y in [-height, 0], studs sit on the y = -height face and
sockets on the y = 0 face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

Vec3 = Tuple[float, float, float]
Mat3 = Tuple[Tuple[float, float, float],
             Tuple[float, float, float],
             Tuple[float, float, float]]

STUD_PITCH = 20.0      # LDU between adjacent stud centers (8 mm)
PLATE_HEIGHT = 8.0     # LDU per vertical level
BRICK_HEIGHT = 24.0    # three plates
MM_PER_LDU = 0.4
MATE_TOL = 0.5         # coordinate tolerance for stud/socket coincidence

# occupancy cell dimensions: one stud of footprint by one plate of height
CELL = (20.0, 8.0, 20.0)
# bboxes are shrunk by this much before quantization so that parts sharing
# a face do not appear to share a cell
CELL_SHRINK = 0.5

IDENTITY: Mat3 = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

# the four legal builder orientations: yaw about the vertical axis
YAW_MATRICES: dict[int, Mat3] = {
    0: IDENTITY,
    90: ((0.0, 0.0, -1.0), (0.0, 1.0, 0.0), (1.0, 0.0, 0.0)),
    180: ((-1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, -1.0)),
    270: ((0.0, 0.0, 1.0), (0.0, 1.0, 0.0), (-1.0, 0.0, 0.0)),
}


def mat_apply(m: Mat3, v: Vec3) -> Vec3:
    return (
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    )


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )  # type: ignore[return-value]


def vec_add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def transform_point(position: Vec3, orientation: Mat3, local: Vec3) -> Vec3:
    return vec_add(position, mat_apply(orientation, local))


def ldu_to_mm(ldu: float) -> float:
    return ldu * MM_PER_LDU


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned box. min/max are inclusive corner coordinates."""

    min: Vec3
    max: Vec3

    def intersects(self, other: "Aabb") -> bool:
        """True when the interiors overlap; shared faces do not count."""
        return (
            self.min[0] < other.max[0] and other.min[0] < self.max[0]
            and self.min[1] < other.max[1] and other.min[1] < self.max[1]
            and self.min[2] < other.max[2] and other.min[2] < self.max[2]
        )

    def size(self) -> Vec3:
        return (
            self.max[0] - self.min[0],
            self.max[1] - self.min[1],
            self.max[2] - self.min[2],
        )


def bbox_of_points(points: Iterable[Vec3]) -> Aabb:
    xs, ys, zs = zip(*points)
    return Aabb((min(xs), min(ys), min(zs)), (max(xs), max(ys), max(zs)))


def transform_bbox(position: Vec3, orientation: Mat3, box: Aabb) -> Aabb:
    corners = [
        transform_point(position, orientation, (x, y, z))
        for x in (box.min[0], box.max[0])
        for y in (box.min[1], box.max[1])
        for z in (box.min[2], box.max[2])
    ]
    return bbox_of_points(corners)


# Occupancy is sampled on half-pitch subcells so that body faces landing on
# either the stud grid or the half-stud grid (odd footprints center between
# cell boundaries) discretize exactly. SUBCELLS_PER_CELL converts a subcell
# tally back to nominal CELL units for reporting.
SUBCELL = (CELL[0] / 2.0, CELL[1], CELL[2] / 2.0)
SUBCELLS_PER_CELL = 4


def cells_from_bbox(box: Aabb) -> frozenset[tuple[int, int, int]]:
    """Subcells covered by a box, shrunk so exact face contact is free.

    For boxes whose faces lie on the half-stud grid (every placement the
    builder can produce), coverage is exact: two boxes share a subcell iff
    their shrunk volumes intersect.
    """
    ranges = []
    for axis in range(3):
        lo = box.min[axis] + CELL_SHRINK
        hi = box.max[axis] - CELL_SHRINK
        if hi < lo:  # degenerate slab thinner than the shrink margin
            mid = (box.min[axis] + box.max[axis]) / 2.0
            lo = hi = mid
        ranges.append(range(
            math.floor(lo / SUBCELL[axis]),
            math.floor(hi / SUBCELL[axis]) + 1,
        ))
    return frozenset(
        (cx, cy, cz) for cx in ranges[0] for cy in ranges[1] for cz in ranges[2]
    )


def local_stud_grid(width: int, depth: int, y: float) -> tuple[Vec3, ...]:
    """Connector points of a width x depth footprint at height y, centered."""
    return tuple(
        ((i - (width - 1) / 2.0) * STUD_PITCH, y, (j - (depth - 1) / 2.0) * STUD_PITCH)
        for i in range(width)
        for j in range(depth)
    )


def snapped(value: float, step: float = 1.0) -> float:
    """Round to the nearest multiple of step, normalizing -0.0."""
    v = round(value / step) * step
    return 0.0 if v == 0 else v
