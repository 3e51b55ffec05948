"""Kernel selection and the placement-level pairing API.

The compiled extension is preferred when present; the pure-Python twin is
the fallback. Set BRICKLINE_PURE=1 to force the fallback (benchmarks and
tests use this to compare the two paths).
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, Sequence

import numpy as np

from .geometry import MATE_TOL, Vec3

if os.environ.get("BRICKLINE_PURE") == "1":
    from . import _speedups_py as _impl
    BACKEND = "pure-python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        from . import _speedups_py as _impl  # type: ignore[no-redef]
        BACKEND = "pure-python"

_AXIS_OFFSET = 1 << 20


def encode_cell(cell: tuple[int, int, int]) -> int:
    """Pack a grid cell into a sortable int64 (21 bits per axis)."""
    cx, cy, cz = cell
    return (((cx + _AXIS_OFFSET) << 42)
            | ((cy + _AXIS_OFFSET) << 21)
            | (cz + _AXIS_OFFSET))


def overlap_pairs(cell_sets: Sequence[Iterable[tuple[int, int, int]]]
                  ) -> dict[tuple[int, int], int]:
    """Shared occupancy cells per placement pair: {(i, j): cells}, i < j."""
    keys: list[int] = []
    owners: list[int] = []
    for owner, cells in enumerate(cell_sets):
        for cell in cells:
            keys.append(encode_cell(cell))
            owners.append(owner)
    return _impl.overlap_pair_counts(
        np.asarray(keys, dtype=np.int64),
        np.asarray(owners, dtype=np.int32),
    )


def _stack_points(point_lists: Sequence[Sequence[Vec3]]
                  ) -> tuple[np.ndarray, np.ndarray]:
    coords: list[Vec3] = []
    owners: list[int] = []
    for owner, points in enumerate(point_lists):
        for p in points:
            coords.append(p)
            owners.append(owner)
    xyz = np.asarray(coords, dtype=np.float64).reshape(len(coords), 3)
    return xyz, np.asarray(owners, dtype=np.int32)


def mating_pairs(stud_lists: Sequence[Sequence[Vec3]],
                 socket_lists: Sequence[Sequence[Vec3]],
                 tol: float = MATE_TOL) -> dict[tuple[int, int], int]:
    """Directional stud-into-socket coincidence counts: {(stud_owner,
    socket_owner): matings}."""
    stud_xyz, stud_owner = _stack_points(stud_lists)
    socket_xyz, socket_owner = _stack_points(socket_lists)
    return _impl.mating_pair_counts(stud_xyz, stud_owner,
                                    socket_xyz, socket_owner, float(tol))


def mating_adjacency(stud_lists: Sequence[Sequence[Vec3]],
                     socket_lists: Sequence[Sequence[Vec3]],
                     tol: float = MATE_TOL) -> dict[tuple[int, int], int]:
    """Undirected mating counts: both directions merged, keys i < j."""
    directed = mating_pairs(stud_lists, socket_lists, tol)
    merged: dict[tuple[int, int], int] = {}
    for (i, j), count in directed.items():
        key = (i, j) if i < j else (j, i)
        merged[key] = merged.get(key, 0) + count
    return merged
