import os
import random
import subprocess
import sys

import numpy as np
import pytest

from brickline import _speedups_py
from brickline.kernels import (
    BACKEND,
    encode_cell,
    mating_adjacency,
    mating_pairs,
    overlap_pairs,
)

compiled = pytest.importorskip("brickline._speedups",
                               reason="compiled extension not built")


def test_encode_cell_is_injective_and_sortable():
    cells = [(x, y, z) for x in (-5, 0, 7) for y in (-3, 0, 11) for z in (-9, 0, 2)]
    keys = [encode_cell(c) for c in cells]
    assert len(set(keys)) == len(cells)
    assert sorted(keys) == [encode_cell(c) for c in sorted(cells)]


def test_encode_cell_layout():
    base = 1 << 20
    assert encode_cell((0, 0, 0)) == (base << 42) | (base << 21) | base
    assert encode_cell((1, 0, 0)) - encode_cell((0, 0, 0)) == 1 << 42
    assert encode_cell((0, 1, 0)) - encode_cell((0, 0, 0)) == 1 << 21
    assert encode_cell((0, 0, 1)) - encode_cell((0, 0, 0)) == 1


def test_overlap_pairs_small():
    cells = [
        [(0, 0, 0), (1, 0, 0)],       # 0
        [(1, 0, 0), (2, 0, 0)],       # 1: shares one cell with 0
        [(9, 9, 9)],                  # 2: alone
        [(0, 0, 0), (1, 0, 0)],       # 3: shares two cells with 0, one with 1
    ]
    assert overlap_pairs(cells) == {(0, 1): 1, (0, 3): 2, (1, 3): 1}


def test_overlap_pairs_empty_and_self():
    assert overlap_pairs([]) == {}
    assert overlap_pairs([[(0, 0, 0)], []]) == {}
    # the same owner listed twice in one cell is not a pair
    assert _speedups_py.overlap_pair_counts(
        np.asarray([5, 5], dtype=np.int64),
        np.asarray([2, 2], dtype=np.int32)) == {}


def test_mating_pairs_directional():
    studs = [[(0.0, -24.0, 0.0)], [(0.0, -48.0, 0.0)]]
    sockets = [[(0.0, 0.0, 0.0)], [(0.0, -24.0, 0.0)]]
    # placement 0's stud enters placement 1's socket only
    assert mating_pairs(studs, sockets) == {(0, 1): 1}
    assert mating_adjacency(studs, sockets) == {(0, 1): 1}


def test_mating_adjacency_merges_directions():
    # two clip-like parts gripping each other: one mate each way
    studs = [[(0.0, 0.0, 0.0)], [(10.0, 0.0, 0.0)]]
    sockets = [[(10.0, 0.0, 0.0)], [(0.0, 0.0, 0.0)]]
    assert mating_pairs(studs, sockets) == {(0, 1): 1, (1, 0): 1}
    assert mating_adjacency(studs, sockets) == {(0, 1): 2}


def test_mating_tolerance_boundary():
    studs = [[(0.0, 0.0, 0.0)]]
    sockets = [[], [(0.5, 0.0, 0.0)], [(0.6, 0.0, 0.0)]]
    assert mating_pairs(studs, sockets) == {(0, 1): 1}
    assert mating_pairs(studs, sockets, tol=0.7) == {(0, 1): 1, (0, 2): 1}


def test_mating_empty_inputs():
    assert mating_pairs([], []) == {}
    assert mating_pairs([[(0.0, 0.0, 0.0)]], [[]]) == {}


def _brute_overlaps(cell_sets):
    out = {}
    for i in range(len(cell_sets)):
        a = set(cell_sets[i])
        for j in range(i + 1, len(cell_sets)):
            n = len(a & set(cell_sets[j]))
            if n:
                out[(i, j)] = n
    return out


def _brute_matings(stud_lists, socket_lists, tol=0.5):
    out = {}
    eps = tol + 1e-9
    for i, studs in enumerate(stud_lists):
        for j, sockets in enumerate(socket_lists):
            if i == j:
                continue
            n = sum(1 for s in studs for o in sockets
                    if all(abs(s[k] - o[k]) <= eps for k in range(3)))
            if n:
                out[(i, j)] = n
    return out


def _random_inputs(rng):
    n = rng.randint(2, 30)
    # real occupancy lists never repeat a cell within one placement
    cell_sets = [
        sorted({(rng.randrange(-4, 5), rng.randrange(0, 4), rng.randrange(-4, 5))
                for _ in range(rng.randint(0, 12))})
        for _ in range(n)
    ]
    stud_lists = [
        [(rng.randrange(-4, 5) * 10.0, rng.randrange(-6, 1) * 8.0,
          rng.randrange(-4, 5) * 10.0) for _ in range(rng.randint(0, 6))]
        for _ in range(n)
    ]
    socket_lists = [
        [(rng.randrange(-4, 5) * 10.0, rng.randrange(-6, 1) * 8.0,
          rng.randrange(-4, 5) * 10.0) for _ in range(rng.randint(0, 6))]
        for _ in range(n)
    ]
    return cell_sets, stud_lists, socket_lists


def _pack(cell_sets):
    keys, owners = [], []
    for owner, cells in enumerate(cell_sets):
        for cell in cells:
            keys.append(encode_cell(cell))
            owners.append(owner)
    return (np.asarray(keys, dtype=np.int64),
            np.asarray(owners, dtype=np.int32))


def _points(point_lists):
    coords, owners = [], []
    for owner, pts in enumerate(point_lists):
        for p in pts:
            coords.append(p)
            owners.append(owner)
    xyz = np.asarray(coords, dtype=np.float64).reshape(len(coords), 3)
    return xyz, np.asarray(owners, dtype=np.int32)


@pytest.mark.parametrize("seed", range(40))
def test_backends_agree(seed):
    rng = random.Random(seed)
    cell_sets, stud_lists, socket_lists = _random_inputs(rng)

    keys, owners = _pack(cell_sets)
    expect = _brute_overlaps(cell_sets)
    assert _speedups_py.overlap_pair_counts(keys, owners) == expect
    assert compiled.overlap_pair_counts(keys, owners) == expect

    s_xyz, s_own = _points(stud_lists)
    o_xyz, o_own = _points(socket_lists)
    expect = _brute_matings(stud_lists, socket_lists)
    assert _speedups_py.mating_pair_counts(s_xyz, s_own, o_xyz, o_own, 0.5) == expect
    assert compiled.mating_pair_counts(s_xyz, s_own, o_xyz, o_own, 0.5) == expect


@pytest.mark.skipif(os.environ.get("BRICKLINE_PURE") == "1",
                    reason="pure backend forced for this run")
def test_compiled_backend_selected_by_default():
    assert BACKEND == "compiled"


def test_env_var_forces_pure_backend():
    env = dict(os.environ, BRICKLINE_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from brickline.kernels import BACKEND; print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure-python"
