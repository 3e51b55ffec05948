"""Pure-Python kernels, API-identical to the compiled _speedups module.

Both backends work on flat parallel sequences so the compiled twin can use
typed memoryviews without conversion games. Inputs may be lists or numpy
arrays; outputs are plain dicts keyed by (owner_i, owner_j).
"""

from __future__ import annotations

from math import floor


def _as_list(seq):
    tolist = getattr(seq, "tolist", None)
    return tolist() if tolist is not None else list(seq)


def overlap_pair_counts(cell_keys, owners) -> dict[tuple[int, int], int]:
    """Count shared occupancy cells per placement pair.

    cell_keys[k] is an integer-encoded grid cell occupied by placement
    owners[k]. Returns {(i, j): shared_cells} with i < j.
    """
    buckets: dict[int, list[int]] = {}
    for key, owner in zip(_as_list(cell_keys), _as_list(owners)):
        buckets.setdefault(key, []).append(owner)
    pairs: dict[tuple[int, int], int] = {}
    for members in buckets.values():
        if len(members) < 2:
            continue
        for a in range(len(members) - 1):
            ia = members[a]
            for b in range(a + 1, len(members)):
                ib = members[b]
                if ia == ib:
                    continue
                pair = (ia, ib) if ia < ib else (ib, ia)
                pairs[pair] = pairs.get(pair, 0) + 1
    return pairs


def mating_pair_counts(stud_xyz, stud_owner, socket_xyz, socket_owner,
                       tol: float) -> dict[tuple[int, int], int]:
    """Count stud/socket coincidences per (stud owner, socket owner) pair.

    A stud of placement i mates a socket of placement j when every
    coordinate differs by at most tol. Self pairs are skipped. Keys are
    directional: (stud_owner, socket_owner).
    """
    sockets = _as_list(socket_xyz)
    sock_owner = _as_list(socket_owner)
    grid: dict[tuple[int, int, int], list[int]] = {}
    for k, (x, y, z) in enumerate(sockets):
        grid.setdefault((floor(x + 0.5), floor(y + 0.5), floor(z + 0.5)),
                        []).append(k)
    pairs: dict[tuple[int, int], int] = {}
    eps = tol + 1e-9
    for owner, (sx, sy, sz) in zip(_as_list(stud_owner), _as_list(stud_xyz)):
        qx, qy, qz = floor(sx + 0.5), floor(sy + 0.5), floor(sz + 0.5)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    for k in grid.get((qx + dx, qy + dy, qz + dz), ()):
                        other = sock_owner[k]
                        if other == owner:
                            continue
                        ox, oy, oz = sockets[k]
                        if (abs(sx - ox) <= eps and abs(sy - oy) <= eps
                                and abs(sz - oz) <= eps):
                            key = (owner, other)
                            pairs[key] = pairs.get(key, 0) + 1
    return pairs
