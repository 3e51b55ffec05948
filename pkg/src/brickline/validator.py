"""Geometric and compositional checks over a model.

All checks run on the flattened placement list. Unknown parts are reported
as warnings and excluded from geometry checks; everything else is judged on
occupancy cells (collisions), stud/socket matings (connectivity), and the
ground plane (support).
"""

from __future__ import annotations

from typing import Mapping

from . import kernels
from .catalog import Catalog
from .geometry import MATE_TOL, SUBCELLS_PER_CELL
from .model import (
    Model,
    Placement,
    connector_tables,
    flatten,
    occupancy_cells,
    rests_on_ground,
    world_bbox,
)
from .report import Issue, IssueKind, ValidationReport


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:    # path compression
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1

    def groups(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return out


def _known_indices(placements: list[Placement],
                   catalog: Catalog) -> list[int]:
    return [i for i, p in enumerate(placements) if p.part in catalog.parts]


def check_parts(placements: list[Placement],
                catalog: Catalog) -> list[Issue]:
    """UnknownPart / IllegalColor warnings, one per offending placement."""
    issues = []
    for i, p in enumerate(placements):
        if p.part not in catalog.parts:
            issues.append(Issue(IssueKind.UNKNOWN_PART,
                                f"placement {i} references unknown part"
                                f" {p.part!r}",
                                indices=(i,), step=p.step_index))
        if not catalog.color_legal(p.color):
            issues.append(Issue(IssueKind.ILLEGAL_COLOR,
                                f"placement {i} uses color {p.color}"
                                " outside the palette",
                                indices=(i,), step=p.step_index))
    return issues


def check_collisions(placements: list[Placement],
                     catalog: Catalog) -> list[Issue]:
    """One Collision per overlapping pair; counts in nominal cell units."""
    known = _known_indices(placements, catalog)
    cells = [occupancy_cells(placements[i], catalog.parts[placements[i].part])
             for i in known]
    issues = []
    for (a, b), subcells in sorted(kernels.overlap_pairs(cells).items()):
        i, j = known[a], known[b]
        count = max(1, round(subcells / SUBCELLS_PER_CELL))
        step = max(placements[i].step_index, placements[j].step_index)
        issues.append(Issue(
            IssueKind.COLLISION,
            f"{placements[i].part} (placement {i}) overlaps"
            f" {placements[j].part} (placement {j}) by {count}"
            f" cell{'s' if count != 1 else ''}",
            indices=(i, j), step=step, count=count))
    return issues


def mating_graph(placements: list[Placement],
                 catalog: Catalog) -> dict[tuple[int, int], int]:
    """Stud/socket matings between placements: (i, j) i<j -> mate count."""
    studs, sockets = connector_tables(placements, catalog)
    return kernels.mating_adjacency(studs, sockets, tol=MATE_TOL)


def connectivity(placements: list[Placement], catalog: Catalog,
                 graph: dict[tuple[int, int], int] | None = None,
                 ) -> tuple[list[list[int]], list[bool]]:
    """Connected components over known placements, with grounded flags.

    Returns (components, grounded) where components are sorted index lists
    (ordered by first member) and grounded[k] is True when component k has
    a placement resting on the ground plane.
    """
    known = _known_indices(placements, catalog)
    if graph is None:
        graph = mating_graph(placements, catalog)
    back = {index: slot for slot, index in enumerate(known)}
    uf = UnionFind(len(known))
    for (i, j) in graph:
        if i in back and j in back:
            uf.union(back[i], back[j])
    components = sorted(
        (sorted(known[slot] for slot in members)
         for members in uf.groups().values()),
        key=lambda c: c[0])
    grounded = [
        any(rests_on_ground(placements[i], catalog.parts[placements[i].part])
            for i in members)
        for members in components
    ]
    return components, grounded


def check_support(placements: list[Placement],
                  catalog: Catalog) -> list[Issue]:
    """Unsupported: a placement embedded below the ground plane."""
    issues = []
    for i in _known_indices(placements, catalog):
        p = placements[i]
        box = world_bbox(p, catalog.parts[p.part])
        if box.max[1] > MATE_TOL:
            issues.append(Issue(
                IssueKind.UNSUPPORTED,
                f"{p.part} (placement {i}) extends"
                f" {box.max[1]:g} LDU below the ground plane",
                indices=(i,), step=p.step_index))
    return issues


def check_inventory(model: Model, counts: Mapping[str, int],
                    catalog: Catalog | None = None) -> list[Issue]:
    """One issue per part whose usage exceeds availability."""
    used: dict[str, int] = {}
    for p in flatten(model):
        used[p.part] = used.get(p.part, 0) + 1
    issues = []
    for part_id in sorted(used):
        available = counts.get(part_id, 0)
        if used[part_id] > available:
            issues.append(Issue(
                IssueKind.INVENTORY_EXCEEDED,
                f"{part_id}: used {used[part_id]}, available {available}",
                count=used[part_id] - available))
    return issues


def validate(model: Model, catalog: Catalog,
             inventory: Mapping[str, int] | None = None,
             check_order: bool = True) -> ValidationReport:
    """Run every check and assemble a deterministic report."""
    from .sequencer import check_order as order_violations

    placements = flatten(model)
    issues = list(check_parts(placements, catalog))
    issues += check_collisions(placements, catalog)
    graph = mating_graph(placements, catalog)
    components, grounded = connectivity(placements, catalog, graph)
    for members, is_grounded in zip(components, grounded):
        if not is_grounded:
            first = placements[members[0]]
            issues.append(Issue(
                IssueKind.FLOATING_COMPONENT,
                f"component of {len(members)} placement"
                f"{'s' if len(members) != 1 else ''} starting at"
                f" placement {members[0]} never touches the ground",
                indices=tuple(members), step=first.step_index))
    issues += check_support(placements, catalog)
    if inventory is not None:
        issues += check_inventory(model, inventory)
    if check_order:
        issues += order_violations(model, catalog, placements=placements,
                                   graph=graph)
    issues.sort(key=Issue.sort_key)
    return ValidationReport(
        issues=issues,
        stats={
            "parts": len(placements),
            "steps": len(model.steps),
            "connected_components": len(components),
            "grounded": all(grounded),
        },
    )
