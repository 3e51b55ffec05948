"""Build-order checks, greedy order repair, and page estimation.

A placement is buildable at its step when it rests on the ground or mates
a placement from the same or an earlier step. Connectivity of the final
model is the validator's business, not judged here.
"""

from __future__ import annotations

import heapq
from dataclasses import replace

from .catalog import Catalog
from .model import (
    Model,
    Placement,
    flatten,
    rests_on_ground,
    world_bbox,
)
from .report import Issue, IssueKind
from .validator import mating_graph


class Unrepairable(Exception):
    pass


def _neighbor_sets(count: int,
                   graph: dict[tuple[int, int], int]) -> list[set[int]]:
    neighbors: list[set[int]] = [set() for _ in range(count)]
    for (i, j) in graph:
        neighbors[i].add(j)
        neighbors[j].add(i)
    return neighbors


def check_order(model: Model, catalog: Catalog,
                placements: list[Placement] | None = None,
                graph: dict[tuple[int, int], int] | None = None,
                ) -> list[Issue]:
    """OrderViolation for every placement with no support by its own step."""
    if placements is None:
        placements = flatten(model)
    if graph is None:
        graph = mating_graph(placements, catalog)
    neighbors = _neighbor_sets(len(placements), graph)
    issues = []
    for i, p in enumerate(placements):
        spec = catalog.parts.get(p.part)
        if spec is None:
            continue
        if rests_on_ground(p, spec):
            continue
        if any(placements[j].step_index <= p.step_index
               for j in neighbors[i]):
            continue
        issues.append(Issue(
            IssueKind.ORDER_VIOLATION,
            f"{p.part} (placement {i}) in step {p.step_index + 1} has no"
            " support placed by that step",
            indices=(i,), step=p.step_index))
    return issues


def _height_above_ground(placement: Placement, catalog: Catalog) -> float:
    spec = catalog.parts.get(placement.part)
    if spec is None:
        return float("inf")        # unknown parts can never be scheduled
    return -world_bbox(placement, spec).max[1]


def repair_order(model: Model, catalog: Catalog) -> Model:
    """Reorder placements bottom-up so every prefix is self-supported.

    Greedy: repeatedly emit the lowest not-yet-placed placement that rests
    on the ground or mates something already placed; ties fall back to the
    original flat index. Step sizes are preserved; submodel structure is
    flattened into the reordered steps.
    """
    placements = flatten(model)
    if not placements:
        return Model(name=model.name, author=model.author)
    graph = mating_graph(placements, catalog)
    neighbors = _neighbor_sets(len(placements), graph)
    heights = [_height_above_ground(p, catalog) for p in placements]
    heap: list[tuple[float, int]] = []
    queued = [False] * len(placements)
    for i, p in enumerate(placements):
        spec = catalog.parts.get(p.part)
        if spec is not None and rests_on_ground(p, spec):
            heapq.heappush(heap, (heights[i], i))
            queued[i] = True
    order: list[int] = []
    placed = [False] * len(placements)
    while heap:
        _, i = heapq.heappop(heap)
        if placed[i]:
            continue
        placed[i] = True
        order.append(i)
        for j in neighbors[i]:
            if not queued[j]:
                heapq.heappush(heap, (heights[j], j))
                queued[j] = True
    if len(order) < len(placements):
        missing = len(placements) - len(order)
        raise Unrepairable(
            f"{missing} placement{'s' if missing != 1 else ''} cannot be"
            " reached from the ground; the final model is disconnected or"
            " floating")
    sizes = model.step_sizes()
    repaired = Model(name=model.name, author=model.author,
                     part_roles=dict(model.part_roles),
                     phases=dict(model.phases), tags=list(model.tags))
    cursor = 0
    for step_index, size in enumerate(sizes):
        items = [replace(placements[i], step_index=step_index)
                 for i in order[cursor:cursor + size]]
        cursor += size
        repaired.steps.append(items)
    return repaired


def estimate_pages(parts: int, per_page: int = 10) -> int:
    """Instruction pages at a fixed parts-per-page density, rounded half
    up, with any nonzero model taking at least one page."""
    if parts < 0:
        raise ValueError(f"parts must be >= 0, got {parts}")
    if parts == 0:
        return 0
    return max(1, (2 * parts + per_page) // (2 * per_page))


def step_summary(model: Model) -> list[dict]:
    """Per-step deltas: parts added by id, running total, phase label."""
    totals: list[dict[str, int]] = [dict() for _ in model.steps]
    for p in flatten(model):
        counts = totals[p.step_index]
        counts[p.part] = counts.get(p.part, 0) + 1
    rows = []
    cumulative = 0
    for index, counts in enumerate(totals):
        added = sum(counts.values())
        cumulative += added
        rows.append({
            "step": index + 1,
            "added": dict(sorted(counts.items())),
            "count": added,
            "cumulative": cumulative,
            "phase": model.phases.get(index, ""),
        })
    return rows
