"""Three-tier scoring, replay-based partial credit, and model diffs.

Tiers (1 worst, 3 best) on three axes:
  D (drawing): syntactic health: unknown parts, illegal colors, parse
    defects.
  M (mechanical): collision-free, fully grounded, single connected
    component.
  I (instructions): every step buildable in order, step sizes bounded.
The composite is always d + m + i, so 9 is a perfect score.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import kernels
from .catalog import Catalog
from .ldraw import Document, to_model
from .model import (
    Model,
    connector_tables,
    flatten,
    occupancy_cells,
    rests_on_ground,
)
from .report import IssueKind, ValidationReport
from .validator import validate


@dataclass(frozen=True)
class Thresholds:
    d_warn: float = 0.02      # defect fraction tolerated at D2
    m_warn: float = 0.02      # implicated-part fraction tolerated at M2
    page_density: int = 10    # parts per instruction page; 2x bounds a step


DEFAULT_THRESHOLDS = Thresholds()


@dataclass(frozen=True)
class Score:
    d: int
    m: int
    i: int
    composite: int
    partial_credit: float
    issue_summary: dict


def _fraction(count: int, parts: int) -> float:
    return count / parts if parts else 0.0


def _tier_d(counts: Mapping[str, int], parts: int, t: Thresholds) -> int:
    defects = (counts.get(IssueKind.UNKNOWN_PART.value, 0)
               + counts.get(IssueKind.ILLEGAL_COLOR.value, 0)
               + counts.get(IssueKind.PARSE_DEFECT.value, 0))
    if defects == 0:
        return 3
    if _fraction(defects, parts) <= t.d_warn:
        return 2
    return 1


def _tier_m(report: ValidationReport, t: Thresholds) -> int:
    floating = any(i.kind is IssueKind.FLOATING_COMPONENT
                   for i in report.issues)
    implicated: set[int] = set()
    for issue in report.issues:
        if issue.kind in (IssueKind.COLLISION, IssueKind.UNSUPPORTED):
            implicated.update(issue.indices)
    components = report.stats.get("connected_components", 0)
    if not floating and not implicated and components <= 1:
        return 3
    if not floating and _fraction(len(implicated),
                                  report.stats.get("parts", 0)) <= t.m_warn:
        return 2
    return 1


def _tier_i(report: ValidationReport, model: Model, t: Thresholds) -> int:
    if any(i.kind is IssueKind.ORDER_VIOLATION for i in report.issues):
        return 1
    limit = 2 * t.page_density
    if all(1 <= size <= limit for size in model.step_sizes()):
        return 3
    return 2


def score(model: Model, catalog: Catalog,
          inventory: Mapping[str, int] | None = None,
          thresholds: Thresholds = DEFAULT_THRESHOLDS,
          parse_defects: int = 0) -> Score:
    """Score a model. parse_defects folds in syntax damage found while
    reading the source file (see score_document)."""
    report = validate(model, catalog, inventory, check_order=True)
    counts = report.counts()
    if parse_defects:
        counts[IssueKind.PARSE_DEFECT.value] = (
            counts.get(IssueKind.PARSE_DEFECT.value, 0) + parse_defects)
    parts = report.stats["parts"]
    d = _tier_d(counts, parts, thresholds)
    m = _tier_m(report, thresholds)
    i = _tier_i(report, model, thresholds)
    return Score(d=d, m=m, i=i, composite=d + m + i,
                 partial_credit=partial_credit(model, catalog, inventory),
                 issue_summary=counts)


def score_document(doc: Document, catalog: Catalog,
                   inventory: Mapping[str, int] | None = None,
                   thresholds: Thresholds = DEFAULT_THRESHOLDS,
                   ) -> tuple[Score, Model]:
    model = to_model(doc, catalog)
    result = score(model, catalog, inventory, thresholds,
                   parse_defects=len(doc.defects))
    return result, model


def partial_credit(model: Model, catalog: Catalog,
                   inventory: Mapping[str, int] | None = None) -> float:
    """Replay placements in order, crediting each that is locally correct:
    known part, inventory still available, no collision with the accepted
    prefix, and mated to the prefix or the ground. Rejected placements are
    skipped without cascading. Empty model scores 1.0."""
    placements = flatten(model)
    if not placements:
        return 1.0
    known = [catalog.parts.get(p.part) for p in placements]
    cells = [occupancy_cells(p, spec) if spec is not None else frozenset()
             for p, spec in zip(placements, known)]
    overlap = kernels.overlap_pairs(cells)
    studs, sockets = connector_tables(placements, catalog)
    mates = kernels.mating_adjacency(studs, sockets)
    colliders: list[set[int]] = [set() for _ in placements]
    for (i, j) in overlap:
        colliders[i].add(j)
        colliders[j].add(i)
    partners: list[set[int]] = [set() for _ in placements]
    for (i, j) in mates:
        partners[i].add(j)
        partners[j].add(i)
    remaining = dict(inventory) if inventory is not None else None
    accepted: set[int] = set()
    for i, (p, spec) in enumerate(zip(placements, known)):
        if spec is None:
            continue
        if remaining is not None and remaining.get(p.part, 0) <= 0:
            continue
        if colliders[i] & accepted:
            continue
        if not rests_on_ground(p, spec) and not (partners[i] & accepted):
            continue
        accepted.add(i)
        if remaining is not None:
            remaining[p.part] -= 1
    return len(accepted) / len(placements)


def diff_models(base: Model, candidate: Model) -> dict:
    """Function-level diff: part multiset deltas by (part id, color),
    ignoring geometry."""
    def multiset(model: Model) -> dict[tuple[str, int], int]:
        out: dict[tuple[str, int], int] = {}
        for p in flatten(model):
            key = (p.part, p.color)
            out[key] = out.get(key, 0) + 1
        return out

    a, b = multiset(base), multiset(candidate)
    added = {k: b[k] - a.get(k, 0) for k in b if b[k] > a.get(k, 0)}
    removed = {k: a[k] - b.get(k, 0) for k in a if a[k] > b.get(k, 0)}
    return {
        "added": added,
        "removed": removed,
        "part_count_delta": sum(b.values()) - sum(a.values()),
        "step_count_delta": len(candidate.steps) - len(base.steps),
    }
