"""Issue and report types shared by the validator and the sequencer."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"


class IssueKind(str, enum.Enum):
    COLLISION = "Collision"
    FLOATING_COMPONENT = "FloatingComponent"
    UNSUPPORTED = "Unsupported"
    UNKNOWN_PART = "UnknownPart"
    ILLEGAL_COLOR = "IllegalColor"
    ORDER_VIOLATION = "OrderViolation"
    INVENTORY_EXCEEDED = "InventoryExceeded"
    PARSE_DEFECT = "ParseDefect"


_SEVERITY = {
    IssueKind.COLLISION: Severity.ERROR,
    IssueKind.FLOATING_COMPONENT: Severity.ERROR,
    IssueKind.UNSUPPORTED: Severity.ERROR,
    IssueKind.UNKNOWN_PART: Severity.WARNING,
    IssueKind.ILLEGAL_COLOR: Severity.WARNING,
    IssueKind.ORDER_VIOLATION: Severity.ERROR,
    IssueKind.INVENTORY_EXCEEDED: Severity.ERROR,
    IssueKind.PARSE_DEFECT: Severity.WARNING,
}


@dataclass(frozen=True)
class Issue:
    kind: IssueKind
    message: str
    indices: tuple[int, ...] = ()   # flattened placement indices involved
    step: int | None = None
    count: int = 0                  # kind-specific: overlap cells, shortfall...

    @property
    def severity(self) -> Severity:
        return _SEVERITY[self.kind]

    def sort_key(self) -> tuple:
        return (
            self.step if self.step is not None else -1,
            self.indices[0] if self.indices else -1,
            self.kind.value,
            self.message,
        )


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.ERROR]

    @property
    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.WARNING]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for issue in self.issues:
            out[issue.kind.value] = out.get(issue.kind.value, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "stats": dict(self.stats),
            "issue_counts": self.counts(),
            "issues": [
                {
                    "kind": i.kind.value,
                    "severity": i.severity.value,
                    "message": i.message,
                    "indices": list(i.indices),
                    "step": i.step,
                    "count": i.count,
                }
                for i in self.issues
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_table(self) -> str:
        lines = []
        stats = self.stats
        lines.append("Validation report")
        lines.append(f"  parts: {stats.get('parts', 0)}"
                     f"  steps: {stats.get('steps', 0)}"
                     f"  components: {stats.get('connected_components', 0)}"
                     f"  grounded: {'yes' if stats.get('grounded') else 'no'}")
        if not self.issues:
            lines.append("  no issues")
            return "\n".join(lines)
        lines.append(f"  issues: {len(self.errors)} errors,"
                     f" {len(self.warnings)} warnings")
        for issue in self.issues:
            where = f" step {issue.step}" if issue.step is not None else ""
            lines.append(f"  [{issue.severity.value.upper():7}]"
                         f" {issue.kind.value}{where}: {issue.message}")
        return "\n".join(lines)
