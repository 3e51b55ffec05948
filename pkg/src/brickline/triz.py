"""Contradiction-matrix lookup and inventive-principle reference data."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


class UnknownParameter(Exception):
    pass


class _Sentinel:
    def __init__(self, label: str):
        self.label = label

    def __repr__(self) -> str:
        return self.label


# lookup results for the degenerate pairs
SELF_CONTRADICTION = _Sentinel("SelfContradiction")
NO_DOCUMENTED_PATTERN = _Sentinel("NoDocumentedPattern")


@dataclass(frozen=True)
class PrincipleTag:
    """A design-rationale tag attached to a model."""

    principle: int
    rationale: str = ""

    def __post_init__(self):
        if not 1 <= self.principle <= 40:
            raise ValueError(f"principle {self.principle} out of range 1..40")

    @property
    def name(self) -> str:
        return principle_name(self.principle)


def _read_data(filename: str) -> str:
    return (resources.files("brickline.data") / filename).read_text("utf-8")


@lru_cache(maxsize=1)
def _matrix() -> tuple[dict[int, str], dict[tuple[int, int], tuple[int, ...]]]:
    params: dict[int, str] = {}
    cells: dict[tuple[int, int], tuple[int, ...]] = {}
    for raw in _read_data("matrix.txt").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "param":
            params[int(fields[1])] = " ".join(fields[2:])
        elif fields[0] == "cell":
            improve, worsen = int(fields[1]), int(fields[2])
            cells[(improve, worsen)] = tuple(int(f) for f in fields[3:])
    return params, cells


@lru_cache(maxsize=1)
def _principles() -> dict[int, dict]:
    entries: dict[int, dict] = {}
    for raw in _read_data("principles.txt").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(None, 2)
        if len(fields) < 3:
            continue
        kind, number, text = fields[0], int(fields[1]), fields[2]
        if kind == "principle":
            entries[number] = {"number": number, "name": text, "note": ""}
        elif kind == "note":
            entries[number]["note"] = text
    return entries


def parameters() -> dict[int, str]:
    """Covered engineering parameters, number -> name."""
    return dict(_matrix()[0])


def lookup(improve: int, worsen: int):
    """Recommended principles for improving one parameter at the cost of
    another. Returns a tuple of principle numbers in stored order, or one
    of the sentinels SELF_CONTRADICTION / NO_DOCUMENTED_PATTERN."""
    params, cells = _matrix()
    for value in (improve, worsen):
        if value not in params:
            covered = ", ".join(str(k) for k in sorted(params))
            raise UnknownParameter(
                f"parameter {value} not covered (covered: {covered})")
    if improve == worsen:
        return SELF_CONTRADICTION
    return cells.get((improve, worsen), NO_DOCUMENTED_PATTERN)


def cell_text(result) -> str:
    if result is SELF_CONTRADICTION:
        return "self-contradiction: improving a parameter against itself"
    if result is NO_DOCUMENTED_PATTERN:
        return "no documented pattern for this pair"
    return ", ".join(str(p) for p in result)


def principle(number: int) -> dict:
    entries = _principles()
    if number not in entries:
        raise UnknownParameter(f"principle {number} out of range 1..40")
    return dict(entries[number])


def principle_name(number: int) -> str:
    return principle(number)["name"]


def tag_report(models) -> list[tuple[int, int]]:
    """Count models carrying each principle tag (a model counts once per
    principle). Rows sorted by count descending, then principle number."""
    counts: dict[int, int] = {}
    for model in models:
        for number in {tag.principle for tag in model.tags}:
            counts[number] = counts.get(number, 0) + 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
