"""Bills of materials, cross-model reuse analytics, and the provisioning
comparison between printing dedicated tools and reconfiguring one kit."""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import Catalog, Family
from .model import Model, flatten


class EmptyCorpus(Exception):
    pass


class ZeroPrintTime(Exception):
    pass


# fallback grams per part when the catalog does not carry a mass
FAMILY_MASS_G = {
    Family.BRICK: 1.7,
    Family.PLATE: 0.7,
    Family.ROUND: 0.8,
    Family.CONE: 0.6,
    Family.ARCH: 1.5,
    Family.SPECIALTY: 0.7,
}


@dataclass
class Inventory:
    counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for part_id, count in self.counts.items():
            if count < 0:
                raise ValueError(f"negative count for {part_id}: {count}")

    def total(self) -> int:
        return sum(self.counts.values())

    def available(self, part_id: str) -> int:
        return self.counts.get(part_id, 0)

    def get(self, part_id: str, default: int = 0) -> int:
        return self.counts.get(part_id, default)

    def __contains__(self, part_id: str) -> bool:
        return part_id in self.counts

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, part_id: str) -> int:
        return self.counts[part_id]

    def __len__(self) -> int:
        return len(self.counts)

    def keys(self):
        return self.counts.keys()

    def items(self):
        return self.counts.items()

    def values(self):
        return self.counts.values()

    def mass_g(self, catalog: Catalog) -> tuple[float, bool]:
        """Total grams and whether any part fell back to a family
        estimate."""
        total = 0.0
        estimated = False
        for part_id, count in self.counts.items():
            spec = catalog.find(part_id)
            if spec is not None and spec.mass_g is not None:
                total += count * spec.mass_g
            else:
                family = spec.family if spec is not None else Family.BRICK
                total += count * FAMILY_MASS_G[family]
                estimated = True
        return total, estimated


def parse_inventory(text: str) -> Inventory:
    counts: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(
                f"line {line_no}: expected 'part_id count', got {raw!r}")
        counts[fields[0]] = counts.get(fields[0], 0) + int(fields[1])
    return Inventory(counts)


def load_inventory(path: str) -> Inventory:
    with open(path, encoding="utf-8") as handle:
        return parse_inventory(handle.read())


@dataclass(frozen=True)
class BomRow:
    part: str
    description: str
    count: int
    role: str = ""


def bom(model: Model, catalog: Catalog) -> list[BomRow]:
    """Part counts over the flattened model, largest first, ties by id."""
    counts: dict[str, int] = {}
    for p in flatten(model):
        counts[p.part] = counts.get(p.part, 0) + 1
    rows = []
    for part_id in sorted(counts, key=lambda k: (-counts[k], k)):
        spec = catalog.find(part_id)
        description = spec.display_name if spec is not None else "unknown part"
        role = ", ".join(model.part_roles.get(part_id, ()))
        rows.append(BomRow(part_id, description, counts[part_id], role))
    return rows


def bom_table(rows: list[BomRow]) -> str:
    headers = ("Part ID", "Description", "Count", "Role")
    cells = [(r.part, r.description, str(r.count), r.role) for r in rows]
    widths = [max(len(h), *(len(c[k]) for c in cells)) if cells else len(h)
              for k, h in enumerate(headers)]
    def fmt(row):
        return " | ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip()
    lines = [fmt(headers), "-+-".join("-" * w for w in widths)]
    lines += [fmt(c) for c in cells]
    return "\n".join(lines)


def bom_dsv(rows: list[BomRow], delimiter: str = "\t") -> str:
    lines = [delimiter.join(("part_id", "description", "count", "role"))]
    for r in rows:
        lines.append(delimiter.join((r.part, r.description, str(r.count),
                                     r.role)))
    return "\n".join(lines)


def usage_ranking(corpus: list[Model]) -> list[tuple[str, int]]:
    """Total placements per part across a corpus, descending; the ranking
    of which parts earn their place in a shared kit."""
    if not corpus:
        raise EmptyCorpus("usage ranking needs at least one model")
    totals: dict[str, int] = {}
    for model in corpus:
        for p in flatten(model):
            totals[p.part] = totals.get(p.part, 0) + 1
    return sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))


def _percent(ratio: float) -> int:
    return int(ratio * 100 + 0.5)


def compare_provisioning(tools: list[dict], modular: dict) -> dict:
    """Compare printing each tool against reconfiguring one modular kit.

    tools: [{print_minutes, print_mass_g}, ...] one entry per tool.
    modular: {reconfig_minutes_per_tool, kit_mass_g}.
    """
    total_minutes = sum(t["print_minutes"] for t in tools)
    total_mass = sum(t["print_mass_g"] for t in tools)
    if total_minutes <= 0:
        raise ZeroPrintTime("total print time must be positive")
    if total_mass <= 0:
        raise ZeroPrintTime("total print mass must be positive")
    reconfig_total = len(tools) * modular["reconfig_minutes_per_tool"]
    time_ratio = reconfig_total / total_minutes
    mass_ratio = modular["kit_mass_g"] / total_mass
    summary = (f"modular kit: {_percent(time_ratio)}% of the print time at"
               f" {_percent(mass_ratio)}% of the printed mass")
    if mass_ratio > 0 and 1.0 / mass_ratio >= 2.0:
        summary += f"; about {int(1.0 / mass_ratio + 0.5)}x mass reduction"
    return {
        "tools": len(tools),
        "print_minutes": total_minutes,
        "print_mass_g": total_mass,
        "reconfig_minutes": reconfig_total,
        "kit_mass_g": modular["kit_mass_g"],
        "time_ratio": time_ratio,
        "mass_ratio": mass_ratio,
        "time_percent": _percent(time_ratio),
        "mass_percent": _percent(mass_ratio),
        "summary": summary,
    }


def comparison_table(result: dict) -> str:
    rows = [
        ("Approach", "Time", "Mass"),
        ("printed tools",
         f"{result['print_minutes']:g} min",
         f"{result['print_mass_g']:g} g"),
        ("modular kit",
         f"{result['reconfig_minutes']:g} min",
         f"{result['kit_mass_g']:g} g"),
        ("ratio",
         f"{result['time_percent']}%",
         f"{result['mass_percent']}%"),
    ]
    widths = [max(len(r[k]) for r in rows) for k in range(3)]
    lines = []
    for n, row in enumerate(rows):
        lines.append(" | ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        if n == 0:
            lines.append("-+-".join("-" * w for w in widths))
    lines.append(result["summary"])
    return "\n".join(lines)
