"""Compile build-spec text into step-sequenced models.

A build spec is a line-oriented format, one directive per line. `#` starts
a comment; parentheses and commas are whitespace. Grammar:

    name <text>
    author <text>
    part <id> [color <c>] [at <gx> <gz> [level] <lv>] [rot <0|90|180|270>]
    row <id> [color <c>] count <n> [at <gx> <gz> <lv>] axis <x|z> [stride <s>]
    wall <id> [color <c>] [at <gx> <gz> <lv>] width <studs> layers <n> axis <x|z>
    plate_fill <id> [color <c>] [at <gx> <gz> <lv>] w <studs> d <studs>
    ring <id> [color <c>] [center <gx> <gz> <lv>] count <n> radius <studs>
    submodel begin <name> / submodel end [<name>]
    call <name> [at <gx> <gz> <lv>] [rot <r>] [color <c>]
    step
    phase <label>
    triz <principle> [rationale]

Grid coordinates are studs and plate-levels; `at` names the cell under the
part's first (minimum-corner) stud, which lands at world x = gx*20,
z = gz*20 exactly. `start` is accepted for `at`. Row and wall lay parts
lengthwise along their axis; odd wall layers shift one stud (running bond).
Omitted color defaults to 16 (inherit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .catalog import Catalog, PartSpec
from .geometry import IDENTITY, PLATE_HEIGHT, STUD_PITCH, YAW_MATRICES, Vec3
from .model import Item, Model, Placement, SubRef
from .triz import PrincipleTag


class BuildError(Exception):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no else ""
        super().__init__(prefix + message)


class UnknownPart(BuildError):
    pass


class UnknownSubmodel(BuildError):
    pass


class NegativeLevel(BuildError):
    pass


class NonTilingDimensions(BuildError):
    pass


@dataclass(frozen=True)
class Directive:
    op: str
    args: dict
    line_no: int


@dataclass
class BuildSpec:
    name: str = ""
    author: str = ""
    directives: list[Directive] = field(default_factory=list)


# -- parsing ------------------------------------------------------------------

_TEXT_OPS = {"name", "author", "phase"}
_PART_OPS = {"part", "row", "wall", "plate_fill", "ring"}
_INT_KEYS = {"color", "rot", "count", "stride", "width", "layers",
             "w", "d", "radius"}
_POS_KEYS = {"at", "start", "center"}


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _unquote(text: str) -> str:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return text[1:-1]
    return text


def _parse_int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise BuildError(f"expected integer {what}, got {token!r}", line_no)


def _parse_fields(tokens: list[str], line_no: int) -> dict:
    """Read keyword-introduced fields from a token stream."""
    args: dict = {}
    i = 0
    while i < len(tokens):
        key = tokens[i]
        if key in _POS_KEYS:
            rest = tokens[i + 1:]
            if "level" in rest[:3]:
                rest = [t for t in rest[:4] if t != "level"] + rest[4:]
            if len(rest) < 3:
                raise BuildError(f"{key} needs gx gz level", line_no)
            args["gx"] = _parse_int(rest[0], "gx", line_no)
            args["gz"] = _parse_int(rest[1], "gz", line_no)
            args["level"] = _parse_int(rest[2], "level", line_no)
            consumed = len(tokens) - i - len(rest) + 3
            i += consumed
        elif key == "axis":
            if i + 1 >= len(tokens) or tokens[i + 1] not in ("x", "z"):
                raise BuildError("axis must be x or z", line_no)
            args["axis"] = tokens[i + 1]
            i += 2
        elif key in _INT_KEYS:
            if i + 1 >= len(tokens):
                raise BuildError(f"{key} needs a value", line_no)
            args[key] = _parse_int(tokens[i + 1], key, line_no)
            i += 2
        else:
            raise BuildError(f"unexpected token {key!r}", line_no)
    return args


def parse_spec(text: str) -> BuildSpec:
    spec = BuildSpec()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        op, _, rest = body.partition(" ")
        rest = rest.strip()
        if op in _TEXT_OPS:
            if op == "name":
                spec.name = _unquote(rest)
            elif op == "author":
                spec.author = _unquote(rest)
            else:
                if not rest:
                    raise BuildError("phase needs a label", line_no)
                spec.directives.append(
                    Directive("phase", {"label": _unquote(rest)}, line_no))
            continue
        if op == "triz":
            head, _, rationale = rest.partition(" ")
            principle = _parse_int(head, "principle", line_no)
            if not 1 <= principle <= 40:
                raise BuildError(f"principle {principle} out of range 1..40",
                                 line_no)
            spec.directives.append(Directive(
                "triz", {"principle": principle,
                         "rationale": _unquote(rationale)}, line_no))
            continue
        tokens = rest.replace("(", " ").replace(")", " ").replace(",", " ").split()
        if op == "step":
            if tokens:
                raise BuildError("step takes no arguments", line_no)
            spec.directives.append(Directive("step", {}, line_no))
        elif op == "submodel":
            if len(tokens) >= 2 and tokens[0] == "begin":
                spec.directives.append(
                    Directive("submodel_begin", {"name": tokens[1]}, line_no))
            elif tokens and tokens[0] == "end":
                args = {"name": tokens[1]} if len(tokens) > 1 else {}
                spec.directives.append(
                    Directive("submodel_end", args, line_no))
            else:
                raise BuildError("submodel needs begin <name> or end", line_no)
        elif op == "call":
            if not tokens:
                raise BuildError("call needs a submodel name", line_no)
            args = _parse_fields(tokens[1:], line_no)
            args["name"] = tokens[0]
            spec.directives.append(Directive("call", args, line_no))
        elif op in _PART_OPS:
            if not tokens:
                raise BuildError(f"{op} needs a part id", line_no)
            args = _parse_fields(tokens[1:], line_no)
            args["part"] = tokens[0]
            spec.directives.append(Directive(op, args, line_no))
        else:
            raise BuildError(f"unknown directive {op!r}", line_no)
    return spec


def load_spec(path: str) -> BuildSpec:
    with open(path, encoding="utf-8") as handle:
        return parse_spec(handle.read())


# -- compilation --------------------------------------------------------------

def _require(args: dict, keys: tuple[str, ...], op: str, line_no: int) -> None:
    for key in keys:
        if key not in args:
            raise BuildError(f"{op} requires {key}", line_no)


def _lower(part: PartSpec, gx: int, gz: int, level: int, yaw: int) -> Vec3:
    """Grid cell of the first stud -> world position of the part origin."""
    w, d = part.footprint_studs
    if yaw in (90, 270):
        w, d = d, w
    return (gx * STUD_PITCH + (w - 1) * 10.0,
            -level * PLATE_HEIGHT,
            gz * STUD_PITCH + (d - 1) * 10.0)


def _level_height(part: PartSpec, line_no: int) -> int:
    height = int(part.height_ldu)
    if height % int(PLATE_HEIGHT):
        raise NonTilingDimensions(
            f"{part.id} height {height} LDU is not a whole number of levels",
            line_no)
    return height // int(PLATE_HEIGHT)


class _Compiler:
    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.model = Model()
        self.steps: list[list[Item]] = self.model.steps
        self.current: list[Item] = []
        self.sub_name: str | None = None   # open submodel definition
        self.root: tuple[list[list[Item]], list[Item]] | None = None
        self.phase = ""
        self.group = 0
        self._sub_parts: dict[str, dict[str, int]] = {}  # name -> id counts

    # each geometry directive gets a fresh group id so step packing can
    # treat its output as indivisible
    def next_group(self) -> int:
        self.group += 1
        return self.group

    def flush_step(self) -> None:
        if self.current:
            self.steps.append(self.current)
            self.current = []

    def part_spec(self, part_id: str, line_no: int) -> PartSpec:
        spec = self.catalog.parts.get(part_id)
        if spec is None:
            raise UnknownPart(f"part {part_id!r} not in catalog", line_no)
        return spec

    def note_role(self, part_id: str) -> None:
        if self.phase and self.sub_name is None:
            roles = self.model.part_roles.setdefault(part_id, ())
            if self.phase not in roles:
                self.model.part_roles[part_id] = roles + (self.phase,)

    def place(self, part: PartSpec, color: int, gx: int, gz: int,
              level: int, yaw: int, group: int, line_no: int) -> None:
        if level < 0:
            raise NegativeLevel(f"level {level} below ground", line_no)
        self.current.append(Placement(
            part.id, color, _lower(part, gx, gz, level, yaw),
            YAW_MATRICES[yaw], group=group))
        self.note_role(part.id)

    def sub_part_counts(self, name: str) -> dict[str, int]:
        counts = self._sub_parts.get(name)
        if counts is None:
            counts = {}
            for items in self.model.submodels[name]:
                for item in items:
                    if isinstance(item, Placement):
                        counts[item.part] = counts.get(item.part, 0) + 1
                    else:
                        for pid, n in self.sub_part_counts(item.name).items():
                            counts[pid] = counts.get(pid, 0) + n
            self._sub_parts[name] = counts
        return counts


def _run_part(c: _Compiler, d: Directive) -> None:
    a = d.args
    part = c.part_spec(a["part"], d.line_no)
    yaw = a.get("rot", 0)
    if yaw not in YAW_MATRICES:
        raise BuildError(f"rot must be one of 0/90/180/270, got {yaw}",
                         d.line_no)
    c.place(part, a.get("color", 16), a.get("gx", 0), a.get("gz", 0),
            a.get("level", 0), yaw, c.next_group(), d.line_no)


def _run_row(c: _Compiler, d: Directive) -> None:
    a = d.args
    _require(a, ("count", "axis"), "row", d.line_no)
    part = c.part_spec(a["part"], d.line_no)
    count, axis = a["count"], a["axis"]
    if count < 1:
        raise BuildError(f"count must be positive, got {count}", d.line_no)
    span = part.footprint_studs[1]    # long side runs along the row axis
    stride = a.get("stride", span)
    if stride < 1:
        raise BuildError(f"stride must be positive, got {stride}", d.line_no)
    yaw = 90 if axis == "x" else 0
    gx, gz = a.get("gx", 0), a.get("gz", 0)
    group = c.next_group()
    for i in range(count):
        if axis == "x":
            c.place(part, a.get("color", 16), gx + i * stride, gz,
                    a.get("level", 0), yaw, group, d.line_no)
        else:
            c.place(part, a.get("color", 16), gx, gz + i * stride,
                    a.get("level", 0), yaw, group, d.line_no)


def _run_wall(c: _Compiler, d: Directive) -> None:
    a = d.args
    _require(a, ("width", "layers", "axis"), "wall", d.line_no)
    part = c.part_spec(a["part"], d.line_no)
    width, layers, axis = a["width"], a["layers"], a["axis"]
    if width < 1 or layers < 1:
        raise BuildError("width and layers must be positive", d.line_no)
    span = part.footprint_studs[1]
    if width % span:
        raise NonTilingDimensions(
            f"{part.id} length {span} does not tile width {width}", d.line_no)
    rise = _level_height(part, d.line_no)
    yaw = 90 if axis == "x" else 0
    gx, gz = a.get("gx", 0), a.get("gz", 0)
    group = c.next_group()
    for layer in range(layers):
        level = a.get("level", 0) + layer * rise
        shift = layer % 2          # running bond: odd courses move one stud
        for i in range(width // span):
            offset = i * span + shift
            if axis == "x":
                c.place(part, a.get("color", 16), gx + offset, gz, level,
                        yaw, group, d.line_no)
            else:
                c.place(part, a.get("color", 16), gx, gz + offset, level,
                        yaw, group, d.line_no)


def _run_plate_fill(c: _Compiler, d: Directive) -> None:
    a = d.args
    _require(a, ("w", "d"), "plate_fill", d.line_no)
    part = c.part_spec(a["part"], d.line_no)
    w, depth = a["w"], a["d"]
    if w < 1 or depth < 1:
        raise BuildError("w and d must be positive", d.line_no)
    pw, pd = part.footprint_studs
    if w % pw == 0 and depth % pd == 0:
        yaw, ew, ed = 0, pw, pd
    elif w % pd == 0 and depth % pw == 0:
        yaw, ew, ed = 90, pd, pw
    else:
        raise NonTilingDimensions(
            f"{part.id} ({pw}x{pd}) does not tile {w}x{depth}", d.line_no)
    gx, gz = a.get("gx", 0), a.get("gz", 0)
    group = c.next_group()
    for ix in range(w // ew):
        for iz in range(depth // ed):
            c.place(part, a.get("color", 16), gx + ix * ew, gz + iz * ed,
                    a.get("level", 0), yaw, group, d.line_no)


def _run_ring(c: _Compiler, d: Directive) -> None:
    a = d.args
    _require(a, ("count", "radius"), "ring", d.line_no)
    part = c.part_spec(a["part"], d.line_no)
    count, radius = a["count"], a["radius"]
    if count < 1 or radius < 1:
        raise BuildError("count and radius must be positive", d.line_no)
    gx, gz = a.get("gx", 0), a.get("gz", 0)
    group = c.next_group()
    seen: set[tuple[int, int]] = set()
    for i in range(count):
        angle = 2.0 * math.pi * i / count
        cell = (gx + math.floor(radius * math.cos(angle) + 0.5),
                gz + math.floor(radius * math.sin(angle) + 0.5))
        if cell in seen:               # grid snap can fold neighbors together
            continue
        seen.add(cell)
        c.place(part, a.get("color", 16), cell[0], cell[1],
                a.get("level", 0), 0, group, d.line_no)


def _run_call(c: _Compiler, d: Directive) -> None:
    a = d.args
    name = a["name"]
    if name not in c.model.submodels:
        raise UnknownSubmodel(f"submodel {name!r} not defined", d.line_no)
    if name == c.sub_name:
        raise UnknownSubmodel(f"submodel {name!r} cannot call itself",
                              d.line_no)
    level = a.get("level", 0)
    if level < 0:
        raise NegativeLevel(f"level {level} below ground", d.line_no)
    yaw = a.get("rot", 0)
    if yaw not in YAW_MATRICES:
        raise BuildError(f"rot must be one of 0/90/180/270, got {yaw}",
                         d.line_no)
    position = (a.get("gx", 0) * STUD_PITCH, -level * PLATE_HEIGHT,
                a.get("gz", 0) * STUD_PITCH)
    c.current.append(SubRef(name, a.get("color", 16), position,
                            YAW_MATRICES[yaw], group=c.next_group()))
    if c.phase and c.sub_name is None:
        for pid in c.sub_part_counts(name):
            c.note_role(pid)


def compile(spec: BuildSpec, catalog: Catalog) -> Model:  # noqa: A001
    """Expand directives in order into a Model. Pure and deterministic."""
    c = _Compiler(catalog)
    c.model.name = spec.name
    c.model.author = spec.author
    runners = {"part": _run_part, "row": _run_row, "wall": _run_wall,
               "plate_fill": _run_plate_fill, "ring": _run_ring,
               "call": _run_call}
    for d in spec.directives:
        if d.op == "step":
            c.flush_step()
        elif d.op == "phase":
            if c.sub_name is not None:
                raise BuildError("phase not allowed inside a submodel",
                                 d.line_no)
            c.phase = d.args["label"]
            c.model.phases.setdefault(len(c.steps), c.phase)
        elif d.op == "triz":
            c.model.tags.append(PrincipleTag(d.args["principle"],
                                             d.args["rationale"]))
        elif d.op == "submodel_begin":
            name = d.args["name"]
            if c.sub_name is not None:
                raise BuildError("submodel definitions cannot nest", d.line_no)
            if name in c.model.submodels:
                raise BuildError(f"submodel {name!r} already defined",
                                 d.line_no)
            c.flush_step()
            c.root = (c.steps, c.current)
            c.sub_name = name
            c.steps = c.model.submodels.setdefault(name, [])
            c.current = []
        elif d.op == "submodel_end":
            if c.sub_name is None:
                raise BuildError("submodel end without begin", d.line_no)
            closing = d.args.get("name")
            if closing and closing != c.sub_name:
                raise BuildError(
                    f"submodel end {closing!r} does not match begin"
                    f" {c.sub_name!r}", d.line_no)
            c.flush_step()
            if not c.model.submodels[c.sub_name]:
                raise BuildError(f"submodel {c.sub_name!r} is empty",
                                 d.line_no)
            c.steps, c.current = c.root
            c.sub_name = None
            c.root = None
        else:
            runners[d.op](c, d)
    if c.sub_name is not None:
        raise BuildError(f"submodel {c.sub_name!r} never ends")
    c.flush_step()
    return c.model


def compile_text(text: str, catalog: Catalog) -> Model:
    return compile(parse_spec(text), catalog)


# -- step packing -------------------------------------------------------------

def _atomic_groups(steps: list[list[Item]]) -> list[list[Item]]:
    """Split items into runs sharing a directive group; ungrouped items
    (group -1, e.g. from imported files) stand alone."""
    groups: list[list[Item]] = []
    last = None
    for items in steps:
        for item in items:
            if item.group == -1 or item.group != last:
                groups.append([item])
            else:
                groups[-1].append(item)
            last = item.group
        last = None                    # never merge across an author's step
    return groups


def _group_size(model: Model, items: list[Item],
                cache: dict[str, int]) -> int:
    total = 0
    for item in items:
        if isinstance(item, Placement):
            total += 1
            continue
        if item.name not in cache:
            cache[item.name] = sum(
                _group_size(model, sub_items, cache)
                for sub_items in model.submodels[item.name])
        total += cache[item.name]
    return total


def pack_steps(model: Model, target: int = 10) -> Model:
    """Re-partition top-level steps so each holds between 1 and 2*target
    parts without splitting any single directive's output."""
    if target < 1:
        raise ValueError(f"target must be positive, got {target}")
    groups = _atomic_groups(model.steps)
    cache: dict[str, int] = {}
    packed: list[list[Item]] = []
    current: list[Item] = []
    current_parts = 0
    for group in groups:
        size = _group_size(model, group, cache)
        if current and (current_parts >= target
                        or current_parts + size > 2 * target):
            packed.append(current)
            current, current_parts = [], 0
        current.extend(group)
        current_parts += size
    if current:
        packed.append(current)
    out = Model(name=model.name, author=model.author, steps=packed,
                submodels=model.submodels, part_roles=model.part_roles,
                tags=list(model.tags))
    # phase labels follow the first item of the step they annotated
    firsts = {}
    position = 0
    for new_index, items in enumerate(packed):
        for item in items:
            firsts[position] = new_index
            position += 1
    position = 0
    for old_index, items in enumerate(model.steps):
        if old_index in model.phases and position in firsts:
            out.phases.setdefault(firsts[position], model.phases[old_index])
        position += len(items)
    return out
