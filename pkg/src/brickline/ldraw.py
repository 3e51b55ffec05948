"""LDraw text I/O: parsing, canonical serialization, model conversion.

Understands line type 0 (comments and the STEP / FILE / NOFILE metas) and
line type 1 (subfile references). Line types 2-5 are preserved verbatim as
opaque lines. Multi-file documents use the MPD convention: each file is a
`0 FILE <name>` scope, the primary file first.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .catalog import Catalog
from .geometry import IDENTITY, Mat3, Vec3
from .model import Item, Model, Placement, SubRef


class LdrawError(Exception):
    pass


class MalformedSubfileRef(LdrawError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class UnterminatedFile(LdrawError):
    pass


class DuplicateFileName(LdrawError):
    pass


class LineKind(enum.Enum):
    COMMENT = "comment"        # any other type-0 line, kept verbatim
    STEP = "step"
    FILE_BEGIN = "file_begin"
    FILE_END = "file_end"
    SUBFILE = "subfile"
    OPAQUE = "opaque"          # line types 2-5 and anything unrecognized


@dataclass(frozen=True)
class Line:
    kind: LineKind
    text: str = ""                      # raw line for COMMENT/OPAQUE, name for FILE_BEGIN
    color: int = 0
    position: Vec3 = (0.0, 0.0, 0.0)
    matrix: Mat3 = IDENTITY
    file: str = ""


@dataclass(frozen=True)
class ParseDefect:
    line_no: int
    reason: str
    raw: str


@dataclass
class Document:
    """A parsed LDraw document: (name, lines) per file, primary first.

    Single-file documents use one entry with an empty name.
    """

    files: list[tuple[str, list[Line]]] = field(default_factory=list)
    defects: list[ParseDefect] = field(default_factory=list)

    def primary(self) -> list[Line]:
        return self.files[0][1] if self.files else []


def _parse_subfile(tokens: list[str], line_no: int, raw: str,
                   defects: list[ParseDefect], strict: bool) -> Line | None:
    if len(tokens) != 15:
        reason = f"subfile reference has {len(tokens) - 1} fields, expected 14"
        if strict:
            raise MalformedSubfileRef(line_no, reason)
        defects.append(ParseDefect(line_no, reason, raw))
        return None
    try:
        color = int(tokens[1])
        nums = [float(t) for t in tokens[2:14]]
        if not all(math.isfinite(n) for n in nums):
            raise ValueError("non-finite coordinate")
    except ValueError as exc:
        reason = f"bad numeric field ({exc})"
        if strict:
            raise MalformedSubfileRef(line_no, reason) from exc
        defects.append(ParseDefect(line_no, reason, raw))
        return None
    position = (nums[0], nums[1], nums[2])
    matrix = (
        (nums[3], nums[4], nums[5]),
        (nums[6], nums[7], nums[8]),
        (nums[9], nums[10], nums[11]),
    )
    return Line(LineKind.SUBFILE, color=color, position=position,
                matrix=matrix, file=tokens[14])


def parse(text: str, strict: bool = False) -> Document:
    """Parse LDraw text. Malformed content lines are recorded as defects
    (and kept as opaque lines) unless strict, which raises on the first."""
    defects: list[ParseDefect] = []
    files: list[tuple[str, list[Line]]] = []
    names: set[str] = set()
    current: list[Line] = []
    current_name: str | None = None   # None until a 0 FILE appears
    preamble: list[Line] = []         # comments before the first 0 FILE
    closed = False                    # saw 0 NOFILE for the open scope

    def start_file(name: str, line_no: int) -> None:
        nonlocal current, current_name, closed
        if name in names:
            raise DuplicateFileName(f"line {line_no}: duplicate file {name!r}")
        if any(l.kind is not LineKind.COMMENT for l in preamble):
            raise UnterminatedFile(f"line {line_no}: content precedes the first FILE")
        if current_name is not None:
            files.append((current_name, current))
        names.add(name)
        current = list(preamble) if not files and preamble else []
        preamble.clear()
        current_name = name
        closed = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        tokens = stripped.split()
        kind = tokens[0]
        out: Line | None
        if kind == "0":
            rest = tokens[1:]
            if rest[:1] == ["STEP"] and len(rest) == 1:
                out = Line(LineKind.STEP)
            elif rest[:1] == ["FILE"] and len(rest) >= 2:
                start_file(stripped.split(None, 2)[2], line_no)
                continue
            elif rest[:1] == ["NOFILE"]:
                if current_name is None or closed:
                    raise UnterminatedFile(f"line {line_no}: NOFILE without an open FILE scope")
                closed = True
                continue
            else:
                out = Line(LineKind.COMMENT, text=stripped)
        elif kind == "1":
            out = _parse_subfile(tokens, line_no, stripped, defects, strict)
            if out is None:
                out = Line(LineKind.OPAQUE, text=stripped)
        elif kind in ("2", "3", "4", "5"):
            out = Line(LineKind.OPAQUE, text=stripped)
        else:
            reason = f"unknown line type {kind!r}"
            if strict:
                raise MalformedSubfileRef(line_no, reason)
            defects.append(ParseDefect(line_no, reason, stripped))
            out = Line(LineKind.OPAQUE, text=stripped)
        if current_name is None:
            if files or names:
                raise UnterminatedFile(f"line {line_no}: content outside FILE scopes")
            preamble.append(out)
        elif closed:
            if out.kind is not LineKind.COMMENT:
                raise UnterminatedFile(f"line {line_no}: content after NOFILE")
            current.append(out)
        else:
            current.append(out)

    if current_name is not None:
        files.append((current_name, current))
    elif preamble or not files:
        files.append(("", preamble))
    return Document(files=files, defects=defects)


def format_number(value: float) -> str:
    """Canonical numeric text: integers without a point, no trailing zeros."""
    if value == int(value) and abs(value) < 1e15:
        i = int(value)
        return "0" if i == 0 else str(i)
    return repr(value)


def _format_subfile(line: Line) -> str:
    m = line.matrix
    nums = [*line.position,
            m[0][0], m[0][1], m[0][2],
            m[1][0], m[1][1], m[1][2],
            m[2][0], m[2][1], m[2][2]]
    body = " ".join(format_number(n) for n in nums)
    return f"1 {line.color} {body} {line.file}"


def _serialize_lines(lines: list[Line]) -> list[str]:
    out = []
    for line in lines:
        if line.kind is LineKind.STEP:
            out.append("0 STEP")
        elif line.kind is LineKind.SUBFILE:
            out.append(_format_subfile(line))
        else:
            out.append(line.text)
    return out


def serialize(doc: Document) -> str:
    """Render a document to LDraw text (LF line endings, trailing newline)."""
    chunks: list[str] = []
    multi = len(doc.files) > 1 or (doc.files and doc.files[0][0])
    for name, lines in doc.files:
        if multi:
            chunks.append(f"0 FILE {name}")
        chunks.extend(_serialize_lines(lines))
        if multi:
            chunks.append("0 NOFILE")
    return "\n".join(chunks) + "\n" if chunks else ""


def placement_count(doc: Document) -> int:
    """Subfile reference lines across all files."""
    return sum(1 for _, lines in doc.files for l in lines
               if l.kind is LineKind.SUBFILE)


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


def _lines_equal(a: Line, b: Line) -> bool:
    if a.kind is not b.kind:
        return False
    if a.kind is LineKind.SUBFILE:
        return (
            a.color == b.color and a.file == b.file
            and all(_close(x, y, 0.5) for x, y in zip(a.position, b.position))
            and all(_close(a.matrix[i][j], b.matrix[i][j], 1e-6)
                    for i in range(3) for j in range(3))
        )
    return a.text == b.text


def semantic_equal(a: Document, b: Document) -> bool:
    """Same files, same classified line sequences; coordinates within
    formatting tolerance (0.5 LDU translation, 1e-6 rotation)."""
    if len(a.files) != len(b.files):
        return False
    for (name_a, lines_a), (name_b, lines_b) in zip(a.files, b.files):
        if name_a != name_b or len(lines_a) != len(lines_b):
            return False
        if not all(_lines_equal(x, y) for x, y in zip(lines_a, lines_b)):
            return False
    return True


# -- model conversion --------------------------------------------------------

PHASE_PREFIX = "0 // phase:"


def _steps_from_lines(lines: list[Line], catalog: Catalog,
                      subnames: set[str],
                      roles: dict[str, set[str]] | None = None,
                      phases: dict[int, str] | None = None) -> list[list[Item]]:
    steps: list[list[Item]] = []
    current: list[Item] = []
    phase = ""
    for line in lines:
        if line.kind is LineKind.STEP:
            steps.append(current)
            current = []
        elif line.kind is LineKind.COMMENT and line.text.startswith(PHASE_PREFIX):
            phase = line.text[len(PHASE_PREFIX):].strip()
            if phases is not None and phase:
                phases.setdefault(len(steps), phase)
        elif line.kind is LineKind.SUBFILE:
            if line.file in subnames:
                current.append(SubRef(line.file, line.color, line.position,
                                      line.matrix))
                continue
            spec = catalog.find(line.file)
            part_id = spec.id if spec is not None else line.file
            current.append(Placement(part_id, line.color, line.position,
                                     line.matrix))
            if roles is not None and phase:
                roles.setdefault(part_id, set()).add(phase)
    if current:
        steps.append(current)
    return steps


def _header_meta(lines: list[Line]) -> tuple[str, str]:
    name = author = ""
    for line in lines:
        if line.kind is not LineKind.COMMENT:
            break
        text = line.text[2:].strip() if len(line.text) > 2 else ""
        if text.startswith("Author:"):
            author = text[len("Author:"):].strip()
        elif text.startswith("Name:") or text.startswith("//"):
            continue
        elif text and not name:
            name = text
    return name, author


def to_model(doc: Document, catalog: Catalog) -> Model:
    """Interpret a document as a step-sequenced model.

    Step markers partition placements; anything after the last marker forms
    a final implicit step. Subfile references naming another file of the
    document become submodel calls; unknown parts are carried through under
    their raw filename for the validator to flag.
    """
    if not doc.files:
        return Model()
    subnames = {name for name, _ in doc.files[1:]}
    roles: dict[str, set[str]] = {}
    primary = doc.files[0][1]
    name, author = _header_meta(primary)
    model = Model(name=name, author=author)
    model.steps = _steps_from_lines(primary, catalog, subnames, roles,
                                    model.phases)
    for sub_name, lines in doc.files[1:]:
        model.submodels[sub_name] = _steps_from_lines(lines, catalog, subnames, roles)
    model.part_roles = {k: tuple(sorted(v)) for k, v in roles.items()}
    return model


def _lines_from_steps(steps: list[list[Item]], catalog: Catalog,
                      phase_markers: dict[int, str] | None = None) -> list[Line]:
    lines: list[Line] = []
    for index, items in enumerate(steps):
        if phase_markers and index in phase_markers:
            lines.append(Line(LineKind.COMMENT,
                              text=f"{PHASE_PREFIX} {phase_markers[index]}"))
        for item in items:
            if isinstance(item, Placement):
                spec = catalog.find(item.part)
                file = spec.ldraw_file if spec is not None else item.part
            else:
                file = item.name
            lines.append(Line(LineKind.SUBFILE, color=item.color,
                              position=item.position, matrix=item.orientation,
                              file=file))
        lines.append(Line(LineKind.STEP))
    return lines


def document_from_model(model: Model, catalog: Catalog,
                        phase_markers: dict[int, str] | None = None) -> Document:
    """Render a model to a document; submodels become MPD files."""
    if phase_markers is None:
        phase_markers = model.phases
    header = []
    if model.name:
        header.append(Line(LineKind.COMMENT, text=f"0 {model.name}"))
    suffix = ".mpd" if model.submodels else ".ldr"
    stem = (model.name or "model").lower().replace(" ", "_")
    header.append(Line(LineKind.COMMENT, text=f"0 Name: {stem}{suffix}"))
    if model.author:
        header.append(Line(LineKind.COMMENT, text=f"0 Author: {model.author}"))
    primary = header + _lines_from_steps(model.steps, catalog, phase_markers)
    if not model.submodels:
        return Document(files=[("", primary)])
    files = [(f"{stem}{suffix}", primary)]
    for sub_name, steps in model.submodels.items():
        files.append((sub_name, _lines_from_steps(steps, catalog)))
    return Document(files=files)
