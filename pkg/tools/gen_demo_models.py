#!/usr/bin/env python3
"""Build the demo fixture corpus under fixtures/.

Emits four build specs (a castle, a research platform, a helicopter, and
twenty hand tools) plus a 47-part bin inventory, then recompiles every file
and asserts the counts, scores, and connectivity facts the test suite and
README quote. Run from the repo root:

    python3 tools/gen_demo_models.py
"""

import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "src"))

from brickline import (  # noqa: E402
    compile_text, default_catalog, flatten, pack_steps, score, validate,
)
from brickline.inventory import parse_inventory, usage_ranking  # noqa: E402
from brickline.model import Model  # noqa: E402
from brickline.triz import tag_report  # noqa: E402
from brickline.validator import connectivity  # noqa: E402

FIXTURES = os.path.join(ROOT, "fixtures")


# ---------------------------------------------------------------- castle

def castle_lines():
    """Walled castle: 860 parts over 82 steps, one connected body.

    Plan is a 50x50 stud ring. Two-skin curtain walls in running bond,
    plate caps joining the skins, eight watchtower calls, a tall keep
    linked to the north wall by a plate walkway one level up, and tie
    plates knitting caps to towers so the whole ring is one component.
    """
    L = []
    add = L.append
    add("name Stonegate Keep")
    add("author Quarry Lane Workshop")
    add("triz 1 curtain wall built from one repeated segment")
    add("triz 26 watchtower column copied to all eight stations")
    add("")
    add("submodel begin watchtower")
    for lv in range(0, 24, 3):
        add(f"part brick_2x2 color 72 at 0 0 level {lv}")
    add("part plate_2x2 color 71 at 0 0 level 24")
    add("part round_1x1 color 15 at 1 1 level 25")
    add("part round_1x1 color 15 at 1 1 level 28")
    add("part cone_1x1 color 4 at 1 1 level 31")
    add("submodel end")
    add("")
    add("submodel begin gatehouse")
    add("part brick_1x1 color 15 at 0 0 level 0")
    add("part brick_1x1 color 15 at 0 0 level 3")
    add("part brick_1x1 color 15 at 3 0 level 0")
    add("part brick_1x1 color 15 at 3 0 level 3")
    add("part arch_1x4 color 70 at 0 0 level 6 rot 90")
    add("part plate_1x4 color 7 at 0 0 level 9 rot 90")
    add("part round_1x1 color 15 at 0 0 level 10")
    add("part round_1x1 color 15 at 3 0 level 10")
    add("part cone_1x1 color 4 at 1 0 level 10")
    add("submodel end")
    add("")
    add("phase curtain walls")
    # faces: (axis, outer lane, inner lane); lanes are z for the x axis
    # faces and x for the z axis faces. Segments start at studs 2 and 27.
    faces = [("x", 0, 1), ("x", 49, 48), ("z", 0, 1), ("z", 49, 48)]
    for axis, outer, inner in faces:
        for start in (2, 27):
            for course in range(4):
                for lane, color in ((outer, 71), (inner, 72)):
                    at = (f"{start} {lane}" if axis == "x"
                          else f"{lane} {start}")
                    add(f"wall brick_1x4 color {color} at {at}"
                        f" level {6 * course} width 20 layers 2 axis {axis}")
                    add("step")
    add("")
    add("phase battlements")
    caps = [("x", "2 0", "27 0"), ("x", "2 48", "27 48"),
            ("z", "0 2", "0 27"), ("z", "48 2", "48 27")]
    for axis, first, second in caps:
        add(f"row plate_2x4 color 7 count 5 at {first} level 24 axis {axis}")
        add(f"row plate_2x4 color 7 count 5 at {second} level 24 axis {axis}")
        add("step")
    add("")
    add("phase towers")
    for gx, gz in ((0, 0), (48, 0), (0, 48), (48, 48),
                   (23, 0), (23, 48), (0, 23), (48, 23)):
        add(f"call watchtower at {gx} {gz} 0")
        add("step")
    add("")
    add("phase keep")
    add("plate_fill plate_4x4 color 72 at 17 21 level 0 w 4 d 8")
    add("wall brick_1x4 color 70 at 17 21 level 1 width 4 layers 8 axis x")
    add("step")
    add("wall brick_1x4 color 70 at 20 22 level 1 width 4 layers 8 axis z")
    add("wall brick_1x4 color 70 at 17 28 level 1 width 4 layers 8 axis x")
    add("step")
    # roof is inset one stud from the north face so the walkway can land
    # on the wall-top studs at level 25
    add("plate_fill plate_4x6 color 7 at 17 22 level 25 w 4 d 6")
    add("part brick_1x1 color 15 at 18 24 level 26")
    add("part round_1x1 color 15 at 18 24 level 29")
    add("part cone_1x1 color 4 at 18 24 level 32")
    add("row round_1x1 color 15 count 4 at 20 22 level 26 axis z stride 1")
    add("wall brick_1x4 color 70 at 17 22 level 1 width 4 layers 8 axis z")
    add("step")
    add("")
    add("phase walkway")
    # plate arch from the keep's wall top over the bailey to the north
    # battlement; each plate laps the previous one, and the last plate's
    # studs seat into the cap plates' underside sockets
    add("part plate_1x4 color 7 at 19 18 level 25")
    add("part plate_1x4 color 7 at 19 15 level 26")
    add("part plate_1x4 color 7 at 19 12 level 27")
    add("part plate_1x4 color 7 at 19 9 level 26")
    add("part plate_1x4 color 7 at 19 6 level 25")
    add("part plate_1x4 color 7 at 19 3 level 24")
    add("part plate_1x4 color 7 at 19 0 level 25")
    add("part round_1x1 color 15 at 19 13 level 28")
    add("row round_1x1 color 15 count 3 at 19 19 level 26 axis z stride 1")
    add("step")
    add("")
    add("phase finishing")
    # tie plates at level 25 lap each battlement cap onto its tower top
    ties = [
        ("plate_1x2", 1, 0, 90), ("plate_1x4", 0, 1, 0),
        ("plate_1x4", 45, 0, 90), ("plate_1x4", 48, 1, 0),
        ("plate_1x2", 1, 48, 90), ("plate_1x4", 0, 45, 0),
        ("plate_1x4", 45, 49, 90), ("plate_1x4", 48, 45, 0),
        ("plate_1x4", 20, 0, 90),
        ("plate_1x4", 24, 0, 90), ("plate_1x4", 20, 49, 90),
        ("plate_1x4", 24, 48, 90), ("plate_1x4", 0, 20, 0),
        ("plate_1x4", 0, 24, 0), ("plate_1x4", 49, 20, 0),
        ("plate_1x4", 48, 24, 0),
    ]

    def tie(spec):
        pid, gx, gz, rot = spec
        suffix = " rot 90" if rot else ""
        return f"part {pid} color 7 at {gx} {gz} level 25{suffix}"

    for spec in ties[:9]:
        add(tie(spec))
    add("row round_1x1 color 15 count 6 at 28 0 level 25 axis x stride 2")
    add("step")
    for spec in ties[9:]:
        add(tie(spec))
    add("call gatehouse at 10 48 25")
    add("step")
    return L


# ------------------------------------------------------------- station

ACCENTS = [1, 4, 14, 19, 25, 27, 28, 2, 3, 22, 46, 288]


def _bay_a(add, ox, oz, variant, accent, accent2):
    """Standard platform bay: 21-part frame step + 35-part deck step."""
    frame = "brick_2x2" if variant == 3 else "brick_2x4"
    add(f"plate_fill plate_4x6 color 72 at {ox} {oz} level 0 w 8 d 12")
    add(f"part plate_2x4 color 7 at {ox + 3} {oz + 4} level 1")
    for dx, dz in ((0, 0), (6, 0), (0, 8), (6, 8)):
        for lv in (1, 4, 7, 10):
            add(f"part {frame} color 71 at {ox + dx} {oz + dz} level {lv}")
    add("step")
    add(f"plate_fill plate_4x6 color 72 at {ox} {oz} level 13 w 8 d 12")
    add(f"part plate_2x4 color 7 at {ox + 3} {oz + 4} level 14")
    g = 14
    stud = "brick_1x1" if variant == 1 else "round_1x1"
    add(f"row {stud} color {accent} count 6"
        f" at {ox + 1} {oz + 1} level {g} axis x stride 1")
    add(f"row {stud} color {accent} count 6"
        f" at {ox + 1} {oz + 10} level {g} axis x stride 1")
    if variant == 1:
        add(f"row plate_2x2 color {accent2} count 4"
            f" at {ox} {oz + 2} level {g} axis x stride 2")
        add(f"row plate_2x2 color {accent2} count 4"
            f" at {ox} {oz + 8} level {g} axis x stride 2")
    else:
        add(f"row plate_1x2 color {accent2} count 4"
            f" at {ox} {oz + 3} level {g} axis x stride 2")
        add(f"row plate_1x2 color {accent2} count 4"
            f" at {ox} {oz + 8} level {g} axis x stride 2")
    cone = "round_1x1" if variant == 2 else "cone_1x1"
    for dx in (0, 2, 5, 7):
        add(f"part {cone} color {accent} at {ox + dx} {oz + 5} level {g}")
    mast = "plate_1x1" if variant == 2 else "clip_light"
    corner = "clip_light" if variant == 2 else "plate_1x1"
    add(f"part {mast} color 7 at {ox + 3} {oz} level {g}")
    add(f"part {mast} color 7 at {ox + 4} {oz} level {g}")
    for dx, dz in ((0, 0), (7, 0), (0, 11), (7, 11)):
        add(f"part {corner} color {accent2} at {ox + dx} {oz + dz} level {g}")
    add("step")


def _bay_b(add, ox, oz, accent, accent2):
    """Low service bay: 17-part frame step + 32-part deck step."""
    add(f"plate_fill plate_4x6 color 72 at {ox} {oz} level 0 w 8 d 12")
    add(f"part plate_2x4 color 7 at {ox + 3} {oz + 4} level 1")
    for dx, dz in ((0, 0), (6, 0), (0, 8), (6, 8)):
        for lv in (1, 4, 7):
            add(f"part brick_2x4 color 71 at {ox + dx} {oz + dz} level {lv}")
    add("step")
    add(f"plate_fill plate_4x6 color 72 at {ox} {oz} level 10 w 8 d 12")
    add(f"part plate_2x4 color 7 at {ox + 3} {oz + 4} level 11")
    g = 11
    add(f"row round_1x1 color {accent} count 6"
        f" at {ox + 1} {oz + 1} level {g} axis x stride 1")
    add(f"row plate_1x2 color {accent2} count 4"
        f" at {ox} {oz + 3} level {g} axis x stride 2")
    add(f"row plate_1x2 color {accent2} count 4"
        f" at {ox} {oz + 8} level {g} axis x stride 2")
    add(f"part plate_1x6 color {accent} at {ox + 1} {oz + 3}"
        f" level {g + 1} rot 90")
    add(f"part plate_1x6 color {accent} at {ox + 1} {oz + 8}"
        f" level {g + 1} rot 90")
    add(f"part round_2x2 color {accent} at {ox} {oz + 4} level {g}")
    add(f"part round_2x2 color {accent} at {ox + 5} {oz + 4} level {g}")
    add(f"part clip_light color 7 at {ox + 3} {oz} level {g}")
    for dx, dz in ((0, 0), (7, 0), (0, 11), (7, 11)):
        add(f"part plate_1x1 color {accent2} at {ox + dx} {oz + dz} level {g}")
    for dx, dz in ((1, 0), (6, 0), (1, 11), (6, 11)):
        add(f"part brick_1x1 color {accent} at {ox + dx} {oz + dz} level {g}")
    add("step")


def station_lines():
    """Research platform: 3,122 parts over 112 steps, 56 separate bays."""
    L = []
    add = L.append
    add("name Meridian Research Platform")
    add("author Dockside Build Collective")
    add("triz 1 survey grid assembled from one repeating bay")
    add("triz 26 bay design copied across fifty-six stations")
    for j in range(7):
        add("")
        add(f"phase platform row {j + 1}")
        for i in range(8):
            k = j * 8 + i
            ox, oz = 12 * i, 16 * j
            accent = ACCENTS[k % len(ACCENTS)]
            accent2 = ACCENTS[(k + 5) % len(ACCENTS)]
            if k >= 54:
                _bay_b(add, ox, oz, accent, accent2)
            else:
                _bay_a(add, ox, oz, k % 4, accent, accent2)
    return L


# ---------------------------------------------------------- helicopter

def helicopter_lines():
    """Rescue helicopter on skids plus a service cradle: 746 parts, 95
    steps, two grounded components (aircraft and cradle)."""
    L = []
    add = L.append
    add("name Harbor Rescue Helicopter")
    add("author Skyline Rotorcraft Works")
    add("triz 15 tail boom steps up one plate level per bay")
    add("triz 17 cargo packed in a second plate layer on the roof")
    add("")
    add("phase landing gear")
    add("row plate_2x6 color 72 count 10 at 0 0 level 0 axis z")
    add("step")
    add("row plate_2x6 color 72 count 10 at 6 0 level 0 axis z")
    add("step")
    for z in range(4, 56, 8):
        add(f"part plate_1x4 color 72 at 2 {z} level 0 rot 90")
    add("step")
    add("")
    add("phase airframe")
    add("plate_fill plate_4x6 color 71 at 0 0 level 1 w 8 d 60")
    add("step")
    # nose: brick cheeks around an arch windshield, plated up to the roof
    cheeks = [("brick_1x2", 2, "brick_1x2"), ("plate_1x2", 5, "plate_1x4"),
              ("brick_1x2", 6, "brick_1x4"), ("brick_1x2", 9, "brick_1x4"),
              ("plate_1x2", 12, "plate_1x4"), ("plate_1x2", 13, "plate_1x4")]
    for side, lv, middle in cheeks:
        add(f"part {side} color 15 at 0 0 level {lv} rot 90")
        add(f"part {side} color 15 at 6 0 level {lv} rot 90")
        mid = ("part arch_1x4 color 0 at 2 0 level 2 rot 90" if lv == 2
               else f"part {middle} color 15 at 2 0 level {lv} rot 90")
        add(mid)
    add("step")
    for x in (0, 7):
        for lv in (2, 8):
            for z, w in ((2, 16), (18, 20), (38, 20)):
                add(f"wall brick_1x2 color 15 at {x} {z} level {lv}"
                    f" width {w} layers 2 axis z")
                add("step")
    add("plate_fill plate_4x4 color 15 at 0 2 level 14 w 8 d 28")
    add("step")
    add("plate_fill plate_4x4 color 15 at 0 30 level 14 w 8 d 28")
    add("step")
    add("")
    add("phase rotor assembly")
    add("part brick_2x2 color 72 at 3 28 level 15")
    add("part brick_2x2 color 72 at 3 28 level 18")
    add("part plate_2x2 color 7 at 3 28 level 21")
    # four blades, each lapping one stud of the hub plate
    add("part plate_1x6 color 0 at 3 23 level 22")
    add("part plate_1x6 color 0 at 4 29 level 22")
    add("part plate_1x6 color 0 at 4 28 level 22 rot 90")
    add("part plate_1x6 color 0 at -2 29 level 22 rot 90")
    add("step")
    add("")
    add("phase tail boom")
    add("part plate_2x6 color 15 at 3 54 level 15")
    add("part plate_2x6 color 15 at 3 58 level 16")
    add("part plate_2x6 color 15 at 3 62 level 17")
    add("part plate_2x6 color 15 at 3 66 level 18")
    add("part brick_1x1 color 15 at 4 70 level 19")
    add("part brick_1x1 color 15 at 4 70 level 22")
    add("part plate_1x2 color 4 at 4 69 level 25")
    add("part cone_1x1 color 4 at 4 69 level 26")
    add("step")
    add("")
    add("phase cargo fit-out")
    for z in range(2, 31):
        c = (19, 25, 27)[z % 3]
        add(f"row plate_1x2 color {c} count 3 at 1 {z} level 2"
            f" axis x stride 2")
        add("step")
    for z in list(range(2, 28)) + list(range(30, 40)):
        c = (19, 25, 27)[z % 3]
        add(f"row plate_1x2 color {c} count 4 at 0 {z} level 15"
            f" axis x stride 2")
        add(f"row plate_1x2 color {c} count 4 at 0 {z} level 16"
            f" axis x stride 2")
        add("step")
    for z in range(40, 48):
        c = (19, 25, 27)[z % 3]
        add(f"row plate_1x2 color {c} count 4 at 0 {z} level 15"
            f" axis x stride 2")
        add("step")
    add("")
    add("phase ground support")
    add("part plate_4x6 color 70 at 12 10 level 0")
    add("part brick_1x2 color 70 at 12 10 level 1")
    add("part brick_1x2 color 70 at 12 14 level 1")
    add("part brick_1x2 color 70 at 15 10 level 1")
    add("part brick_1x2 color 70 at 15 14 level 1")
    add("part plate_1x4 color 7 at 12 11 level 4")
    add("part plate_1x4 color 7 at 15 11 level 4")
    add("step")
    return L


# --------------------------------------------------------------- tools

# (file slug, display name, [(principle, rationale)], part lines)
TOOLS = [
    ("tool_01_hammer", "Bench Hammer",
     [(1, "head and grip split into separate modules"),
      (35, "striking face swapped for a denser mix")],
     ["part plate_2x4 color 71 at 0 0 level 0",
      "part brick_1x2 color 4 at 0 0 level 1",
      "part brick_1x2 color 4 at 0 2 level 1",
      "part brick_1x4 color 4 at 0 0 level 4",
      "part plate_1x2 color 7 at 0 1 level 7",
      "part round_1x1 color 15 at 0 1 level 8",
      "part plate_1x1 color 7 at 0 3 level 7"]),
    ("tool_02_mallet", "Soft Mallet",
     [(1, "same chassis as the hammer with a soft head"),
      (10, "spare head staged on the rack in advance")],
     ["part plate_2x4 color 72 at 0 0 level 0",
      "part brick_1x2 color 19 at 1 0 level 1",
      "part brick_1x2 color 19 at 1 2 level 1",
      "part brick_1x4 color 19 at 1 0 level 4",
      "part plate_1x4 color 7 at 1 0 level 7",
      "part plate_1x2 color 7 at 1 1 level 8",
      "part round_1x1 color 0 at 1 3 level 8"]),
    ("tool_03_wrench", "Open Wrench",
     [(1, "jaw and shaft are separate stacks"),
      (28, "sized by stud count instead of a gauge insert")],
     ["part plate_1x4 color 7 at 0 0 level 0",
      "part plate_1x4 color 7 at 1 0 level 0",
      "part brick_1x4 color 14 at 0 0 level 1",
      "part brick_1x4 color 14 at 1 0 level 1",
      "part plate_2x2 color 7 at 0 0 level 4",
      "part plate_2x2 color 7 at 0 2 level 4",
      "part brick_1x1 color 14 at 0 0 level 5",
      "part brick_1x1 color 14 at 1 3 level 5"]),
    ("tool_04_spanner", "Box Spanner",
     [(1, "jaw blocks bolt onto a common shaft"),
      (15, "clip end adapts to either jaw spacing")],
     ["part plate_1x4 color 7 at 0 0 level 0",
      "part brick_1x2 color 1 at 0 0 level 1",
      "part brick_1x2 color 1 at 0 2 level 1",
      "part plate_1x2 color 7 at 0 1 level 4",
      "part brick_1x1 color 1 at 0 0 level 4",
      "part brick_1x1 color 1 at 0 3 level 4",
      "part clip_light color 7 at 0 0 level 7"]),
    ("tool_05_driver", "Stub Driver",
     [(1, "tip module separates from the grip"),
      (3, "grip thickened only where the palm lands")],
     ["part plate_2x2 color 7 at 0 0 level 0",
      "part brick_1x2 color 25 at 0 0 level 1",
      "part brick_1x2 color 25 at 1 0 level 1",
      "part plate_1x2 color 7 at 0 0 level 4 rot 90",
      "part plate_1x2 color 7 at 0 1 level 4 rot 90",
      "part round_1x1 color 0 at 0 0 level 5",
      "part cone_1x1 color 0 at 1 1 level 5"]),
    ("tool_06_chisel", "Flat Chisel",
     [(1, "edge cap lifts off the body for regrinds"),
      (13, "cutting face points up in the storage pose")],
     ["part plate_1x4 color 7 at 0 0 level 0",
      "part brick_1x4 color 70 at 0 0 level 1",
      "part plate_1x1 color 7 at 0 0 level 4",
      "part plate_1x1 color 7 at 0 3 level 4",
      "part brick_1x2 color 70 at 0 1 level 4",
      "part plate_1x2 color 7 at 0 1 level 7",
      "part round_1x1 color 70 at 0 1 level 8"]),
    ("tool_07_clamp", "Bar Clamp",
     [(1, "four identical posts make the frame"),
      (24, "pads mediate between jaw and work")],
     ["part plate_2x4 color 7 at 0 0 level 0",
      "part brick_1x2 color 2 at 0 0 level 1",
      "part brick_1x2 color 2 at 0 2 level 1",
      "part brick_1x2 color 2 at 1 0 level 1",
      "part brick_1x2 color 2 at 1 2 level 1",
      "part plate_2x2 color 7 at 0 0 level 4",
      "part plate_2x2 color 7 at 0 2 level 4",
      "part clip_light color 7 at 0 1 level 5"]),
    ("tool_08_vise", "Pin Vise",
     [(1, "twin jaw towers on a shared base"),
      (40, "mixed brick and plate courses in one body")],
     ["part plate_2x4 color 7 at 0 0 level 0",
      "part brick_2x2 color 72 at 0 0 level 1",
      "part brick_2x2 color 72 at 0 2 level 1",
      "part plate_2x4 color 7 at 0 0 level 4",
      "part brick_1x1 color 72 at 0 0 level 5",
      "part brick_1x1 color 72 at 1 3 level 5",
      "part plate_1x1 color 7 at 1 0 level 5",
      "part plate_1x1 color 7 at 0 3 level 5",
      "part plate_1x1 color 7 at 0 0 level 8"]),
    ("tool_09_square", "Try Square",
     [(1, "blade and stock are separate arms"),
      (17, "arms meet at a right angle instead of in line")],
     ["part plate_1x4 color 7 at 0 0 level 0",
      "part plate_1x4 color 7 at 1 0 level 0 rot 90",
      "part brick_1x4 color 14 at 0 0 level 1",
      "part brick_1x4 color 14 at 1 0 level 1 rot 90",
      "part plate_1x2 color 7 at 0 0 level 4 rot 90",
      "part plate_1x1 color 7 at 0 3 level 4",
      "part plate_1x1 color 7 at 2 0 level 4",
      "part plate_1x1 color 7 at 4 0 level 4"]),
    ("tool_10_gauge", "Depth Gauge",
     [(6, "base doubles as the reference face")],
     ["part plate_2x2 color 7 at 0 0 level 0",
      "part brick_2x2 color 15 at 0 0 level 1",
      "part plate_2x2 color 7 at 0 0 level 4",
      "part brick_1x1 color 15 at 0 0 level 5",
      "part brick_1x1 color 15 at 1 1 level 5",
      "part round_1x1 color 4 at 0 0 level 8",
      "part round_1x1 color 4 at 1 1 level 8"]),
    ("tool_11_brace", "Corner Brace",
     [(14, "arched span instead of a straight beam")],
     ["part plate_1x4 color 7 at 0 0 level 0 rot 90",
      "part brick_1x1 color 28 at 0 0 level 1",
      "part brick_1x1 color 28 at 3 0 level 1",
      "part arch_1x4 color 28 at 0 0 level 4 rot 90",
      "part plate_1x4 color 7 at 0 0 level 7 rot 90",
      "part round_1x1 color 0 at 0 0 level 8",
      "part round_1x1 color 0 at 1 0 level 8",
      "part round_1x1 color 0 at 2 0 level 8"]),
    ("tool_12_jig", "Drill Jig",
     [(5, "guide and fence merged into one block")],
     ["part plate_1x2 color 7 at 0 0 level 0",
      "part plate_1x2 color 7 at 0 2 level 0",
      "part brick_1x4 color 10 at 0 0 level 1",
      "part brick_1x2 color 10 at 0 0 level 4",
      "part brick_1x2 color 10 at 0 2 level 4",
      "part plate_1x2 color 7 at 0 1 level 7",
      "part clip_light color 7 at 0 1 level 8"]),
    ("tool_13_level", "Line Level",
     [(26, "vial stands in for the full frame")],
     ["part plate_1x2 color 7 at 0 0 level 0",
      "part plate_1x2 color 7 at 0 2 level 0",
      "part brick_1x4 color 46 at 0 0 level 1",
      "part brick_1x4 color 46 at 0 0 level 4",
      "part plate_1x4 color 7 at 0 0 level 7",
      "part brick_1x2 color 46 at 0 1 level 8",
      "part round_1x1 color 46 at 0 1 level 11"]),
    ("tool_14_punch", "Center Punch",
     [(31, "relief under the tip eases release")],
     ["part plate_2x2 color 7 at 0 0 level 0",
      "part brick_1x2 color 27 at 0 0 level 1",
      "part brick_1x2 color 27 at 1 0 level 1",
      "part plate_1x2 color 7 at 0 0 level 4 rot 90",
      "part plate_1x2 color 7 at 0 1 level 4 rot 90",
      "part cone_1x1 color 0 at 0 0 level 5",
      "part round_1x1 color 27 at 1 1 level 5"]),
    ("tool_15_reamer", "Taper Reamer",
     [(32, "flutes recolored to flag the wear band")],
     ["part plate_1x2 color 7 at 0 0 level 0",
      "part plate_1x2 color 7 at 0 2 level 0",
      "part brick_1x4 color 288 at 0 0 level 1",
      "part brick_1x2 color 288 at 0 1 level 4",
      "part plate_1x2 color 7 at 0 1 level 7",
      "part round_1x1 color 288 at 0 1 level 8",
      "part round_1x1 color 288 at 0 2 level 8"]),
    ("tool_16_file", "Hand File",
     [(35, "tooth band printed in a harder mix")],
     ["part plate_1x4 color 7 at 0 0 level 0",
      "part brick_1x2 color 484 at 0 0 level 1",
      "part brick_1x2 color 484 at 0 2 level 1",
      "part plate_1x4 color 7 at 0 0 level 4",
      "part brick_1x1 color 484 at 0 1 level 5",
      "part brick_1x1 color 484 at 0 2 level 5",
      "part plate_1x2 color 7 at 0 1 level 8"]),
    ("tool_17_saw", "Back Saw",
     [(10, "spine stiffened before the blade is fitted")],
     ["part brick_1x4 color 308 at 0 0 level 0",
      "part brick_1x4 color 308 at 1 0 level 0",
      "part brick_1x4 color 308 at 0 0 level 3",
      "part brick_1x4 color 308 at 1 0 level 3",
      "part plate_1x2 color 7 at 0 0 level 6 rot 90",
      "part brick_1x2 color 308 at 0 1 level 6",
      "part brick_1x2 color 308 at 1 1 level 6",
      "part plate_1x1 color 7 at 0 3 level 6",
      "part clip_light color 7 at 1 3 level 6"]),
    ("tool_18_drill", "Hand Drill",
     [(15, "chuck clip takes either bit size")],
     ["part brick_2x2 color 22 at 0 0 level 0",
      "part brick_1x4 color 22 at 0 0 level 3",
      "part brick_1x4 color 22 at 1 0 level 3",
      "part brick_1x2 color 22 at 0 0 level 6",
      "part brick_1x2 color 22 at 1 0 level 6",
      "part plate_1x2 color 7 at 0 0 level 9 rot 90",
      "part plate_1x2 color 7 at 0 1 level 9 rot 90",
      "part clip_light color 7 at 0 0 level 10"]),
    ("tool_19_press", "Arbor Press",
     [(3, "column mass concentrated over the ram")],
     ["part plate_1x2 color 7 at 0 0 level 0",
      "part plate_1x2 color 7 at 0 2 level 0",
      "part brick_1x4 color 0 at 0 0 level 1",
      "part brick_1x2 color 0 at 0 0 level 4",
      "part brick_1x2 color 0 at 0 2 level 4",
      "part plate_1x2 color 7 at 0 1 level 7",
      "part brick_1x4 color 0 at 0 0 level 8",
      "part brick_1x4 color 0 at 0 0 level 11",
      "part cone_1x1 color 0 at 0 1 level 14"]),
    ("tool_20_block", "Bench Block",
     [(13, "work hangs off the block instead of a vise")],
     ["part plate_1x4 color 7 at 0 0 level 0",
      "part brick_2x2 color 72 at 0 0 level 1",
      "part brick_1x2 color 72 at 0 2 level 1",
      "part brick_1x4 color 72 at 0 0 level 4",
      "part plate_1x2 color 7 at 0 0 level 7",
      "part plate_1x2 color 7 at 0 2 level 7",
      "part brick_1x4 color 72 at 0 0 level 8",
      "part plate_1x2 color 7 at 0 1 level 11",
      "part brick_1x2 color 72 at 0 1 level 12"]),
]


def tool_lines(slug, title, tags, parts):
    L = [f"name {title}", "author Field Kit Guild"]
    for principle, why in tags:
        L.append(f"triz {principle} {why}")
    L.append("")
    L.extend(parts)
    return L


INVENTORY_47 = """\
# One shared bin of 47 parts; every tool in fixtures/tools builds from it.
brick_1x2 6
brick_1x4 4
brick_1x1 4
brick_2x2 3
brick_2x4 2
plate_1x2 6
plate_1x4 4
plate_1x1 3
plate_2x2 2
plate_2x4 2
round_1x1 4
round_2x2 2
cone_1x1 1
clip_light 2
arch_1x4 2
"""


# --------------------------------------------------------- verification

def _check(label, got, want):
    if got != want:
        raise SystemExit(f"FAIL {label}: got {got!r}, want {want!r}")
    print(f"  ok {label}: {got!r}")


def _compile_file(path, catalog):
    with open(path, encoding="utf-8") as handle:
        return compile_text(handle.read(), catalog)


def verify(catalog):
    inv = parse_inventory(INVENTORY_47)

    castle = _compile_file(os.path.join(FIXTURES, "castle.bspec"), catalog)
    placements = flatten(castle)
    _check("castle parts", len(placements), 860)
    _check("castle steps", len(castle.step_sizes()), 82)
    report = validate(castle, catalog, check_order=True)
    _check("castle issues", [str(i) for i in report.issues], [])
    _check("castle components", report.stats["connected_components"], 1)
    s = score(castle, catalog)
    _check("castle score", (s.d, s.m, s.i, s.composite), (3, 3, 3, 9))
    _check("castle credit", s.partial_credit, 1.0)
    repacked = pack_steps(castle, 10)
    _check("castle pack equivalence",
           repacked.step_sizes(), castle.step_sizes())
    victim = next(i for i, p in enumerate(placements)
                  if p.part == "brick_2x2" and p.submodel
                  and abs(p.position[1] + 72) < 1e-9)
    kept = [p for i, p in enumerate(placements) if i != victim]
    damaged = Model(name=castle.name, steps=[kept])
    ds = score(damaged, catalog)
    if ds.m >= 3 or ds.partial_credit >= 1.0:
        raise SystemExit(f"FAIL castle deletion probe: {ds}")
    print(f"  ok castle deletion probe: m={ds.m}"
          f" credit={ds.partial_credit:.3f}")

    station = _compile_file(os.path.join(FIXTURES, "station.bspec"), catalog)
    _check("station parts", len(flatten(station)), 3122)
    _check("station steps", len(station.step_sizes()), 112)
    report = validate(station, catalog, check_order=True)
    _check("station issues", [str(i) for i in report.issues], [])
    _check("station components", report.stats["connected_components"], 56)
    s = score(station, catalog)
    _check("station score", (s.d, s.m, s.i, s.composite), (3, 2, 2, 7))

    heli = _compile_file(os.path.join(FIXTURES, "helicopter.bspec"), catalog)
    _check("helicopter parts", len(flatten(heli)), 746)
    _check("helicopter steps", len(heli.step_sizes()), 95)
    report = validate(heli, catalog, check_order=True)
    _check("helicopter issues", [str(i) for i in report.issues], [])
    _check("helicopter components", report.stats["connected_components"], 2)
    s = score(heli, catalog)
    _check("helicopter score", (s.d, s.m, s.i, s.composite), (3, 2, 3, 8))

    corpus = []
    for slug, _, _, _ in TOOLS:
        path = os.path.join(FIXTURES, "tools", slug + ".bspec")
        tool = _compile_file(path, catalog)
        report = validate(tool, catalog, inventory=dict(inv.items()),
                          check_order=True)
        if report.issues:
            raise SystemExit(
                f"FAIL {slug}: {[str(i) for i in report.issues]}")
        ts = score(tool, catalog, inventory=dict(inv.items()))
        if (ts.d, ts.m, ts.i) != (3, 3, 3):
            raise SystemExit(f"FAIL {slug} score: {ts}")
        corpus.append(tool)
    print("  ok tools: 20 files, each 3/3/3 and within the shared bin")
    ranking = usage_ranking(corpus)
    _check("tools usage top-3", ranking[:3],
           [("brick_1x2", 29), ("plate_1x2", 27), ("brick_1x4", 22)])
    _check("tools total parts", sum(n for _, n in ranking), 153)
    _check("inventory size", inv.total(), 47)
    report = tag_report(corpus)
    _check("tools top principle", report[0], (1, 9))
    distinct = len(report)
    if distinct < 15:
        raise SystemExit(f"FAIL tools principle spread: {distinct}")
    print(f"  ok tools principle spread: {distinct} distinct")

    components, grounded = connectivity(flatten(station), catalog)
    _check("station grounded components",
           (len(components), all(grounded)), (56, True))


def main():
    os.makedirs(os.path.join(FIXTURES, "tools"), exist_ok=True)
    outputs = {
        "castle.bspec": castle_lines(),
        "station.bspec": station_lines(),
        "helicopter.bspec": helicopter_lines(),
    }
    for slug, title, tags, parts in TOOLS:
        outputs[os.path.join("tools", slug + ".bspec")] = tool_lines(
            slug, title, tags, parts)
    for rel, lines in outputs.items():
        path = os.path.join(FIXTURES, rel)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
        print(f"wrote {os.path.relpath(path, ROOT)}")
    inv_path = os.path.join(FIXTURES, "inventory_47.txt")
    with open(inv_path, "w", encoding="utf-8") as handle:
        handle.write(INVENTORY_47)
    print(f"wrote {os.path.relpath(inv_path, ROOT)}")
    catalog = default_catalog()
    print("verifying:")
    verify(catalog)
    print("all fixture checks passed")


if __name__ == "__main__":
    main()
