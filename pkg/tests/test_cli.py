import json

import pytest

from brickline.cli import EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_USAGE, main

GOOD_SPEC = (
    "name demo\n"
    "part brick_2x2 color 4 at 0 0 level 0\n"
    "step\n"
    "part brick_2x2 color 4 at 0 0 level 3\n")

FLOATING_SPEC = "part brick_1x1 color 4 at 0 0 level 5\n"

TOWER_LDR = (
    "1 4 0 -24 0 1 0 0 0 1 0 0 0 1 3005.dat\n"
    "0 STEP\n"
    "1 4 0 0 0 1 0 0 0 1 0 0 0 1 3005.dat\n")


@pytest.fixture
def spec_path(tmp_path):
    path = tmp_path / "demo.bspec"
    path.write_text(GOOD_SPEC)
    return str(path)


def test_compile_to_stdout(spec_path, capsys):
    assert main(["compile", spec_path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "1 4 10 0 10 1 0 0 0 1 0 0 0 1 3003.dat" in out
    assert "1 4 10 -24 10 1 0 0 0 1 0 0 0 1 3003.dat" in out
    assert "0 STEP" in out


def test_compile_to_file(spec_path, tmp_path, capsys):
    target = tmp_path / "out.ldr"
    assert main(["compile", spec_path, "-o", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    text = target.read_text()
    assert text.endswith("\n")
    assert text.count("3003.dat") == 2


def test_compile_pack_flag(tmp_path, capsys):
    path = tmp_path / "rows.bspec"
    path.write_text("row brick_1x1 count 6 axis x\nstep\n"
                    "row brick_1x1 count 6 axis x at 0 2 0\n")
    assert main(["compile", str(path), "--pack", "6"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("0 STEP") == 2


def test_compile_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.bspec"
    path.write_text("part no_such_brick\n")
    assert main(["compile", str(path)]) == EXIT_PARSE
    assert "error:" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["compile", "/nonexistent/x.bspec"]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_validate_clean(spec_path, capsys):
    assert main(["validate", spec_path]) == EXIT_OK
    assert "no issues" in capsys.readouterr().out


def test_validate_errors_exit_code(tmp_path, capsys):
    path = tmp_path / "float.bspec"
    path.write_text(FLOATING_SPEC)
    assert main(["validate", str(path)]) == EXIT_INVALID
    out = capsys.readouterr().out
    assert "FloatingComponent" in out


def test_validate_machine_format(tmp_path, capsys):
    path = tmp_path / "mixed.ldr"
    path.write_text("1 4 0 0 0 1 0 0 0 1 3005.dat\n"       # malformed
                    "1 4 0 0 0 1 0 0 0 1 0 0 0 1 3005.dat\n")
    assert main(["validate", str(path), "--format", "machine"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["parse_defects"] == 1
    assert payload["stats"]["parts"] == 1


def test_validate_inventory_shortfall(spec_path, tmp_path, capsys):
    inv = tmp_path / "kit.txt"
    inv.write_text("brick_2x2 1\n")
    assert main(["validate", spec_path, "--inventory", str(inv)]) == EXIT_INVALID
    assert "InventoryExceeded" in capsys.readouterr().out


def test_score_human(spec_path, capsys):
    assert main(["score", spec_path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "demo"
    assert "D3 M3 I3 9/9" in out


def test_score_machine(spec_path, capsys):
    assert main(["score", spec_path, "--format", "machine"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["parts"] == 2
    assert payload["steps"] == 2
    assert payload["pages"] == 1
    assert payload["composite"] == 9
    assert payload["partial_credit"] == 1.0


def test_score_threshold_flags(tmp_path, capsys):
    path = tmp_path / "wide.bspec"
    path.write_text("row brick_1x1 count 5 axis x\n")
    assert main(["score", str(path), "--page-density", "2",
                 "--format", "machine"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["i"] == 2            # 5 parts exceed the 2x2 step bound
    assert payload["pages"] == 3        # page estimate uses the same density


def test_bom_formats(spec_path, capsys):
    assert main(["bom", spec_path]) == EXIT_OK
    table = capsys.readouterr().out
    assert "brick_2x2" in table and "Brick 2x2" in table

    assert main(["bom", spec_path, "--format", "dsv",
                 "--delimiter", ","]) == EXIT_OK
    dsv = capsys.readouterr().out
    assert "brick_2x2,Brick 2x2,2," in dsv

    assert main(["bom", spec_path, "--format", "machine"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert rows == [{"part": "brick_2x2", "description": "Brick 2x2",
                     "count": 2, "role": ""}]


def test_steps_output(spec_path, capsys):
    assert main(["steps", spec_path]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert "brick_2x2 x1" in lines[0]

    assert main(["steps", spec_path, "--format", "machine"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["cumulative"] == 1 and rows[1]["cumulative"] == 2


def test_repair_reorders(tmp_path, capsys):
    path = tmp_path / "tower.ldr"
    path.write_text(TOWER_LDR)
    assert main(["repair", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    ground = out.index("1 4 0 0 0 1 0 0 0 1 0 0 0 1 3005.dat")
    upper = out.index("1 4 0 -24 0 1 0 0 0 1 0 0 0 1 3005.dat")
    assert ground < upper


def test_repair_unrepairable(tmp_path, capsys):
    path = tmp_path / "float.bspec"
    path.write_text(FLOATING_SPEC)
    assert main(["repair", str(path)]) == EXIT_INVALID
    assert "error:" in capsys.readouterr().err


def test_credit_formats(spec_path, capsys):
    assert main(["credit", spec_path]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1.0000"

    assert main(["credit", spec_path, "--format", "machine"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"partial_credit": 1.0, "parts": 2}


def test_credit_and_score_accept_inventory_files(spec_path, tmp_path,
                                                 capsys):
    kit = tmp_path / "kit.txt"
    kit.write_text("brick_2x2 1\n")
    assert main(["credit", spec_path, "--inventory", str(kit)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0.5000"

    assert main(["score", spec_path, "--inventory", str(kit),
                 "--format", "machine"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["partial_credit"] == 0.5
    assert payload["issue_summary"]["InventoryExceeded"] == 1


def test_usage_ranking_cli(tmp_path, capsys):
    a = tmp_path / "a.bspec"
    a.write_text("part brick_1x1 color 4\npart brick_1x1 color 4 at 2 0 0\n")
    b = tmp_path / "b.bspec"
    b.write_text("part plate_1x2 color 7\n")
    assert main(["usage", str(a), str(b)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["brick_1x1", "2"]
    assert lines[1].split() == ["plate_1x2", "1"]

    assert main(["usage", str(a), "--format", "machine"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == [
        {"part": "brick_1x1", "uses": 2}]


def test_triz_lookup_cli(capsys):
    assert main(["triz", "--improve", "1", "--worsen", "12"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "10, 36, 37, 40"

    assert main(["triz", "--improve", "14", "--worsen", "33",
                 "--format", "machine"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"improve": 14, "worsen": 33, "principles": [],
                       "note": "NoDocumentedPattern"}

    assert main(["triz", "--improve", "1", "--worsen", "1"]) == EXIT_OK
    assert "self-contradiction" in capsys.readouterr().out


def test_triz_principle_cli(capsys):
    assert main(["triz", "--principle", "1"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("1. Segmentation")


def test_triz_usage_errors(capsys):
    assert main(["triz"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["triz", "--improve", "2", "--worsen", "14"]) == EXIT_USAGE
    assert "not covered" in capsys.readouterr().err


def test_compare_cli(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({
        "tools": [{"print_minutes": 100, "print_mass_g": 500}],
        "modular": {"reconfig_minutes_per_tool": 5, "kit_mass_g": 50},
    }))
    assert main(["compare", str(plan)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "about 10x mass reduction" in out

    assert main(["compare", str(plan), "--format", "machine"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["mass_percent"] == 10

    plan.write_text("{not json")
    assert main(["compare", str(plan)]) == EXIT_PARSE


def test_custom_catalog_env(tmp_path, capsys, monkeypatch):
    parts = tmp_path / "parts.txt"
    parts.write_text("part mini mini.dat brick 1x1 h=24 mass=0.1\n")
    monkeypatch.setenv("BRICKLINE_CATALOG", str(parts))
    spec = tmp_path / "m.bspec"
    spec.write_text("part mini color 4\n")
    assert main(["compile", str(spec)]) == EXIT_OK
    assert "mini.dat" in capsys.readouterr().out
    # the bundled parts are gone under the custom catalog
    spec.write_text("part brick_1x1 color 4\n")
    assert main(["compile", str(spec)]) == EXIT_PARSE


def test_catalog_flag_missing_file(spec_path, capsys):
    assert main(["compile", spec_path, "--catalog", "/nope.txt"]) == EXIT_USAGE


def test_bad_invocations(capsys):
    assert main([]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["frobnicate"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["score", "x.bspec", "--page-density", "0"]) == EXIT_USAGE
