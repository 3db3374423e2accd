from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from transweingarten.cli import EXIT_EMPTY, EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
from transweingarten.genesis import make_family
from transweingarten.surface import Ambient, GridSpec, TranslationSurface, dump_surface, sample_grid, translation_curvature


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


# -- curvature ------------------------------------------------------------


def test_scherk_curvature(capsys):
    code, out, _ = run(capsys, "curvature", "--family", "scherk", "--lambda", "1", "--grid", "-1:1:5,-1:1:5")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "x,y,H,K,W,valid"
    data = rows(out)
    assert len(data) == 25
    assert all(abs(float(r["H"])) < 1e-10 for r in data)


def test_plane_curvature(capsys):
    code, out, _ = run(capsys, "curvature", "--family", "plane", "--grid", "0:1:2,0:1:2")
    assert code == EXIT_OK
    assert [(r["H"], r["K"], r["W"], r["valid"]) for r in rows(out)] == [("0", "0", "1", "1")] * 4


def test_expression_curvature_matches_library(capsys):
    code, out, _ = run(capsys, "curvature", "--f", "t^3", "--g", "cos(t)", "--ambient", "euclidean", "--grid", "-1:1:4,0:2:3")
    assert code == EXIT_OK
    surface = TranslationSurface.from_expressions("t^3", "cos(t)")
    for r in rows(out):
        s = translation_curvature(surface, float(r["x"]), float(r["y"]))
        # 17 significant digits round-trip exactly
        assert (float(r["H"]), float(r["K"]), float(r["W"])) == (s.H, s.K, s.W)


def test_row_major_order(capsys):
    _, out, _ = run(capsys, "curvature", "--family", "plane", "--grid", "0:1:2,0:1:2")
    assert [(r["x"], r["y"]) for r in rows(out)] == [("0", "0"), ("1", "0"), ("0", "1"), ("1", "1")]


def test_surface_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(dump_surface(make_family("scherk")))
    code, out, _ = run(capsys, "curvature", "--surface", str(path), "--grid", "-0.5:0.5:3,-0.5:0.5:3")
    assert code == EXIT_OK and len(rows(out)) == 9


@pytest.mark.parametrize(
    "argv",
    [
        ["curvature", "--f", "sin(", "--g", "0"],
        ["curvature", "--f", "t", "--g", "0", "--grid", "1:0:3,0:1:3"],
        ["curvature", "--f", "t"],
        ["curvature", "--family", "plane", "--f", "t", "--g", "0"],
        ["curvature", "--surface", "/nonexistent/s.json"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_no_valid_samples_exits_3(capsys):
    code, _, _ = run(capsys, "curvature", "--f", "log(t)", "--g", "0", "--grid", "-2:-1:3,0:1:3")
    assert code == EXIT_EMPTY


# -- fit ------------------------------------------------------------------


def test_fit_verdicts(capsys):
    code, out, _ = run(capsys, "fit", "--family", "paraboloid", "--grid", "-1:1:21,-1:1:21")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "NotLinearWeingarten"

    code, out, _ = run(capsys, "fit", "--family", "cylinder")
    report = json.loads(out)
    assert code == EXIT_OK and report["verdict"] == "ConstantGaussCurvature"
    assert report["verdict_params"]["k"] == pytest.approx(0.0, abs=1e-12)

    code, out, _ = run(capsys, "fit", "--family", "scherk", "--grid", "-1:1:11,-1:1:11")
    report = json.loads(out)
    assert code == EXIT_OK and report["verdict"] == "ConstantMeanCurvature"
    assert report["verdict_params"]["h"] == pytest.approx(0.0, abs=1e-12)


# -- verify ---------------------------------------------------------------


def test_verify_c0_is_byte_stable(capsys):
    code1, out1, _ = run(capsys, "verify", "--suite", "c0")
    code2, out2, _ = run(capsys, "verify", "--suite", "c0")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2


def test_verify_all_reports_the_euclidean_factorization(capsys):
    # the cross combination vanishes identically, so the full suite cannot pass
    code, out, err = run(capsys, "verify", "--suite", "all", "--seed", "42")
    assert code == EXIT_FAILED
    assert "factorization/cross_combination_factors" in err
    failing = [(r["suite"], s["name"]) for r in json.loads(out) for s in r["steps"] if s["status"] == "fail"]
    assert failing == [("factorization", "cross_combination_factors")]


def test_verify_lorentzian_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lorentzian")
    assert code == EXIT_OK
    assert {r["reading"] for r in json.loads(out)} == {"uniform/spacelike"}


def test_hidden_mutation_flag(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "c0", "--mutate", "mixed_derivative_coefficient")
    assert code == EXIT_FAILED
    with pytest.raises(SystemExit):
        main(["verify", "--help"])
    assert "--mutate" not in capsys.readouterr().out


# -- mesh -----------------------------------------------------------------


def obj_counts(text: str) -> tuple[int, int]:
    lines = text.splitlines()
    return sum(l.startswith("v ") for l in lines), sum(l.startswith("f ") for l in lines)


def test_plane_mesh(capsys):
    code, out, _ = run(capsys, "mesh", "--family", "plane", "--grid", "0:1:2,0:1:2")
    assert code == EXIT_OK
    assert obj_counts(out) == (4, 1)
    assert "f 1 2 4 3" in out


def test_scherk_mesh(capsys):
    code, out, _ = run(capsys, "mesh", "--family", "scherk", "--lambda", "1", "--grid", "-1:1:11,-1:1:11")
    assert code == EXIT_OK
    assert obj_counts(out) == (121, 100)


def test_spacelike_mesh_straddling_degeneracy(capsys):
    # W = 1 - x^2: the columns x = -1 and x = 1 sit on W = 0
    code, out, _ = run(capsys, "mesh", "--f", "t^2/2", "--g", "0", "--ambient", "lorentz-spacelike", "--grid", "-1:1:5,-1:1:5")
    assert code == EXIT_OK
    surface = TranslationSurface.from_expressions("t^2/2", "0", Ambient.LORENTZ_SPACELIKE)
    valid = [s.valid for s in sample_grid(surface, GridSpec.parse("-1:1:5,-1:1:5"))]
    cells = sum(
        all(valid[k] for k in (j * 5 + i, j * 5 + i + 1, (j + 1) * 5 + i, (j + 1) * 5 + i + 1))
        for j in range(4)
        for i in range(4)
    )
    assert obj_counts(out) == (sum(valid), cells) == (15, 8)
    for line in out.splitlines():
        if line.startswith("v "):
            assert abs(float(line.split()[1])) < 1


def test_mesh_without_cells_exits_3(capsys):
    code, _, _ = run(capsys, "mesh", "--f", "t^2/2", "--g", "0", "--ambient", "lorentz-spacelike", "--grid", "1:2:3,0:1:3")
    assert code == EXIT_EMPTY


# -- generate -------------------------------------------------------------


def test_generate_plane(capsys):
    code, out, _ = run(capsys, "generate", "plane")
    data = json.loads(out)
    assert code == EXIT_OK and (data["f"], data["g"]) == ("0", "0")


def test_generate_scherk_check(capsys):
    code, out, err = run(capsys, "generate", "scherk", "--lambda", "1", "--check")
    assert code == EXIT_OK
    deviation = float(err.split("max deviation ")[1].split()[0])
    assert deviation < 1e-9
    assert json.loads(out)["f"] == "-log(cos(t))"


def test_generate_table(tmp_path, capsys):
    table = tmp_path / "profile.csv"
    code, _, _ = run(capsys, "generate", "scherk", "--lambda", "2", "--table", str(table))
    assert code == EXIT_OK
    data = rows(table.read_text())
    assert float(data[-1]["x"]) == 0.5
    assert float(data[-1]["f"]) == pytest.approx(-math.log(math.cos(1.0)) / 2, abs=1e-9)


def test_generate_zero_lambda(capsys):
    code, _, err = run(capsys, "generate", "scherk", "--lambda", "0")
    assert code == EXIT_INPUT and "error" in err


def test_check_needs_scherk(capsys):
    code, _, _ = run(capsys, "generate", "plane", "--check")
    assert code == EXIT_INPUT


# -- files ----------------------------------------------------------------


def test_output_file_written(tmp_path, capsys):
    out = tmp_path / "k.csv"
    code, stdout, _ = run(capsys, "curvature", "--family", "plane", "--grid", "0:1:2,0:1:2", "--out", str(out))
    assert code == EXIT_OK and stdout == ""
    assert out.read_text().startswith("x,y,H,K,W,valid\n")
    assert [p.name for p in tmp_path.iterdir()] == ["k.csv"]


def test_no_file_on_error(tmp_path, capsys):
    out = tmp_path / "mesh.obj"
    code, _, _ = run(capsys, "mesh", "--f", "t^2/2", "--g", "0", "--ambient", "lorentz-spacelike", "--grid", "1:2:3,0:1:3", "--out", str(out))
    assert code == EXIT_EMPTY
    assert list(tmp_path.iterdir()) == []


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "transweingarten", "curvature", "--family", "plane", "--grid", "0:1:2,0:1:2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.count("\n") == 5
