"""End-to-end CLI behavior: JSON schemas, exports, exit codes, determinism."""

import json
import math
import subprocess
import sys

import pytest

from amoebas.cli import main

CUBIC = "z1^3 + z2^3 + z1*z2 + 1"
CUBIC13 = "z1^3 + z2^3 + 1.3*z1*z2 + 1"
HARNACK = "z1^2*z2 + z1*z2^2 - 4*z1*z2 + 1"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_member_json(capsys):
    code, out, _ = run(capsys, "member", "--poly", CUBIC, "--point", "0,0")
    assert code == 0
    obj = json.loads(out)
    assert obj["tag"] == "Member"
    assert obj["point"] == [0.0, 0.0]
    assert len(obj["solutions"]) == 9
    for s in obj["solutions"]:
        assert set(s) == {"phi", "multiplicity", "critical", "score"}
        assert s["multiplicity"] == 2
        assert s["critical"] is True


def test_member_nonmember(capsys):
    code, out, _ = run(capsys, "member", "--poly", CUBIC13, "--point", "0,0")
    assert code == 0
    obj = json.loads(out)
    assert obj["tag"] == "NonMember"
    assert obj["solutions"] == []


def test_classify_complement_carries_order(capsys):
    code, out, _ = run(capsys, "classify", "--poly", CUBIC13, "--point", "0,0")
    assert code == 0
    obj = json.loads(out)
    assert obj["tag"] == "Complement"
    assert obj["order"] == [1, 1]


def test_classify_boundary_carries_caveat(capsys):
    w = math.log(0.5)
    code, out, _ = run(
        capsys, "classify", "--poly", "1 + z1 + z2", "--point", f"{w!r},{w!r}"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["tag"] == "Boundary"
    assert obj["caveat"] is False


def test_abs_point_matches_log_point(capsys):
    _, out_log, _ = run(capsys, "member", "--poly", CUBIC, "--point", "0,0")
    _, out_abs, _ = run(capsys, "member", "--poly", CUBIC, "--point", "1,1", "--abs")
    assert out_log == out_abs


def test_twelve_digit_floats(capsys):
    _, out, _ = run(
        capsys, "classify", "--poly", "1 + z1 + z2", "--point", "0.5,0.5", "--abs"
    )
    assert "-0.69314718056" in out  # log(1/2) at 12 significant digits


def test_order_subcommand(capsys):
    code, out, _ = run(capsys, "order", "--poly", CUBIC13, "--point", "0,0")
    assert code == 0
    assert json.loads(out)["order"] == [1, 1]


def test_order_inside_the_amoeba_is_exit_4(capsys):
    code, _, err = run(capsys, "order", "--poly", CUBIC, "--point", "0.2,0.2")
    assert code == 4
    assert "error:" in err


def test_lopsided_subcommand(capsys):
    code, out, _ = run(
        capsys, "lopsided", "--poly", "1 + 2*z1 + 3*z2", "--point", "10,0"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["lopsided"] is True
    assert obj["alpha"] == [1, 0]
    _, out, _ = run(capsys, "lopsided", "--poly", "1 + 2*z1 + 3*z2", "--point", "0,-1")
    obj = json.loads(out)
    assert obj == {"point": [0.0, -1.0], "lopsided": False, "alpha": None}


def test_fiber_subcommand(capsys):
    code, out, _ = run(capsys, "fiber", "--poly", CUBIC, "--point", "0,0")
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 9
    phis = [s["phi"] for s in obj["solutions"]]
    assert phis == sorted(phis)


def test_parse_error_is_exit_2_with_span(capsys):
    code, _, err = run(capsys, "member", "--poly", "z1 +* z2", "--point", "0,0")
    assert code == 2
    assert "at (" in err


def test_bad_point_is_exit_2(capsys):
    code, _, err = run(capsys, "member", "--poly", CUBIC, "--point", "zero,0")
    assert code == 2
    assert "bad point" in err


def test_degenerate_fiber_is_exit_3(capsys):
    code, _, err = run(capsys, "fiber", "--poly", "z1*z2 - 1", "--point", "0,0")
    assert code == 3
    assert "error:" in err


def test_singular_basis_matrix_is_exit_3(capsys):
    code, _, err = run(capsys, "basis", "--linear", "1,2;2,4")
    assert code == 3
    assert "error:" in err


def test_zero_coordinate_witness_is_exit_3(capsys):
    code, _, err = run(capsys, "basis", "--linear", "1,1;1,2")
    assert code == 3
    assert "zero coordinate" in err


def test_basis_output(capsys):
    code, out, _ = run(capsys, "basis", "--linear", "0.5,0.5;2,-1", "--samples", "500")
    assert code == 0
    assert "g0 = 1 + 0.5*z1 + 0.5*z2" in out
    assert "witness v = (-1+0i, -1+0i)" in out
    assert "log point = (0, 0)" in out
    assert "axiom 1: ok (500 samples, 500 escapes)" in out
    assert "axiom 2: ok without g0" in out
    assert "axiom 3: ok (rank 2)" in out


def test_contour_and_boundary_csv(capsys):
    code, out, _ = run(capsys, "contour", "--poly", HARNACK, "--slices", "24")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "w1,w2,theta,class"
    assert len(lines) > 1
    classes = set()
    for row in lines[1:]:
        w1, w2, theta, cls = row.split(",")
        float(w1), float(w2)
        assert 0.0 <= float(theta) < math.pi
        classes.add(cls)
    assert "Boundary" in classes

    code, bout, _ = run(capsys, "boundary", "--poly", HARNACK, "--slices", "24")
    assert code == 0
    blines = bout.strip().split("\n")
    assert blines[0] == "w1,w2,theta,class"
    assert all(r.endswith(",Boundary") for r in blines[1:])
    assert set(blines[1:]) <= set(lines[1:])


def test_csv_reruns_are_byte_identical(capsys):
    _, first, _ = run(capsys, "contour", "--poly", HARNACK, "--slices", "12")
    _, second, _ = run(capsys, "contour", "--poly", HARNACK, "--slices", "12")
    assert first == second


def test_betti_ppm_export(capsys, tmp_path):
    out = tmp_path / "b.ppm"
    code, _, _ = run(
        capsys, "betti", "--poly", CUBIC13, "--window", "-2,-2,2,2",
        "--res", "5,5", "--output", str(out),
    )
    assert code == 0
    data = out.read_bytes()
    assert data.startswith(b"P6\n5 5\n255\n")
    assert len(data) == len(b"P6\n5 5\n255\n") + 3 * 25
    body = data[len(b"P6\n5 5\n255\n"):]
    pixels = {tuple(body[k:k + 3]) for k in range(0, len(body), 3)}
    assert (255, 255, 255) in pixels  # complement cells
    assert len(pixels) > 1  # and some amoeba cells


def test_ppm_reruns_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    for path in (a, b):
        run(
            capsys, "betti", "--poly", CUBIC13, "--window", "-1,-1,1,1",
            "--res", "4,4", "--output", str(path),
        )
    assert a.read_bytes() == b.read_bytes()


def test_threaded_raster_matches_serial(capsys, tmp_path, monkeypatch):
    serial, threaded = tmp_path / "s.ppm", tmp_path / "t.ppm"
    monkeypatch.delenv("AMOEBA_THREADS", raising=False)
    run(
        capsys, "betti", "--poly", CUBIC13, "--window", "-1,-1,1,1",
        "--res", "5,5", "--output", str(serial),
    )
    monkeypatch.setenv("AMOEBA_THREADS", "2")
    run(
        capsys, "betti", "--poly", CUBIC13, "--window", "-1,-1,1,1",
        "--res", "5,5", "--output", str(threaded),
    )
    assert serial.read_bytes() == threaded.read_bytes()


def test_raster_svg_export(capsys, tmp_path):
    out = tmp_path / "t.svg"
    code, _, _ = run(
        capsys, "raster", "--poly", CUBIC13, "--window", "-2,-2,2,2",
        "--res", "6,6", "--output", str(out),
    )
    assert code == 0
    text = out.read_text(encoding="ascii")
    assert text.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert text.rstrip().endswith("</svg>")
    assert '<rect' in text
    assert "#ffffff" in text


def test_missing_output_path_is_exit_2(capsys):
    code, _, err = run(
        capsys, "betti", "--poly", CUBIC13, "--window", "-1,-1,1,1", "--res", "3,3"
    )
    assert code == 2
    assert "--output" in err


def test_window_option_accepts_leading_minus(capsys, tmp_path):
    # "-2,-2,2,2" must parse as an option value, not as a flag
    out = tmp_path / "w.ppm"
    code, _, _ = run(
        capsys, "betti", "--poly", CUBIC13, "--window", "-2,-2,2,2",
        "--res", "3,3", "--output", str(out),
    )
    assert code == 0


def test_installed_entry_point():
    proc = subprocess.run(
        ["amoeba", "classify", "--poly", CUBIC13, "--point", "0,0"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tag"] == "Complement"


def test_module_invocation_matches_entry_point():
    args = ["lopsided", "--poly", "1 + 2*z1", "--point", "5,0"]
    via_module = subprocess.run(
        [sys.executable, "-m", "amoebas.cli"] + args,
        capture_output=True, text=True, timeout=120,
    )
    via_script = subprocess.run(
        ["amoeba"] + args, capture_output=True, text=True, timeout=120
    )
    assert via_module.returncode == via_script.returncode == 0
    assert via_module.stdout == via_script.stdout
