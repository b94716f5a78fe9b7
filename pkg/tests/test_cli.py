import numpy as np
import pytest

from weinstein import fieldio
from weinstein.cli import main, run_command
from weinstein.grids import Grid, gaussian_field
from weinstein.special import BesselIndex


@pytest.fixture()
def gauss_file(tmp_path):
    grid = Grid(1, BesselIndex(0.5), (48,), (6.0,), 48, 6.0)
    path = tmp_path / "g.field"
    fieldio.write_field(path, gaussian_field(grid))
    return path


def test_transform_round_trip(tmp_path, gauss_file):
    freq = tmp_path / "G.field"
    back = tmp_path / "g2.field"
    assert run_command(["transform", "-i", str(gauss_file), "-o", str(freq)]) == 0
    assert fieldio.read_field(freq).grid.side == "frequency"
    assert run_command(["transform", "--inverse", "-i", str(freq), "-o", str(back)]) == 0
    orig = fieldio.read_field(gauss_file)
    assert np.max(np.abs(fieldio.read_field(back).values - orig.values)) <= 1e-6
    # side mismatches are data errors
    assert run_command(["transform", "--inverse", "-i", str(gauss_file), "-o", str(back)]) == 1
    assert run_command(["transform", "-i", str(freq), "-o", str(back)]) == 1


def test_translate_and_convolve(tmp_path, gauss_file):
    out = tmp_path / "t.field"
    assert run_command(["translate", "--x", "0.5,1.0", "-i", str(gauss_file),
                        "-o", str(out)]) == 0
    assert run_command(["translate", "--x", "0.5", "-i", str(gauss_file),
                        "-o", str(out)]) == 1
    conv = tmp_path / "c.field"
    assert run_command(["convolve", "--with", str(gauss_file), "--method", "spectral",
                        "-i", str(gauss_file), "-o", str(conv)]) == 0


def test_multiply_identity(tmp_path, gauss_file):
    out = tmp_path / "m.field"
    assert run_command(["multiply", "--symbol", "constant", "--param", "c=1",
                        "-i", str(gauss_file), "-o", str(out)]) == 0
    a = fieldio.read_field(gauss_file).values
    b = fieldio.read_field(out).values
    assert np.max(np.abs(a - b)) <= 1e-6
    assert run_command(["multiply", "--symbol", "bogus", "-i", str(gauss_file),
                        "-o", str(out)]) == 1
    assert run_command(["multiply", "--symbol", "heat", "--param", "t",
                        "-i", str(gauss_file), "-o", str(out)]) == 1


def test_calderon_reports_error(tmp_path, gauss_file, capsys):
    out = tmp_path / "cal.field"
    assert run_command(["calderon", "--second", "--gamma", "0.01", "--delta", "100",
                        "--symbol", "gaussian_admissible",
                        "-i", str(gauss_file), "-o", str(out)]) == 0
    reported = float(capsys.readouterr().out.split(":")[1])
    assert reported <= 2e-3


def test_plancherel_check(gauss_file, capsys):
    assert run_command(["plancherel-check", "-i", str(gauss_file)]) == 0
    assert float(capsys.readouterr().out.split(":")[1]) <= 1e-10


def test_extremal_and_kernel(tmp_path, gauss_file):
    out = tmp_path / "e.field"
    assert run_command(["extremal", "--eta", "0.1", "--zeta-s", "3",
                        "--symbol", "heat", "--param", "t=1", "--sigma", "1",
                        "-i", str(gauss_file), "-o", str(out)]) == 0
    assert run_command(["kernel", "--type", "theta", "--y", "0.5,1.0",
                        "--symbol", "heat", "-i", str(gauss_file), "-o", str(out)]) == 0
    # zeta gate violations surface as data errors
    assert run_command(["extremal", "--eta", "0.1", "--zeta-s", "1",
                        "--symbol", "heat", "-i", str(gauss_file), "-o", str(out)]) == 1


def test_config_defaults_used(tmp_path, gauss_file):
    cfgp = tmp_path / "run.yaml"
    cfgp.write_text("symbol: {name: constant, params: {c: 1.0}}\n")
    out = tmp_path / "m.field"
    assert run_command(["--config", str(cfgp), "multiply",
                        "-i", str(gauss_file), "-o", str(out)]) == 0
    a = fieldio.read_field(gauss_file).values
    assert np.max(np.abs(fieldio.read_field(out).values - a)) <= 1e-6


def test_determinism(tmp_path, gauss_file):
    o1, o2 = tmp_path / "a.field", tmp_path / "b.field"
    args = ["multiply", "--symbol", "heat", "--param", "t=1", "-i", str(gauss_file)]
    assert run_command(args + ["-o", str(o1)]) == 0
    assert run_command(args + ["-o", str(o2)]) == 0
    assert o1.read_bytes() == o2.read_bytes()


def test_exit_codes(gauss_file):
    assert run_command(["no-such-command"]) == 2
    assert run_command(["translate", "--x"]) == 2
    assert run_command(["plancherel-check", "-i", "/nonexistent.field"]) == 1
    assert main(["plancherel-check", "-i", str(gauss_file)]) == 0


def test_selftest_quick(capsys):
    assert run_command(["selftest", "--quick"]) == 0
    out = capsys.readouterr().out
    assert "15/15 criteria passed" in out
