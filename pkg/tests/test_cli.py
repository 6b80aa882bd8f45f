import pytest

from bwlat.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from bwlat.formats import cache, read_code, read_lattice


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    path = tmp_path / "cache"
    monkeypatch.setattr(cache, "CACHE_DIR", path)
    return path


def test_build_writes_lattice(tmp_path, capsys):
    path = tmp_path / "bw3.lat"
    assert run(["build", "-d", "3", "-o", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "RANK: 8" in out
    assert "DETERMINANT: 1" in out
    assert read_lattice(path).rank == 8


def test_level_out_of_range_is_usage_error(capsys):
    assert run(["build", "-d", "9"]) == EXIT_USAGE


def test_missing_command_is_usage_error(capsys):
    assert run([]) == EXIT_USAGE


def test_verify_quick(capsys):
    assert run(["verify", "-d", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "COUNT: 240" in out
    assert "RESULT: verified" in out


def test_verify_writes_report(tmp_path, capsys):
    path = tmp_path / "reports" / "bw2.txt"
    assert run(["verify", "-d", "2", "-o", str(path)]) == EXIT_OK
    assert path.read_text().startswith("SUBJECT: BW_2")


def test_minvec_count_only(capsys):
    assert run(["minvec", "-d", "6", "--count-only"]) == EXIT_OK
    assert "COUNT: 9694080" in capsys.readouterr().out


def test_minvec_stream(tmp_path, capsys):
    path = tmp_path / "d4.mv"
    assert run(["minvec", "-d", "2", "-o", str(path)]) == EXIT_OK
    assert path.read_text().splitlines()[0] == "mv 24 0"


def test_minvec_above_level_cap(capsys):
    assert run(["minvec", "-d", "9", "--count-only"]) == EXIT_USAGE
    assert "ResourceCap" in capsys.readouterr().out


def test_frames(capsys):
    assert run(["frames", "e8-orbits"]) == EXIT_OK
    assert "D_INVARIANTS: 1 2 3 4" in capsys.readouterr().out


def test_codes(tmp_path, capsys):
    path = tmp_path / "e8.code"
    assert run(["codes", "extended", "-r", "3", "-o", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "MIN_WEIGHT: 4" in out
    assert "DOUBLY_EVEN: True" in out
    assert read_code(path).dimension == 4


def test_bad_code_parameter(tmp_path, capsys):
    assert run(["codes", "hamming", "-r", "1", "-o", str(tmp_path / "h.code")]) == EXIT_USAGE


def test_washtenawize(capsys):
    assert run(["washtenawize", "--base", "bw3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "RANK: 64" in out
    assert "INDEX: 2^16" in out


def test_washtenawize_rejects_bad_base(capsys):
    assert run(["washtenawize", "--base", "e8"]) == EXIT_USAGE


def test_series_needs_override_below_bound(capsys):
    assert run(["series", "-j", "1", "-k", "6"]) == EXIT_USAGE
    assert run(["series", "-j", "1", "-k", "6", "--allow-below-bound"]) == EXIT_OK
    assert "RANK: 64" in capsys.readouterr().out


def test_ypsilanti_and_certificate(tmp_path, capsys):
    path = tmp_path / "y.cert"
    assert run(["ypsilanti", "--rank", "128", "--seed", "42", "-o", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "SEPARATION: pass" in out
    assert "CROSS_VECTOR_NORM" not in out
    assert run(["check-certificate", str(path)]) == EXIT_OK
    assert "RESULT: verified" in capsys.readouterr().out


def test_ypsilanti_negative_control(tmp_path, capsys):
    path = tmp_path / "control.cert"
    assert run(["ypsilanti", "--seed", "42", "--negative-control", "-o", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "SEPARATION: fail" in out
    assert "CROSS_VECTOR_NORM: 4" in out


def test_ypsilanti_other_ranks_unsupported(capsys):
    assert run(["ypsilanti", "--rank", "1024"]) == EXIT_USAGE


def test_tampered_certificate(tmp_path, capsys):
    path = tmp_path / "y.cert"
    assert run(["ypsilanti", "-o", str(path)]) == EXIT_OK
    path.write_text(path.read_text().replace("separation: pass", "separation: fail"))
    capsys.readouterr()
    assert run(["check-certificate", str(path)]) == EXIT_FAILED
    assert "FAIL separation" in capsys.readouterr().out


def test_missing_certificate(tmp_path, capsys):
    assert run(["check-certificate", str(tmp_path / "none.cert")]) == EXIT_USAGE


def test_mass(capsys):
    assert run(["mass", "-n", "8", "--minkowski"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "MASS: 1/696729600" in out
    assert "MINKOWSKI: 1393459200" in out


def test_mass_table(capsys):
    assert run(["mass", "--table"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("j q upsilon(q) ratio")


@pytest.mark.parametrize("argv", [["mass"], ["mass", "-n", "12"]])
def test_mass_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_survey(capsys):
    assert run(["survey-avoiding", "-b", "2", "-a", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "GROUP_ORDER: 72" in out
    assert "NONEMPTY_K: 0 1" in out


def test_lattices_go_through_the_cache(cache_dir, capsys):
    assert run(["build", "-d", "3", "-o", str(cache_dir.parent / "a.lat")]) == EXIT_OK
    assert (cache_dir / "bw3.joblib").exists()
    assert run(["verify", "-d", "3"]) == EXIT_OK
    assert "RESULT: verified" in capsys.readouterr().out


def test_no_cache_skips_the_cache(cache_dir, capsys):
    assert run(["minvec", "-d", "2", "--count-only", "--no-cache"]) == EXIT_OK
    assert not (cache_dir / "bw2.joblib").exists()
