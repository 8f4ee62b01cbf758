import json

from sphmeas import cli, measures


def run(argv):
    return cli.main(argv)


def test_coeffs_table(capsys):
    assert run(["coeffs", "--form", "theta^3", "--limit", "5"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0].startswith("exponent_num")
    values = [float(line.split(",")[3]) for line in out[1:]]
    assert values == [1, 6, 12, 8, 6, 24]


def test_coeffs_unknown_form(capsys):
    assert run(["coeffs", "--form", "unknown"]) == 2


def test_coeffs_csv_file(tmp_path, capsys):
    path = tmp_path / "d.csv"
    assert run(["coeffs", "--form", "delta", "--limit", "3", "--csv", str(path)]) == 0
    lines = path.read_text().strip().split("\n")
    assert [line.split(",")[3] for line in lines[1:]] == ["1", "-24", "252"]


def test_verify_modular_pass(capsys):
    assert run(["verify", "modular", "--form", "E6", "--tol", "1e-9"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out


def test_verify_psf_odd_with_testfn(capsys):
    code = run([
        "verify", "psf-odd", "--form", "theta^3",
        "--testfn", "pg:a=2,poly=0,1", "--tol", "1e-9",
    ])
    assert code == 0


def test_verify_psf_odd_rejects_k1(capsys):
    assert run(["verify", "psf-odd", "--form", "theta^1"]) == 2


def test_verify_weil_and_eigen(capsys):
    assert run(["verify", "weil", "--form", "theta^1", "--gen", "rot:1/2",
                "--gen", "S", "--tol", "1e-10"]) == 0
    assert run(["verify", "eigen", "--form", "theta^1"]) == 0
    assert run(["verify", "eigen", "--form", "theta^1", "--eps", "2"]) == 1


def test_verify_json_report(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(["verify", "modular", "--form", "delta", "--json", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["verdict"] == "pass"


def test_global_flags_before_subcommand(capsys):
    assert run(["--tol", "1e-9", "verify", "modular", "--form", "delta"]) == 0
    assert run(["--horizon", "6", "verify", "modular", "--form", "theta^3"]) == 3


def test_custom_grid(capsys):
    assert run(["verify", "modular", "--form", "delta",
                "--grid", "1i,2i,0.3+1.1i"]) == 0
    out = capsys.readouterr().out
    assert "3 probes" in out


def test_measure_round_trip(tmp_path, capsys):
    path = tmp_path / "m.json"
    assert run(["measure", "--form", "theta^3", "--dims", "3",
                "--out", str(path)]) == 0
    mu = measures.measure_from_json(path.read_text())
    assert mu.dims == (3,)
    assert mu.eigen == 0
    assert run(["measure", "--form", "theta^3", "--dims", "5"]) == 2


def test_hilbert_commands(capsys):
    assert run(["hilbert", "--disc", "5", "--weight", "2",
                "--trace-bound", "25", "--tol", "1e-6"]) == 0
    out = capsys.readouterr().out
    assert "0.0333333333333" in out
    assert run(["hilbert", "--rotated", "1", "--radius", "25"]) == 0


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["verify", "nonsense", "--form", "delta"]) == 2
    assert run(["verify", "modular"]) == 2
