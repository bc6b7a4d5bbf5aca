import json
import subprocess
import sys

import numpy as np
import pytest

from cascade_eit import AtomRates, Config, DriveParams, spectrum
from cascade_eit.cli import main
from cascade_eit.serialization import parse_csv
from cascade_eit.spectral_analysis import peak_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_default_matches_library(capsys):
    code, out, _ = run(capsys, "spectrum", "--gamma12", "0.5", "--gamma13", "0.105", "--omega-c", "1.5")
    assert code == 0
    cols, meta = parse_csv(out)
    assert cols["delta_p"].size == 1201
    ref = spectrum(AtomRates.from_gammas(0.5, 0.105), DriveParams(Config.EIT, 1.5), cols["delta_p"])
    np.testing.assert_array_equal(cols["value"], np.abs(ref.values))
    assert meta["observable"] == "Im rho21"


def test_figure2(capsys):
    code, out, _ = run(capsys, "spectrum", "--figure", "2", "--normalize")
    assert code == 0
    cols, meta = parse_csv(out)
    assert set(cols) == {"delta_p", "eit", "at"}
    assert meta["figure"] == "2"
    for k in ("eit", "at"):
        assert np.max(cols[k]) == 1.0 and np.min(cols[k]) >= 0


def test_raw_sign(capsys):
    _, out, _ = run(capsys, "spectrum", "--raw-sign", "--dp-points", "11")
    assert np.all(parse_csv(out)[0]["value"] < 0)


def test_malformed_gamma_triple(capsys):
    code, _, err = run(capsys, "spectrum", "--gamma12", "0.5", "--gamma13", "0.105", "--gamma23", "0.7")
    assert code == 2
    assert "gamma23 = gamma12 + gamma13" in err


@pytest.mark.parametrize("argv", [
    ["spectrum", "--w21", "1", "--gamma12", "0.5", "--gamma13", "0.1"],
    ["spectrum", "--w21", "1"],
    ["spectrum", "--dp-points", "2"],
    ["spectrum", "--dp-start", "3", "--dp-stop", "-3"],
    ["spectrum", "--w21", "-1", "--w31", "0", "--w32", "0"],
    ["separation", "--omega-values", "2,1"],
    ["spectrum", "--config-file", "/nonexistent/file"],
])
def test_config_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--format", "xml"])
    assert exc.value.code == 2


def test_separation_single_value(capsys):
    code, out, _ = run(capsys, "separation", "--omega-values", "50")
    assert code == 0
    cols, _ = parse_csv(out)
    assert cols["omega_c"].tolist() == [50.0]
    for k in ("separation_eit", "separation_at"):
        assert abs(cols[k][0] - 50) <= 1.0


def test_separation_matches_library(capsys):
    code, out, _ = run(capsys, "separation", "--omega-start", "0.1", "--omega-stop", "3", "--omega-points", "5")
    cols, _ = parse_csv(out)
    rates = AtomRates(1.0, 0.06, 0.15)
    for oc, sep in zip(cols["omega_c"], cols["separation_at"]):
        assert sep == peak_report(Config.AT, rates, oc).separation


def test_figure3_json(capsys):
    code, out, _ = run(capsys, "separation", "--figure", "3", "--format", "json",
                       "--omega-values", "0.2,5")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["figure"] == 3
    assert doc["columns"]["separation_at"][0] == 0.0
    assert doc["columns"]["separation_eit"][0] > 0


def test_decompose_bare(capsys):
    code, out, _ = run(capsys, "decompose", "--omega-c", "0.2", "--delta-p", "0")
    doc = json.loads(out)
    assert code == 0 and doc["pathway_count"] == 2
    r1, r2, total = (complex(*doc[k]) for k in ("r1", "r2", "total"))
    assert abs(r1 + r2 - total) < 1e-12
    assert doc["cross_term"] == pytest.approx(2 * (r1 * r2.conjugate()).real)
    assert doc["method"] == "bare exact"


def test_decompose_approx_and_dressed(capsys, quiet):
    _, out, _ = run(capsys, "decompose", "--approx", "--omega-c", "0.5", "--delta-c", "10", "--delta-p", "-10")
    assert json.loads(out)["method"] == "bare weak-coupling"
    _, out, _ = run(capsys, "decompose", "--picture", "dressed", "--omega-c", "1", "--delta-c", "10",
                    "--delta-p", "-10", "--gamma12", "0.5", "--gamma13", "0.105")
    doc = json.loads(out)
    assert doc["r2"] == pytest.approx([0.0, -0.0238095], abs=1e-6)


def test_decompose_at(capsys):
    code, out, _ = run(capsys, "decompose", "--config", "at", "--picture", "dressed", "--omega-c", "1",
                       "--delta-c", "10", "--delta-p", "-10", "--gamma12", "0.5", "--gamma13", "0.105")
    doc = json.loads(out)
    assert code == 0 and doc["pathway_count"] == 1 and doc["r2"] is None
    assert doc["total"] == pytest.approx([0.0, -0.0238095], abs=1e-6)


def test_domain_errors(capsys):
    code, _, err = run(capsys, "decompose", "--config", "at")
    assert code == 4 and "bare-picture scattering undefined for Cascade-AT" in err
    assert run(capsys, "decompose", "--config", "at", "--picture", "dressed", "--delta-c", "0")[0] == 4
    assert run(capsys, "decompose", "--picture", "dressed", "--omega-c", "5", "--delta-c", "1")[0] == 4


def test_compare_pictures(capsys, quiet):
    code, out, _ = run(capsys, "compare-pictures", "--omega-c", "1", "--delta-c", "100", "--delta-p", "-100")
    doc = json.loads(out)
    assert code == 0 and doc["divergence"] < 0.02


def test_config_file_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"omega-c": 0.2, "delta-p": 0.3, "gamma12": 0.5, "gamma13": 0.105}))
    _, out_file, _ = run(capsys, "decompose", "--config-file", str(cfg))
    _, out_cli, _ = run(capsys, "decompose", "--config-file", str(cfg), "--omega-c", "0.4")
    assert json.loads(out_file)["omega_c"] == 0.2
    assert json.loads(out_cli)["omega_c"] == 0.4
    kv = tmp_path / "run.cfg"
    kv.write_text("# comment\nomega_c = 0.7\nformat=json\n")
    _, out, _ = run(capsys, "decompose", "--config-file", str(kv))
    assert json.loads(out)["omega_c"] == 0.7


def test_verify(capsys):
    code, first, _ = run(capsys, "verify", "--seed", "3", "--draws", "200")
    assert code == 0 and first.count("PASS") == 6
    _, second, _ = run(capsys, "verify", "--seed", "3", "--draws", "200")
    assert first == second


def test_verify_bad_triple_fails(capsys):
    code, out, _ = run(capsys, "verify", "--draws", "10", "--gamma12", "0.5", "--gamma13", "0.105",
                       "--gamma23", "0.7")
    assert code == 1
    assert "rate-identity" in out and "FAIL" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, err = run(capsys, "spectrum", "--dp-points", "5", "-o", str(target))
    assert code == 0 and out == "" and "wrote" in err
    assert parse_csv(target.read_text())[0]["delta_p"].size == 5


def test_unwritable_output(tmp_path, capsys):
    assert run(capsys, "spectrum", "--dp-points", "5", "-o", str(tmp_path / "no" / "x.csv"))[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cascade_eit", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()
