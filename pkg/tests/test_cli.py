import csv
import json

import pytest

from tubespec.core.error_handlers import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_USAGE_ERROR
from tubespec.main import run

SMOOTH_CONE = "6.283185307179586,0,0.05"


@pytest.mark.unit
class TestLatticeCommands:
    def test_radius_writes_json(self, tmp_path):
        out = tmp_path / "radius.json"
        assert run(["radius", "--cone", SMOOTH_CONE, "--out", str(out)]) == EXIT_OK
        report = json.loads(out.read_text())
        assert report["shape"]["kind"] == "cone"
        assert report["lower"] <= report["e2r_covolume"] * (1 + 1e-12)

    def test_radius_prints_json_without_out(self, capsys):
        assert run(["radius", "--basis", "1,0,0.3,0.5"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["radius"] > 0

    def test_classify_modes_csv(self, tmp_path):
        out = tmp_path / "modes.csv"
        code = run(
            ["classify-modes", "--cone", SMOOTH_CONE, "--radius", "2", "--energy-bound", "50", "--out", str(out)]
        )
        assert code == EXIT_OK
        rows = list(csv.reader(out.read_text().splitlines()))
        assert rows[0][-1] == "endpoint"
        assert rows[1][:2] == ["0", "0"]
        assert rows[1][-1] == "LimitCircle"

    def test_classify_modes_table(self, capsys):
        code = run(["classify-modes", "--cone", SMOOTH_CONE, "--radius", "2", "--energy-bound", "50"])
        assert code == EXIT_OK
        assert "LimitCircle" in capsys.readouterr().out

    def test_lattice_file(self, tmp_path):
        lattice = tmp_path / "lattice.json"
        lattice.write_text(json.dumps({"basis": [[1.0, 0.0], [0.3, 0.5]]}))
        assert run(["radius", "--lattice", str(lattice)]) == EXIT_OK

    def test_invalid_lattice_file_is_a_domain_error(self, tmp_path, capsys):
        lattice = tmp_path / "lattice.json"
        lattice.write_text("{}")
        assert run(["radius", "--lattice", str(lattice)]) == EXIT_DOMAIN_ERROR
        assert capsys.readouterr().err.startswith("error[ConfigurationError]")


@pytest.mark.unit
class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["radius"],
            ["radius", "--cone", SMOOTH_CONE, "--basis", "1,0,0.3,0.5"],
            ["radius", "--cone", "1,2"],
            ["radius", "--cone", SMOOTH_CONE, "--out", "radius.txt"],
            ["radius", "--cone", SMOOTH_CONE, "--boundary-area", "0"],
            ["spectrum", "--cone", SMOOTH_CONE, "--window", "0"],
            ["spectrum", "--cone", SMOOTH_CONE, "--window", "0,2", "--right-bc", "neumann"],
            ["spectrum", "--cone", SMOOTH_CONE],
            ["classify-modes", "--cone", SMOOTH_CONE, "--energy-bound", "-1"],
            ["cluster-scan", "--family", "missing.json", "--x", "1"],
        ],
    )
    def test_exit_code_two(self, argv):
        assert run(argv) == EXIT_USAGE_ERROR


@pytest.mark.unit
class TestDomainErrors:
    def test_truncation_below_the_window(self, capsys):
        argv = ["spectrum", "--cone", SMOOTH_CONE, "--window", "0,2", "--truncation-bound", "1"]
        assert run(argv) == EXIT_DOMAIN_ERROR
        assert capsys.readouterr().err.startswith("error[BadConfig]")

    def test_short_family(self, tmp_path, capsys):
        family = tmp_path / "family.json"
        family.write_text(json.dumps({"family": {"kind": "smooth_filling", "lengths": [0.04, 0.02, 0.01]}}))
        assert run(["cluster-scan", "--family", str(family), "--x", "1"]) == EXIT_DOMAIN_ERROR
        err = capsys.readouterr().err
        assert err.startswith("error[BadFamily]")
        assert len(err.strip().splitlines()) == 1

    def test_slab_needs_c_above_four(self, capsys):
        argv = ["slab-analyze", "--cone", SMOOTH_CONE, "--radius", "12", "--rho", "1", "--c", "4", "--spectral-bound", "0.5"]
        assert run(argv) == EXIT_DOMAIN_ERROR
        assert capsys.readouterr().err.startswith("error[ValidationError]")


@pytest.mark.integration
class TestSpectrumCommand:
    def test_csv_spectrum(self, tmp_path):
        out = tmp_path / "spectrum.csv"
        argv = [
            "spectrum", "--cone", SMOOTH_CONE, "--radius", "2", "--window=-0.5,2",
            "--right-bc", "natural", "--out", str(out),
        ]
        assert run(argv) == EXIT_OK
        rows = list(csv.reader(out.read_text().splitlines()))
        assert rows[0][0] == "value"
        assert float(rows[1][0]) == pytest.approx(0.0, abs=1e-8)
        values = [float(row[0]) for row in rows[1:]]
        assert values == sorted(values)

    def test_json_spectrum_on_stdout(self, capsys):
        argv = ["spectrum", "--cone", SMOOTH_CONE, "--radius", "2", "--window", "0.5,2", "--jobs", "2"]
        assert run(argv) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["right_bc"] == "dirichlet"
        assert all(0.5 - 1e-6 <= entry["value"] <= 2.0 + 1e-6 for entry in report["entries"])

    def test_slab_analyze(self, tmp_path):
        out = tmp_path / "slab.json"
        argv = [
            "slab-analyze", "--cone", SMOOTH_CONE, "--radius", "12", "--rho", "1", "--c", "8",
            "--spectral-bound", "0.5", "--out", str(out),
        ]
        assert run(argv) == EXIT_OK
        report = json.loads(out.read_text())
        assert 3.0 <= report["radius"] <= 9.0
        assert report["slab_ok"]
