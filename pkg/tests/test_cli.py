"""Command-line interface: every subcommand plus the exit-code contract."""

import numpy as np
import pytest

import stpt.cli as cli
from stpt.exceptions import ConvergenceError
from stpt.image import read_pgm, write_pgm
from stpt.metrics import METRICS_CSV_HEADER
from stpt.tensorfile import read_tensor, write_tensor


@pytest.fixture
def matrix_file(tmp_path, rng):
    path = tmp_path / "a.stpt"
    write_tensor(rng.standard_normal((8, 12)), path)
    return path


@pytest.fixture
def tensor_file(tmp_path, rng):
    path = tmp_path / "t.stpt"
    write_tensor(rng.standard_normal((4, 6, 4)), path)
    return path


@pytest.fixture
def image_file(tmp_path, rng):
    path = tmp_path / "img.pgm"
    write_pgm(np.floor(rng.uniform(0, 256, size=(20, 30))), path)
    return path


class TestInfo:
    def test_tensor_file(self, capsys, tensor_file):
        assert cli.main(["info", str(tensor_file)]) == 0
        out = capsys.readouterr().out
        assert "order: 3" in out
        assert "dims: [4, 6, 4]" in out
        assert "values: 96" in out

    def test_image(self, capsys, image_file):
        assert cli.main(["info", str(image_file)]) == 0
        assert "dims: [20, 30]" in capsys.readouterr().out

    def test_factor_directory(self, capsys, tmp_path, matrix_file):
        cli.main(["svdstp", str(matrix_file), "--s1", "2", "--s2", "3",
                  "--rank", "2", "--out", str(tmp_path / "fac")])
        capsys.readouterr()
        assert cli.main(["info", str(tmp_path / "fac")]) == 0
        out = capsys.readouterr().out
        assert "svd-stp" in out and "r [2]" in out

    def test_missing_file(self, tmp_path, capsys):
        assert cli.main(["info", str(tmp_path / "nope.stpt")]) == 2
        assert "error:" in capsys.readouterr().err


class TestSvdStpCommand:
    def test_decompose_and_reconstruct(self, capsys, tmp_path, matrix_file):
        fac = tmp_path / "fac"
        assert cli.main(["svdstp", str(matrix_file), "--s1", "2", "--s2", "3",
                         "--out", str(fac)]) == 0
        out = capsys.readouterr().out
        assert "error bound:" in out
        rec = tmp_path / "rec.stpt"
        assert cli.main(["reconstruct", str(fac), "--out", str(rec)]) == 0
        a = read_tensor(matrix_file)
        b = read_tensor(rec)
        err = np.linalg.norm(a - b)
        bound = float(out.split("error bound:")[1].strip())
        assert err <= bound + 1e-9 * np.linalg.norm(a)

    def test_rank_out_of_range_is_usage_error(self, tmp_path, matrix_file, capsys):
        code = cli.main(["svdstp", str(matrix_file), "--s1", "2", "--s2", "3",
                         "--rank", "99", "--out", str(tmp_path / "fac")])
        assert code == 2
        assert "out of range" in capsys.readouterr().err

    def test_non_divisible_blocks(self, tmp_path, matrix_file, capsys):
        code = cli.main(["svdstp", str(matrix_file), "--s1", "5", "--s2", "3",
                         "--out", str(tmp_path / "fac")])
        assert code == 2

    def test_tensor_input_rejected(self, tmp_path, tensor_file):
        code = cli.main(["svdstp", str(tensor_file), "--s1", "2", "--s2", "2",
                         "--out", str(tmp_path / "fac")])
        assert code == 2


class TestHosvdStpCommand:
    def test_full_round_trip(self, capsys, tmp_path, tensor_file):
        fac = tmp_path / "fac"
        assert cli.main(["hosvdstp", str(tensor_file), "--s", "2,3,2",
                         "--out", str(fac)]) == 0
        rec = tmp_path / "rec.stpt"
        assert cli.main(["reconstruct", str(fac), "--out", str(rec)]) == 0
        t = read_tensor(tensor_file)
        assert np.allclose(read_tensor(rec), t, atol=1e-10 * np.linalg.norm(t.ravel()))

    def test_truncated(self, capsys, tmp_path, tensor_file):
        fac = tmp_path / "fac"
        assert cli.main(["hosvdstp", str(tensor_file), "--s", "2,3,2",
                         "--rank", "1,2,1", "--out", str(fac)]) == 0
        capsys.readouterr()
        assert cli.main(["info", str(fac)]) == 0
        out = capsys.readouterr().out
        assert "hosvd-stp" in out and "r [1, 2, 1]" in out

    def test_bad_s_list(self, tmp_path, tensor_file, capsys):
        code = cli.main(["hosvdstp", str(tensor_file), "--s", "2,x,2",
                         "--out", str(tmp_path / "fac")])
        assert code == 2
        assert "comma-separated" in capsys.readouterr().err

    def test_wrong_s_length(self, tmp_path, tensor_file):
        assert cli.main(["hosvdstp", str(tensor_file), "--s", "2,2",
                         "--out", str(tmp_path / "fac")]) == 2


class TestReconstructCommand:
    def test_pgm_output(self, capsys, tmp_path, image_file):
        fac = tmp_path / "fac"
        cli.main(["svdstp", str(image_file), "--s1", "2", "--s2", "3",
                  "--out", str(fac)])
        out_img = tmp_path / "out.pgm"
        assert cli.main(["reconstruct", str(fac), "--out", str(out_img)]) == 0
        img = read_pgm(out_img)
        assert img.shape == (20, 30)

    def test_tensor_factors_cannot_become_pgm(self, tmp_path, tensor_file, capsys):
        fac = tmp_path / "fac"
        cli.main(["hosvdstp", str(tensor_file), "--s", "2,3,2", "--out", str(fac)])
        code = cli.main(["reconstruct", str(fac), "--out", str(tmp_path / "x.pgm")])
        assert code == 2

    def test_missing_directory(self, tmp_path):
        assert cli.main(["reconstruct", str(tmp_path / "fac"), "--out",
                         str(tmp_path / "x.stpt")]) == 2


class TestCompressImage:
    def test_full_pipeline_with_report(self, capsys, tmp_path, image_file):
        out_img = tmp_path / "out.pgm"
        report = tmp_path / "report.csv"
        code = cli.main(["compress-image", str(image_file), "--s1", "2", "--s2", "3",
                         "--rank", "4", "--out", str(out_img), "--report", str(report)])
        assert code == 0
        text = capsys.readouterr().out
        assert "relative_error" in text and "ssim" in text
        lines = report.read_text().strip().split("\n")
        assert lines[0] == METRICS_CSV_HEADER
        fields = lines[1].split(",")
        assert len(fields) == 6
        rel = float(fields[0])
        assert 0.0 <= rel <= 1.0
        assert int(fields[4]) == 600
        assert int(fields[5]) == 10 * 4 + 10 * 4 + 4 + 6
        assert read_pgm(out_img).shape == (20, 30)

    def test_full_rank_when_omitted(self, capsys, tmp_path, image_file):
        out_img = tmp_path / "out.pgm"
        assert cli.main(["compress-image", str(image_file), "--s1", "2", "--s2", "3",
                         "--out", str(out_img)]) == 0

    def test_rejects_tensor_input(self, tmp_path, tensor_file):
        assert cli.main(["compress-image", str(tensor_file), "--s1", "2", "--s2", "2",
                         "--out", str(tmp_path / "x.pgm")]) == 2


class TestMetricsCommand:
    def test_identical_pair(self, capsys, tmp_path, image_file):
        assert cli.main(["metrics", str(image_file), str(image_file)]) == 0
        out = capsys.readouterr().out
        assert "relative_error:   0.0" in out
        assert "inf" in out

    def test_csv_output(self, tmp_path, image_file, capsys):
        csv = tmp_path / "m.csv"
        assert cli.main(["metrics", str(image_file), str(image_file),
                         "--csv", str(csv)]) == 0
        lines = csv.read_text().strip().split("\n")
        assert lines[0] == METRICS_CSV_HEADER

    def test_shape_mismatch(self, tmp_path, rng, capsys):
        a, b = tmp_path / "a.stpt", tmp_path / "b.stpt"
        write_tensor(rng.standard_normal((4, 4)), a)
        write_tensor(rng.standard_normal((4, 5)), b)
        assert cli.main(["metrics", str(a), str(b)]) == 2


class TestBenchCommand:
    def test_runs_and_writes_csv(self, capsys, tmp_path):
        csv = tmp_path / "bench.csv"
        code = cli.main(["bench", "--n", "16", "--d", "2", "--s", "2", "--r", "2",
                         "--trials", "1", "--seed", "7", "--csv", str(csv)])
        assert code == 0
        assert "FSVD-STP" in capsys.readouterr().out
        lines = csv.read_text().strip().split("\n")
        assert lines[0] == "method,n,d,s,r,trials,seed,mean_rel_error"
        assert len(lines) == 4

    def test_invalid_config(self, capsys):
        assert cli.main(["bench", "--n", "16", "--d", "1", "--s", "2", "--r", "2",
                         "--trials", "1", "--seed", "7"]) == 2


class TestStorageCommand:
    def test_prints_integer(self, capsys):
        assert cli.main(["storage", "--kind", "tsvd_stp", "--n", "10000",
                         "--s", "10", "--r", "50"]) == 0
        assert capsys.readouterr().out.strip() == "100150"

    def test_missing_parameter(self, capsys):
        assert cli.main(["storage", "--kind", "tsvd", "--n", "100"]) == 2
        assert "requires r" in capsys.readouterr().err

    def test_unknown_kind_is_usage_error(self, capsys):
        assert cli.main(["storage", "--kind", "qr", "--n", "100"]) == 2


class TestExitCodes:
    def test_no_command(self, capsys):
        assert cli.main([]) == 2

    def test_unknown_command(self, capsys):
        assert cli.main(["frobnicate"]) == 2

    def test_numerical_failure_maps_to_three(self, tmp_path, matrix_file, monkeypatch, capsys):
        def boom(*args, **kwargs):
            raise ConvergenceError("iteration stalled")

        monkeypatch.setattr(cli, "svd_stp", boom)
        code = cli.main(["svdstp", str(matrix_file), "--s1", "2", "--s2", "3",
                         "--out", str(tmp_path / "fac")])
        assert code == 3
        assert "iteration stalled" in capsys.readouterr().err

    def test_linalg_error_maps_to_three(self, tmp_path, matrix_file, monkeypatch, capsys):
        def boom(*args, **kwargs):
            raise np.linalg.LinAlgError("SVD did not converge")

        monkeypatch.setattr(cli, "svd_stp", boom)
        code = cli.main(["svdstp", str(matrix_file), "--s1", "2", "--s2", "3",
                         "--out", str(tmp_path / "fac")])
        assert code == 3

    def test_not_an_array_file(self, tmp_path, capsys):
        junk = tmp_path / "junk.bin"
        junk.write_bytes(b"\x00\x01\x02\x03data")
        assert cli.main(["info", str(junk)]) == 2
        assert "neither" in capsys.readouterr().err
