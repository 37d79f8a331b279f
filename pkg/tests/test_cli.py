import numpy as np
import pytest

from sdrecon.cli import main
from sdrecon.utils.io import read_field, read_mask, read_report, write_mask


def parse_report(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def run(tmp_path, *args):
    return main([str(a).replace("{tmp}", str(tmp_path)) for a in args])


def test_pipeline(tmp_path, capsys):
    assert run(tmp_path, "gen", "smooth", "--dims", "24x24", "--seed", "3", "-o", "{tmp}/f.sdf") == 0
    field = read_field(str(tmp_path / "f.sdf"))
    assert field.shape == (24, 24)

    assert run(tmp_path, "sample", "--mask", "random", "--rate", "0.25", "--seed", "1",
               "-i", "{tmp}/f.sdf", "-o", "{tmp}/m.sdm") == 0
    mask = read_mask(str(tmp_path / "m.sdm"))
    assert mask.sum() == 144

    capsys.readouterr()
    assert run(tmp_path, "reconstruct", "--method", "ldmm", "--patch", "4x4", "--iters", "2",
               "-i", "{tmp}/f.sdf", "-m", "{tmp}/m.sdm", "-o", "{tmp}/r.sdf", "--report", "{tmp}/r.kv") == 0
    report = parse_report(capsys.readouterr().out)
    assert list(report.keys()) == ["l1", "l2", "linf", "psnr", "iters", "seconds"]
    assert 1 <= int(report["iters"]) <= 2
    recon = read_field(str(tmp_path / "r.sdf"))
    np.testing.assert_array_equal(recon[mask], field[mask])
    assert read_report(str(tmp_path / "r.kv"))["psnr"] == float(report["psnr"])

    assert run(tmp_path, "metrics", "-a", "{tmp}/f.sdf", "-b", "{tmp}/r.sdf", "-o", "{tmp}/m.kv") == 0
    metrics = parse_report(capsys.readouterr().out)
    assert metrics["psnr"] == report["psnr"]
    assert list(read_report(str(tmp_path / "m.kv")).keys()) == ["l1", "l2", "linf", "psnr"]


def test_constant_ldmm(tmp_path, capsys):
    assert run(tmp_path, "gen", "constant", "--dims", "16", "16", "-o", "{tmp}/f.sdf") == 0
    assert run(tmp_path, "sample", "--mask", "random", "--rate", "0.1",
               "-i", "{tmp}/f.sdf", "-o", "{tmp}/m.sdm") == 0
    capsys.readouterr()
    assert run(tmp_path, "reconstruct", "-i", "{tmp}/f.sdf", "-m", "{tmp}/m.sdm", "-o", "{tmp}/r.sdf") == 0
    report = parse_report(capsys.readouterr().out)
    assert report["psnr"] == "inf"
    assert report["l2"] == "0.0"
    assert report["iters"] == "1"


def test_constant_baselines(tmp_path, capsys):
    assert run(tmp_path, "gen", "constant", "--dims", "32", "32", "-o", "{tmp}/f.sdf") == 0
    assert run(tmp_path, "sample", "--mask", "regular", "--strides", "4x4",
               "-i", "{tmp}/f.sdf", "-o", "{tmp}/m.sdm") == 0
    capsys.readouterr()
    for method in ("dct", "dft", "spline"):
        assert run(tmp_path, "reconstruct", "--method", method,
                   "-i", "{tmp}/f.sdf", "-m", "{tmp}/m.sdm", "-o", "{tmp}/r.sdf") == 0
        assert parse_report(capsys.readouterr().out)["psnr"] == "inf"
    for method in ("dct", "dft", "svd"):
        assert run(tmp_path, "compress", "--method", method, "--rate", "0.1",
                   "-i", "{tmp}/f.sdf", "-o", "{tmp}/c.sdf") == 0
        assert parse_report(capsys.readouterr().out)["psnr"] == "inf"


def test_regular_baselines(tmp_path, capsys):
    assert run(tmp_path, "gen", "smooth", "--dims", "32", "32", "-o", "{tmp}/f.sdf") == 0
    assert run(tmp_path, "sample", "--mask", "regular", "--strides", "4x4",
               "-i", "{tmp}/f.sdf", "-o", "{tmp}/m.sdm") == 0
    field = read_field(str(tmp_path / "f.sdf"))
    for method in ("spline", "dct", "dft", "nearest"):
        assert run(tmp_path, "reconstruct", "--method", method,
                   "-i", "{tmp}/f.sdf", "-m", "{tmp}/m.sdm", "-o", "{tmp}/r.sdf") == 0
        report = parse_report(capsys.readouterr().out)
        assert report["iters"] == "0"
        recon = read_field(str(tmp_path / "r.sdf"))
        np.testing.assert_array_equal(recon[::4, ::4], field[::4, ::4])


def test_compress(tmp_path, capsys):
    assert run(tmp_path, "gen", "smooth", "--dims", "16", "16", "-o", "{tmp}/f.sdf") == 0
    capsys.readouterr()
    assert run(tmp_path, "compress", "--method", "dct", "--rate", "1.0",
               "-i", "{tmp}/f.sdf", "-o", "{tmp}/c.sdf") == 0
    report = parse_report(capsys.readouterr().out)
    assert float(report["psnr"]) >= 200.0
    assert float(report["rate"]) == 1.0

    assert run(tmp_path, "compress", "--method", "svd", "--rate", "0.5",
               "-i", "{tmp}/f.sdf", "-o", "{tmp}/c.sdf", "--report", "{tmp}/c.kv") == 0
    report = read_report(str(tmp_path / "c.kv"))
    assert report["rate"] == 3 * 33 / 256.0


def test_errors(tmp_path, capsys):
    assert run(tmp_path, "gen", "smooth", "--dims", "16", "16", "-o", "{tmp}/f.sdf") == 0
    write_mask(str(tmp_path / "m8.sdm"), np.ones((8, 8), dtype=bool))
    write_mask(str(tmp_path / "m16.sdm"), np.eye(16, dtype=bool))
    capsys.readouterr()

    assert run(tmp_path, "reconstruct", "-i", "{tmp}/f.sdf", "-m", "{tmp}/m8.sdm", "-o", "{tmp}/r.sdf") == 1
    err = capsys.readouterr().err
    assert err.startswith("error: ")
    assert len(err.strip().splitlines()) == 1

    assert run(tmp_path, "reconstruct", "--patch", "32x32",
               "-i", "{tmp}/f.sdf", "-m", "{tmp}/m16.sdm", "-o", "{tmp}/r.sdf") == 1
    assert capsys.readouterr().err.startswith("error: ")

    assert run(tmp_path, "gen", "unknown", "--dims", "16", "16", "-o", "{tmp}/g.sdf") == 1
    assert run(tmp_path, "metrics", "-a", "{tmp}/missing.sdf", "-b", "{tmp}/f.sdf") == 1
    assert run(tmp_path, "compress", "--method", "svd", "--rate", "0.05",
               "-i", "{tmp}/f.sdf", "-o", "{tmp}/c.sdf") == 1

    with pytest.raises(SystemExit) as excinfo:
        main(["reconstruct", "--frobnicate"])
    assert excinfo.value.code == 2
