import csv
import subprocess
import sys

import numpy as np
import pytest
import scipy.sparse as sp

from sparseprec import io
from sparseprec.arp_oracle import ArProcessSpec, simulate_ar
from sparseprec.cli import main
from sparseprec.graph import band_pattern, identity_pattern
from sparseprec.moments import sample_covariance
from sparseprec.precision import prec_sparse


@pytest.fixture
def files(tmp_path):
    return lambda name: str(tmp_path / name)


def simulate(files, *extra, name="d.csv"):
    out = files(name)
    assert main(["simulate", "--out", out, *extra]) == 0
    return out


def test_simulate_shape_and_determinism(files):
    args = ["--model", "ar", "--order", "1", "--coeffs", "0.8", "--n", "100", "--t", "100",
            "--seed", "7"]
    a = simulate(files, *args, name="a.csv")
    b = simulate(files, *args, name="b.csv")
    assert io.read_dataset(a).shape == (100, 100)
    assert open(a, "rb").read() == open(b, "rb").read()


def test_simulate_mixed(files):
    path = simulate(files, "--model", "mixed", "--order", "3", "--coeffs",
                    "0.3333333333333333,0.3333333333333333,0.3333333333333334",
                    "--n", "20", "--t", "30")
    assert io.read_dataset(path).shape == (20, 30)


def test_simulate_nonstationary_exit(files, capsys):
    code = main(["simulate", "--model", "ar", "--order", "1", "--coeffs", "1.2", "--n", "5",
                 "--t", "5", "--out", files("x.csv")])
    assert code == 3
    assert "stationary" in capsys.readouterr().err


def test_bad_flags_exit_two(files, capsys):
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--model", "arma", "--order", "1", "--n", "5", "--t", "5",
              "--out", files("x.csv")])
    assert info.value.code == 2
    assert main(["simulate", "--model", "ar", "--order", "2", "--coeffs", "0.5",
                 "--n", "5", "--t", "5", "--out", files("x.csv")]) == 2
    assert capsys.readouterr().out == ""


def test_dataset_roundtrip_exact(files, rng):
    x = rng.normal(size=(7, 4)) * 1e3
    io.write_dataset(files("x.csv"), x)
    np.testing.assert_array_equal(io.read_dataset(files("x.csv")), x)


def test_graph_and_precision_roundtrip(files, rng):
    g = band_pattern(9, 2)
    io.write_graph(files("g.mtx"), g)
    text = open(files("g.mtx")).read()
    assert text.startswith("%%MatrixMarket matrix coordinate pattern symmetric")
    assert io.read_graph(files("g.mtx")) == g

    prec = prec_sparse(rng.normal(size=(30, 9)), g)
    io.write_precision(files("p.mtx"), prec)
    assert open(files("p.mtx")).read().startswith("%%MatrixMarket matrix coordinate real symmetric")
    back = io.read_precision(files("p.mtx"))
    np.testing.assert_array_equal(back.toarray(), prec.toarray())

    raw = prec_sparse(rng.normal(size=(30, 9)), g, symmetrize=False)
    io.write_precision(files("r.mtx"), raw)
    assert "real general" in open(files("r.mtx")).readline()
    np.testing.assert_array_equal(io.read_precision(files("r.mtx")).toarray(), raw.toarray())


def test_graph_file_is_one_based(files):
    io.write_graph(files("g.mtx"), identity_pattern(2))
    body = [l.split() for l in open(files("g.mtx")) if not l.startswith("%")]
    assert body[1:] == [["1", "1"], ["2", "2"]]


def test_shrink_one_dimensional(files, capsys, rng):
    x = rng.normal(size=(12, 1))
    io.write_dataset(files("x.csv"), x)
    assert main(["shrink", "--data", files("x.csv"), "--out", files("s.csv")]) == 0
    out = np.loadtxt(files("s.csv"), delimiter=",", ndmin=2)
    assert out[0, 0] == sample_covariance(x)[0, 0]
    assert capsys.readouterr().out.startswith("lambda=")


def test_shrink_identity_prints_nu(files, capsys, rng):
    io.write_dataset(files("x.csv"), rng.normal(size=(12, 3)))
    assert main(["shrink", "--data", files("x.csv"), "--target", "identity",
                 "--out", files("s.csv")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("lambda=") and lines[1].startswith("nu=")


def test_shrink_too_few_rows(files, rng):
    io.write_dataset(files("x.csv"), rng.normal(size=(3, 4)))
    assert main(["shrink", "--data", files("x.csv"), "--out", files("s.csv")]) == 4


def test_shrink_lambda_small_for_large_n(files, capsys):
    for seed in range(20):
        x = simulate_ar(ArProcessSpec((0.8,), horizon=10), 2000, seed=seed)
        io.write_dataset(files("x.csv"), x)
        assert main(["shrink", "--data", files("x.csv"), "--out", files("s.csv")]) == 0
        lam = float(capsys.readouterr().out.split("=")[1])
        assert lam < 0.05


def test_estimate_identity_graph(files, rng):
    io.write_dataset(files("x.csv"), rng.normal(size=(20, 5)))
    io.write_graph(files("g.mtx"), identity_pattern(5))
    assert main(["estimate", "--data", files("x.csv"), "--graph", files("g.mtx"),
                 "--markov-order", "2", "--out", files("p.mtx")]) == 0
    prec = io.read_precision(files("p.mtx")).toarray()
    np.testing.assert_array_equal(prec, np.diag(np.diag(prec)))


def test_estimate_mixed_effect_workflow(files):
    data = simulate(files, "--model", "mixed", "--order", "3", "--coeffs",
                    "0.3333333333333333,0.3333333333333333,0.3333333333333334",
                    "--n", "100", "--t", "100", "--seed", "1")
    io.write_graph(files("g.mtx"), band_pattern(100, 1))
    assert main(["estimate", "--data", data, "--graph", files("g.mtx"),
                 "--markov-order", "3", "--out", files("p.mtx")]) == 0
    prec = io.read_precision(files("p.mtx"))
    expected = prec_sparse(io.read_dataset(data), band_pattern(100, 1), 3)
    np.testing.assert_array_equal(prec.toarray(), expected.toarray())
    assert prec.nnz == 100 + 2 * (99 + 98 + 97)


def test_estimate_dimension_mismatch(files, rng):
    io.write_dataset(files("x.csv"), rng.normal(size=(20, 5)))
    io.write_graph(files("g.mtx"), band_pattern(6, 1))
    assert main(["estimate", "--data", files("x.csv"), "--graph", files("g.mtx"),
                 "--out", files("p.mtx")]) == 2


def test_estimate_singular_block(files, capsys):
    io.write_dataset(files("x.csv"), np.random.default_rng(0).normal(size=(3, 5)))
    io.write_graph(files("g.mtx"), band_pattern(5, 1))
    code = main(["estimate", "--data", files("x.csv"), "--graph", files("g.mtx"),
                 "--no-shrinkage", "--out", files("p.mtx")])
    assert code == 5
    assert "column 2" in capsys.readouterr().err


def test_select_order_table(files, capsys):
    x = np.random.default_rng(3).standard_normal((200, 30))
    io.write_dataset(files("x.csv"), x)
    io.write_graph(files("g.mtx"), band_pattern(30, 1))
    assert main(["select-order", "--data", files("x.csv"), "--graph", files("g.mtx"),
                 "--max-order", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "order,nll,aic"
    assert [l.split(",")[0] for l in lines[1:-1]] == ["0", "1", "2", "3"]
    assert lines[-1] == "selected=0"

    assert main(["select-order", "--data", files("x.csv"), "--graph", files("g.mtx"),
                 "--max-order", "0", "--rule", "first-rise"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and lines[-1] == "selected=0"


def test_benchmark_csv(files):
    a, b = files("a.csv"), files("b.csv")
    for path in (a, b):
        assert main(["benchmark", "--experiment", "arorder", "--reps", "2", "--seed", "4",
                     "--out", path]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()
    rows = list(csv.DictReader(open(a)))
    assert len(rows) == 7 * 2 * 4
    keys = [(int(r["sweep_value"]), int(r["rep"]), r["estimator"]) for r in rows]
    assert keys == sorted(keys)
    assert {r["status"] for r in rows} == {"ok"}


def test_module_entry_point(tmp_path):
    out = tmp_path / "d.csv"
    proc = subprocess.run([sys.executable, "-m", "sparseprec.cli", "simulate", "--model", "ar",
                           "--order", "0", "--n", "3", "--t", "4", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert io.read_dataset(out).shape == (3, 4)
