import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jonesbm.cli import (
    EXIT_FAIL,
    EXIT_INPUT,
    EXIT_OK,
    InputError,
    format_matrix,
    format_space,
    main,
    parse_indices,
    parse_matrix,
    parse_space,
)
from jonesbm.corpus import corpus_files, data_path, jones_pairs, spin_models, strict_spin_models, twisted_pairs
from jonesbm.linalg import Mat, MatSpace
from jonesbm.scalar import render, zeta


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, _ = run(capsys, "--format", "machine", *argv)
    return code, json.loads(out)


# documented examples


def test_potts2_spin_passes(capsys):
    code, rep = machine(capsys, "check", "spin", "corpus:potts2")
    assert code == EXIT_OK and rep["spin_model"] and rep["passed"]


def test_dft4_nomura_dim(capsys):
    code, out, _ = run(capsys, "nomura", "corpus:dft4")
    assert code == EXIT_OK and "dim: 4" in out


def test_ones2_not_type2(capsys):
    code, rep = machine(capsys, "check", "type2", "corpus:ones2")
    assert code == EXIT_FAIL and rep["type2"] is False


# exit codes over the corpus


def test_exit_codes_on_corpus(capsys):
    for p in jones_pairs() + twisted_pairs():
        code, _, _ = run(capsys, "check", "jones", f"corpus:{p.name}_A", f"corpus:{p.name}_B")
        assert code == EXIT_OK, p.name
    for name in spin_models():
        assert run(capsys, "check", "spin", f"corpus:{name}")[0] == EXIT_OK
    for name in strict_spin_models():
        assert run(capsys, "check", "spin", "--strict", f"corpus:{name}")[0] == EXIT_OK
    assert run(capsys, "check", "spin", "--strict", "corpus:potts2")[0] == EXIT_FAIL
    assert run(capsys, "check", "type2", "corpus:dft4_twisted")[0] == EXIT_OK


def test_corpus_files_match_builders():
    files = corpus_files()
    assert sorted(p.name for p in data_path().glob("*.mat")) == sorted(files)
    for name, M in files.items():
        assert parse_matrix(data_path(name).read_text(), name) == M, name


# formats


def test_matrix_format_with_comments():
    text = "# potts\n\norder 2 backend exact   # header\n1 i\ni 1  # row two\n"
    assert parse_matrix(text) == Mat([[1, zeta(4)], [zeta(4), 1]])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "order 2\n1 1\n1 1\n",
        "order 2 backend exact\n1 1\n",
        "order 2 backend exact\n1 1 1\n1 1\n",
        "order 2 backend exact\n1 1\n1 *\n",
        "order 2 backend exact\n1 1\n1 1\n1 1\n",
        "order 0 backend exact\n",
        "order 2 backend quantum\n1 1\n1 1\n",
    ],
)
def test_matrix_format_errors(text):
    with pytest.raises(InputError):
        parse_matrix(text)


small = st.sampled_from([0, 1, -1, zeta(3), zeta(4) + 1, zeta(8) / 3, zeta(5) ** 2])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_matrix_roundtrip(rows):
    M = Mat(rows)
    assert parse_matrix(format_matrix(M)) == M


def test_space_roundtrip():
    S = MatSpace.span([Mat.identity(2), Mat([[0, zeta(3)], [1, 0]])])
    assert parse_space(format_space(S)) == S
    with pytest.raises(InputError):
        parse_space("basis 2\norder 1 backend exact\n1\n")
    with pytest.raises(InputError):
        parse_space("basis 2\norder 1 backend exact\n1\norder 2 backend exact\n1 0\n0 1\n")


def test_indices():
    assert parse_indices("1,3-5", 6) == [0, 2, 3, 4]
    for bad in ("0", "7", "", "a-b"):
        with pytest.raises(InputError):
            parse_indices(bad, 6)


def test_float_backend_reports_tolerance(capsys, tmp_path):
    f = tmp_path / "f.mat"
    f.write_text("order 2 backend float\n1 1\n1 -1\n")
    code, out, _ = run(capsys, "--tolerance", "1e-8", "check", "type2", str(f))
    assert code == EXIT_OK and "WARNING" in out
    code, rep = machine(capsys, "--tolerance", "1e-8", "check", "type2", str(f))
    assert rep["backend"] == "float" and rep["tolerance"] == 1e-8


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "check", "type2", str(tmp_path / "missing.mat"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.mat"
    bad.write_text("order 2 backend exact\n1 (\n1 1\n")
    code, _, err = run(capsys, "check", "type2", str(bad))
    assert code == EXIT_INPUT and "bad.mat:2" in err
    assert run(capsys, "check", "jones", "corpus:dft4")[0] == EXIT_INPUT
    assert run(capsys, "check", "jones", "corpus:dft4", "corpus:potts2_B")[0] == EXIT_INPUT
    assert run(capsys, "check", "fourweight", *["corpus:dft4"] * 4)[0] == EXIT_INPUT
    assert run(capsys, "check", "fourweight", *["corpus:dft4"] * 4, "--d", "3")[0] == EXIT_INPUT
    assert run(capsys, "check", "spin", "corpus:potts2", "--d", "2")[0] == EXIT_INPUT
    assert run(capsys, "subsetsum", "1,x", "3")[0] == EXIT_INPUT
    assert run(capsys, "--threads", "0", "demo")[0] == EXIT_INPUT
    assert run(capsys, "bogus")[0] == EXIT_INPUT


# commands


def test_fourweight_from_pair(capsys, tmp_path):
    from jonesbm.nomura import four_weight_from_pair, default_d

    p = jones_pairs()[1]
    paths = []
    for k, W in enumerate(four_weight_from_pair(p.A, p.B, default_d(2))):
        f = tmp_path / f"w{k}.mat"
        f.write_text(format_matrix(W))
        paths.append(str(f))
    code, rep = machine(capsys, "check", "fourweight", *paths, "--d", "sqrt(2)")
    assert code == EXIT_OK and rep["star_triangle"]


def test_nomura_pair_with_theta(capsys):
    code, rep = machine(capsys, "nomura", "corpus:circ3_A", "corpus:circ3_B", "--basis", "--theta")
    assert code == EXIT_OK and rep["dim"] == 3 and len(rep["basis"]) == 3 and len(rep["theta"]) == 3
    code, rep = machine(capsys, "nomura", "corpus:ones2", "corpus:potts2")
    assert code == EXIT_FAIL and "error" in rep


def test_build_and_scheme_pipeline(capsys, tmp_path):
    bmf, vf, wf = tmp_path / "bm.txt", tmp_path / "v.mat", tmp_path / "w.mat"
    pair = ["corpus:potts2_A", "corpus:potts2_B"]
    assert run(capsys, "build", "bm", *pair, "-o", str(bmf))[0] == EXIT_OK
    assert run(capsys, "build", "v", *pair, "-o", str(vf))[0] == EXIT_OK
    assert run(capsys, "build", "w", *pair, "-o", str(wf))[0] == EXIT_OK
    assert run(capsys, "check", "spin", "--strict", str(vf))[0] == EXIT_OK
    code, rep = machine(capsys, "scheme", "idempotents", str(bmf))
    assert code == EXIT_OK and rep["dim"] == 6 and sum(rep["valencies"]) == 8
    part = tmp_path / "pi.txt"
    part.write_text("1 3\n2 4\n5 7\n6 8\n")
    code, rep = machine(capsys, "scheme", "quotient", str(bmf), str(part))
    assert code == EXIT_OK and rep["equitable"] and rep["quotient_dim"] == 4
    part.write_text("1 2 3\n4 5 6 7 8\n")
    assert run(capsys, "scheme", "quotient", str(bmf), str(part))[0] == EXIT_FAIL
    code, rep = machine(capsys, "scheme", "induce", str(bmf), "1-4")
    assert code == EXIT_OK and rep["induced_dim"] == 4
    code, rep = machine(capsys, "scheme", "duality", str(bmf), str(vf))
    assert code == EXIT_OK and rep["self_dual"]


def test_pair_and_rspace(capsys, tmp_path):
    from jonesbm.yamada import pair_of
    from conftest import context

    ctx = context("circ3")
    H = ctx.NAB.basis[0]
    f = tmp_path / "h.mat"
    f.write_text(format_matrix(H))
    code, rep = machine(capsys, "pair", "corpus:circ3_A", "corpus:circ3_B", str(f))
    assert code == EXIT_OK
    K = pair_of(ctx, H)
    assert rep["K"] == [[render(x) for x in r] for r in K.rows]
    code, rep = machine(capsys, "rspace", "corpus:potts2_A", "corpus:potts2_B")
    assert code == EXIT_OK and rep["dim_R"] == 2 and rep["dim_NV"] == 8
    code, rep = machine(capsys, "rspace", "corpus:potts2_twisted_A", "corpus:potts2_twisted_B")
    assert code == EXIT_FAIL and "error" in rep


def test_subsetsum(capsys):
    code, rep = machine(capsys, "subsetsum", "1,7,7,7,21,21", "22", "--expect", "some")
    assert code == EXIT_OK and rep["witness"] == [1, 7, 7, 7]
    code, rep = machine(capsys, "subsetsum", "1,7,7,7,21,21", "32")
    assert code == EXIT_OK and rep["witness"] == "none"


def test_demo_deterministic_across_threads(capsys):
    outs = {run(capsys, "--format", "machine", "--seed", "7", "--threads", str(k), "demo", "--count", "60")[1] for k in (1, 4)}
    assert len(outs) == 1


def test_corpus_export(capsys, tmp_path):
    code, rep = machine(capsys, "corpus", "export", str(tmp_path / "out"))
    assert code == EXIT_OK and rep["written"] == len(corpus_files())
    assert (tmp_path / "out" / "potts2.mat").read_text() == data_path("potts2.mat").read_text()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "jonesbm.cli", "check", "type2", "corpus:dft4"], capture_output=True, text=True)
    assert r.returncode == EXIT_OK and "PASS" in r.stdout
