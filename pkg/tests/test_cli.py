from pathlib import Path

from contractionlab.cli import main
from contractionlab.graphs import complete_graph, cycle_graph, path_graph
from contractionlab.problems import CliqueContractionInstance, FContractionInstance, HadwigerInstance
from contractionlab.textio import parse_graph_text, parse_instance, serialize_graph_text, serialize_instance


def run(args):
    return main(args)


def test_gen_recognize_solve_flow(tmp_path, capsys):
    graph_file = tmp_path / "g.txt"
    assert run(["gen", "--n", "6", "--max-degree", "4", "--seed", "3", "-o", str(graph_file)]) == 0
    g = parse_graph_text(graph_file.read_text())
    assert g.n == 6 and g.max_degree() <= 4

    code = run(["recognize", "--class", "chordal", str(graph_file)])
    assert code in (0, 1)

    assert run(["solve", "--problem", "3col", str(graph_file)]) in (0, 1)
    capsys.readouterr()


def test_recognize_prints_witness_partition(tmp_path, capsys):
    f = tmp_path / "k3.txt"
    f.write_text(serialize_graph_text(complete_graph(3)))
    assert run(["recognize", "--class", "split", str(f)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("yes")
    assert "part k 1 2 3" in out


def test_recognize_no_path(tmp_path, capsys):
    f = tmp_path / "c5.txt"
    f.write_text(serialize_graph_text(cycle_graph(5)))
    assert run(["recognize", "--class", "chordal", str(f)]) == 1
    assert capsys.readouterr().out.strip() == "no"


def test_solve_exit_codes(tmp_path, capsys):
    yes = tmp_path / "yes.txt"
    yes.write_text(serialize_instance(CliqueContractionInstance(path_graph(3), 1)))
    assert run(["solve", str(yes)]) == 0
    no = tmp_path / "no.txt"
    no.write_text(serialize_instance(CliqueContractionInstance(path_graph(3), 0)))
    assert run(["solve", str(no)]) == 1
    capsys.readouterr()


def test_solve_hadwiger_and_guard(tmp_path, capsys):
    h = tmp_path / "h.txt"
    h.write_text(serialize_instance(HadwigerInstance(cycle_graph(5), 3)))
    assert run(["solve", str(h)]) == 0
    out = capsys.readouterr().out
    assert "hadwiger 3" in out

    big = tmp_path / "big.txt"
    big.write_text(serialize_instance(HadwigerInstance(complete_graph(15), 3)))
    assert run(["solve", str(big)]) == 3  # guard exceeded
    capsys.readouterr()


def test_usage_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("problem nonsense\n")
    assert run(["solve", str(bad)]) == 2
    capsys.readouterr()


def test_reduce_single_hops(tmp_path, capsys):
    src = tmp_path / "k3.txt"
    src.write_text(serialize_graph_text(complete_graph(3)))
    lsh = tmp_path / "lsh.txt"
    assert run(["reduce", "--from", "3col", "--to", "lsh", str(src), str(lsh)]) == 0
    inst = parse_instance(lsh.read_text())
    assert inst.problem == "lsh"

    stream_dir = tmp_path / "stream"
    assert run(["reduce", "--from", "lsh", "--to", "lsi", str(lsh), str(stream_dir)]) == 0
    files = sorted(stream_dir.glob("lsi_*.txt"))
    assert files
    xm = tmp_path / "xm.txt"
    assert run(["reduce", "--from", "lsi", "--to", "xmatch", str(files[0]), str(xm)]) == 0
    st = tmp_path / "st.txt"
    assert run(["reduce", "--from", "xmatch", "--to", "structured", str(xm), str(st)]) == 0
    fc = tmp_path / "fc.txt"
    assert run(["reduce", "--from", "structured", "--to", "fcon", "--class", "split", str(st), str(fc)]) == 0
    assert isinstance(parse_instance(fc.read_text()), FContractionInstance)
    hw = tmp_path / "hw.txt"
    assert run(["reduce", "--from", "structured", "--to", "hadwiger", str(st), str(hw)]) == 0
    assert isinstance(parse_instance(hw.read_text()), HadwigerInstance)
    capsys.readouterr()


def test_reduce_chain_emits_manifest(tmp_path, capsys):
    src = tmp_path / "k3.txt"
    src.write_text(serialize_graph_text(complete_graph(3)))
    outdir = tmp_path / "chain"
    assert run(["reduce", "--chain", "3col..fcon", "--classes", "chordal,split", str(src), str(outdir)]) == 0
    manifest = (outdir / "manifest.txt").read_text().splitlines()
    assert any(line.startswith("hop=3col_to_lsh") for line in manifest)
    assert any("vertices=" in line and "edges=" in line for line in manifest)
    assert (outdir / "fcon_chordal.txt").exists()
    assert (outdir / "structured.txt").exists()
    capsys.readouterr()


def test_verify_chain_cli(tmp_path, capsys):
    report = tmp_path / "report.txt"
    sound = "chordal,interval,proper-interval,trivially-perfect,split,complete-split,perfect"
    code = run(
        [
            "verify", "chain",
            "--n-min", "4", "--n-max", "5",
            "--trials", "4",
            "--seed", "7",
            "--classes", sound,
            "--report", str(report),
        ]
    )
    assert code == 0
    lines = report.read_text().splitlines()
    assert any(line.startswith("seed=") and "verdict=all-agree" in line for line in lines)
    out = capsys.readouterr().out
    assert "PASS" in out


def test_verify_chain_cli_flags_threshold_divergence(tmp_path, capsys):
    code = run(
        [
            "verify", "chain",
            "--n-min", "4", "--n-max", "4",
            "--trials", "2",
            "--seed", "1",
            "--classes", "threshold",
        ]
    )
    out = capsys.readouterr().out
    # seed 1 at n=4 is 3-colorable, so the threshold hop diverges
    assert code == 1 and "FAIL" in out
