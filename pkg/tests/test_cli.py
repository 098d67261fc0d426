import io
import json
import subprocess
import sys

import pytest

from pebbling import formats
from pebbling.cli import main
from pebbling.core import Signature
from pebbling.verify import FIG1

P3 = "g 3 2\ne 0 1\ne 1 2\np 0 4\nr 2\n"
CYCLE = "g 3 3\ne 0 1\ne 1 2\ne 0 2\np 0 1\np 1 1\np 2 1\n"
K2 = "g 2 1\ne 0 1\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_reach_with_witness(files, tmp_path):
    g = files("p3.txt", P3)
    w = tmp_path / "w.txt"
    code, out, _ = run("reach", "-g", g, "--witness", str(w))
    assert (code, out) == (0, "yes\n")
    assert formats.parse_signature(w.read_text()) == Signature({(0, 1): 2, (1, 2): 1})


def test_reach_no_and_json(files):
    g = files("p3.txt", P3.replace("p 0 4", "p 0 3"))
    assert run("reach", "-g", g)[1] == "no\n"
    code, out, _ = run("reach", "-g", g, "--json", "--method", "signature")
    assert code == 0 and json.loads(out)["answer"] is False


def test_orderable_reports_sink_condition(files):
    g = files("c3.txt", CYCLE)
    s = files("s.txt", "a 0 1 1\na 1 2 1\na 2 0 1\n")
    code, out, _ = run("orderable", "-g", g, "-s", s)
    assert code == 0 and out.startswith("no\nsink-condition")


def test_orderable_witness(files, tmp_path):
    g = files("p3.txt", P3)
    s = files("s.txt", "a 0 1 2\na 1 2 1\n")
    w = tmp_path / "order.txt"
    assert run("orderable", "-g", g, "-s", s, "--witness", str(w))[1] == "yes\n"
    assert w.read_text().splitlines() == ["m 0 1", "m 0 1", "m 1 2"]


@pytest.mark.parametrize(
    "cmd, extra, want",
    [
        ("pi", [], "4"),
        ("rpi", [], "4"),
        ("maxreach", [], "1"),
        ("gamma", [], "7"),
        ("nonrep-reach", [], "no"),
        ("annihilate", [], "yes"),
    ],
)
def test_number_commands(files, cmd, extra, want):
    g = files("p3.txt", P3)
    code, out, _ = run(cmd, "-g", g, *extra)
    assert (code, out.strip()) == (0, want)


def test_opn_and_cover(files, tmp_path):
    g = files("p3.txt", P3)
    w = tmp_path / "opt.txt"
    code, out, _ = run("opn", "-g", g, "--witness", str(w))
    assert out == "2\n" and sum(formats.parse_distribution(w.read_text(), 3)) == 2
    k2 = files("k2.txt", K2 + "p 0 3\n")
    q = files("q.txt", "p 0 1\np 1 1\n")
    assert run("cover", "-g", k2, "-q", q)[1] == "yes\n"
    assert run("gamma", "-g", files("k2b.txt", K2))[1] == "3\n"


def test_exit_codes(files):
    assert run("reach", "-g", files("bad.txt", "g 2 1\ne 0 1\nq 1\n"))[0] == 1
    code, _, err = run("reach", "-g", files("bad2.txt", "g 2 1\ne 0 7\n"))
    assert code == 1 and "bad2.txt:2" in err
    assert run("reach", "-g", "/nonexistent/file")[0] == 1
    assert run("reach", "-g", files("nt.txt", K2))[0] == 1
    assert run("frobnicate")[0] == 1
    big = files("big.txt", "g 6 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\np 0 64\np 2 3\nr 5\n")
    code, _, err = run("reach", "-g", big, "-k", "2", "--max-states", "3")
    assert code == 2 and "budget" in err


def test_reduce_npr_round_trip(files, tmp_path):
    src = files("fig1.cnf", formats.format_qdimacs(FIG1))
    out = tmp_path / "g.txt"
    code, msg, _ = run("reduce", "npr", "-i", src, "-o", str(out))
    assert code == 0 and "n=22" in msg
    pg = formats.parse_pebble_graph(out.read_text())
    labels = formats.parse_labels((tmp_path / "g.txt.labels").read_text(), pg.graph.n)
    meta = formats.parse_metadata((tmp_path / "g.txt.meta.jsonl").read_text())[0]
    assert labels[pg.target] == "r" and meta["reduction"] == "npr" and meta["n"] == 22
    assert run("nonrep-reach", "-g", str(out))[1] == "yes\n"


def test_reduce_graph_kinds(files, tmp_path):
    g = files("p3.txt", P3)
    for kind, extra in (("pc", []), ("hampath", []), ("pn", ["-k", "4", "--c-prime", "2"]),
                        ("opn", ["--alpha", "3", "--beta", "2"])):
        out = tmp_path / f"{kind}.txt"
        code, msg, err = run("reduce", kind, "-i", g, "-o", str(out), "--json", *extra)
        assert code == 0, err
        assert json.loads(msg)["reduction"] == kind
    assert run("reduce", "pn", "-i", g, "-o", str(tmp_path / "x"))[0] == 1


def test_verify_command():
    code, out, _ = run("verify", "star-lemma")
    assert code == 0 and "star-lemma: ok" in out
    assert run("verify", "nope")[0] == 1


def test_console_script_help():
    res = subprocess.run([sys.executable, "-m", "pebbling.cli", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "reduce" in res.stdout


def test_output_is_byte_stable(files, tmp_path):
    src = files("fig1.cnf", formats.format_qdimacs(FIG1))
    texts = []
    for i in range(2):
        out = tmp_path / f"g{i}.txt"
        run("reduce", "pr", "-i", src, "-o", str(out), "--alpha", "3")
        w = tmp_path / f"w{i}.txt"
        run("reach", "-g", str(out), "--method", "signature", "--witness", str(w))
        texts.append((out.read_text(), (tmp_path / f"g{i}.txt.labels").read_text(), w.read_text()))
    assert texts[0] == texts[1]


def test_budget_alias(files):
    g = files("p3.txt", P3)
    assert run("reach", "-g", g, "--budget", "1000")[1] == "yes\n"
