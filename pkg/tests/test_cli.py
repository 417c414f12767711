import json
import subprocess
import sys

import pytest

from artin_shortlex.cli import (
    EXIT_BUDGET, EXIT_PARSE, EXIT_PRESENTATION, EXIT_USAGE, main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize(capsys):
    assert run(capsys, "normalize", "-p", "da3.json", "-w", "b a b")[:2] == (0, "a b a\n")
    assert run(capsys, "normalize", "-p", "da3.json", "-w", "")[:2] == (0, "ε\n")
    code, out, _ = run(capsys, "normalize", "-p", "g345.json", "-w", "c a a c a B C b b c A B B a")
    assert out.strip() == "a c a c c a b c c B C A A B"


def test_normalize_trace_and_json(capsys):
    code, out, _ = run(capsys, "normalize", "-p", "g345.json", "--trace",
                       "c a a c a B C b b c A B B a")
    tr = json.loads(out)
    assert [(s["before"], s["after"]) for s in tr["steps"]] == [
        ("A B B a", "b A A B"), ("B C b b c b", "c b c c B C"), ("c a a c a c", "a c a c c a")]
    code, out, _ = run(capsys, "normalize", "-p", "da3.json", "--json", "b a b")
    assert json.loads(out) == {"input": "b a b", "normal_form": "a b a"}


def test_equal_length_geodesic_fftp(capsys):
    assert run(capsys, "equal", "-p", "da3.json", "a b a", "b a b")[1] == "true\n"
    assert run(capsys, "length", "-p", "da3.json", "a b b A B")[1] == "3\n"
    assert run(capsys, "geodesic", "-p", "da3.json", "b a b")[1] == "true\n"
    assert run(capsys, "fftp", "-p", "da3.json", "a b b A B")[1] == "B a a 2\n"
    assert run(capsys, "fftp", "-p", "da3.json", "a b a")[1] == "geodesic\n"
    out = json.loads(run(capsys, "fftp", "-p", "da3.json", "--json", "a b b A B")[1])
    assert out["witness"]["distance"] == 2


def test_custom_order(capsys):
    assert run(capsys, "normalize", "-p", "da3.json", "--order", "b B a A", "a b a")[1] == "b a b\n"
    assert run(capsys, "normalize", "-p", "da3.json", "--order", "b a", "a")[0] == EXIT_PARSE


def test_acceptor(capsys, tmp_path):
    out_file = tmp_path / "dfa.dot"
    code, out, err = run(capsys, "acceptor", "-p", "da3.json", "--kind", "geodesic",
                         "--out", str(out_file), "--accepts", "a b a", "--accepts", "b a b")
    assert code == 0
    assert out.startswith("states ")
    assert "a b a: accepted" in err and "b a b: accepted" in err
    assert out_file.read_text().startswith("digraph")
    js = tmp_path / "dfa.json"
    run(capsys, "acceptor", "-p", "da3.json", "--out", str(js))
    assert set(json.loads(js.read_text())) == {"states", "start", "accepting", "edges"}


def test_acceptor_counts_g333(capsys):
    code, out, _ = run(capsys, "acceptor", "-p", "g333.json", "--depth", "4")
    assert out.splitlines()[1].startswith("counts 1 6 30")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "-p", "da3.json", "--radius", "0")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "verify", "-p", "g333.json", "--radius", "3", "--suite", "reducer")
    assert code == 0 and json.loads(out)["ok"]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "normalize", "-p", "da3.json", "x y")[0] == EXIT_PARSE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"generators": ["a", "b"], "matrix": [[1, 1], [1, 1]]}))
    assert run(capsys, "normalize", "-p", str(bad), "a")[0] == EXIT_PRESENTATION
    assert run(capsys, "acceptor", "-p", "g333.json", "--max-states", "10")[0] == EXIT_BUDGET
    assert run(capsys, "verify", "-p", "da3.json", "--radius", "-1")[0] == EXIT_USAGE
    for argv in (["acceptor", "-p", "da3.json", "--kind", "nope"],
                 ["verify", "-p", "da3.json", "--suite", "reducr"],
                 []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "artin_shortlex", "normalize", "-p", "da3.json",
                          "b a b"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "a b a\n"
