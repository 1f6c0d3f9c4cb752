import io
import json
import subprocess
import sys

import pytest

from klmedian.cli import CorpusError, parse_corpus, run
from klmedian.cluster import kmedian_cost


def _run(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "p.jsonl"
    rows = [
        {"id": "a", "values": [0, 1, 0, 1, 0]},
        {"id": "b", "values": [10, 11, 10, 11]},
        {"id": "c", "values": [0.5, 1.5, 0.5, 1]},
        {"id": "d", "values": [9, 12, 9]},
    ]
    path.write_text("".join(json.dumps(r) + "\n" for r in rows))
    return path


def test_parse_csv(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("0.5,1.5,0.5\n2\n\n")
    c = parse_corpus(str(p))
    assert c.ids == ("1", "2") and c.series == ((0.5, 1.5, 0.5), (2.0,))


def test_parse_jsonl(tmp_path):
    p = tmp_path / "x.jsonl"
    p.write_text('{"id":"a","values":[1,2]}\n')
    c = parse_corpus(str(p))
    assert c.ids == ("a",) and c.series == ((1.0, 2.0),)


@pytest.mark.parametrize(
    "name, text, lineno",
    [
        ("x.csv", "1,2\n1,,2\n", 2),
        ("x.csv", "1\n\n2\n", 2),
        ("x.csv", "1,nan\n", 1),
        ("x.jsonl", '{"id":"a","values":[1]}\n{"id":"a","values":[2]}\n', 2),
        ("x.jsonl", '{"id":1,"values":[1]}\n', 1),
        ("x.jsonl", '{"id":"a","values":[]}\n', 1),
    ],
)
def test_parse_errors(tmp_path, name, text, lineno):
    p = tmp_path / name
    p.write_text(text)
    with pytest.raises(CorpusError, match=f"line {lineno}"):
        parse_corpus(str(p))


def test_frechet(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    a.write_text("0,2,1\n")
    b.write_text("0,1\n")
    code, out = _run(["frechet", "--a", str(a), "--b", str(b)])
    assert code == 0 and json.loads(out) == {"distance": 1}


def test_simplify(corpus):
    code, out = _run(["simplify", "--input", str(corpus), "--ell", "1"])
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["id"] for r in recs] == ["a", "b", "c", "d"]
    assert recs[0] == {"id": "a", "simplified": [0.5], "delta": 0.5}


def test_reduce_and_cache(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("5,5,5\n1,2,1,2,1,2\n")
    cache = tmp_path / "cache.txt"
    code, out = _run(["reduce", "--input", str(p), "--ell", "3", "--eps", "0.5", "--cache", str(cache)])
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert recs[0] == {"id": "1", "reduced": [5.0], "original_complexity": 3, "reduced_complexity": 1}
    assert recs[1]["reduced"] == [1.0, 2.0, 1.0, 2.0]
    assert "2,3:1 2 1 2 1 2 -> 1 2 1 2" in cache.read_text()


def test_reduce_cap_exit(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("1,3,2,4,1,4,2,3,1\n")
    code, out = _run(["reduce", "--input", str(p), "--ell", "3", "--eps", "1", "--cap", "4"])
    assert code == 3 and "warning" in json.loads(out)


def test_usage_and_data_errors(tmp_path, corpus):
    assert _run(["cluster", "--input", str(corpus), "--k", "1", "--ell", "1", "--eps", "0.9"])[0] == 1
    assert _run(["cluster", "--input", str(corpus), "--k", "0", "--ell", "1", "--eps", "0.5"])[0] == 1
    assert _run(["bogus"])[0] == 1
    assert _run(["simplify", "--input", str(tmp_path / "missing.csv"), "--ell", "1"])[0] == 2


def test_cluster_identical(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("3,4\n3,4\n3,4\n")
    code, out = _run(["cluster", "--input", str(p), "--k", "2", "--ell", "2", "--eps", "0.5"])
    res = json.loads(out)
    assert code == 0 and res["cost"] == 0
    assert list(res) == ["centers", "assignment", "cost", "solver", "stats"]
    assert list(res["stats"]) == ["cache_hits", "candidates", "reduced_max_complexity"]


@pytest.mark.parametrize("solver", ["exhaustive", "local-search"])
def test_cluster_roundtrip(corpus, solver):
    argv = ["cluster", "--input", str(corpus), "--k", "2", "--ell", "2", "--eps", "0.5", "--solver", solver, "--seed", "5"]
    code, out = _run(argv)
    assert code == 0
    res = json.loads(out)
    c = parse_corpus(str(corpus))
    centers = [tuple(v) for v in res["centers"]]
    assert kmedian_cost(c.series, centers) == res["cost"]
    assert _run(argv + ["--threads", "1"])[1] == out


def test_console_script(tmp_path):
    a = tmp_path / "a.csv"
    a.write_text("1,2\n")
    proc = subprocess.run(
        [sys.executable, "-m", "klmedian.cli", "frechet", "--a", str(a), "--b", str(a)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"distance": 0}
