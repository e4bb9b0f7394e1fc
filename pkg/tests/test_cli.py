import json


from apsquares.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_pell_lines(capsys):
    code, out = run(capsys, "pell", "--q1", "1", "--a1", "1", "--q2", "3", "--a2", "1", "--count", "5")
    assert code == 0 and out.split() == ["0", "8", "120", "1680", "23408"]


def test_classes(capsys):
    assert run(capsys, "classes", "--N", "52", "--k", "4")[1].strip() == "9077"
    assert run(capsys, "classes", "--N", "52", "--k", "4", "--symmetric")[1].strip() == "402"


def test_search_ap(capsys):
    code, out = run(capsys, "search-ap", "--positions", "0,1,2,4", "--bound", "200")
    assert code == 0 and "(120,49)" in out.split()


def test_curve(capsys):
    code, out = run(capsys, "curve", "--subset", "0,1,2,3")
    assert code == 0
    assert "Z/2+Z/4" in out and "rank window: (0, 0)" in out and "root number: +1" in out
    code, out = run(capsys, "curve", "--subset", "0,1,2,5")
    assert "root number" not in out and "rank window: (1, 1)" in out


def test_certify_and_cache(capsys, monkeypatch, store_path):
    monkeypatch.setenv("AP_SQUARES_CACHE", str(store_path))
    code, out = run(capsys, "certify-subset", "--subset", "0,1,2,3")
    assert code == 0 and json.loads(out)["conclusion"] == "z_zero"
    assert store_path.exists()
    rec = json.loads(store_path.read_text().splitlines()[0])
    assert set(rec) == {"subset", "roots", "selmer_dim", "rank_upper", "rank_lower", "torsion",
                        "witnesses", "conclusion", "tool_version"}


def test_inconclusive_exit(capsys, store_path):
    code, out = run(capsys, "certify-subset", "--subset", "0,1,2,4,7", "--cache", str(store_path))
    assert code == 2 and json.loads(out)["status"] == "undecided"


def test_covering_json(capsys):
    code, out = run(capsys, "covering", "--subset", "0,1,4,7,8", "--J", "1,4,7", "--j", "2,1")
    assert code == 0
    datum = json.loads(out.splitlines()[-1])
    assert datum["conclusion"] == "z_zero"
    assert {"delta", "signs", "empty", "rank_window", "t_values", "ap"} <= set(datum["rows"][0])


def test_cohn(capsys):
    code, out = run(capsys, "cohn", "--n", "5")
    assert code == 0 and "-1" in out


def test_qn(capsys, store_path):
    code, out = run(capsys, "qn", "--max", "8", "--cache", str(store_path))
    assert code == 0 and out.splitlines()[-1].startswith("Q(8)   = 5")


def test_error_exit(capsys):
    assert main(["curve", "--subset", "0,1"]) == 1
