import json
import math

import pytest

from erasureframes import catalog
from erasureframes.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_PARSE, main


@pytest.fixture
def t2(tmp_path):
    path = tmp_path / "table2-1.sig"
    path.write_bytes(catalog.table2_bytes("table2-1"))
    return str(path)


def _report(tmp_path, argv, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--report", str(out), "--no-timing"])
    return code, json.loads(out.read_text()), out.read_bytes()


def test_construct_paley(tmp_path):
    out = tmp_path / "c6.sig"
    assert main(["construct", "--kind", "paley", "--p", "5", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert len(lines) == 6 and all(len(line) == 6 for line in lines)


def test_construct_hadamard_minus(tmp_path, capsys):
    assert main(["construct", "--kind", "hadamard-minus", "--order", "16"]) == EXIT_OK
    Q = catalog.parse_signature_text(capsys.readouterr().out)
    path = tmp_path / "h.sig"
    catalog.write_signature_file(path, Q)
    _, doc, _ = _report(tmp_path, ["analyze", str(path)])
    assert (doc["parameters"]["n"], doc["parameters"]["k"], doc["parameters"]["mu"]) == (16, 6, 2)


@pytest.mark.parametrize("argv", [
    ["construct", "--kind", "paley", "--p", "7"],
    ["construct", "--kind", "paley"],
    ["construct", "--kind", "hadamard-plus", "--order", "8"],
    ["construct", "--kind", "basis-repetition", "--n", "3"],
])
def test_construct_invalid(argv):
    assert main(argv) == EXIT_INVALID


def test_analyze_table2(tmp_path, t2):
    code, doc, _ = _report(tmp_path, ["analyze", t2])
    assert code == EXIT_OK
    p, r = doc["parameters"], doc["results"]
    assert (p["n"], p["k"], p["mu"], p["rho1"], p["rho2"]) == (36, 15, 2, 7, -5)
    assert (r["srg_reduction"]["v"], r["srg_reduction"]["c"]) == (16, 6)
    assert r["E3"] == r["E3_formula"] == 3780 and r["O3"] == 3360
    assert r["alpha_relation_holds"]
    assert doc["input"]["fingerprint"] == "sha256:" + catalog.TABLE2_SHA256["table2-1"]


def test_analyze_trivial(tmp_path):
    out = tmp_path / "t.sig"
    assert main(["construct", "--kind", "trivial-codim1", "--n", "6", "--out", str(out)]) == EXIT_OK
    _, doc, _ = _report(tmp_path, ["analyze", str(out)])
    assert (doc["parameters"]["k"], doc["parameters"]["mu"]) == (5, -4)


@pytest.mark.parametrize("content", [b"0+\n-0\n", b"0+\n+0+\n", b"0a\na0\n"])
def test_analyze_malformed(tmp_path, content, capsys):
    path = tmp_path / "bad.sig"
    path.write_bytes(content)
    assert main(["analyze", str(path)]) == EXIT_PARSE
    assert "error" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["analyze", str(tmp_path / "nope.sig")]) == EXIT_PARSE


def test_not_a_signature(tmp_path):
    path = tmp_path / "q.sig"
    path.write_text("0+++\n+0++\n++0-\n++-0\n")
    assert main(["analyze", str(path)]) == EXIT_INVALID


def test_erasures_m3_closed_form(tmp_path, t2):
    code, doc, _ = _report(tmp_path, ["erasures", t2, "--m", "3", "--lp", "2"])
    assert code == EXIT_OK and doc["exact"]
    assert doc["results"]["value"] == pytest.approx(doc["results"]["closed_form"], abs=1e-12)


def test_erasures_inf_worst_sets(tmp_path, t2):
    code, doc, _ = _report(tmp_path, ["erasures", t2, "--m", "2"])
    r = doc["results"]
    assert code == EXIT_OK and r["value"] == pytest.approx(0.5)
    assert r["worst_count"] == 630 and r["worst_sets"][0] == [1, 2]
    assert doc["command"]["p"] == "inf"


def test_erasures_invalid_and_budget(tmp_path, t2):
    assert main(["erasures", t2, "--m", "40"]) == EXIT_INVALID
    assert main(["erasures", t2, "--m", "3", "--lp", "0.5"]) == EXIT_INVALID
    assert main(["erasures", t2, "--m", "3", "--workers", "0"]) == EXIT_INVALID
    with pytest.raises(SystemExit):
        main(["erasures", t2, "--m", "3", "--lp", "abc"])
    code, doc, _ = _report(tmp_path, ["erasures", t2, "--m", "4", "--budget", "1000"])
    assert code == EXIT_BUDGET and doc["exact"] is False
    assert doc["results"]["subsets_examined"] <= 1000


def test_erasures_workers_and_prune_agree(tmp_path, t2):
    _, _, a = _report(tmp_path, ["erasures", t2, "--m", "4"], "a.json")
    _, _, b = _report(tmp_path, ["erasures", t2, "--m", "4", "--workers", "3"], "b.json")
    assert a == b
    _, da, _ = _report(tmp_path, ["erasures", t2, "--m", "4", "--no-prune"], "c.json")
    assert da["results"]["value"] == pytest.approx(json.loads(a)["results"]["value"], abs=1e-12)
    assert da["results"]["worst_sets"] == json.loads(a)["results"]["worst_sets"]


def test_bipartite(tmp_path, t2):
    code, doc, _ = _report(tmp_path, ["bipartite", t2, "--cap", "9"])
    r = doc["results"]
    assert code == EXIT_OK and r["max_size"] == 6 and len(r["witness"]) == 6 and r["complete"]
    assert sorted(r["sides"][0] + r["sides"][1]) == r["witness"]


def test_reconstruct_demo(tmp_path):
    sig = tmp_path / "c6.sig"
    main(["construct", "--kind", "paley", "--p", "5", "--out", str(sig)])
    code, doc, first = _report(tmp_path, ["reconstruct-demo", str(sig), "--erasures", "2", "--seed", "42"])
    assert code == EXIT_OK and doc["results"]["residual"] < 1e-8
    assert doc["results"]["left_inverse_norm"] <= doc["results"]["left_inverse_bound"] + 1e-12
    _, _, again = _report(tmp_path, ["reconstruct-demo", str(sig), "--erasures", "2", "--seed", "42"], "b.json")
    assert first == again
    code, doc, _ = _report(tmp_path, ["reconstruct-demo", str(sig), "--erasures", "4"], "c.json")
    assert code == EXIT_INVALID and doc["results"]["reconstructible"] is False
    assert main(["reconstruct-demo", str(sig), "--erasures", "9"]) == EXIT_INVALID


def test_report_numbers_and_timing(tmp_path, t2, capsys):
    assert main(["analyze", t2]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert "timing" in doc and isinstance(doc["parameters"]["n"], int)
    assert math.isclose(doc["parameters"]["c"], math.sqrt(15 * 21 / (36**2 * 35)), abs_tol=1e-16)
