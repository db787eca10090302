"""One test per acceptance criterion, each printing a single pass/fail line."""

import pytest

from erasureframes import verify
from erasureframes.cli import EXIT_OK, main


def _run(number, capsys, workers=1):
    res = verify.run_check(number, verify.Context(workers=workers, seed=0))
    with capsys.disabled():
        print(f"\n{res.line()}  ({res.seconds:.3g} s)")
    return res


def test_criterion_01_signature_identities(capsys):
    res = _run(1, capsys)
    assert res.passed, res.details
    assert res.seconds < 1.0


def test_criterion_02_small_m(capsys):
    res = _run(2, capsys)
    assert res.passed, res.details
    assert res.seconds < 120


@pytest.mark.slow
def test_criterion_03_m7(capsys):
    res = _run(3, capsys)
    assert res.passed, res.details
    assert res.details["max_abs_error"] <= 1e-9
    assert res.seconds < 5 * 60


@pytest.mark.slow
def test_criterion_04_m8(capsys):
    res = _run(4, capsys)
    assert res.passed, res.details
    assert res.seconds < 15 * 60


def test_criterion_05_bipartite(capsys):
    res = _run(5, capsys)
    assert res.passed, res.details


def test_criterion_06_bound_constants(capsys):
    res = _run(6, capsys)
    assert res.passed, res.details
    assert res.seconds < 1e-3


def test_criterion_07_counting(capsys):
    res = _run(7, capsys)
    assert res.passed, res.details


def test_criterion_08_e3_closed(capsys):
    res = _run(8, capsys)
    assert res.passed, res.details


def test_criterion_09_reconstruction(capsys):
    res = _run(9, capsys)
    assert res.passed, res.details


def test_criterion_10_p2_reversal(capsys):
    res = _run(10, capsys)
    assert res.passed, res.details


def test_criterion_11_three_uniform(capsys):
    res = _run(11, capsys)
    assert res.passed, res.details


def test_criterion_12_switching(capsys):
    res = _run(12, capsys)
    assert res.passed, res.details
    assert res.seconds < 60


def test_criterion_13_hadamard_bipartite(capsys):
    res = _run(13, capsys)
    assert res.passed, res.details


def test_criterion_14_determinism(tmp_path, capsys):
    reports = {}
    for tag, workers in (("a", 1), ("b", 1), ("c", 4), ("d", 8)):
        path = tmp_path / f"{tag}.json"
        code = main(["verify", "--scope", "quick", "--no-timing", "--workers", str(workers),
                     "--report", str(path)])
        assert code == EXIT_OK
        reports[tag] = path.read_bytes()
    capsys.readouterr()
    passed = len(set(reports.values())) == 1
    with capsys.disabled():
        status = "PASS" if passed else "FAIL"
        print(f"\n[{status}] criterion 14: verify reports byte-identical across runs and 1/4/8 workers")
    assert passed
