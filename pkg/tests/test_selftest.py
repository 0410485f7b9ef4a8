import pytest

from quadfactor.disk import parse_board
from quadfactor.selftest import CHECKS, check_instance, run_selftest, worker_count


def test_small_runs_pass():
    r = run_selftest(2)
    assert r.ok and r.instances == 3
    assert r.render().endswith("result: PASS\n")


def test_six_cells_pass():
    r = run_selftest(6)
    assert r.ok
    assert r.instances == 1 + 2 + 6 + 19 + 63 + 216
    assert all(r.passed[c] == r.instances for c in CHECKS if c != "determinant")


def test_injected_fault_reported_with_instance():
    r = run_selftest(3, fault="factor-entry")
    assert not r.ok and r.failed == r.instances
    text = r.render()
    assert "entry-bound" in text
    assert "--- instance 0" in text and "\n#\n" in text
    assert text.endswith("result: FAIL\n")


def test_check_instance_counts():
    counts, err = check_instance(parse_board("###\n###"))
    assert err is None
    assert counts == dict.fromkeys(CHECKS, 1)


def test_worker_cap(monkeypatch):
    monkeypatch.setenv("QUADFACTOR_THREADS", "1")
    assert worker_count(8) == 1
    monkeypatch.setenv("QUADFACTOR_THREADS", "x")
    with pytest.raises(ValueError):
        worker_count()


def test_parallel_matches_serial(monkeypatch):
    monkeypatch.delenv("QUADFACTOR_THREADS", raising=False)
    a = run_selftest(6, workers=1).render()
    b = run_selftest(6, workers=2).render()
    assert a == b


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_selftest(2, fault="nope")
    with pytest.raises(ValueError):
        run_selftest(11)
