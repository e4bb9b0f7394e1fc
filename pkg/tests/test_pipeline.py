import pytest

from apsquares.ap import ArithProgression, count_squares
from apsquares.descent import certify_z_zero
from apsquares.pipeline import (
    CACHE_ENV,
    CertificateStore,
    QTableRow,
    SubsetOracle,
    cache_path,
    compute_q_table,
    sieve_stats,
    verify_table3,
)


def test_store_roundtrip(store_path):
    cert = certify_z_zero((0, 1, 2, 3))
    s = CertificateStore(store_path)
    assert s.put(cert)
    again = CertificateStore(store_path)
    assert again.get((0, 1, 2, 3)) == cert
    assert again.get((3, 4, 5, 6)) == cert  # keyed by class


def test_store_dedup(store_path):
    cert = certify_z_zero((0, 1, 3, 4))
    s = CertificateStore(store_path)
    assert s.put(cert) and not s.put(cert)
    assert len(CertificateStore(store_path)) == 1
    assert store_path.read_text().count("\n") == 1


def test_store_empty_and_corrupt(store_path):
    store_path.write_text("")
    assert len(CertificateStore(store_path)) == 0
    good = certify_z_zero((0, 1, 2, 3)).to_json()
    store_path.write_text(good + "\n{not json\n" + '{"subset": [0, 1]}\n')
    s = CertificateStore(store_path)
    assert len(s) == 1
    assert [n for n, _ in s.errors] == [2, 3]


def test_cache_path_precedence(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "env.jsonl"))
    assert cache_path() == tmp_path / "env.jsonl"
    assert cache_path(str(tmp_path / "x.jsonl")) == tmp_path / "x.jsonl"
    monkeypatch.delenv(CACHE_ENV)
    assert cache_path().name == "certificates.jsonl"


def test_row_invariants():
    with pytest.raises(ValueError):
        QTableRow(5, 4, 3, "proved")
    with pytest.raises(ValueError):
        QTableRow(5, 4, 5, "proved")


def test_q_table_to_11(store_path):
    rows = compute_q_table(11, cache=CertificateStore(store_path))
    assert [(r.N, r.q_lower, r.status) for r in rows] == [
        (4, 3, "proved"), (5, 4, "proved"), (6, 4, "proved"), (7, 4, "proved"),
        (8, 5, "proved"), (9, 5, "proved"), (10, 5, "proved"), (11, 5, "proved"),
    ]
    for a, b in zip(rows, rows[1:]):
        assert b.q_upper <= a.q_upper + 1 and b.q_lower >= a.q_lower
    for r in rows:
        assert all(count_squares(w.q, w.a, r.N) == r.q_lower for w in r.witnesses)
    assert ArithProgression(24, 1) in rows[4].witnesses
    assert {ArithProgression(24, 1), ArithProgression(120, 1), ArithProgression(8, 1)} <= set(rows[7].witnesses)
    # warm cache gives identical rows
    again = compute_q_table(11, cache=CertificateStore(store_path))
    assert [r.to_json() for r in again] == [r.to_json() for r in rows]


def test_oracle_statuses():
    o = SubsetOracle()
    assert o.status((0, 1, 2, 3)) == "dead"
    assert o.status((0, 1, 2, 5)) == "alive"
    assert o.status((0, 1, 2, 3, 7)) == "dead"
    assert o.status((0, 1, 4, 7, 8)) == "dead"  # only via the covering method
    assert o.status((0, 1, 2, 5, 7)) == "alive"


def test_sieve_counts_without_ranks():
    st = sieve_stats(52, 4, ranks=False)
    assert (st.subsets, st.classes, st.symmetric) == (270725, 9077, 402)
    st5 = sieve_stats(52, 5, ranks=False)
    assert (st5.subsets, st5.classes) == (2598960, 117449)


def test_sieve_small_window():
    st = sieve_stats(10, 4)
    assert sum(st.rank_histogram.values()) == st.classes
    assert st.z_zero <= st.rank0


def test_table3():
    rep = verify_table3()
    assert rep.ok and rep.passed == 16
