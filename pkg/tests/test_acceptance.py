"""One PASS/FAIL line per acceptance criterion.

Criterion 6 is soft: its line reports the deviation but does not fail the
run.  It reads and extends the certificate store at ``cache_path()``; a cold
store means certifying all 9077 classes (several minutes on one core).
"""
import time
from fractions import Fraction

from apsquares.ap import ArithProgression, search_aps, special_positions, squares_in_ap
from apsquares.covering import analyse_choice, factor_pair, frak_S, quartic_model, t_to_ap
from apsquares.curves import remark_ap
from apsquares.descent import certify_z_zero
from apsquares.pell import ap_intersection, ej48_family
from apsquares.pipeline import CertificateStore, cache_path, compute_q_table, sieve_stats, verify_table3
from apsquares.subsets import binomial_count, enumerate_classes, primitive_classes


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_q_table(capsys):
    rows, dt = timed(lambda: compute_q_table(11))
    want = {4: 3, 5: 4, 6: 4, 7: 4, 8: 5, 9: 5, 10: 5, 11: 5}
    ok = all((r.q_lower, r.status) == (want[r.N], "proved") for r in rows) and dt < 600
    report(capsys, 1, ok, " ".join(f"Q({r.N})={r.q_lower}" for r in rows) + f", all proved, {dt:.1f}s")
    assert ok


FIRSTCASES = {(0, 1, 2, 3), (0, 1, 3, 4), (0, 1, 4, 5), (0, 2, 3, 5), (0, 1, 5, 6)}


def test_criterion_02_first_cases(capsys):
    def run():
        return {I: certify_z_zero(I) for I in primitive_classes(7, 4)}

    certs, dt = timed(run)
    zero = {I for I, c in certs.items()
            if c.conclusion == "z_zero" and c.rank_upper == 0 and c.torsion == "Z/2+Z/4"}
    others = all((c.rank_lower, c.rank_upper) == (1, 1) for I, c in certs.items() if I not in FIRSTCASES)
    ok = zero == FIRSTCASES and others and dt < 60
    report(capsys, 2, ok, f"{len(zero)} z_zero classes, {len(certs) - 5} others with window (1,1), {dt:.1f}s")
    assert ok


def test_criterion_03_remark_rows(capsys):
    rows = [((0, 1, 2, 4), (120, 49)), ((0, 1, 2, 5), (24, 1)), ((0, 1, 3, 5), (168, 121)),
            ((0, 1, 2, 6), (840, 1)), ((0, 1, 3, 6), (8, 1)), ((0, 2, 3, 6), (280, 529)),
            ((0, 1, 4, 6), (24, 25))]
    got = [remark_ap(I) for I, _ in rows]
    ok = all(ap is not None and (ap.q, ap.a) == qa and ap.squares_at(I) for ap, (I, qa) in zip(got, rows))
    report(capsys, 3, ok, ", ".join(str(a) for a in got))
    assert ok


def test_criterion_04_pentagonal(capsys):
    def run():
        return list(squares_in_ap(24, 1, 10**6).positions), len(squares_in_ap(24, 1, 52))

    (pos, q52), dt = timed(run)
    ok = pos == special_positions("pentagonal", 10**6) and q52 == 12 and dt < 5
    report(capsys, 4, ok, f"{len(pos)} pentagonal positions below 10^6, Q(52;24,1)={q52}, {dt:.2f}s")
    assert ok


def test_criterion_05_counts(capsys):
    def run():
        return (binomial_count(52, 4), binomial_count(52, 5), enumerate_classes(52, 4)[0],
                enumerate_classes(52, 5)[0], enumerate_classes(52, 4, True)[0])

    got, dt = timed(run)
    ok = got == (270725, 2598960, 9077, 117449, 402) and dt < 120
    report(capsys, 5, ok, f"{got}, {dt:.1f}s")
    assert ok


def test_criterion_06_rank_statistics_soft(capsys):
    store = CertificateStore(cache_path())
    st4 = sieve_stats(52, 4, store)
    st5 = sieve_stats(52, 5, store)
    ok4 = st4.rank0 == 199 and len(st4.unresolved) <= 10
    ok5 = st5.survivors == 111338
    hist = " | ".join(f"{r}:{c}" for r, c in sorted(st4.rank_histogram.items()))
    report(capsys, 6, ok4 and ok5,
           f"[soft, reported only] rank-0 certified {st4.rank0} (target 199), open windows "
           f"{len(st4.unresolved)} (target <= 10), histogram {hist}; 5-class survivors {st5.survivors} "
           f"(target 111338; {st5.survivors_translation_only} when 4-subsets match only up to translation)")
    for I in st4.unresolved:
        with capsys.disabled():
            print(f"    open window: {I}")


def test_criterion_07_covering_anchors(capsys):
    fp = factor_pair(quartic_model((0, 1, 2, 4, 7), (1, 4, 7)), 1, 2)
    checks = [
        sorted(frak_S((0, 1, 2, 4, 7), (1, 4, 7), 2, 1).elements) == [1, 2, 3, 6],
        sorted(frak_S((0, 1, 2, 5, 7), (2, 5, 7), 3, 2).elements) == [-10, -5, -2, -1, 1, 2, 5, 10],
        (fp.pretty("+"), fp.pretty("-")) == ("t^2 - 10/3 t + 2", "t^2 - 6 t + 2"),
        t_to_ap((0, 1, 2, 5, 7), (2, 5, 7), Fraction(3)) == ArithProgression(24, 1),
        t_to_ap((0, 1, 2, 5, 7), (2, 5, 7), Fraction(5, 6)) == ArithProgression(24, 1),
        t_to_ap((0, 1, 3, 7, 8), (1, 3, 7), Fraction(4)) == ArithProgression(120, 1),
    ]
    ok = all(checks)
    report(capsys, 7, ok, f"{sum(checks)}/{len(checks)} anchors")
    assert ok


def test_criterion_08_rank0_resolution(capsys):
    d = analyse_choice((0, 1, 4, 7, 8), (1, 4, 7), 2, 1)
    rows = {(r.delta, "".join(r.signs)): sorted(map(str, r.t_values)) for r in d.rows}
    ok = (d.radicand == 1 and rows.get((1, "+-")) == ["1", "inf"]
          and rows.get((-3, "++")) == ["0", "2"] and d.conclusion() == "z_zero")
    report(capsys, 8, ok, f"rows {rows}, conclusion {d.conclusion()}")
    assert ok


def test_criterion_09_witnesses_and_table(capsys):
    def run():
        return search_aps((0, 13, 24, 33, 49), 100), verify_table3()

    (found, rep), dt = timed(run)
    ok = ({ArithProgression(24, 49), ArithProgression(-1, 49)} <= set(found)
          and rep.passed == 16 and dt < 60)
    report(capsys, 9, ok, f"found {', '.join(map(str, found))}; {rep.passed}/16 validations, {dt:.2f}s")
    assert ok


def test_criterion_10_pell(capsys):
    fam = ej48_family(2)
    got, dt = timed(lambda: ap_intersection(1, 1, 3, 1, 10))
    ok = fam == [0, 8, 120, 1680, 23408] and len(got) == 10 and dt < 1
    report(capsys, 10, ok, f"ej48_family(2)={fam}, {len(got)} terms in {dt * 1000:.1f}ms")
    assert ok


def test_criterion_11_property_suites(capsys):
    from apsquares.verify import run_all

    results = run_all()
    failed = [r.name for r in results if not r.ok]
    report(capsys, 11, not failed, f"{len(results) - len(failed)}/{len(results)} checks" +
           (f", failed: {failed}" if failed else ""))
    assert not failed
