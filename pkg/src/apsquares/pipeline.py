"""The Q(N) ladder, certificate persistence, class statistics and the table
of 5-subsets carrying four progressions."""
from __future__ import annotations

import json
import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .ap import ArithProgression, best_in_window, search_aps
from .descent import DescentCertificate, certify_z_zero
from .subsets import (
    Subset,
    binomial_count,
    canonical_primitive,
    encode,
    enumerate_classes,
    format_subset,
    is_symmetric,
    make_subset,
)

log = logging.getLogger(__name__)

CACHE_ENV = "AP_SQUARES_CACHE"
DEFAULT_CACHE = Path("~/.cache/apsquares/certificates.jsonl")

# 5-subset records carry no curve data; these fields mark that
SHOW_WITNESSES = 8

NO_CURVE = dict(roots=[], selmer_dim=-1, rank_upper=-1, rank_lower=-1, torsion="n/a")


def cache_path(explicit: Optional[str] = None) -> Path:
    """``--cache`` wins, then ``$AP_SQUARES_CACHE``, then the default."""
    if explicit:
        return Path(explicit).expanduser()
    env = os.environ.get(CACHE_ENV)
    return Path(env).expanduser() if env else DEFAULT_CACHE.expanduser()


class CertificateStore:
    """Append-only JSON-lines store keyed by the canonical subset encoding.

    ``path=None`` keeps everything in memory.  Corrupt lines are logged with
    their line number, kept in ``errors`` and skipped.
    """

    def __init__(self, path: Optional[os.PathLike] = None):
        self.path = Path(path) if path is not None else None
        self.records: dict[int, DescentCertificate] = {}
        self.errors: list[tuple[int, str]] = []
        if self.path is not None and self.path.exists():
            self._load()

    @staticmethod
    def key(I: Iterable[int]) -> int:
        return encode(canonical_primitive(I))

    def _load(self):
        with open(self.path) as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    cert = DescentCertificate.from_json(line)
                    k = self.key(cert.subset)
                except (ValueError, TypeError, KeyError) as exc:
                    self.errors.append((lineno, str(exc)))
                    log.warning("%s:%d: skipping corrupt record (%s)", self.path, lineno, exc)
                    continue
                self.records.setdefault(k, cert)

    def get(self, I: Iterable[int]) -> Optional[DescentCertificate]:
        return self.records.get(self.key(I))

    def put(self, cert: DescentCertificate) -> bool:
        """Store ``cert``; a second record for the same class is ignored."""
        k = self.key(cert.subset)
        if k in self.records:
            return False
        self.records[k] = cert
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                fh.write(cert.to_json() + "\n")
        return True

    def __len__(self):
        return len(self.records)

    def __contains__(self, I) -> bool:
        return self.key(I) in self.records


def _certify(args) -> DescentCertificate:
    I, bound = args
    return certify_z_zero(I, search_bound=bound)


class SubsetOracle:
    """Decides, with memoization, whether a subset carries no progression.

    A 4-subset is dead when its descent certificate says ``z_zero``.  A larger
    subset is dead when some 4-subset is; a 5-subset may also be killed by the
    covering method.  ``status`` returns ``dead``, ``alive`` (a witness with
    ``q > 0`` exists) or ``undecided``.
    """

    def __init__(self, store: Optional[CertificateStore] = None, search_bound: int = 10**4,
                 covering: bool = True, jobs: int = 1):
        self.store = store if store is not None else CertificateStore()
        self.search_bound = search_bound
        self.covering = covering
        self.jobs = max(1, jobs)
        self._memo: dict[Subset, str] = {}
        self.witnesses: dict[Subset, list[ArithProgression]] = {}

    def certificate(self, I: Sequence[int]) -> DescentCertificate:
        I = canonical_primitive(I)
        cert = self.store.get(I)
        if cert is None:
            cert = certify_z_zero(I, search_bound=self.search_bound)
            self.store.put(cert)
        return cert

    def prefetch(self, classes: Iterable[Subset]):
        """Certify the 4-classes missing from the store, ``jobs`` at a time."""
        todo = []
        seen = set()
        for I in classes:
            c = canonical_primitive(I)
            if c not in seen and c not in self.store:
                seen.add(c)
                todo.append(c)
        todo.sort(key=encode)
        if self.jobs == 1 or len(todo) < 2 * self.jobs:
            for c in todo:
                self.certificate(c)
            return
        with ProcessPoolExecutor(self.jobs) as pool:
            for cert in pool.map(_certify, [(c, self.search_bound) for c in todo], chunksize=8):
                self.store.put(cert)

    def dead4(self, I: Sequence[int]) -> bool:
        return self.certificate(I).conclusion == "z_zero"

    def status(self, I: Sequence[int]) -> str:
        c = canonical_primitive(I)
        if c not in self._memo:
            self._memo[c] = self._status(c)
        return self._memo[c]

    def _status(self, I: Subset) -> str:
        k = len(I)
        if k < 4:
            return "alive"
        if k == 4:
            cert = self.certificate(I)
            if cert.conclusion == "z_zero":
                return "dead"
            return "alive" if any(q > 0 for q, _ in cert.witnesses) else "undecided"
        if any(self.dead4(J) for J in combinations(I, 4)):
            return "dead"
        if k > 5:
            if any(self.status(J) == "dead" for J in combinations(I, 5)):
                return "dead"
            return "alive" if self.find_witnesses(I) else "undecided"
        if self.find_witnesses(I):
            return "alive"
        if not self.covering:
            return "undecided"
        return self._covering_status(I)

    def find_witnesses(self, I: Subset) -> list[ArithProgression]:
        if I not in self.witnesses:
            self.witnesses[I] = [w for w in search_aps(I, self.search_bound) if w.q > 0]
        return self.witnesses[I]

    def _covering_status(self, I: Subset) -> str:
        from .covering import resolve_subset

        cert = self.store.get(I)
        if cert is None:
            datum = resolve_subset(I)
            if datum is None:
                conclusion, wit = "inconclusive", []
            else:
                conclusion = datum.conclusion()
                wit = [[p.q, p.a] for p in datum.progressions()]
            cert = DescentCertificate(subset=list(I), witnesses=wit, conclusion=conclusion, **NO_CURVE)
            self.store.put(cert)
        if cert.conclusion == "z_zero":
            return "dead"
        if any(q > 0 for q, _ in cert.witnesses):
            return "alive"
        return "undecided"


# ---------------------------------------------------------------------------
# Q(N)


@dataclass
class QTableRow:
    N: int
    q_lower: int
    q_upper: int
    status: str
    witnesses: list[ArithProgression] = field(default_factory=list)
    undecided: list[Subset] = field(default_factory=list)

    def __post_init__(self):
        if self.q_lower > self.q_upper:
            raise ValueError("q_lower exceeds q_upper")
        if (self.status == "proved") != (self.q_lower == self.q_upper and not self.undecided):
            raise ValueError("status does not match the bounds")

    def to_json(self) -> dict:
        return {
            "N": self.N, "q_lower": self.q_lower, "q_upper": self.q_upper, "status": self.status,
            "witnesses": [[w.q, w.a] for w in self.witnesses],
            "undecided": [list(I) for I in self.undecided],
        }

    def format(self) -> str:
        value = str(self.q_lower) if self.status == "proved" else f"{self.q_lower}..{self.q_upper}"
        shown = self.witnesses[:SHOW_WITNESSES]
        wit = ", ".join(str(w) for w in shown) or "-"
        if len(self.witnesses) > len(shown):
            wit += f" (+{len(self.witnesses) - len(shown)} more)"
        line = f"{f'Q({self.N})':<6} = {value:<6} {self.status:<12} {wit}"
        if self.undecided:
            line += "  undecided: " + " ".join("{" + format_subset(I) + "}" for I in self.undecided)
        return line


def _with_ends(N: int, k: int) -> Iterable[Subset]:
    """k-subsets of ``{0..N-1}`` containing both 0 and ``N-1``."""
    for mid in combinations(range(1, N - 1), k - 2):
        yield (0, *mid, N - 1)


def _with_zero(N: int, k: int) -> Iterable[Subset]:
    for rest in combinations(range(1, N), k - 1):
        yield (0, *rest)


def compute_q_table(maxN: int, search_bound: int = 10**4, cache: Optional[CertificateStore] = None,
                    jobs: int = 1, covering: bool = True,
                    progress: Optional[Callable[[QTableRow], None]] = None) -> list[QTableRow]:
    """Rows ``N = 4..maxN``.

    Translation moves any subset of ``{0..N-1}`` that avoids ``N-1`` into
    ``{0..N-2}``, so each step only has to look at subsets containing 0 and
    ``N-1``; everything else was settled (or listed as undecided) one row up.
    """
    if maxN < 4:
        raise ValueError("maxN >= 4 required")
    oracle = SubsetOracle(cache, search_bound, covering, jobs)
    found: set[ArithProgression] = set()
    rows: list[QTableRow] = []
    prev: Optional[QTableRow] = None
    for N in range(4, maxN + 1):
        fresh = _with_zero if prev is None else _with_ends
        lo, _ = best_in_window(found, N)
        lo = max(lo, 2)  # any two terms can be squares
        # raise the lower bound from witnesses on the new subsets
        while lo < N:
            grew = False
            for I in fresh(N, lo + 1):
                if oracle.status(I) != "dead":
                    for w in oracle.find_witnesses(I):
                        found.add(w)
                        grew = True
            new_lo, _ = best_in_window(found, N)
            if not grew or new_lo == lo:
                break
            lo = new_lo
        # progressions attaining lo that first appear in this window
        if lo >= 4:
            for I in fresh(N, lo):
                if oracle.status(I) != "dead":
                    found.update(oracle.find_witnesses(I))
        k = lo + 1
        undecided = set()
        if k <= N:
            oracle.prefetch(J for I in fresh(N, k) for J in combinations(I, 4))
            for I in fresh(N, k):
                if oracle.status(I) != "dead":
                    undecided.add(canonical_primitive(I))
            if prev is not None and prev.undecided:
                # subsets in the previous window stay open
                if prev.q_lower == lo:
                    undecided.update(prev.undecided)
                else:
                    for I in _with_zero(N - 1, k):
                        if oracle.status(I) != "dead":
                            undecided.add(canonical_primitive(I))
        undecided_list = sorted(undecided, key=encode)
        if undecided_list:
            upper = min(N, (prev.q_upper + 1) if prev else N)
            status = "conditional"
        else:
            upper, status = lo, "proved"
        best = sorted((w for w in found if len(_window_hits(w, N)) == lo),
                      key=lambda w: (w.q, w.a))
        row = QTableRow(N, lo, max(upper, lo), status, best, undecided_list)
        rows.append(row)
        if progress:
            progress(row)
        prev = row
    return rows


def _window_hits(ap: ArithProgression, N: int) -> list[int]:
    return [n for n in range(N) if ap.term(n) >= 0 and math.isqrt(ap.term(n)) ** 2 == ap.term(n)]


def format_q_table(rows: Sequence[QTableRow]) -> str:
    return "\n".join(r.format() for r in rows)


# ---------------------------------------------------------------------------
# class statistics


@dataclass
class SieveStats:
    N: int
    k: int
    subsets: int
    classes: int
    symmetric: int
    rank_histogram: dict[int, int] = field(default_factory=dict)
    rank0: int = 0
    z_zero: int = 0
    unresolved: list[Subset] = field(default_factory=list)
    survivors: int = 0
    survivors_translation_only: int = 0

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["rank_histogram"] = {str(r): c for r, c in sorted(self.rank_histogram.items())}
        d["unresolved"] = [list(I) for I in self.unresolved]
        return d

    def report(self) -> str:
        lines = [f"N={self.N} k={self.k}: {self.subsets} subsets, {self.classes} classes, "
                 f"{self.symmetric} symmetric"]
        if self.k == 4 and self.rank_histogram:
            lines.append("rank upper bound | " + " | ".join(
                f"{r}: {c}" for r, c in sorted(self.rank_histogram.items())))
            lines.append(f"rank 0 certified: {self.rank0} (z_zero: {self.z_zero}); "
                         f"window containing 0 left open: {len(self.unresolved)}")
            lines.extend("  open {" + format_subset(I) + "}" for I in self.unresolved)
        if self.k == 5 and self.survivors:
            lines.append(f"survivors of the rank-0 sieve: {self.survivors} "
                         f"(matching 4-subsets up to translation only: {self.survivors_translation_only})")
        return "\n".join(lines)


def _translate0(J: Sequence[int]) -> Subset:
    return tuple(j - J[0] for j in J)


def sieve_stats(N: int = 52, k: int = 4, cache: Optional[CertificateStore] = None, jobs: int = 1,
                ranks: bool = True, progress: Optional[Callable[[int, int], None]] = None) -> SieveStats:
    """Counts of k-subsets of ``{0..N-1}`` and their classes; with ``ranks``,
    the descent statistics of the 4-classes (``k = 4``) or the number of
    5-classes left after removing those containing a ``z_zero`` 4-class."""
    if k not in (4, 5):
        raise ValueError("k must be 4 or 5")
    count, classes = enumerate_classes(N, k)
    sym = sum(1 for I in classes if is_symmetric(I))
    st = SieveStats(N, k, binomial_count(N, k), count, sym)
    if not ranks:
        return st
    oracle = SubsetOracle(cache, jobs=jobs)
    _, four = (count, classes) if k == 4 else enumerate_classes(N, 4)
    todo = [I for I in four if I not in oracle.store]
    for i in range(0, len(todo), 256):
        oracle.prefetch(todo[i:i + 256])
        if progress:
            progress(min(i + 256, len(todo)), len(todo))
    certs = {I: oracle.certificate(I) for I in four}
    if k == 4:
        hist = Counter(c.rank_upper for c in certs.values())
        st.rank_histogram = dict(sorted(hist.items()))
        st.rank0 = hist.get(0, 0)
        st.z_zero = sum(1 for c in certs.values() if c.conclusion == "z_zero")
        st.unresolved = [I for I, c in certs.items() if c.rank_lower == 0 < c.rank_upper]
        return st
    dead = {I for I, c in certs.items() if c.conclusion == "z_zero"}
    st.survivors = sum(1 for I in classes
                       if not any(canonical_primitive(J) in dead for J in combinations(I, 4)))
    st.survivors_translation_only = sum(1 for I in classes
                                        if not any(_translate0(J) in dead for J in combinations(I, 4)))
    return st


# ---------------------------------------------------------------------------
# 5-subsets with four progressions

TABLE3 = (
    ((0, 2, 13, 23, 2233), ((240, 1369), (72, 25), (120, 3481), (168, 625))),
    ((0, 5, 19, 70, 1020), ((72, 1), (120, 2209), (552, 961), (24, 169))),
    ((0, 5, 33, 70, 1183), ((1344, 169), (72, 1849), (816, 961), (24, 169))),
    ((0, 17, 52, 147, 290), ((120, 1681), (96, 49), (24, 961), (264, 2401))),
)


@dataclass
class Table3Report:
    checks: list[tuple[Subset, ArithProgression, bool]]

    @property
    def passed(self) -> int:
        return sum(ok for _, _, ok in self.checks)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.checks)

    def format(self) -> str:
        return "\n".join(
            f"{'ok  ' if ok else 'FAIL'} {{{format_subset(I)}}} {ap}" for I, ap, ok in self.checks
        ) + f"\n{self.passed}/{len(self.checks)} validations"


def verify_table3() -> Table3Report:
    """Check every listed progression squares at all five positions and that
    each row has four distinct ones; raises on any failure."""
    checks = []
    for I, aps in TABLE3:
        I = make_subset(I)
        progs = [ArithProgression.normalized(q, a) for q, a in aps]
        for ap in progs:
            checks.append((I, ap, ap.squares_at(I)))
        if len(set(progs)) < 4:
            raise AssertionError(f"fewer than four progressions for {I}")
    rep = Table3Report(checks)
    if not rep.ok:
        raise AssertionError("progression validation failed:\n" + rep.format())
    return rep


def stats_json(st: SieveStats) -> str:
    return json.dumps(st.to_json(), sort_keys=True)
