"""Enumeration of log del Pezzo and rank-<=2 asymptotically log del Pezzo pairs.

The enumerators are filter-driven: candidate boundaries are generated
from the admissible component classes within the nef search bounds
(sum of Z-coefficients <= 2, sum of F-coefficients <= n+2), and the
only acceptance test is the relevant positivity predicate.  The
built-in family tables are used solely to *name* the survivors; a
survivor missing from the table is an inconsistency and raises.

F_0 carries the ruling swap (a, b) <-> (b, a); candidates are
deduplicated up to boundary reordering and this swap, and matched to
the families phrased in (p, q)-curve language.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .angles import is_aldp, is_log_dp, is_strongly_aldp
from .geometry import hirzebruch, projective_plane
from .pairs import LogPair, make_pair

LOG_DP = "LogDP"
STRONG = "StronglyALdP"
NOT_STRONG = "ALdPNotStrong"


@dataclass(frozen=True)
class FamilyLabel:
    label: str  # template, e.g. "ALdP.3.n" or "II.4A" or "Maeda.v"
    n: Optional[int] = None

    @property
    def text(self) -> str:
        if self.label.endswith(".n") and self.n is not None:
            return self.label[:-1] + str(self.n)
        return self.label


@dataclass(frozen=True)
class CandidatePair:
    surface: str  # "P2" or "F<n>"
    n: Optional[int]  # None for the plane
    classes: tuple  # degree tuple on P2, (a, b) tuples on F_n


def build_pair(c: CandidatePair) -> LogPair:
    labels = [f"C{i + 1}" for i in range(len(c.classes))]
    if c.n is None:
        surface = projective_plane()
        boundary = [(lab, (d,)) for lab, d in zip(labels, c.classes)]
    else:
        surface = hirzebruch(c.n)
        boundary = [(lab, ab) for lab, ab in zip(labels, c.classes)]
    return make_pair(surface, boundary)


# ---------------------------------------------------------------------------
# Candidate generation


def component_classes(n: int, max_a: int = 2, max_b: Optional[int] = None) -> list[tuple[int, int]]:
    """Classes of smooth irreducible curves usable as boundary components.

    Z_n and the fiber class, plus a >= 1 with b >= n*a; on F_0 the
    degenerate multiples of a ruling (a >= 2 with b = 0, and swaps) carry
    no irreducible member and are excluded.
    """
    if max_b is None:
        max_b = n + 2
    out = [(1, 0), (0, 1)]
    for a in range(1, max_a + 1):
        lo = max(n * a, 1)
        for b in range(lo, max_b + 1):
            if (a, b) != (1, 0):
                out.append((a, b))
    return sorted(set(out))


def candidate_multisets(
    n: int, max_sum_a: int = 2, max_sum_b: Optional[int] = None, max_a: int = 2
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Sorted multisets of component classes within the coefficient-sum box.

    A class of negative self-intersection (Z_n for n >= 1) has a unique
    member and appears at most once.
    """
    if max_sum_b is None:
        max_sum_b = n + 2
    alphabet = component_classes(n, max_a=max_a, max_b=max_sum_b)
    acc: list[tuple[int, int]] = []

    def rec(start: int, sa: int, sb: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if acc:
            yield tuple(acc)
        for idx in range(start, len(alphabet)):
            a, b = alphabet[idx]
            if sa + a > max_sum_a or sb + b > max_sum_b:
                continue
            acc.append((a, b))
            nxt = idx + 1 if (n >= 1 and (a, b) == (1, 0)) else idx
            yield from rec(nxt, sa + a, sb + b)
            acc.pop()

    yield from rec(0, 0, 0)


def swap_canonical(n: int, classes: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    """Multiset key, minimized over the F_0 ruling swap when n = 0."""
    key = tuple(sorted(classes))
    if n != 0:
        return key
    swapped = tuple(sorted((b, a) for a, b in classes))
    return min(key, swapped)


def p2_degree_multisets(max_total: int = 3) -> Iterator[tuple[int, ...]]:
    for total in range(1, max_total + 1):
        for r in range(1, total + 1):
            for degs in itertools.combinations_with_replacement(range(1, total + 1), r):
                if sum(degs) == total:
                    yield degs


# ---------------------------------------------------------------------------
# Family tables (names and conventional component order)

_P2_RANK2 = [
    ("I.1A", (3,)),
    ("I.1B", (2,)),
    ("I.1C", (1,)),
    ("II.1A", (2, 1)),
    ("II.1B", (1, 1)),
    ("III.1", (1, 1, 1)),
]

_P2_MAEDA = [
    ("Maeda.i", (1,)),
    ("Maeda.ii", (1, 1)),
    ("Maeda.iii", (2,)),
]


def _rank2_rows(n: int) -> list[tuple[str, Optional[int], tuple[tuple[int, int], ...]]]:
    rows = [
        ("I.2.n", n, ((1, 0),)),
        ("II.2A.n", n, ((1, 0), (1, n))),
        ("II.2B.n", n, ((1, 0), (1, n + 1))),
        ("II.2C.n", n, ((1, 0), (0, 1))),
        ("III.3.n", n, ((1, 0), (0, 1), (1, n))),
    ]
    if n >= 1:
        rows += [
            ("ALdP.1.n", n, ((1, 0), (1, n + 2))),
            ("ALdP.2.n", n, ((1, 0), (1, n + 1), (0, 1))),
            ("ALdP.3.n", n, ((1, 0), (0, 1), (0, 1))),
            ("ALdP.4.n", n, ((1, 0), (0, 1), (0, 1), (1, n))),
        ]
    if n == 0:
        rows += [
            ("I.4A", None, ((2, 2),)),
            ("I.4B", None, ((2, 1),)),
            ("I.4C", None, ((1, 1),)),
            ("II.4A", None, ((1, 1), (1, 1))),
            ("II.4B", None, ((2, 1), (0, 1))),
            ("III.2", None, ((1, 1), (0, 1), (1, 0))),
            ("IV", None, ((1, 0), (1, 0), (0, 1), (0, 1))),
        ]
    if n == 1:
        rows += [
            ("I.3A", None, ((2, 2),)),
            ("I.3B", None, ((1, 1),)),
            ("I.5.1", None, ((2, 3),)),
            ("I.6B.1", None, ((1, 2),)),
            ("I.6C.1", None, ((0, 1),)),
            ("II.3", None, ((1, 1), (1, 1))),
            ("II.5A.1", None, ((2, 2), (0, 1))),
            ("II.5A.1", None, ((1, 2), (1, 1))),
            ("II.5B.1", None, ((1, 1), (0, 1))),
            ("III.4.1", None, ((0, 1), (1, 1), (1, 1))),
        ]
    return rows


def _maeda_rows(n: int) -> list[tuple[str, Optional[int], tuple[tuple[int, int], ...]]]:
    rows = [
        ("Maeda.iv", n, ((1, 0),)),
        ("Maeda.v", n, ((1, 0), (0, 1))),
    ]
    if n == 1:
        rows.append(("Maeda.vi", None, ((1, 1),)))
    if n == 0:
        rows.append(("Maeda.vii", None, ((1, 1),)))
    return rows


def _table(n: int, rows) -> dict:
    out = {}
    for label, label_n, presentation in rows:
        key = swap_canonical(n, presentation)
        if key in out:
            raise AssertionError(f"family table collision at n={n}: {key}")
        out[key] = (FamilyLabel(label, label_n), presentation)
    return out


def match_label(c: CandidatePair) -> FamilyLabel:
    """The unique family containing an asymptotically log del Pezzo candidate."""
    label, _ = _match(c)
    return label


def _match(c: CandidatePair) -> tuple[FamilyLabel, tuple]:
    if c.n is None:
        key = tuple(sorted(c.classes))
        for label, presentation in _P2_RANK2:
            if tuple(sorted(presentation)) == key:
                return FamilyLabel(label), presentation
        raise LookupError(f"no rank-2 family matches P2 boundary {c.classes}")
    table = _table(c.n, _rank2_rows(c.n))
    key = swap_canonical(c.n, c.classes)
    if key not in table:
        raise LookupError(f"no rank-2 family matches F_{c.n} boundary {c.classes}")
    return table[key]


# ---------------------------------------------------------------------------
# Enumerators


def _strength(p: LogPair) -> str:
    if is_log_dp(p) is True:
        return LOG_DP
    return STRONG if is_strongly_aldp(p) is True else NOT_STRONG


def enumerate_rank2(n_max: int = 12) -> list[tuple[CandidatePair, FamilyLabel, str]]:
    """All asymptotically log del Pezzo boundaries on the plane and on F_n,
    n <= n_max, each labelled with its family and positivity strength."""
    out = []
    for degs in sorted(p2_degree_multisets()):
        c = CandidatePair("P2", None, degs)
        if is_aldp(build_pair(c)) is not True:
            continue
        label, presentation = _match(c)
        survivor = CandidatePair("P2", None, presentation)
        out.append((survivor, label, _strength(build_pair(survivor))))
    for n in range(n_max + 1):
        table = _table(n, _rank2_rows(n))
        seen = set()
        rows = []
        for ms in candidate_multisets(n):
            key = swap_canonical(n, ms)
            if key in seen:
                continue
            seen.add(key)
            probe = CandidatePair(f"F{n}", n, key)
            if is_aldp(build_pair(probe)) is not True:
                continue
            if key not in table:
                raise LookupError(f"no rank-2 family matches F_{n} boundary {key}")
            label, presentation = table[key]
            survivor = CandidatePair(f"F{n}", n, presentation)
            rows.append((survivor, label, _strength(build_pair(survivor))))
        rows.sort(key=lambda row: (row[1].text, row[0].classes))
        out.extend(rows)
    return out


def enumerate_maeda(n_max: int = 12) -> list[tuple[CandidatePair, FamilyLabel]]:
    """All log del Pezzo boundaries on the plane and on F_n, n <= n_max."""
    out = []
    for degs in sorted(p2_degree_multisets()):
        c = CandidatePair("P2", None, degs)
        if is_log_dp(build_pair(c)) is not True:
            continue
        key = tuple(sorted(degs))
        for label, presentation in _P2_MAEDA:
            if tuple(sorted(presentation)) == key:
                out.append((CandidatePair("P2", None, presentation), FamilyLabel(label)))
                break
        else:
            raise LookupError(f"no Maeda family matches P2 boundary {degs}")
    for n in range(n_max + 1):
        table = _table(n, _maeda_rows(n))
        seen = set()
        rows = []
        for ms in candidate_multisets(n):
            key = swap_canonical(n, ms)
            if key in seen:
                continue
            seen.add(key)
            if is_log_dp(build_pair(CandidatePair(f"F{n}", n, key))) is not True:
                continue
            if key not in table:
                raise LookupError(f"no Maeda family matches F_{n} boundary {key}")
            label, presentation = table[key]
            rows.append((CandidatePair(f"F{n}", n, presentation), label))
        rows.sort(key=lambda row: (row[1].text, row[0].classes))
        out.extend(rows)
    return out
