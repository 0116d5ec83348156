"""Per-account, per-month and per-gender statistics over scored documents.

Partial results are kept as counts and exact rational sums, so
aggregating shards and merging them gives exactly the same report as a
single pass, whatever the split or order.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional

from .corpus import Account, Gender
from .sentiment import CLASSES, Polarity

__all__ = [
    "AggregateReport",
    "Aggregator",
    "Month",
    "PolarityCounts",
    "ScoredDoc",
    "dominant_monthly_polarity",
    "dominant_polarity",
    "gender_mean_counts",
    "mean_grade_per_account",
    "month_of",
    "monthly_mean_grade",
    "polarity_counts",
]

log = logging.getLogger(__name__)


class Month(NamedTuple):
    year: int
    month: int

    def __str__(self):
        return f"{self.year:04d}-{self.month:02d}"


def month_of(ts: datetime, tz_offset_minutes: int = 0) -> Month:
    """Calendar month of ``ts`` in UTC shifted by ``tz_offset_minutes``."""
    local = ts.astimezone(timezone.utc) + timedelta(minutes=tz_offset_minutes)
    return Month(local.year, local.month)


@dataclass(frozen=True)
class ScoredDoc:
    doc_id: str
    account_id: str
    month: Month
    grade: Optional[float]  # None: unsorable
    polarity: Polarity


class PolarityCounts(NamedTuple):
    n_pos: int = 0
    n_neg: int = 0
    n_neu: int = 0

    @property
    def total(self) -> int:
        return self.n_pos + self.n_neg + self.n_neu


def _as_counts(counter: Mapping[Polarity, int]) -> PolarityCounts:
    return PolarityCounts(*(counter.get(c, 0) for c in CLASSES))


def dominant_polarity(counts: PolarityCounts) -> Polarity:
    """Modal class; any tie for the mode is neutral."""
    values = dict(zip(CLASSES, counts))
    top = max(values.values())
    modes = [c for c, n in values.items() if n == top]
    return modes[0] if len(modes) == 1 else Polarity.NEUTRAL


@dataclass
class _Mean:
    total: Fraction = Fraction(0)
    count: int = 0

    def add(self, value: float):
        self.total += Fraction(value)
        self.count += 1

    def merge(self, other: "_Mean"):
        self.total += other.total
        self.count += other.count

    @property
    def value(self) -> float:
        return float(self.total / self.count)


@dataclass(frozen=True)
class AggregateReport:
    mean_grade: dict[str, float]
    graded_count: dict[str, int]
    monthly_mean_grade: dict[tuple[str, Month], float]
    monthly_graded_count: dict[tuple[str, Month], int]
    polarity_counts: dict[str, PolarityCounts]
    gender_counts: dict[Gender, tuple[float, float, float]]
    gender_accounts: dict[Gender, int]
    monthly_polarity_counts: dict[tuple[str, Month], PolarityCounts]
    monthly_dominant: dict[tuple[str, Month], Polarity]


@dataclass
class Aggregator:
    """Mergeable accumulator of :class:`ScoredDoc` values."""

    grades: dict = field(default_factory=lambda: defaultdict(_Mean))
    monthly_grades: dict = field(default_factory=lambda: defaultdict(_Mean))
    polarities: dict = field(default_factory=lambda: defaultdict(Counter))
    monthly_polarities: dict = field(default_factory=lambda: defaultdict(Counter))

    @classmethod
    def of(cls, scored: Iterable[ScoredDoc]) -> "Aggregator":
        agg = cls()
        for s in scored:
            agg.add(s)
        return agg

    def add(self, s: ScoredDoc) -> None:
        if s.grade is not None:
            self.grades[s.account_id].add(s.grade)
            self.monthly_grades[(s.account_id, s.month)].add(s.grade)
        self.polarities[s.account_id][s.polarity] += 1
        self.monthly_polarities[(s.account_id, s.month)][s.polarity] += 1

    def merge(self, other: "Aggregator") -> "Aggregator":
        """New aggregator holding both operands; neither is modified."""
        out = Aggregator()
        for src in (self, other):
            for k, m in src.grades.items():
                out.grades[k].merge(m)
            for k, m in src.monthly_grades.items():
                out.monthly_grades[k].merge(m)
            for k, c in src.polarities.items():
                out.polarities[k].update(c)
            for k, c in src.monthly_polarities.items():
                out.monthly_polarities[k].update(c)
        return out

    def mean_grade(self) -> dict[str, float]:
        for acc in sorted(set(self.polarities) - set(self.grades)):
            log.warning("account %s has no gradable documents; omitted from mean grades", acc)
        return {k: m.value for k, m in sorted(self.grades.items())}

    def monthly_mean_grade(self) -> dict[tuple[str, Month], float]:
        return {k: m.value for k, m in sorted(self.monthly_grades.items())}

    def polarity_counts(self) -> dict[str, PolarityCounts]:
        return {k: _as_counts(c) for k, c in sorted(self.polarities.items())}

    def monthly_polarity_counts(self) -> dict[tuple[str, Month], PolarityCounts]:
        return {k: _as_counts(c) for k, c in sorted(self.monthly_polarities.items())}

    def report(self, accounts: Iterable[Account]) -> AggregateReport:
        counts = self.polarity_counts()
        monthly = self.monthly_polarity_counts()
        gender_of = {a.id: a.gender for a in accounts}
        return AggregateReport(
            mean_grade=self.mean_grade(),
            graded_count={k: m.count for k, m in sorted(self.grades.items())},
            monthly_mean_grade=self.monthly_mean_grade(),
            monthly_graded_count={k: m.count for k, m in sorted(self.monthly_grades.items())},
            polarity_counts=counts,
            gender_counts=gender_mean_counts(gender_of, counts),
            gender_accounts=dict(Counter(gender_of[a] for a in counts)),
            monthly_polarity_counts=monthly,
            monthly_dominant={k: dominant_polarity(c) for k, c in monthly.items()},
        )


def mean_grade_per_account(scored: Iterable[ScoredDoc]) -> dict[str, float]:
    return Aggregator.of(scored).mean_grade()


def monthly_mean_grade(scored: Iterable[ScoredDoc]) -> dict[tuple[str, Month], float]:
    return Aggregator.of(scored).monthly_mean_grade()


def polarity_counts(scored: Iterable[ScoredDoc]) -> dict[str, PolarityCounts]:
    return Aggregator.of(scored).polarity_counts()


def dominant_monthly_polarity(scored: Iterable[ScoredDoc]) -> dict[tuple[str, Month], Polarity]:
    return {k: dominant_polarity(c) for k, c in Aggregator.of(scored).monthly_polarity_counts().items()}


_GENDER_ORDER = (Gender.MALE, Gender.FEMALE, Gender.UNSPECIFIED)


def gender_mean_counts(
    accounts: Iterable[Account] | Mapping[str, Gender],
    counts: Mapping[str, PolarityCounts],
) -> dict[Gender, tuple[float, float, float]]:
    """Mean positive/negative/neutral counts across each gender's accounts.

    Only accounts present in ``counts`` take part; genders with no such
    account are absent from the result.
    """
    gender_of = dict(accounts) if isinstance(accounts, Mapping) else {a.id: a.gender for a in accounts}
    groups: dict[Gender, list[PolarityCounts]] = defaultdict(list)
    for acc_id, c in counts.items():
        if acc_id not in gender_of:
            raise ValueError(f"account {acc_id!r} has counts but no known gender")
        groups[gender_of[acc_id]].append(PolarityCounts(*c))
    return {
        g: tuple(float(Fraction(sum(col)) / len(groups[g])) for col in zip(*groups[g]))
        for g in _GENDER_ORDER
        if g in groups
    }
