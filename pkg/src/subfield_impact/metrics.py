"""Citation distributions, impact factors and dispersion statistics."""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EmptyGroup, EmptyList, InvalidSelector, UndefinedCV, UndefinedIF
from .model import Corpus, GroupSelector, YearRange, group_positions

IF_WINDOW = 2


@dataclass(frozen=True, eq=False)
class CitationDistribution:
    """Histogram of per-paper citation counts for one group.

    ``counts[c]`` is the number of papers with exactly ``c`` citations; the
    array always ends on a nonzero bin.
    """

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 1 or (counts < 0).any():
            raise ValueError("histogram must be a 1-d array of nonnegative counts")
        nz = np.flatnonzero(counts)
        counts = counts[: nz[-1] + 1].copy() if nz.size else np.zeros(0, dtype=np.int64)
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_citations(cls, citations: Iterable[int]) -> "CitationDistribution":
        c = np.asarray(list(citations) if not isinstance(citations, np.ndarray) else citations, dtype=np.int64)
        return cls(np.bincount(c) if c.size else np.zeros(0, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, CitationDistribution):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    __hash__ = None

    @property
    def histogram(self) -> dict[int, int]:
        return {int(c): int(n) for c, n in enumerate(self.counts) if n}

    @property
    def n_papers(self) -> int:
        return int(self.counts.sum())

    @property
    def total_citations(self) -> int:
        return int(np.dot(np.arange(self.counts.shape[0], dtype=np.int64), self.counts))

    @property
    def mean_citations(self) -> float:
        n = self.n_papers
        return self.total_citations / n if n else 0.0

    @property
    def f0(self) -> float:
        n = self.n_papers
        return int(self.counts[0]) / n if n and self.counts.size else 0.0

    def pmf(self) -> np.ndarray:
        """p(c): fraction of papers with exactly c citations."""
        return self.counts / self.n_papers

    def survival(self) -> np.ndarray:
        """P(c): fraction of papers with more than c citations."""
        n = self.n_papers
        return (n - np.cumsum(self.counts)) / n


@dataclass(frozen=True)
class ImpactFactorPoint:
    year: int
    n_papers_window: int
    n_citations: int

    @property
    def value(self) -> float:
        return self.n_citations / self.n_papers_window


@dataclass(frozen=True)
class Dispersion:
    mean: float
    std: float
    cv: float


def _positions(corpus: Corpus, group) -> np.ndarray:
    if isinstance(group, np.ndarray):
        return group.astype(np.int64, copy=False)
    return corpus.positions(group)


def distribution_at(corpus: Corpus, positions: np.ndarray, citing_years: YearRange) -> CitationDistribution:
    """Like :func:`citation_distribution` but for paper positions."""
    if positions.shape[0] == 0:
        raise EmptyGroup("cannot build a citation distribution for an empty group")
    counts = corpus.incoming_counts(citing_years[0], citing_years[1])[positions]
    return CitationDistribution(np.bincount(counts))


def citation_distribution(corpus: Corpus, group, citing_years) -> CitationDistribution:
    """Histogram of how many distinct papers, published within ``citing_years``,
    cite each paper of ``group`` (an iterable of ids or an array of positions)."""
    citing_years = YearRange.checked(*citing_years)
    return distribution_at(corpus, _positions(corpus, group), citing_years)


def if_window_positions(corpus: Corpus, sel: GroupSelector, year: int, window: int = IF_WINDOW) -> np.ndarray:
    """Papers of ``sel`` published in the ``window`` years before ``year``."""
    return group_positions(corpus, sel.with_years(year - window, year - 1))


def impact_factor(corpus: Corpus, sel: GroupSelector, year: int, window: int = IF_WINDOW) -> ImpactFactorPoint:
    """Citations received during ``year`` by the group's papers from the
    ``window`` preceding years, divided by the number of those papers.

    Citations are counted from every paper in the corpus. Raises
    :class:`UndefinedIF` when the group has no papers in the window.
    """
    if sel.pub_years is not None:
        raise InvalidSelector("impact_factor fixes its own publication window; pass a selector without years")
    if window < 1:
        raise InvalidSelector("impact factor window must be at least one year")
    members = if_window_positions(corpus, sel, year, window)
    if members.shape[0] == 0:
        raise UndefinedIF(f"no papers of {sel} published in {year - window}..{year - 1}")
    counts = corpus.incoming_counts(year, year)
    n_cit = int(counts[members].sum())
    return ImpactFactorPoint(year=year, n_papers_window=int(members.shape[0]), n_citations=n_cit)


def dispersion(values: Sequence[float]) -> Dispersion:
    """Mean, population standard deviation and coefficient of variation."""
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise EmptyList("dispersion of an empty list")
    mean = float(x.mean())
    std = float(np.sqrt(np.mean((x - mean) ** 2)))
    if mean == 0.0:
        raise UndefinedCV("coefficient of variation is undefined for zero mean")
    return Dispersion(mean, std, std / mean)


def subfield_totals(corpus: Corpus, members: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per subfield code: (paper count, sum of ``values``) over ``members``.

    Multi-subfield papers count once in each of their subfields.
    """
    n_sub = len(corpus.subfields)
    slots, codes = corpus.paper_subfield_codes(members)
    n = np.bincount(codes, minlength=n_sub).astype(np.int64)
    sums = kernels.group_sums(values, members[slots], codes, n_sub)
    return n, sums

