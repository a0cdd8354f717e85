"""Journal and subfield analyses over yearly windows.

Two windows are in play for an analysis year ``y``:

* relevance window: the ``window_years`` years ending at ``y``; a subfield is
  relevant in a journal when it has at least ``min_papers`` papers there.
* impact window: the ``if_window_years`` years before ``y``; impact factors
  and success indexes use papers published then and citations made in ``y``.
"""
from __future__ import annotations

import statistics
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .diversity import WeightMode, WeightVector, true_diversity
from .errors import EmptyWindow, InsufficientGroups, InvalidConfig, InvalidWeights, UndefinedIF
from .metrics import (
    CitationDistribution,
    ImpactFactorPoint,
    distribution_at,
    if_window_positions,
    impact_factor,
    subfield_totals,
)
from .model import Corpus, GroupSelector, YearRange
from .success import Orientation, SuccessResult, compare

Group = tuple[str, str]  # (journal, subfield key)


@dataclass(frozen=True)
class RelevanceConfig:
    min_papers: int = 50
    window_years: int = 2
    if_window_years: int = 2

    def __post_init__(self):
        if self.min_papers < 1:
            raise InvalidConfig("min_papers must be at least 1")
        if self.window_years < 1 or self.if_window_years < 1:
            raise InvalidConfig("windows must span at least one year")


def _map_years(fn: Callable, years: Iterable[int], threads: int = 1) -> list:
    years = list(years)
    if threads <= 1 or len(years) < 2:
        return [fn(y) for y in years]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, years))


def _years(years) -> range:
    return YearRange.checked(*years).years()


# relevance ---------------------------------------------------------------------

def relevance_window_totals(corpus: Corpus, journal: str, year: int, cfg: RelevanceConfig):
    """Relevant subfields of ``journal`` at ``year`` with their relevance-window
    paper counts and the citations those papers receive during ``year``.

    Returns ``(keys, n_papers, n_citations)``; keys ascending.
    """
    members = corpus.journal_year_members(journal, year - cfg.window_years + 1, year)
    n, cites = subfield_totals(corpus, members, corpus.incoming_counts(year, year))
    codes = np.flatnonzero(n >= cfg.min_papers)
    keys = [corpus.subfields[c] for c in codes]
    return keys, n[codes], cites[codes]


def relevant_subfields(corpus: Corpus, journal: str, year: int, cfg: RelevanceConfig | None = None) -> tuple[str, ...]:
    """Subfields with at least ``cfg.min_papers`` papers of ``journal`` in the
    relevance window ending at ``year``, ascending."""
    return tuple(relevance_window_totals(corpus, journal, year, cfg or RelevanceConfig())[0])


def observed_subfields(corpus: Corpus, journal: str, year: int, cfg: RelevanceConfig | None = None) -> tuple[str, ...]:
    """Subfields with any paper of ``journal`` in the relevance window."""
    return relevant_subfields(corpus, journal, year, RelevanceConfig(1, (cfg or RelevanceConfig()).window_years))


# impact factors ---------------------------------------------------------------------

def _subfield_ifs(corpus: Corpus, journal: str, year: int, cfg: RelevanceConfig) -> dict[str, ImpactFactorPoint]:
    keys = relevant_subfields(corpus, journal, year, cfg)
    if not keys:
        return {}
    members = corpus.journal_year_members(journal, year - cfg.if_window_years, year - 1)
    n, cites = subfield_totals(corpus, members, corpus.incoming_counts(year, year))
    out = {}
    for key in keys:
        code = corpus.subfield_code(key)
        if n[code] > 0:
            out[key] = ImpactFactorPoint(year, int(n[code]), int(cites[code]))
    return out


def subfield_if_series(corpus: Corpus, journal: str, years, cfg: RelevanceConfig | None = None,
                       threads: int = 1) -> dict[int, dict[str, ImpactFactorPoint]]:
    """Yearly impact factor of each relevant subfield of ``journal``.

    Subfields without papers in the impact window are left out of that year.
    """
    cfg = cfg or RelevanceConfig()
    ys = _years(years)
    rows = _map_years(lambda y: _subfield_ifs(corpus, journal, y, cfg), ys, threads)
    return dict(zip(ys, rows))


@dataclass(frozen=True)
class DispersionRow:
    year: int
    n_subfields: int
    mean: float
    std: float | None
    cv: float | None
    journal_if: float | None
    n_subfield_papers: int
    n_journal_papers: int


def _dispersion_row(corpus: Corpus, journal: str, year: int, cfg: RelevanceConfig) -> DispersionRow | None:
    points = _subfield_ifs(corpus, journal, year, cfg)
    if not points:
        return None
    values = np.array([p.value for p in points.values()])
    mean = float(values.mean())
    std = cv = None
    if values.size >= 2:
        std = float(np.sqrt(np.mean((values - mean) ** 2)))
        cv = std / mean if mean > 0 else None
    try:
        jp = impact_factor(corpus, GroupSelector(journal=journal), year, cfg.if_window_years)
        journal_if, n_journal = jp.value, jp.n_papers_window
    except UndefinedIF:
        journal_if, n_journal = None, 0
    n_sub = len(np.unique(np.concatenate([
        if_window_positions(corpus, GroupSelector(journal, k), year, cfg.if_window_years) for k in points])))
    return DispersionRow(year, len(points), mean, std, cv, journal_if, n_sub, n_journal)


def subfield_if_dispersion(corpus: Corpus, journal: str, years, cfg: RelevanceConfig | None = None,
                           threads: int = 1) -> dict[int, DispersionRow]:
    """Mean, population std and cv of the relevant subfields' impact factors,
    next to the whole-journal impact factor.

    Years without any relevant subfield impact factor are absent; years with a
    single one carry the mean only.
    """
    cfg = cfg or RelevanceConfig()
    ys = _years(years)
    rows = _map_years(lambda y: _dispersion_row(corpus, journal, y, cfg), ys, threads)
    return {y: r for y, r in zip(ys, rows) if r is not None}


# success-index comparisons ------------------------------------------------------------

def group_distribution(corpus: Corpus, group: Group, year: int, cfg: RelevanceConfig) -> CitationDistribution:
    """Citations made in ``year`` to the group's impact-window papers."""
    journal, key = group
    members = if_window_positions(corpus, GroupSelector(journal, key), year, cfg.if_window_years)
    return distribution_at(corpus, members, YearRange(year, year))


@dataclass(frozen=True, eq=False)
class PairwiseMatrix:
    """Oriented-max success index between every considered pair of groups.

    ``values[i, j] == values[j, i]``; cells not compared (the diagonal, and
    same-journal pairs of a cross-journal matrix) hold NaN. ``winner[i, j]`` is
    the index of the group that came out ahead, or -1 on an exact tie.
    """

    year: int
    labels: tuple[Group, ...]
    values: np.ndarray
    winner: np.ndarray
    median: float
    max: float
    argmax: tuple[Group, Group]

    def cells(self):
        """Compared pairs as ``(i, j, value, winner)`` with ``i < j``."""
        k = len(self.labels)
        for i in range(k):
            for j in range(i + 1, k):
                if not np.isnan(self.values[i, j]):
                    yield i, j, float(self.values[i, j]), int(self.winner[i, j])

    def orientation(self, i: int, j: int) -> Orientation:
        w = self.winner[i, j]
        if w < 0:
            return Orientation.NONE
        return Orientation.A_OVER_B if w == i else Orientation.B_OVER_A


def pairwise_matrix(corpus: Corpus, groups: Sequence[Group], year: int, cfg: RelevanceConfig | None = None,
                    cross_only: bool = False) -> PairwiseMatrix:
    """Compare every pair of ``groups`` with the exact success index.

    With ``cross_only`` only pairs from different journals are compared.
    """
    cfg = cfg or RelevanceConfig()
    groups = [(str(j), str(k)) for j, k in groups]
    if len(groups) < 2:
        raise InsufficientGroups(f"need at least two groups to compare, got {len(groups)}")
    dists = [group_distribution(corpus, g, year, cfg) for g in groups]
    k = len(groups)
    values = np.full((k, k), np.nan)
    winner = np.full((k, k), -1, dtype=np.int64)
    best, best_pair = -1.0, None
    cell_values = []
    for i in range(k):
        for j in range(i + 1, k):
            if cross_only and groups[i][0] == groups[j][0]:
                continue
            res, orient = compare(dists[i], dists[j])
            w = i if orient is Orientation.A_OVER_B else j if orient is Orientation.B_OVER_A else -1
            values[i, j] = values[j, i] = res.s_tr
            winner[i, j] = winner[j, i] = w
            cell_values.append(res.s_tr)
            if res.s_tr > best:
                best = res.s_tr
                best_pair = (groups[j], groups[i]) if w == j else (groups[i], groups[j])
    if not cell_values:
        raise InsufficientGroups("no pair of groups from different journals to compare")
    values.flags.writeable = False
    winner.flags.writeable = False
    return PairwiseMatrix(year, tuple(groups), values, winner, float(statistics.median(cell_values)), best, best_pair)


def comparable_groups(corpus: Corpus, journal: str, year: int, cfg: RelevanceConfig | None = None) -> list[Group]:
    """Relevant subfields of ``journal`` at ``year`` that have impact-window papers."""
    cfg = cfg or RelevanceConfig()
    return [(journal, k) for k in _subfield_ifs(corpus, journal, year, cfg)]


def intra_journal_matrix(corpus: Corpus, journal: str, year: int, cfg: RelevanceConfig | None = None) -> PairwiseMatrix:
    return pairwise_matrix(corpus, comparable_groups(corpus, journal, year, cfg), year, cfg)


def inter_journal_matrix(corpus: Corpus, journal_a: str, journal_b: str, year: int,
                         cfg: RelevanceConfig | None = None) -> PairwiseMatrix:
    """Subfields of ``journal_a`` against subfields of ``journal_b``; each side
    must be relevant in its own journal."""
    groups = comparable_groups(corpus, journal_a, year, cfg) + comparable_groups(corpus, journal_b, year, cfg)
    return pairwise_matrix(corpus, groups, year, cfg, cross_only=journal_a != journal_b)


def journal_vs_journal(corpus: Corpus, journal_a: str, journal_b: str, year: int,
                       cfg: RelevanceConfig | None = None) -> tuple[SuccessResult, Orientation]:
    """Exact success index between all impact-window papers of two journals."""
    cfg = cfg or RelevanceConfig()
    dists = []
    for j in (journal_a, journal_b):
        members = if_window_positions(corpus, GroupSelector(journal=j), year, cfg.if_window_years)
        if members.shape[0] == 0:
            raise EmptyWindow(f"{j} has no papers in {year - cfg.if_window_years}..{year - 1}")
        dists.append(distribution_at(corpus, members, YearRange(year, year)))
    return compare(*dists)


def journal_comparison_series(corpus: Corpus, journal_a: str, journal_b: str, years,
                              cfg: RelevanceConfig | None = None, threads: int = 1):
    """``journal_vs_journal`` for each year where both journals have papers."""

    def one(y):
        try:
            return journal_vs_journal(corpus, journal_a, journal_b, y, cfg)
        except EmptyWindow:
            return None

    ys = _years(years)
    rows = _map_years(one, ys, threads)
    return {y: r for y, r in zip(ys, rows) if r is not None}


# diversity ----------------------------------------------------------------------

@dataclass(frozen=True)
class DiversityRow:
    year: int
    mode: WeightMode
    n_subfields: int
    n_observed_subfields: int
    diversity: float


def _diversity_row(corpus: Corpus, journal: str, year: int, mode: WeightMode, cfg: RelevanceConfig):
    keys, n_papers, n_cites = relevance_window_totals(corpus, journal, year, cfg)
    if not keys:
        return None
    weights = n_papers if mode is WeightMode.PAPERS else n_cites
    try:
        d = true_diversity(WeightVector(dict(zip(keys, weights.tolist()))))
    except InvalidWeights:
        return None
    n_obs = len(observed_subfields(corpus, journal, year, cfg))
    return DiversityRow(year, mode, len(keys), n_obs, d)


def diversity_series(corpus: Corpus, journal: str, years, mode: WeightMode | str = WeightMode.PAPERS,
                     cfg: RelevanceConfig | None = None, threads: int = 1) -> dict[int, DiversityRow]:
    """Relevant-subfield count and true diversity per year.

    Years with no relevant subfield, or (citation mode) no citations at all,
    are absent.
    """
    cfg = cfg or RelevanceConfig()
    mode = WeightMode(mode)
    ys = _years(years)
    rows = _map_years(lambda y: _diversity_row(corpus, journal, y, mode, cfg), ys, threads)
    return {y: r for y, r in zip(ys, rows) if r is not None}
