"""Domain types and the immutable :class:`Corpus` container."""
from __future__ import annotations

import bisect
import datetime as dt
import threading
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DuplicateId, InvalidSelector, SchemaError
from .pacs import PacsCode, SubfieldKey, check_subfield_key, parse_pacs

__all__ = [
    "CitationEdge",
    "Corpus",
    "GroupSelector",
    "Paper",
    "PacsCode",
    "SubfieldKey",
    "YearRange",
    "resolve_group",
]


class YearRange(NamedTuple):
    """Inclusive range of calendar years."""

    start: int
    end: int

    @classmethod
    def parse(cls, text: str) -> "YearRange":
        """``"2013:2015"`` or a single ``"2015"``."""
        parts = str(text).split(":")
        try:
            if len(parts) == 1:
                a = b = int(parts[0])
            elif len(parts) == 2:
                a, b = int(parts[0]), int(parts[1])
            else:
                raise ValueError
        except ValueError:
            raise InvalidSelector(f"year range must look like A:B, got {text!r}") from None
        return cls.checked(a, b)

    @classmethod
    def checked(cls, start: int, end: int) -> "YearRange":
        if start > end:
            raise InvalidSelector(f"empty year range {start}:{end}")
        return cls(int(start), int(end))

    def __contains__(self, year) -> bool:
        return self.start <= year <= self.end

    def years(self) -> range:
        return range(self.start, self.end + 1)

    def __str__(self) -> str:
        return f"{self.start}:{self.end}"


@dataclass(frozen=True, slots=True)
class Paper:
    id: str
    journal: str
    pub_date: dt.date
    pacs: tuple[PacsCode, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise SchemaError("paper id must be nonempty")
        if not self.journal:
            raise SchemaError(f"paper {self.id!r}: journal must be nonempty")
        if not isinstance(self.pub_date, dt.date):
            raise SchemaError(f"paper {self.id!r}: pub_date must be a date")
        pacs = tuple(parse_pacs(p) if isinstance(p, str) else p for p in self.pacs)
        keys = [p.level3 for p in pacs]
        if len(set(keys)) != len(keys):
            raise SchemaError(f"paper {self.id!r}: duplicate subfield in {keys}")
        object.__setattr__(self, "pacs", pacs)

    @property
    def pub_year(self) -> int:
        return self.pub_date.year

    @property
    def subfields(self) -> tuple[SubfieldKey, ...]:
        return tuple(p.key for p in self.pacs)


@dataclass(frozen=True, slots=True)
class CitationEdge:
    citing: str
    cited: str

    def __post_init__(self):
        if self.citing == self.cited:
            raise SchemaError(f"self-citation {self.citing!r}")


@dataclass(frozen=True, slots=True)
class GroupSelector:
    """A group of papers: journal and/or subfield, optionally within publication years.

    ``pub_years=None`` leaves the years open; operations that impose their own
    window (impact factors, pipeline analyses) expect that.
    """

    journal: str | None = None
    subfield: str | None = None
    pub_years: YearRange | None = None

    def __post_init__(self):
        if self.journal is None and self.subfield is None:
            raise InvalidSelector("a group needs a journal, a subfield, or both")
        if self.subfield is not None:
            try:
                check_subfield_key(self.subfield)
            except ValueError as exc:
                raise InvalidSelector(str(exc)) from None
        if self.pub_years is not None:
            yr = self.pub_years
            object.__setattr__(self, "pub_years", YearRange.checked(yr[0], yr[1]))

    def with_years(self, start: int, end: int) -> "GroupSelector":
        return GroupSelector(self.journal, self.subfield, YearRange.checked(start, end))


class _Indexes(NamedTuple):
    year: np.ndarray  # paper -> pub year
    journal_code: np.ndarray  # paper -> index into journals
    journals: tuple[str, ...]
    subfields: tuple[str, ...]
    pacs_indptr: np.ndarray  # paper -> its subfield codes (CSR)
    pacs_codes: np.ndarray
    sub_indptr: np.ndarray  # subfield code -> member papers, ascending (CSR)
    sub_members: np.ndarray
    jy_keys: np.ndarray  # sorted journal_code * 65536 + (year - year_base)
    jy_indptr: np.ndarray
    jy_members: np.ndarray
    year_base: int
    edge_years: np.ndarray  # sorted citing years of the edges
    edge_cited_by_year: np.ndarray  # cited paper of each edge, ordered by citing year
    in_indptr: np.ndarray  # cited paper -> citing papers (CSR, edge order)
    in_citing: np.ndarray


def _csr(owner: np.ndarray, values: np.ndarray, n_owner: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(owner, kind="stable")
    indptr = np.zeros(n_owner + 1, dtype=np.int64)
    np.cumsum(np.bincount(owner, minlength=n_owner), out=indptr[1:])
    return indptr, values[order]


def _build_indexes(papers: Sequence[Paper], citing: np.ndarray, cited: np.ndarray) -> _Indexes:
    n = len(papers)
    year = np.fromiter((p.pub_date.year for p in papers), dtype=np.int64, count=n)
    journals = tuple(sorted({p.journal for p in papers}))
    jpos = {j: i for i, j in enumerate(journals)}
    journal_code = np.fromiter((jpos[p.journal] for p in papers), dtype=np.int64, count=n)

    subfields = tuple(sorted({c.level3 for p in papers for c in p.pacs}))
    spos = {s: i for i, s in enumerate(subfields)}
    counts = np.fromiter((len(p.pacs) for p in papers), dtype=np.int64, count=n)
    pacs_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=pacs_indptr[1:])
    pacs_codes = np.fromiter(
        (spos[c.level3] for p in papers for c in p.pacs), dtype=np.int64, count=int(pacs_indptr[-1])
    )
    owner = np.repeat(np.arange(n, dtype=np.int64), counts)
    sub_indptr, sub_members = _csr(pacs_codes, owner, len(subfields))

    year_base = int(year.min()) if n else 0
    jy = journal_code * 65536 + (year - year_base)
    jy_keys, jy_inverse = np.unique(jy, return_inverse=True)
    jy_indptr, jy_members = _csr(jy_inverse.astype(np.int64), np.arange(n, dtype=np.int64), len(jy_keys))

    citing_year = year[citing] if citing.size else np.zeros(0, dtype=np.int64)
    by_year = np.argsort(citing_year, kind="stable")
    in_indptr, in_citing = _csr(cited, citing, n)

    arrays = [year, journal_code, pacs_indptr, pacs_codes, sub_indptr, sub_members, jy_keys,
              jy_indptr, jy_members, in_indptr, in_citing]
    edge_years = citing_year[by_year]
    edge_cited_by_year = cited[by_year]
    for a in arrays + [edge_years, edge_cited_by_year]:
        a.flags.writeable = False
    return _Indexes(year, journal_code, journals, subfields, pacs_indptr, pacs_codes, sub_indptr,
                    sub_members, jy_keys, jy_indptr, jy_members, year_base, edge_years,
                    edge_cited_by_year, in_indptr, in_citing)


class _PaperMap(Mapping):
    __slots__ = ("_papers", "_pos")

    def __init__(self, papers, pos):
        self._papers = papers
        self._pos = pos

    def __getitem__(self, pid):
        return self._papers[self._pos[pid]]

    def __iter__(self):
        return (p.id for p in self._papers)

    def __len__(self):
        return len(self._papers)

    def __contains__(self, pid):
        return pid in self._pos


class _EdgeView(Sequence):
    __slots__ = ("_ids", "_citing", "_cited")

    def __init__(self, ids, citing, cited):
        self._ids, self._citing, self._cited = ids, citing, cited

    def __len__(self):
        return int(self._citing.shape[0])

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[k] for k in range(*i.indices(len(self)))]
        return CitationEdge(self._ids[self._citing[i]], self._ids[self._cited[i]])


class _IncomingMap(Mapping):
    """cited id -> tuple of citing ids; only cited papers are keys."""

    __slots__ = ("_corpus",)

    def __init__(self, corpus):
        self._corpus = corpus

    def __getitem__(self, pid):
        c = self._corpus
        i = c._pos[pid]
        lo, hi = c._ix.in_indptr[i], c._ix.in_indptr[i + 1]
        if lo == hi:
            raise KeyError(pid)
        return tuple(c._ids[j] for j in c._ix.in_citing[lo:hi])

    def __iter__(self):
        c = self._corpus
        nonempty = np.flatnonzero(np.diff(c._ix.in_indptr))
        return (c._ids[i] for i in nonempty)

    def __len__(self):
        return int(np.count_nonzero(np.diff(self._corpus._ix.in_indptr)))


class Corpus:
    """Papers, deduplicated citation edges and lookup indexes. Immutable.

    Paper order is preserved as given; edges keep first-occurrence order after
    duplicates are removed. Array attributes are read-only views meant for
    the analysis modules.
    """

    __slots__ = ("_papers", "_ids", "_pos", "_citing", "_cited", "_ix", "_count_cache", "_lock",
                 "__weakref__")

    def __init__(self, papers: Iterable[Paper], edges: Iterable[CitationEdge | tuple[str, str]] = ()):
        papers = tuple(papers)
        pos = {}
        for i, p in enumerate(papers):
            if p.id in pos:
                raise DuplicateId(f"duplicate paper id {p.id!r}")
            pos[p.id] = i
        citing, cited = [], []
        for e in edges:
            a, b = (e.citing, e.cited) if isinstance(e, CitationEdge) else e
            if a == b:
                raise SchemaError(f"self-citation {a!r}")
            try:
                citing.append(pos[a])
                cited.append(pos[b])
            except KeyError as exc:
                raise SchemaError(f"edge {a!r} -> {b!r} references unknown paper {exc.args[0]!r}") from None
        self._init(papers, pos, np.asarray(citing, dtype=np.int64), np.asarray(cited, dtype=np.int64))

    @classmethod
    def _from_arrays(cls, papers: tuple[Paper, ...], pos: dict, citing: np.ndarray, cited: np.ndarray) -> "Corpus":
        # Trusted constructor: ids unique, edges in range and not self-loops.
        self = object.__new__(cls)
        self._init(papers, pos, np.asarray(citing, dtype=np.int64), np.asarray(cited, dtype=np.int64))
        return self

    def _init(self, papers, pos, citing, cited):
        n = len(papers)
        if citing.size:
            keys = citing * max(n, 1) + cited
            _, first = np.unique(keys, return_index=True)
            keep = np.sort(first)
            citing, cited = citing[keep], cited[keep]
        citing.flags.writeable = False
        cited.flags.writeable = False
        self._papers = papers
        self._ids = tuple(p.id for p in papers)
        self._pos = pos
        self._citing = citing
        self._cited = cited
        self._count_cache = {}
        self._lock = threading.Lock()
        self._ix = _build_indexes(papers, citing, cited)

    def __setattr__(self, name, value):
        if hasattr(self, "_ix"):
            raise AttributeError("Corpus is immutable")
        object.__setattr__(self, name, value)

    # public views -------------------------------------------------------------
    @property
    def papers(self) -> Mapping[str, Paper]:
        return _PaperMap(self._papers, self._pos)

    @property
    def edges(self) -> Sequence[CitationEdge]:
        return _EdgeView(self._ids, self._citing, self._cited)

    @property
    def index_by_journal_year(self) -> dict[tuple[str, int], frozenset[str]]:
        ix = self._ix
        out = {}
        for k, key in enumerate(ix.jy_keys):
            journal = ix.journals[int(key) // 65536]
            year = int(key) % 65536 + ix.year_base
            members = ix.jy_members[ix.jy_indptr[k]:ix.jy_indptr[k + 1]]
            out[(journal, year)] = frozenset(self._ids[i] for i in members)
        return out

    @property
    def index_incoming(self) -> Mapping[str, tuple[str, ...]]:
        return _IncomingMap(self)

    @property
    def n_papers(self) -> int:
        return len(self._papers)

    @property
    def n_edges(self) -> int:
        return int(self._citing.shape[0])

    @property
    def journals(self) -> tuple[str, ...]:
        return self._ix.journals

    @property
    def subfields(self) -> tuple[str, ...]:
        return self._ix.subfields

    @property
    def years(self) -> YearRange | None:
        if not self._papers:
            return None
        return YearRange(int(self._ix.year.min()), int(self._ix.year.max()))

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def year_array(self) -> np.ndarray:
        return self._ix.year

    @property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(citing, cited) paper positions."""
        return self._citing, self._cited

    def paper_at(self, i: int) -> Paper:
        return self._papers[i]

    def position(self, pid: str) -> int:
        return self._pos[pid]

    def positions(self, ids: Iterable[str]) -> np.ndarray:
        return np.array(sorted(self._pos[i] for i in ids), dtype=np.int64)

    def __iter__(self) -> Iterator[Paper]:
        return iter(self._papers)

    def __len__(self) -> int:
        return len(self._papers)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return (self._papers == other._papers
                and np.array_equal(self._citing, other._citing)
                and np.array_equal(self._cited, other._cited))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Corpus(n_papers={self.n_papers}, n_edges={self.n_edges}, journals={list(self.journals)})"

    def rebuild_indexes(self):
        """Recompute every index from papers and edges (for consistency checks)."""
        return _build_indexes(self._papers, self._citing, self._cited)

    def indexes(self):
        return self._ix

    # index lookups used by the analysis modules ------------------------------------
    def journal_code(self, journal: str) -> int | None:
        return _find(self._ix.journals, journal)

    def subfield_code(self, key: str) -> int | None:
        return _find(self._ix.subfields, key)

    def journal_year_members(self, journal: str, start: int, end: int) -> np.ndarray:
        """Ascending positions of ``journal`` papers published in ``start..end``."""
        code = self.journal_code(journal)
        if code is None:
            return np.zeros(0, dtype=np.int64)
        ix = self._ix
        lo = np.searchsorted(ix.jy_keys, code * 65536 + max(start - ix.year_base, 0), side="left")
        hi = np.searchsorted(ix.jy_keys, code * 65536 + min(end - ix.year_base, 65535), side="right")
        if end < ix.year_base or hi <= lo:
            return np.zeros(0, dtype=np.int64)
        return np.sort(ix.jy_members[ix.jy_indptr[lo]:ix.jy_indptr[hi]])

    def subfield_members(self, key: str) -> np.ndarray:
        code = self.subfield_code(key)
        if code is None:
            return np.zeros(0, dtype=np.int64)
        ix = self._ix
        return ix.sub_members[ix.sub_indptr[code]:ix.sub_indptr[code + 1]]

    def paper_subfield_codes(self, members: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """For each paper in ``members``, its subfield codes: returns (member slot, code) pairs."""
        ix = self._ix
        lo = ix.pacs_indptr[members]
        counts = ix.pacs_indptr[members + 1] - lo
        slots = np.repeat(np.arange(members.shape[0], dtype=np.int64), counts)
        offsets = np.arange(int(counts.sum()), dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        return slots, ix.pacs_codes[np.repeat(lo, counts) + offsets]

    def incoming_counts(self, start: int, end: int) -> np.ndarray:
        """Per paper: number of distinct citing papers published in ``start..end``.

        Cached per year range; the returned array is read-only.
        """
        key = (int(start), int(end))
        cached = self._count_cache.get(key)
        if cached is not None:
            return cached
        ix = self._ix
        lo = np.searchsorted(ix.edge_years, start, side="left")
        hi = np.searchsorted(ix.edge_years, end, side="right")
        counts = kernels.count_cited(ix.edge_cited_by_year[lo:hi], self.n_papers)
        counts.flags.writeable = False
        with self._lock:
            self._count_cache.setdefault(key, counts)
        return self._count_cache[key]


def _find(names: tuple[str, ...], name: str) -> int | None:
    k = bisect.bisect_left(names, name)
    return k if k < len(names) and names[k] == name else None


def group_positions(corpus: Corpus, sel: GroupSelector) -> np.ndarray:
    """Ascending paper positions matching every field set in ``sel``."""
    years = sel.pub_years
    if sel.journal is not None:
        lo, hi = (years.start, years.end) if years is not None else (-(2**31), 2**31)
        members = corpus.journal_year_members(sel.journal, lo, hi)
        if sel.subfield is not None:
            members = np.intersect1d(members, corpus.subfield_members(sel.subfield), assume_unique=True)
        return members
    members = corpus.subfield_members(sel.subfield)
    if years is not None:
        y = corpus.year_array[members]
        members = members[(y >= years.start) & (y <= years.end)]
    return members


def resolve_group(corpus: Corpus, sel: GroupSelector) -> frozenset[str]:
    """Ids of every paper matching all fields of ``sel``.

    A paper with several PACS codes belongs to each of their subfields.
    """
    ids = corpus.ids
    return frozenset(ids[i] for i in group_positions(corpus, sel))
