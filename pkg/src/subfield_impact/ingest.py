"""Load and export the two-file CSV corpus format.

papers file::

    id,journal,pub_date,pacs
    PRB-0001,PRB,2014-03-10,05.45.-a;89.20.Ff

citations file::

    citing,cited
    PRL-0042,PRB-0001

Either file may be gzip-compressed; compression is detected from the magic
bytes, not the file name. Extra columns are ignored.
"""
from __future__ import annotations

import contextlib
import csv
import datetime as dt
import gzip
import io
import logging
import os
import re
from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np

from .errors import DuplicateId, IoError, MalformedPacs, SchemaError, StrictViolation
from .model import Corpus, Paper
from .pacs import parse_pacs

log = logging.getLogger(__name__)

PAPER_COLUMNS = ("id", "journal", "pub_date", "pacs")
CITATION_COLUMNS = ("citing", "cited")
_GZIP_MAGIC = b"\x1f\x8b"
_DATE_RE = re.compile(r"(\d{4})(?:-(\d{2})-(\d{2}))?")


class Policy(str, Enum):
    STRICT = "strict"
    LENIENT = "lenient"


@dataclass(frozen=True)
class ValidationReport:
    n_papers: int = 0
    n_edges_read: int = 0
    n_edges_kept: int = 0
    n_edges_dropped_dangling: int = 0
    n_self_citations_dropped: int = 0
    n_duplicate_edges_merged: int = 0
    n_duplicate_ids: int = 0
    n_malformed_pacs: int = 0

    @property
    def n_anomalies(self) -> int:
        return (self.n_edges_dropped_dangling + self.n_self_citations_dropped
                + self.n_duplicate_ids + self.n_malformed_pacs)

    def as_dict(self) -> dict:
        return asdict(self)


def parse_date(text: str) -> dt.date:
    """``YYYY-MM-DD`` or bare ``YYYY`` (taken as January 1st)."""
    m = _DATE_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"bad date {text!r}")
    y, mo, d = m.groups()
    return dt.date(int(y), int(mo or 1), int(d or 1))


def _open_text(path):
    try:
        with open(path, "rb") as fh:
            magic = fh.read(2)
        raw = gzip.open(path, "rb") if magic == _GZIP_MAGIC else open(path, "rb")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return io.TextIOWrapper(raw, encoding="utf-8-sig", newline="")


def _reader(fh, path, required):
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{path}: empty file, expected header {','.join(required)}") from None
    header = [h.strip() for h in header]
    missing = [c for c in required if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
    return reader, [header.index(c) for c in required], len(header)


def _read_papers(path, strict):
    papers = []
    pos = {}
    n_malformed = 0
    with _open_text(path) as fh:
        reader, cols, width = _reader(fh, path, PAPER_COLUMNS)
        i_id, i_journal, i_date, i_pacs = cols
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            if len(row) < width:
                raise SchemaError(f"{path}:{line}: expected {width} fields, got {len(row)}")
            pid, journal = row[i_id].strip(), row[i_journal].strip()
            if not pid or not journal:
                raise SchemaError(f"{path}:{line}: empty id or journal")
            try:
                date = parse_date(row[i_date])
            except ValueError as exc:
                raise SchemaError(f"{path}:{line}: {exc}") from None
            codes = []
            seen = set()
            for item in row[i_pacs].split(";"):
                if not item.strip():
                    continue
                try:
                    code = parse_pacs(item)
                except MalformedPacs as exc:
                    if strict:
                        raise StrictViolation(f"{path}:{line}: {exc}") from None
                    n_malformed += 1
                    continue
                if code.level3 not in seen:
                    seen.add(code.level3)
                    codes.append(code)
            if pid in pos:
                raise DuplicateId(f"{path}:{line}: duplicate paper id {pid!r}")
            pos[pid] = len(papers)
            papers.append(Paper(pid, journal, date, tuple(codes)))
    return tuple(papers), pos, n_malformed


def _read_citations(path, pos, strict):
    citing, cited = [], []
    n_read = n_dangling = n_self = 0
    with _open_text(path) as fh:
        reader, (i_citing, i_cited), width = _reader(fh, path, CITATION_COLUMNS)
        for row in reader:
            if not row:
                continue
            if len(row) < width:
                raise SchemaError(f"{path}:{reader.line_num}: expected {width} fields, got {len(row)}")
            n_read += 1
            a, b = row[i_citing].strip(), row[i_cited].strip()
            if a == b:
                if strict:
                    raise StrictViolation(f"{path}:{reader.line_num}: self-citation {a!r}")
                n_self += 1
                continue
            ia, ib = pos.get(a), pos.get(b)
            if ia is None or ib is None:
                if strict:
                    missing = a if ia is None else b
                    raise StrictViolation(f"{path}:{reader.line_num}: unknown paper {missing!r}")
                n_dangling += 1
                continue
            citing.append(ia)
            cited.append(ib)
    return np.array(citing, dtype=np.int64), np.array(cited, dtype=np.int64), n_read, n_dangling, n_self


def load_corpus(papers_path, citations_path, policy: Policy | str = Policy.LENIENT):
    """Read both files and build a :class:`Corpus`.

    Under the lenient policy malformed PACS codes are skipped (the paper is
    kept) and dangling or self-citing edges are dropped; each is counted in
    the returned :class:`ValidationReport`. Under the strict policy any of
    these raises :class:`StrictViolation`. Duplicate paper ids and schema
    problems always raise.
    """
    strict = Policy(policy) is Policy.STRICT
    papers, pos, n_malformed = _read_papers(papers_path, strict)
    citing, cited, n_read, n_dangling, n_self = _read_citations(citations_path, pos, strict)
    corpus = Corpus._from_arrays(papers, pos, citing, cited)
    report = ValidationReport(
        n_papers=len(papers),
        n_edges_read=n_read,
        n_edges_kept=corpus.n_edges,
        n_edges_dropped_dangling=n_dangling,
        n_self_citations_dropped=n_self,
        n_duplicate_edges_merged=len(citing) - corpus.n_edges,
        n_malformed_pacs=n_malformed,
    )
    log.info("loaded %d papers, %d edges (%d anomalies)", report.n_papers, report.n_edges_kept, report.n_anomalies)
    return corpus, report


@contextlib.contextmanager
def _open_out(path):
    path = os.fspath(path)
    with open(path, "wb") as raw:
        if path.endswith(".gz"):
            # no name, mtime=0: compressed bytes depend on content only
            with gzip.GzipFile(filename="", mode="wb", fileobj=raw, mtime=0) as gz:
                with io.TextIOWrapper(gz, encoding="utf-8", newline="") as fh:
                    yield fh
        else:
            with io.TextIOWrapper(raw, encoding="utf-8", newline="") as fh:
                yield fh


def write_corpus(corpus: Corpus, papers_path, citations_path) -> None:
    """Export in the format :func:`load_corpus` reads; ``.gz`` paths are compressed."""
    with _open_out(papers_path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PAPER_COLUMNS)
        for p in corpus:
            w.writerow((p.id, p.journal, p.pub_date.isoformat(), ";".join(str(c) for c in p.pacs)))
    ids = corpus.ids
    citing, cited = corpus.edge_arrays
    with _open_out(citations_path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CITATION_COLUMNS)
        w.writerows((ids[a], ids[b]) for a, b in zip(citing.tolist(), cited.tolist()))
