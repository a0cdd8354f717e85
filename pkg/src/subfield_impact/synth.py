"""Deterministic synthetic corpora.

Papers are laid out year by year, journal by journal, subfield by subfield.
Each paper has a base attractiveness ``citation_rate * fitness`` where the
fitness is 1, or a mean-one lognormal draw when ``fitness_sigma > 0``.

For every citing year ``y`` the eligible targets are all papers published in
the ``citation_horizon`` years before ``y``. Each paper of year ``y`` draws a
Poisson number of references whose mean is the total base attractiveness of
the eligible targets divided by the number of citing papers, so an eligible
paper expects about ``citation_rate * fitness`` citations per year. References
go to distinct targets chosen with probability proportional to
``base * (1 + in_degree) ** attachment_exponent``.

Randomness comes from numpy's PCG64 bit generator. The seed is expanded with
``SeedSequence(seed).spawn(3)`` into three streams used for fitness, reference
counts and target draws, in that order.
"""
from __future__ import annotations

import datetime as dt
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .errors import InvalidConfig
from .ingest import write_corpus
from .model import Corpus, Paper, YearRange
from .pacs import is_subfield_key, parse_pacs

MAX_TRIES = 64


@dataclass(frozen=True)
class SubfieldSpec:
    key: str
    papers_per_year: int
    citation_rate: float

    def __post_init__(self):
        if not is_subfield_key(self.key):
            raise InvalidConfig(f"subfield key must look like NN.NN, got {self.key!r}")
        if int(self.papers_per_year) != self.papers_per_year or self.papers_per_year < 0:
            raise InvalidConfig(f"{self.key}: papers_per_year must be a nonnegative integer")
        if not (math.isfinite(self.citation_rate) and self.citation_rate >= 0):
            raise InvalidConfig(f"{self.key}: citation_rate must be finite and nonnegative")


@dataclass(frozen=True)
class JournalSpec:
    name: str
    subfields: tuple[SubfieldSpec, ...]

    def __post_init__(self):
        if not self.name or any(c in self.name for c in ",\"\n"):
            raise InvalidConfig(f"bad journal name {self.name!r}")
        keys = [s.key for s in self.subfields]
        if len(set(keys)) != len(keys):
            raise InvalidConfig(f"{self.name}: duplicate subfield keys")


@dataclass(frozen=True)
class SynthConfig:
    seed: int
    years: YearRange
    journals: tuple[JournalSpec, ...]
    attachment_exponent: float = 0.0
    citation_horizon: int = 2
    fitness_sigma: float = 0.0
    _fields = ("seed", "years", "journals", "attachment_exponent", "citation_horizon", "fitness_sigma")

    def __post_init__(self):
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise InvalidConfig("seed must be an integer in [0, 2**64)")
        if self.years[0] > self.years[1]:
            raise InvalidConfig(f"empty year range {self.years[0]}:{self.years[1]}")
        object.__setattr__(self, "years", YearRange(int(self.years[0]), int(self.years[1])))
        names = [j.name for j in self.journals]
        if not names or len(set(names)) != len(names):
            raise InvalidConfig("need at least one journal and unique journal names")
        if not (math.isfinite(self.attachment_exponent) and self.attachment_exponent >= 0):
            raise InvalidConfig("attachment_exponent must be finite and nonnegative")
        if int(self.citation_horizon) != self.citation_horizon or self.citation_horizon < 1:
            raise InvalidConfig("citation_horizon must be a positive integer")
        if not (math.isfinite(self.fitness_sigma) and self.fitness_sigma >= 0):
            raise InvalidConfig("fitness_sigma must be finite and nonnegative")

    @classmethod
    def from_dict(cls, d: dict) -> "SynthConfig":
        unknown = set(d) - set(cls._fields)
        if unknown:
            raise InvalidConfig(f"unknown synth config field(s): {', '.join(sorted(unknown))}")
        try:
            years = d["years"]
            years = YearRange.parse(years) if isinstance(years, str) else YearRange(*years)
            journals = tuple(
                JournalSpec(j["name"], tuple(
                    SubfieldSpec(s["key"], s["papers_per_year"], float(s["citation_rate"])) for s in j["subfields"]
                ))
                for j in d["journals"]
            )
            return cls(
                seed=d["seed"],
                years=years,
                journals=journals,
                attachment_exponent=float(d.get("attachment_exponent", 0.0)),
                citation_horizon=d.get("citation_horizon", 2),
                fitness_sigma=float(d.get("fitness_sigma", 0.0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidConfig):
                raise
            raise InvalidConfig(f"invalid synth config: {exc!r}") from None

    @classmethod
    def from_json(cls, path) -> "SynthConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidConfig(f"cannot read synth config {path}: {exc}") from None

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "years": [self.years.start, self.years.end],
            "attachment_exponent": self.attachment_exponent,
            "citation_horizon": self.citation_horizon,
            "fitness_sigma": self.fitness_sigma,
            "journals": [
                {"name": j.name, "subfields": [
                    {"key": s.key, "papers_per_year": s.papers_per_year, "citation_rate": s.citation_rate}
                    for s in j.subfields]}
                for j in self.journals
            ],
        }

    def replace(self, **changes) -> "SynthConfig":
        d = self.to_dict()
        d.update(changes)
        return SynthConfig.from_dict(d)


@dataclass
class _Layout:
    papers: list = field(default_factory=list)
    rate: list = field(default_factory=list)
    year_start: dict = field(default_factory=dict)  # year -> first position


def _layout(cfg: SynthConfig) -> _Layout:
    out = _Layout()
    for year in cfg.years.years():
        out.year_start[year] = len(out.papers)
        for j in cfg.journals:
            for s in j.subfields:
                code = (parse_pacs(s.key),)
                for n in range(s.papers_per_year):
                    pid = f"{j.name}-{s.key}-{year}-{n:05d}"
                    out.papers.append(Paper(pid, j.name, dt.date(year, 1 + n % 12, 1), code))
                    out.rate.append(s.citation_rate)
    out.year_start[cfg.years.end + 1] = len(out.papers)
    return out


def _draw_year(citing, n_refs, eligible, base_w, indeg, alpha, rng):
    need = int(n_refs.sum())
    uniforms = rng.random(2 * need + 64)
    while True:
        trial = indeg.copy()
        out_citing, out_cited, n_out, used = kernels.attach_citations(
            citing, n_refs, eligible, base_w, trial, alpha, uniforms, MAX_TRIES)
        if used >= 0:
            return out_citing[:n_out], out_cited[:n_out], trial
        uniforms = np.concatenate([uniforms, rng.random(uniforms.shape[0])])


def generate(cfg: SynthConfig) -> Corpus:
    """Build the corpus described by ``cfg``; same config, same corpus."""
    lay = _layout(cfg)
    n = len(lay.papers)
    fit_rng, ref_rng, att_rng = (np.random.Generator(np.random.PCG64(s))
                                 for s in np.random.SeedSequence(cfg.seed).spawn(3))
    base = np.asarray(lay.rate, dtype=np.float64)
    if cfg.fitness_sigma > 0:
        sigma = cfg.fitness_sigma
        base = base * np.exp(sigma * fit_rng.standard_normal(n) - sigma * sigma / 2)
    indeg = np.zeros(n, dtype=np.int64)
    all_citing, all_cited = [], []
    for year in cfg.years.years():
        lo, hi = lay.year_start[year], lay.year_start[year + 1]
        e_lo = lay.year_start[max(year - cfg.citation_horizon, cfg.years.start)]
        eligible = np.arange(e_lo, lo, dtype=np.int64)
        if hi == lo or eligible.size == 0:
            continue
        citing = np.arange(lo, hi, dtype=np.int64)
        w = base[eligible]
        lam = float(w.sum()) / citing.size
        n_refs = np.minimum(ref_rng.poisson(lam, citing.size), eligible.size).astype(np.int64)
        src, dst, indeg = _draw_year(citing, n_refs, eligible, w, indeg, cfg.attachment_exponent, att_rng)
        all_citing.append(src)
        all_cited.append(dst)
    citing = np.concatenate(all_citing) if all_citing else np.zeros(0, dtype=np.int64)
    cited = np.concatenate(all_cited) if all_cited else np.zeros(0, dtype=np.int64)
    papers = tuple(lay.papers)
    return Corpus._from_arrays(papers, {p.id: i for i, p in enumerate(papers)}, citing, cited)


def write_synth(cfg: SynthConfig, out_dir, compress: bool = False) -> tuple[Path, Path]:
    """Generate and export ``papers.csv`` and ``citations.csv`` into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = ".csv.gz" if compress else ".csv"
    papers, cites = out_dir / f"papers{ext}", out_dir / f"citations{ext}"
    write_corpus(generate(cfg), papers, cites)
    return papers, cites
