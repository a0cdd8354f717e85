"""Command-line interface.

Every analysis command writes one table to ``--out`` (or stdout), preceded
by run metadata: a ``#``-comment block for CSV, a ``meta`` object for JSON.
Floats are rounded to 12 significant digits and printed in shortest
round-trip form with a decimal point; missing values are empty (CSV) or
``null`` (JSON).

Exit codes: 0 success, 1 usage or configuration error, 2 data or validation
error, 3 internal error.
"""
from __future__ import annotations

import argparse
import csv
import datetime as dt
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .diversity import WeightMode
from .errors import DataError, InsufficientGroups, InvariantError, SubfieldImpactError, UsageError
from .ingest import Policy, load_corpus
from .model import YearRange
from .pacs import check_subfield_key
from .pipeline import (
    RelevanceConfig,
    _map_years,
    diversity_series,
    inter_journal_matrix,
    intra_journal_matrix,
    journal_comparison_series,
    pairwise_matrix,
    subfield_if_dispersion,
    subfield_if_series,
)
from .success import Orientation
from .synth import SynthConfig, write_synth

log = logging.getLogger("subfield_impact")

TOOL = "subfield-impact"
DEFAULTS = {
    "papers": None,
    "citations": None,
    "journal": [],
    "group": [],
    "years": None,
    "min_papers": 50,
    "window": 2,
    "if_window": 2,
    "format": "csv",
    "out": None,
    "policy": "lenient",
    "threads": 1,
    "seed": None,
    "no_timestamp": False,
    "tidy": False,
    "mode": "both",
    "cells": False,
    "gzip": False,
}
# not echoed in the metadata: they never change the results
_NOT_ECHOED = {"threads", "out", "config", "command"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file of option defaults (flags override it)")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=None, help="worker threads; output does not depend on it")
    common.add_argument("--no-timestamp", action="store_true", default=None, help="omit the timestamp from metadata")
    common.add_argument("-v", "--verbose", action="store_true")

    data = _Parser(add_help=False)
    data.add_argument("--papers", help="papers CSV (optionally gzip)")
    data.add_argument("--citations", help="citations CSV (optionally gzip)")
    data.add_argument("--policy", choices=[p.value for p in Policy], default=None)

    analysis = _Parser(add_help=False)
    analysis.add_argument("--journal", action="append", default=None, help="journal name (repeatable)")
    analysis.add_argument("--years", help="inclusive year range A:B (default: corpus span)")
    analysis.add_argument("--min-papers", type=int, default=None, help="relevance threshold (default 50)")
    analysis.add_argument("--window", type=int, default=None, help="relevance window in years (default 2)")
    analysis.add_argument("--if-window", type=int, default=None, help="impact window in years (default 2)")
    analysis.add_argument("--tidy", action="store_true", default=None, help="long format: key columns, series, value")

    parser = _Parser(prog=TOOL, description="Subfield visibility analyses over a PACS-tagged citation corpus.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("validate", parents=[common, data], help="load the corpus and report anomalies")
    sub.add_parser("if", parents=[common, data, analysis], help="yearly impact factor of each relevant subfield")
    sub.add_parser("dispersion", parents=[common, data, analysis], help="mean, std and cv of subfield impact factors")
    p = sub.add_parser("diversity", parents=[common, data, analysis], help="subfield counts and true diversity")
    p.add_argument("--mode", choices=["papers", "citations", "both"], default=None)
    p = sub.add_parser("matrix", parents=[common, data, analysis], help="pairwise subfield success indexes")
    p.add_argument("--group", action="append", default=None, metavar="JOURNAL:KEY", help="explicit group (repeatable)")
    p.add_argument("--cells", action="store_true", default=None, help="emit every cell instead of the yearly summary")
    sub.add_parser("compare", parents=[common, data, analysis], help="journal against journal success index")
    p = sub.add_parser("synth", parents=[common], help="generate a synthetic corpus")
    p.add_argument("spec", help="generator configuration (JSON)")
    p.add_argument("--seed", type=int, default=None, help="override the configured seed")
    p.add_argument("--gzip", action="store_true", default=None, help="write .csv.gz files")
    return parser


def _resolve(args) -> dict:
    """Flags, then the --config file, then built-in defaults."""
    file_cfg = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}
        unknown = set(file_cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    out = {}
    for key, default in DEFAULTS.items():
        if not hasattr(args, key):
            continue
        value = getattr(args, key)
        out[key] = value if value is not None else file_cfg.get(key, default)
    out["command"] = args.command
    if hasattr(args, "spec"):
        out["spec"] = args.spec
    return out


def _relevance(cfg) -> RelevanceConfig:
    try:
        return RelevanceConfig(int(cfg["min_papers"]), int(cfg["window"]), int(cfg["if_window"]))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# formatting ------------------------------------------------------------------------

def _num(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(float(f"{x:.12g}"))
    return str(x)


def _meta(cfg: dict) -> dict:
    meta = {"tool": TOOL, "version": __version__, "command": cfg["command"],
            "config": {k: v for k, v in sorted(cfg.items()) if k not in _NOT_ECHOED}}
    if not cfg.get("no_timestamp"):
        meta["generated"] = dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")
    return meta


def _tidy(columns, rows, keys):
    values = [c for c in columns if c not in keys]
    out = []
    for r in rows:
        for c in values:
            if r.get(c) is not None:
                out.append({**{k: r[k] for k in keys}, "series": c, "value": r[c]})
    return list(keys) + ["series", "value"], out


def _render(cfg, columns, rows) -> str:
    meta = _meta(cfg)
    if cfg["format"] == "json":
        body = {"meta": meta, "columns": columns,
                "rows": [{c: _num(r.get(c)) for c in columns} for r in rows]}
        return json.dumps(body, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for line in json.dumps(meta, sort_keys=True, indent=1).splitlines():
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(cfg, columns, rows, keys):
    if cfg.get("tidy"):
        columns, rows = _tidy(columns, rows, keys)
    text = _render(cfg, columns, rows)
    if cfg.get("out"):
        try:
            Path(cfg["out"]).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot write {cfg['out']}: {exc}") from None
    else:
        sys.stdout.write(text)


# commands -------------------------------------------------------------------------------

def _load(cfg):
    if not cfg.get("papers") or not cfg.get("citations"):
        raise UsageError("--papers and --citations are required")
    return load_corpus(cfg["papers"], cfg["citations"], cfg["policy"])


def _years(cfg, corpus) -> YearRange:
    if cfg.get("years"):
        return YearRange.parse(cfg["years"])
    span = corpus.years
    if span is None:
        raise DataError("corpus has no papers")
    return span


def _one_journal(cfg) -> str:
    journals = cfg.get("journal") or []
    if len(journals) != 1:
        raise UsageError(f"{cfg['command']} needs exactly one --journal")
    return journals[0]


def _check_journals(corpus, journals):
    for j in journals:
        if j not in corpus.journals:
            log.warning("journal %r does not occur in the corpus", j)


def cmd_validate(cfg):
    _, report = _load(cfg)
    rows = [{"metric": k, "value": v} for k, v in report.as_dict().items()]
    _emit(cfg, ["metric", "value"], rows, ["metric"])


def cmd_if(cfg):
    journal = _one_journal(cfg)
    rel = _relevance(cfg)
    corpus, _ = _load(cfg)
    _check_journals(corpus, [journal])
    series = subfield_if_series(corpus, journal, _years(cfg, corpus), rel, cfg["threads"])
    rows = [{"year": y, "journal": journal, "subfield": k, "impact_factor": p.value,
             "n_papers": p.n_papers_window, "n_citations": p.n_citations}
            for y, row in series.items() for k, p in row.items()]
    _emit(cfg, ["year", "journal", "subfield", "impact_factor", "n_papers", "n_citations"], rows,
          ["year", "journal", "subfield"])


def cmd_dispersion(cfg):
    journal = _one_journal(cfg)
    rel = _relevance(cfg)
    corpus, _ = _load(cfg)
    _check_journals(corpus, [journal])
    table = subfield_if_dispersion(corpus, journal, _years(cfg, corpus), rel, cfg["threads"])
    cols = ["year", "mean", "std", "cv", "journal_if", "n_subfields", "n_subfield_papers", "n_journal_papers"]
    rows = [{c: getattr(r, c) for c in cols} for r in table.values()]
    _emit(cfg, cols, rows, ["year"])


def cmd_diversity(cfg):
    journal = _one_journal(cfg)
    rel = _relevance(cfg)
    corpus, _ = _load(cfg)
    _check_journals(corpus, [journal])
    modes = ["papers", "citations"] if cfg["mode"] == "both" else [cfg["mode"]]
    years = _years(cfg, corpus)
    rows = []
    for mode in modes:
        for r in diversity_series(corpus, journal, years, mode, rel, cfg["threads"]).values():
            rows.append({"year": r.year, "mode": r.mode.value, "n_subfields": r.n_subfields,
                         "n_observed_subfields": r.n_observed_subfields, "diversity": r.diversity})
    rows.sort(key=lambda r: (r["year"], r["mode"] != WeightMode.PAPERS.value))
    _emit(cfg, ["year", "mode", "n_subfields", "n_observed_subfields", "diversity"], rows, ["year", "mode"])


def _parse_group(text):
    journal, sep, key = text.rpartition(":")
    if not sep or not journal:
        raise UsageError(f"--group must look like JOURNAL:NN.NN, got {text!r}")
    try:
        return journal, check_subfield_key(key)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_matrix(cfg):
    groups = [_parse_group(g) for g in cfg.get("group") or []]
    journals = cfg.get("journal") or []
    if groups and journals:
        raise UsageError("use either --group or --journal, not both")
    if groups and len(groups) < 2:
        raise InsufficientGroups(f"need at least two groups to compare, got {len(groups)}")
    if not groups and len(journals) not in (1, 2):
        raise UsageError("matrix needs one or two --journal, or at least two --group")
    rel = _relevance(cfg)
    corpus, _ = _load(cfg)
    _check_journals(corpus, journals or sorted({g[0] for g in groups}))

    def one(year):
        try:
            if groups:
                return pairwise_matrix(corpus, groups, year, rel)
            if len(journals) == 1:
                return intra_journal_matrix(corpus, journals[0], year, rel)
            return inter_journal_matrix(corpus, journals[0], journals[1], year, rel)
        except (InsufficientGroups, DataError) as exc:
            if groups and isinstance(exc, InsufficientGroups):
                raise
            log.info("%d: skipped (%s)", year, exc)
            return None

    years = list(_years(cfg, corpus).years())
    mats = [m for m in _map_years(one, years, cfg["threads"]) if m is not None]
    if cfg.get("cells"):
        cols = ["year", "journal_a", "subfield_a", "journal_b", "subfield_b", "success", "orientation"]
        rows = []
        for m in mats:
            for i, j, v, _w in m.cells():
                (ja, ka), (jb, kb) = m.labels[i], m.labels[j]
                rows.append({"year": m.year, "journal_a": ja, "subfield_a": ka, "journal_b": jb,
                             "subfield_b": kb, "success": v, "orientation": m.orientation(i, j).value})
        keys = cols[:5]
    else:
        cols = ["year", "n_groups", "n_pairs", "median", "max", "max_journal_a", "max_subfield_a",
                "max_journal_b", "max_subfield_b"]
        rows = []
        for m in mats:
            (ja, ka), (jb, kb) = m.argmax
            rows.append({"year": m.year, "n_groups": len(m.labels), "n_pairs": sum(1 for _ in m.cells()),
                         "median": m.median, "max": m.max, "max_journal_a": ja, "max_subfield_a": ka,
                         "max_journal_b": jb, "max_subfield_b": kb})
        keys = ["year"]
    _emit(cfg, cols, rows, keys)


def cmd_compare(cfg):
    journals = cfg.get("journal") or []
    if len(journals) != 2:
        raise UsageError("compare needs exactly two --journal")
    rel = _relevance(cfg)
    corpus, _ = _load(cfg)
    _check_journals(corpus, journals)
    a, b = journals
    series = journal_comparison_series(corpus, a, b, _years(cfg, corpus), rel, cfg["threads"])
    rows = []
    for y, (res, orient) in series.items():
        leader = {Orientation.A_OVER_B: a, Orientation.B_OVER_A: b}.get(orient, "")
        n_a, n_b = (res.n_t, res.n_r) if orient is not Orientation.B_OVER_A else (res.n_r, res.n_t)
        rows.append({"year": y, "journal_a": a, "journal_b": b, "success": res.s_tr,
                     "orientation": orient.value, "leader": leader, "n_a": n_a, "n_b": n_b})
    _emit(cfg, ["year", "journal_a", "journal_b", "success", "orientation", "leader", "n_a", "n_b"], rows,
          ["year", "journal_a", "journal_b"])


def cmd_synth(cfg):
    if not cfg.get("out"):
        raise UsageError("synth needs --out DIRECTORY")
    spec = SynthConfig.from_json(cfg["spec"])
    if cfg.get("seed") is not None:
        spec = spec.replace(seed=cfg["seed"])
    papers, cites = write_synth(spec, cfg["out"], compress=bool(cfg.get("gzip")))
    meta = _meta(cfg)
    meta["synth_config"] = spec.to_dict()
    meta["files"] = [papers.name, cites.name]
    (Path(cfg["out"]) / "synth_meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


COMMANDS = {
    "validate": cmd_validate,
    "if": cmd_if,
    "dispersion": cmd_dispersion,
    "diversity": cmd_diversity,
    "matrix": cmd_matrix,
    "compare": cmd_compare,
    "synth": cmd_synth,
}


def run(argv=None) -> int:
    """Run the CLI and return its exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = _resolve(args)
        if cfg.get("threads", 1) < 1:
            raise UsageError("--threads must be at least 1")
        COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SubfieldImpactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.exception("unexpected failure")
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3
    return 0


def main():
    sys.exit(run())
