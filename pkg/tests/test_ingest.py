import gzip
import shutil

import pytest

from subfield_impact import load_corpus, write_corpus
from subfield_impact.errors import DuplicateId, IoError, SchemaError, StrictViolation
from subfield_impact.ingest import parse_date


def test_clean_fixture(clean3):
    corpus, report = clean3
    assert corpus.n_papers == 3 and corpus.n_edges == 2
    assert report.n_anomalies == 0
    assert report.n_edges_kept == 2 and report.n_edges_read == 2
    assert corpus.papers["A2"].subfields == ("75.10", "05.45")


def test_dangling_edge_lenient(data_dir):
    corpus, report = load_corpus(data_dir / "clean3_papers.csv", data_dir / "dangling_citations.csv", "lenient")
    assert report.n_edges_dropped_dangling == 1
    assert report.n_edges_kept == 2
    assert corpus.n_edges == 2


def test_dangling_edge_strict(data_dir):
    with pytest.raises(StrictViolation):
        load_corpus(data_dir / "clean3_papers.csv", data_dir / "dangling_citations.csv", "strict")


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_anomalies_counted(tmp_path):
    papers = _write(tmp_path / "p.csv", "id,journal,pub_date,pacs\n"
                    "a,J,2001-01-01,5.45;05.45.-a\n"
                    "b,J,2002,05.45.Xt;05.45.-b;bogus\n")
    cites = _write(tmp_path / "c.csv", "citing,cited\nb,a\nb,a\nb,b\nx,a\n")
    corpus, rep = load_corpus(papers, cites)
    assert rep.n_malformed_pacs == 2
    assert rep.n_self_citations_dropped == 1
    assert rep.n_edges_dropped_dangling == 1
    assert rep.n_duplicate_edges_merged == 1
    assert rep.n_edges_kept == 1
    assert rep.n_edges_read == (rep.n_edges_kept + rep.n_edges_dropped_dangling + rep.n_self_citations_dropped
                                + rep.n_duplicate_edges_merged)
    assert corpus.papers["b"].subfields == ("05.45",)
    assert str(corpus.papers["b"].pub_date) == "2002-01-01"
    with pytest.raises(StrictViolation):
        load_corpus(papers, cites, "strict")


def test_self_citation_strict(tmp_path):
    papers = _write(tmp_path / "p.csv", "id,journal,pub_date,pacs\na,J,2001-01-01,\n")
    cites = _write(tmp_path / "c.csv", "citing,cited\na,a\n")
    with pytest.raises(StrictViolation):
        load_corpus(papers, cites, "strict")


def test_duplicate_id_always_error(tmp_path):
    papers = _write(tmp_path / "p.csv", "id,journal,pub_date,pacs\na,J,2001-01-01,\na,K,2002-01-01,\n")
    cites = _write(tmp_path / "c.csv", "citing,cited\n")
    for policy in ("lenient", "strict"):
        with pytest.raises(DuplicateId):
            load_corpus(papers, cites, policy)


@pytest.mark.parametrize("papers_text", [
    "id,journal,pacs\na,J,\n",
    "id,journal,pub_date,pacs\na,J,2001-13-01,\n",
    "id,journal,pub_date,pacs\na,J,01/02/2001,\n",
    "id,journal,pub_date,pacs\n,J,2001,\n",
    "",
])
def test_schema_errors(tmp_path, papers_text):
    papers = _write(tmp_path / "p.csv", papers_text)
    cites = _write(tmp_path / "c.csv", "citing,cited\n")
    with pytest.raises(SchemaError):
        load_corpus(papers, cites, "lenient")


def test_missing_file(tmp_path, data_dir):
    with pytest.raises(IoError):
        load_corpus(tmp_path / "nope.csv", data_dir / "clean3_citations.csv")


def test_gzip_detected_by_magic(tmp_path, data_dir):
    for name in ("clean3_papers.csv", "clean3_citations.csv"):
        with open(data_dir / name, "rb") as src, gzip.open(tmp_path / (name + ".bin"), "wb") as dst:
            shutil.copyfileobj(src, dst)
    a, _ = load_corpus(tmp_path / "clean3_papers.csv.bin", tmp_path / "clean3_citations.csv.bin", "strict")
    b, _ = load_corpus(data_dir / "clean3_papers.csv", data_dir / "clean3_citations.csv", "strict")
    assert a == b


@pytest.mark.parametrize("suffix", [".csv", ".csv.gz"])
def test_round_trip(tmp_path, six, suffix):
    p, c = tmp_path / f"p{suffix}", tmp_path / f"c{suffix}"
    write_corpus(six, p, c)
    again, report = load_corpus(p, c, "strict")
    assert again == six
    assert report.n_anomalies == 0
    p2, c2 = tmp_path / f"p2{suffix}", tmp_path / f"c2{suffix}"
    write_corpus(again, p2, c2)
    assert p.read_bytes() == p2.read_bytes() and c.read_bytes() == c2.read_bytes()


def test_loading_is_deterministic(data_dir):
    a = load_corpus(data_dir / "six_papers.csv", data_dir / "six_citations.csv")
    b = load_corpus(data_dir / "six_papers.csv", data_dir / "six_citations.csv")
    assert a == b


def test_quoted_fields_with_commas(tmp_path):
    papers = _write(tmp_path / "p.csv", 'id,journal,pub_date,pacs\n"a,1","J, B",2001-01-01,05.45\n')
    cites = _write(tmp_path / "c.csv", "citing,cited\n")
    corpus, _ = load_corpus(papers, cites, "strict")
    assert corpus.papers["a,1"].journal == "J, B"


def test_parse_date():
    assert str(parse_date("1999")) == "1999-01-01"
    assert str(parse_date("2015-06-30")) == "2015-06-30"
    with pytest.raises(ValueError):
        parse_date("2015-6-30")
