import csv
import sys
from pathlib import Path

import pytest

from subfield_impact import Corpus, SynthConfig, generate, load_corpus

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))

# acceptance criterion number -> [description, outcomes]
_CRITERIA: dict[int, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or rep.skipped or rep.failed):
        return
    num, text = mark.args
    entry = _CRITERIA.setdefault(num, [text, []])
    entry[1].append("skip" if rep.skipped else "fail" if rep.failed else "pass")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        text, outcomes = _CRITERIA[num]
        if "fail" in outcomes:
            status = "FAIL"
        elif "pass" in outcomes:
            status = "PASS"
        else:
            status = "SKIP"
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {text}")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def clean3():
    corpus, report = load_corpus(DATA / "clean3_papers.csv", DATA / "clean3_citations.csv", "strict")
    return corpus, report


@pytest.fixture(scope="session")
def six():
    corpus, _ = load_corpus(DATA / "six_papers.csv", DATA / "six_citations.csv", "strict")
    return corpus


def write_two_subfield_fixture(directory: Path, n_per: int = 50):
    """Journal J, subfields 01.10 and 02.20 with ``n_per`` papers each in 2014.

    In 2015, 3 * n_per papers of journal C cite them so that 01.10 gets one
    citation per paper (IF 1) and 02.20 three (IF 3). Both subfields have
    exactly ``n_per`` papers in the 2014-2015 relevance window.
    """
    papers = directory / "papers.csv"
    cites = directory / "citations.csv"
    with open(papers, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "journal", "pub_date", "pacs"])
        for i in range(n_per):
            w.writerow([f"a{i:03d}", "J", "2014-02-01", "01.10.-a"])
            w.writerow([f"b{i:03d}", "J", "2014-03-01", "02.20.Xx"])
        for i in range(3 * n_per):
            w.writerow([f"c{i:03d}", "C", "2015-05-01", ""])
    with open(cites, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["citing", "cited"])
        for i in range(3 * n_per):
            w.writerow([f"c{i:03d}", f"b{i % n_per:03d}"])
            if i < n_per:
                w.writerow([f"c{i:03d}", f"a{i:03d}"])
    return papers, cites


@pytest.fixture(scope="session")
def two_subfield_files(tmp_path_factory):
    return write_two_subfield_fixture(tmp_path_factory.mktemp("two_subfield"))


@pytest.fixture(scope="session")
def two_subfield(two_subfield_files):
    return load_corpus(*two_subfield_files, "strict")[0]


@pytest.fixture(scope="session")
def two_journals_cfg():
    return SynthConfig.from_json(DATA / "two_journals_synth.json")


@pytest.fixture(scope="session")
def two_journals(two_journals_cfg) -> Corpus:
    return generate(two_journals_cfg)
