"""Independent reference computations used by the tests.

These deliberately take the slow, obvious route (pair enumeration, edge
scans, the textbook entropy formula) and share no code with the package.
"""
import math
from fractions import Fraction


def brute_success(t_counts, r_counts):
    """P(random t paper has more citations than random r paper), ties half."""
    wins = ties = 0
    for a in t_counts:
        for b in r_counts:
            if a > b:
                wins += 1
            elif a == b:
                ties += 1
    return (wins + 0.5 * ties) / (len(t_counts) * len(r_counts))


def brute_success_fraction(t_counts, r_counts):
    wins = sum(1 for a in t_counts for b in r_counts if a > b)
    ties = sum(1 for a in t_counts for b in r_counts if a == b)
    return Fraction(2 * wins + ties, 2 * len(t_counts) * len(r_counts))


def expand(hist):
    """{c: n} -> flat list of per-paper counts."""
    return [c for c, n in sorted(hist.items()) for _ in range(n)]


def shannon_hill(weights):
    total = sum(weights)
    h = 0.0
    for w in weights:
        p = w / total
        if p > 0:
            h -= p * math.log(p)
    return math.exp(h)


def scan_citations(corpus, paper_ids, citing_years):
    """Per paper id: distinct citers dated within citing_years, by walking every edge."""
    lo, hi = citing_years
    papers = corpus.papers
    out = {pid: set() for pid in paper_ids}
    for e in corpus.edges:
        if e.cited in out and lo <= papers[e.citing].pub_year <= hi:
            out[e.cited].add(e.citing)
    return {pid: len(s) for pid, s in out.items()}


def scan_impact_factor(corpus, journal, subfield, year, window=2):
    members = [p.id for p in corpus.papers.values()
               if (journal is None or p.journal == journal)
               and (subfield is None or subfield in p.subfields)
               and year - window <= p.pub_year <= year - 1]
    counts = scan_citations(corpus, members, (year, year))
    return sum(counts.values()), len(members)


def population_dispersion(values):
    n = len(values)
    mean = sum(values) / n
    std = math.sqrt(sum((v - mean) ** 2 for v in values) / n)
    return mean, std, std / mean if mean else None
