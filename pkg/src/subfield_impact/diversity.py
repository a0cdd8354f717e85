"""True diversity (order-1 Hill number) of subfield shares."""
from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType

import numpy as np

from .errors import InvalidWeights, NoRelevantSubfields
from .model import Corpus


class WeightMode(str, Enum):
    PAPERS = "papers"
    CITATIONS = "citations"


@dataclass(frozen=True)
class WeightVector:
    entries: Mapping[str, float]
    total: float = field(init=False)

    def __post_init__(self):
        entries = {str(k): float(v) for k, v in sorted(dict(self.entries).items())}
        for k, v in entries.items():
            if not v >= 0.0 or not math.isfinite(v):
                raise InvalidWeights(f"weight of {k!r} must be finite and nonnegative, got {v}")
        total = math.fsum(entries.values())
        if not total > 0.0:
            raise InvalidWeights("weights must not all be zero")
        object.__setattr__(self, "entries", MappingProxyType(entries))
        object.__setattr__(self, "total", total)

    @property
    def n_nonzero(self) -> int:
        return sum(1 for v in self.entries.values() if v > 0)


def true_diversity(w: WeightVector | Mapping[str, float]) -> float:
    """exp of the Shannon entropy of the shares ``w_i / total``.

    Equals the number of entries when all nonzero weights are equal and 1 when
    a single entry carries all the weight. Zero weights are ignored.
    """
    if not isinstance(w, WeightVector):
        w = WeightVector(w)
    p = np.array([v for v in w.entries.values() if v > 0.0]) / w.total
    p = p[p > 0.0]  # subnormal weights can underflow to zero share
    if p.size == 1:
        return 1.0
    h = -math.fsum((p * np.log(p)).tolist())
    # clamp the last-ulp excursions of exp(log(n))
    return float(min(max(math.exp(h), 1.0), p.size))


def subfield_weights(corpus: Corpus, journal: str, year: int, mode: WeightMode | str = WeightMode.PAPERS,
                     cfg=None) -> WeightVector:
    """Weights of the journal's relevant subfields for ``year``.

    ``papers`` mode weighs each subfield by its papers in the relevance
    window (the ``cfg.window_years`` years ending at ``year``); ``citations``
    mode by the citations those papers receive during ``year``.
    """
    from .pipeline import RelevanceConfig, relevance_window_totals

    cfg = cfg or RelevanceConfig()
    mode = WeightMode(mode)
    keys, n_papers, n_cites = relevance_window_totals(corpus, journal, year, cfg)
    if not keys:
        raise NoRelevantSubfields(f"{journal} has no relevant subfield in {year}")
    values = n_papers if mode is WeightMode.PAPERS else n_cites
    return WeightVector(dict(zip(keys, (float(v) for v in values))))
